//! Finite topological spaces given by a basis, and Hausdorff closures computed
//! straight from the definition. Nothing here knows about atlases.

use std::collections::BTreeSet;

#[derive(Clone, Debug)]
pub struct FiniteBasisSpace<L> {
    labels: Vec<L>,
    basis: Vec<BTreeSet<usize>>,
    containing: Vec<Vec<usize>>,
}

impl<L: Clone + PartialEq> FiniteBasisSpace<L> {
    pub fn new(labels: Vec<L>, basis: Vec<BTreeSet<usize>>) -> Self {
        let mut containing = vec![Vec::new(); labels.len()];
        for (b, set) in basis.iter().enumerate() {
            for &x in set {
                containing[x].push(b);
            }
        }
        FiniteBasisSpace {
            labels,
            basis,
            containing,
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, x: usize) -> &L {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    pub fn index_of(&self, label: &L) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn basis(&self) -> &[BTreeSet<usize>] {
        &self.basis
    }

    /// Basis elements containing `x`.
    pub fn basic_neighborhoods(&self, x: usize) -> impl Iterator<Item = &BTreeSet<usize>> {
        self.containing[x].iter().map(|&b| &self.basis[b])
    }

    pub fn is_open_singleton(&self, x: usize) -> bool {
        self.basic_neighborhoods(x).any(|b| b.len() == 1)
    }

    /// The basis covers the space and every point of an intersection of two
    /// basis elements has a basis element inside that intersection.
    pub fn satisfies_basis_axioms(&self) -> bool {
        if self.containing.iter().any(Vec::is_empty) {
            return false;
        }
        for b1 in &self.basis {
            for b2 in &self.basis {
                for &x in b1.intersection(b2) {
                    let inside = self
                        .basic_neighborhoods(x)
                        .any(|b3| b3.is_subset(b1) && b3.is_subset(b2));
                    if !inside {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `x` lies in the closure of `set` iff every basic neighborhood of `x` meets `set`.
    pub fn closure(&self, set: &BTreeSet<usize>) -> BTreeSet<usize> {
        (0..self.len())
            .filter(|&x| self.basic_neighborhoods(x).all(|b| !b.is_disjoint(set)))
            .collect()
    }
}

/// Intersection of the closures of all basic neighborhoods of `x`.
pub fn hcl_bruteforce<L: Clone + PartialEq>(space: &FiniteBasisSpace<L>, x: usize) -> BTreeSet<usize> {
    let mut acc: Option<BTreeSet<usize>> = None;
    for v in space.basic_neighborhoods(x) {
        let cl = space.closure(v);
        acc = Some(match acc {
            None => cl,
            Some(prev) => prev.intersection(&cl).copied().collect(),
        });
    }
    acc.unwrap_or_else(|| (0..space.len()).collect())
}
