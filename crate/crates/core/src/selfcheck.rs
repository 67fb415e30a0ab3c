//! Cross-checks every invariant the library relies on, per connected component.

use std::fmt;

use crate::atlas::StripedAtlas;
use crate::dualgraph::{build_dual_graph, euler_invariant};
use crate::leafspace::{boundary_points, build_leaf_space, classify_leaf, hcl_point, hcl_sampled, special_points, LeafClass};
use crate::morphism::isomorphic;
use crate::reduction::{reduce_connected, FirstSeam, SurfaceClass};
use crate::symmetry::{enumerate_automorphisms, induced_leaf_map, kernel_of_psi0, reversal_witness, LeafMap};

pub const CHECKS: [&str; 7] = [
    "hcl-oracle",
    "hcl-symmetry",
    "classification",
    "group-laws",
    "psi-functoriality",
    "kernel-dichotomy",
    "reduction-invariants",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub component: usize,
    pub check: &'static str,
    pub failure: Option<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "PASS {} component={}", self.check, self.component),
            Some(why) => write!(f, "FAIL {} component={}: {why}", self.check, self.component),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct SelfCheckReport {
    pub results: Vec<CheckResult>,
}

impl SelfCheckReport {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(CheckResult::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().filter(|r| !r.passed())
    }
}

impl fmt::Display for SelfCheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.results {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

fn ensure(ok: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(why())
    }
}

fn hcl_oracle(a: &StripedAtlas, k: usize) -> Result<(), String> {
    let m = build_leaf_space(a);
    for p in m.point_ids() {
        for depth in 1..=k {
            ensure(hcl_sampled(&m, p, depth) == hcl_point(&m, p), || {
                format!("point {} disagrees at depth {depth}", m.point(p).name)
            })?;
        }
    }
    Ok(())
}

fn hcl_symmetry(a: &StripedAtlas) -> Result<(), String> {
    let m = build_leaf_space(a);
    for p in m.point_ids() {
        for q in hcl_point(&m, p) {
            ensure(hcl_point(&m, q).contains(&p), || {
                format!("{} in hcl({}) but not conversely", m.point(q).name, m.point(p).name)
            })?;
        }
    }
    Ok(())
}

fn classification(a: &StripedAtlas) -> Result<(), String> {
    let m = build_leaf_space(a);
    let special = special_points(&m);
    for p in m.point_ids() {
        let class = classify_leaf(a, &m.point(p).kind);
        ensure((class == LeafClass::Special) == special.contains(&p), || {
            format!("{} classified {class:?} but hcl has {} points", m.point(p).name, hcl_point(&m, p).len())
        })?;
    }
    Ok(())
}

fn group_laws(a: &StripedAtlas) -> Result<(), String> {
    enumerate_automorphisms(a).check_group_laws()
}

fn psi_functoriality(a: &StripedAtlas) -> Result<(), String> {
    let m = build_leaf_space(a);
    let g = enumerate_automorphisms(a);
    let id = g.identity().ok_or("identity missing")?;
    ensure(induced_leaf_map(a, &m, &g.elements()[id]) == LeafMap::identity(&m), || {
        "identity does not induce the identity".into()
    })?;
    let maps: Vec<LeafMap> = g.elements().iter().map(|x| induced_leaf_map(a, &m, x)).collect();
    for (i, x) in g.elements().iter().enumerate() {
        ensure(maps[i].commutes_with_attachments(&m), || format!("element {i} breaks attachments"))?;
        for (j, y) in g.elements().iter().enumerate() {
            ensure(induced_leaf_map(a, &m, &x.after(y)) == maps[i].after(&maps[j]), || {
                format!("composition of elements {i} and {j}")
            })?;
        }
    }
    Ok(())
}

fn kernel_dichotomy(a: &StripedAtlas) -> Result<(), String> {
    let kernel = kernel_of_psi0(a).map_err(|e| e.to_string())?;
    let witness = reversal_witness(a).map_err(|e| e.to_string())?;
    ensure((kernel.order() == 2) == witness.is_some(), || {
        format!("kernel {kernel} but reversal witness {}", if witness.is_some() { "exists" } else { "absent" })
    })
}

fn reduction_invariants(a: &StripedAtlas) -> Result<(), String> {
    let m = build_leaf_space(a);
    let counts = (special_points(&m).len(), boundary_points(&m).len());
    let euler = euler_invariant(&build_dual_graph(a));
    match reduce_connected(a, &mut FirstSeam) {
        SurfaceClass::Proper(r) => {
            let mr = build_leaf_space(&r);
            ensure(euler_invariant(&build_dual_graph(&r)) == euler, || "euler invariant changed".into())?;
            ensure((special_points(&mr).len(), boundary_points(&mr).len()) == counts, || {
                "special or boundary point count changed".into()
            })?;
            match reduce_connected(&r, &mut FirstSeam) {
                SurfaceClass::Proper(rr) => ensure(isomorphic(&r, &rr).is_some(), || "not idempotent".into()),
                other => Err(format!("reduced atlas reduces further to {}", other.label())),
            }
        }
        class => ensure(euler == 0 && counts == (0, 0), || {
            format!("{} from an atlas with euler {euler} and counts {counts:?}", class.label())
        }),
    }
}

/// Runs all checks on each connected component; `k` is the deepest sampling
/// depth for the closure oracle.
pub fn selfcheck(atlas: &StripedAtlas, k: usize) -> SelfCheckReport {
    let mut results = Vec::new();
    for (component, c) in atlas.component_atlases().iter().enumerate() {
        let outcomes = [
            hcl_oracle(c, k),
            hcl_symmetry(c),
            classification(c),
            group_laws(c),
            psi_functoriality(c),
            kernel_dichotomy(c),
            reduction_invariants(c),
        ];
        for (check, outcome) in CHECKS.into_iter().zip(outcomes) {
            results.push(CheckResult { component, check, failure: outcome.err() });
        }
    }
    SelfCheckReport { results }
}
