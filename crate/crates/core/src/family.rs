//! Every atlas up to a size bound, one per isomorphism class.

use std::collections::HashSet;

use itertools::Itertools;
use rayon::prelude::*;

use crate::atlas::{validate, AtlasDraft, DraftGluing, DraftStrip, Parity, StripedAtlas};

/// Side-length vectors `[(l0, l1); n]` that are lexicographically least among
/// their images under strip permutations and side swaps. Every atlas is
/// isomorphic to one whose lengths are in this list.
fn canonical_side_lengths(n: usize, max_per_side: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..=max_per_side).cartesian_product(0..=max_per_side).collect();
    (0..n)
        .map(|_| pairs.iter().copied())
        .multi_cartesian_product()
        .filter(|v| {
            v.iter().all(|&(a, b)| a <= b) && v.windows(2).all(|w| w[0] <= w[1])
        })
        .collect()
}

/// Partial matchings of `0..count` with a parity per matched pair.
fn signed_matchings(count: usize) -> Vec<Vec<(usize, usize, Parity)>> {
    fn go(free: &mut Vec<bool>, acc: &mut Vec<(usize, usize, Parity)>, out: &mut Vec<Vec<(usize, usize, Parity)>>) {
        let Some(i) = free.iter().position(|&f| f) else {
            out.push(acc.clone());
            return;
        };
        free[i] = false;
        go(free, acc, out);
        for j in i + 1..free.len() {
            if free[j] {
                free[j] = false;
                for p in [Parity::Increasing, Parity::Decreasing] {
                    acc.push((i, j, p));
                    go(free, acc, out);
                    acc.pop();
                }
                free[j] = true;
            }
        }
        free[i] = true;
    }
    let mut out = Vec::new();
    go(&mut vec![true; count], &mut Vec::new(), &mut out);
    out
}

fn build(lengths: &[(usize, usize)], matching: &[(usize, usize, Parity)]) -> StripedAtlas {
    let mut next = 0;
    let mut names = |k: usize| {
        let v: Vec<String> = (next..next + k).map(|i| format!("i{i}")).collect();
        next += k;
        v
    };
    let strips = lengths
        .iter()
        .enumerate()
        .map(|(s, &(l0, l1))| DraftStrip { name: format!("S{s}"), side0: names(l0), side1: names(l1) })
        .collect();
    let gluings = matching
        .iter()
        .map(|&(a, b, parity)| DraftGluing { a: format!("i{a}"), b: format!("i{b}"), parity })
        .collect();
    validate(&AtlasDraft { strips, gluings }).expect("family members are valid")
}

/// All valid atlases with 1 to `max_strips` strips and at most `max_per_side`
/// intervals per side, one representative per isomorphism class, in a
/// deterministic order.
pub fn exhaustive_family(max_strips: usize, max_per_side: usize) -> Vec<StripedAtlas> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for n in 1..=max_strips {
        for lengths in canonical_side_lengths(n, max_per_side) {
            let count: usize = lengths.iter().map(|&(a, b)| a + b).sum();
            let keyed: Vec<(Vec<u32>, StripedAtlas)> = signed_matchings(count)
                .into_par_iter()
                .map(|m| {
                    let a = build(&lengths, &m);
                    (a.canonical_key(), a)
                })
                .collect();
            for (key, a) in keyed {
                if seen.insert(key) {
                    out.push(a);
                }
            }
        }
    }
    out
}

pub fn exhaustive_connected_family(max_strips: usize, max_per_side: usize) -> Vec<StripedAtlas> {
    exhaustive_family(max_strips, max_per_side).into_iter().filter(StripedAtlas::is_connected).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::morphism::isomorphic;

    #[test]
    fn matching_counts() {
        // Signed partial matchings: a(n) = a(n-1) + 2(n-1)a(n-2).
        let counts: Vec<usize> = (0..6).map(|n| signed_matchings(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 3, 7, 25, 81]);
    }

    #[test]
    fn one_strip_one_interval_per_side() {
        // Lengths up to swap: (0,0), (0,1), (1,1). The last admits free, +, -.
        let f = exhaustive_family(1, 1);
        assert_eq!(f.len(), 5);
        for fx in [fixtures::plane(), fixtures::halfplane(), fixtures::cyl(), fixtures::moeb()] {
            assert_eq!(f.iter().filter(|a| isomorphic(a, &fx).is_some()).count(), 1);
        }
    }

    #[test]
    fn representatives_are_pairwise_non_isomorphic() {
        let f = exhaustive_family(2, 1);
        for (i, a) in f.iter().enumerate() {
            for b in &f[i + 1..] {
                if a.strip_count() == b.strip_count() {
                    assert!(isomorphic(a, b).is_none());
                }
            }
        }
    }

    #[test]
    fn covers_fixtures() {
        let f = exhaustive_family(2, 2);
        for (name, _) in fixtures::ALL {
            let fx = fixtures::by_name(name).unwrap();
            assert!(f.iter().any(|a| isomorphic(a, &fx).is_some()), "{name}");
        }
    }
}
