//! Seeded random atlases for fuzzing.
//!
//! Distribution: every side of every strip independently gets a uniform
//! number of intervals in `0..=max_intervals_per_side`. All intervals are then
//! shuffled and taken two at a time; each consecutive pair becomes a gluing
//! with probability `glue_probability`, decreasing with probability
//! `decreasing_probability`. An odd interval out stays free. Strips are named
//! `S0, S1, ..` and intervals `i0, i1, ..` in side order.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::atlas::{validate, AtlasDraft, DraftGluing, DraftStrip, Parity, StripedAtlas};

#[derive(Clone, Debug, PartialEq)]
pub struct RandomAtlasConfig {
    pub strips: usize,
    pub max_intervals_per_side: usize,
    pub glue_probability: f64,
    pub decreasing_probability: f64,
}

impl RandomAtlasConfig {
    pub fn new(strips: usize, max_intervals_per_side: usize) -> Self {
        RandomAtlasConfig {
            strips,
            max_intervals_per_side,
            glue_probability: 0.7,
            decreasing_probability: 0.5,
        }
    }
}

pub fn random_atlas(cfg: &RandomAtlasConfig, seed: u64) -> StripedAtlas {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut next = 0usize;
    let mut strips = Vec::with_capacity(cfg.strips);
    for s in 0..cfg.strips {
        let mut side = || {
            let n = rng.gen_range(0..=cfg.max_intervals_per_side);
            (0..n)
                .map(|_| {
                    next += 1;
                    format!("i{}", next - 1)
                })
                .collect::<Vec<_>>()
        };
        let side0 = side();
        let side1 = side();
        strips.push(DraftStrip { name: format!("S{s}"), side0, side1 });
    }
    let mut names: Vec<String> = strips.iter().flat_map(|s| s.side0.iter().chain(&s.side1).cloned()).collect();
    names.shuffle(&mut rng);
    let mut gluings = Vec::new();
    for pair in names.chunks_exact(2) {
        if rng.gen_bool(cfg.glue_probability) {
            let parity = if rng.gen_bool(cfg.decreasing_probability) {
                Parity::Decreasing
            } else {
                Parity::Increasing
            };
            gluings.push(DraftGluing { a: pair[0].clone(), b: pair[1].clone(), parity });
        }
    }
    validate(&AtlasDraft { strips, gluings }).expect("generator produces valid atlases")
}

/// `count` connected atlases with 1 to `max_strips` strips, taken from
/// consecutive seeds starting at `first_seed`; disconnected draws are skipped.
pub fn random_connected_atlases(
    count: usize,
    max_strips: usize,
    max_intervals_per_side: usize,
    first_seed: u64,
) -> Vec<StripedAtlas> {
    let mut out = Vec::with_capacity(count);
    let mut seed = first_seed;
    while out.len() < count {
        let strips = 1 + (seed % max_strips as u64) as usize;
        let cfg = RandomAtlasConfig {
            glue_probability: 0.9,
            ..RandomAtlasConfig::new(strips, max_intervals_per_side)
        };
        let a = random_atlas(&cfg, seed);
        if a.is_connected() {
            out.push(a);
        }
        seed += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::morphism::isomorphic;
    use proptest::prelude::*;

    #[test]
    fn no_intervals_gives_plane() {
        for seed in 0..5 {
            assert!(isomorphic(&random_atlas(&RandomAtlasConfig::new(1, 0), seed), &fixtures::plane()).is_some());
        }
    }

    #[test]
    fn deterministic() {
        let cfg = RandomAtlasConfig::new(3, 2);
        assert_eq!(crate::format::to_text(&random_atlas(&cfg, 42)), crate::format::to_text(&random_atlas(&cfg, 42)));
    }

    #[test]
    fn connected_corpus() {
        let c = random_connected_atlases(50, 4, 3, 7);
        assert_eq!(c.len(), 50);
        assert!(c.iter().all(|a| a.is_connected()));
        assert!(c.iter().any(|a| a.strip_count() == 4));
    }

    proptest! {
        #[test]
        fn respects_bounds(strips in 1usize..5, ints in 0usize..4, seed: u64) {
            let a = random_atlas(&RandomAtlasConfig::new(strips, ints), seed);
            prop_assert_eq!(a.strip_count(), strips);
            for s in a.strips() {
                prop_assert!(s.sides[0].len() <= ints && s.sides[1].len() <= ints);
            }
            prop_assert!(2 * a.gluings().len() <= a.interval_count());
        }
    }
}
