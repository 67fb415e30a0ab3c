//! Combinatorial maps between striped atlases.
//!
//! A [`StripMap`] sends strip `i` to strip `sigma[i]`. `flip[i]` swaps the two
//! sides (the reparameterization of the transverse coordinate is decreasing)
//! and `reverse[i]` reverses the order of intervals on both sides (the
//! leafwise maps are decreasing). The interval bijection is then forced: the
//! k-th interval of a side goes to the k-th (or, when reversed, the k-th from
//! the end) interval of the image side.
//!
//! Conjugating a monotone gluing by one leafwise reversal flips its
//! monotonicity, so a gluing of parity `p` between strips `i`, `j` must land on
//! a gluing of parity `p ^ reverse[i] ^ reverse[j]`.

use std::fmt::Write as _;

use crate::atlas::{IntervalId, Side, Slot, StripId, StripedAtlas};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StripMap {
    pub sigma: Vec<StripId>,
    pub flip: Vec<bool>,
    pub reverse: Vec<bool>,
}

/// A [`StripMap`] from an atlas to itself.
pub type AtlasAutomorphism = StripMap;

impl StripMap {
    pub fn identity(n: usize) -> Self {
        StripMap {
            sigma: (0..n).map(StripId).collect(),
            flip: vec![false; n],
            reverse: vec![false; n],
        }
    }

    /// `(id, no flips, reverse everything)`.
    pub fn full_reversal(n: usize) -> Self {
        StripMap {
            reverse: vec![true; n],
            ..Self::identity(n)
        }
    }

    pub fn len(&self) -> usize {
        self.sigma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigma.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.fixes_strips() && !self.flip.iter().any(|&b| b) && !self.reverse.iter().any(|&b| b)
    }

    pub fn fixes_strips(&self) -> bool {
        self.sigma.iter().enumerate().all(|(i, s)| s.0 == i)
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &StripMap) -> StripMap {
        let n = first.len();
        let mut out = StripMap::identity(n);
        for i in 0..n {
            let mid = first.sigma[i].0;
            out.sigma[i] = self.sigma[mid];
            out.flip[i] = self.flip[mid] ^ first.flip[i];
            out.reverse[i] = self.reverse[mid] ^ first.reverse[i];
        }
        out
    }

    pub fn inverse(&self) -> StripMap {
        let n = self.len();
        let mut out = StripMap::identity(n);
        for i in 0..n {
            let j = self.sigma[i].0;
            out.sigma[j] = StripId(i);
            out.flip[j] = self.flip[i];
            out.reverse[j] = self.reverse[i];
        }
        out
    }

    /// Image slot of `slot`, given the length of the source side.
    pub fn map_slot(&self, slot: Slot, side_len: usize) -> Slot {
        let i = slot.strip.0;
        Slot {
            strip: self.sigma[i],
            side: slot.side.flip_if(self.flip[i]),
            index: if self.reverse[i] {
                side_len - 1 - slot.index
            } else {
                slot.index
            },
        }
    }

    /// Image of an interval of `source` in `target`. Requires matching side
    /// lengths (see [`is_valid_isomorphism`]).
    pub fn map_interval(
        &self,
        source: &StripedAtlas,
        target: &StripedAtlas,
        id: IntervalId,
    ) -> IntervalId {
        let slot = source.slot(id);
        let len = source.side(slot.strip, slot.side).len();
        target
            .interval_at(self.map_slot(slot, len))
            .expect("side lengths agree")
    }

    /// `sigma: S->T,... m: S=1,... r: S=0,...` using strip names of both atlases.
    pub fn describe(&self, source: &StripedAtlas, target: &StripedAtlas) -> String {
        let mut out = String::from("sigma:");
        let names = |i: usize| &source.strips()[i].name;
        for i in 0..self.len() {
            let sep = if i == 0 { " " } else { "," };
            write!(out, "{sep}{}->{}", names(i), target.strips()[self.sigma[i].0].name).unwrap();
        }
        for (label, bits) in [("m", &self.flip), ("r", &self.reverse)] {
            write!(out, " {label}:").unwrap();
            for (i, b) in bits.iter().enumerate() {
                let sep = if i == 0 { " " } else { "," };
                write!(out, "{sep}{}={}", names(i), u8::from(*b)).unwrap();
            }
        }
        out
    }
}

/// Whether `map` is a combinatorial isomorphism from `a` to `b`.
pub fn is_valid_isomorphism(a: &StripedAtlas, b: &StripedAtlas, map: &StripMap) -> bool {
    let n = a.strip_count();
    if b.strip_count() != n || map.len() != n || map.flip.len() != n || map.reverse.len() != n {
        return false;
    }
    let mut hit = vec![false; n];
    for s in &map.sigma {
        if s.0 >= n || std::mem::replace(&mut hit[s.0], true) {
            return false;
        }
    }
    if a.interval_count() != b.interval_count() || a.gluings().len() != b.gluings().len() {
        return false;
    }
    for lam in a.strip_ids() {
        for side in Side::BOTH {
            let image = side.flip_if(map.flip[lam.0]);
            if a.side(lam, side).len() != b.side(map.sigma[lam.0], image).len() {
                return false;
            }
        }
    }
    for i in a.interval_ids() {
        let image = map.map_interval(a, b, i);
        match a.partner(i) {
            None => {
                if !b.is_free(image) {
                    return false;
                }
            }
            Some((j, parity)) => {
                let want = parity.flip_if(
                    map.reverse[a.slot(i).strip.0] ^ map.reverse[a.slot(j).strip.0],
                );
                match b.gluing_between(image, map.map_interval(a, b, j)) {
                    Some(g) if g.parity == want => {}
                    _ => return false,
                }
            }
        }
    }
    true
}

pub fn is_valid_automorphism(atlas: &StripedAtlas, aut: &AtlasAutomorphism) -> bool {
    is_valid_isomorphism(atlas, atlas, aut)
}

/// Some isomorphism `a -> b`, found with the default search strategy.
pub fn isomorphic(a: &StripedAtlas, b: &StripedAtlas) -> Option<StripMap> {
    use crate::search::{Backtrack, IsomorphismSearch};
    Backtrack.first(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn sm(sigma: &[usize], flip: &[u8], reverse: &[u8]) -> StripMap {
        StripMap {
            sigma: sigma.iter().map(|&i| StripId(i)).collect(),
            flip: flip.iter().map(|&b| b == 1).collect(),
            reverse: reverse.iter().map(|&b| b == 1).collect(),
        }
    }

    #[test]
    fn punctured_reversal_is_valid() {
        assert!(is_valid_automorphism(&fixtures::punctured(), &sm(&[0, 1], &[0, 0], &[1, 1])));
    }

    #[test]
    fn punctured_swap_with_mismatched_flip_is_invalid() {
        let a = fixtures::punctured();
        for r in [[0, 0], [0, 1], [1, 0], [1, 1]] {
            assert!(!is_valid_automorphism(&a, &sm(&[1, 0], &[1, 0], &r)));
        }
    }

    #[test]
    fn cylinder_side_flip_is_valid() {
        assert!(is_valid_automorphism(&fixtures::cyl(), &sm(&[0], &[1], &[0])));
    }

    #[test]
    fn mixed_reversal_breaks_punctured_seams() {
        assert!(!is_valid_automorphism(&fixtures::punctured(), &sm(&[0, 1], &[0, 0], &[1, 0])));
    }

    #[test]
    fn cylinder_and_moebius_have_no_isomorphism() {
        let (c, m) = (fixtures::cyl(), fixtures::moeb());
        let mut candidates = 0;
        for f in 0..2 {
            for r in 0..2 {
                for sigma in [[0usize]] {
                    candidates += 1;
                    assert!(!is_valid_isomorphism(&c, &m, &sm(&sigma, &[f], &[r])));
                }
            }
        }
        // 1 permutation x 2 flips x 2 reversals, in both directions
        for f in 0..2 {
            for r in 0..2 {
                candidates += 1;
                assert!(!is_valid_isomorphism(&m, &c, &sm(&[0], &[f], &[r])));
            }
        }
        assert_eq!(candidates, 8);
        assert!(isomorphic(&c, &m).is_none());
    }

    #[test]
    fn sameside_mirror_has_reversing_witness() {
        let a = fixtures::sameside();
        let mirror = crate::format::parse_atlas("strip S\nside0 b a\nglue a b +\n").unwrap();
        assert!(is_valid_isomorphism(&a, &mirror, &sm(&[0], &[0], &[1])));
        assert!(isomorphic(&a, &mirror).is_some());
    }

    #[test]
    fn plane_identity_witness() {
        let p = fixtures::plane();
        assert_eq!(isomorphic(&p, &p), Some(StripMap::identity(1)));
    }

    #[test]
    fn composition_and_inverse() {
        let a = sm(&[1, 2, 0], &[1, 0, 0], &[0, 1, 1]);
        let b = sm(&[2, 0, 1], &[0, 1, 1], &[1, 1, 0]);
        assert!(a.after(&a.inverse()).is_identity());
        assert!(a.inverse().after(&a).is_identity());
        let c = sm(&[0, 2, 1], &[1, 1, 0], &[0, 0, 1]);
        assert_eq!(a.after(&b).after(&c), a.after(&b.after(&c)));
    }

    #[test]
    fn describe_format() {
        let a = fixtures::punctured();
        assert_eq!(
            sm(&[1, 0], &[1, 1], &[0, 1]).describe(&a, &a),
            "sigma: S->T,T->S m: S=1,T=1 r: S=0,T=1"
        );
    }
}
