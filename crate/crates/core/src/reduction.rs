//! Reduced atlases: merging strips across regular seams until every seam is a
//! singular leaf, or recognizing the open cylinder and Möbius band.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::atlas::{validate, AtlasDraft, DraftGluing, DraftStrip, GluingId, Parity, Side, StripedAtlas};
use crate::fixtures;
use crate::leafspace::{classify_leaf, LeafClass, PointKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SurfaceClass {
    Proper(StripedAtlas),
    OpenCylinder,
    OpenMoebiusBand,
}

impl SurfaceClass {
    pub fn label(&self) -> &'static str {
        match self {
            SurfaceClass::Proper(_) => "PROPER",
            SurfaceClass::OpenCylinder => "CYLINDER",
            SurfaceClass::OpenMoebiusBand => "MOEBIUS",
        }
    }

    pub fn proper(&self) -> Option<&StripedAtlas> {
        match self {
            SurfaceClass::Proper(a) => Some(a),
            _ => None,
        }
    }

    /// A one-strip atlas standing for the surface: the reduced atlas itself,
    /// or the canonical cylinder / Möbius fixture.
    pub fn representative(&self) -> StripedAtlas {
        match self {
            SurfaceClass::Proper(a) => a.clone(),
            SurfaceClass::OpenCylinder => fixtures::cyl(),
            SurfaceClass::OpenMoebiusBand => fixtures::moeb(),
        }
    }

    pub fn is_isomorphic(&self, other: &SurfaceClass) -> bool {
        match (self, other) {
            (SurfaceClass::Proper(a), SurfaceClass::Proper(b)) => crate::morphism::isomorphic(a, b).is_some(),
            (SurfaceClass::OpenCylinder, SurfaceClass::OpenCylinder)
            | (SurfaceClass::OpenMoebiusBand, SurfaceClass::OpenMoebiusBand) => true,
            _ => false,
        }
    }
}

/// Chooses which regular seam to eliminate next.
pub trait SeamPolicy: Send {
    fn name(&self) -> &'static str;
    /// `candidates` is non-empty and ascending.
    fn pick(&mut self, candidates: &[GluingId]) -> GluingId;
}

#[derive(Clone, Copy, Debug, Default)]
pub struct FirstSeam;

impl SeamPolicy for FirstSeam {
    fn name(&self) -> &'static str {
        "first"
    }
    fn pick(&mut self, candidates: &[GluingId]) -> GluingId {
        candidates[0]
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct LastSeam;

impl SeamPolicy for LastSeam {
    fn name(&self) -> &'static str {
        "last"
    }
    fn pick(&mut self, candidates: &[GluingId]) -> GluingId {
        *candidates.last().unwrap()
    }
}

#[derive(Clone, Debug)]
pub struct SeededSeam(ChaCha8Rng);

impl SeededSeam {
    pub fn new(seed: u64) -> Self {
        SeededSeam(ChaCha8Rng::seed_from_u64(seed))
    }
}

impl SeamPolicy for SeededSeam {
    fn name(&self) -> &'static str {
        "seeded"
    }
    fn pick(&mut self, candidates: &[GluingId]) -> GluingId {
        *candidates.choose(&mut self.0).unwrap()
    }
}

pub fn regular_seams(atlas: &StripedAtlas) -> Vec<GluingId> {
    atlas
        .gluing_ids()
        .filter(|&g| {
            let g = atlas.gluing(g);
            classify_leaf(atlas, &PointKind::Seam(g.a, g.b)) == LeafClass::Regular
        })
        .collect()
}

/// No seam is a regular leaf. Free intervals lie in the boundary regardless.
pub fn is_reduced(atlas: &StripedAtlas) -> bool {
    regular_seams(atlas).is_empty()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MergeOutcome {
    Merged(StripedAtlas),
    Exceptional(SurfaceClass),
}

/// Eliminates one regular seam.
///
/// Across two strips `A < B`: turn `A` so the seam is on its side 1 and `B`
/// so it is on its side 0, reverse `B` when the gluing is decreasing, then
/// stack them. The merged strip keeps `A`'s name and position.
pub fn merge_seam(atlas: &StripedAtlas, seam: GluingId) -> MergeOutcome {
    let g = *atlas.gluing(seam);
    let (sa, sb) = (atlas.slot(g.a), atlas.slot(g.b));
    assert!(
        atlas.side(sa.strip, sa.side).len() == 1 && atlas.side(sb.strip, sb.side).len() == 1,
        "merge_seam needs a regular seam"
    );
    if sa.strip == sb.strip {
        assert_ne!(sa.side, sb.side, "a regular seam cannot join a side to itself");
        return MergeOutcome::Exceptional(match g.parity {
            Parity::Increasing => SurfaceClass::OpenCylinder,
            Parity::Decreasing => SurfaceClass::OpenMoebiusBand,
        });
    }
    let (a_slot, b_slot) = if sa.strip < sb.strip { (sa, sb) } else { (sb, sa) };
    let (a, b) = (a_slot.strip, b_slot.strip);
    let reverse_b = g.parity == Parity::Decreasing;

    let draft = atlas.to_draft();
    let side_names = |strip: &DraftStrip, side: Side| match side {
        Side::Zero => strip.side0.clone(),
        Side::One => strip.side1.clone(),
    };
    let a_outer = side_names(&draft.strips[a.0], a_slot.side.flipped());
    let mut b_outer = side_names(&draft.strips[b.0], b_slot.side.flipped());
    if reverse_b {
        b_outer.reverse();
    }
    let merged = DraftStrip {
        name: draft.strips[a.0].name.clone(),
        side0: a_outer,
        side1: b_outer,
    };

    let mut strips = draft.strips.clone();
    strips[a.0] = merged;
    strips.remove(b.0);

    let in_b = |i| atlas.slot(i).strip == b;
    let gluings = atlas
        .gluings()
        .iter()
        .zip(&draft.gluings)
        .enumerate()
        .filter(|(k, _)| *k != seam.0)
        .map(|(_, (gl, dg))| DraftGluing {
            parity: dg.parity.flip_if(reverse_b && (in_b(gl.a) ^ in_b(gl.b))),
            ..dg.clone()
        })
        .collect();

    MergeOutcome::Merged(
        validate(&AtlasDraft { strips, gluings }).expect("merging keeps the atlas valid"),
    )
}

/// Reduces a connected atlas.
pub fn reduce_connected(atlas: &StripedAtlas, policy: &mut dyn SeamPolicy) -> SurfaceClass {
    let mut current = atlas.clone();
    loop {
        let seams = regular_seams(&current);
        if seams.is_empty() {
            return SurfaceClass::Proper(current);
        }
        match merge_seam(&current, policy.pick(&seams)) {
            MergeOutcome::Merged(next) => current = next,
            MergeOutcome::Exceptional(class) => return class,
        }
    }
}

/// One surface class per connected component, in component order.
pub fn reduce_with(atlas: &StripedAtlas, policy: &mut dyn SeamPolicy) -> Vec<SurfaceClass> {
    atlas
        .component_atlases()
        .iter()
        .map(|c| reduce_connected(c, policy))
        .collect()
}

pub fn reduce(atlas: &StripedAtlas) -> Vec<SurfaceClass> {
    reduce_with(atlas, &mut FirstSeam)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dualgraph::{build_dual_graph, euler_invariant};
    use crate::leafspace::{boundary_points, build_leaf_space, special_points};
    use crate::morphism::isomorphic;
    use crate::random::{random_atlas, RandomAtlasConfig};

    #[test]
    fn reducedness_examples() {
        assert!(is_reduced(&fixtures::punctured()));
        assert!(!is_reduced(&fixtures::ladder()));
        assert!(is_reduced(&fixtures::plane()));
        assert!(!is_reduced(&fixtures::cyl()));
    }

    #[test]
    fn ladder_reduces_to_plane() {
        let r = reduce(&fixtures::ladder());
        assert_eq!(r.len(), 1);
        let a = r[0].proper().unwrap();
        assert!(isomorphic(a, &fixtures::plane()).is_some());
    }

    #[test]
    fn exceptional_surfaces() {
        assert_eq!(reduce(&fixtures::cyl()), vec![SurfaceClass::OpenCylinder]);
        assert_eq!(reduce(&fixtures::moeb()), vec![SurfaceClass::OpenMoebiusBand]);
    }

    #[test]
    fn punctured_is_left_alone() {
        assert_eq!(reduce(&fixtures::punctured()), vec![SurfaceClass::Proper(fixtures::punctured())]);
    }

    #[test]
    fn two_strip_cylinder_and_band() {
        let cyl2 = fixtures::parse("strip S\nside0 d\nside1 a\nstrip T\nside0 b\nside1 c\nglue a b +\nglue c d +\n");
        assert_eq!(reduce(&cyl2), vec![SurfaceClass::OpenCylinder]);
        // One decreasing seam makes the monodromy orientation-reversing.
        let band = fixtures::parse("strip S\nside0 d\nside1 a\nstrip T\nside0 b\nside1 c\nglue a b -\nglue c d +\n");
        assert_eq!(reduce(&band), vec![SurfaceClass::OpenMoebiusBand]);
        let both = fixtures::parse("strip S\nside0 d\nside1 a\nstrip T\nside0 b\nside1 c\nglue a b -\nglue c d -\n");
        assert_eq!(reduce(&both), vec![SurfaceClass::OpenCylinder]);
        // Gluing side 0 to side 0 flips the transverse direction, not the leaves.
        let same = fixtures::parse("strip S\nside0 a\nside1 d\nstrip T\nside0 b\nside1 c\nglue a b +\nglue c d +\n");
        assert_eq!(reduce(&same), vec![SurfaceClass::OpenCylinder]);
    }

    #[test]
    fn decreasing_merge_reverses_the_second_strip() {
        let a = fixtures::parse("strip S\nside0 x y\nside1 a\nstrip T\nside0 b\nside1 u v\nglue a b -\nglue x u +\n");
        let MergeOutcome::Merged(m) = merge_seam(&a, GluingId(0)) else { panic!() };
        assert_eq!(
            crate::format::to_text(&m),
            "strip S\nside0 x y\nside1 v u\nglue x u -\n"
        );
    }

    fn random_non_reduced(seed: u64) -> StripedAtlas {
        let cfg = RandomAtlasConfig {
            max_intervals_per_side: 2,
            glue_probability: 0.9,
            ..RandomAtlasConfig::new(1 + (seed % 4) as usize, 2)
        };
        random_atlas(&cfg, seed)
    }

    #[test]
    fn policies_are_confluent_up_to_isomorphism() {
        let mut tried = 0;
        for seed in 0..300 {
            let a = random_non_reduced(seed);
            if is_reduced(&a) {
                continue;
            }
            tried += 1;
            let first = reduce_with(&a, &mut FirstSeam);
            let last = reduce_with(&a, &mut LastSeam);
            let rnd = reduce_with(&a, &mut SeededSeam::new(seed));
            for ((x, y), z) in first.iter().zip(&last).zip(&rnd) {
                assert!(x.is_isomorphic(y) && x.is_isomorphic(z), "seed {seed}");
            }
        }
        assert!(tried > 50);
    }

    #[test]
    fn every_merge_step_preserves_invariants() {
        for seed in 0..300 {
            let mut current = random_non_reduced(seed).component_atlases().remove(0);
            loop {
                let seams = regular_seams(&current);
                let Some(&seam) = seams.first() else { break };
                let before_euler = euler_invariant(&build_dual_graph(&current));
                let m = build_leaf_space(&current);
                let before = (special_points(&m).len(), boundary_points(&m).len());
                match merge_seam(&current, seam) {
                    MergeOutcome::Merged(next) => {
                        assert_eq!(euler_invariant(&build_dual_graph(&next)), before_euler);
                        let m = build_leaf_space(&next);
                        assert_eq!((special_points(&m).len(), boundary_points(&m).len()), before);
                        assert_eq!(next.strip_count() + 1, current.strip_count());
                        current = next;
                    }
                    MergeOutcome::Exceptional(_) => {
                        assert_eq!(before_euler, 0);
                        assert_eq!(before, (0, 0));
                        break;
                    }
                }
            }
        }
    }

    #[test]
    fn reduction_is_idempotent() {
        for seed in 0..200 {
            for class in reduce(&random_non_reduced(seed)) {
                if let SurfaceClass::Proper(a) = &class {
                    assert!(is_reduced(a));
                    assert_eq!(reduce(a), vec![class.clone()]);
                }
            }
        }
    }
}
