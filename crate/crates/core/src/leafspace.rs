//! Combinatorial model of the leaf space `Y = Z / Δ`.
//!
//! Every strip contributes an open arc (its interior leaves, ordered by the
//! transverse coordinate) whose end `ε` approaches side `ε`. Every seam and
//! every free interval contributes one point. A point is attached to the end
//! of each strip side carrying one of its intervals; ends keep the x-order of
//! their side.
//!
//! Two points are non-separable exactly when they attach to a common end:
//! every saturated collar of one end sweeps interior leaves whose closures
//! meet all intervals of that side.

use std::collections::BTreeSet;

use crate::atlas::{IntervalId, Side, StripId, StripedAtlas};
use crate::topology::{hcl_bruteforce, FiniteBasisSpace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArcEnd {
    pub strip: StripId,
    pub side: Side,
}

impl ArcEnd {
    pub fn new(strip: StripId, side: Side) -> Self {
        ArcEnd { strip, side }
    }

    fn slot(self) -> usize {
        2 * self.strip.0 + self.side.index()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PointKind {
    /// The two intervals in the order of their gluing.
    Seam(IntervalId, IntervalId),
    Free(IntervalId),
}

impl PointKind {
    pub fn intervals(&self) -> Vec<IntervalId> {
        match *self {
            PointKind::Seam(a, b) => vec![a, b],
            PointKind::Free(a) => vec![a],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Attachment {
    pub end: ArcEnd,
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeafPoint {
    pub kind: PointKind,
    /// `a~b` for seams, the interval name for free intervals.
    pub name: String,
    /// One entry per constituent interval, in the order of `kind`.
    pub attachments: Vec<Attachment>,
}

impl LeafPoint {
    /// Distinct ends this point attaches to.
    pub fn ends(&self) -> BTreeSet<ArcEnd> {
        self.attachments.iter().map(|a| a.end).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeafSpaceModel {
    arc_names: Vec<String>,
    points: Vec<LeafPoint>,
    /// Per end (`2 * strip + side`), the attached point of each interval slot.
    ends: Vec<Vec<PointId>>,
    point_of_interval: Vec<PointId>,
}

pub fn build_leaf_space(atlas: &StripedAtlas) -> LeafSpaceModel {
    let mut points: Vec<LeafPoint> = Vec::new();
    let mut point_of_interval: Vec<Option<PointId>> = vec![None; atlas.interval_count()];
    let attach = |i: IntervalId| {
        let s = atlas.slot(i);
        Attachment {
            end: ArcEnd::new(s.strip, s.side),
            index: s.index,
        }
    };
    for i in atlas.interval_ids() {
        if point_of_interval[i.0].is_some() {
            continue;
        }
        let id = PointId(points.len());
        let point = match atlas.gluing_of(i) {
            Some(g) => {
                let g = atlas.gluing(g);
                point_of_interval[g.a.0] = Some(id);
                point_of_interval[g.b.0] = Some(id);
                LeafPoint {
                    kind: PointKind::Seam(g.a, g.b),
                    name: format!("{}~{}", atlas.interval_name(g.a), atlas.interval_name(g.b)),
                    attachments: vec![attach(g.a), attach(g.b)],
                }
            }
            None => {
                point_of_interval[i.0] = Some(id);
                LeafPoint {
                    kind: PointKind::Free(i),
                    name: atlas.interval_name(i).to_string(),
                    attachments: vec![attach(i)],
                }
            }
        };
        points.push(point);
    }
    let point_of_interval: Vec<PointId> = point_of_interval.into_iter().map(Option::unwrap).collect();
    let mut ends = Vec::with_capacity(2 * atlas.strip_count());
    for lam in atlas.strip_ids() {
        for side in Side::BOTH {
            ends.push(atlas.side(lam, side).iter().map(|i| point_of_interval[i.0]).collect());
        }
    }
    LeafSpaceModel {
        arc_names: atlas.strips().iter().map(|s| s.name.clone()).collect(),
        points,
        ends,
        point_of_interval,
    }
}

impl LeafSpaceModel {
    pub fn arc_count(&self) -> usize {
        self.arc_names.len()
    }

    pub fn arc_name(&self, arc: StripId) -> &str {
        &self.arc_names[arc.0]
    }

    pub fn points(&self) -> &[LeafPoint] {
        &self.points
    }

    pub fn point(&self, id: PointId) -> &LeafPoint {
        &self.points[id.0]
    }

    pub fn point_ids(&self) -> impl Iterator<Item = PointId> {
        (0..self.points.len()).map(PointId)
    }

    pub fn point_by_name(&self, name: &str) -> Option<PointId> {
        self.points.iter().position(|p| p.name == name).map(PointId)
    }

    pub fn point_of_interval(&self, i: IntervalId) -> PointId {
        self.point_of_interval[i.0]
    }

    /// Points attached to `end`, one entry per interval slot in side order.
    pub fn end_slots(&self, end: ArcEnd) -> &[PointId] {
        &self.ends[end.slot()]
    }

    pub fn all_ends(&self) -> impl Iterator<Item = ArcEnd> + '_ {
        (0..self.arc_count())
            .flat_map(|s| Side::BOTH.into_iter().map(move |e| ArcEnd::new(StripId(s), e)))
    }
}

/// Points sharing an end with `p`; always contains `p`.
pub fn hcl_point(model: &LeafSpaceModel, p: PointId) -> BTreeSet<PointId> {
    let mut out = BTreeSet::from([p]);
    for end in model.point(p).ends() {
        out.extend(model.end_slots(end).iter().copied());
    }
    out
}

pub fn special_points(model: &LeafSpaceModel) -> BTreeSet<PointId> {
    model.point_ids().filter(|&p| hcl_point(model, p).len() > 1).collect()
}

/// Points approached from one side only: all attachments lie on a single end.
pub fn boundary_points(model: &LeafSpaceModel) -> BTreeSet<PointId> {
    model.point_ids().filter(|&p| model.point(p).ends().len() == 1).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LeafClass {
    Regular,
    SingularNonSpecial,
    Special,
}

/// Type of the boundary leaf behind a point, read off the atlas sides.
pub fn classify_leaf(atlas: &StripedAtlas, kind: &PointKind) -> LeafClass {
    let side_of = |i: IntervalId| {
        let s = atlas.slot(i);
        atlas.side(s.strip, s.side)
    };
    match *kind {
        PointKind::Free(i) => {
            if side_of(i).len() == 1 {
                LeafClass::Regular
            } else {
                LeafClass::Special
            }
        }
        PointKind::Seam(a, b) => {
            let (sa, sb) = (atlas.slot(a), atlas.slot(b));
            if side_of(a).len() == 1 && side_of(b).len() == 1 {
                LeafClass::Regular
            } else if (sa.strip, sa.side) == (sb.strip, sb.side) && side_of(a).len() == 2 {
                LeafClass::SingularNonSpecial
            } else {
                LeafClass::Special
            }
        }
    }
}

/// Element of the sampled leaf space: a leaf point, or the `depth`-th of `k`
/// interior samples near an arc end (`depth == k` is closest to the end).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SampleElem {
    Point(PointId),
    Sample { end: ArcEnd, depth: usize },
}

/// Finite discretization of the leaf space with `k` samples per end region.
///
/// Each sample is an open singleton. A leaf point `p` gets one basic
/// neighborhood per depth `j`: `{p}` together with the samples of depth
/// `>= j` on every end `p` attaches to. Tails are shared by all points on an
/// end, and nested.
pub fn sampled_space(model: &LeafSpaceModel, k: usize) -> FiniteBasisSpace<SampleElem> {
    assert!(k >= 1, "sampling depth must be positive");
    let mut labels: Vec<SampleElem> = model.point_ids().map(SampleElem::Point).collect();
    let mut sample_ix = std::collections::HashMap::new();
    for end in model.all_ends() {
        for depth in 1..=k {
            sample_ix.insert((end, depth), labels.len());
            labels.push(SampleElem::Sample { end, depth });
        }
    }
    let mut basis: Vec<BTreeSet<usize>> = (model.points.len()..labels.len())
        .map(|x| BTreeSet::from([x]))
        .collect();
    for p in model.point_ids() {
        let ends = model.point(p).ends();
        for j in 1..=k {
            let mut nbhd = BTreeSet::from([p.0]);
            for &end in &ends {
                nbhd.extend((j..=k).map(|d| sample_ix[&(end, d)]));
            }
            basis.push(nbhd);
        }
    }
    FiniteBasisSpace::new(labels, basis)
}

/// Brute-force Hausdorff closure of a leaf point, restricted to leaf points.
pub fn hcl_sampled(model: &LeafSpaceModel, p: PointId, k: usize) -> BTreeSet<PointId> {
    let space = sampled_space(model, k);
    hcl_bruteforce(&space, p.0)
        .into_iter()
        .filter_map(|x| match space.label(x) {
            SampleElem::Point(q) => Some(*q),
            SampleElem::Sample { .. } => None,
        })
        .collect()
}

/// A way of computing Hausdorff closures of leaf points.
pub trait HclMethod: Send + Sync {
    fn name(&self) -> String;
    fn hcl(&self, model: &LeafSpaceModel, p: PointId) -> BTreeSet<PointId>;
}

/// Shared-end rule, see [`hcl_point`].
#[derive(Clone, Copy, Debug, Default)]
pub struct AttachmentRule;

impl HclMethod for AttachmentRule {
    fn name(&self) -> String {
        "rule".into()
    }

    fn hcl(&self, model: &LeafSpaceModel, p: PointId) -> BTreeSet<PointId> {
        hcl_point(model, p)
    }
}

/// Definition-level computation on [`sampled_space`].
#[derive(Clone, Copy, Debug)]
pub struct SampledOracle {
    pub depth: usize,
}

impl HclMethod for SampledOracle {
    fn name(&self) -> String {
        format!("sampled:{}", self.depth)
    }

    fn hcl(&self, model: &LeafSpaceModel, p: PointId) -> BTreeSet<PointId> {
        hcl_sampled(model, p, self.depth)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::random::{random_atlas, RandomAtlasConfig};

    fn model(text: &str) -> (StripedAtlas, LeafSpaceModel) {
        let a = fixtures::parse(text);
        let m = build_leaf_space(&a);
        (a, m)
    }

    fn pid(m: &LeafSpaceModel, name: &str) -> PointId {
        m.point_by_name(name).unwrap()
    }

    #[test]
    fn plane_has_one_arc_and_no_points() {
        let (_, m) = model(fixtures::PLANE);
        assert_eq!((m.arc_count(), m.points().len()), (1, 0));
    }

    #[test]
    fn punctured_points_attach_to_both_inner_ends() {
        let (_, m) = model(fixtures::PUNCTURED);
        assert_eq!((m.arc_count(), m.points().len()), (2, 2));
        let expect = BTreeSet::from([
            ArcEnd::new(StripId(0), Side::One),
            ArcEnd::new(StripId(1), Side::Zero),
        ]);
        for p in m.points() {
            assert_eq!(p.ends(), expect);
        }
        let p2 = pid(&m, "s2~t2");
        assert_eq!(m.point(p2).attachments[0].index, 1);
        assert_eq!(m.end_slots(ArcEnd::new(StripId(0), Side::One)), &[PointId(0), PointId(1)]);
    }

    #[test]
    fn cylinder_point_closes_the_arc() {
        let (_, m) = model(fixtures::CYL);
        assert_eq!(m.points().len(), 1);
        assert_eq!(m.points()[0].ends().len(), 2);
        assert_eq!(m.points()[0].ends().iter().map(|e| e.strip).collect::<BTreeSet<_>>().len(), 1);
    }

    #[test]
    fn hcl_examples() {
        let (_, m) = model(fixtures::PUNCTURED);
        let (p1, p2) = (pid(&m, "s1~t1"), pid(&m, "s2~t2"));
        assert_eq!(hcl_point(&m, p1), BTreeSet::from([p1, p2]));
        let (_, m) = model(fixtures::CYL);
        assert_eq!(hcl_point(&m, PointId(0)), BTreeSet::from([PointId(0)]));
        let (_, m) = model(fixtures::SAMESIDE);
        assert_eq!(hcl_point(&m, PointId(0)), BTreeSet::from([PointId(0)]));
    }

    #[test]
    fn special_and_boundary_examples() {
        let (_, m) = model(fixtures::PUNCTURED);
        assert_eq!(special_points(&m).len(), 2);
        assert!(boundary_points(&m).is_empty());
        let (_, m) = model(fixtures::HALFPLANE);
        assert!(special_points(&m).is_empty());
        assert_eq!(boundary_points(&m), BTreeSet::from([pid(&m, "a")]));
        let (_, m) = model(fixtures::SAMESIDE);
        assert!(special_points(&m).is_empty());
        assert_eq!(boundary_points(&m), BTreeSet::from([pid(&m, "a~b")]));
    }

    #[test]
    fn classification_examples() {
        let (a, m) = model(fixtures::CYL);
        assert_eq!(classify_leaf(&a, &m.points()[0].kind), LeafClass::Regular);
        let (a, m) = model(fixtures::SAMESIDE);
        assert_eq!(classify_leaf(&a, &m.points()[0].kind), LeafClass::SingularNonSpecial);
        let (a, m) = model(fixtures::PUNCTURED);
        for p in m.points() {
            assert_eq!(classify_leaf(&a, &p.kind), LeafClass::Special);
        }
        let (a, m) = model(fixtures::HALFPLANE);
        assert_eq!(classify_leaf(&a, &m.points()[0].kind), LeafClass::Regular);
        let (a, m) = model("strip S\nside0 a b\n");
        assert_eq!(classify_leaf(&a, &m.points()[1].kind), LeafClass::Special);
    }

    #[test]
    fn sampled_space_shapes() {
        let (_, m) = model(fixtures::PLANE);
        let s = sampled_space(&m, 3);
        assert_eq!(s.len(), 6);
        assert!((0..6).all(|x| s.is_open_singleton(x)));

        let (_, m) = model(fixtures::HALFPLANE);
        let s = sampled_space(&m, 2);
        assert_eq!(s.len(), 1 + 2 + 2);
        let end = ArcEnd::new(StripId(0), Side::Zero);
        let p = s.index_of(&SampleElem::Point(PointId(0))).unwrap();
        let y1 = s.index_of(&SampleElem::Sample { end, depth: 1 }).unwrap();
        let y2 = s.index_of(&SampleElem::Sample { end, depth: 2 }).unwrap();
        let nbhds: Vec<_> = s.basic_neighborhoods(p).cloned().collect();
        assert_eq!(nbhds, vec![BTreeSet::from([p, y1, y2]), BTreeSet::from([p, y2])]);
        assert!(s.satisfies_basis_axioms());
    }

    #[test]
    fn punctured_points_share_tails() {
        let (_, m) = model(fixtures::PUNCTURED);
        let s = sampled_space(&m, 2);
        let tails = |p: usize| -> Vec<BTreeSet<usize>> {
            s.basic_neighborhoods(p)
                .map(|b| b.iter().copied().filter(|&x| x != p).collect())
                .collect()
        };
        assert_eq!(tails(0), tails(1));
        assert_eq!(hcl_sampled(&m, PointId(0), 2), BTreeSet::from([PointId(0), PointId(1)]));
    }

    #[test]
    fn sampled_cylinder_point_is_hausdorff() {
        let (_, m) = model(fixtures::CYL);
        for k in 1..=3 {
            assert_eq!(hcl_sampled(&m, PointId(0), k), BTreeSet::from([PointId(0)]));
        }
    }

    #[test]
    fn non_deepest_samples_are_hausdorff() {
        for (_, a) in fixtures::all() {
            let m = build_leaf_space(&a);
            let s = sampled_space(&m, 3);
            for x in 0..s.len() {
                match *s.label(x) {
                    SampleElem::Sample { end, depth } if depth < 3 || m.end_slots(end).is_empty() => {
                        assert_eq!(hcl_bruteforce(&s, x), BTreeSet::from([x]));
                    }
                    SampleElem::Sample { end, .. } => {
                        // The deepest sample lies in every neighborhood of the
                        // points on its end, so the finite space puts them in its closure.
                        let pts: BTreeSet<usize> = m.end_slots(end).iter().map(|p| p.0).collect();
                        let mut expect = pts;
                        expect.insert(x);
                        assert_eq!(hcl_bruteforce(&s, x), expect);
                    }
                    SampleElem::Point(_) => {}
                }
            }
        }
    }

    #[test]
    fn oracle_agrees_and_hcl_is_symmetric_on_random_atlases() {
        for seed in 0..60 {
            let a = random_atlas(&RandomAtlasConfig::new(4, 3), seed);
            let m = build_leaf_space(&a);
            assert!(sampled_space(&m, 2).satisfies_basis_axioms());
            for p in m.point_ids() {
                let h = hcl_point(&m, p);
                for k in 1..=3 {
                    assert_eq!(hcl_sampled(&m, p, k), h, "seed {seed} point {p:?} k {k}");
                }
                for q in m.point_ids() {
                    assert_eq!(h.contains(&q), hcl_point(&m, q).contains(&p));
                }
            }
        }
    }

    #[test]
    fn classification_matches_special_and_boundary_sets() {
        for seed in 0..80 {
            let a = random_atlas(&RandomAtlasConfig::new(3, 3), seed);
            let m = build_leaf_space(&a);
            let (sp, bd) = (special_points(&m), boundary_points(&m));
            for p in m.point_ids() {
                let class = classify_leaf(&a, &m.point(p).kind);
                assert_eq!(class == LeafClass::Special, sp.contains(&p));
                if class == LeafClass::SingularNonSpecial {
                    assert!(bd.contains(&p) && !sp.contains(&p));
                }
            }
            let free = a.free_intervals().count();
            assert_eq!(m.points().len(), a.gluings().len() + free);
        }
    }
}
