//! Finite striped atlases: model strips with ordered boundary intervals, glued
//! pairwise along intervals by monotone maps.
//!
//! An atlas is built from an [`AtlasDraft`] (names only, possibly invalid) via
//! [`validate`]. A [`StripedAtlas`] value is always valid and immutable.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use itertools::Itertools;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StripId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntervalId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GluingId(pub usize);

/// One of the two boundary lines `R x {0}` and `R x {1}` of a model strip.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Zero,
    One,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::Zero, Side::One];

    pub fn index(self) -> usize {
        match self {
            Side::Zero => 0,
            Side::One => 1,
        }
    }

    pub fn from_index(i: usize) -> Side {
        if i == 0 {
            Side::Zero
        } else {
            Side::One
        }
    }

    pub fn flipped(self) -> Side {
        match self {
            Side::Zero => Side::One,
            Side::One => Side::Zero,
        }
    }

    pub fn flip_if(self, flip: bool) -> Side {
        if flip {
            self.flipped()
        } else {
            self
        }
    }
}

/// Monotonicity class of a gluing map. The class of a homeomorphism equals
/// the class of its inverse, so a gluing's parity does not depend on direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Increasing,
    Decreasing,
}

impl Parity {
    pub fn flip_if(self, flip: bool) -> Parity {
        match (self, flip) {
            (p, false) => p,
            (Parity::Increasing, true) => Parity::Decreasing,
            (Parity::Decreasing, true) => Parity::Increasing,
        }
    }

    pub fn is_decreasing(self) -> bool {
        self == Parity::Decreasing
    }

    pub fn symbol(self) -> char {
        match self {
            Parity::Increasing => '+',
            Parity::Decreasing => '-',
        }
    }

    pub fn from_symbol(s: &str) -> Option<Parity> {
        match s {
            "+" => Some(Parity::Increasing),
            "-" => Some(Parity::Decreasing),
            _ => None,
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strip {
    pub name: String,
    /// Intervals of side 0 and side 1, each in increasing x-order.
    pub sides: [Vec<IntervalId>; 2],
}

impl Strip {
    pub fn side(&self, side: Side) -> &[IntervalId] {
        &self.sides[side.index()]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gluing {
    pub a: IntervalId,
    pub b: IntervalId,
    pub parity: Parity,
}

impl Gluing {
    pub fn other(&self, i: IntervalId) -> IntervalId {
        if i == self.a {
            self.b
        } else {
            self.a
        }
    }
}

/// Position of an interval: strip, side, and index in x-order along the side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slot {
    pub strip: StripId,
    pub side: Side,
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DraftStrip {
    pub name: String,
    pub side0: Vec<String>,
    pub side1: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DraftGluing {
    pub a: String,
    pub b: String,
    pub parity: Parity,
}

/// Name-level description of an atlas that has not been checked yet.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AtlasDraft {
    pub strips: Vec<DraftStrip>,
    pub gluings: Vec<DraftGluing>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DuplicateStrip(String),
    DuplicateInterval(String),
    UnknownInterval(String),
    SelfGluing(String),
    MultiplyGlued(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateStrip(n) => write!(f, "duplicate strip id: {n}"),
            Violation::DuplicateInterval(n) => write!(f, "duplicate interval id: {n}"),
            Violation::UnknownInterval(n) => write!(f, "glue references unknown interval: {n}"),
            Violation::SelfGluing(n) => write!(f, "interval glued to itself: {n}"),
            Violation::MultiplyGlued(n) => write!(f, "interval multiply glued: {n}"),
        }
    }
}

/// Checks every atlas invariant, collecting all violations instead of stopping
/// at the first one.
pub fn validate(draft: &AtlasDraft) -> Result<StripedAtlas, Vec<Violation>> {
    let mut violations = Vec::new();
    let mut strip_names = HashSet::new();
    let mut interval_ix: HashMap<&str, IntervalId> = HashMap::new();
    let mut names = Vec::new();
    let mut slots = Vec::new();
    let mut strips = Vec::new();

    for (s, ds) in draft.strips.iter().enumerate() {
        if !strip_names.insert(ds.name.as_str()) {
            violations.push(Violation::DuplicateStrip(ds.name.clone()));
        }
        let mut sides: [Vec<IntervalId>; 2] = [Vec::new(), Vec::new()];
        for (side, list) in [(Side::Zero, &ds.side0), (Side::One, &ds.side1)] {
            for name in list {
                if interval_ix.contains_key(name.as_str()) {
                    violations.push(Violation::DuplicateInterval(name.clone()));
                    continue;
                }
                let id = IntervalId(names.len());
                interval_ix.insert(name, id);
                names.push(name.clone());
                slots.push(Slot {
                    strip: StripId(s),
                    side,
                    index: sides[side.index()].len(),
                });
                sides[side.index()].push(id);
            }
        }
        strips.push(Strip {
            name: ds.name.clone(),
            sides,
        });
    }

    let mut glued: Vec<Option<GluingId>> = vec![None; names.len()];
    let mut gluings = Vec::new();
    let mut reported = HashSet::new();
    for dg in &draft.gluings {
        let a = interval_ix.get(dg.a.as_str()).copied();
        let b = interval_ix.get(dg.b.as_str()).copied();
        let mut ok = true;
        for (name, id) in [(&dg.a, a), (&dg.b, b)] {
            if id.is_none() {
                violations.push(Violation::UnknownInterval(name.clone()));
                ok = false;
            }
        }
        if dg.a == dg.b {
            violations.push(Violation::SelfGluing(dg.a.clone()));
            continue;
        }
        let (Some(a), Some(b)) = (a, b) else { continue };
        for id in [a, b] {
            if glued[id.0].is_some() {
                if reported.insert(id) {
                    violations.push(Violation::MultiplyGlued(names[id.0].clone()));
                }
                ok = false;
            }
        }
        if ok {
            let g = GluingId(gluings.len());
            glued[a.0] = Some(g);
            glued[b.0] = Some(g);
            gluings.push(Gluing {
                a,
                b,
                parity: dg.parity,
            });
        }
    }

    if violations.is_empty() {
        Ok(StripedAtlas {
            strips,
            names,
            gluings,
            slots,
            glued,
        })
    } else {
        Err(violations)
    }
}

/// A valid finite striped atlas.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StripedAtlas {
    strips: Vec<Strip>,
    names: Vec<String>,
    gluings: Vec<Gluing>,
    slots: Vec<Slot>,
    glued: Vec<Option<GluingId>>,
}

impl StripedAtlas {
    pub fn strips(&self) -> &[Strip] {
        &self.strips
    }

    pub fn strip(&self, id: StripId) -> &Strip {
        &self.strips[id.0]
    }

    pub fn strip_ids(&self) -> impl Iterator<Item = StripId> + '_ {
        (0..self.strips.len()).map(StripId)
    }

    pub fn strip_count(&self) -> usize {
        self.strips.len()
    }

    pub fn side(&self, strip: StripId, side: Side) -> &[IntervalId] {
        self.strips[strip.0].side(side)
    }

    pub fn interval_count(&self) -> usize {
        self.names.len()
    }

    pub fn interval_ids(&self) -> impl Iterator<Item = IntervalId> + '_ {
        (0..self.names.len()).map(IntervalId)
    }

    pub fn interval_name(&self, id: IntervalId) -> &str {
        &self.names[id.0]
    }

    pub fn interval_by_name(&self, name: &str) -> Option<IntervalId> {
        self.names.iter().position(|n| n == name).map(IntervalId)
    }

    pub fn strip_by_name(&self, name: &str) -> Option<StripId> {
        self.strips.iter().position(|s| s.name == name).map(StripId)
    }

    pub fn slot(&self, id: IntervalId) -> Slot {
        self.slots[id.0]
    }

    pub fn interval_at(&self, slot: Slot) -> Option<IntervalId> {
        self.side(slot.strip, slot.side).get(slot.index).copied()
    }

    pub fn gluings(&self) -> &[Gluing] {
        &self.gluings
    }

    pub fn gluing(&self, id: GluingId) -> &Gluing {
        &self.gluings[id.0]
    }

    pub fn gluing_ids(&self) -> impl Iterator<Item = GluingId> + '_ {
        (0..self.gluings.len()).map(GluingId)
    }

    pub fn gluing_of(&self, id: IntervalId) -> Option<GluingId> {
        self.glued[id.0]
    }

    /// The interval glued to `id`, with the gluing parity.
    pub fn partner(&self, id: IntervalId) -> Option<(IntervalId, Parity)> {
        self.glued[id.0].map(|g| {
            let g = &self.gluings[g.0];
            (g.other(id), g.parity)
        })
    }

    pub fn is_free(&self, id: IntervalId) -> bool {
        self.glued[id.0].is_none()
    }

    pub fn free_intervals(&self) -> impl Iterator<Item = IntervalId> + '_ {
        self.interval_ids().filter(|&i| self.is_free(i))
    }

    /// Finds the gluing joining `a` and `b`, if any.
    pub fn gluing_between(&self, a: IntervalId, b: IntervalId) -> Option<&Gluing> {
        self.glued[a.0]
            .map(|g| &self.gluings[g.0])
            .filter(|g| g.other(a) == b && a != b)
    }

    pub fn to_draft(&self) -> AtlasDraft {
        let name = |i: &IntervalId| self.names[i.0].clone();
        AtlasDraft {
            strips: self
                .strips
                .iter()
                .map(|s| DraftStrip {
                    name: s.name.clone(),
                    side0: s.sides[0].iter().map(name).collect(),
                    side1: s.sides[1].iter().map(name).collect(),
                })
                .collect(),
            gluings: self
                .gluings
                .iter()
                .map(|g| DraftGluing {
                    a: name(&g.a),
                    b: name(&g.b),
                    parity: g.parity,
                })
                .collect(),
        }
    }

    /// Partition of the strips into classes linked by chains of gluings.
    /// Classes are sorted internally and ordered by their smallest strip.
    pub fn connected_components(&self) -> Vec<Vec<StripId>> {
        let n = self.strips.len();
        let mut adj = vec![Vec::new(); n];
        for g in &self.gluings {
            let (x, y) = (self.slots[g.a.0].strip.0, self.slots[g.b.0].strip.0);
            adj[x].push(y);
            adj[y].push(x);
        }
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let c = out.len();
            let mut members = vec![];
            let mut queue = VecDeque::from([start]);
            comp[start] = c;
            while let Some(v) = queue.pop_front() {
                members.push(StripId(v));
                for &w in &adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = c;
                        queue.push_back(w);
                    }
                }
            }
            members.sort();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Restriction of the atlas to a set of strips closed under gluing.
    pub fn sub_atlas(&self, strips: &[StripId]) -> StripedAtlas {
        let keep: HashSet<StripId> = strips.iter().copied().collect();
        let full = self.to_draft();
        let draft = AtlasDraft {
            strips: strips.iter().map(|s| full.strips[s.0].clone()).collect(),
            gluings: self
                .gluings
                .iter()
                .zip(full.gluings)
                .filter(|(g, _)| keep.contains(&self.slots[g.a.0].strip))
                .map(|(_, d)| d)
                .collect(),
        };
        validate(&draft).expect("restriction of a valid atlas to a union of components")
    }

    /// One sub-atlas per connected component, in component order.
    pub fn component_atlases(&self) -> Vec<StripedAtlas> {
        self.connected_components()
            .iter()
            .map(|c| self.sub_atlas(c))
            .collect()
    }

    /// Disjoint union. Names of `other` are suffixed when they collide.
    pub fn disjoint_union(&self, other: &StripedAtlas) -> StripedAtlas {
        let mut draft = self.to_draft();
        let taken_s: HashSet<String> = draft.strips.iter().map(|s| s.name.clone()).collect();
        let taken_i: HashSet<String> = self.names.iter().cloned().collect();
        let fresh = |name: &str, taken: &HashSet<String>| {
            let mut candidate = name.to_string();
            while taken.contains(&candidate) {
                candidate.push('\'');
            }
            candidate
        };
        let rename_i = |n: &String| fresh(n, &taken_i);
        let od = other.to_draft();
        for s in od.strips {
            draft.strips.push(DraftStrip {
                name: fresh(&s.name, &taken_s),
                side0: s.side0.iter().map(rename_i).collect(),
                side1: s.side1.iter().map(rename_i).collect(),
            });
        }
        for g in od.gluings {
            draft.gluings.push(DraftGluing {
                a: rename_i(&g.a),
                b: rename_i(&g.b),
                parity: g.parity,
            });
        }
        validate(&draft).expect("disjoint union of valid atlases")
    }

    /// Position-only encoding used for canonical forms and structural comparison.
    pub(crate) fn encode(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(2 * self.strips.len() + 7 * self.gluings.len() + 2);
        out.push(self.strips.len() as u32);
        for s in &self.strips {
            out.push(s.sides[0].len() as u32);
            out.push(s.sides[1].len() as u32);
        }
        let key = |slot: Slot| (slot.strip.0 as u32, slot.side.index() as u32, slot.index as u32);
        let mut glue: Vec<_> = self
            .gluings
            .iter()
            .map(|g| {
                let (x, y) = (key(self.slots[g.a.0]), key(self.slots[g.b.0]));
                let (x, y) = if x <= y { (x, y) } else { (y, x) };
                (x, y, g.parity.is_decreasing() as u32)
            })
            .collect();
        glue.sort();
        out.push(glue.len() as u32);
        for (x, y, p) in glue {
            out.extend([x.0, x.1, x.2, y.0, y.1, y.2, p]);
        }
        out
    }

    /// An encoding that is equal for two atlases iff they are isomorphic.
    /// Exponential in the number of strips; intended for small atlases.
    pub fn canonical_key(&self) -> Vec<u32> {
        let n = self.strips.len();
        let mut best: Option<Vec<u32>> = None;
        for perm in (0..n).permutations(n) {
            for flips in 0u32..(1 << n) {
                for revs in 0u32..(1 << n) {
                    let map = crate::morphism::StripMap {
                        sigma: perm.iter().map(|&i| StripId(i)).collect(),
                        flip: (0..n).map(|i| flips >> i & 1 == 1).collect(),
                        reverse: (0..n).map(|i| revs >> i & 1 == 1).collect(),
                    };
                    let enc = self.relabel(&map).encode();
                    if best.as_ref().map_or(true, |b| enc < *b) {
                        best = Some(enc);
                    }
                }
            }
        }
        best.unwrap_or_else(|| self.encode())
    }

    /// Transports the atlas along a relabeling: strip `i` becomes strip
    /// `map.sigma[i]`, its sides are swapped when `flip[i]` and reversed when
    /// `reverse[i]`. Interval names travel with the intervals, so `map` is an
    /// isomorphism from `self` to the result.
    pub fn relabel(&self, map: &crate::morphism::StripMap) -> StripedAtlas {
        let n = self.strips.len();
        let mut strips = vec![DraftStrip::default(); n];
        for (i, s) in self.strips.iter().enumerate() {
            let target = &mut strips[map.sigma[i].0];
            target.name = s.name.clone();
            for side in Side::BOTH {
                let mut list: Vec<String> =
                    s.side(side).iter().map(|x| self.names[x.0].clone()).collect();
                if map.reverse[i] {
                    list.reverse();
                }
                match side.flip_if(map.flip[i]) {
                    Side::Zero => target.side0 = list,
                    Side::One => target.side1 = list,
                }
            }
        }
        let gluings = self
            .gluings
            .iter()
            .map(|g| {
                let ra = map.reverse[self.slots[g.a.0].strip.0];
                let rb = map.reverse[self.slots[g.b.0].strip.0];
                DraftGluing {
                    a: self.names[g.a.0].clone(),
                    b: self.names[g.b.0].clone(),
                    parity: g.parity.flip_if(ra ^ rb),
                }
            })
            .collect();
        validate(&AtlasDraft { strips, gluings }).expect("relabeling preserves validity")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn draft(text: &str) -> AtlasDraft {
        crate::format::parse_draft(text).unwrap()
    }

    #[test]
    fn fixtures_validate() {
        for (name, text) in fixtures::ALL {
            assert!(validate(&draft(text)).is_ok(), "{name}");
        }
    }

    #[test]
    fn multiply_glued_interval_is_reported() {
        let d = draft("strip S\nside0 a b c\nglue a b +\nglue a c -\n");
        let v = validate(&d).unwrap_err();
        assert_eq!(v, vec![Violation::MultiplyGlued("a".into())]);
        assert_eq!(v[0].to_string(), "interval multiply glued: a");
    }

    #[test]
    fn collects_every_violation() {
        let d = draft("strip S\nside0 a a\nstrip S\nglue x y +\nglue a a -\n");
        let v = validate(&d).unwrap_err();
        assert!(v.contains(&Violation::DuplicateInterval("a".into())));
        assert!(v.contains(&Violation::DuplicateStrip("S".into())));
        assert!(v.contains(&Violation::UnknownInterval("x".into())));
        assert!(v.contains(&Violation::UnknownInterval("y".into())));
        assert!(v.contains(&Violation::SelfGluing("a".into())));
    }

    #[test]
    fn intervals_split_into_free_and_glued() {
        for (_, text) in fixtures::ALL {
            let a = fixtures::parse(text);
            let free = a.free_intervals().count();
            let on_sides: usize = a.strips().iter().map(|s| s.sides[0].len() + s.sides[1].len()).sum();
            assert_eq!(on_sides, a.interval_count());
            assert_eq!(on_sides, free + 2 * a.gluings().len());
        }
    }

    #[test]
    fn components() {
        assert_eq!(fixtures::punctured().connected_components().len(), 1);
        assert_eq!(fixtures::cyl().connected_components().len(), 1);
        let two = fixtures::plane().disjoint_union(&fixtures::plane());
        assert_eq!(
            two.connected_components(),
            vec![vec![StripId(0)], vec![StripId(1)]]
        );
        let parts = two.component_atlases();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[1].strip(StripId(0)).name, "S'");
    }

    #[test]
    fn slots_follow_side_order() {
        let a = fixtures::punctured();
        let s2 = a.interval_by_name("s2").unwrap();
        assert_eq!(
            a.slot(s2),
            Slot {
                strip: StripId(0),
                side: Side::One,
                index: 1
            }
        );
        assert_eq!(a.interval_at(a.slot(s2)), Some(s2));
    }
}
