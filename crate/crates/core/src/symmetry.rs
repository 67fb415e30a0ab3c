//! Foliated symmetries of a striped surface and their action on the leaf space.
//!
//! On a reduced atlas, isotopy classes of foliated homeomorphisms are modelled
//! by the valid `(sigma, flip, reverse)` triples ([`AtlasAutomorphism`]). Each
//! triple induces a [`LeafMap`]. A triple is isotopic to the identity on the
//! surface iff it fixes every strip with increasing transverse and leafwise
//! maps; its leaf map is isotopic to the identity iff it fixes every boundary
//! and branch point and every arc with its orientation. The kernel of the
//! induced map on homeotopy groups consists of the triples of the second kind;
//! their reversal bit is constant on a connected atlas, so the kernel has at
//! most two elements.
//!
//! On a non-reduced atlas the enumerated group is only combinatorial: rotating
//! a two-strip cylinder is a nontrivial triple but isotopic to the identity.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use itertools::Itertools;
use thiserror::Error;

use crate::atlas::{StripId, StripedAtlas};
use crate::leafspace::{boundary_points, build_leaf_space, special_points, ArcEnd, LeafSpaceModel, PointId};
use crate::morphism::{is_valid_automorphism, AtlasAutomorphism, StripMap};
use crate::reduction::{is_reduced, reduce_connected, FirstSeam, SurfaceClass};
use crate::search::{Backtrack, IsomorphismSearch};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymmetryError {
    #[error("atlas disconnected ({components} components) — apply per component")]
    Disconnected { components: usize },
    #[error("atlas is not reduced")]
    NotReduced,
    #[error("kernel has {order} elements, expected 1 or 2")]
    DichotomyViolated { order: usize },
}

/// The automorphisms of one atlas, in ascending order, with composition lookup.
#[derive(Clone, Debug)]
pub struct AutomorphismGroup {
    elements: Vec<AtlasAutomorphism>,
    index: HashMap<AtlasAutomorphism, usize>,
}

impl AutomorphismGroup {
    pub fn from_elements(mut elements: Vec<AtlasAutomorphism>) -> Self {
        elements.sort();
        elements.dedup();
        let index = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        AutomorphismGroup { elements, index }
    }

    pub fn elements(&self) -> &[AtlasAutomorphism] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index_of(&self, aut: &AtlasAutomorphism) -> Option<usize> {
        self.index.get(aut).copied()
    }

    pub fn identity(&self) -> Option<usize> {
        self.elements.iter().position(StripMap::is_identity)
    }

    /// Index of `elements[i] ∘ elements[j]`, if it is in the set.
    pub fn compose(&self, i: usize, j: usize) -> Option<usize> {
        self.index_of(&self.elements[i].after(&self.elements[j]))
    }

    pub fn inverse(&self, i: usize) -> Option<usize> {
        self.index_of(&self.elements[i].inverse())
    }

    pub fn element_order(&self, i: usize) -> usize {
        let e = &self.elements[i];
        let mut power = e.clone();
        let mut k = 1;
        while !power.is_identity() {
            power = e.after(&power);
            k += 1;
        }
        k
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        (0..self.order()).map(|i| self.element_order(i)).fold(1, |acc, k| {
            let g = gcd(acc, k);
            acc / g * k
        })
    }

    /// Identity present, closed under composition and inverse.
    pub fn check_group_laws(&self) -> Result<(), String> {
        if self.identity().is_none() {
            return Err("identity missing".into());
        }
        for i in 0..self.order() {
            if self.inverse(i).is_none() {
                return Err(format!("element {i} has no inverse in the set"));
            }
            for j in 0..self.order() {
                if self.compose(i, j).is_none() {
                    return Err(format!("composition of {i} and {j} leaves the set"));
                }
            }
        }
        Ok(())
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn enumerate_automorphisms(atlas: &StripedAtlas) -> AutomorphismGroup {
    enumerate_automorphisms_with(atlas, &Backtrack)
}

pub fn enumerate_automorphisms_with(atlas: &StripedAtlas, search: &dyn IsomorphismSearch) -> AutomorphismGroup {
    AutomorphismGroup::from_elements(search.all(atlas, atlas))
}

/// Permutation of leaf points and arcs induced by an automorphism; `arc_flip`
/// marks arcs whose orientation is reversed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LeafMap {
    pub points: Vec<PointId>,
    pub arcs: Vec<StripId>,
    pub arc_flip: Vec<bool>,
}

impl LeafMap {
    pub fn identity(model: &LeafSpaceModel) -> Self {
        LeafMap {
            points: model.point_ids().collect(),
            arcs: (0..model.arc_count()).map(StripId).collect(),
            arc_flip: vec![false; model.arc_count()],
        }
    }

    pub fn is_identity(&self) -> bool {
        self.fixes_all_points() && self.fixes_arcs_with_orientation()
    }

    pub fn fixes_all_points(&self) -> bool {
        self.points.iter().enumerate().all(|(i, p)| p.0 == i)
    }

    pub fn fixes_arcs_with_orientation(&self) -> bool {
        self.arcs.iter().enumerate().all(|(i, a)| a.0 == i) && !self.arc_flip.iter().any(|&f| f)
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &LeafMap) -> LeafMap {
        LeafMap {
            points: first.points.iter().map(|p| self.points[p.0]).collect(),
            arcs: first.arcs.iter().map(|a| self.arcs[a.0]).collect(),
            arc_flip: first
                .arcs
                .iter()
                .zip(&first.arc_flip)
                .map(|(a, &f)| f ^ self.arc_flip[a.0])
                .collect(),
        }
    }

    fn map_end(&self, end: ArcEnd) -> ArcEnd {
        ArcEnd::new(self.arcs[end.strip.0], end.side.flip_if(self.arc_flip[end.strip.0]))
    }

    /// Every point goes to a point attached to the images of its ends, with
    /// the same multiplicities.
    pub fn commutes_with_attachments(&self, model: &LeafSpaceModel) -> bool {
        model.point_ids().all(|p| {
            let mut moved: Vec<ArcEnd> =
                model.point(p).attachments.iter().map(|a| self.map_end(a.end)).collect();
            let mut target: Vec<ArcEnd> =
                model.point(self.points[p.0]).attachments.iter().map(|a| a.end).collect();
            moved.sort();
            target.sort();
            moved == target
        })
    }
}

pub fn induced_leaf_map(atlas: &StripedAtlas, model: &LeafSpaceModel, aut: &AtlasAutomorphism) -> LeafMap {
    LeafMap {
        points: model
            .points()
            .iter()
            .map(|p| {
                let first = p.kind.intervals()[0];
                model.point_of_interval(aut.map_interval(atlas, atlas, first))
            })
            .collect(),
        arcs: aut.sigma.clone(),
        arc_flip: aut.flip.clone(),
    }
}

/// Isotopic to the identity among foliated homeomorphisms of a reduced atlas:
/// every boundary or singular leaf is preserved with its orientation, and
/// every strip is preserved with increasing transverse and leafwise maps.
pub fn is_trivial_on_z(atlas: &StripedAtlas, aut: &AtlasAutomorphism) -> Result<bool, SymmetryError> {
    if !is_reduced(atlas) {
        return Err(SymmetryError::NotReduced);
    }
    let strips_fixed_increasing =
        aut.fixes_strips() && !aut.flip.iter().any(|&b| b) && !aut.reverse.iter().any(|&b| b);
    let leaves_fixed_with_orientation = atlas.interval_ids().all(|i| {
        let image = aut.map_interval(atlas, atlas, i);
        let reversed = aut.reverse[atlas.slot(i).strip.0];
        if image == i {
            !reversed
        } else {
            // `image` is the seam partner of `i`: follow the gluing back.
            match atlas.partner(i) {
                Some((j, parity)) if j == image => !(reversed ^ parity.is_decreasing()),
                _ => false,
            }
        }
    });
    Ok(leaves_fixed_with_orientation && strips_fixed_increasing)
}

/// Induced leaf map is isotopic to the identity: it fixes every boundary and
/// branch point, and maps every arc to itself preserving orientation. Leafwise
/// reversal bits are invisible here.
pub fn is_trivial_on_y(atlas: &StripedAtlas, aut: &AtlasAutomorphism) -> Result<bool, SymmetryError> {
    if !is_reduced(atlas) {
        return Err(SymmetryError::NotReduced);
    }
    let model = build_leaf_space(atlas);
    let map = induced_leaf_map(atlas, &model, aut);
    let fixed_set: BTreeSet<PointId> = boundary_points(&model).union(&special_points(&model)).copied().collect();
    debug_assert_eq!(fixed_set.len(), model.points().len(), "reduced atlas: every point is boundary or branch");
    let fixes_t = fixed_set.iter().all(|p| map.points[p.0] == *p);
    Ok(fixes_t && map.fixes_arcs_with_orientation())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KernelResult {
    Trivial,
    Z2 { witness: AtlasAutomorphism },
}

impl KernelResult {
    pub fn order(&self) -> usize {
        match self {
            KernelResult::Trivial => 1,
            KernelResult::Z2 { .. } => 2,
        }
    }
}

impl fmt::Display for KernelResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KernelResult::Trivial => write!(f, "TRIVIAL"),
            KernelResult::Z2 { witness } => {
                let bit = |v: &[bool]| match v.iter().all_equal_value() {
                    Ok(&b) => u8::from(b).to_string(),
                    Err(_) => v.iter().map(|&b| u8::from(b).to_string()).join(""),
                };
                let sigma = if witness.fixes_strips() { "id".to_string() } else { format!("{:?}", witness.sigma) };
                write!(f, "Z2 witness=({sigma};m={};r={})", bit(&witness.flip), bit(&witness.reverse))
            }
        }
    }
}

fn require_connected(atlas: &StripedAtlas) -> Result<(), SymmetryError> {
    let components = atlas.connected_components().len();
    if components > 1 {
        Err(SymmetryError::Disconnected { components })
    } else {
        Ok(())
    }
}

/// Automorphisms of a reduced atlas whose leaf maps are isotopic to the identity.
pub fn kernel_elements(reduced: &StripedAtlas, group: &AutomorphismGroup) -> Result<Vec<AtlasAutomorphism>, SymmetryError> {
    let mut out = Vec::new();
    for aut in group.elements() {
        if is_trivial_on_y(reduced, aut)? {
            out.push(aut.clone());
        }
    }
    Ok(out)
}

pub fn kernel_of_psi0(atlas: &StripedAtlas) -> Result<KernelResult, SymmetryError> {
    require_connected(atlas)?;
    let reduced = match reduce_connected(atlas, &mut FirstSeam) {
        // Fiberwise negation of the line bundle reverses every leaf.
        SurfaceClass::OpenCylinder | SurfaceClass::OpenMoebiusBand => {
            return Ok(KernelResult::Z2 { witness: StripMap::full_reversal(1) })
        }
        SurfaceClass::Proper(a) => a,
    };
    let group = enumerate_automorphisms(&reduced);
    let kernel = kernel_elements(&reduced, &group)?;
    let nontrivial: Vec<_> = kernel.iter().filter(|k| !is_trivial_on_z(&reduced, k).unwrap_or(false)).collect();
    match (kernel.len(), nontrivial.as_slice()) {
        (1, []) => Ok(KernelResult::Trivial),
        (2, [w]) if w.reverse.iter().all_equal() => Ok(KernelResult::Z2 { witness: (*w).clone() }),
        (order, _) => Err(SymmetryError::DichotomyViolated { order }),
    }
}

/// Kernel of each connected component, in component order.
pub fn kernel_per_component(atlas: &StripedAtlas) -> Result<Vec<KernelResult>, SymmetryError> {
    atlas.component_atlases().iter().map(kernel_of_psi0).collect()
}

/// `(id, no flips, reverse every strip)` if it is an automorphism fixing every
/// leaf point.
pub fn reversal_witness(atlas: &StripedAtlas) -> Result<Option<AtlasAutomorphism>, SymmetryError> {
    require_connected(atlas)?;
    let candidate = StripMap::full_reversal(atlas.strip_count());
    if !is_valid_automorphism(atlas, &candidate) {
        return Ok(None);
    }
    let model = build_leaf_space(atlas);
    let fixes = induced_leaf_map(atlas, &model, &candidate).fixes_all_points();
    Ok(fixes.then_some(candidate))
}

/// Number of permutations of points and arcs (with orientation bits) that
/// preserve end attachments with multiplicity. Side order is ignored.
pub fn leaf_model_automorphism_count(model: &LeafSpaceModel) -> u64 {
    let n = model.arc_count();
    let signature = |p: PointId, map: &dyn Fn(ArcEnd) -> ArcEnd| -> Vec<ArcEnd> {
        let mut v: Vec<ArcEnd> = model.point(p).attachments.iter().map(|a| map(a.end)).collect();
        v.sort();
        v
    };
    let mut classes: HashMap<Vec<ArcEnd>, u64> = HashMap::new();
    for p in model.point_ids() {
        *classes.entry(signature(p, &|e| e)).or_default() += 1;
    }
    let mut total = 0u64;
    for perm in (0..n).permutations(n) {
        for flips in 0u64..(1 << n) {
            let map = |e: ArcEnd| ArcEnd::new(StripId(perm[e.strip.0]), e.side.flip_if(flips >> e.strip.0 & 1 == 1));
            let mut moved: HashMap<Vec<ArcEnd>, u64> = HashMap::new();
            for p in model.point_ids() {
                *moved.entry(signature(p, &map)).or_default() += 1;
            }
            if moved == classes {
                total += classes.values().map(|&c| (1..=c).product::<u64>()).product::<u64>();
            }
        }
    }
    total
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Psi0Report {
    pub surface: &'static str,
    pub aut_order: usize,
    pub kernel: KernelResult,
    pub image_order: usize,
    /// Combinatorial upper-bound container for the image; not claimed to be
    /// the order of the leaf-space homeotopy group.
    pub leaf_model_aut_order: u64,
}

pub fn psi0_report(atlas: &StripedAtlas) -> Result<Psi0Report, SymmetryError> {
    require_connected(atlas)?;
    let class = reduce_connected(atlas, &mut FirstSeam);
    let rep = class.representative();
    let group = enumerate_automorphisms(&rep);
    let kernel = kernel_of_psi0(atlas)?;
    Ok(Psi0Report {
        surface: class.label(),
        aut_order: group.order(),
        image_order: group.order() / kernel.order(),
        kernel,
        leaf_model_aut_order: leaf_model_automorphism_count(&build_leaf_space(&rep)),
    })
}

/// Distinct leaf maps induced by a group.
pub fn image_leaf_maps(atlas: &StripedAtlas, group: &AutomorphismGroup) -> BTreeSet<(Vec<usize>, Vec<usize>, Vec<bool>)> {
    let model = build_leaf_space(atlas);
    group
        .elements()
        .iter()
        .map(|a| {
            let m = induced_leaf_map(atlas, &model, a);
            (m.points.iter().map(|p| p.0).collect(), m.arcs.iter().map(|s| s.0).collect(), m.arc_flip)
        })
        .collect()
}
