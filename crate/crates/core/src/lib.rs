//! Striped surfaces, their non-Hausdorff leaf spaces, and the map between
//! their foliated and leaf-space homeotopy groups, modelled as finite
//! combinatorics.
//!
//! Start from [`format::parse_atlas`] or [`fixtures`], then use
//! [`leafspace::build_leaf_space`], [`reduction::reduce`] and
//! [`symmetry::kernel_of_psi0`].

pub mod atlas;
pub mod dualgraph;
pub mod family;
pub mod fixtures;
pub mod format;
pub mod leafspace;
pub mod morphism;
pub mod random;
pub mod reduction;
pub mod registry;
pub mod render;
pub mod search;
pub mod selfcheck;
pub mod symmetry;
pub mod topology;

pub use atlas::{validate, Parity, Side, StripId, StripedAtlas, Violation};
pub use format::{parse_atlas, to_text, AtlasError};
pub use leafspace::{build_leaf_space, hcl_point, LeafSpaceModel};
pub use morphism::{isomorphic, AtlasAutomorphism, StripMap};
pub use reduction::{reduce, SurfaceClass};
pub use symmetry::{enumerate_automorphisms, kernel_of_psi0, psi0_report, KernelResult, SymmetryError};
