//! The dual graph of an atlas: a vertex per strip, an edge per seam.
//!
//! Vertices remember their side lengths and edge ends remember the exact slot
//! they come from, so the graph determines the atlas up to relabeling.

use std::fmt::Write as _;

use crate::atlas::{validate, AtlasDraft, DraftGluing, DraftStrip, Parity, Side, Slot, StripId, StripedAtlas};
use crate::morphism::StripMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub name: String,
    pub side_lengths: [usize; 2],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DualEdge {
    pub ends: [Slot; 2],
    pub parity: Parity,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGraph {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<DualEdge>,
}

pub fn build_dual_graph(atlas: &StripedAtlas) -> DualGraph {
    DualGraph {
        vertices: atlas
            .strips()
            .iter()
            .map(|s| Vertex {
                name: s.name.clone(),
                side_lengths: [s.sides[0].len(), s.sides[1].len()],
            })
            .collect(),
        edges: atlas
            .gluings()
            .iter()
            .map(|g| DualEdge {
                ends: [atlas.slot(g.a), atlas.slot(g.b)],
                parity: g.parity,
            })
            .collect(),
    }
}

/// `#vertices - #edges`.
pub fn euler_invariant(g: &DualGraph) -> i64 {
    g.vertices.len() as i64 - g.edges.len() as i64
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// DOT multigraph. Edge labels read `parity strip:side#index/strip:side#index`.
pub fn export_dot(g: &DualGraph) -> String {
    let mut out = String::from("graph dual {\n");
    for v in &g.vertices {
        writeln!(
            out,
            "  {} [label={}];",
            quote(&v.name),
            quote(&format!("{} ({}|{})", v.name, v.side_lengths[0], v.side_lengths[1]))
        )
        .unwrap();
    }
    for e in &g.edges {
        let end = |s: Slot| format!("{}:{}#{}", g.vertices[s.strip.0].name, s.side.index(), s.index);
        writeln!(
            out,
            "  {} -- {} [label={}];",
            quote(&g.vertices[e.ends[0].strip.0].name),
            quote(&g.vertices[e.ends[1].strip.0].name),
            quote(&format!("{} {}/{}", e.parity, end(e.ends[0]), end(e.ends[1])))
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

impl DualGraph {
    /// Rebuilds an atlas; intervals are named `<strip>.<side>.<index>`.
    pub fn to_atlas(&self) -> StripedAtlas {
        let name = |s: Slot| format!("{}.{}.{}", self.vertices[s.strip.0].name, s.side.index(), s.index);
        let strips = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let side = |e: Side| {
                    (0..v.side_lengths[e.index()])
                        .map(|k| name(Slot { strip: StripId(i), side: e, index: k }))
                        .collect()
                };
                DraftStrip {
                    name: v.name.clone(),
                    side0: side(Side::Zero),
                    side1: side(Side::One),
                }
            })
            .collect();
        let gluings = self
            .edges
            .iter()
            .map(|e| DraftGluing {
                a: name(e.ends[0]),
                b: name(e.ends[1]),
                parity: e.parity,
            })
            .collect();
        validate(&AtlasDraft { strips, gluings }).expect("dual graph of a valid atlas")
    }

    /// Whether `(sigma on vertices, edge map)` preserves all decorations when
    /// edge ends are transported by `map`.
    pub fn is_decorated_automorphism(&self, map: &StripMap, edge_map: &[usize]) -> bool {
        let mut seen = vec![false; self.edges.len()];
        for (e, &f) in edge_map.iter().enumerate() {
            if f >= self.edges.len() || std::mem::replace(&mut seen[f], true) {
                return false;
            }
            let src = &self.edges[e];
            let dst = &self.edges[f];
            let moved: Vec<Slot> = src
                .ends
                .iter()
                .map(|&s| map.map_slot(s, self.vertices[s.strip.0].side_lengths[s.side.index()]))
                .collect();
            let same_ends = (moved[0] == dst.ends[0] && moved[1] == dst.ends[1])
                || (moved[0] == dst.ends[1] && moved[1] == dst.ends[0]);
            let parity = src
                .parity
                .flip_if(map.reverse[src.ends[0].strip.0] ^ map.reverse[src.ends[1].strip.0]);
            if !same_ends || parity != dst.parity {
                return false;
            }
        }
        self.vertices.iter().enumerate().all(|(i, v)| {
            let w = &self.vertices[map.sigma[i].0];
            let flip = map.flip[i] as usize;
            v.side_lengths[0] == w.side_lengths[flip] && v.side_lengths[1] == w.side_lengths[1 - flip]
        })
    }
}

/// Edge permutation induced by an atlas automorphism through its interval bijection.
pub fn induced_edge_map(atlas: &StripedAtlas, map: &StripMap) -> Vec<usize> {
    atlas
        .gluings()
        .iter()
        .map(|g| {
            let image = map.map_interval(atlas, atlas, g.a);
            atlas.gluing_of(image).expect("automorphisms send seams to seams").0
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::morphism::isomorphic;
    use crate::random::{random_atlas, RandomAtlasConfig};
    use crate::symmetry::enumerate_automorphisms;

    #[test]
    fn shapes() {
        let g = build_dual_graph(&fixtures::punctured());
        assert_eq!((g.vertices.len(), g.edges.len()), (2, 2));
        assert!(g.edges.iter().all(|e| e.ends[0].strip != e.ends[1].strip));
        let g = build_dual_graph(&fixtures::cyl());
        assert_eq!((g.vertices.len(), g.edges.len()), (1, 1));
        assert_eq!(g.edges[0].ends[0].strip, g.edges[0].ends[1].strip);
        let g = build_dual_graph(&fixtures::plane());
        assert_eq!((g.vertices.len(), g.edges.len()), (1, 0));
    }

    #[test]
    fn euler_examples() {
        assert_eq!(euler_invariant(&build_dual_graph(&fixtures::plane())), 1);
        assert_eq!(euler_invariant(&build_dual_graph(&fixtures::cyl())), 0);
        let ladder = fixtures::ladder();
        assert_eq!(euler_invariant(&build_dual_graph(&ladder)), 1);
        let reduced = crate::reduction::reduce(&ladder)[0].proper().unwrap().clone();
        assert_eq!(euler_invariant(&build_dual_graph(&reduced)), 1);
    }

    #[test]
    fn dot_output() {
        assert_eq!(
            export_dot(&build_dual_graph(&fixtures::plane())),
            "graph dual {\n  \"S\" [label=\"S (0|0)\"];\n}\n"
        );
        let cyl = export_dot(&build_dual_graph(&fixtures::cyl()));
        assert!(cyl.contains("\"S\" -- \"S\" [label=\"+ S:0#0/S:1#0\"];"));
        let p = export_dot(&build_dual_graph(&fixtures::punctured()));
        assert_eq!(p.matches(" -- ").count(), 2);
        assert_eq!(p.matches("[label=").count(), 4);
    }

    #[test]
    fn graph_round_trip_up_to_relabeling() {
        for seed in 0..100 {
            let a = random_atlas(&RandomAtlasConfig::new(3, 3), seed);
            let back = build_dual_graph(&a).to_atlas();
            assert!(isomorphic(&a, &back).is_some(), "seed {seed}");
            assert_eq!(build_dual_graph(&back).edges, build_dual_graph(&a).edges);
        }
    }

    #[test]
    fn automorphisms_act_on_the_graph() {
        for seed in 0..60 {
            let a = random_atlas(&RandomAtlasConfig::new(3, 2), seed);
            let g = build_dual_graph(&a);
            for aut in enumerate_automorphisms(&a).elements() {
                assert!(g.is_decorated_automorphism(aut, &induced_edge_map(&a, aut)));
            }
        }
    }
}
