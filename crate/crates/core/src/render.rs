//! DOT and SVG pictures of a leaf space model.

use std::fmt::Write as _;

use crate::atlas::Side;
use crate::leafspace::{ArcEnd, LeafSpaceModel};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn end_node(model: &LeafSpaceModel, end: ArcEnd) -> String {
    format!("{}:{}", model.arc_name(end.strip), end.side.index())
}

/// Digraph with one edge per arc, from its side-0 end to its side-1 end, and
/// one edge per attachment from a leaf point to the arc end it closes off,
/// labelled with its position on that side.
pub fn leafspace_dot(model: &LeafSpaceModel) -> String {
    let mut out = String::from("digraph leafspace {\n");
    for p in model.points() {
        writeln!(out, "  {} [shape=box];", quote(&p.name)).unwrap();
    }
    for end in model.all_ends() {
        writeln!(out, "  {} [shape=point];", quote(&end_node(model, end))).unwrap();
    }
    for arc in (0..model.arc_count()).map(crate::atlas::StripId) {
        writeln!(
            out,
            "  {} -> {} [label={}];",
            quote(&end_node(model, ArcEnd::new(arc, Side::Zero))),
            quote(&end_node(model, ArcEnd::new(arc, Side::One))),
            quote(model.arc_name(arc))
        )
        .unwrap();
    }
    for p in model.points() {
        for a in &p.attachments {
            writeln!(
                out,
                "  {} -> {} [label=\"{}\", style=dashed];",
                quote(&p.name),
                quote(&end_node(model, a.end)),
                a.index
            )
            .unwrap();
        }
    }
    out.push_str("}\n");
    out
}

fn escape_xml(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Arcs as horizontal segments, one per row; attached points as stacked dots
/// beyond each end, in side order.
pub fn leafspace_svg(model: &LeafSpaceModel) -> String {
    const ROW: usize = 60;
    const LEFT: usize = 80;
    const RIGHT: usize = 320;
    const STACK: usize = 14;
    let rows = model.arc_count().max(1);
    let height = rows * ROW + 20;
    let mut out = String::new();
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"420\" height=\"{height}\" font-family=\"monospace\" font-size=\"10\">"
    )
    .unwrap();
    for arc in (0..model.arc_count()).map(crate::atlas::StripId) {
        let y = 30 + arc.0 * ROW;
        writeln!(out, "  <line x1=\"{LEFT}\" y1=\"{y}\" x2=\"{RIGHT}\" y2=\"{y}\" stroke=\"black\"/>").unwrap();
        writeln!(out, "  <text x=\"{}\" y=\"{}\">{}</text>", (LEFT + RIGHT) / 2, y - 6, escape_xml(model.arc_name(arc)))
            .unwrap();
        for side in Side::BOTH {
            let end = ArcEnd::new(arc, side);
            let (x, text_dx): (usize, i64) = match side {
                Side::Zero => (LEFT - 10, -40),
                Side::One => (RIGHT + 10, 8),
            };
            for (k, p) in model.end_slots(end).iter().enumerate() {
                let py = y + k * STACK - model.end_slots(end).len().saturating_sub(1) * STACK / 2;
                writeln!(out, "  <circle cx=\"{x}\" cy=\"{py}\" r=\"3\"/>").unwrap();
                writeln!(
                    out,
                    "  <text x=\"{}\" y=\"{}\">{}</text>",
                    x as i64 + text_dx,
                    py + 3,
                    escape_xml(&model.point(*p).name)
                )
                .unwrap();
            }
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::leafspace::build_leaf_space;

    #[test]
    fn punctured_dot() {
        let dot = leafspace_dot(&build_leaf_space(&fixtures::punctured()));
        assert!(dot.starts_with("digraph leafspace {\n"));
        assert!(dot.contains("\"S:0\" -> \"S:1\" [label=\"S\"];"));
        assert!(dot.contains("\"s1~t1\" -> \"S:1\" [label=\"0\", style=dashed];"));
        assert!(dot.contains("\"s2~t2\" -> \"T:0\" [label=\"1\", style=dashed];"));
    }

    #[test]
    fn svg_has_a_dot_per_attachment() {
        let m = build_leaf_space(&fixtures::punctured());
        let svg = leafspace_svg(&m);
        assert_eq!(svg.matches("<line").count(), 2);
        assert_eq!(svg.matches("<circle").count(), 4);
    }
}
