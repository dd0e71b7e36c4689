//! DOT export: colored woods (red/blue/green for colors 0/1/2) and Hasse
//! diagrams of orientation lattices.

use schnyder::completion::{ColoredWood, EdgeType};
use schnyder::lattice::{boundary_directed, FlipDirection, HasseDiagram};
use schnyder::map::SurfaceMap;

fn color_name(c: u8) -> &'static str {
    match c % 3 {
        0 => "red",
        1 => "blue",
        _ => "green",
    }
}

/// The base map as an undirected graph.
pub fn map_dot(map: &SurfaceMap) -> String {
    let mut out = String::from("graph map {\n  node [shape=circle];\n");
    for v in 0..map.vertex_count() {
        out.push_str(&format!("  v{v};\n"));
    }
    for e in 0..map.edge_count() {
        let r = map.edge_ref(e);
        out.push_str(&format!(
            "  v{} -- v{} [label=\"e{}\"];\n",
            map.vertex_of(r),
            map.head_of(r),
            e
        ));
    }
    out.push_str("}\n");
    out
}

/// A colored wood: one-way edges as single arrows, bidirected outgoing
/// edges as two half-colored arrows, bidirected incoming edges with inward
/// arrowheads.
pub fn wood_dot(map: &SurfaceMap, wood: &ColoredWood) -> String {
    let mut out = String::from("digraph wood {\n  node [shape=circle];\n");
    for v in 0..map.vertex_count() {
        out.push_str(&format!("  v{v};\n"));
    }
    for (e, kind) in wood.edges.iter().enumerate() {
        let r = map.edge_ref(e);
        let (tail, head) = (map.vertex_of(r), map.head_of(r));
        match *kind {
            EdgeType::Type1 { color, tail_dart } => {
                let (a, b) = if tail_dart == r { (tail, head) } else { (head, tail) };
                out.push_str(&format!("  v{a} -> v{b} [color={}];\n", color_name(color)));
            }
            EdgeType::Type2 { color_ref, color_alpha } => {
                out.push_str(&format!(
                    "  v{tail} -> v{head} [color=\"{}:{}\" dir=both arrowtail=inv];\n",
                    color_name(color_ref),
                    color_name(color_alpha)
                ));
            }
            EdgeType::Type0 { color } => {
                out.push_str(&format!(
                    "  v{tail} -> v{head} [color={} dir=both arrowhead=inv arrowtail=inv];\n",
                    color_name(color)
                ));
            }
        }
    }
    out.push_str("}\n");
    out
}

/// Hasse diagram: arcs labeled by the flipped reduced face; per node the
/// counterclockwise-directed faces (flippable up, drawn magenta in the
/// worked example) and the clockwise ones (cyan). The root face is dotted
/// black where directed.
pub fn lattice_dot(map: &SurfaceMap, h: &HasseDiagram) -> String {
    let _ = map;
    let mut out = String::from("digraph lattice {\n  rankdir=BT;\n  node [shape=box];\n");
    for (i, node) in h.nodes.iter().enumerate() {
        let mut magenta = Vec::new();
        let mut cyan = Vec::new();
        let mut root = "";
        for region in 0..h.reduced.faces.len() {
            let up = boundary_directed(&h.reduced, node, region, FlipDirection::Up);
            let down = boundary_directed(&h.reduced, node, region, FlipDirection::Down);
            if region == h.reduced.root {
                root = if up {
                    " root=ccw"
                } else if down {
                    " root=cw"
                } else {
                    ""
                };
            } else if up {
                magenta.push(region.to_string());
            } else if down {
                cyan.push(region.to_string());
            }
        }
        out.push_str(&format!(
            "  n{i} [label=\"{i}\" magenta=\"{}\" cyan=\"{}\"{}];\n",
            magenta.join(","),
            cyan.join(","),
            root
        ));
    }
    for &(a, b, f) in &h.arcs {
        out.push_str(&format!("  n{a} -> n{b} [label=\"F~{f}\"];\n"));
    }
    out.push_str("}\n");
    out
}
