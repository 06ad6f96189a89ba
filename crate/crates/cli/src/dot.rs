//! DOT emission: one node per vertex, one arrow per graph edge; ultragraph
//! edges fan out with one arrow per explicit range vertex, plus an arrow to
//! a shared ellipsis placeholder for cofinite remainders.

use ulpa_core::{Graph, Ultragraph, VertexSet};

pub fn graph_dot(g: &Graph) -> String {
    let mut out = format!("digraph {} {{\n", sanitize(&g.name));
    for v in g.vertices() {
        out.push_str(&format!("  \"{}\";\n", g.vertex_name(v)));
    }
    for (_, e) in g.edges() {
        out.push_str(&format!(
            "  \"{}\" -> \"{}\" [label=\"{}\"];\n",
            g.vertex_name(e.source),
            g.vertex_name(e.target),
            e.name
        ));
    }
    out.push_str("}\n");
    out
}

pub fn ultragraph_dot(g: &Ultragraph) -> String {
    let mut out = format!("digraph {} {{\n", sanitize(&g.name));
    for v in g.named_vertices() {
        out.push_str(&format!("  \"{}\";\n", g.vertex_name(v)));
    }
    let mut needs_ellipsis = false;
    for e in g.edges() {
        match &e.range {
            VertexSet::Finite(members) => {
                for &t in members {
                    out.push_str(&format!(
                        "  \"{}\" -> \"{}\" [label=\"{}\"];\n",
                        g.vertex_name(e.source),
                        g.vertex_name(t),
                        e.name
                    ));
                }
            }
            VertexSet::Cofinite(_) => {
                // Arrows to the named members, then the remainder.
                for t in g.named_vertices() {
                    if e.range.contains(t) {
                        out.push_str(&format!(
                            "  \"{}\" -> \"{}\" [label=\"{}\"];\n",
                            g.vertex_name(e.source),
                            g.vertex_name(t),
                            e.name
                        ));
                    }
                }
                needs_ellipsis = true;
                out.push_str(&format!(
                    "  \"{}\" -> \"\u{22ef}\" [label=\"{}\"];\n",
                    g.vertex_name(e.source),
                    e.name
                ));
            }
        }
    }
    if needs_ellipsis {
        out.push_str("  \"\u{22ef}\" [shape=none];\n");
    }
    out.push_str("}\n");
    out
}

fn sanitize(name: &str) -> String {
    name.chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect()
}
