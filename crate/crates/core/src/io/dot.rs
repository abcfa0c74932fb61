use std::fmt::Write;

use crate::graph::RGraph;

/// Options for [`export_dot`].
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub struct DotOptions {
    /// Put the vertices of each level on one rank.
    pub rank_by_value: bool,
}

fn escaped(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn quoted(s: &str) -> String {
    format!("\"{}\"", escaped(s))
}

/// A DOT digraph drawn bottom to top: one node per vertex labelled with its
/// value and one arc per edge, in id order.
pub fn export_dot(g: &RGraph, options: DotOptions) -> String {
    let mut out = String::from("digraph reeb {\n  rankdir=BT;\n  node [shape=circle];\n");
    for v in g.vertex_ids() {
        let name = &g.vertex(v).name;
        writeln!(out, "  {} [label=\"{}\\n{}\"];", quoted(name), escaped(name), g.value(v)).unwrap();
    }
    for e in g.edge_ids() {
        let (d, u) = (g.down(e), g.up(e));
        writeln!(
            out,
            "  {} -> {} [label={}];",
            quoted(&g.vertex(d).name),
            quoted(&g.vertex(u).name),
            quoted(&g.edge(e).name)
        )
        .unwrap();
    }
    if options.rank_by_value {
        for i in 0..g.num_levels() {
            let names: Vec<String> = g.level(i).iter().map(|&v| quoted(&g.vertex(v).name)).collect();
            if !names.is_empty() {
                writeln!(out, "  {{ rank=same; {}; }}", names.join("; ")).unwrap();
            }
        }
    }
    out.push_str("}\n");
    out
}
