use std::collections::HashMap;
use std::fmt::Write;
use std::sync::Arc;

use super::{records, ParseError};
use crate::graph::{Cell, EdgeId, RGraph};
use crate::morphism::RGraphMorphism;

/// Writes a map as one record per source cell:
///
/// ```text
/// vertex <source vertex> vertex <target vertex>
/// vertex <source vertex> edge <target edge>
/// edge <source edge> <target edge> <target edge> …
/// ```
///
/// The target edges of an edge record form its image path, bottom to top.
pub fn emit_morphism(m: &RGraphMorphism) -> String {
    let (s, t) = (m.source(), m.target());
    let mut out = String::new();
    for v in s.vertex_ids() {
        let img = m.vertex_image(v);
        let kind = match img {
            Cell::Vertex(_) => "vertex",
            Cell::Edge(_) => "edge",
        };
        writeln!(out, "vertex {} {kind} {}", s.vertex(v).name, t.name(img)).unwrap();
    }
    for e in s.edge_ids() {
        write!(out, "edge {}", s.edge(e).name).unwrap();
        for &p in m.edge_path(e) {
            write!(out, " {}", t.edge(p).name).unwrap();
        }
        out.push('\n');
    }
    out
}

/// Reads a map written by [`emit_morphism`] between the given graphs. Every
/// source cell needs exactly one record, and the result must be a valid
/// morphism.
pub fn parse_morphism(text: &str, source: Arc<RGraph>, target: Arc<RGraph>) -> Result<RGraphMorphism, ParseError> {
    let (s, t) = (&*source, &*target);
    let mut vertex_map = vec![None; s.num_vertices()];
    let mut edge_map: Vec<Option<Vec<EdgeId>>> = vec![None; s.num_edges()];
    let mut lines: HashMap<Cell, usize> = HashMap::new();
    for (line, words) in records(text) {
        let target_edge = |name: &str| {
            t.edge_named(name)
                .ok_or_else(|| ParseError::at(line, format!("no target edge `{name}`")))
        };
        let cell = match words[0] {
            "vertex" => {
                if words.len() != 4 {
                    return Err(ParseError::at(line, "expected `vertex <id> vertex|edge <id>`"));
                }
                let v = s
                    .vertex_named(words[1])
                    .ok_or_else(|| ParseError::at(line, format!("no source vertex `{}`", words[1])))?;
                let img = match words[2] {
                    "vertex" => Cell::Vertex(
                        t.vertex_named(words[3])
                            .ok_or_else(|| ParseError::at(line, format!("no target vertex `{}`", words[3])))?,
                    ),
                    "edge" => Cell::Edge(target_edge(words[3])?),
                    other => return Err(ParseError::at(line, format!("expected `vertex` or `edge`, got `{other}`"))),
                };
                vertex_map[v.index()] = Some(img);
                Cell::Vertex(v)
            }
            "edge" => {
                if words.len() < 3 {
                    return Err(ParseError::at(line, "expected `edge <id> <edge>…`"));
                }
                let e = s
                    .edge_named(words[1])
                    .ok_or_else(|| ParseError::at(line, format!("no source edge `{}`", words[1])))?;
                let path = words[2..].iter().map(|w| target_edge(w)).collect::<Result<Vec<_>, _>>()?;
                edge_map[e.index()] = Some(path);
                Cell::Edge(e)
            }
            other => return Err(ParseError::at(line, format!("unknown record `{other}`"))),
        };
        if let Some(first) = lines.insert(cell, line) {
            return Err(ParseError::at(line, format!("`{}` already mapped on line {first}", s.name(cell))));
        }
    }
    let missing = |c: Cell| ParseError::whole(format!("no record for `{}`", s.name(c)));
    let vertex_map = vertex_map
        .into_iter()
        .enumerate()
        .map(|(i, c)| c.ok_or_else(|| missing(s.cell_at_index(i))))
        .collect::<Result<Vec<_>, _>>()?;
    let edge_map = edge_map
        .into_iter()
        .enumerate()
        .map(|(i, p)| p.ok_or_else(|| missing(s.cell_at_index(s.num_vertices() + i))))
        .collect::<Result<Vec<_>, _>>()?;
    RGraphMorphism::new(source.clone(), target.clone(), vertex_map, edge_map).map_err(|e| {
        ParseError::whole(e.to_string())
    })
}
