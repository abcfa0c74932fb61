use std::collections::HashMap;
use std::fmt::Write;

use super::{arity, records, value, ParseError};
use crate::graph::{BuildError, GraphBuilder, RGraph};
use crate::rational::Rational;

/// Records the line defining `name`, rejecting a second definition.
pub(crate) fn claim<'a>(seen: &mut HashMap<&'a str, usize>, line: usize, name: &'a str) -> Result<(), ParseError> {
    if let Some(first) = seen.insert(name, line) {
        seen.insert(name, first);
        return Err(ParseError::at(line, format!("duplicate id `{name}`, first used on line {first}")));
    }
    Ok(())
}

/// Parses an ℝ-graph document:
///
/// ```text
/// criticals 0 1/2 1
/// vertex a 0
/// vertex b 1
/// edge e a b
/// ```
///
/// The `criticals` line is optional; without it the critical values are
/// the vertex values. Edges crossing intermediate critical values are split
/// there, with segments `e.0, e.1, …` and new vertices `e:1, e:2, …`.
pub fn parse_rgraph(text: &str) -> Result<RGraph, ParseError> {
    let mut criticals: Option<(usize, Vec<Rational>)> = None;
    let mut vertices: Vec<(usize, &str, Rational)> = Vec::new();
    let mut edges: Vec<(usize, &str, &str, &str)> = Vec::new();
    let mut seen: HashMap<&str, usize> = HashMap::new();
    for (line, words) in records(text) {
        match words[0] {
            "criticals" => {
                if let Some((first, _)) = criticals {
                    return Err(ParseError::at(line, format!("second `criticals` line, first on line {first}")));
                }
                let values = words[1..].iter().map(|w| value(line, w)).collect::<Result<Vec<_>, _>>()?;
                if values.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(ParseError::at(line, "critical values must increase strictly"));
                }
                criticals = Some((line, values));
            }
            "vertex" => {
                arity(line, &words, 2, "vertex <id> <value>")?;
                claim(&mut seen, line, words[1])?;
                vertices.push((line, words[1], value(line, words[2])?));
            }
            "edge" => {
                arity(line, &words, 3, "edge <id> <low vertex> <high vertex>")?;
                claim(&mut seen, line, words[1])?;
                edges.push((line, words[1], words[2], words[3]));
            }
            other => return Err(ParseError::at(line, format!("unknown record `{other}`"))),
        }
    }
    let mut value_of: HashMap<&str, Rational> = HashMap::new();
    let mut b = GraphBuilder::new();
    for &(line, name, t) in &vertices {
        if let Some((_, cs)) = &criticals {
            if cs.binary_search(&t).is_err() {
                return Err(ParseError::at(line, format!("value {t} of `{name}` is not a listed critical value")));
            }
        }
        value_of.insert(name, t);
        b.vertex(name, t);
    }
    for &(line, name, low, high) in &edges {
        let lookup = |v: &str| {
            value_of
                .get(v)
                .copied()
                .ok_or_else(|| ParseError::at(line, format!("edge `{name}` names unknown vertex `{v}`")))
        };
        let (lv, hv) = (lookup(low)?, lookup(high)?);
        if lv >= hv {
            return Err(ParseError::at(
                line,
                format!("edge `{name}` must go upward, but `{low}` is at {lv} and `{high}` at {hv}"),
            ));
        }
        b.edge(name, low, high);
    }
    if let Some((_, cs)) = criticals {
        b.extra_criticals(cs);
    }
    let built = b.build().map_err(|e| match e {
        BuildError::DuplicateId(name) => match seen.get(name.as_str()) {
            Some(&line) => ParseError::at(line, format!("duplicate id `{name}`")),
            None => ParseError::whole(format!("duplicate id `{name}`")),
        },
        other => ParseError::whole(other.to_string()),
    })?;
    Ok(built.graph)
}

/// The canonical document for a graph: the `criticals` line, then vertices
/// and edges in id order.
pub fn emit_rgraph(g: &RGraph) -> String {
    let mut out = String::from("criticals");
    for t in g.criticals() {
        write!(out, " {t}").unwrap();
    }
    out.push('\n');
    for v in g.vertex_ids() {
        writeln!(out, "vertex {} {}", g.vertex(v).name, g.value(v)).unwrap();
    }
    for e in g.edge_ids() {
        let (d, u) = (g.down(e), g.up(e));
        writeln!(out, "edge {} {} {}", g.edge(e).name, g.vertex(d).name, g.vertex(u).name).unwrap();
    }
    out
}

/// `emit_rgraph ∘ parse_rgraph`.
pub fn normalize(text: &str) -> Result<String, ParseError> {
    parse_rgraph(text).map(|g| emit_rgraph(&g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::looped;

    const LOOP: &str = "# a loop over [0, 1]
criticals 0 1
vertex v0 0
vertex v1 1
edge e0 v0 v1
edge e1 v0 v1
";

    #[test]
    fn loop_document() {
        let g = parse_rgraph(LOOP).unwrap();
        assert_eq!(g, looped(Rational::integer(0), Rational::integer(1)));
        assert_eq!(emit_rgraph(&g), LOOP.lines().skip(1).map(|l| format!("{l}\n")).collect::<String>());
    }

    #[test]
    fn long_edges_are_split() {
        let g = parse_rgraph("criticals 0 1/2 1\nvertex a 0\nvertex b 1\nedge e a b\n").unwrap();
        assert_eq!(g.num_levels(), 3);
        assert!(g.edge_named("e.0").is_some() && g.edge_named("e.1").is_some());
        assert!(g.vertex_named("e:1").is_some());
        assert_eq!(parse_rgraph(&emit_rgraph(&g)).unwrap(), g);
    }

    #[test]
    fn criticals_are_optional_and_decimals_exact() {
        let g = parse_rgraph("vertex a 0.25\nvertex b 1.5\nedge e a b").unwrap();
        assert_eq!(g.criticals(), &[Rational::new(1, 4), Rational::new(3, 2)]);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("vertex a 0\nvertex a 1\n", 2, "duplicate"),
            ("criticals 0 1\nvertex a 1/2\n", 2, "not a listed"),
            ("vertex a 0\nvertex b 1\nedge e b a\n", 3, "upward"),
            ("vertex a 0\n\nedge e a z\n", 3, "unknown vertex"),
            ("vertex a zero\n", 1, "zero"),
            ("node a 0\n", 1, "unknown record"),
            ("vertex a\n", 1, "expected"),
            ("criticals 1 0\n", 1, "increase"),
        ];
        for (doc, line, needle) in cases {
            let err = parse_rgraph(doc).unwrap_err();
            assert_eq!(err.line, Some(line), "{doc:?}: {err}");
            assert!(err.message.contains(needle), "{doc:?}: {err}");
        }
    }
}
