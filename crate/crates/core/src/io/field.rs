//! Piecewise-linear scalar fields on simplicial complexes of dimension at
//! most two, and their Reeb graphs.

use std::collections::{HashMap, HashSet};

use petgraph::unionfind::UnionFind;
use thiserror::Error;

use super::rgraph::claim;
use super::{arity, records, value, ParseError};
use crate::graph::{Cell, EdgeId, RGraph, VertexId};
use crate::rational::{sorted_unique, Rational};

/// A simplex of a [`ScalarField2`], by position in its list.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KCell {
    Vertex(usize),
    Edge(usize),
    Triangle(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} refers to a missing vertex")]
    MissingVertex(String),
    #[error("edge `{0}` joins vertices with equal values")]
    FlatEdge(String),
    #[error("triangle `{0}` repeats a vertex")]
    DegenerateTriangle(String),
    #[error("triangle `{triangle}` has no edge between `{a}` and `{b}`")]
    MissingFace { triangle: String, a: String, b: String },
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
}

/// Vertex values on a simplicial complex of dimension at most two. Every
/// edge of every triangle is present and no edge is flat.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarField2 {
    vertices: Vec<(String, Rational)>,
    edges: Vec<(String, [usize; 2])>,
    triangles: Vec<(String, [usize; 3])>,
    /// Triangle to its edges, opposite each of its vertices in turn.
    faces: Vec<[usize; 3]>,
}

impl ScalarField2 {
    pub fn new(
        vertices: Vec<(String, Rational)>,
        edges: Vec<(String, [usize; 2])>,
        triangles: Vec<(String, [usize; 3])>,
    ) -> Result<ScalarField2, FieldError> {
        let mut names = HashSet::new();
        for name in vertices
            .iter()
            .map(|v| &v.0)
            .chain(edges.iter().map(|e| &e.0))
            .chain(triangles.iter().map(|t| &t.0))
        {
            if !names.insert(name) {
                return Err(FieldError::DuplicateId(name.clone()));
            }
        }
        let n = vertices.len();
        let mut edge_of: HashMap<(usize, usize), usize> = HashMap::new();
        for (k, (name, [a, b])) in edges.iter().enumerate() {
            if *a >= n || *b >= n {
                return Err(FieldError::MissingVertex(format!("edge `{name}`")));
            }
            if vertices[*a].1 == vertices[*b].1 {
                return Err(FieldError::FlatEdge(name.clone()));
            }
            edge_of.insert(((*a).min(*b), (*a).max(*b)), k);
        }
        let mut faces = Vec::with_capacity(triangles.len());
        for (name, vs) in &triangles {
            if vs.iter().any(|&v| v >= n) {
                return Err(FieldError::MissingVertex(format!("triangle `{name}`")));
            }
            let [a, b, c] = *vs;
            if a == b || b == c || a == c {
                return Err(FieldError::DegenerateTriangle(name.clone()));
            }
            let mut face = [0; 3];
            for (slot, (x, y)) in [(b, c), (a, c), (a, b)].into_iter().enumerate() {
                face[slot] = *edge_of.get(&(x.min(y), x.max(y))).ok_or_else(|| FieldError::MissingFace {
                    triangle: name.clone(),
                    a: vertices[x].0.clone(),
                    b: vertices[y].0.clone(),
                })?;
            }
            faces.push(face);
        }
        Ok(ScalarField2 {
            vertices,
            edges,
            triangles,
            faces,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_triangles(&self) -> usize {
        self.triangles.len()
    }

    pub fn value(&self, v: usize) -> Rational {
        self.vertices[v].1
    }

    pub fn name(&self, c: KCell) -> &str {
        match c {
            KCell::Vertex(i) => &self.vertices[i].0,
            KCell::Edge(i) => &self.edges[i].0,
            KCell::Triangle(i) => &self.triangles[i].0,
        }
    }

    pub fn cells(&self) -> impl Iterator<Item = KCell> + '_ {
        (0..self.vertices.len())
            .map(KCell::Vertex)
            .chain((0..self.edges.len()).map(KCell::Edge))
            .chain((0..self.triangles.len()).map(KCell::Triangle))
    }

    /// Vertices of an edge or triangle; empty for a vertex.
    fn corners(&self, c: KCell) -> &[usize] {
        match c {
            KCell::Vertex(_) => &[],
            KCell::Edge(i) => &self.edges[i].1,
            KCell::Triangle(i) => &self.triangles[i].1,
        }
    }

    /// Smallest and largest value on the closed simplex.
    pub fn span(&self, c: KCell) -> (Rational, Rational) {
        match c {
            KCell::Vertex(i) => (self.value(i), self.value(i)),
            _ => {
                let vals = self.corners(c).iter().map(|&v| self.value(v));
                (vals.clone().min().expect("corners"), vals.max().expect("corners"))
            }
        }
    }

    /// Number of connected components of the complex.
    pub fn num_components(&self) -> usize {
        let mut uf = UnionFind::<usize>::new(self.vertices.len());
        for (_, [a, b]) in &self.edges {
            uf.union(*a, *b);
        }
        let roots: HashSet<usize> = (0..self.vertices.len()).map(|v| uf.find(v)).collect();
        roots.len()
    }
}

/// Parses a field document:
///
/// ```text
/// v a 0
/// v b 1/2
/// v c 1
/// e ab a b
/// e bc b c
/// e ac a c
/// t abc a b c
/// ```
pub fn parse_field(text: &str) -> Result<ScalarField2, ParseError> {
    let mut seen: HashMap<&str, usize> = HashMap::new();
    let mut index: HashMap<&str, usize> = HashMap::new();
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    let mut triangles = Vec::new();
    let mut lines: HashMap<KCell, usize> = HashMap::new();
    for (line, words) in records(text) {
        let vertex = |w: &str| {
            index
                .get(w)
                .copied()
                .ok_or_else(|| ParseError::at(line, format!("unknown vertex `{w}`")))
        };
        match words[0] {
            "v" => {
                arity(line, &words, 2, "v <id> <value>")?;
                claim(&mut seen, line, words[1])?;
                index.insert(words[1], vertices.len());
                lines.insert(KCell::Vertex(vertices.len()), line);
                vertices.push((words[1].to_string(), value(line, words[2])?));
            }
            "e" => {
                arity(line, &words, 3, "e <id> <vertex> <vertex>")?;
                let ends = [vertex(words[2])?, vertex(words[3])?];
                claim(&mut seen, line, words[1])?;
                lines.insert(KCell::Edge(edges.len()), line);
                edges.push((words[1].to_string(), ends));
            }
            "t" => {
                arity(line, &words, 4, "t <id> <vertex> <vertex> <vertex>")?;
                let corners = [vertex(words[2])?, vertex(words[3])?, vertex(words[4])?];
                claim(&mut seen, line, words[1])?;
                lines.insert(KCell::Triangle(triangles.len()), line);
                triangles.push((words[1].to_string(), corners));
            }
            other => return Err(ParseError::at(line, format!("unknown record `{other}`"))),
        }
    }
    let edge_line: HashMap<String, usize> = edges
        .iter()
        .enumerate()
        .map(|(k, (n, _))| (n.clone(), lines[&KCell::Edge(k)]))
        .collect();
    let triangle_line: HashMap<String, usize> = triangles
        .iter()
        .enumerate()
        .map(|(k, (n, _))| (n.clone(), lines[&KCell::Triangle(k)]))
        .collect();
    ScalarField2::new(vertices, edges, triangles).map_err(|e| {
        let line = match &e {
            FieldError::FlatEdge(n) => edge_line.get(n).copied(),
            FieldError::DegenerateTriangle(n) | FieldError::MissingFace { triangle: n, .. } => {
                triangle_line.get(n).copied()
            }
            _ => None,
        };
        ParseError {
            line,
            message: e.to_string(),
        }
    })
}

/// The Reeb graph of a field with the quotient map onto it.
#[derive(Clone, Debug)]
pub struct ReebOfComplex {
    pub graph: RGraph,
    levels: Vec<HashMap<KCell, VertexId>>,
    slots: Vec<HashMap<KCell, EdgeId>>,
}

impl ReebOfComplex {
    /// Cell of the Reeb graph carrying the points of `c` at value `t`, if
    /// `c` has points there.
    pub fn image(&self, c: KCell, t: Rational) -> Option<Cell> {
        let g = &self.graph;
        match g.position_of(t) {
            crate::graph::Position::Level(i) => self.levels[i].get(&c).map(|&v| Cell::Vertex(v)),
            crate::graph::Position::Slot(i) => self.slots[i].get(&c).map(|&e| Cell::Edge(e)),
            _ => None,
        }
    }
}

/// Components of the cells `members` under the face relation.
fn group(k: &ScalarField2, members: &[KCell]) -> (Vec<usize>, usize) {
    let pos: HashMap<KCell, usize> = members.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut uf = UnionFind::<usize>::new(members.len());
    for (i, &c) in members.iter().enumerate() {
        if let KCell::Triangle(t) = c {
            let faces = k.faces[t].iter().map(|&e| KCell::Edge(e));
            let corners = k.triangles[t].1.iter().map(|&v| KCell::Vertex(v));
            for f in faces.chain(corners) {
                if let Some(&j) = pos.get(&f) {
                    uf.union(i, j);
                }
            }
        }
    }
    let mut label = HashMap::new();
    let comp: Vec<usize> = (0..members.len())
        .map(|i| {
            let n = label.len();
            *label.entry(uf.find(i)).or_insert(n)
        })
        .collect();
    (comp, label.len())
}

/// The Reeb graph of a field. Its critical values are the vertex values;
/// over each value the vertices are the components of the level set, and
/// over each gap the edges are the components of the open slab.
pub fn reeb_of_complex(k: &ScalarField2) -> ReebOfComplex {
    let criticals = sorted_unique((0..k.num_vertices()).map(|v| k.value(v)).collect());
    let mut vertices = Vec::new();
    let mut levels = Vec::with_capacity(criticals.len());
    for (i, &a) in criticals.iter().enumerate() {
        let members: Vec<KCell> = k
            .cells()
            .filter(|&c| match c {
                KCell::Vertex(v) => k.value(v) == a,
                _ => {
                    let (lo, hi) = k.span(c);
                    lo < a && a < hi
                }
            })
            .collect();
        let (comp, n) = group(k, &members);
        let first = vertices.len();
        vertices.extend((0..n).map(|j| (format!("v{i}.{j}"), i)));
        levels.push(
            members
                .iter()
                .zip(comp)
                .map(|(&c, j)| (c, VertexId((first + j) as u32)))
                .collect::<HashMap<_, _>>(),
        );
    }
    let mut edges = Vec::new();
    let mut slots = Vec::with_capacity(criticals.len().saturating_sub(1));
    for (i, w) in criticals.windows(2).enumerate() {
        let members: Vec<KCell> = k
            .cells()
            .filter(|&c| !matches!(c, KCell::Vertex(_)))
            .filter(|&c| {
                let (lo, hi) = k.span(c);
                lo <= w[0] && w[1] <= hi
            })
            .collect();
        let (comp, n) = group(k, &members);
        let mut ends = vec![None; n];
        for (&c, &j) in members.iter().zip(&comp) {
            if ends[j].is_none() {
                let at = |t: Rational, levels: &HashMap<KCell, VertexId>| {
                    let (lo, hi) = k.span(c);
                    let cell = if lo < t && t < hi {
                        c
                    } else {
                        let v = *k.corners(c).iter().find(|&&v| k.value(v) == t).expect("endpoint at t");
                        KCell::Vertex(v)
                    };
                    levels[&cell]
                };
                ends[j] = Some((at(w[0], &levels[i]), at(w[1], &levels[i + 1])));
            }
        }
        let first = edges.len();
        for (j, e) in ends.into_iter().enumerate() {
            let (d, u) = e.expect("every component has a cell");
            edges.push((format!("e{i}.{j}"), d, u));
        }
        slots.push(
            members
                .iter()
                .zip(comp)
                .map(|(&c, j)| (c, EdgeId((first + j) as u32)))
                .collect::<HashMap<_, _>>(),
        );
    }
    let graph = RGraph::new(criticals, vertices, edges).expect("level sets and slabs form a graph");
    ReebOfComplex { graph, levels, slots }
}

/// A graph as a 1-dimensional field.
pub fn complex_of_graph(g: &RGraph) -> ScalarField2 {
    let vertices = g.vertex_ids().map(|v| (g.vertex(v).name.clone(), g.value(v))).collect();
    let edges = g
        .edge_ids()
        .map(|e| (g.edge(e).name.clone(), [g.down(e).index(), g.up(e).index()]))
        .collect();
    ScalarField2::new(vertices, edges, Vec::new()).expect("graph edges are not flat")
}
