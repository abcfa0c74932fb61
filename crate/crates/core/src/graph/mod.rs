//! Combinatorial ℝ-graphs.
//!
//! A graph is presented by a strictly increasing list of critical values
//! `a_0 < … < a_n`, a set of vertices over each `a_i` and a set of edges over
//! each slot `[a_i, a_{i+1}]`, each edge attached below to a vertex of level
//! `i` and above to a vertex of level `i + 1`. The function value of a point
//! is implicit: a vertex sits at its level's critical value and an edge
//! sweeps its slot monotonically.

mod builder;
mod describe;
pub(crate) mod iso;
mod refine;

use std::collections::HashMap;
use std::fmt;

use petgraph::unionfind::UnionFind;

use crate::rational::Rational;

pub use builder::{BuildError, Built, GraphBuilder};
pub use describe::{validate, GraphDescription, Rule, SlotDescription, ValidationReport, Violation};
pub use iso::{is_isomorphic, IsoError, IsoWitness, DEFAULT_ISO_BUDGET};
pub use refine::{common_refinement, reduce, refine, CommonRefinement, Reduction, Refinement};

#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct VertexId(pub u32);

#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct EdgeId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A vertex or an edge of one graph. Vertices order before edges.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Cell {
    Vertex(VertexId),
    Edge(EdgeId),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Vertex {
    pub name: String,
    pub level: usize,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Edge {
    pub name: String,
    pub slot: usize,
    pub down: VertexId,
    pub up: VertexId,
}

/// An immutable combinatorial ℝ-graph.
#[derive(Clone, PartialEq, Eq)]
pub struct RGraph {
    criticals: Vec<Rational>,
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    levels: Vec<Vec<VertexId>>,
    slots: Vec<Vec<EdgeId>>,
    below: Vec<Vec<EdgeId>>,
    above: Vec<Vec<EdgeId>>,
    names: HashMap<String, Cell>,
}

impl RGraph {
    /// Assembles a graph from indexed parts. Each edge's slot is the level of
    /// its lower vertex; the upper vertex must sit one level higher.
    pub fn new(
        criticals: Vec<Rational>,
        vertices: Vec<(String, usize)>,
        edges: Vec<(String, VertexId, VertexId)>,
    ) -> Result<RGraph, ValidationReport> {
        let mut report = ValidationReport::default();
        if criticals.windows(2).any(|w| w[0] >= w[1]) {
            report.push(Rule::CriticalsNotIncreasing, "criticals", "values must increase strictly");
        }
        let n = criticals.len();
        let mut names: HashMap<String, Cell> = HashMap::new();
        let mut levels = vec![Vec::new(); n];
        let mut vs = Vec::with_capacity(vertices.len());
        for (i, (name, level)) in vertices.into_iter().enumerate() {
            let id = VertexId(i as u32);
            if level >= n {
                report.push(Rule::LevelOutOfRange, &name, format!("level {level} with {n} criticals"));
            } else {
                levels[level].push(id);
            }
            if names.insert(name.clone(), Cell::Vertex(id)).is_some() {
                report.push(Rule::DuplicateId, &name, "id used twice");
            }
            vs.push(Vertex { name, level });
        }
        let mut slots = vec![Vec::new(); n.saturating_sub(1)];
        let mut below = vec![Vec::new(); vs.len()];
        let mut above = vec![Vec::new(); vs.len()];
        let mut es = Vec::with_capacity(edges.len());
        for (i, (name, down, up)) in edges.into_iter().enumerate() {
            let id = EdgeId(i as u32);
            if names.insert(name.clone(), Cell::Edge(id)).is_some() {
                report.push(Rule::DuplicateId, &name, "id used twice");
            }
            let (Some(dv), Some(uv)) = (vs.get(down.index()), vs.get(up.index())) else {
                report.push(Rule::UnknownVertex, &name, "attaching map names a missing vertex");
                es.push(Edge { name, slot: 0, down, up });
                continue;
            };
            let slot = dv.level;
            if uv.level != slot + 1 || slot + 1 >= n {
                report.push(
                    Rule::WrongLevel,
                    &name,
                    format!("attached to levels {} and {}", dv.level, uv.level),
                );
            } else {
                slots[slot].push(id);
                above[down.index()].push(id);
                below[up.index()].push(id);
            }
            es.push(Edge { name, slot, down, up });
        }
        if !report.is_ok() {
            return Err(report);
        }
        Ok(RGraph {
            criticals,
            vertices: vs,
            edges: es,
            levels,
            slots,
            below,
            above,
            names,
        })
    }

    pub fn empty() -> RGraph {
        RGraph::new(Vec::new(), Vec::new(), Vec::new()).expect("empty graph is valid")
    }

    pub fn criticals(&self) -> &[Rational] {
        &self.criticals
    }

    pub fn num_levels(&self) -> usize {
        self.criticals.len()
    }

    pub fn num_slots(&self) -> usize {
        self.slots.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_cells(&self) -> usize {
        self.vertices.len() + self.edges.len()
    }

    /// Dense index of a cell: vertices first, then edges.
    pub fn cell_index(&self, c: Cell) -> usize {
        match c {
            Cell::Vertex(v) => v.index(),
            Cell::Edge(e) => self.vertices.len() + e.index(),
        }
    }

    pub fn cell_at_index(&self, i: usize) -> Cell {
        if i < self.vertices.len() {
            Cell::Vertex(VertexId(i as u32))
        } else {
            Cell::Edge(EdgeId((i - self.vertices.len()) as u32))
        }
    }

    pub fn is_empty(&self) -> bool {
        self.criticals.is_empty() && self.vertices.is_empty()
    }

    pub fn vertex(&self, v: VertexId) -> &Vertex {
        &self.vertices[v.index()]
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.index()]
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertices.len() as u32).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len() as u32).map(EdgeId)
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.vertex_ids()
            .map(Cell::Vertex)
            .chain(self.edge_ids().map(Cell::Edge))
    }

    /// Vertices over `a_i`.
    pub fn level(&self, i: usize) -> &[VertexId] {
        &self.levels[i]
    }

    /// Edges over `[a_i, a_{i+1}]`.
    pub fn slot(&self, i: usize) -> &[EdgeId] {
        &self.slots[i]
    }

    /// Edges ending at `v` from below.
    pub fn edges_below(&self, v: VertexId) -> &[EdgeId] {
        &self.below[v.index()]
    }

    /// Edges starting at `v` and going up.
    pub fn edges_above(&self, v: VertexId) -> &[EdgeId] {
        &self.above[v.index()]
    }

    pub fn down(&self, e: EdgeId) -> VertexId {
        self.edges[e.index()].down
    }

    pub fn up(&self, e: EdgeId) -> VertexId {
        self.edges[e.index()].up
    }

    pub fn value(&self, v: VertexId) -> Rational {
        self.criticals[self.vertices[v.index()].level]
    }

    /// `(low, high)` values of an edge.
    pub fn span(&self, e: EdgeId) -> (Rational, Rational) {
        let slot = self.edges[e.index()].slot;
        (self.criticals[slot], self.criticals[slot + 1])
    }

    /// Closed value range `[low, high]` of a cell.
    pub fn cell_range(&self, c: Cell) -> (Rational, Rational) {
        match c {
            Cell::Vertex(v) => {
                let t = self.value(v);
                (t, t)
            }
            Cell::Edge(e) => self.span(e),
        }
    }

    pub fn name(&self, c: Cell) -> &str {
        match c {
            Cell::Vertex(v) => &self.vertices[v.index()].name,
            Cell::Edge(e) => &self.edges[e.index()].name,
        }
    }

    pub fn lookup(&self, name: &str) -> Option<Cell> {
        self.names.get(name).copied()
    }

    pub fn vertex_named(&self, name: &str) -> Option<VertexId> {
        match self.lookup(name) {
            Some(Cell::Vertex(v)) => Some(v),
            _ => None,
        }
    }

    pub fn edge_named(&self, name: &str) -> Option<EdgeId> {
        match self.lookup(name) {
            Some(Cell::Edge(e)) => Some(e),
            _ => None,
        }
    }

    /// Index of the level whose critical value is exactly `t`.
    pub fn level_of_value(&self, t: Rational) -> Option<usize> {
        self.criticals.binary_search(&t).ok()
    }

    /// Where `t` falls relative to the critical values.
    pub fn position_of(&self, t: Rational) -> Position {
        match self.criticals.binary_search(&t) {
            Ok(i) => Position::Level(i),
            Err(0) => Position::Below,
            Err(i) if i == self.criticals.len() => Position::Above,
            Err(i) => Position::Slot(i - 1),
        }
    }

    /// Is `t` on the cell: equal to a vertex's value or strictly inside an
    /// edge's span.
    pub fn cell_contains(&self, c: Cell, t: Rational) -> bool {
        match c {
            Cell::Vertex(v) => self.value(v) == t,
            Cell::Edge(e) => {
                let (lo, hi) = self.span(e);
                lo < t && t < hi
            }
        }
    }

    /// Cells carrying a point at value `t`.
    pub fn cells_at(&self, t: Rational) -> Vec<Cell> {
        match self.position_of(t) {
            Position::Level(i) => self.levels[i].iter().map(|&v| Cell::Vertex(v)).collect(),
            Position::Slot(i) => self.slots[i].iter().map(|&e| Cell::Edge(e)).collect(),
            Position::Below | Position::Above => Vec::new(),
        }
    }

    /// Labels each cell with its connected component (vertices first, then
    /// edges, in id order). Component labels are `0..k` in order of first
    /// appearance.
    pub fn component_labels(&self) -> (Vec<usize>, usize) {
        let nv = self.vertices.len();
        components_of(
            nv + self.edges.len(),
            self.edges.iter().enumerate().flat_map(|(i, e)| {
                [(nv + i, e.down.index()), (nv + i, e.up.index())]
            }),
        )
    }

    /// Number of connected components of the underlying space.
    pub fn num_components(&self) -> usize {
        self.component_labels().1
    }

    /// Smallest gap between consecutive critical values.
    pub fn minimum_gap(&self) -> Option<Rational> {
        self.criticals.windows(2).map(|w| w[1] - w[0]).min()
    }

    /// First Betti number `|E| - |V| + #components`.
    pub fn cycle_rank(&self) -> usize {
        self.edges.len() + self.num_components() - self.vertices.len()
    }

    /// Same shape with every vertex and edge renamed.
    pub fn renamed(
        &self,
        mut vertex_name: impl FnMut(VertexId) -> String,
        mut edge_name: impl FnMut(EdgeId) -> String,
    ) -> Result<RGraph, ValidationReport> {
        let vertices = self
            .vertex_ids()
            .map(|v| (vertex_name(v), self.vertex(v).level))
            .collect();
        let edges = self
            .edge_ids()
            .map(|e| (edge_name(e), self.down(e), self.up(e)))
            .collect();
        RGraph::new(self.criticals.clone(), vertices, edges)
    }

    /// Disjoint union; names of `other` get `prefix` prepended.
    pub fn disjoint_union(&self, other: &RGraph, prefix: &str) -> Result<RGraph, BuildError> {
        let mut b = GraphBuilder::new();
        for v in self.vertex_ids() {
            b.vertex(&self.vertex(v).name, self.value(v));
        }
        for e in self.edge_ids() {
            b.edge(
                &self.edge(e).name,
                &self.vertex(self.down(e)).name,
                &self.vertex(self.up(e)).name,
            );
        }
        for v in other.vertex_ids() {
            b.vertex(format!("{prefix}{}", other.vertex(v).name), other.value(v));
        }
        for e in other.edge_ids() {
            b.edge(
                format!("{prefix}{}", other.edge(e).name),
                format!("{prefix}{}", other.vertex(other.down(e)).name),
                format!("{prefix}{}", other.vertex(other.up(e)).name),
            );
        }
        b.extra_criticals(self.criticals.iter().copied());
        b.extra_criticals(other.criticals.iter().copied());
        Ok(b.build()?.graph)
    }

    /// Checks the structural invariants of an already assembled graph.
    pub fn check(&self) -> ValidationReport {
        validate(&self.describe())
    }
}

/// Location of a value relative to a graph's critical values.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Position {
    Below,
    Level(usize),
    Slot(usize),
    Above,
}

impl fmt::Debug for RGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RGraph {{ criticals: {:?}", self.criticals)?;
        for (i, level) in self.levels.iter().enumerate() {
            let names: Vec<&str> = level.iter().map(|&v| self.vertex(v).name.as_str()).collect();
            writeln!(f, "  V{i} @ {}: {:?}", self.criticals[i], names)?;
        }
        for (i, slot) in self.slots.iter().enumerate() {
            let es: Vec<String> = slot
                .iter()
                .map(|&e| {
                    format!(
                        "{}:{}->{}",
                        self.edge(e).name,
                        self.vertex(self.down(e)).name,
                        self.vertex(self.up(e)).name
                    )
                })
                .collect();
            writeln!(f, "  E{i}: {:?}", es)?;
        }
        write!(f, "}}")
    }
}

/// Labels `n` items by connected component of the given pairs; labels are
/// `0..k` in order of first appearance.
pub(crate) fn components_of(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> (Vec<usize>, usize) {
    let mut uf = UnionFind::<usize>::new(n);
    for (a, b) in pairs {
        uf.union(a, b);
    }
    let mut relabel = HashMap::new();
    let labels: Vec<usize> = (0..n)
        .map(|x| {
            let r = uf.find(x);
            let next = relabel.len();
            *relabel.entry(r).or_insert(next)
        })
        .collect();
    let k = relabel.len();
    (labels, k)
}
