//! Constructible set-valued cosheaves over the real line, stored by their
//! values on short intervals.
//!
//! With critical values `a_0 < … < a_n`, a cosheaf is determined by the
//! node sets `V_i = F((a_{i-1}, a_{i+1}))` (with `a_{-1} = -∞` and
//! `a_{n+1} = +∞`), the edge sets `E_i = F((a_i, a_{i+1}))`, and the maps
//! `ℓ_i: E_i → V_i`, `r_i: E_i → V_{i+1}` induced by inclusion. Values on
//! other intervals are colimits of this zigzag and are computed on demand.

mod eval;
mod iso;
mod morphism;

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::graph::{Cell, RGraph};
use crate::rational::Rational;

pub use eval::{
    evaluate, extend_map, glue, resample, sigma_map, smooth_cosheaf, Evaluation, Gluing, Piece, Side,
};
pub use iso::is_cosheaf_iso;
pub use morphism::{CosheafMorphism, CosheafReport};

/// An open interval with possibly infinite ends, or the empty interval.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Interval {
    Empty,
    /// `None` stands for −∞ on the left and +∞ on the right.
    Open {
        lo: Option<Rational>,
        hi: Option<Rational>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CosheafError {
    #[error("interval ends out of order: {0} ≥ {1}")]
    BadInterval(Rational, Rational),
    #[error("negative expansion {0}")]
    NegativeEpsilon(Rational),
    #[error("{0} is not contained in {1}")]
    NotContained(Box<Interval>, Box<Interval>),
    #[error("malformed cosheaf: {0}")]
    Malformed(String),
}

impl Interval {
    pub fn new(lo: Option<Rational>, hi: Option<Rational>) -> Result<Interval, CosheafError> {
        if let (Some(a), Some(b)) = (lo, hi) {
            if a >= b {
                return Err(CosheafError::BadInterval(a, b));
            }
        }
        Ok(Interval::Open { lo, hi })
    }

    pub fn finite(lo: Rational, hi: Rational) -> Result<Interval, CosheafError> {
        Interval::new(Some(lo), Some(hi))
    }

    pub fn whole() -> Interval {
        Interval::Open { lo: None, hi: None }
    }

    pub fn contains_value(&self, t: Rational) -> bool {
        match *self {
            Interval::Empty => false,
            Interval::Open { lo, hi } => lo.is_none_or(|a| a < t) && hi.is_none_or(|b| t < b),
        }
    }

    pub fn is_subset_of(&self, other: &Interval) -> bool {
        match (*self, *other) {
            (Interval::Empty, _) => true,
            (_, Interval::Empty) => false,
            (Interval::Open { lo: a, hi: b }, Interval::Open { lo: c, hi: d }) => {
                let left = match (c, a) {
                    (None, _) => true,
                    (Some(_), None) => false,
                    (Some(c), Some(a)) => c <= a,
                };
                let right = match (d, b) {
                    (None, _) => true,
                    (Some(_), None) => false,
                    (Some(d), Some(b)) => b <= d,
                };
                left && right
            }
        }
    }

    pub fn intersect(&self, other: &Interval) -> Interval {
        match (*self, *other) {
            (Interval::Open { lo: a, hi: b }, Interval::Open { lo: c, hi: d }) => {
                let lo = match (a, c) {
                    (None, x) | (x, None) => x,
                    (Some(a), Some(c)) => Some(a.max(c)),
                };
                let hi = match (b, d) {
                    (None, x) | (x, None) => x,
                    (Some(b), Some(d)) => Some(b.min(d)),
                };
                Interval::new(lo, hi).unwrap_or(Interval::Empty)
            }
            _ => Interval::Empty,
        }
    }

    /// The smallest interval containing both; callers use it only when
    /// the two overlap.
    pub fn hull(&self, other: &Interval) -> Interval {
        match (*self, *other) {
            (Interval::Empty, x) | (x, Interval::Empty) => x,
            (Interval::Open { lo: a, hi: b }, Interval::Open { lo: c, hi: d }) => {
                let lo = a.zip(c).map(|(a, c)| a.min(c));
                let hi = b.zip(d).map(|(b, d)| b.max(d));
                Interval::Open { lo, hi }
            }
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Interval::Empty => f.write_str("∅"),
            Interval::Open { lo, hi } => {
                let lo = lo.map_or("-inf".to_string(), |x| x.to_string());
                let hi = hi.map_or("inf".to_string(), |x| x.to_string());
                write!(f, "({lo}, {hi})")
            }
        }
    }
}

/// `(lo − ε, hi + ε)`; infinite ends stay infinite.
pub fn expand(i: Interval, eps: Rational) -> Result<Interval, CosheafError> {
    if eps.is_negative() {
        return Err(CosheafError::NegativeEpsilon(eps));
    }
    Ok(match i {
        Interval::Empty => Interval::Empty,
        Interval::Open { lo, hi } => Interval::Open {
            lo: lo.map(|a| a - eps),
            hi: hi.map(|b| b + eps),
        },
    })
}

/// A named element of a short-interval value. `cells` names the graph
/// cells it contains, when it comes from a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    pub name: String,
    pub cells: Vec<String>,
}

impl Element {
    pub fn named(name: impl Into<String>) -> Element {
        Element {
            name: name.into(),
            cells: Vec::new(),
        }
    }
}

/// A constructible cosheaf in zigzag form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cosheaf {
    criticals: Vec<Rational>,
    nodes: Vec<Vec<Element>>,
    edges: Vec<Vec<Element>>,
    left: Vec<Vec<usize>>,
    right: Vec<Vec<usize>>,
}

impl Cosheaf {
    /// Checks that the critical values increase, that every map is total
    /// and lands in range, and that element names are unique.
    pub fn new(
        criticals: Vec<Rational>,
        nodes: Vec<Vec<Element>>,
        edges: Vec<Vec<Element>>,
        left: Vec<Vec<usize>>,
        right: Vec<Vec<usize>>,
    ) -> Result<Cosheaf, CosheafError> {
        let n = criticals.len();
        let bad = |m: &str| Err(CosheafError::Malformed(m.to_string()));
        if criticals.windows(2).any(|w| w[0] >= w[1]) {
            return bad("criticals must increase strictly");
        }
        if nodes.len() != n || edges.len() != n.saturating_sub(1) {
            return bad("node and edge sets must match the critical values");
        }
        if left.len() != edges.len() || right.len() != edges.len() {
            return bad("one left and one right map per slot");
        }
        for i in 0..edges.len() {
            if left[i].len() != edges[i].len() || right[i].len() != edges[i].len() {
                return bad("attaching maps must be total");
            }
            if left[i].iter().any(|&x| x >= nodes[i].len())
                || right[i].iter().any(|&x| x >= nodes[i + 1].len())
            {
                return bad("attaching map lands outside its node set");
            }
        }
        let mut seen = HashSet::new();
        for el in nodes.iter().chain(edges.iter()).flatten() {
            if !seen.insert(el.name.as_str()) {
                return Err(CosheafError::Malformed(format!("duplicate element `{}`", el.name)));
            }
        }
        Ok(Cosheaf {
            criticals,
            nodes,
            edges,
            left,
            right,
        })
    }

    pub fn criticals(&self) -> &[Rational] {
        &self.criticals
    }

    pub fn num_levels(&self) -> usize {
        self.criticals.len()
    }

    /// `V_i`.
    pub fn nodes(&self, i: usize) -> &[Element] {
        &self.nodes[i]
    }

    /// `E_i`.
    pub fn edges(&self, i: usize) -> &[Element] {
        &self.edges[i]
    }

    pub fn left(&self, i: usize) -> &[usize] {
        &self.left[i]
    }

    pub fn right(&self, i: usize) -> &[usize] {
        &self.right[i]
    }

    /// Total number of short-interval elements.
    pub fn size(&self) -> usize {
        self.nodes.iter().map(Vec::len).sum::<usize>() + self.edges.iter().map(Vec::len).sum::<usize>()
    }
}

/// The Reeb cosheaf of a graph: `V_i` is the set of components over
/// `(a_{i-1}, a_{i+1})`, one per vertex of level `i` together with its
/// incident edges, and `E_i` is the edge set of slot `i`.
pub fn reeb_cosheaf(g: &RGraph) -> Cosheaf {
    let mut pos = vec![0usize; g.num_vertices()];
    let nodes: Vec<Vec<Element>> = (0..g.num_levels())
        .map(|i| {
            g.level(i)
                .iter()
                .enumerate()
                .map(|(k, &v)| {
                    pos[v.index()] = k;
                    let mut cells = vec![g.name(Cell::Vertex(v)).to_string()];
                    cells.extend(
                        g.edges_below(v)
                            .iter()
                            .chain(g.edges_above(v))
                            .map(|&e| g.edge(e).name.clone()),
                    );
                    cells.sort();
                    Element {
                        name: g.vertex(v).name.clone(),
                        cells,
                    }
                })
                .collect()
        })
        .collect();
    let mut edges = Vec::new();
    let mut left = Vec::new();
    let mut right = Vec::new();
    for i in 0..g.num_slots() {
        edges.push(
            g.slot(i)
                .iter()
                .map(|&e| Element {
                    name: g.edge(e).name.clone(),
                    cells: vec![g.edge(e).name.clone()],
                })
                .collect(),
        );
        left.push(g.slot(i).iter().map(|&e| pos[g.down(e).index()]).collect());
        right.push(g.slot(i).iter().map(|&e| pos[g.up(e).index()]).collect());
    }
    Cosheaf::new(g.criticals().to_vec(), nodes, edges, left, right).expect("graphs give valid cosheaves")
}

/// The graph whose levels and slots are the node and edge sets.
pub fn display(f: &Cosheaf) -> RGraph {
    let mut vertices = Vec::new();
    let mut first = Vec::new();
    for (i, level) in f.nodes.iter().enumerate() {
        first.push(vertices.len());
        vertices.extend(level.iter().map(|el| (el.name.clone(), i)));
    }
    let mut edges = Vec::new();
    for (i, slot) in f.edges.iter().enumerate() {
        for (k, el) in slot.iter().enumerate() {
            edges.push((
                el.name.clone(),
                crate::graph::VertexId((first[i] + f.left[i][k]) as u32),
                crate::graph::VertexId((first[i + 1] + f.right[i][k]) as u32),
            ));
        }
    }
    RGraph::new(f.criticals.clone(), vertices, edges).expect("cosheaf data is a valid graph")
}
