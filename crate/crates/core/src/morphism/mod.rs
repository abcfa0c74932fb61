//! Function-preserving maps between ℝ-graphs with different critical sets.
//!
//! The compact encoding sends each source vertex to a target vertex at the
//! same value or to a target edge strictly containing that value, and each
//! source edge to the chain of target edges its image runs through, bottom
//! to top. The chain may start and end strictly inside its first and last
//! edge. Since the encoding is determined by the underlying map, two
//! morphisms are equal exactly when their encodings are.

mod push;
mod refined;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::graph::{Cell, EdgeId, RGraph, VertexId};
use crate::rational::Rational;

pub use push::{push_through, shift_compose, smooth_morphism};
pub use refined::{refine_morphism, RefinedMorphism};

#[derive(Clone)]
pub struct RGraphMorphism {
    source: Arc<RGraph>,
    target: Arc<RGraph>,
    vertex_map: Vec<Cell>,
    edge_map: Vec<Vec<EdgeId>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismViolation {
    /// Name of the offending source cell.
    pub cell: String,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MorphismReport {
    pub violations: Vec<MorphismViolation>,
}

impl MorphismReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, cell: &str, message: impl Into<String>) {
        self.violations.push(MorphismViolation {
            cell: cell.to_string(),
            message: message.into(),
        });
    }
}

impl fmt::Display for MorphismReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return f.write_str("ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "`{}`: {}", v.cell, v.message)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error("graphs do not match: {0}")]
    Mismatch(String),
    #[error("cell `{cell}` at {t}: {reason}")]
    Image {
        cell: String,
        t: Rational,
        reason: String,
    },
    #[error("invalid morphism: {0}")]
    Invalid(MorphismReport),
}

pub(crate) fn same_graph(a: &Arc<RGraph>, b: &Arc<RGraph>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl RGraphMorphism {
    /// Wraps an encoding after checking it.
    pub fn new(
        source: Arc<RGraph>,
        target: Arc<RGraph>,
        vertex_map: Vec<Cell>,
        edge_map: Vec<Vec<EdgeId>>,
    ) -> Result<RGraphMorphism, MorphismError> {
        let m = RGraphMorphism::new_unchecked(source, target, vertex_map, edge_map)?;
        let report = m.validate();
        if report.is_ok() {
            Ok(m)
        } else {
            Err(MorphismError::Invalid(report))
        }
    }

    /// Wraps an encoding, checking only that its sizes fit the graphs.
    pub fn new_unchecked(
        source: Arc<RGraph>,
        target: Arc<RGraph>,
        vertex_map: Vec<Cell>,
        edge_map: Vec<Vec<EdgeId>>,
    ) -> Result<RGraphMorphism, MorphismError> {
        if vertex_map.len() != source.num_vertices() || edge_map.len() != source.num_edges() {
            return Err(MorphismError::Mismatch(
                "maps do not cover the source cells".into(),
            ));
        }
        let in_range = |c: &Cell| match *c {
            Cell::Vertex(v) => v.index() < target.num_vertices(),
            Cell::Edge(e) => e.index() < target.num_edges(),
        };
        if !vertex_map.iter().all(in_range)
            || !edge_map
                .iter()
                .flatten()
                .all(|e| e.index() < target.num_edges())
        {
            return Err(MorphismError::Mismatch("image outside the target".into()));
        }
        Ok(RGraphMorphism {
            source,
            target,
            vertex_map,
            edge_map,
        })
    }

    pub fn identity(g: Arc<RGraph>) -> RGraphMorphism {
        let vertex_map = g.vertex_ids().map(Cell::Vertex).collect();
        let edge_map = g.edge_ids().map(|e| vec![e]).collect();
        RGraphMorphism {
            source: g.clone(),
            target: g,
            vertex_map,
            edge_map,
        }
    }

    pub fn source(&self) -> &Arc<RGraph> {
        &self.source
    }

    pub fn target(&self) -> &Arc<RGraph> {
        &self.target
    }

    pub fn vertex_image(&self, v: VertexId) -> Cell {
        self.vertex_map[v.index()]
    }

    pub fn edge_path(&self, e: EdgeId) -> &[EdgeId] {
        &self.edge_map[e.index()]
    }

    pub fn vertex_map(&self) -> &[Cell] {
        &self.vertex_map
    }

    pub fn edge_map(&self) -> &[Vec<EdgeId>] {
        &self.edge_map
    }

    /// Checks value preservation, that paths chain, and that each path
    /// starts and ends where its edge's endpoints go.
    pub fn validate(&self) -> MorphismReport {
        let (s, t) = (&*self.source, &*self.target);
        let mut report = MorphismReport::default();
        for v in s.vertex_ids() {
            let img = self.vertex_map[v.index()];
            if !t.cell_contains(img, s.value(v)) {
                report.push(
                    &s.vertex(v).name,
                    format!("image `{}` does not carry value {}", t.name(img), s.value(v)),
                );
            }
        }
        for e in s.edge_ids() {
            let name = &s.edge(e).name;
            let path = &self.edge_map[e.index()];
            let (lo, hi) = s.span(e);
            let Some((&first, &last)) = path.first().zip(path.last()) else {
                report.push(name, "empty path");
                continue;
            };
            if path.windows(2).any(|w| t.up(w[0]) != t.down(w[1])) {
                report.push(name, "path does not chain");
                continue;
            }
            let (flo, fhi) = t.span(first);
            let (llo, lhi) = t.span(last);
            if !(flo <= lo && lo < fhi) {
                report.push(name, format!("path does not start at {lo}"));
                continue;
            }
            if !(llo < hi && hi <= lhi) {
                report.push(name, format!("path does not end at {hi}"));
                continue;
            }
            if path[..path.len() - 1].iter().any(|&p| t.span(p).1 >= hi) {
                report.push(name, "path overshoots its edge");
                continue;
            }
            let want_down = if flo == lo {
                Cell::Vertex(t.down(first))
            } else {
                Cell::Edge(first)
            };
            let want_up = if lhi == hi {
                Cell::Vertex(t.up(last))
            } else {
                Cell::Edge(last)
            };
            if self.vertex_map[s.down(e).index()] != want_down {
                report.push(name, "path does not start at the image of its lower vertex");
            }
            if self.vertex_map[s.up(e).index()] != want_up {
                report.push(name, "path does not end at the image of its upper vertex");
            }
        }
        report
    }

    /// Image of the point of `c` at value `t`; `t` must lie in the closure
    /// of `c`.
    pub fn image_at(&self, c: Cell, t: Rational) -> Option<Cell> {
        let s = &*self.source;
        match c {
            Cell::Vertex(v) => (s.value(v) == t).then(|| self.vertex_map[v.index()]),
            Cell::Edge(e) => {
                let (lo, hi) = s.span(e);
                if t == lo {
                    return Some(self.vertex_map[s.down(e).index()]);
                }
                if t == hi {
                    return Some(self.vertex_map[s.up(e).index()]);
                }
                if t < lo || t > hi {
                    return None;
                }
                let path = &self.edge_map[e.index()];
                let k = path.partition_point(|&p| self.target.span(p).1 < t);
                let p = *path.get(k)?;
                if self.target.span(p).1 == t {
                    Some(Cell::Vertex(self.target.up(p)))
                } else {
                    Some(Cell::Edge(p))
                }
            }
        }
    }

    /// Builds the morphism `source → target` whose value on the point of
    /// cell `c` at `t` is `image(c, t)`. The image is sampled at each vertex
    /// and at every target critical value and gap inside each edge.
    pub fn from_pointwise(
        source: Arc<RGraph>,
        target: Arc<RGraph>,
        mut image: impl FnMut(Cell, Rational) -> Result<Cell, String>,
    ) -> Result<RGraphMorphism, MorphismError> {
        let (s, t) = (&*source, &*target);
        let fail = |c: Cell, at: Rational, reason: String| MorphismError::Image {
            cell: s.name(c).to_string(),
            t: at,
            reason,
        };
        let mut vertex_map = Vec::with_capacity(s.num_vertices());
        for v in s.vertex_ids() {
            let c = Cell::Vertex(v);
            let at = s.value(v);
            let img = image(c, at).map_err(|r| fail(c, at, r))?;
            if !t.cell_contains(img, at) {
                return Err(fail(c, at, format!("image `{}` is at the wrong value", t.name(img))));
            }
            vertex_map.push(img);
        }
        let mut edge_map = Vec::with_capacity(s.num_edges());
        for e in s.edge_ids() {
            let c = Cell::Edge(e);
            let (lo, hi) = s.span(e);
            let crit = t.criticals();
            let from = crit.partition_point(|&x| x <= lo);
            let to = crit.partition_point(|&x| x < hi);
            let mut cuts = vec![lo];
            cuts.extend_from_slice(&crit[from..to]);
            cuts.push(hi);
            let mut path = Vec::with_capacity(cuts.len() - 1);
            for w in cuts.windows(2) {
                let at = Rational::midpoint(w[0], w[1]);
                match image(c, at).map_err(|r| fail(c, at, r))? {
                    Cell::Edge(p) if t.cell_contains(Cell::Edge(p), at) => path.push(p),
                    other => {
                        return Err(fail(
                            c,
                            at,
                            format!("image `{}` is not an edge over {at}", t.name(other)),
                        ))
                    }
                }
            }
            for (k, &at) in cuts[1..cuts.len() - 1].iter().enumerate() {
                let img = image(c, at).map_err(|r| fail(c, at, r))?;
                let joint = Cell::Vertex(t.up(path[k]));
                if img != joint || t.down(path[k + 1]) != t.up(path[k]) {
                    return Err(fail(c, at, "image is not continuous".into()));
                }
            }
            edge_map.push(path);
        }
        RGraphMorphism::new(source, target, vertex_map, edge_map)
    }

    /// `psi ∘ self`.
    pub fn then(&self, psi: &RGraphMorphism) -> Result<RGraphMorphism, MorphismError> {
        compose(self, psi)
    }

    /// First source cell on which two morphisms with the same shape differ.
    pub fn first_difference(&self, other: &RGraphMorphism) -> Option<Cell> {
        for v in self.source.vertex_ids() {
            if self.vertex_map[v.index()] != other.vertex_map.get(v.index()).copied()? {
                return Some(Cell::Vertex(v));
            }
        }
        for e in self.source.edge_ids() {
            if Some(&self.edge_map[e.index()]) != other.edge_map.get(e.index()) {
                return Some(Cell::Edge(e));
            }
        }
        None
    }

    /// Is every cell of the target hit by some point of the source.
    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.num_cells()];
        for c in self.vertex_map.iter() {
            hit[self.target.cell_index(*c)] = true;
        }
        for path in &self.edge_map {
            for (k, &p) in path.iter().enumerate() {
                hit[self.target.cell_index(Cell::Edge(p))] = true;
                if k + 1 < path.len() {
                    hit[self.target.cell_index(Cell::Vertex(self.target.up(p)))] = true;
                }
            }
        }
        hit.into_iter().all(|h| h)
    }

    /// The same map with source or target swapped for structurally equal
    /// graphs (for example an independently computed copy).
    pub fn rebased(&self, source: Arc<RGraph>, target: Arc<RGraph>) -> Result<RGraphMorphism, MorphismError> {
        if !same_graph(&source, &self.source) || !same_graph(&target, &self.target) {
            return Err(MorphismError::Mismatch("rebased onto different graphs".into()));
        }
        Ok(RGraphMorphism {
            source,
            target,
            vertex_map: self.vertex_map.clone(),
            edge_map: self.edge_map.clone(),
        })
    }
}

impl PartialEq for RGraphMorphism {
    fn eq(&self, other: &Self) -> bool {
        same_graph(&self.source, &other.source)
            && same_graph(&self.target, &other.target)
            && self.vertex_map == other.vertex_map
            && self.edge_map == other.edge_map
    }
}

impl Eq for RGraphMorphism {}

impl fmt::Debug for RGraphMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (s, t) = (&*self.source, &*self.target);
        let mut m = f.debug_map();
        for v in s.vertex_ids() {
            m.entry(&s.vertex(v).name, &t.name(self.vertex_map[v.index()]));
        }
        for e in s.edge_ids() {
            let path: Vec<&str> = self.edge_map[e.index()]
                .iter()
                .map(|&p| t.edge(p).name.as_str())
                .collect();
            m.entry(&s.edge(e).name, &path);
        }
        m.finish()
    }
}

/// `psi ∘ phi`.
pub fn compose(phi: &RGraphMorphism, psi: &RGraphMorphism) -> Result<RGraphMorphism, MorphismError> {
    if !same_graph(&phi.target, &psi.source) {
        return Err(MorphismError::Mismatch(
            "target of the first map is not the source of the second".into(),
        ));
    }
    RGraphMorphism::from_pointwise(phi.source.clone(), psi.target.clone(), |c, t| {
        let mid = phi
            .image_at(c, t)
            .ok_or_else(|| "value outside the cell".to_string())?;
        psi.image_at(mid, t)
            .ok_or_else(|| "value outside the intermediate cell".to_string())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{line, looped};
    use crate::rational::Rational as Q;

    fn q(n: i128) -> Q {
        Q::integer(n)
    }

    fn quotient() -> RGraphMorphism {
        let l = Arc::new(looped(q(0), q(1)));
        let t = Arc::new(line(q(0), q(1)));
        RGraphMorphism::new(
            l,
            t,
            vec![Cell::Vertex(VertexId(0)), Cell::Vertex(VertexId(1))],
            vec![vec![EdgeId(0)], vec![EdgeId(0)]],
        )
        .unwrap()
    }

    fn swap() -> RGraphMorphism {
        let l = Arc::new(looped(q(0), q(1)));
        RGraphMorphism::new(
            l.clone(),
            l,
            vec![Cell::Vertex(VertexId(0)), Cell::Vertex(VertexId(1))],
            vec![vec![EdgeId(1)], vec![EdgeId(0)]],
        )
        .unwrap()
    }

    #[test]
    fn identity_and_quotient_validate() {
        let l = Arc::new(looped(q(0), q(1)));
        assert!(RGraphMorphism::identity(l).validate().is_ok());
        assert!(quotient().validate().is_ok());
        assert!(quotient().is_surjective());
    }

    #[test]
    fn bad_endpoint_is_reported() {
        let l = Arc::new(looped(q(0), q(1)));
        let err = RGraphMorphism::new(
            l.clone(),
            l,
            vec![Cell::Vertex(VertexId(0)), Cell::Vertex(VertexId(0))],
            vec![vec![EdgeId(0)], vec![EdgeId(1)]],
        )
        .unwrap_err();
        let MorphismError::Invalid(report) = err else {
            panic!("expected a report")
        };
        assert!(report.violations.iter().any(|v| v.cell == "v1"));
    }

    #[test]
    fn composition_laws() {
        let phi = quotient();
        let id = RGraphMorphism::identity(phi.target().clone());
        assert_eq!(compose(&phi, &id).unwrap(), phi);
        let id = RGraphMorphism::identity(phi.source().clone());
        assert_eq!(compose(&id, &phi).unwrap(), phi);
        assert_eq!(compose(&swap(), &phi).unwrap(), phi);
        assert_eq!(compose(&swap(), &swap()).unwrap(), id);
    }

    #[test]
    fn maps_into_finer_targets() {
        let src = Arc::new(line(q(0), q(2)));
        let fine = crate::graph::refine(&line(q(-1), q(3)), &[q(0), q(1), q(2)]).graph;
        let fine = Arc::new(fine);
        let m = RGraphMorphism::from_pointwise(src.clone(), fine.clone(), |_, t| {
            Ok(fine.cells_at(t)[0])
        })
        .unwrap();
        assert_eq!(m.edge_path(EdgeId(0)).len(), 2);
        assert_eq!(m.image_at(Cell::Edge(EdgeId(0)), q(1)), Some(fine.cells_at(q(1))[0]));
        let inside = RGraphMorphism::from_pointwise(
            Arc::new(line(Q::new(1, 4), Q::new(3, 4))),
            fine.clone(),
            |_, t| Ok(fine.cells_at(t)[0]),
        )
        .unwrap();
        assert_eq!(inside.vertex_image(VertexId(0)), Cell::Edge(inside.edge_path(EdgeId(0))[0]));
    }
}
