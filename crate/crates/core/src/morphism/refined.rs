use std::sync::Arc;

use super::{MorphismError, RGraphMorphism};
use crate::graph::{refine, Cell, EdgeId, RGraph, Refinement, VertexId};
use crate::rational::{sorted_unique, Rational};

/// Level-wise form of a morphism: source and target refined to one common
/// critical set, with vertices sent to vertices on the same level and edges
/// to edges in the same slot.
#[derive(Clone, Debug)]
pub struct RefinedMorphism {
    pub source: Refinement,
    pub target: Refinement,
    pub vertex_map: Vec<VertexId>,
    pub edge_map: Vec<EdgeId>,
    original_source: Arc<RGraph>,
    original_target: Arc<RGraph>,
}

/// Refines `phi` to the union of both critical sets and `extra`.
pub fn refine_morphism(phi: &RGraphMorphism, extra: &[Rational]) -> Result<RefinedMorphism, MorphismError> {
    let mut all: Vec<Rational> = phi.source().criticals().to_vec();
    all.extend_from_slice(phi.target().criticals());
    all.extend_from_slice(extra);
    let common = sorted_unique(all);
    let source = refine(phi.source(), &common);
    let target = refine(phi.target(), &common);
    let (src_v, src_e) = source.origins();
    let sg = &source.graph;
    let mut vertex_map = Vec::with_capacity(sg.num_vertices());
    for u in sg.vertex_ids() {
        let t = sg.value(u);
        let img = phi
            .image_at(src_v[u.index()], t)
            .ok_or_else(|| MorphismError::Mismatch("refined vertex outside its origin".into()))?;
        match target.locate(img, t) {
            Cell::Vertex(w) => vertex_map.push(w),
            Cell::Edge(_) => unreachable!("common critical values are vertices in the target"),
        }
    }
    let mut edge_map = Vec::with_capacity(sg.num_edges());
    for x in sg.edge_ids() {
        let (lo, hi) = sg.span(x);
        let t = Rational::midpoint(lo, hi);
        let img = phi
            .image_at(src_e[x.index()], t)
            .ok_or_else(|| MorphismError::Mismatch("refined edge outside its origin".into()))?;
        match target.locate(img, t) {
            Cell::Edge(y) => edge_map.push(y),
            Cell::Vertex(_) => unreachable!("non-critical values lie on edges"),
        }
    }
    Ok(RefinedMorphism {
        source,
        target,
        vertex_map,
        edge_map,
        original_source: phi.source().clone(),
        original_target: phi.target().clone(),
    })
}

impl RefinedMorphism {
    /// Level-wise maps commute with both attaching maps and preserve levels.
    pub fn is_consistent(&self) -> bool {
        let (s, t) = (&self.source.graph, &self.target.graph);
        s.vertex_ids().all(|v| {
            s.vertex(v).level == t.vertex(self.vertex_map[v.index()]).level
        }) && s.edge_ids().all(|e| {
            let y = self.edge_map[e.index()];
            s.edge(e).slot == t.edge(y).slot
                && self.vertex_map[s.down(e).index()] == t.down(y)
                && self.vertex_map[s.up(e).index()] == t.up(y)
        })
    }

    /// Back to the compact encoding on the original graphs.
    pub fn to_compact(&self) -> Result<RGraphMorphism, MorphismError> {
        let (tgt_v, tgt_e) = self.target.origins();
        RGraphMorphism::from_pointwise(
            self.original_source.clone(),
            self.original_target.clone(),
            |c, t| {
                let img = match self.source.locate(c, t) {
                    Cell::Vertex(u) => Cell::Vertex(self.vertex_map[u.index()]),
                    Cell::Edge(x) => Cell::Edge(self.edge_map[x.index()]),
                };
                let back = match img {
                    Cell::Vertex(w) => tgt_v[w.index()],
                    Cell::Edge(y) => tgt_e[y.index()],
                };
                Ok(back)
            },
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{line, looped};
    use crate::rational::Rational as Q;

    fn quotient() -> RGraphMorphism {
        RGraphMorphism::new(
            Arc::new(looped(Q::integer(0), Q::integer(1))),
            Arc::new(line(Q::integer(0), Q::integer(1))),
            vec![Cell::Vertex(VertexId(0)), Cell::Vertex(VertexId(1))],
            vec![vec![EdgeId(0)], vec![EdgeId(0)]],
        )
        .unwrap()
    }

    #[test]
    fn identity_refines_to_identities() {
        let g = Arc::new(looped(Q::integer(0), Q::integer(1)));
        let r = refine_morphism(&RGraphMorphism::identity(g), &[]).unwrap();
        assert!(r.is_consistent());
        assert!(r.vertex_map.iter().enumerate().all(|(i, v)| v.index() == i));
        assert!(r.edge_map.iter().enumerate().all(|(i, e)| e.index() == i));
    }

    #[test]
    fn quotient_refined_at_a_half() {
        let phi = quotient();
        let r = refine_morphism(&phi, &[Q::new(1, 2)]).unwrap();
        assert_eq!(r.edge_map.len(), 4);
        assert!(r.is_consistent());
        assert_eq!(r.to_compact().unwrap(), phi);
    }
}
