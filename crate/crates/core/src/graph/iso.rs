use std::ops::ControlFlow;
use std::sync::Arc;

use thiserror::Error;

use super::{reduce, Cell, EdgeId, RGraph, Reduction, VertexId};
use crate::csp::{Outcome, Problem};
use crate::morphism::RGraphMorphism;

pub const DEFAULT_ISO_BUDGET: u64 = 2_000_000;

/// An isomorphism and its inverse.
#[derive(Clone, Debug)]
pub struct IsoWitness {
    pub forward: RGraphMorphism,
    pub backward: RGraphMorphism,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum IsoError {
    #[error("isomorphism search exceeded its budget of {0} nodes")]
    Budget(u64),
}

/// Searches for an isomorphism of ℝ-graphs, ignoring presentation: both
/// graphs are reduced first and the witness maps the original graphs.
pub fn is_isomorphic(g: &RGraph, h: &RGraph) -> Result<Option<IsoWitness>, IsoError> {
    is_isomorphic_with_budget(g, h, DEFAULT_ISO_BUDGET)
}

pub fn is_isomorphic_with_budget(
    g: &RGraph,
    h: &RGraph,
    budget: u64,
) -> Result<Option<IsoWitness>, IsoError> {
    let (rg, rh) = (reduce(g), reduce(h));
    let Some((sigma, tau)) = match_reduced(&rg.graph, &rh.graph, budget)? else {
        return Ok(None);
    };
    let mut sigma_inv = vec![VertexId(0); sigma.len()];
    for (i, w) in sigma.iter().enumerate() {
        sigma_inv[w.index()] = VertexId(i as u32);
    }
    let mut tau_inv = vec![EdgeId(0); tau.len()];
    for (i, y) in tau.iter().enumerate() {
        tau_inv[y.index()] = EdgeId(i as u32);
    }
    let (ga, ha) = (Arc::new(g.clone()), Arc::new(h.clone()));
    let forward = transport(&ga, &rg, &ha, &rh, &sigma, &tau);
    let backward = transport(&ha, &rh, &ga, &rg, &sigma_inv, &tau_inv);
    Ok(Some(IsoWitness { forward, backward }))
}

fn transport(
    from: &Arc<RGraph>,
    from_red: &Reduction,
    to: &Arc<RGraph>,
    to_red: &Reduction,
    sigma: &[VertexId],
    tau: &[EdgeId],
) -> RGraphMorphism {
    RGraphMorphism::from_pointwise(from.clone(), to.clone(), |c, t| {
        let mid = match from_red.image(c) {
            Cell::Vertex(v) => Cell::Vertex(sigma[v.index()]),
            Cell::Edge(e) => Cell::Edge(tau[e.index()]),
        };
        Ok(to_red.preimage_at(to, mid, t))
    })
    .expect("a bijection of reduced graphs transports to the originals")
}

/// Images of the vertices and of the edges under a matching.
pub(crate) type Matching = (Vec<VertexId>, Vec<EdgeId>);

/// Bijections of vertices and edges of two reduced graphs preserving
/// levels, slots and attaching maps.
pub(crate) fn match_reduced(g: &RGraph, h: &RGraph, budget: u64) -> Result<Option<Matching>, IsoError> {
    if g.criticals() != h.criticals() || g.num_vertices() != h.num_vertices() || g.num_edges() != h.num_edges() {
        return Ok(None);
    }
    for i in 0..g.num_levels() {
        if g.level(i).len() != h.level(i).len() {
            return Ok(None);
        }
    }
    for i in 0..g.num_slots() {
        if g.slot(i).len() != h.slot(i).len() {
            return Ok(None);
        }
    }
    let degree = |x: &RGraph, v: VertexId| (x.edges_below(v).len(), x.edges_above(v).len());
    let mut p = Problem::new();
    let mut vvar = Vec::with_capacity(g.num_vertices());
    for v in g.vertex_ids() {
        let lvl = g.vertex(v).level;
        let dom = h
            .level(lvl)
            .iter()
            .filter(|&&w| degree(h, w) == degree(g, v))
            .map(|w| w.0)
            .collect();
        vvar.push(p.add_variable(dom));
    }
    let mut evar = Vec::with_capacity(g.num_edges());
    for e in g.edge_ids() {
        let dom = h.slot(g.edge(e).slot).iter().map(|y| y.0).collect();
        evar.push(p.add_variable(dom));
    }
    for e in g.edge_ids() {
        p.constrain(evar[e.index()], vvar[g.down(e).index()], |y, w| {
            h.down(EdgeId(y)) == VertexId(w)
        });
        p.constrain(evar[e.index()], vvar[g.up(e).index()], |y, w| {
            h.up(EdgeId(y)) == VertexId(w)
        });
    }
    for i in 0..g.num_levels() {
        p.all_different(g.level(i).iter().map(|v| vvar[v.index()]).collect());
    }
    for i in 0..g.num_slots() {
        p.all_different(g.slot(i).iter().map(|e| evar[e.index()]).collect());
    }
    let nv = g.num_vertices();
    match p.solve(budget, |labels| ControlFlow::Break(labels.to_vec())) {
        Outcome::Found(labels) => Ok(Some((
            labels[..nv].iter().map(|&x| VertexId(x)).collect(),
            labels[nv..].iter().map(|&x| EdgeId(x)).collect(),
        ))),
        Outcome::Exhausted => Ok(None),
        Outcome::Budget => Err(IsoError::Budget(budget)),
    }
}
