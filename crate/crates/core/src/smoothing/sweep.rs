//! Smoothing by a single sweep over the event values with a dynamic
//! spanning forest.
//!
//! The forest lives on an incidence graph `H` with one node per vertex and
//! per edge of `f`. A vertex `v` is present on `[f(v) − ε, f(v) + ε]`; its
//! incidences with the edges around it are inserted when it enters and
//! weighted by the time it leaves, so all deletions happen in weight order.
//! An edge node is created when its lower vertex enters.
//!
//! At each event the lower components touching the event are queried, all
//! entering incidences are inserted, the touched cells are grouped by their
//! component in the level window, the leaving incidences are deleted and the
//! upper components are queried. Edges created at the event hang off their
//! entering vertex and edges losing their last incidence at the event hang
//! off the leaving vertex, so inserting before deleting never merges two
//! components that the level window keeps apart.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::{assemble, check_eps, events, meets, Layers, SmoothingError, SmoothingResult};
use crate::dynconn::{DynForest, ForestBackend, LinkCutForest, NodeId};
use crate::graph::{Cell, EdgeId, GraphBuilder, RGraph, VertexId};
use crate::rational::Rational;

/// Vertices entering and leaving at each event.
struct Schedule {
    events: Vec<Rational>,
    entering: Vec<Vec<VertexId>>,
    leaving: Vec<Vec<VertexId>>,
}

fn schedule(g: &RGraph, eps: Rational) -> Schedule {
    let events = events(g, eps);
    let mut entering = vec![Vec::new(); events.len()];
    let mut leaving = vec![Vec::new(); events.len()];
    let at = |t: Rational| events.binary_search(&t).expect("event value");
    for v in g.vertex_ids() {
        entering[at(g.value(v) - eps)].push(v);
        leaving[at(g.value(v) + eps)].push(v);
    }
    Schedule {
        events,
        entering,
        leaving,
    }
}

fn node(g: &RGraph, e: EdgeId) -> NodeId {
    g.num_vertices() + e.index()
}

fn insert_entering<B: ForestBackend>(g: &RGraph, eps: Rational, f: &mut DynForest<B>, entering: &[VertexId]) {
    for &v in entering {
        let w = g.value(v) + eps;
        for &e in g.edges_below(v).iter().chain(g.edges_above(v)) {
            f.insert(v.index(), node(g, e), w).expect("nodes exist");
        }
    }
}

fn delete_leaving<B: ForestBackend>(g: &RGraph, f: &mut DynForest<B>, leaving: &[VertexId]) {
    for &v in leaving {
        for &e in g.edges_below(v).iter().chain(g.edges_above(v)) {
            f.delete(v.index(), node(g, e)).expect("nodes exist");
        }
    }
}

/// Sweep smoothing with the link-cut backend.
pub fn smooth_sweep(g: &RGraph, eps: Rational) -> Result<SmoothingResult, SmoothingError> {
    smooth_sweep_with::<LinkCutForest>(g, eps)
}

/// Sweep smoothing with full bookkeeping: every window component and the
/// base cells it contains, named as in [`super::smooth_naive`].
pub fn smooth_sweep_with<B: ForestBackend>(g: &RGraph, eps: Rational) -> Result<SmoothingResult, SmoothingError> {
    check_eps(eps)?;
    let base = Arc::new(g.clone());
    let Schedule {
        events,
        entering,
        leaving,
    } = schedule(g, eps);
    let n = g.num_cells();
    let mut forest: DynForest<B> = DynForest::new(n);
    let mut levels = Vec::with_capacity(events.len());
    let mut slots: Vec<Vec<(Vec<Cell>, usize, usize)>> = Vec::new();
    // Slot components of the previous slot: contents, a member node, and
    // the lower level component.
    let mut open: Vec<(Vec<Cell>, NodeId, usize)> = Vec::new();
    for (i, &b) in events.iter().enumerate() {
        insert_entering(g, eps, &mut forest, &entering[i]);
        let roots: Vec<NodeId> = (0..n).map(|x| forest.find(x).expect("node")).collect();
        let mut comps: Vec<Vec<Cell>> = Vec::new();
        let mut by_root: HashMap<NodeId, usize> = HashMap::new();
        for (x, &root) in roots.iter().enumerate() {
            let c = g.cell_at_index(x);
            if meets(g, c, b - eps, b + eps) {
                let k = *by_root.entry(root).or_insert_with(|| {
                    comps.push(Vec::new());
                    comps.len() - 1
                });
                comps[k].push(c);
            }
        }
        if i > 0 {
            slots.push(
                std::mem::take(&mut open)
                    .into_iter()
                    .map(|(cells, rep, l)| (cells, l, by_root[&roots[rep]]))
                    .collect(),
            );
        }
        levels.push(comps);
        delete_leaving(g, &mut forest, &leaving[i]);
        if let Some(&next) = events.get(i + 1) {
            let m = Rational::midpoint(b, next);
            let mut slot_root: HashMap<NodeId, usize> = HashMap::new();
            for x in 0..n {
                let c = g.cell_at_index(x);
                if meets(g, c, m - eps, m + eps) {
                    let r = forest.find(x).expect("node");
                    let k = *slot_root.entry(r).or_insert_with(|| {
                        open.push((Vec::new(), x, by_root[&roots[x]]));
                        open.len() - 1
                    });
                    open[k].0.push(c);
                }
            }
        }
    }
    assemble(base, eps, Layers { events, levels, slots })
}

/// An edge of the smoothed graph still being swept.
struct OpenEdge {
    down: usize,
}

/// Sweep smoothing that only builds the graph. Only the cells around each
/// event are touched, so the cost is near-linear in the size of `f` and of
/// the result. Cells are named by creation order.
pub fn smooth_sweep_graph<B: ForestBackend>(g: &RGraph, eps: Rational) -> Result<RGraph, SmoothingError> {
    check_eps(eps)?;
    let Schedule {
        events,
        entering,
        leaving,
    } = schedule(g, eps);
    let mut forest: DynForest<B> = DynForest::new(g.num_cells());
    let mut vertex_values: Vec<Rational> = Vec::new();
    let mut reeb_edges: Vec<(usize, usize)> = Vec::new();
    let mut open: HashMap<NodeId, OpenEdge> = HashMap::new();
    for (i, &b) in events.iter().enumerate() {
        let ent = &entering[i];
        let lv = &leaving[i];
        // Edges below an entering vertex and vertices present before `b`.
        let mut lower: Vec<NodeId> = Vec::new();
        for &v in ent {
            lower.extend(g.edges_below(v).iter().map(|&e| node(g, e)));
        }
        lower.extend(lv.iter().filter(|&&v| g.value(v) - eps < b).map(|v| v.index()));
        let lower_roots: Vec<NodeId> = lower.iter().map(|&x| forest.find(x).expect("node")).collect();

        insert_entering(g, eps, &mut forest, ent);

        // Cells present after `b`: edges above a leaving vertex and the
        // entering vertices that stay.
        let mut upper: Vec<NodeId> = Vec::new();
        for &v in lv {
            upper.extend(g.edges_above(v).iter().map(|&e| node(g, e)));
        }
        upper.extend(ent.iter().filter(|&&v| g.value(v) + eps > b).map(|v| v.index()));

        let touched = lower
            .iter()
            .chain(&upper)
            .copied()
            .chain(ent.iter().chain(lv).map(|v| v.index()));
        let mut group_of: BTreeMap<NodeId, usize> = BTreeMap::new();
        let mut groups: Vec<(Vec<NodeId>, Vec<NodeId>)> = Vec::new();
        let mut level_root: HashMap<NodeId, usize> = HashMap::new();
        for x in touched {
            let r = forest.find(x).expect("node");
            let k = *group_of.entry(r).or_insert_with(|| {
                groups.push((Vec::new(), Vec::new()));
                groups.len() - 1
            });
            level_root.insert(x, k);
        }
        for (x, r) in lower.iter().zip(&lower_roots) {
            let k = level_root[x];
            if !groups[k].0.contains(r) {
                groups[k].0.push(*r);
            }
        }

        delete_leaving(g, &mut forest, lv);

        for &x in &upper {
            let r = forest.find(x).expect("node");
            let k = level_root[&x];
            if !groups[k].1.contains(&r) {
                groups[k].1.push(r);
            }
        }

        let mut opened: Vec<(NodeId, OpenEdge)> = Vec::new();
        for (low, up) in groups {
            if low.len() == 1 && up.len() == 1 {
                let edge = open.remove(&low[0]).expect("lower component has an open edge");
                opened.push((up[0], edge));
                continue;
            }
            let nu = vertex_values.len();
            vertex_values.push(b);
            for r in low {
                let edge = open.remove(&r).expect("lower component has an open edge");
                reeb_edges.push((edge.down, nu));
            }
            opened.extend(up.into_iter().map(|r| (r, OpenEdge { down: nu })));
        }
        open.extend(opened);
    }
    debug_assert!(open.is_empty());
    let mut builder = GraphBuilder::new();
    for (k, &t) in vertex_values.iter().enumerate() {
        builder.vertex(format!("n{k}"), t);
    }
    for (k, &(a, c)) in reeb_edges.iter().enumerate() {
        builder.edge(format!("a{k}"), format!("n{a}"), format!("n{c}"));
    }
    builder.extra_criticals(events);
    let built = builder
        .build()
        .map_err(|e| SmoothingError::Malformed(e.to_string()))?;
    Ok(built.graph)
}
