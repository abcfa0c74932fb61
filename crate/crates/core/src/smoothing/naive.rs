use std::collections::HashMap;
use std::sync::Arc;

use petgraph::unionfind::UnionFind;

use super::{assemble, check_eps, events, meets, Layers, SmoothingError, SmoothingResult};
use crate::graph::{Cell, RGraph};
use crate::rational::Rational;

/// Window components of the cells meeting `[lo, hi]`, plus the component of
/// every such cell.
fn components(g: &RGraph, lo: Rational, hi: Rational) -> (Vec<Vec<Cell>>, HashMap<Cell, usize>) {
    let active: Vec<Cell> = g.cells().filter(|&c| meets(g, c, lo, hi)).collect();
    let pos: HashMap<Cell, usize> = active.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut uf = UnionFind::<usize>::new(active.len());
    for (i, &c) in active.iter().enumerate() {
        if let Cell::Edge(e) = c {
            for v in [g.down(e), g.up(e)] {
                if let Some(&j) = pos.get(&Cell::Vertex(v)) {
                    uf.union(i, j);
                }
            }
        }
    }
    let mut comps: Vec<Vec<Cell>> = Vec::new();
    let mut by_root = HashMap::new();
    let mut of = HashMap::new();
    for (i, &c) in active.iter().enumerate() {
        let k = *by_root.entry(uf.find(i)).or_insert_with(|| {
            comps.push(Vec::new());
            comps.len() - 1
        });
        comps[k].push(c);
        of.insert(c, k);
    }
    (comps, of)
}

/// The level component a slot component limits to at the level's value.
fn attach(g: &RGraph, comp: &[Cell], level: &HashMap<Cell, usize>) -> usize {
    comp.iter()
        .flat_map(|&c| match c {
            Cell::Vertex(_) => vec![c],
            Cell::Edge(e) => vec![c, Cell::Vertex(g.down(e)), Cell::Vertex(g.up(e))],
        })
        .find_map(|c| level.get(&c).copied())
        .expect("a slot window limits into the neighbouring level window")
}

/// Smoothing by recomputing the components of every window from scratch.
/// Quadratic, and used as the reference for the sweep.
pub fn smooth_naive(g: &RGraph, eps: Rational) -> Result<SmoothingResult, SmoothingError> {
    check_eps(eps)?;
    let base = Arc::new(g.clone());
    let events = events(g, eps);
    let mut levels = Vec::with_capacity(events.len());
    let mut lookups = Vec::with_capacity(events.len());
    for &b in &events {
        let (comps, of) = components(g, b - eps, b + eps);
        levels.push(comps);
        lookups.push(of);
    }
    let mut slots = Vec::with_capacity(events.len().saturating_sub(1));
    for (i, w) in events.windows(2).enumerate() {
        let m = Rational::midpoint(w[0], w[1]);
        let (comps, _) = components(g, m - eps, m + eps);
        slots.push(
            comps
                .into_iter()
                .map(|c| {
                    let l = attach(g, &c, &lookups[i]);
                    let r = attach(g, &c, &lookups[i + 1]);
                    (c, l, r)
                })
                .collect(),
        );
    }
    assemble(base, eps, Layers { events, levels, slots })
}
