//! Reeb graph smoothing: `U_ε f` has, over each value `t`, one point per
//! connected component of the closed window `f^{-1}[t − ε, t + ε]`.
//!
//! The result is presented with critical values `{a ± ε}` exactly, so it
//! may carry vertices of degree one up and one down. Cells are named
//! `v{i}.{k}` and `e{i}.{k}` for level or slot `i`, with `k` ranking the
//! components by the smallest base cell they contain.

mod naive;
mod sweep;
mod window;

use std::sync::Arc;

use thiserror::Error;

use crate::graph::{Cell, RGraph, VertexId};
use crate::morphism::{compose, push_through, MorphismError, RGraphMorphism};
use crate::rational::{sorted_unique, Rational};

pub use naive::smooth_naive;
pub use sweep::{smooth_sweep, smooth_sweep_graph, smooth_sweep_with};
pub use window::WindowIndex;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SmoothingError {
    #[error("smoothing parameter must be non-negative, got {0}")]
    NegativeEpsilon(Rational),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error("composition check failed: {0}")]
    Composition(String),
    #[error("smoothed graph is malformed: {0}")]
    Malformed(String),
}

/// A smoothing together with the map `ζ: f → U_ε f` and the index
/// recording which cells of `f` each smoothed cell contains.
#[derive(Clone, Debug)]
pub struct SmoothingResult {
    pub smoothed: Arc<RGraph>,
    pub zeta: RGraphMorphism,
    pub index: WindowIndex,
    pub epsilon: Rational,
}

/// Event values `{a ± ε}` of a graph.
pub fn events(g: &RGraph, eps: Rational) -> Vec<Rational> {
    sorted_unique(g.criticals().iter().flat_map(|&a| [a - eps, a + eps]).collect())
}

/// Whether the cell meets the closed window `[lo, hi]`.
pub(crate) fn meets(g: &RGraph, c: Cell, lo: Rational, hi: Rational) -> bool {
    match c {
        Cell::Vertex(v) => lo <= g.value(v) && g.value(v) <= hi,
        Cell::Edge(e) => {
            let (a, b) = g.span(e);
            a < hi && b > lo
        }
    }
}

/// Components of every level and slot window before naming.
struct Layers {
    events: Vec<Rational>,
    levels: Vec<Vec<Vec<Cell>>>,
    /// `(contents, lower level component, upper level component)`.
    slots: Vec<Vec<(Vec<Cell>, usize, usize)>>,
}

fn assemble(base: Arc<RGraph>, eps: Rational, layers: Layers) -> Result<SmoothingResult, SmoothingError> {
    let Layers {
        events,
        mut levels,
        mut slots,
    } = layers;
    let mut vertices = Vec::new();
    let mut level_ids: Vec<Vec<VertexId>> = Vec::with_capacity(levels.len());
    let mut contents: Vec<Vec<Cell>> = Vec::new();
    for (i, comps) in levels.iter_mut().enumerate() {
        for c in comps.iter_mut() {
            c.sort_unstable();
        }
        let mut order: Vec<usize> = (0..comps.len()).collect();
        order.sort_by_key(|&k| comps[k][0]);
        let mut ids = vec![VertexId(0); comps.len()];
        for (rank, &k) in order.iter().enumerate() {
            ids[k] = VertexId(vertices.len() as u32);
            vertices.push((format!("v{i}.{rank}"), i));
            contents.push(std::mem::take(&mut comps[k]));
        }
        level_ids.push(ids);
    }
    let mut edges = Vec::new();
    for (i, comps) in slots.iter_mut().enumerate() {
        for c in comps.iter_mut() {
            c.0.sort_unstable();
        }
        comps.sort_by_key(|c| c.0[0]);
        for (rank, (cells, l, r)) in comps.iter_mut().enumerate() {
            edges.push((format!("e{i}.{rank}"), level_ids[i][*l], level_ids[i + 1][*r]));
            contents.push(std::mem::take(cells));
        }
    }
    let smoothed = Arc::new(
        RGraph::new(events, vertices, edges)
            .map_err(|r| SmoothingError::Malformed(r.to_string()))?,
    );
    let index = WindowIndex::new(base.clone(), smoothed.clone(), eps, contents);
    let zeta = zeta_from_index(&index)?;
    Ok(SmoothingResult {
        smoothed,
        zeta,
        index,
        epsilon: eps,
    })
}

/// `ζ` sends the point of `c` at `t` to the window component at `t`
/// containing `c`.
fn zeta_from_index(index: &WindowIndex) -> Result<RGraphMorphism, MorphismError> {
    let base = index.base().clone();
    RGraphMorphism::from_pointwise(base.clone(), index.graph().clone(), |c, t| {
        index
            .locate(t, c)
            .ok_or_else(|| format!("`{}` is missing from the window at {t}", base.name(c)))
    })
}

fn check_eps(eps: Rational) -> Result<(), SmoothingError> {
    if eps.is_negative() {
        Err(SmoothingError::NegativeEpsilon(eps))
    } else {
        Ok(())
    }
}

/// Smoothings `U_{ε2} U_{ε1} f` and `U_{ε1+ε2} f` with the isomorphism
/// between them.
#[derive(Clone, Debug)]
pub struct Composition {
    pub first: SmoothingResult,
    pub second: SmoothingResult,
    pub direct: SmoothingResult,
    /// `U_{ε2} U_{ε1} f → U_{ε1+ε2} f`.
    pub witness: RGraphMorphism,
}

/// Smooths twice and once, builds the comparison map through the combined
/// window index, and checks that it carries `ζ ∘ ζ` to `ζ^{ε1+ε2}`.
pub fn compose_smoothings(g: &RGraph, e1: Rational, e2: Rational) -> Result<Composition, SmoothingError> {
    let first = smooth_sweep(g, e1)?;
    let second = smooth_shared(&first.smoothed, e2)?;
    let direct = smooth_sweep(g, e1 + e2)?;
    let flat = first.index.flatten(&second.index);
    let witness = push_through(&flat, None, &direct.index)?;
    let twice = compose(&compose(&first.zeta, &second.zeta)?, &witness)?;
    let direct_zeta = direct.zeta.rebased(first.zeta.source().clone(), direct.smoothed.clone())?;
    if let Some(c) = twice.first_difference(&direct_zeta) {
        return Err(SmoothingError::Composition(format!(
            "maps differ on `{}`",
            g.name(c)
        )));
    }
    Ok(Composition {
        first,
        second,
        direct,
        witness,
    })
}

/// Sweep smoothing of a shared graph; the result refers to `g` itself
/// rather than to a copy.
pub fn smooth_shared(g: &Arc<RGraph>, eps: Rational) -> Result<SmoothingResult, SmoothingError> {
    let r = smooth_sweep(g, eps)?;
    let zeta = r.zeta.rebased(g.clone(), r.smoothed.clone())?;
    let index = WindowIndex::new(g.clone(), r.smoothed.clone(), eps, r.index.all_contents().to_vec());
    Ok(SmoothingResult { zeta, index, ..r })
}
