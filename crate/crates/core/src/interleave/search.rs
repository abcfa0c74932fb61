//! Exhaustive search for interleavings.
//!
//! Both maps are searched in level-wise form: the source is refined at
//! every critical value of the target and of its own `2ε` smoothing, so
//! each source cell maps to one target cell at the same position and each
//! interleaving equation can be tested cell by cell. A variable per
//! refined cell ranges over the target cells at its position; attaching
//! maps give binary constraints, and each equation gives binary constraints
//! between a cell's `α` value and the `β` values of the cells that value
//! contains.

use std::collections::HashMap;
use std::ops::ControlFlow;
use std::sync::Arc;

use super::{finite_distance_check, verify_certificate, Certificate, InterleaveError, Smoothings, Verdict};
use crate::csp::{Outcome, Problem};
use crate::graph::{refine, Cell, EdgeId, IsoWitness, RGraph, Refinement, VertexId};
use crate::morphism::RGraphMorphism;
use crate::rational::{sorted_unique, Rational};
use crate::smoothing::SmoothingResult;

pub const DEFAULT_SEARCH_BUDGET: u64 = 1_000_000;

/// Result of [`search_certificate`].
#[derive(Clone, Debug)]
pub enum Search {
    Found(Box<Certificate>),
    /// No ε-interleaving exists.
    Exhausted,
    /// The budget ran out before the search finished.
    Unknown,
}

impl Search {
    pub fn certificate(self) -> Option<Certificate> {
        match self {
            Search::Found(c) => Some(*c),
            _ => None,
        }
    }
}

/// One of the two maps: `source → U_ε other`, both refined.
struct Side {
    source: Arc<RGraph>,
    /// The refined source and its origins.
    src: Refinement,
    src_origin: Vec<Cell>,
    /// The refined `U_ε` of the other graph and its origins.
    tgt: Refinement,
    tgt_origin: Vec<Cell>,
    offset: usize,
}

fn origins(r: &Refinement) -> Vec<Cell> {
    let (mut v, e) = r.origins();
    v.extend(e);
    v
}

impl Side {
    fn new(source: &Arc<RGraph>, own: &Smoothings, target: &SmoothingResult, offset: usize) -> Side {
        let mut values: Vec<Rational> = source.criticals().to_vec();
        values.extend_from_slice(target.smoothed.criticals());
        values.extend_from_slice(own.twice.smoothed.criticals());
        let values = sorted_unique(values);
        let src = refine(source, &values);
        let tgt = refine(&target.smoothed, &values);
        Side {
            source: source.clone(),
            src_origin: origins(&src),
            tgt_origin: origins(&tgt),
            src,
            tgt,
            offset,
        }
    }

    fn var(&self, c: Cell) -> usize {
        self.offset + self.src.graph.cell_index(c)
    }

    fn domain(&self, c: Cell) -> Vec<u32> {
        let (s, t) = (&self.src.graph, &self.tgt.graph);
        match c {
            Cell::Vertex(v) => t.level(s.vertex(v).level).iter().map(|w| w.0).collect(),
            Cell::Edge(e) => t.slot(s.edge(e).slot).iter().map(|y| y.0).collect(),
        }
    }

    fn label_cell(c: Cell, label: u32) -> Cell {
        match c {
            Cell::Vertex(_) => Cell::Vertex(VertexId(label)),
            Cell::Edge(_) => Cell::Edge(EdgeId(label)),
        }
    }

    /// Original target cell for the value `label` of refined cell `c`.
    fn image(&self, c: Cell, label: u32) -> Cell {
        self.tgt_origin[self.tgt.graph.cell_index(Side::label_cell(c, label))]
    }

    /// Representative value of a refined source cell.
    fn value(&self, c: Cell) -> Rational {
        let (lo, hi) = self.src.graph.cell_range(c);
        Rational::midpoint(lo, hi)
    }

    fn decode(&self, labels: &[u32], target: &Arc<RGraph>) -> Result<RGraphMorphism, InterleaveError> {
        Ok(RGraphMorphism::from_pointwise(self.source.clone(), target.clone(), |c, t| {
            let r = self.src.locate(c, t);
            Ok(self.image(r, labels[self.var(r)]))
        })?)
    }
}

/// Where push-through samples a base cell whose window is centred at `t`.
fn sample(g: &RGraph, x: Cell, t: Rational, radius: Rational) -> Rational {
    match x {
        Cell::Vertex(v) => g.value(v),
        Cell::Edge(e) => {
            if radius.is_zero() {
                t
            } else {
                let (lo, hi) = g.span(e);
                Rational::midpoint(lo.max(t - radius), hi.min(t + radius))
            }
        }
    }
}

/// Constraints for `map^ε_{2ε} ∘ first = ζ^{2ε}` where `first` is `a` and
/// the shifted map is `b`. Returns the pruned domains of `a` and the
/// pairwise tables between `a` and `b` variables.
#[allow(clippy::type_complexity)]
fn equation(
    a: &Side,
    b: &Side,
    eps: Rational,
    a_twice: &SmoothingResult,
    middle: &SmoothingResult,
    back: &SmoothingResult,
) -> (Vec<Vec<u32>>, HashMap<(usize, usize), HashMap<u32, Vec<u32>>>) {
    let sg = &a.src.graph;
    let middle_base = middle.index.base().clone();
    let mut domains = Vec::with_capacity(sg.num_cells());
    let mut tables: HashMap<(usize, usize), HashMap<u32, Vec<u32>>> = HashMap::new();
    for c in sg.cells() {
        let t = a.value(c);
        let want = a_twice.index.locate(t, a.src_origin[sg.cell_index(c)]);
        let mut keep = Vec::new();
        'values: for y in a.domain(c) {
            let contents = middle.index.contents(a.image(c, y));
            let mut needs = Vec::with_capacity(contents.len());
            for &x in contents {
                let s = sample(&middle_base, x, t, eps);
                let xr = b.src.locate(x, s);
                let allowed: Vec<u32> = b
                    .domain(xr)
                    .into_iter()
                    .filter(|&z| {
                        let z_cell = b.image(xr, z);
                        let rep = back.index.contents(z_cell)[0];
                        want.is_some() && a_twice.index.locate(t, rep) == want
                    })
                    .collect();
                if allowed.is_empty() {
                    continue 'values;
                }
                needs.push((b.var(xr), allowed));
            }
            for (bv, allowed) in needs {
                let table = tables.entry((a.var(c), bv)).or_default();
                match table.get_mut(&y) {
                    Some(old) => old.retain(|z| allowed.contains(z)),
                    None => {
                        table.insert(y, allowed);
                    }
                }
            }
            keep.push(y);
        }
        domains.push(keep);
    }
    (domains, tables)
}

fn attaching_constraints(p: &mut Problem, side: &Side) {
    let (s, t) = (&side.src.graph, &side.tgt.graph);
    for e in s.edge_ids() {
        let ev = side.var(Cell::Edge(e));
        p.constrain(ev, side.var(Cell::Vertex(s.down(e))), |y, w| t.down(EdgeId(y)) == VertexId(w));
        p.constrain(ev, side.var(Cell::Vertex(s.up(e))), |y, w| t.up(EdgeId(y)) == VertexId(w));
    }
}

/// Searches for an ε-interleaving of `f` and `g`.
pub fn search_certificate(
    f: &Arc<RGraph>,
    g: &Arc<RGraph>,
    eps: Rational,
    budget: u64,
) -> Result<Search, InterleaveError> {
    if !finite_distance_check(f, g) {
        return Ok(Search::Exhausted);
    }
    let sf = Smoothings::compute(f, eps)?;
    let sg = Smoothings::compute(g, eps)?;
    search_certificate_with(f, g, eps, sf, sg, budget)
}

/// [`search_certificate`] with the smoothings already computed.
pub fn search_certificate_with(
    f: &Arc<RGraph>,
    g: &Arc<RGraph>,
    eps: Rational,
    sf: Smoothings,
    sg: Smoothings,
    budget: u64,
) -> Result<Search, InterleaveError> {
    let a = Side::new(f, &sf, &sg.once, 0);
    let b = Side::new(g, &sg, &sf.once, a.src.graph.num_cells());
    let (a_dom, a_tab) = equation(&a, &b, eps, &sf.twice, &sg.once, &sf.once);
    let (b_dom, b_tab) = equation(&b, &a, eps, &sg.twice, &sf.once, &sg.once);
    let mut p = Problem::new();
    for d in a_dom.into_iter().chain(b_dom) {
        p.add_variable(d);
    }
    attaching_constraints(&mut p, &a);
    attaching_constraints(&mut p, &b);
    for ((x, y), table) in a_tab.into_iter().chain(b_tab) {
        p.constrain(x, y, |u, v| table.get(&u).is_none_or(|ok| ok.contains(&v)));
    }
    let labels = match p.solve(budget, |labels| ControlFlow::Break(labels.to_vec())) {
        Outcome::Found(l) => l,
        Outcome::Exhausted => return Ok(Search::Exhausted),
        Outcome::Budget => return Ok(Search::Unknown),
    };
    let alpha = a.decode(&labels, &sg.once.smoothed)?;
    let beta = b.decode(&labels, &sf.once.smoothed)?;
    let c = Certificate::new(eps, f.clone(), g.clone(), alpha, beta, sf, sg)?;
    match verify_certificate(&c)? {
        Verdict::Valid => Ok(Search::Found(Box::new(c))),
        v => Err(InterleaveError::Internal(format!("search produced an invalid certificate: {v}"))),
    }
}

/// The parameter used by [`quantified_iso_check`]: an eighth of the
/// smallest gap between the combined critical values, or 1 when there is
/// only one value.
pub fn quantified_epsilon(f: &RGraph, g: &RGraph) -> Rational {
    let all = sorted_unique(f.criticals().iter().chain(g.criticals()).copied().collect());
    all.windows(2)
        .map(|w| w[1] - w[0])
        .min()
        .map_or(Rational::ONE, |gap| gap / Rational::integer(8))
}

/// Decides isomorphism by searching for an interleaving below a quarter of
/// the smallest critical gap. On success the level-wise bijections are read
/// off the interleaving: over a critical value `a`, the window of radius
/// `ε` around `a` is a disjoint union of stars of the vertices at `a`, and
/// over a slot midpoint it is a disjoint union of edge pieces.
pub fn quantified_iso_check(
    f: &Arc<RGraph>,
    g: &Arc<RGraph>,
    budget: u64,
) -> Result<Option<IsoWitness>, InterleaveError> {
    let eps = quantified_epsilon(f, g);
    let c = match search_certificate(f, g, eps, budget)? {
        Search::Found(c) => c,
        Search::Exhausted => return Ok(None),
        Search::Unknown => return Err(InterleaveError::Budget(budget)),
    };
    let common = sorted_unique(f.criticals().iter().chain(g.criticals()).copied().collect());
    let forward = read_iso(&c.alpha, &c.smooth_g.once, f, g, &common)?;
    let backward = read_iso(&c.beta, &c.smooth_f.once, g, f, &common)?;
    Ok(Some(IsoWitness { forward, backward }))
}

/// Turns `map: f → U_ε g` into `f → g` through the refinements of both at
/// the common critical values.
fn read_iso(
    map: &RGraphMorphism,
    smooth: &SmoothingResult,
    f: &Arc<RGraph>,
    g: &Arc<RGraph>,
    common: &[Rational],
) -> Result<RGraphMorphism, InterleaveError> {
    let fr = refine(f, common);
    let gr = refine(g, common);
    let f_origin = origins(&fr);
    let g_origin = origins(&gr);
    let (fg, gg) = (&fr.graph, &gr.graph);
    let mut cell_map = vec![None; fg.num_cells()];
    let mut hit = vec![false; gg.num_cells()];
    for c in fg.cells() {
        let (lo, hi) = fg.cell_range(c);
        let t = Rational::midpoint(lo, hi);
        let y = map
            .image_at(f_origin[fg.cell_index(c)], t)
            .ok_or_else(|| InterleaveError::Internal("interleaving map undefined".into()))?;
        // The unique cell of g through `t` inside the window component.
        let mut found = None;
        for &x in smooth.index.contents(y) {
            if g.cell_contains(x, t) {
                let xr = gr.locate(x, t);
                if found.is_some_and(|f| f != xr) {
                    return Err(InterleaveError::Internal("window component holds two cells".into()));
                }
                found = Some(xr);
            }
        }
        let xr = found.ok_or_else(|| InterleaveError::Internal("window component misses its value".into()))?;
        if std::mem::replace(&mut hit[gg.cell_index(xr)], true) {
            return Err(InterleaveError::Internal("interleaving is not injective on cells".into()));
        }
        cell_map[fg.cell_index(c)] = Some(xr);
    }
    if hit.iter().any(|h| !h) {
        return Err(InterleaveError::Internal("interleaving is not surjective on cells".into()));
    }
    Ok(RGraphMorphism::from_pointwise(f.clone(), g.clone(), |c, t| {
        let r = fr.locate(c, t);
        let img = cell_map[fg.cell_index(r)].expect("every refined cell is mapped");
        Ok(g_origin[gg.cell_index(img)])
    })?)
}
