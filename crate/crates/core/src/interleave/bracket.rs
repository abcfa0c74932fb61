use std::sync::Arc;

use super::search::{search_certificate, Search};
use super::{finite_distance_check, Certificate, InterleaveError};
use crate::graph::RGraph;
use crate::rational::Rational;

/// One search made while bracketing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Probe {
    pub epsilon: Rational,
    pub outcome: ProbeOutcome,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ProbeOutcome {
    Found,
    Exhausted,
    Unknown,
}

/// Bounds on the interleaving distance.
#[derive(Clone, Debug)]
pub struct DistanceBracket {
    pub lower: Rational,
    pub upper: Rational,
    /// A verified interleaving at `upper`.
    pub witness: Certificate,
    /// The parameter of the exhausted search that set `lower`, if any.
    /// Without one the lower bound is the trivial 0.
    pub refutation: Option<Rational>,
    /// Set when a search ran out of budget; the bracket then stops wider
    /// than the tolerance.
    pub unknown_gaps: bool,
    pub probes: Vec<Probe>,
}

#[derive(Clone, Debug)]
pub enum Bracket {
    /// The graphs have different numbers of components.
    Infinite,
    Finite(Box<DistanceBracket>),
}

impl Bracket {
    pub fn finite(&self) -> Option<&DistanceBracket> {
        match self {
            Bracket::Infinite => None,
            Bracket::Finite(b) => Some(b),
        }
    }
}

fn value_range(g: &RGraph) -> Option<(Rational, Rational)> {
    Some((*g.criticals().first()?, *g.criticals().last()?))
}

/// The span of all values of both graphs; an interleaving exists at this
/// parameter whenever the component counts agree.
fn diameter(f: &RGraph, g: &RGraph) -> Rational {
    let ranges: Vec<_> = [value_range(f), value_range(g)].into_iter().flatten().collect();
    match (ranges.iter().map(|r| r.0).min(), ranges.iter().map(|r| r.1).max()) {
        (Some(lo), Some(hi)) => hi - lo,
        _ => Rational::ZERO,
    }
}

/// How often the initial upper bound is doubled before giving up.
const MAX_WIDENINGS: usize = 8;

/// Brackets the interleaving distance by bisection with exhaustive search
/// at every probe, starting from `[0, D]` where `D` spans all values of
/// both graphs. Stops when the bracket is at most `tol` wide or a probe
/// exhausts its budget; fails with [`InterleaveError::Budget`] if no
/// witness is found at the starting upper bound or a few doublings of it.
pub fn distance_bracket(
    f: &Arc<RGraph>,
    g: &Arc<RGraph>,
    tol: Rational,
    budget: u64,
) -> Result<Bracket, InterleaveError> {
    if tol <= Rational::ZERO {
        return Err(InterleaveError::Tolerance(tol));
    }
    if !finite_distance_check(f, g) {
        return Ok(Bracket::Infinite);
    }
    let mut probes = Vec::new();
    let probe = |eps: Rational, probes: &mut Vec<Probe>| -> Result<Search, InterleaveError> {
        let s = search_certificate(f, g, eps, budget)?;
        let outcome = match &s {
            Search::Found(_) => ProbeOutcome::Found,
            Search::Exhausted => ProbeOutcome::Exhausted,
            Search::Unknown => ProbeOutcome::Unknown,
        };
        probes.push(Probe { epsilon: eps, outcome });
        Ok(s)
    };

    let mut upper = diameter(f, g);
    let mut lower = Rational::ZERO;
    let mut refutation = None;
    let mut unknown_gaps = false;
    let mut witness = None;
    for _ in 0..MAX_WIDENINGS {
        match probe(upper, &mut probes)? {
            Search::Found(c) => {
                witness = Some(*c);
                break;
            }
            Search::Exhausted => {
                lower = upper;
                refutation = Some(upper);
            }
            Search::Unknown => unknown_gaps = true,
        }
        upper = if upper.is_zero() { tol } else { upper + upper };
    }
    let Some(mut witness) = witness else {
        return Err(InterleaveError::Budget(budget));
    };
    while !unknown_gaps && upper - lower > tol {
        let mid = Rational::midpoint(lower, upper);
        match probe(mid, &mut probes)? {
            Search::Found(c) => {
                upper = mid;
                witness = *c;
            }
            Search::Exhausted => {
                lower = mid;
                refutation = Some(mid);
            }
            Search::Unknown => unknown_gaps = true,
        }
    }
    Ok(Bracket::Finite(Box::new(DistanceBracket {
        lower,
        upper,
        witness,
        refutation,
        unknown_gaps,
        probes,
    })))
}
