//! Interleavings of ℝ-graphs: certificates, their verification, search,
//! distance brackets and the constructions that build new certificates from
//! old ones.
//!
//! An ε-interleaving of `f` and `g` is a pair `α: f → U_ε g`,
//! `β: g → U_ε f` whose shifted composites `f → U_ε g → U_{2ε} f` and
//! `g → U_ε f → U_{2ε} g` equal the canonical maps `ζ^{2ε}`.

mod bracket;
mod search;
mod stability;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::graph::{Cell, RGraph};
use crate::morphism::{compose, push_through, same_graph, shift_compose, MorphismError, RGraphMorphism};
use crate::rational::Rational;
use crate::smoothing::{smooth_shared, SmoothingError, SmoothingResult, WindowIndex};

pub use bracket::{distance_bracket, Bracket, DistanceBracket, Probe, ProbeOutcome};
pub use search::{
    quantified_epsilon, quantified_iso_check, search_certificate, search_certificate_with, Search,
    DEFAULT_SEARCH_BUDGET,
};
pub use stability::{stability_certificate, Domain, StabilityError};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum InterleaveError {
    #[error("certificate has the wrong shape: {0}")]
    Shape(String),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error(transparent)]
    Smoothing(#[from] SmoothingError),
    #[error("search budget of {0} nodes exhausted")]
    Budget(u64),
    #[error("tolerance must be positive, got {0}")]
    Tolerance(Rational),
    #[error("lifting needs a larger parameter: {from} to {to}")]
    Lift { from: Rational, to: Rational },
    #[error("internal error: {0}")]
    Internal(String),
}

/// The `ε` and `2ε` smoothings of one graph.
#[derive(Clone, Debug)]
pub struct Smoothings {
    pub once: SmoothingResult,
    pub twice: SmoothingResult,
}

impl Smoothings {
    pub fn compute(g: &Arc<RGraph>, eps: Rational) -> Result<Smoothings, SmoothingError> {
        Ok(Smoothings {
            once: smooth_shared(g, eps)?,
            twice: smooth_shared(g, eps + eps)?,
        })
    }
}

/// A candidate ε-interleaving together with the smoothings it refers to.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub epsilon: Rational,
    pub f: Arc<RGraph>,
    pub g: Arc<RGraph>,
    /// `f → U_ε g`.
    pub alpha: RGraphMorphism,
    /// `g → U_ε f`.
    pub beta: RGraphMorphism,
    pub smooth_f: Smoothings,
    pub smooth_g: Smoothings,
}

/// Which of the two interleaving equations failed.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Diagram {
    /// `β^ε_{2ε} ∘ α = ζ^{2ε}_f`.
    First,
    /// `α^ε_{2ε} ∘ β = ζ^{2ε}_g`.
    Second,
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Diagram::First => "shifted β after α differs from ζ on f",
            Diagram::Second => "shifted α after β differs from ζ on g",
        })
    }
}

/// Result of [`verify_certificate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid {
        diagram: Diagram,
        /// Name of the first source cell where the equation fails.
        cell: String,
        reason: String,
    },
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Valid => f.write_str("valid"),
            Verdict::Invalid { diagram, cell, reason } => write!(f, "{diagram} at `{cell}`: {reason}"),
        }
    }
}

fn expect_same(a: &Arc<RGraph>, b: &Arc<RGraph>, what: &str) -> Result<(), InterleaveError> {
    if same_graph(a, b) {
        Ok(())
    } else {
        Err(InterleaveError::Shape(what.to_string()))
    }
}

fn check_smoothings(g: &Arc<RGraph>, s: &Smoothings, eps: Rational, name: &str) -> Result<(), InterleaveError> {
    for (r, radius) in [(&s.once, eps), (&s.twice, eps + eps)] {
        expect_same(r.index.base(), g, &format!("smoothing of {name} has another base"))?;
        if r.epsilon != radius || r.index.radius() != radius {
            return Err(InterleaveError::Shape(format!(
                "smoothing of {name} has radius {} instead of {radius}",
                r.epsilon
            )));
        }
    }
    Ok(())
}

impl Certificate {
    /// Assembles a certificate after checking that every piece has the
    /// stated source and target. Validity is checked separately.
    pub fn new(
        epsilon: Rational,
        f: Arc<RGraph>,
        g: Arc<RGraph>,
        alpha: RGraphMorphism,
        beta: RGraphMorphism,
        smooth_f: Smoothings,
        smooth_g: Smoothings,
    ) -> Result<Certificate, InterleaveError> {
        let c = Certificate {
            epsilon,
            f,
            g,
            alpha,
            beta,
            smooth_f,
            smooth_g,
        };
        c.check_shape()?;
        Ok(c)
    }

    fn check_shape(&self) -> Result<(), InterleaveError> {
        if self.epsilon.is_negative() {
            return Err(InterleaveError::Shape(format!("negative parameter {}", self.epsilon)));
        }
        check_smoothings(&self.f, &self.smooth_f, self.epsilon, "f")?;
        check_smoothings(&self.g, &self.smooth_g, self.epsilon, "g")?;
        expect_same(self.alpha.source(), &self.f, "α does not start at f")?;
        expect_same(self.alpha.target(), &self.smooth_g.once.smoothed, "α does not land in U_ε g")?;
        expect_same(self.beta.source(), &self.g, "β does not start at g")?;
        expect_same(self.beta.target(), &self.smooth_f.once.smoothed, "β does not land in U_ε f")?;
        Ok(())
    }

    /// The ζ pair: `f = g` interleaved with itself by the canonical maps.
    pub fn identity(f: &Arc<RGraph>, eps: Rational) -> Result<Certificate, InterleaveError> {
        let s = Smoothings::compute(f, eps)?;
        let zeta = s.once.zeta.clone();
        Certificate::new(eps, f.clone(), f.clone(), zeta.clone(), zeta, s.clone(), s)
    }

    /// The same interleaving read from `g` to `f`.
    pub fn swapped(&self) -> Certificate {
        Certificate {
            epsilon: self.epsilon,
            f: self.g.clone(),
            g: self.f.clone(),
            alpha: self.beta.clone(),
            beta: self.alpha.clone(),
            smooth_f: self.smooth_g.clone(),
            smooth_g: self.smooth_f.clone(),
        }
    }
}

fn check_equation(
    map: &RGraphMorphism,
    shift: Result<RGraphMorphism, MorphismError>,
    zeta: &RGraphMorphism,
    diagram: Diagram,
) -> Result<Verdict, InterleaveError> {
    let shift = match shift {
        Ok(s) => s,
        Err(MorphismError::Image { cell, t, reason }) => {
            return Ok(Verdict::Invalid {
                diagram,
                cell,
                reason: format!("shifted map is not defined at {t}: {reason}"),
            })
        }
        Err(e) => return Err(e.into()),
    };
    let composite = compose(map, &shift)?;
    Ok(match composite.first_difference(zeta) {
        None => Verdict::Valid,
        Some(c) => Verdict::Invalid {
            diagram,
            cell: map.source().name(c).to_string(),
            reason: format!(
                "composite sends it {} but ζ sends it {}",
                describe_image(&composite, c),
                describe_image(zeta, c)
            ),
        },
    })
}

fn describe_image(m: &RGraphMorphism, c: Cell) -> String {
    let t = m.target();
    match c {
        Cell::Vertex(v) => format!("to `{}`", t.name(m.vertex_image(v))),
        Cell::Edge(e) => {
            let names: Vec<&str> = m.edge_path(e).iter().map(|&p| t.edge(p).name.as_str()).collect();
            format!("along [{}]", names.join(", "))
        }
    }
}

/// Checks both interleaving equations. A malformed certificate is an error;
/// a well-formed one that fails an equation yields [`Verdict::Invalid`]
/// naming the first failing cell.
pub fn verify_certificate(c: &Certificate) -> Result<Verdict, InterleaveError> {
    c.check_shape()?;
    let (sf, sg) = (&c.smooth_f, &c.smooth_g);
    let beta_shift = shift_compose(&c.beta, &sg.once.index, &sf.once.index, &sf.twice.index);
    let first = check_equation(&c.alpha, beta_shift, &sf.twice.zeta, Diagram::First)?;
    if !first.is_valid() {
        return Ok(first);
    }
    let alpha_shift = shift_compose(&c.alpha, &sf.once.index, &sg.once.index, &sg.twice.index);
    check_equation(&c.beta, alpha_shift, &sg.twice.zeta, Diagram::Second)
}

/// Whether the two graphs have the same number of components; otherwise no
/// interleaving exists at any parameter.
pub fn finite_distance_check(f: &RGraph, g: &RGraph) -> bool {
    f.num_components() == g.num_components()
}

fn verified(c: Certificate, what: &str) -> Result<Certificate, InterleaveError> {
    match verify_certificate(&c)? {
        Verdict::Valid => Ok(c),
        v => Err(InterleaveError::Internal(format!("{what} does not verify: {v}"))),
    }
}

/// `f → U_a Y → U_b Z` pushed forward to `U_{a+b} Z`, where `map` goes from
/// the base of `view` into the graph of `next_view`.
fn extend(
    first: &RGraphMorphism,
    view: &WindowIndex,
    next: &RGraphMorphism,
    next_view: &WindowIndex,
    target: &WindowIndex,
) -> Result<RGraphMorphism, InterleaveError> {
    let push = push_through(view, Some((next, next_view)), target)?;
    Ok(compose(first, &push)?)
}

/// `ψ_{ε'}`: the certificate at a larger parameter, obtained by following
/// each map with the canonical map `U_ε → U_{ε'}`.
pub fn lift_certificate(c: &Certificate, to: Rational) -> Result<Certificate, InterleaveError> {
    if to < c.epsilon {
        return Err(InterleaveError::Lift {
            from: c.epsilon,
            to,
        });
    }
    if to == c.epsilon {
        return Ok(c.clone());
    }
    let sf = Smoothings::compute(&c.f, to)?;
    let sg = Smoothings::compute(&c.g, to)?;
    let lift = |m: &RGraphMorphism, src: &Arc<RGraph>, view: &WindowIndex, target: &WindowIndex| {
        let id = WindowIndex::identity(src.clone());
        push_through(&id, Some((m, view)), target)
    };
    let alpha = lift(&c.alpha, &c.f, &c.smooth_g.once.index, &sg.once.index)?;
    let beta = lift(&c.beta, &c.g, &c.smooth_f.once.index, &sf.once.index)?;
    let lifted = Certificate::new(to, c.f.clone(), c.g.clone(), alpha, beta, sf, sg)?;
    verified(lifted, "lifted certificate")
}

/// Composes an `ε1`-interleaving of `(f, g)` with an `ε2`-interleaving of
/// `(g, h)` into an `(ε1 + ε2)`-interleaving of `(f, h)`.
pub fn compose_certificates(a: &Certificate, b: &Certificate) -> Result<Certificate, InterleaveError> {
    expect_same(&a.g, &b.f, "the certificates do not share a middle graph")?;
    let eps = a.epsilon + b.epsilon;
    let sf = Smoothings::compute(&a.f, eps)?;
    let sh = Smoothings::compute(&b.g, eps)?;
    // f → U_ε1 g → U_{ε1+ε2} h.
    let alpha = extend(&a.alpha, &a.smooth_g.once.index, &b.alpha, &b.smooth_g.once.index, &sh.once.index)?;
    // h → U_ε2 g → U_{ε1+ε2} f.
    let beta = extend(&b.beta, &b.smooth_f.once.index, &a.beta, &a.smooth_f.once.index, &sf.once.index)?;
    let c = Certificate::new(eps, a.f.clone(), b.g.clone(), alpha, beta, sf, sh)?;
    verified(c, "composed certificate")
}

/// From an ε-interleaving of `(f, g)`, the ε-interleaving of
/// `(U_δ f, U_δ g)` obtained by smoothing both maps.
pub fn contract_certificate(c: &Certificate, delta: Rational) -> Result<Certificate, InterleaveError> {
    let eps = c.epsilon;
    let df = smooth_shared(&c.f, delta)?;
    let dg = smooth_shared(&c.g, delta)?;
    let sf = Smoothings::compute(&df.smoothed, eps)?;
    let sg = Smoothings::compute(&dg.smoothed, eps)?;
    // U_δ f → U_{δ+ε} g, read through U_ε U_δ g over the base g.
    let over_g = dg.index.flatten(&sg.once.index);
    let alpha = push_through(&df.index, Some((&c.alpha, &c.smooth_g.once.index)), &over_g)?
        .rebased(df.smoothed.clone(), sg.once.smoothed.clone())?;
    let over_f = df.index.flatten(&sf.once.index);
    let beta = push_through(&dg.index, Some((&c.beta, &c.smooth_f.once.index)), &over_f)?
        .rebased(dg.smoothed.clone(), sf.once.smoothed.clone())?;
    let out = Certificate::new(eps, df.smoothed.clone(), dg.smoothed.clone(), alpha, beta, sf, sg)?;
    verified(out, "contracted certificate")
}
