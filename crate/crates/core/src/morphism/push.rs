use super::{same_graph, MorphismError, RGraphMorphism};
use crate::graph::Cell;
use crate::rational::Rational;
use crate::smoothing::WindowIndex;

/// Carries window components along a map.
///
/// `source` indexes a graph `A` over a base `X` with radius `δ`. `alpha`
/// pairs a map from `X` into a graph `Y` with a view indexing `Y` over a
/// base `Z` with radius `a`; without it the map is the identity of `X = Z`.
/// `target` indexes a graph over `Z` with radius at least `δ + a`.
///
/// A cell of `A` at value `t` is a component of the `δ`-window of `X` at
/// `t`. Each of its base cells is sampled inside that window, sent through
/// `alpha`, and the result is located in the target's window at `t`. The
/// images of all base cells must agree; disagreement is reported as an
/// error.
pub fn push_through(
    source: &WindowIndex,
    alpha: Option<(&RGraphMorphism, &WindowIndex)>,
    target: &WindowIndex,
) -> Result<RGraphMorphism, MorphismError> {
    let delta = source.radius();
    let reach = match alpha {
        Some((m, view)) => {
            if !same_graph(m.source(), source.base()) {
                return Err(MorphismError::Mismatch("map does not start at the source base".into()));
            }
            if !same_graph(m.target(), view.graph()) {
                return Err(MorphismError::Mismatch("map does not land in its view".into()));
            }
            if !same_graph(view.base(), target.base()) {
                return Err(MorphismError::Mismatch("view and target have different bases".into()));
            }
            delta + view.radius()
        }
        None => {
            if !same_graph(source.base(), target.base()) {
                return Err(MorphismError::Mismatch("source and target have different bases".into()));
            }
            delta
        }
    };
    if target.radius() < reach {
        return Err(MorphismError::Mismatch(format!(
            "target radius {} is below {reach}",
            target.radius()
        )));
    }
    let base = source.base().clone();
    RGraphMorphism::from_pointwise(source.graph().clone(), target.graph().clone(), |c, t| {
        let mut found: Option<Cell> = None;
        for &x in source.contents(c) {
            let s = match x {
                Cell::Vertex(v) => base.value(v),
                Cell::Edge(e) => {
                    if delta.is_zero() {
                        t
                    } else {
                        let (lo, hi) = base.span(e);
                        Rational::midpoint(lo.max(t - delta), hi.min(t + delta))
                    }
                }
            };
            let z = match alpha {
                Some((m, view)) => {
                    let y = m
                        .image_at(x, s)
                        .ok_or_else(|| format!("`{}` has no image at {s}", base.name(x)))?;
                    view.contents(y)[0]
                }
                None => x,
            };
            let img = target.locate(t, z).ok_or_else(|| {
                format!("`{}` misses the target window", target.base().name(z))
            })?;
            match found {
                None => found = Some(img),
                Some(prev) if prev != img => {
                    return Err(format!(
                        "contents land in both `{}` and `{}`",
                        target.graph().name(prev),
                        target.graph().name(img)
                    ))
                }
                Some(_) => {}
            }
        }
        found.ok_or_else(|| "cell has no contents".to_string())
    })
}

/// The action of smoothing on a map `alpha: f → g`, from `U_ε f` to
/// `U_ε g`, given both smoothings' indices.
pub fn smooth_morphism(
    alpha: &RGraphMorphism,
    smooth_f: &WindowIndex,
    smooth_g: &WindowIndex,
) -> Result<RGraphMorphism, MorphismError> {
    let g = WindowIndex::identity(alpha.target().clone());
    push_through(smooth_f, Some((alpha, &g)), smooth_g)
}

/// The shifted map `U_ε f → U_{2ε} g` determined by `alpha: f → U_ε g`.
pub fn shift_compose(
    alpha: &RGraphMorphism,
    smooth_f: &WindowIndex,
    smooth_g: &WindowIndex,
    smooth2_g: &WindowIndex,
) -> Result<RGraphMorphism, MorphismError> {
    push_through(smooth_f, Some((alpha, smooth_g)), smooth2_g)
}
