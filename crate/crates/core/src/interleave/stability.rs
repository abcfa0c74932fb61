use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use super::{verified, Certificate, InterleaveError, Smoothings};
use crate::graph::{BuildError, Cell, GraphBuilder, RGraph};
use crate::morphism::RGraphMorphism;
use crate::rational::Rational;
use crate::smoothing::WindowIndex;

/// An abstract graph: named vertices and named edges between them by index.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Domain {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum StabilityError {
    #[error("expected {expected} values, got {got}")]
    Length { expected: usize, got: usize },
    #[error("edge `{0}` refers to a missing vertex")]
    MissingVertex(String),
    #[error("edge `{edge}` is flat under the {which} assignment")]
    Flat { edge: String, which: &'static str },
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Interleave(#[from] InterleaveError),
}

/// The domain with one value assignment, built as an ℝ-graph.
struct Realized {
    graph: Arc<RGraph>,
    values: Vec<Rational>,
    /// Cell of the realized graph to the domain cell carrying it.
    owner: HashMap<Cell, Owner>,
    /// Segments of each domain edge, bottom to top in this assignment.
    chains: Vec<Vec<Cell>>,
}

#[derive(Copy, Clone, Debug)]
enum Owner {
    Vertex(usize),
    Edge(usize),
}

impl Realized {
    fn new(x: &Domain, values: &[Rational], which: &'static str) -> Result<Realized, StabilityError> {
        if values.len() != x.vertices.len() {
            return Err(StabilityError::Length {
                expected: x.vertices.len(),
                got: values.len(),
            });
        }
        let mut b = GraphBuilder::new();
        for (name, &t) in x.vertices.iter().zip(values) {
            b.vertex(name, t);
        }
        for (name, p, q) in &x.edges {
            let (&vp, &vq) = match (values.get(*p), values.get(*q)) {
                (Some(vp), Some(vq)) => (vp, vq),
                _ => return Err(StabilityError::MissingVertex(name.clone())),
            };
            if vp == vq {
                return Err(StabilityError::Flat {
                    edge: name.clone(),
                    which,
                });
            }
            let (lo, hi) = if vp < vq { (p, q) } else { (q, p) };
            b.edge(name, &x.vertices[*lo], &x.vertices[*hi]);
        }
        let built = b.build()?;
        let g = built.graph;
        let mut owner = HashMap::new();
        for (i, name) in x.vertices.iter().enumerate() {
            owner.insert(Cell::Vertex(g.vertex_named(name).expect("vertex kept")), Owner::Vertex(i));
        }
        let mut chains = Vec::with_capacity(x.edges.len());
        for (k, (name, _, _)) in x.edges.iter().enumerate() {
            let chain: Vec<Cell> = match built.splits.get(name) {
                None => vec![Cell::Edge(g.edge_named(name).expect("edge kept"))],
                Some(segs) => {
                    let mut chain = Vec::with_capacity(2 * segs.len() - 1);
                    for (j, s) in segs.iter().enumerate() {
                        if j > 0 {
                            let v = g.vertex_named(&format!("{name}:{j}")).expect("split vertex");
                            chain.push(Cell::Vertex(v));
                        }
                        chain.push(Cell::Edge(g.edge_named(s).expect("segment")));
                    }
                    chain
                }
            };
            for &c in &chain {
                owner.insert(c, Owner::Edge(k));
            }
            chains.push(chain);
        }
        Ok(Realized {
            graph: Arc::new(g),
            values: values.to_vec(),
            owner,
            chains,
        })
    }

    /// Cell through the point of domain edge `k` with value `t`.
    fn cell_on_edge(&self, k: usize, t: Rational) -> Cell {
        *self.chains[k]
            .iter()
            .find(|&&c| self.graph.cell_contains(c, t))
            .expect("value lies inside the edge")
    }
}

/// Position along a domain edge: 0 at its first vertex, 1 at its second.
fn parameter(values: &[Rational], edge: (usize, usize), t: Rational) -> Rational {
    let (a, b) = (values[edge.0], values[edge.1]);
    (t - a) / (b - a)
}

/// `from → U_ε to`: a point of the domain at `from`-value `t` goes to the
/// window component at `t` holding the same point of the domain.
fn window_map(
    x: &Domain,
    from: &Realized,
    to: &Realized,
    index: &WindowIndex,
) -> Result<RGraphMorphism, InterleaveError> {
    Ok(RGraphMorphism::from_pointwise(from.graph.clone(), index.graph().clone(), |c, t| {
        let point = match from.owner[&c] {
            Owner::Vertex(i) => Cell::Vertex(to.graph.vertex_named(&x.vertices[i]).expect("vertex kept")),
            Owner::Edge(k) => {
                let (_, p, q) = x.edges[k];
                let s = parameter(&from.values, (p, q), t);
                if s.is_zero() || s == Rational::ONE {
                    let v = if s.is_zero() { p } else { q };
                    Cell::Vertex(to.graph.vertex_named(&x.vertices[v]).expect("vertex kept"))
                } else {
                    let (a, b) = (to.values[p], to.values[q]);
                    to.cell_on_edge(k, a + s * (b - a))
                }
            }
        };
        index
            .locate(t, point)
            .ok_or_else(|| format!("`{}` is outside the window at {t}", to.graph.name(point)))
    })?)
}

/// The interleaving between the graphs of two value assignments on one
/// domain, at the largest difference between the assignments.
pub fn stability_certificate(
    x: &Domain,
    f_values: &[Rational],
    g_values: &[Rational],
) -> Result<Certificate, StabilityError> {
    let f = Realized::new(x, f_values, "first")?;
    let g = Realized::new(x, g_values, "second")?;
    let eps = f_values
        .iter()
        .zip(g_values)
        .map(|(&a, &b)| (a - b).abs())
        .max()
        .unwrap_or(Rational::ZERO);
    let sf = Smoothings::compute(&f.graph, eps).map_err(InterleaveError::from)?;
    let sg = Smoothings::compute(&g.graph, eps).map_err(InterleaveError::from)?;
    let alpha = window_map(x, &f, &g, &sg.once.index)?;
    let beta = window_map(x, &g, &f, &sf.once.index)?;
    let c = Certificate::new(eps, f.graph.clone(), g.graph.clone(), alpha, beta, sf, sg)?;
    Ok(verified(c, "stability certificate")?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interleave::verify_certificate;
    use crate::rational::Rational as Q;

    fn q(n: i128, d: i128) -> Q {
        Q::new(n, d)
    }

    fn segment() -> Domain {
        Domain {
            vertices: vec!["a".into(), "b".into()],
            edges: vec![("e".into(), 0, 1)],
        }
    }

    fn square() -> Domain {
        Domain {
            vertices: ["a", "b", "c", "d"].map(String::from).to_vec(),
            edges: vec![
                ("ab".into(), 0, 1),
                ("ac".into(), 0, 2),
                ("bd".into(), 1, 3),
                ("cd".into(), 2, 3),
            ],
        }
    }

    #[test]
    fn equal_assignments_give_zero() {
        let v = [q(0, 1), q(1, 1)];
        let c = stability_certificate(&segment(), &v, &v).unwrap();
        assert_eq!(c.epsilon, Q::ZERO);
        assert!(verify_certificate(&c).unwrap().is_valid());
    }

    #[test]
    fn shrunk_segment() {
        let c = stability_certificate(&segment(), &[q(0, 1), q(1, 1)], &[q(1, 10), q(9, 10)]).unwrap();
        assert_eq!(c.epsilon, q(1, 10));
    }

    #[test]
    fn perturbed_square_with_a_flipped_edge() {
        let f = [q(0, 1), q(1, 1), q(2, 1), q(3, 1)];
        let g = [q(1, 2), q(3, 4), q(2, 1), q(5, 2)];
        let c = stability_certificate(&square(), &f, &g).unwrap();
        assert_eq!(c.epsilon, q(1, 2));
        let g = [q(0, 1), q(5, 2), q(2, 1), q(3, 1)];
        assert!(stability_certificate(&square(), &f, &g).is_ok());
    }

    #[test]
    fn flat_edges_are_rejected() {
        let err = stability_certificate(&segment(), &[q(0, 1), q(1, 1)], &[q(1, 1), q(1, 1)]).unwrap_err();
        assert!(matches!(err, StabilityError::Flat { which: "second", .. }));
    }
}
