//! A weighted spanning forest under edge insertions and deletions, for
//! sweeps in which every edge's weight is the time it will be deleted.
//!
//! Inserting an edge whose endpoints are already connected swaps it for the
//! lightest edge on the tree path between them when it is heavier, and is
//! otherwise discarded. The forest therefore stays a maximum-weight spanning
//! forest of everything offered. When deletions happen in weight order, a
//! deleted forest edge never has a surviving replacement, so deletion is a
//! plain cut.

mod linkcut;
mod naive;

use std::collections::HashSet;

use thiserror::Error;

use crate::rational::Rational;

pub use linkcut::LinkCutForest;
pub use naive::NaiveForest;

pub type NodeId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ForestError {
    #[error("nodes {0} and {1} are already in one tree")]
    SameTree(NodeId, NodeId),
    #[error("{0} - {1} is not a forest edge")]
    NotAnEdge(NodeId, NodeId),
    #[error("unknown node {0}")]
    UnknownNode(NodeId),
}

/// The lightest edge on a root path, as `(child, parent, weight)`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct PathMin {
    pub child: NodeId,
    pub parent: NodeId,
    pub weight: Rational,
}

/// Rooted-forest primitives with weighted edges.
pub trait ForestBackend {
    fn with_nodes(n: usize) -> Self
    where
        Self: Sized;
    fn num_nodes(&self) -> usize;
    fn add_node(&mut self) -> NodeId;
    fn parent(&mut self, x: NodeId) -> Option<NodeId>;
    fn root(&mut self, x: NodeId) -> NodeId;
    /// Joins the trees of `x` and `y` by an edge of weight `w`; the root of
    /// `y`'s tree becomes the root of the union.
    fn link(&mut self, x: NodeId, y: NodeId, w: Rational) -> Result<(), ForestError>;
    fn cut(&mut self, x: NodeId, y: NodeId) -> Result<(), ForestError>;
    /// Lightest edge on the path from `x` to its root.
    fn min_weight(&mut self, x: NodeId) -> Option<PathMin>;
    /// Makes `x` the root of its tree.
    fn evert(&mut self, x: NodeId);
}

/// What [`DynForest::insert`] did with an edge.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum InsertOutcome {
    Linked,
    Replaced { child: NodeId, parent: NodeId },
    Discarded,
}

/// Connectivity through a maximum-weight spanning forest.
#[derive(Clone, Debug)]
pub struct DynForest<B> {
    backend: B,
    edges: HashSet<(NodeId, NodeId)>,
}

fn key(x: NodeId, y: NodeId) -> (NodeId, NodeId) {
    (x.min(y), x.max(y))
}

impl<B: ForestBackend> DynForest<B> {
    pub fn new(n: usize) -> Self {
        DynForest {
            backend: B::with_nodes(n),
            edges: HashSet::new(),
        }
    }

    pub fn num_nodes(&self) -> usize {
        self.backend.num_nodes()
    }

    pub fn add_node(&mut self) -> NodeId {
        self.backend.add_node()
    }

    fn check(&self, x: NodeId) -> Result<(), ForestError> {
        if x < self.backend.num_nodes() {
            Ok(())
        } else {
            Err(ForestError::UnknownNode(x))
        }
    }

    /// Representative of the component of `x`.
    pub fn find(&mut self, x: NodeId) -> Result<NodeId, ForestError> {
        self.check(x)?;
        Ok(self.backend.root(x))
    }

    pub fn connected(&mut self, x: NodeId, y: NodeId) -> Result<bool, ForestError> {
        Ok(self.find(x)? == self.find(y)?)
    }

    /// Offers the edge `x - y` with weight `w`.
    pub fn insert(&mut self, x: NodeId, y: NodeId, w: Rational) -> Result<InsertOutcome, ForestError> {
        self.check(x)?;
        self.check(y)?;
        if self.backend.root(x) != self.backend.root(y) {
            self.backend.link(x, y, w)?;
            self.edges.insert(key(x, y));
            return Ok(InsertOutcome::Linked);
        }
        if x == y {
            return Ok(InsertOutcome::Discarded);
        }
        self.backend.evert(x);
        let m = self
            .backend
            .min_weight(y)
            .expect("a path between distinct connected nodes has an edge");
        if m.weight < w {
            self.backend.cut(m.child, m.parent)?;
            self.edges.remove(&key(m.child, m.parent));
            self.backend.link(x, y, w)?;
            self.edges.insert(key(x, y));
            Ok(InsertOutcome::Replaced {
                child: m.child,
                parent: m.parent,
            })
        } else {
            Ok(InsertOutcome::Discarded)
        }
    }

    /// Removes the edge `x - y` if it is in the forest. Returns whether a
    /// cut happened.
    pub fn delete(&mut self, x: NodeId, y: NodeId) -> Result<bool, ForestError> {
        self.check(x)?;
        self.check(y)?;
        if self.edges.remove(&key(x, y)) {
            self.backend.cut(x, y)?;
            Ok(true)
        } else {
            Ok(false)
        }
    }

    pub fn is_forest_edge(&self, x: NodeId, y: NodeId) -> bool {
        self.edges.contains(&key(x, y))
    }

    /// Current forest edges, each as `(min, max)`.
    pub fn forest_edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.edges.iter().copied()
    }

    pub fn backend_mut(&mut self) -> &mut B {
        &mut self.backend
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i128) -> Rational {
        Rational::integer(n)
    }

    fn primitives<B: ForestBackend>() {
        let mut f = B::with_nodes(3);
        let (a, b, c) = (0, 1, 2);
        f.link(a, b, q(5)).unwrap();
        assert_eq!(f.root(a), f.root(b));
        assert_eq!(f.link(a, b, q(1)), Err(ForestError::SameTree(a, b)));
        f.evert(a);
        assert_eq!(f.parent(a), None);
        f.link(c, b, q(7)).unwrap();
        f.cut(a, b).unwrap();
        f.link(a, b, q(3)).unwrap();
        // chain a - b (3) - c (7)
        f.evert(a);
        let m = f.min_weight(c).unwrap();
        assert_eq!(m.weight, q(3));
        assert_eq!((m.child, m.parent), (b, a));
        assert_eq!(f.cut(a, c), Err(ForestError::NotAnEdge(a, c)));
    }

    fn triangle<B: ForestBackend>() {
        let mut f: DynForest<B> = DynForest::new(3);
        let (a, b, c) = (0, 1, 2);
        assert_eq!(f.insert(a, b, q(5)).unwrap(), InsertOutcome::Linked);
        assert_eq!(f.insert(b, c, q(3)).unwrap(), InsertOutcome::Linked);
        assert!(matches!(f.insert(a, c, q(4)).unwrap(), InsertOutcome::Replaced { .. }));
        let mut edges: Vec<_> = f.forest_edges().collect();
        edges.sort();
        assert_eq!(edges, vec![(0, 1), (0, 2)]);
        assert_eq!(f.insert(b, c, q(1)).unwrap(), InsertOutcome::Discarded);
        assert!(!f.delete(b, c).unwrap());
        assert!(f.delete(a, c).unwrap());
        assert!(!f.connected(a, c).unwrap());
        assert_eq!(f.find(9), Err(ForestError::UnknownNode(9)));
    }

    #[test]
    fn backends_agree_on_random_sweeps() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let n = 12;
        let mut a: DynForest<NaiveForest> = DynForest::new(n);
        let mut b: DynForest<LinkCutForest> = DynForest::new(n);
        let mut pending: Vec<(i128, NodeId, NodeId)> = Vec::new();
        let mut now = 0i128;
        for _ in 0..2000 {
            if rng.gen_bool(0.6) {
                let (x, y) = (rng.gen_range(0..n), rng.gen_range(0..n));
                if x == y {
                    continue;
                }
                // Distinct weights keep both backends on the same forest.
                let w = now * 1000 + rng.gen_range(1..1000) * 7 % 997 + pending.len() as i128;
                if pending.iter().any(|p| p.0 == w || key(p.1, p.2) == key(x, y)) {
                    continue;
                }
                pending.push((w, x, y));
                assert_eq!(a.insert(x, y, q(w)).unwrap(), b.insert(x, y, q(w)).unwrap());
            } else if let Some(&(w, _, _)) = pending.iter().min_by_key(|p| p.0) {
                now = w / 1000 + 1;
                pending.retain(|&(v, x, y)| {
                    if v == w {
                        assert_eq!(a.delete(x, y).unwrap(), b.delete(x, y).unwrap());
                        false
                    } else {
                        true
                    }
                });
            }
            for x in 0..n {
                for y in 0..n {
                    assert_eq!(a.connected(x, y).unwrap(), b.connected(x, y).unwrap());
                }
            }
        }
    }

    #[test]
    fn naive_primitives() {
        primitives::<NaiveForest>();
        triangle::<NaiveForest>();
    }

    #[test]
    fn linkcut_primitives() {
        primitives::<LinkCutForest>();
        triangle::<LinkCutForest>();
    }
}
