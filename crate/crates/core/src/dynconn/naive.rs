use super::{ForestBackend, ForestError, NodeId, PathMin};
use crate::rational::Rational;

/// Parent pointers with explicit path walks; every operation is linear in
/// the tree depth. Used as the reference for [`super::LinkCutForest`].
#[derive(Clone, Debug, Default)]
pub struct NaiveForest {
    parent: Vec<Option<(NodeId, Rational)>>,
}

impl ForestBackend for NaiveForest {
    fn with_nodes(n: usize) -> Self {
        NaiveForest {
            parent: vec![None; n],
        }
    }

    fn num_nodes(&self) -> usize {
        self.parent.len()
    }

    fn add_node(&mut self) -> NodeId {
        self.parent.push(None);
        self.parent.len() - 1
    }

    fn parent(&mut self, x: NodeId) -> Option<NodeId> {
        self.parent[x].map(|(p, _)| p)
    }

    fn root(&mut self, mut x: NodeId) -> NodeId {
        while let Some((p, _)) = self.parent[x] {
            x = p;
        }
        x
    }

    fn link(&mut self, x: NodeId, y: NodeId, w: Rational) -> Result<(), ForestError> {
        if self.root(x) == self.root(y) {
            return Err(ForestError::SameTree(x, y));
        }
        self.evert(x);
        self.parent[x] = Some((y, w));
        Ok(())
    }

    fn cut(&mut self, x: NodeId, y: NodeId) -> Result<(), ForestError> {
        if matches!(self.parent[x], Some((p, _)) if p == y) {
            self.parent[x] = None;
        } else if matches!(self.parent[y], Some((p, _)) if p == x) {
            self.parent[y] = None;
        } else {
            return Err(ForestError::NotAnEdge(x, y));
        }
        Ok(())
    }

    fn min_weight(&mut self, mut x: NodeId) -> Option<PathMin> {
        let mut best: Option<PathMin> = None;
        while let Some((p, w)) = self.parent[x] {
            if best.is_none_or(|b| w < b.weight) {
                best = Some(PathMin {
                    child: x,
                    parent: p,
                    weight: w,
                });
            }
            x = p;
        }
        best
    }

    fn evert(&mut self, x: NodeId) {
        let mut cur = x;
        let mut carried: Option<(NodeId, Rational)> = None;
        loop {
            let next = self.parent[cur];
            self.parent[cur] = carried;
            match next {
                None => break,
                Some((p, w)) => {
                    carried = Some((cur, w));
                    cur = p;
                }
            }
        }
    }
}
