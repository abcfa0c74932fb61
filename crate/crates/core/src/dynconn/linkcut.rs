use std::collections::HashMap;

use super::{ForestBackend, ForestError, NodeId, PathMin};
use crate::rational::Rational;

const NIL: usize = usize::MAX;

/// Link-cut trees with every forest edge represented by its own node, so
/// path minima over edge weights become path minima over node values.
/// Operations take amortized logarithmic time.
#[derive(Clone, Debug, Default)]
pub struct LinkCutForest {
    ch: Vec<[usize; 2]>,
    par: Vec<usize>,
    rev: Vec<bool>,
    /// Weight of an edge node; `None` for vertex nodes.
    val: Vec<Option<Rational>>,
    /// Lightest edge node in the splay subtree.
    agg: Vec<usize>,
    /// Internal node of each external node.
    inner: Vec<usize>,
    /// External id of each internal vertex node.
    outer: Vec<usize>,
    /// Endpoints of each edge node.
    ends: Vec<(NodeId, NodeId)>,
    edges: HashMap<(NodeId, NodeId), usize>,
    free: Vec<usize>,
}

fn key(x: NodeId, y: NodeId) -> (NodeId, NodeId) {
    (x.min(y), x.max(y))
}

impl LinkCutForest {
    fn alloc(&mut self, val: Option<Rational>) -> usize {
        let i = if let Some(i) = self.free.pop() {
            i
        } else {
            self.ch.push([NIL, NIL]);
            self.par.push(NIL);
            self.rev.push(false);
            self.val.push(None);
            self.agg.push(NIL);
            self.outer.push(NIL);
            self.ends.push((NIL, NIL));
            self.ch.len() - 1
        };
        self.ch[i] = [NIL, NIL];
        self.par[i] = NIL;
        self.rev[i] = false;
        self.agg[i] = if val.is_some() { i } else { NIL };
        self.val[i] = val;
        i
    }

    fn better(&self, a: usize, b: usize) -> usize {
        match (a, b) {
            (NIL, _) => b,
            (_, NIL) => a,
            _ => {
                if self.val[b] < self.val[a] {
                    b
                } else {
                    a
                }
            }
        }
    }

    fn pull(&mut self, x: usize) {
        let own = if self.val[x].is_some() { x } else { NIL };
        let [l, r] = self.ch[x];
        let mut best = own;
        if l != NIL {
            best = self.better(self.agg[l], best);
        }
        if r != NIL {
            best = self.better(best, self.agg[r]);
        }
        self.agg[x] = best;
    }

    fn push(&mut self, x: usize) {
        if self.rev[x] {
            self.ch[x].swap(0, 1);
            for c in self.ch[x] {
                if c != NIL {
                    self.rev[c] ^= true;
                }
            }
            self.rev[x] = false;
        }
    }

    fn is_splay_root(&self, x: usize) -> bool {
        let p = self.par[x];
        p == NIL || (self.ch[p][0] != x && self.ch[p][1] != x)
    }

    fn rotate(&mut self, x: usize) {
        let p = self.par[x];
        let g = self.par[p];
        let dir = usize::from(self.ch[p][1] == x);
        let b = self.ch[x][1 - dir];
        if !self.is_splay_root(p) {
            let pd = usize::from(self.ch[g][1] == p);
            self.ch[g][pd] = x;
        }
        self.par[x] = g;
        self.ch[x][1 - dir] = p;
        self.par[p] = x;
        self.ch[p][dir] = b;
        if b != NIL {
            self.par[b] = p;
        }
        self.pull(p);
        self.pull(x);
    }

    fn splay(&mut self, x: usize) {
        let mut stack = vec![x];
        let mut y = x;
        while !self.is_splay_root(y) {
            y = self.par[y];
            stack.push(y);
        }
        while let Some(z) = stack.pop() {
            self.push(z);
        }
        while !self.is_splay_root(x) {
            let p = self.par[x];
            if !self.is_splay_root(p) {
                let g = self.par[p];
                let zigzig = (self.ch[g][0] == p) == (self.ch[p][0] == x);
                if zigzig {
                    self.rotate(p);
                } else {
                    self.rotate(x);
                }
            }
            self.rotate(x);
        }
    }

    fn access(&mut self, x: usize) {
        let mut last = NIL;
        let mut y = x;
        while y != NIL {
            self.splay(y);
            self.ch[y][1] = last;
            self.pull(y);
            last = y;
            y = self.par[y];
        }
        self.splay(x);
    }

    fn make_root(&mut self, x: usize) {
        self.access(x);
        self.rev[x] ^= true;
        self.push(x);
    }

    fn find_root(&mut self, x: usize) -> usize {
        self.access(x);
        let mut y = x;
        self.push(y);
        while self.ch[y][0] != NIL {
            y = self.ch[y][0];
            self.push(y);
        }
        self.splay(y);
        y
    }

    /// Attaches root `x` below `y`.
    fn attach(&mut self, x: usize, y: usize) {
        self.make_root(x);
        self.par[x] = y;
    }

    /// Detaches adjacent `x` and `y`.
    fn detach(&mut self, x: usize, y: usize) {
        self.make_root(x);
        self.access(y);
        debug_assert_eq!(self.ch[y][0], x);
        self.ch[y][0] = NIL;
        self.par[x] = NIL;
        self.pull(y);
    }

    /// In-order predecessor of splay root `x`, splayed to the top.
    fn predecessor(&mut self, x: usize) -> Option<usize> {
        self.push(x);
        let mut y = self.ch[x][0];
        if y == NIL {
            return None;
        }
        self.push(y);
        while self.ch[y][1] != NIL {
            y = self.ch[y][1];
            self.push(y);
        }
        self.splay(y);
        Some(y)
    }
}

impl ForestBackend for LinkCutForest {
    fn with_nodes(n: usize) -> Self {
        let mut f = LinkCutForest::default();
        for _ in 0..n {
            f.add_node();
        }
        f
    }

    fn num_nodes(&self) -> usize {
        self.inner.len()
    }

    fn add_node(&mut self) -> NodeId {
        let i = self.alloc(None);
        let id = self.inner.len();
        self.inner.push(i);
        self.outer[i] = id;
        id
    }

    fn parent(&mut self, x: NodeId) -> Option<NodeId> {
        let i = self.inner[x];
        self.access(i);
        let z = self.predecessor(i)?;
        let p = self.predecessor(z).expect("edge nodes sit between vertex nodes");
        Some(self.outer[p])
    }

    fn root(&mut self, x: NodeId) -> NodeId {
        let r = self.find_root(self.inner[x]);
        self.outer[r]
    }

    fn link(&mut self, x: NodeId, y: NodeId, w: Rational) -> Result<(), ForestError> {
        let (i, j) = (self.inner[x], self.inner[y]);
        if self.find_root(i) == self.find_root(j) {
            return Err(ForestError::SameTree(x, y));
        }
        let z = self.alloc(Some(w));
        self.ends[z] = (x, y);
        self.edges.insert(key(x, y), z);
        self.attach(i, z);
        self.par[z] = j;
        Ok(())
    }

    fn cut(&mut self, x: NodeId, y: NodeId) -> Result<(), ForestError> {
        let z = self
            .edges
            .remove(&key(x, y))
            .ok_or(ForestError::NotAnEdge(x, y))?;
        let (i, j) = (self.inner[x], self.inner[y]);
        self.detach(i, z);
        self.detach(z, j);
        self.free.push(z);
        Ok(())
    }

    fn min_weight(&mut self, x: NodeId) -> Option<PathMin> {
        let i = self.inner[x];
        self.access(i);
        let z = self.agg[i];
        if z == NIL {
            return None;
        }
        let weight = self.val[z].expect("edge node");
        let (a, b) = self.ends[z];
        let (child, parent) = if self.parent(a) == Some(b) { (a, b) } else { (b, a) };
        Some(PathMin {
            child,
            parent,
            weight,
        })
    }

    fn evert(&mut self, x: NodeId) {
        let i = self.inner[x];
        self.make_root(i);
    }
}
