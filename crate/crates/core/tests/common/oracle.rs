//! Independent recomputations used as test oracles.

use std::collections::{BTreeMap, VecDeque};

use petgraph::unionfind::UnionFind;
use rand::Rng;
use reeb::cosheaf::{Cosheaf, Element, Interval};
use reeb::dynconn::{DynForest, ForestBackend, NodeId};
use reeb::interleave::Domain;
use reeb::{Cell, RGraph, Rational};

use super::{q, rng};

/// Live edges keyed by weight; weights are distinct and every deletion
/// takes the lightest one, as in a sweep.
#[derive(Default)]
pub struct Live {
    pub edges: BTreeMap<Rational, (NodeId, NodeId)>,
}

impl Live {
    pub fn components(&self, n: usize) -> Vec<usize> {
        let mut adj = vec![Vec::new(); n];
        for &(x, y) in self.edges.values() {
            adj[x].push(y);
            adj[y].push(x);
        }
        let mut label = vec![usize::MAX; n];
        for s in 0..n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = s;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &y in &adj[x] {
                    if label[y] == usize::MAX {
                        label[y] = s;
                        queue.push_back(y);
                    }
                }
            }
        }
        label
    }

    /// Total weight of a maximum spanning forest, by Kruskal.
    pub fn max_forest_weight(&self, n: usize) -> Rational {
        let mut uf = UnionFind::<usize>::new(n);
        let mut total = Rational::ZERO;
        for (&w, &(x, y)) in self.edges.iter().rev() {
            if uf.union(x, y) {
                total += w;
            }
        }
        total
    }
}

/// Random sweep operations on `n` nodes, checking connectivity against
/// breadth-first search and the forest weight against Kruskal after each.
pub fn check_forest<B: ForestBackend>(seed: u64, n: usize, ops: usize) {
    let mut rng = rng(seed);
    let mut f: DynForest<B> = DynForest::new(n);
    let mut live = Live::default();
    let mut clock = 0i128;
    for _ in 0..ops {
        if live.edges.is_empty() || rng.gen_bool(0.55) {
            let (x, y) = (rng.gen_range(0..n), rng.gen_range(0..n));
            clock += 1;
            let w = q(clock + rng.gen_range(0..4 * n as i128) * 1000, 1);
            if x == y || live.edges.contains_key(&w) {
                continue;
            }
            if live.edges.values().any(|&(a, b)| (a.min(b), a.max(b)) == (x.min(y), x.max(y))) {
                continue;
            }
            f.insert(x, y, w).unwrap();
            live.edges.insert(w, (x, y));
        } else {
            let (&w, &(x, y)) = live.edges.iter().next().unwrap();
            live.edges.remove(&w);
            f.delete(x, y).unwrap();
        }

        let label = live.components(n);
        for x in 0..n {
            for y in (x + 1)..n {
                assert_eq!(f.connected(x, y).unwrap(), label[x] == label[y], "{x} {y}");
            }
        }
        let by_pair: BTreeMap<(NodeId, NodeId), Rational> = live
            .edges
            .iter()
            .map(|(&w, &(x, y))| ((x.min(y), x.max(y)), w))
            .collect();
        let mut weight = Rational::ZERO;
        let mut count = 0;
        for e in f.forest_edges() {
            weight += by_pair[&e];
            count += 1;
        }
        let roots = (0..n).filter(|&x| label[x] == x).count();
        assert_eq!(count, n - roots, "forest must span");
        assert_eq!(weight, live.max_forest_weight(n), "forest must be maximal");
    }
}

/// A cosheaf with random sets and attaching maps.
pub fn random_cosheaf(seed: u64) -> Cosheaf {
    let mut rng = rng(seed);
    let n = rng.gen_range(1..=5);
    let mut t = rng.gen_range(-4i128..4);
    let criticals: Vec<Rational> = (0..n)
        .map(|_| {
            t += rng.gen_range(1..4);
            q(t, 2)
        })
        .collect();
    let nodes: Vec<Vec<Element>> = (0..n)
        .map(|i| (0..rng.gen_range(1..=3)).map(|k| Element::named(format!("n{i}.{k}"))).collect())
        .collect();
    let mut edges = Vec::new();
    let (mut left, mut right) = (Vec::new(), Vec::new());
    for i in 0..n - 1 {
        let m = rng.gen_range(0..=3);
        edges.push((0..m).map(|k| Element::named(format!("e{i}.{k}"))).collect());
        left.push((0..m).map(|_| rng.gen_range(0..nodes[i].len())).collect());
        right.push((0..m).map(|_| rng.gen_range(0..nodes[i + 1].len())).collect());
    }
    Cosheaf::new(criticals, nodes, edges, left, right).unwrap()
}

/// Components of the preimage of an open interval, by search over the
/// cells that meet it.
pub fn preimage_components(g: &RGraph, i: Interval) -> usize {
    let meets = |c: Cell| {
        let (lo, hi) = g.cell_range(c);
        match c {
            Cell::Vertex(_) => i.contains_value(lo),
            Cell::Edge(_) => match i {
                Interval::Empty => false,
                Interval::Open { lo: l, hi: h } => h.is_none_or(|h| lo < h) && l.is_none_or(|l| hi > l),
            },
        }
    };
    let mut seen = vec![false; g.num_cells()];
    let mut count = 0;
    for c in g.cells() {
        if seen[g.cell_index(c)] || !meets(c) {
            continue;
        }
        count += 1;
        seen[g.cell_index(c)] = true;
        let mut queue = VecDeque::from([c]);
        while let Some(x) = queue.pop_front() {
            let next: Vec<Cell> = match x {
                Cell::Vertex(v) => g
                    .edges_below(v)
                    .iter()
                    .chain(g.edges_above(v))
                    .map(|&e| Cell::Edge(e))
                    .collect(),
                Cell::Edge(e) => vec![Cell::Vertex(g.down(e)), Cell::Vertex(g.up(e))],
            };
            for y in next {
                if !seen[g.cell_index(y)] && meets(y) {
                    seen[g.cell_index(y)] = true;
                    queue.push_back(y);
                }
            }
        }
    }
    count
}

fn bound(rng: &mut impl Rng) -> Option<Rational> {
    (!rng.gen_bool(0.15)).then(|| q(rng.gen_range(-10i128..=30), 4))
}

/// Two overlapping open intervals.
pub fn cover(seed: u64) -> (Interval, Interval) {
    let mut rng = rng(seed);
    loop {
        let mut ends = [bound(&mut rng), bound(&mut rng), bound(&mut rng), bound(&mut rng)];
        if let [Some(a), Some(b), ..] = ends {
            if a > b {
                ends.swap(0, 1);
            }
        }
        if let [_, _, Some(c), Some(d)] = ends {
            if c > d {
                ends.swap(2, 3);
            }
        }
        let (Ok(i), Ok(j)) = (Interval::new(ends[0], ends[1]), Interval::new(ends[2], ends[3])) else {
            continue;
        };
        if i != Interval::Empty && j != Interval::Empty && i.intersect(&j) != Interval::Empty {
            return (i, j);
        }
    }
}

/// The graph's own shape as a domain, with its values.
pub fn domain_of(g: &RGraph) -> (Domain, Vec<Rational>) {
    let x = Domain {
        vertices: g.vertex_ids().map(|v| g.vertex(v).name.clone()).collect(),
        edges: g
            .edge_ids()
            .map(|e| (g.edge(e).name.clone(), g.down(e).index(), g.up(e).index()))
            .collect(),
    };
    (x, g.vertex_ids().map(|v| g.value(v)).collect())
}
