//! Small named graphs and random generators used by tests, examples and the
//! acceptance suite.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{EdgeId, GraphBuilder, RGraph, VertexId};
use crate::rational::Rational;

/// A triangulated torus with a height function taking six values, in the
/// field format of [`crate::io::parse_field`].
pub const TORUS_FIELD: &str = include_str!("../data/torus.field");

fn build(b: &GraphBuilder) -> RGraph {
    b.build().expect("fixture is well formed").graph
}

/// One edge `e0` from `v0` at `a` to `v1` at `b`.
pub fn line(a: Rational, b: Rational) -> RGraph {
    build(GraphBuilder::new().vertex("v0", a).vertex("v1", b).edge("e0", "v0", "v1"))
}

/// Two parallel edges `e0`, `e1` from `v0` at `a` to `v1` at `b`.
pub fn looped(a: Rational, b: Rational) -> RGraph {
    build(
        GraphBuilder::new()
            .vertex("v0", a)
            .vertex("v1", b)
            .edge("e0", "v0", "v1")
            .edge("e1", "v0", "v1"),
    )
}

/// A single isolated vertex `v0` at `a`.
pub fn point(a: Rational) -> RGraph {
    build(GraphBuilder::new().vertex("v0", a))
}

/// `u` at −1, `w` at 0, `x` and `y` at 1, with edges `uw`, `wx`, `wy`.
pub fn fork() -> RGraph {
    let q = Rational::integer;
    build(
        GraphBuilder::new()
            .vertex("u", q(-1))
            .vertex("w", q(0))
            .vertex("x", q(1))
            .vertex("y", q(1))
            .edge("uw", "u", "w")
            .edge("wx", "w", "x")
            .edge("wy", "w", "y"),
    )
}

/// A monotone path through `v0 … vn` at values `0 … n`.
pub fn subdivided_line(n: usize) -> RGraph {
    let mut b = GraphBuilder::new();
    for i in 0..=n {
        b.vertex(format!("v{i}"), Rational::integer(i as i128));
    }
    for i in 0..n {
        b.edge(format!("e{i}"), format!("v{i}"), format!("v{}", i + 1));
    }
    build(&b)
}

/// Shape parameters for [`random_graph`].
#[derive(Clone, Debug)]
pub struct RandomShape {
    pub max_levels: usize,
    pub max_width: usize,
    /// Upper bound on vertices plus edges.
    pub max_cells: usize,
    /// Denominator of the value grid.
    pub denominator: i128,
    pub connected: bool,
}

impl Default for RandomShape {
    fn default() -> Self {
        RandomShape {
            max_levels: 5,
            max_width: 3,
            max_cells: 40,
            denominator: 1,
            connected: false,
        }
    }
}

impl RandomShape {
    pub fn tiny() -> Self {
        RandomShape {
            max_levels: 3,
            max_width: 2,
            max_cells: 10,
            denominator: 1,
            connected: true,
        }
    }
}

/// A random graph with nonempty levels at distinct grid values.
pub fn random_graph<R: Rng + ?Sized>(rng: &mut R, shape: &RandomShape) -> RGraph {
    let levels = rng.gen_range(1..=shape.max_levels.max(1));
    let mut grid: Vec<i128> = (0..(3 * levels as i128)).collect();
    grid.shuffle(rng);
    let mut values: Vec<i128> = grid[..levels].to_vec();
    values.sort_unstable();
    let mut b = GraphBuilder::new();
    let mut names: Vec<Vec<String>> = Vec::new();
    let mut cells = 0;
    for (i, &x) in values.iter().enumerate() {
        let width = rng.gen_range(1..=shape.max_width.max(1));
        let mut level = Vec::new();
        for k in 0..width {
            if cells >= shape.max_cells.saturating_sub(1) && k > 0 {
                break;
            }
            let name = format!("a{i}_{k}");
            b.vertex(name.clone(), Rational::new(x, shape.denominator));
            level.push(name);
            cells += 1;
        }
        names.push(level);
    }
    let mut edge_count = 0;
    for i in 0..levels.saturating_sub(1) {
        let (lower, upper) = (&names[i], &names[i + 1]);
        let mut wanted = rng.gen_range(0..=lower.len() + upper.len());
        if shape.connected {
            wanted = wanted.max(lower.len().max(upper.len()));
        }
        for k in 0..wanted {
            if cells >= shape.max_cells {
                break;
            }
            let (dl, du) = if shape.connected && k < lower.len().max(upper.len()) {
                (k % lower.len(), k % upper.len())
            } else {
                (rng.gen_range(0..lower.len()), rng.gen_range(0..upper.len()))
            };
            b.edge(format!("b{edge_count}"), lower[dl].clone(), upper[du].clone());
            edge_count += 1;
            cells += 1;
        }
    }
    let g = build(&b);
    if shape.connected && g.num_components() > 1 {
        return connect(g);
    }
    g
}

/// Joins consecutive components through their lowest-level vertices by
/// adding bridging edges between adjacent levels where possible.
fn connect(g: RGraph) -> RGraph {
    let mut b = GraphBuilder::new();
    for v in g.vertex_ids() {
        b.vertex(g.vertex(v).name.clone(), g.value(v));
    }
    for e in g.edge_ids() {
        b.edge(
            g.edge(e).name.clone(),
            g.vertex(g.down(e)).name.clone(),
            g.vertex(g.up(e)).name.clone(),
        );
    }
    let (labels, k) = g.component_labels();
    let mut reps = vec![None; k];
    for v in g.vertex_ids() {
        let c = labels[v.index()];
        if reps[c].is_none() {
            reps[c] = Some(v);
        }
    }
    let reps: Vec<_> = reps.into_iter().flatten().collect();
    for (i, w) in reps.windows(2).enumerate() {
        let (a, c) = (w[0], w[1]);
        let (lo, hi) = if g.value(a) <= g.value(c) { (a, c) } else { (c, a) };
        if g.value(lo) == g.value(hi) {
            // Same level: bridge through a fresh vertex one grid step above
            // both, which the builder splits as needed.
            let top = format!("bridge{i}");
            let t = *g.criticals().last().expect("nonempty") + Rational::ONE;
            b.vertex(top.clone(), t);
            b.edge(format!("j{i}a"), g.vertex(lo).name.clone(), top.clone());
            b.edge(format!("j{i}b"), g.vertex(hi).name.clone(), top);
        } else {
            b.edge(format!("j{i}"), g.vertex(lo).name.clone(), g.vertex(hi).name.clone());
        }
    }
    b.extra_criticals(g.criticals().iter().copied());
    build(&b)
}

/// An isomorphic copy of `g` with vertices and edges renamed and
/// renumbered at random.
pub fn shuffled_names<R: Rng + ?Sized>(rng: &mut R, g: &RGraph) -> RGraph {
    let mut vs: Vec<usize> = (0..g.num_vertices()).collect();
    let mut es: Vec<usize> = (0..g.num_edges()).collect();
    vs.shuffle(rng);
    es.shuffle(rng);
    // `vs[k]` is the old vertex placed at position `k`.
    let mut new_id = vec![VertexId(0); vs.len()];
    for (k, &v) in vs.iter().enumerate() {
        new_id[v] = VertexId(k as u32);
    }
    let vertices = vs
        .iter()
        .map(|&v| (format!("p{}", new_id[v].0), g.vertex(VertexId(v as u32)).level))
        .collect();
    let edges = es
        .iter()
        .enumerate()
        .map(|(k, &e)| {
            let e = EdgeId(e as u32);
            (format!("q{k}"), new_id[g.down(e).index()], new_id[g.up(e).index()])
        })
        .collect();
    RGraph::new(g.criticals().to_vec(), vertices, edges).expect("renumbering keeps validity")
}
