use std::collections::HashSet;

use super::{Cell, EdgeId, RGraph, VertexId};
use crate::rational::{sorted_unique, Rational};

/// A refined copy of a graph with bookkeeping back to the original.
#[derive(Clone, Debug)]
pub struct Refinement {
    pub graph: RGraph,
    /// Old vertex to its copy.
    pub vertices: Vec<VertexId>,
    /// Old edge to its segments, bottom to top.
    pub segments: Vec<Vec<EdgeId>>,
}

impl Refinement {
    /// Cell of the original graph carrying the refined cell.
    pub fn origin(&self, c: Cell) -> Cell {
        match c {
            Cell::Vertex(v) => match self.vertices.iter().position(|&x| x == v) {
                Some(i) => Cell::Vertex(VertexId(i as u32)),
                None => {
                    let e = self
                        .segments
                        .iter()
                        .position(|segs| segs.iter().any(|&s| self.graph.up(s) == v))
                        .expect("split vertex belongs to a segment chain");
                    Cell::Edge(EdgeId(e as u32))
                }
            },
            Cell::Edge(e) => {
                let i = self
                    .segments
                    .iter()
                    .position(|segs| segs.contains(&e))
                    .expect("segment belongs to an original edge");
                Cell::Edge(EdgeId(i as u32))
            }
        }
    }

    /// Refined cell carrying the point of original cell `c` at value `t`;
    /// `t` must lie in the closure of `c`.
    pub fn locate(&self, c: Cell, t: Rational) -> Cell {
        match c {
            Cell::Vertex(v) => Cell::Vertex(self.vertices[v.index()]),
            Cell::Edge(e) => {
                let segs = &self.segments[e.index()];
                let g = &self.graph;
                if t == g.span(segs[0]).0 {
                    return Cell::Vertex(g.down(segs[0]));
                }
                let k = segs
                    .partition_point(|&s| g.span(s).1 < t)
                    .min(segs.len() - 1);
                if g.span(segs[k]).1 == t {
                    Cell::Vertex(g.up(segs[k]))
                } else {
                    Cell::Edge(segs[k])
                }
            }
        }
    }

    /// Original cell per refined cell, vertices first.
    pub fn origins(&self) -> (Vec<Cell>, Vec<Cell>) {
        let mut vs = vec![None; self.graph.num_vertices()];
        let mut es = vec![Cell::Edge(EdgeId(0)); self.graph.num_edges()];
        for (i, &v) in self.vertices.iter().enumerate() {
            vs[v.index()] = Some(Cell::Vertex(VertexId(i as u32)));
        }
        for (i, segs) in self.segments.iter().enumerate() {
            for (k, &s) in segs.iter().enumerate() {
                es[s.index()] = Cell::Edge(EdgeId(i as u32));
                if k > 0 {
                    vs[self.graph.down(s).index()] = Some(Cell::Edge(EdgeId(i as u32)));
                }
            }
        }
        (vs.into_iter().map(|c| c.expect("every vertex has an origin")).collect(), es)
    }
}

/// Adds `extra` to the critical values, splitting every edge that crosses a
/// new value. Split vertices are named `e:k` and segments `e.k`; unsplit
/// cells keep their names.
pub fn refine(g: &RGraph, extra: &[Rational]) -> Refinement {
    let mut all = g.criticals().to_vec();
    all.extend(extra.iter().copied());
    let criticals = sorted_unique(all);
    if criticals.len() == g.num_levels() {
        return Refinement {
            graph: g.clone(),
            vertices: g.vertex_ids().collect(),
            segments: g.edge_ids().map(|e| vec![e]).collect(),
        };
    }
    let new_level: Vec<usize> = g
        .criticals()
        .iter()
        .map(|t| criticals.binary_search(t).expect("old critical kept"))
        .collect();
    let mut taken: HashSet<String> = g.cells().map(|c| g.name(c).to_string()).collect();
    let mut fresh = |base: String| {
        let mut name = base;
        while taken.contains(&name) {
            name.push('\'');
        }
        taken.insert(name.clone());
        name
    };
    let mut vertices: Vec<(String, usize)> = g
        .vertex_ids()
        .map(|v| (g.vertex(v).name.clone(), new_level[g.vertex(v).level]))
        .collect();
    let mut edges = Vec::new();
    let mut segments = Vec::with_capacity(g.num_edges());
    for e in g.edge_ids() {
        let edge = g.edge(e);
        let (lo, hi) = (new_level[edge.slot], new_level[edge.slot + 1]);
        if hi == lo + 1 {
            segments.push(vec![EdgeId(edges.len() as u32)]);
            edges.push((edge.name.clone(), edge.down, edge.up));
            continue;
        }
        let mut prev = edge.down;
        let mut segs = Vec::new();
        for (k, lvl) in (lo + 1..hi).enumerate() {
            let v = VertexId(vertices.len() as u32);
            vertices.push((fresh(format!("{}:{}", edge.name, k + 1)), lvl));
            segs.push(EdgeId(edges.len() as u32));
            edges.push((fresh(format!("{}.{k}", edge.name)), prev, v));
            prev = v;
        }
        segs.push(EdgeId(edges.len() as u32));
        edges.push((fresh(format!("{}.{}", edge.name, hi - lo - 1)), prev, edge.up));
        segments.push(segs);
    }
    let graph = RGraph::new(criticals, vertices, edges).expect("refinement stays valid");
    Refinement {
        graph,
        vertices: g.vertex_ids().collect(),
        segments,
    }
}

/// A reduced copy of a graph with bookkeeping back to the original.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub graph: RGraph,
    /// Image of every original cell, vertices first then edges. Vertices on
    /// dropped levels map to the merged edge through them.
    pub vertex_image: Vec<Cell>,
    pub edge_image: Vec<EdgeId>,
    /// Original edges merged into each new edge, bottom to top.
    pub chains: Vec<Vec<EdgeId>>,
    /// Original vertex behind each new vertex.
    pub kept: Vec<VertexId>,
}

impl Reduction {
    pub fn image(&self, c: Cell) -> Cell {
        match c {
            Cell::Vertex(v) => self.vertex_image[v.index()],
            Cell::Edge(e) => Cell::Edge(self.edge_image[e.index()]),
        }
    }

    /// Original cell carrying the point of reduced cell `c` at value `t`;
    /// `t` must lie in the closure of `c`.
    pub fn preimage_at(&self, original: &RGraph, c: Cell, t: Rational) -> Cell {
        match c {
            Cell::Vertex(v) => Cell::Vertex(self.kept[v.index()]),
            Cell::Edge(e) => {
                let chain = &self.chains[e.index()];
                if t == original.span(chain[0]).0 {
                    return Cell::Vertex(original.down(chain[0]));
                }
                let k = chain
                    .partition_point(|&x| original.span(x).1 < t)
                    .min(chain.len() - 1);
                if original.span(chain[k]).1 == t {
                    Cell::Vertex(original.up(chain[k]))
                } else {
                    Cell::Edge(chain[k])
                }
            }
        }
    }
}

/// Drops every level that is empty or whose vertices all have exactly one
/// edge below and one above, merging the edges through it. A merged edge
/// keeps the name of its lowest segment. The result uses the smallest
/// critical set among presentations of the same ℝ-graph.
pub fn reduce(g: &RGraph) -> Reduction {
    let keep: Vec<bool> = (0..g.num_levels())
        .map(|i| {
            g.level(i)
                .iter()
                .any(|&v| g.edges_below(v).len() != 1 || g.edges_above(v).len() != 1)
        })
        .collect();
    let new_level: Vec<usize> = keep
        .iter()
        .scan(0usize, |n, &k| {
            let here = *n;
            if k {
                *n += 1;
            }
            Some(here)
        })
        .collect();
    let criticals: Vec<Rational> = g
        .criticals()
        .iter()
        .zip(&keep)
        .filter(|(_, &k)| k)
        .map(|(t, _)| *t)
        .collect();
    let mut vertices = Vec::new();
    let mut kept = Vec::new();
    let mut vertex_image = vec![None; g.num_vertices()];
    for v in g.vertex_ids() {
        let lvl = g.vertex(v).level;
        if keep[lvl] {
            kept.push(v);
            vertex_image[v.index()] = Some(Cell::Vertex(VertexId(vertices.len() as u32)));
            vertices.push((g.vertex(v).name.clone(), new_level[lvl]));
        }
    }
    let mut edges = Vec::new();
    let mut edge_image = vec![EdgeId(0); g.num_edges()];
    let mut chains = Vec::new();
    for e in g.edge_ids() {
        if !keep[g.edge(e).slot] {
            continue;
        }
        let id = EdgeId(edges.len() as u32);
        let mut chain = vec![e];
        let mut top = g.up(e);
        while !keep[g.vertex(top).level] {
            vertex_image[top.index()] = Some(Cell::Edge(id));
            let next = g.edges_above(top)[0];
            chain.push(next);
            top = g.up(next);
        }
        for &c in &chain {
            edge_image[c.index()] = id;
        }
        let down = match vertex_image[g.down(e).index()] {
            Some(Cell::Vertex(v)) => v,
            _ => unreachable!("chains start on kept levels"),
        };
        let up = match vertex_image[top.index()] {
            Some(Cell::Vertex(v)) => v,
            _ => unreachable!("chains end on kept levels"),
        };
        edges.push((g.edge(e).name.clone(), down, up));
        chains.push(chain);
    }
    let graph = RGraph::new(criticals, vertices, edges).expect("reduction stays valid");
    Reduction {
        graph,
        vertex_image: vertex_image
            .into_iter()
            .map(|c| c.expect("every vertex has an image"))
            .collect(),
        edge_image,
        chains,
        kept,
    }
}

#[derive(Clone, Debug)]
pub struct CommonRefinement {
    pub left: Refinement,
    pub right: Refinement,
}

/// Refines both graphs to the union of their critical sets.
pub fn common_refinement(g: &RGraph, h: &RGraph) -> CommonRefinement {
    CommonRefinement {
        left: refine(g, h.criticals()),
        right: refine(h, g.criticals()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{line, looped, point, subdivided_line};
    use crate::graph::is_isomorphic;
    use crate::rational::Rational as Q;

    fn q(n: i128, d: i128) -> Q {
        Q::new(n, d)
    }

    #[test]
    fn single_split() {
        let r = refine(&line(q(0, 1), q(1, 1)), &[q(1, 2)]);
        assert_eq!(r.graph.criticals(), &[q(0, 1), q(1, 2), q(1, 1)]);
        assert_eq!(r.segments[0].len(), 2);
        let (a, b) = (r.segments[0][0], r.segments[0][1]);
        assert_eq!(r.graph.up(a), r.graph.down(b));
        assert_eq!(r.graph.edge_ids().count(), 2);
    }

    #[test]
    fn empty_extra_is_identity() {
        let g = line(q(0, 1), q(1, 1));
        let r = refine(&g, &[]);
        assert_eq!(r.graph, g);
        assert_eq!(r.segments, vec![vec![EdgeId(0)]]);
        let r = refine(&g, &[q(1, 1)]);
        assert_eq!(r.graph, g);
    }

    #[test]
    fn loop_into_three_segment_chains() {
        let g = looped(q(0, 1), q(1, 1));
        let r = refine(&g, &[q(1, 3), q(2, 3)]);
        assert_eq!(r.graph.num_levels(), 4);
        assert_eq!(r.graph.num_vertices(), 6);
        assert_eq!(r.graph.num_edges(), 6);
        assert!(r.segments.iter().all(|s| s.len() == 3));
        assert!(r.graph.check().is_ok());
        let red = reduce(&r.graph);
        assert!(is_isomorphic(&red.graph, &g).unwrap().is_some());
    }

    #[test]
    fn origins_invert_refinement() {
        let g = looped(q(0, 1), q(1, 1));
        let r = refine(&g, &[q(1, 2)]);
        let (vs, es) = r.origins();
        for (i, c) in vs.iter().enumerate() {
            assert_eq!(*c, r.origin(Cell::Vertex(VertexId(i as u32))));
        }
        for (i, c) in es.iter().enumerate() {
            assert_eq!(*c, r.origin(Cell::Edge(EdgeId(i as u32))));
        }
    }

    #[test]
    fn reduce_round_trips() {
        let g = line(q(0, 1), q(1, 1));
        let red = reduce(&refine(&g, &[q(1, 2)]).graph);
        assert_eq!(red.graph.criticals(), g.criticals());
        assert!(is_isomorphic(&red.graph, &g).unwrap().is_some());
        assert_eq!(red.graph.edge(EdgeId(0)).name, "e0.0");
        let l = looped(q(0, 1), q(1, 1));
        assert_eq!(reduce(&l).graph, l);
    }

    #[test]
    fn reduce_long_subdivision() {
        let g = subdivided_line(10);
        assert_eq!(g.num_levels(), 11);
        let red = reduce(&g);
        assert_eq!(red.graph.num_levels(), 2);
        assert_eq!(red.chains[0].len(), 10);
        assert!(is_isomorphic(&red.graph, &line(q(0, 1), q(10, 1))).unwrap().is_some());
    }

    #[test]
    fn reduce_drops_empty_levels() {
        let r = refine(&point(q(0, 1)), &[q(1, 1)]);
        assert_eq!(r.graph.num_levels(), 2);
        assert_eq!(reduce(&r.graph).graph, point(q(0, 1)));
    }

    #[test]
    fn common_refinements() {
        let c = common_refinement(&line(q(0, 1), q(1, 1)), &line(q(1, 2), q(3, 2)));
        let want = [q(0, 1), q(1, 2), q(1, 1), q(3, 2)];
        assert_eq!(c.left.graph.criticals(), &want);
        assert_eq!(c.right.graph.criticals(), &want);

        let c = common_refinement(&looped(q(0, 1), q(1, 1)), &point(q(1, 2)));
        assert_eq!(c.left.graph.num_edges(), 4);
        assert_eq!(c.right.graph.num_vertices(), 1);
        assert_eq!(c.right.graph.num_levels(), 3);
        assert!(c.left.graph.check().is_ok() && c.right.graph.check().is_ok());
    }
}
