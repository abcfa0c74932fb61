use std::collections::HashMap;
use std::sync::Arc;

use crate::graph::{Cell, Position, RGraph};
use crate::rational::Rational;

/// Relates a graph whose cells are window components of a base graph to
/// that base: every cell knows which base cells it contains, and every base
/// cell meeting the window at a given value can be located.
///
/// A plain graph is its own index with radius zero.
#[derive(Clone, Debug)]
pub struct WindowIndex {
    base: Arc<RGraph>,
    graph: Arc<RGraph>,
    radius: Rational,
    contents: Vec<Vec<Cell>>,
    levels: Vec<HashMap<Cell, Cell>>,
    slots: Vec<HashMap<Cell, Cell>>,
}

impl WindowIndex {
    /// `contents[graph.cell_index(c)]` lists the base cells inside `c`,
    /// sorted. Panics if two cells at one position claim a base cell.
    pub fn new(
        base: Arc<RGraph>,
        graph: Arc<RGraph>,
        radius: Rational,
        mut contents: Vec<Vec<Cell>>,
    ) -> WindowIndex {
        assert_eq!(contents.len(), graph.num_cells());
        let mut levels = vec![HashMap::new(); graph.num_levels()];
        let mut slots = vec![HashMap::new(); graph.num_slots()];
        for c in graph.cells() {
            let list = &mut contents[graph.cell_index(c)];
            list.sort_unstable();
            list.dedup();
            let map = match c {
                Cell::Vertex(v) => &mut levels[graph.vertex(v).level],
                Cell::Edge(e) => &mut slots[graph.edge(e).slot],
            };
            for &x in list.iter() {
                let prev = map.insert(x, c);
                assert!(prev.is_none(), "base cell claimed twice at one position");
            }
        }
        WindowIndex {
            base,
            graph,
            radius,
            contents,
            levels,
            slots,
        }
    }

    pub fn identity(g: Arc<RGraph>) -> WindowIndex {
        let contents = g.cells().map(|c| vec![c]).collect();
        WindowIndex::new(g.clone(), g, Rational::ZERO, contents)
    }

    pub fn base(&self) -> &Arc<RGraph> {
        &self.base
    }

    pub fn graph(&self) -> &Arc<RGraph> {
        &self.graph
    }

    pub fn radius(&self) -> Rational {
        self.radius
    }

    /// Base cells inside `c`, sorted.
    pub fn contents(&self, c: Cell) -> &[Cell] {
        &self.contents[self.graph.cell_index(c)]
    }

    pub fn all_contents(&self) -> &[Vec<Cell>] {
        &self.contents
    }

    /// Cell over value `t` containing base cell `x`, if `x` meets the
    /// window there.
    pub fn locate(&self, t: Rational, x: Cell) -> Option<Cell> {
        match self.graph.position_of(t) {
            Position::Level(i) => self.levels[i].get(&x).copied(),
            Position::Slot(i) => self.slots[i].get(&x).copied(),
            Position::Below | Position::Above => None,
        }
    }

    /// Views `outer`, an index over this index's graph, as an index over
    /// this index's base with the radii added.
    pub fn flatten(&self, outer: &WindowIndex) -> WindowIndex {
        assert!(
            Arc::ptr_eq(outer.base(), &self.graph) || **outer.base() == *self.graph,
            "outer index must sit over this graph"
        );
        let contents = outer
            .graph
            .cells()
            .map(|c| {
                let mut all: Vec<Cell> = outer
                    .contents(c)
                    .iter()
                    .flat_map(|&y| self.contents(y).iter().copied())
                    .collect();
                all.sort_unstable();
                all.dedup();
                all
            })
            .collect();
        WindowIndex::new(
            self.base.clone(),
            outer.graph.clone(),
            self.radius + outer.radius,
            contents,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::looped;
    use crate::graph::{EdgeId, VertexId};
    use crate::rational::Rational as Q;

    #[test]
    fn identity_locates_cells_at_their_values() {
        let g = Arc::new(looped(Q::integer(0), Q::integer(1)));
        let ix = WindowIndex::identity(g.clone());
        let v0 = Cell::Vertex(VertexId(0));
        let e1 = Cell::Edge(EdgeId(1));
        assert_eq!(ix.locate(Q::integer(0), v0), Some(v0));
        assert_eq!(ix.locate(Q::new(1, 2), e1), Some(e1));
        assert_eq!(ix.locate(Q::new(1, 2), v0), None);
        assert_eq!(ix.contents(e1), &[e1]);
    }
}
