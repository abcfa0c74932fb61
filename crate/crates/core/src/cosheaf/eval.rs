use std::collections::HashMap;

use petgraph::unionfind::UnionFind;

use super::{expand, Cosheaf, CosheafError, CosheafMorphism, Element, Interval};
use crate::rational::{sorted_unique, Rational};

/// A short-interval element: `Node(i, k)` is the `k`-th element of `V_i`,
/// `Edge(i, k)` the `k`-th element of `E_i`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Piece {
    Node(usize, usize),
    Edge(usize, usize),
}

/// The value of a cosheaf on one interval. Each element lists the
/// short-interval elements it merges, sorted; elements are ordered by their
/// smallest piece.
#[derive(Clone, Debug)]
pub struct Evaluation {
    pub interval: Interval,
    pub elements: Vec<Vec<Piece>>,
    index: HashMap<Piece, usize>,
}

impl Evaluation {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The element containing a short-interval element, if that piece lies
    /// over the interval.
    pub fn element_of(&self, p: Piece) -> Option<usize> {
        self.index.get(&p).copied()
    }
}

/// Index range `j..=k` of the critical values inside `i`, as `(j, k + 1)`.
fn critical_range(s: &[Rational], i: &Interval) -> Option<(usize, usize)> {
    match *i {
        Interval::Empty => None,
        Interval::Open { lo, hi } => {
            let j = lo.map_or(0, |a| s.partition_point(|&x| x <= a));
            let k = hi.map_or(s.len(), |b| s.partition_point(|&x| x < b));
            Some((j, k))
        }
    }
}

/// `F(I)` as the colimit of the part of the zigzag lying over `I`.
pub fn evaluate(f: &Cosheaf, i: Interval) -> Evaluation {
    let mut pieces: Vec<Piece> = Vec::new();
    let mut links: Vec<(Piece, Piece)> = Vec::new();
    if let Some((j, k)) = critical_range(f.criticals(), &i) {
        let slots = f.num_levels().saturating_sub(1);
        if j == k {
            // No critical value inside: the interval sits within one slot or
            // outside the support.
            if j >= 1 && j - 1 < slots {
                pieces.extend((0..f.edges(j - 1).len()).map(|x| Piece::Edge(j - 1, x)));
            }
        } else {
            for lvl in j..k {
                pieces.extend((0..f.nodes(lvl).len()).map(|x| Piece::Node(lvl, x)));
            }
            let first = j.saturating_sub(1);
            let last = k.min(slots);
            for s in first..last {
                for x in 0..f.edges(s).len() {
                    let e = Piece::Edge(s, x);
                    pieces.push(e);
                    if s >= j {
                        links.push((e, Piece::Node(s, f.left(s)[x])));
                    }
                    if s + 1 < k {
                        links.push((e, Piece::Node(s + 1, f.right(s)[x])));
                    }
                }
            }
        }
    }
    pieces.sort();
    let pos: HashMap<Piece, usize> = pieces.iter().enumerate().map(|(n, &p)| (p, n)).collect();
    let mut uf = UnionFind::<usize>::new(pieces.len());
    for (a, b) in links {
        uf.union(pos[&a], pos[&b]);
    }
    let mut slot_of_root: HashMap<usize, usize> = HashMap::new();
    let mut elements: Vec<Vec<Piece>> = Vec::new();
    let mut index = HashMap::new();
    // Pieces are visited in sorted order, so elements come out ordered by
    // their smallest piece.
    for (n, &p) in pieces.iter().enumerate() {
        let r = uf.find(n);
        let id = *slot_of_root.entry(r).or_insert_with(|| {
            elements.push(Vec::new());
            elements.len() - 1
        });
        elements[id].push(p);
        index.insert(p, id);
    }
    Evaluation {
        interval: i,
        elements,
        index,
    }
}

fn map_between(from: &Evaluation, to: &Evaluation) -> Vec<usize> {
    from.elements
        .iter()
        .map(|el| to.element_of(el[0]).expect("pieces over a subinterval lie over the larger one"))
        .collect()
}

/// The map `F(I) → F(J)` induced by `I ⊆ J`.
pub fn extend_map(f: &Cosheaf, i: Interval, j: Interval) -> Result<Vec<usize>, CosheafError> {
    if !i.is_subset_of(&j) {
        return Err(CosheafError::NotContained(Box::new(i), Box::new(j)));
    }
    Ok(map_between(&evaluate(f, i), &evaluate(f, j)))
}

fn piece_cells(f: &Cosheaf, pieces: &[Piece]) -> Vec<String> {
    let mut cells: Vec<String> = pieces
        .iter()
        .flat_map(|&p| match p {
            Piece::Node(i, k) => f.nodes(i)[k].cells.iter(),
            Piece::Edge(i, k) => f.edges(i)[k].cells.iter(),
        })
        .cloned()
        .collect();
    cells.sort();
    cells.dedup();
    cells
}

struct Resampled {
    cosheaf: Cosheaf,
    nodes: Vec<Evaluation>,
    edges: Vec<Evaluation>,
}

fn resample_full(f: &Cosheaf, criticals: &[Rational], eps: Rational) -> Result<Resampled, CosheafError> {
    let n = criticals.len();
    let at = |i: isize| -> Option<Rational> {
        if i < 0 || i as usize >= n {
            None
        } else {
            Some(criticals[i as usize])
        }
    };
    let mut nodes = Vec::with_capacity(n);
    for i in 0..n as isize {
        nodes.push(evaluate(f, expand(Interval::new(at(i - 1), at(i + 1))?, eps)?));
    }
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for i in 0..n.saturating_sub(1) as isize {
        edges.push(evaluate(f, expand(Interval::new(at(i), at(i + 1))?, eps)?));
    }
    let left = (0..edges.len()).map(|i| map_between(&edges[i], &nodes[i])).collect();
    let right = (0..edges.len()).map(|i| map_between(&edges[i], &nodes[i + 1])).collect();
    let named = |prefix: char, evs: &[Evaluation]| -> Vec<Vec<Element>> {
        evs.iter()
            .enumerate()
            .map(|(i, ev)| {
                ev.elements
                    .iter()
                    .enumerate()
                    .map(|(k, el)| Element {
                        name: format!("{prefix}{i}.{k}"),
                        cells: piece_cells(f, el),
                    })
                    .collect()
            })
            .collect()
    };
    let cosheaf = Cosheaf::new(
        criticals.to_vec(),
        named('v', &nodes),
        named('e', &edges),
        left,
        right,
    )?;
    Ok(Resampled { cosheaf, nodes, edges })
}

/// The cosheaf `I ↦ F(I^ε)` presented over the given critical values, which
/// must contain every critical value of the result. Elements are named
/// `v{i}.{k}` and `e{i}.{k}`, ranked by the pieces of `f` they merge.
pub fn resample(f: &Cosheaf, criticals: &[Rational], eps: Rational) -> Result<Cosheaf, CosheafError> {
    Ok(resample_full(f, criticals, eps)?.cosheaf)
}

fn shifted_criticals(f: &Cosheaf, eps: Rational) -> Vec<Rational> {
    sorted_unique(f.criticals().iter().flat_map(|&a| [a - eps, a + eps]).collect())
}

/// `S_ε F`, with critical values `{a ± ε}`.
pub fn smooth_cosheaf(f: &Cosheaf, eps: Rational) -> Result<Cosheaf, CosheafError> {
    if eps.is_negative() {
        return Err(CosheafError::NegativeEpsilon(eps));
    }
    resample(f, &shifted_criticals(f, eps), eps)
}

/// The natural map `F → S_ε F`, with both sides presented over the union of
/// their critical values.
pub fn sigma_map(f: &Cosheaf, eps: Rational) -> Result<CosheafMorphism, CosheafError> {
    if eps.is_negative() {
        return Err(CosheafError::NegativeEpsilon(eps));
    }
    let mut all = shifted_criticals(f, eps);
    all.extend_from_slice(f.criticals());
    let common = sorted_unique(all);
    let src = resample_full(f, &common, Rational::ZERO)?;
    let dst = resample_full(f, &common, eps)?;
    let nodes = src.nodes.iter().zip(&dst.nodes).map(|(a, b)| map_between(a, b)).collect();
    let edges = src.edges.iter().zip(&dst.edges).map(|(a, b)| map_between(a, b)).collect();
    CosheafMorphism::new(src.cosheaf, dst.cosheaf, nodes, edges)
        .map_err(|r| CosheafError::Malformed(r.to_string()))
}

/// Which side of a cover an element of the pushout came from.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    First,
    Second,
}

/// The pushout of `F(I) ← F(I ∩ J) → F(J)` compared with `F(I ∪ J)`.
#[derive(Clone, Debug)]
pub struct Gluing {
    /// Components of the pushout, as elements of `F(I)` and `F(J)`.
    pub components: Vec<Vec<(Side, usize)>>,
    /// For each component, its image in `F(I ∪ J)`, or `None` when its
    /// members disagree.
    pub images: Vec<Option<usize>>,
    pub union_size: usize,
}

impl Gluing {
    /// Whether the comparison map from the pushout is a bijection.
    pub fn is_bijective(&self) -> bool {
        let mut hit = vec![false; self.union_size];
        for img in &self.images {
            match img {
                Some(u) if !hit[*u] => hit[*u] = true,
                _ => return false,
            }
        }
        hit.into_iter().all(|h| h)
    }
}

/// Computes the gluing comparison for two overlapping intervals.
pub fn glue(f: &Cosheaf, i: Interval, j: Interval) -> Result<Gluing, CosheafError> {
    let k = i.intersect(&j);
    if k == Interval::Empty {
        return Err(CosheafError::Malformed(format!("{i} and {j} do not overlap")));
    }
    let u = i.hull(&j);
    let (ei, ej, ek, eu) = (evaluate(f, i), evaluate(f, j), evaluate(f, k), evaluate(f, u));
    let mut uf = UnionFind::<usize>::new(ei.len() + ej.len());
    let (ki, kj) = (map_between(&ek, &ei), map_between(&ek, &ej));
    for (a, b) in ki.into_iter().zip(kj) {
        uf.union(a, ei.len() + b);
    }
    let (iu, ju) = (map_between(&ei, &eu), map_between(&ej, &eu));
    let mut by_root: HashMap<usize, usize> = HashMap::new();
    let mut components: Vec<Vec<(Side, usize)>> = Vec::new();
    let mut images: Vec<Option<usize>> = Vec::new();
    for x in 0..ei.len() + ej.len() {
        let (member, img) = if x < ei.len() {
            ((Side::First, x), iu[x])
        } else {
            ((Side::Second, x - ei.len()), ju[x - ei.len()])
        };
        let c = *by_root.entry(uf.find(x)).or_insert_with(|| {
            components.push(Vec::new());
            images.push(Some(img));
            components.len() - 1
        });
        components[c].push(member);
        if images[c] != Some(img) {
            images[c] = None;
        }
    }
    Ok(Gluing {
        components,
        images,
        union_size: eu.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::super::{display, reeb_cosheaf};
    use super::*;
    use crate::fixtures::{fork, line, looped};
    use crate::graph::is_isomorphic;
    use crate::rational::Rational as Q;

    fn q(n: i128, d: i128) -> Q {
        Q::new(n, d)
    }

    fn iv(a: Q, b: Q) -> Interval {
        Interval::finite(a, b).unwrap()
    }

    #[test]
    fn evaluation_counts_components() {
        let f = reeb_cosheaf(&fork());
        // Below −1 and above 1 nothing lives.
        assert!(evaluate(&f, iv(q(-3, 1), q(-2, 1))).is_empty());
        assert!(evaluate(&f, iv(q(2, 1), q(3, 1))).is_empty());
        // Inside a slot the value is the slot's edge set.
        assert_eq!(evaluate(&f, iv(q(1, 4), q(3, 4))).len(), 2);
        assert_eq!(evaluate(&f, iv(q(-1, 2), q(1, 2))).len(), 1);
        assert_eq!(evaluate(&f, iv(q(1, 2), q(2, 1))).len(), 2);
        assert_eq!(evaluate(&f, Interval::whole()).len(), 1);
        assert!(evaluate(&f, Interval::Empty).is_empty());
    }

    #[test]
    fn evaluation_records_its_pieces() {
        let f = reeb_cosheaf(&looped(q(0, 1), q(1, 1)));
        let ev = evaluate(&f, iv(q(-1, 1), q(1, 2)));
        assert_eq!(ev.len(), 1);
        assert_eq!(
            ev.elements[0],
            vec![Piece::Node(0, 0), Piece::Edge(0, 0), Piece::Edge(0, 1)]
        );
    }

    #[test]
    fn extension_maps_compose() {
        let f = reeb_cosheaf(&fork());
        let a = iv(q(1, 4), q(3, 4));
        let b = iv(q(1, 4), q(2, 1));
        let c = iv(q(-2, 1), q(2, 1));
        let ab = extend_map(&f, a, b).unwrap();
        let bc = extend_map(&f, b, c).unwrap();
        let ac = extend_map(&f, a, c).unwrap();
        assert_eq!(ab.iter().map(|&x| bc[x]).collect::<Vec<_>>(), ac);
        assert!(extend_map(&f, c, a).is_err());
    }

    #[test]
    fn smoothing_closes_the_loop() {
        let f = reeb_cosheaf(&looped(q(0, 1), q(1, 1)));
        let s = smooth_cosheaf(&f, q(1, 2)).unwrap();
        // At ε = 1/2 the two windows around the ends overlap: the loop dies.
        assert_eq!(s.criticals(), &[q(-1, 2), q(1, 2), q(3, 2)]);
        let d = display(&s);
        assert_eq!(d.cycle_rank(), 0);
        let small = display(&smooth_cosheaf(&f, q(1, 4)).unwrap());
        assert_eq!(small.cycle_rank(), 1);
    }

    #[test]
    fn zero_smoothing_is_identity_up_to_iso() {
        for g in [fork(), looped(q(0, 1), q(2, 1)), line(q(0, 1), q(1, 1))] {
            let f = reeb_cosheaf(&g);
            let s = smooth_cosheaf(&f, Q::ZERO).unwrap();
            assert!(is_isomorphic(&display(&s), &g).unwrap().is_some());
        }
    }

    #[test]
    fn sigma_is_a_morphism() {
        let f = reeb_cosheaf(&fork());
        let m = sigma_map(&f, q(1, 3)).unwrap();
        assert!(m.validate().is_ok());
    }

    #[test]
    fn gluing_is_bijective() {
        let f = reeb_cosheaf(&fork());
        let g = glue(&f, iv(q(-2, 1), q(1, 2)), iv(q(1, 4), q(2, 1))).unwrap();
        assert!(g.is_bijective());
        assert!(glue(&f, iv(q(0, 1), q(1, 4)), iv(q(1, 2), q(1, 1))).is_err());
    }
}
