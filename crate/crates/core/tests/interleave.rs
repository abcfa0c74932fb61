mod common;

use std::sync::Arc;

use common::oracle::domain_of;
use common::{config, graph_from_seed, q, rng};
use proptest::prelude::*;
use reeb::fixtures::RandomShape;
use reeb::graph::refine;
use reeb::fixtures::{line, looped, point, shuffled_names};
use reeb::graph::is_isomorphic;
use reeb::interleave::{
    compose_certificates, contract_certificate, distance_bracket, finite_distance_check,
    lift_certificate, quantified_epsilon, quantified_iso_check, search_certificate,
    stability_certificate, verify_certificate, Certificate, Diagram, Search, Smoothings,
    Verdict, DEFAULT_SEARCH_BUDGET,
};
use reeb::rational::sorted_unique;
use reeb::{Cell, EdgeId, RGraph, RGraphMorphism, Rational, VertexId};

/// Every morphism `src → tgt`, or `None` when there are more than `cap`.
/// Both graphs are refined at all critical values of either, where each
/// refined cell goes to one refined cell at the same position.
fn all_morphisms(src: &Arc<RGraph>, tgt: &Arc<RGraph>, cap: usize) -> Option<Vec<RGraphMorphism>> {
    let values = sorted_unique(src.criticals().iter().chain(tgt.criticals()).copied().collect());
    let (sr, tr) = (refine(src, &values), refine(tgt, &values));
    let (s, t) = (&sr.graph, &tr.graph);
    let t_origin = {
        let (mut v, e) = tr.origins();
        v.extend(e);
        v
    };
    let mut vertex_choices: Vec<Vec<VertexId>> = vec![Vec::new()];
    for v in s.vertex_ids() {
        let options = t.level(s.vertex(v).level);
        let mut next = Vec::new();
        for partial in &vertex_choices {
            for &w in options {
                let mut p = partial.clone();
                p.push(w);
                next.push(p);
            }
        }
        if next.len() > cap {
            return None;
        }
        vertex_choices = next;
    }
    let mut out = Vec::new();
    for vs in vertex_choices {
        let mut edge_choices: Vec<Vec<EdgeId>> = vec![Vec::new()];
        for e in s.edge_ids() {
            let (d, u) = (vs[s.down(e).index()], vs[s.up(e).index()]);
            let options: Vec<EdgeId> = t
                .slot(s.edge(e).slot)
                .iter()
                .copied()
                .filter(|&y| t.down(y) == d && t.up(y) == u)
                .collect();
            let mut next = Vec::new();
            for partial in &edge_choices {
                for &y in &options {
                    let mut p = partial.clone();
                    p.push(y);
                    next.push(p);
                }
            }
            edge_choices = next;
        }
        for es in edge_choices {
            let m = RGraphMorphism::from_pointwise(src.clone(), tgt.clone(), |c, at| {
                let img = match sr.locate(c, at) {
                    Cell::Vertex(v) => Cell::Vertex(vs[v.index()]),
                    Cell::Edge(e) => Cell::Edge(es[e.index()]),
                };
                Ok(t_origin[t.cell_index(img)])
            })
            .expect("level-wise assignments are morphisms");
            out.push(m);
            if out.len() > cap {
                return None;
            }
        }
    }
    Some(out)
}

/// Whether some pair of maps interleaves `f` and `g` at `eps`, by trying
/// every pair; `None` when the maps are too many to try.
fn brute_force(f: &Arc<RGraph>, g: &Arc<RGraph>, eps: Rational, cap: usize) -> Option<bool> {
    let sf = Smoothings::compute(f, eps).unwrap();
    let sg = Smoothings::compute(g, eps).unwrap();
    let alphas = all_morphisms(f, &sg.once.smoothed, cap)?;
    let betas = all_morphisms(g, &sf.once.smoothed, cap)?;
    if alphas.len() * betas.len() > cap * cap {
        return None;
    }
    for a in &alphas {
        for b in &betas {
            let c = Certificate::new(eps, f.clone(), g.clone(), a.clone(), b.clone(), sf.clone(), sg.clone()).unwrap();
            if verify_certificate(&c).unwrap().is_valid() {
                return Some(true);
            }
        }
    }
    Some(false)
}

fn tiny(seed: u64) -> Arc<RGraph> {
    Arc::new(graph_from_seed(seed, &RandomShape::tiny()))
}

fn found(f: &Arc<RGraph>, g: &Arc<RGraph>, eps: Rational) -> Option<Certificate> {
    search_certificate(f, g, eps, DEFAULT_SEARCH_BUDGET).unwrap().certificate()
}

#[test]
fn line_and_point_certificate() {
    let (l, p) = (Arc::new(line(q(0, 1), q(1, 1))), Arc::new(point(q(1, 2))));
    assert!(matches!(search_certificate(&l, &p, q(1, 4), DEFAULT_SEARCH_BUDGET).unwrap(), Search::Exhausted));
    let c = found(&l, &p, q(1, 2)).unwrap();
    assert_eq!(verify_certificate(&c).unwrap(), Verdict::Valid);
    let up = lift_certificate(&c, q(3, 4)).unwrap();
    assert!(verify_certificate(&up).unwrap().is_valid());
}

#[test]
fn corrupted_beta_names_a_cell() {
    // Two copies of a line at the same height: every window has two
    // components, and β can send each copy into the other one.
    let a = line(q(0, 1), q(1, 1));
    let f = Arc::new(a.disjoint_union(&a, "x").unwrap());
    let c = Certificate::identity(&f, q(1, 4)).unwrap();
    assert!(verify_certificate(&c).unwrap().is_valid());
    let swap = |cell: Cell| {
        let name = f.name(cell);
        let other = name.strip_prefix('x').map(str::to_string).unwrap_or_else(|| format!("x{name}"));
        f.lookup(&other).unwrap()
    };
    let index = &c.smooth_f.once.index;
    let wrong = RGraphMorphism::from_pointwise(f.clone(), index.graph().clone(), |cell, t| {
        index.locate(t, swap(cell)).ok_or_else(|| "outside the window".to_string())
    })
    .unwrap();
    let mut bad = c.clone();
    bad.beta = wrong;
    match verify_certificate(&bad).unwrap() {
        Verdict::Invalid { diagram, cell, reason } => {
            assert_eq!(diagram, Diagram::First);
            assert!(f.lookup(&cell).is_some(), "{cell}: {reason}");
        }
        Verdict::Valid => panic!("corrupted certificate verified"),
    }
}

#[test]
fn loop_and_line_against_a_grid() {
    let (o, l) = (Arc::new(looped(q(0, 1), q(1, 1))), Arc::new(line(q(0, 1), q(1, 1))));
    let mut first = None;
    for n in 0..=16 {
        let eps = q(n, 32);
        let truth = brute_force(&o, &l, eps, 400).expect("small enough to enumerate");
        let s = found(&o, &l, eps).is_some();
        assert_eq!(s, truth, "at {eps}");
        if truth && first.is_none() {
            first = Some(eps);
        }
    }
    let first = first.expect("interleaved by 1/2");
    let b = distance_bracket(&o, &l, q(1, 32), DEFAULT_SEARCH_BUDGET).unwrap();
    let b = b.finite().unwrap();
    assert!(b.lower <= first);
    assert!(b.upper <= q(1, 2) && b.upper - b.lower <= q(1, 32));
    assert!(first - q(1, 32) <= b.upper);
}

proptest! {
    #![proptest_config(config(300))]

    #[test]
    fn search_agrees_with_brute_force(a in any::<u64>(), b in any::<u64>(), n in 0i128..=12) {
        let (f, g) = (tiny(a), tiny(b));
        let eps = q(n, 2);
        let found = match search_certificate(&f, &g, eps, DEFAULT_SEARCH_BUDGET).unwrap() {
            Search::Found(c) => {
                prop_assert!(verify_certificate(&c).unwrap().is_valid());
                prop_assert!(verify_certificate(&c.swapped()).unwrap().is_valid());
                let up = lift_certificate(&c, eps + q(1, 4)).unwrap();
                prop_assert!(verify_certificate(&up).unwrap().is_valid());
                true
            }
            Search::Exhausted => false,
            Search::Unknown => return Ok(()),
        };
        if let Some(truth) = brute_force(&f, &g, eps, 60) {
            prop_assert_eq!(found, truth);
        }
    }

    #[test]
    fn certificates_compose(a in any::<u64>(), b in any::<u64>(), c in any::<u64>(), n in 0i128..=6, m in 0i128..=6) {
        let (f, g, h) = (tiny(a), tiny(b), tiny(c));
        let (e1, e2) = (q(n, 2), q(m, 2));
        if let (Some(x), Some(y)) = (found(&f, &g, e1), found(&g, &h, e2)) {
            let z = compose_certificates(&x, &y).unwrap();
            prop_assert_eq!(z.epsilon, e1 + e2);
            prop_assert!(verify_certificate(&z).unwrap().is_valid());
        }
    }

    #[test]
    fn smoothing_contracts(a in any::<u64>(), b in any::<u64>(), n in 0i128..=6, d in 0i128..=4) {
        let (f, g) = (tiny(a), tiny(b));
        if let Some(c) = found(&f, &g, q(n, 2)) {
            let k = contract_certificate(&c, q(d, 2)).unwrap();
            prop_assert_eq!(k.epsilon, c.epsilon);
            prop_assert!(verify_certificate(&k).unwrap().is_valid());
        }
    }

    #[test]
    fn stability_at_the_sup_norm(seed in any::<u64>(), shifts in proptest::collection::vec(-8i128..=8, 40)) {
        let base = graph_from_seed(seed, &RandomShape::tiny());
        let (x, f) = domain_of(&base);
        let g: Vec<Rational> = f.iter().zip(&shifts).map(|(&t, &s)| t + q(s, 4)).collect();
        prop_assume!(x.edges.iter().all(|&(_, p, r)| g[p] != g[r]));
        let c = stability_certificate(&x, &f, &g).unwrap();
        let sup = f.iter().zip(&g).map(|(&a, &b)| (a - b).abs()).max().unwrap();
        prop_assert_eq!(c.epsilon, sup);
        prop_assert!(verify_certificate(&c).unwrap().is_valid());
    }

    #[test]
    fn quantified_check_matches_isomorphism(a in any::<u64>(), b in any::<u64>(), relabel in any::<bool>()) {
        let f = tiny(a);
        let g = if relabel { Arc::new(shuffled_names(&mut rng(b), &f)) } else { tiny(b) };
        prop_assume!(finite_distance_check(&f, &g));
        prop_assert!(quantified_epsilon(&f, &g) > Rational::ZERO);
        let iso = is_isomorphic(&f, &g).unwrap().is_some();
        match quantified_iso_check(&f, &g, DEFAULT_SEARCH_BUDGET).unwrap() {
            Some(w) => {
                prop_assert!(iso);
                prop_assert!(w.forward.validate().is_ok());
                prop_assert!(w.backward.validate().is_ok());
                let id = RGraphMorphism::identity(f.clone());
                prop_assert!(w.forward.then(&w.backward).unwrap().first_difference(&id).is_none());
            }
            None => prop_assert!(!iso),
        }
    }
}
