#![allow(dead_code)]

pub mod oracle;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use reeb::fixtures::{random_graph, RandomShape};
use reeb::{RGraph, Rational};

pub fn q(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn graph_from_seed(seed: u64, shape: &RandomShape) -> RGraph {
    random_graph(&mut rng(seed), shape)
}

/// Random graphs of the default shape.
pub fn arb_graph() -> impl Strategy<Value = RGraph> {
    any::<u64>().prop_map(|s| graph_from_seed(s, &RandomShape::default()))
}

/// Small connected graphs.
pub fn arb_tiny() -> impl Strategy<Value = RGraph> {
    any::<u64>().prop_map(|s| graph_from_seed(s, &RandomShape::tiny()))
}

/// Quarter steps, so windows often meet exactly at critical values.
pub fn arb_eps() -> impl Strategy<Value = Rational> {
    (0i128..=10).prop_map(|n| q(n, 4))
}

/// Proptest settings without on-disk failure persistence.
pub fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}
