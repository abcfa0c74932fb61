//! Searches for interleavings between a loop and a line, verifies the
//! witness and brackets their distance.

use std::sync::Arc;

use reeb::fixtures::{line, looped};
use reeb::interleave::{distance_bracket, search_certificate, verify_certificate, Search, DEFAULT_SEARCH_BUDGET};
use reeb::io::emit_morphism;
use reeb::Rational;

fn main() {
    let q = Rational::new;
    let f = Arc::new(looped(q(0, 1), q(1, 1)));
    let g = Arc::new(line(q(0, 1), q(1, 1)));
    for eps in [q(1, 8), q(1, 4), q(1, 2)] {
        match search_certificate(&f, &g, eps, DEFAULT_SEARCH_BUDGET).unwrap() {
            Search::Found(c) => {
                println!("ε = {eps}: found, verdict {}", verify_certificate(&c).unwrap());
                print!("α:\n{}β:\n{}", emit_morphism(&c.alpha), emit_morphism(&c.beta));
            }
            Search::Exhausted => println!("ε = {eps}: no interleaving"),
            Search::Unknown => println!("ε = {eps}: budget exhausted"),
        }
    }
    let b = distance_bracket(&f, &g, q(1, 64), DEFAULT_SEARCH_BUDGET).unwrap();
    let b = b.finite().expect("both graphs are connected");
    println!("distance in [{}, {}] after {} probes", b.lower, b.upper, b.probes.len());
}
