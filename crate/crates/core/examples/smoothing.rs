//! Smooths the line, the fork and the loop, and prints each result with
//! its canonical map.

use std::sync::Arc;

use reeb::fixtures::{fork, line, looped};
use reeb::io::{emit_morphism, emit_rgraph};
use reeb::smoothing::smooth_shared;
use reeb::{RGraph, Rational};

fn show(name: &str, g: RGraph, eps: Rational) {
    let g = Arc::new(g);
    let r = smooth_shared(&g, eps).expect("nonnegative ε");
    println!("== {name} smoothed by {eps}");
    print!("{}", emit_rgraph(&r.smoothed));
    println!(
        "-- {} components, cycle rank {} -> {}",
        r.smoothed.num_components(),
        g.cycle_rank(),
        r.smoothed.cycle_rank()
    );
    println!("-- ζ:");
    print!("{}", emit_morphism(&r.zeta));
    println!();
}

fn main() {
    let q = Rational::new;
    show("line", line(q(0, 1), q(1, 1)), q(1, 4));
    show("fork", fork(), q(1, 2));
    show("loop", looped(q(0, 1), q(1, 1)), q(1, 4));
    show("loop", looped(q(0, 1), q(1, 1)), q(1, 2));
}
