//! Times the graph-only sweep on monotone paths of growing length.
//!
//! `cargo run --release --example sweep_scaling [max_edges]`

use std::time::Instant;

use reeb::dynconn::{LinkCutForest, NaiveForest};
use reeb::fixtures::subdivided_line;
use reeb::smoothing::smooth_sweep_graph;
use reeb::Rational;

fn main() {
    let max: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(80_000);
    let eps = Rational::new(1, 3);
    let mut previous: Option<f64> = None;
    let mut m = 5_000;
    println!("{:>8} {:>12} {:>12} {:>7}", "edges", "link-cut ms", "naive ms", "ratio");
    while m <= max {
        let g = subdivided_line(m);
        let best = |run: &dyn Fn()| {
            (0..3)
                .map(|_| {
                    let t = Instant::now();
                    run();
                    t.elapsed().as_secs_f64() * 1e3
                })
                .fold(f64::INFINITY, f64::min)
        };
        let lc = best(&|| {
            smooth_sweep_graph::<LinkCutForest>(&g, eps).unwrap();
        });
        let naive = if m <= 20_000 {
            format!(
                "{:.1}",
                best(&|| {
                    smooth_sweep_graph::<NaiveForest>(&g, eps).unwrap();
                })
            )
        } else {
            "-".into()
        };
        let ratio = previous.map_or("-".into(), |p| format!("{:.2}", lc / p));
        println!("{m:>8} {lc:>12.1} {naive:>12} {ratio:>7}");
        previous = Some(lc);
        m *= 2;
    }
}
