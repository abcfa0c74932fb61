//! Evaluates the Reeb cosheaf of a loop on a few intervals and checks the
//! gluing condition for a cover.

use reeb::cosheaf::{display, evaluate, glue, reeb_cosheaf, Interval};
use reeb::fixtures::looped;
use reeb::Rational;

fn main() {
    let q = Rational::new;
    let g = looped(q(0, 1), q(1, 1));
    let f = reeb_cosheaf(&g);
    let intervals = [
        Interval::finite(q(-1, 2), q(1, 2)).unwrap(),
        Interval::finite(q(1, 4), q(3, 4)).unwrap(),
        Interval::finite(q(1, 3), q(3, 2)).unwrap(),
        Interval::whole(),
    ];
    for i in intervals {
        println!("F{i} has {} elements", evaluate(&f, i).len());
    }
    let (i, j) = (intervals[0], intervals[2]);
    let gl = glue(&f, i, j).unwrap();
    println!(
        "gluing over {i} and {j}: {} pushout components, {} over the union, bijective: {}",
        gl.components.len(),
        gl.union_size,
        gl.is_bijective()
    );
    println!("display has {} vertices and {} edges", display(&f).num_vertices(), display(&f).num_edges());
}
