//! Perturbs the values on a square and builds the interleaving between the
//! two Reeb graphs at the largest change.

use reeb::interleave::{stability_certificate, verify_certificate, Domain};
use reeb::Rational;

fn main() {
    let q = Rational::new;
    let square = Domain {
        vertices: ["a", "b", "c", "d"].map(String::from).to_vec(),
        edges: vec![
            ("ab".into(), 0, 1),
            ("ac".into(), 0, 2),
            ("bd".into(), 1, 3),
            ("cd".into(), 2, 3),
        ],
    };
    let f = [q(0, 1), q(1, 1), q(2, 1), q(3, 1)];
    let g = [q(1, 2), q(3, 4), q(2, 1), q(5, 2)];
    let c = stability_certificate(&square, &f, &g).unwrap();
    println!("sup-norm {}: {}", c.epsilon, verify_certificate(&c).unwrap());
}
