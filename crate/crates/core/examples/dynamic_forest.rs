//! Maintains connectivity of a graph whose edges are deleted in weight
//! order, as the sweep does.

use reeb::dynconn::{DynForest, LinkCutForest};
use reeb::Rational;

fn main() {
    let w = Rational::integer;
    let mut f: DynForest<LinkCutForest> = DynForest::new(4);
    for (x, y, t) in [(0, 1, 5), (1, 2, 3), (2, 0, 7), (2, 3, 4)] {
        println!("insert {x}-{y} until {t}: {:?}", f.insert(x, y, w(t)).unwrap());
    }
    for (x, y) in [(1, 2), (2, 3), (0, 1)] {
        println!("delete {x}-{y}: cut = {}", f.delete(x, y).unwrap());
        println!("  0~3 {}, 0~1 {}", f.connected(0, 3).unwrap(), f.connected(0, 1).unwrap());
    }
}
