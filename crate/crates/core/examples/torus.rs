//! Computes the Reeb graph of a height function on a triangulated torus
//! and prints it as DOT.

use reeb::fixtures::TORUS_FIELD;
use reeb::io::{export_dot, parse_field, reeb_of_complex, DotOptions};

fn main() {
    let k = parse_field(TORUS_FIELD).unwrap();
    println!(
        "// {} vertices, {} edges, {} triangles",
        k.num_vertices(),
        k.num_edges(),
        k.num_triangles()
    );
    let r = reeb_of_complex(&k);
    println!("// cycle rank {}", r.graph.cycle_rank());
    print!("{}", export_dot(&r.graph, DotOptions { rank_by_value: true }));
}
