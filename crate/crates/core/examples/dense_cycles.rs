//! Suspension 2-cycles built from a short cycle in the link of a vertex
//! pair, and the graph short-cycle search underneath.
//!
//! ```bash
//! cargo run --example dense_cycles
//! ```

use twogirth::complex::{is_cycle2, Complex2};
use twogirth::dense::{
    edge_pair_count, find_suspension_cycle, moore_bound, short_graph_cycle, shortest_cycle,
    SimpleGraph,
};

fn main() -> twogirth::error::Result<()> {
    let named = [
        ("bipyramid", Complex2::bipyramid()),
        ("octahedron", Complex2::octahedron()),
        ("full skeleton n=8", Complex2::full_skeleton(8)),
    ];
    for (name, x) in &named {
        match find_suspension_cycle(x)? {
            Some(s) => println!(
                "{name}: poles {:?}, equator {:?}, {} faces, cycle: {}",
                s.poles,
                s.equator,
                s.chain.weight(),
                is_cycle2(&s.chain, x)?
            ),
            None => println!("{name}: no suspension cycle"),
        }
        println!("  edge-pair count {}", edge_pair_count(x));
    }

    let petersen = SimpleGraph::petersen();
    println!("\nPetersen graph shortest cycle: {:?}", shortest_cycle(&petersen));
    let k7 = SimpleGraph::complete(7);
    let beta = 0.5;
    println!(
        "K7 with beta = {beta}: cycle {:?}, Moore bound {}",
        short_graph_cycle(&k7, beta, 7)?,
        moore_bound(beta)
    );
    Ok(())
}
