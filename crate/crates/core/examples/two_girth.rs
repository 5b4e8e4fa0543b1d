//! Smallest 2-cycles and the inclusion-minimal cycles of small complexes.
//!
//! ```bash
//! cargo run --example two_girth
//! ```

use twogirth::complex::Complex2;
use twogirth::cycles::{enumerate_minimal_cycles, min_weight_cycle, two_girth, SearchBudget};
use twogirth::random_model::sample_y;

fn main() -> twogirth::error::Result<()> {
    let budget = SearchBudget::default();

    for (name, x) in [
        ("octahedron", Complex2::octahedron()),
        ("torus7", Complex2::torus7()),
        ("full skeleton n=6", Complex2::full_skeleton(6)),
    ] {
        let girth = two_girth(&x, &budget)?;
        println!("{name}: 2-girth {girth:?}");
    }

    let x = Complex2::full_skeleton(5);
    let cycles = enumerate_minimal_cycles(&x, None, None, &budget)?;
    println!("\nfull skeleton n=5: {} minimal cycles", cycles.len());
    for c in &cycles {
        println!(
            "  f={} v={} e={} beta1={} euler={}  {:?}",
            c.f,
            c.v,
            c.e,
            c.beta1,
            c.euler(),
            c.faces(&x)
        );
    }

    // A sparse random complex: the smallest cycle, if there is one.
    let y = sample_y(10, 0.35, 3)?;
    match min_weight_cycle(&y, &budget)? {
        Some(c) => println!("\nY(10, 0.35) seed 3: girth {} via {:?}", c.weight(), y.chain_faces(&c)),
        None => println!("\nY(10, 0.35) seed 3: no 2-cycle"),
    }
    Ok(())
}
