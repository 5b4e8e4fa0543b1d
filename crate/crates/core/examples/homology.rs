//! Z/2 homology of a few standard complexes, and the cycle-space dimension
//! of the full 2-skeleton of the simplex.
//!
//! ```bash
//! cargo run --example homology
//! ```

use twogirth::complex::{cycle_space_dim, euler_characteristic, homology_ranks, Complex2};

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn main() {
    let named = [
        ("tetrahedron boundary", Complex2::tetrahedron()),
        ("triangular bipyramid", Complex2::bipyramid()),
        ("octahedron", Complex2::octahedron()),
        ("7-vertex torus", Complex2::torus7()),
    ];
    println!("{:<22} {:>3} {:>3} {:>3} {:>4}  b0 b1 b2", "complex", "n", "e", "f", "chi");
    for (name, x) in &named {
        let h = homology_ranks(x);
        println!(
            "{name:<22} {:>3} {:>3} {:>3} {:>4}  {:>2} {:>2} {:>2}",
            x.n(),
            x.num_edges(),
            x.num_faces(),
            euler_characteristic(x),
            h.beta0,
            h.beta1,
            h.beta2
        );
    }

    println!("\ndim Z_2 of the full 2-skeleton on n vertices:");
    for n in 4..=10 {
        let x = Complex2::full_skeleton(n);
        let dim = cycle_space_dim(&x);
        println!("  n = {n:>2}: {dim:>3}   C(n-1, 3) = {}", binomial(n - 1, 3));
    }
}
