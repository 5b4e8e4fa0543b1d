//! Samples Y(n, p) and pulls a small 2-cycle out of a dense complex by
//! looking at random induced subcomplexes.
//!
//! ```bash
//! cargo run --example random_complex -- 12 0.1
//! ```

use twogirth::complex::{homology_ranks, is_cycle2};
use twogirth::random_model::{extract_small_cycle, induced_size, sample_y};

fn main() -> twogirth::error::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(12, |s| s.parse().expect("n"));
    let alpha: f64 = args.next().map_or(0.1, |s| s.parse().expect("alpha"));

    for seed in 0..3 {
        let y = sample_y(n, 0.5, seed)?;
        let h = homology_ranks(&y);
        println!("Y({n}, 0.5) seed {seed}: {} faces, dim Z_2 = {}", y.num_faces(), h.dim_z2);
    }

    // A complex with at least n^(2 + alpha) faces.
    let y = sample_y(n, 0.95, 11)?;
    println!(
        "\nY({n}, 0.95): {} faces, n^(2+alpha) = {:.1}, induced size k = {}",
        y.num_faces(),
        (n as f64).powf(2.0 + alpha),
        induced_size(n, alpha)
    );
    for seed in 0..5 {
        let w = extract_small_cycle(&y, alpha, 50, seed)?;
        println!(
            "  seed {seed}: {} faces after {} attempt(s), bound {:.1}, valid cycle: {}",
            w.cycle.f,
            w.attempts,
            w.face_bound,
            is_cycle2(&w.cycle.support, &y)?
        );
    }
    Ok(())
}
