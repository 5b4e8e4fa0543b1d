//! Vertex counts of uniformly random gluing stories.
//!
//! ```bash
//! cargo run --release --example vertex_statistics -- 8 20000
//! ```

use twogirth::census::sample::{exhaustive_vertex_distribution, sampled_vertex_statistics};
use twogirth::gluing::PotentialParams;

fn main() -> twogirth::error::Result<()> {
    let mut args = std::env::args().skip(1);
    let f: usize = args.next().map_or(8, |s| s.parse().expect("f"));
    let samples: u64 = args.next().map_or(20_000, |s| s.parse().expect("samples"));

    println!("exact distribution for f = 2: {:?}", exhaustive_vertex_distribution(2)?);

    let h = sampled_vertex_statistics(f, samples, 7, &PotentialParams::new(0.5)?)?;
    println!("\nf = {f}, {samples} stories:");
    for r in &h.rows {
        println!("  w = {:>2}: {:>7} ({:.4}), surfaces {}", r.w, r.count, r.frequency, r.surfaces);
    }
    println!(
        "mode {:?}, mean near moves {:.3}, decreasing past the mode (counts >= 10): {}",
        h.mode(),
        h.mean_near_moves,
        h.decreasing_beyond_mode(10)
    );
    Ok(())
}
