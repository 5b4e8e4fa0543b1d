//! Deletes a few faces from a random complex so that no 2-cycle lives on a
//! small vertex set, then rechecks the result independently.
//!
//! ```bash
//! cargo run --release --example construction -- 25 7
//! ```

use twogirth::cycles::SearchBudget;
use twogirth::random_model::{construct_large_girth, has_cycle_on_few_vertices, ModelParams};

fn main() -> twogirth::error::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(25, |s| s.parse().expect("n"));
    let seed: u64 = args.next().map_or(7, |s| s.parse().expect("seed"));

    let params = ModelParams::new(n, 0.25, 0.1)?;
    println!(
        "n = {n}, alpha = 0.25, eps = 0.1: p = {:.4}, M = {}",
        params.p, params.m_vertices
    );
    let (z, report) = construct_large_girth(&params, seed, &SearchBudget::default())?;
    println!("{report:#?}");
    println!(
        "deleted {:.2}% of faces; cycle on <= M vertices left: {}",
        100.0 * report.faces_deleted as f64 / report.faces_before.max(1) as f64,
        has_cycle_on_few_vertices(&z, params.m_vertices)?
    );
    Ok(())
}
