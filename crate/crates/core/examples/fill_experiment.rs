//! Seeded batch of filling instances written as CSV, the same rows the
//! `experiment fill` subcommand produces.
//!
//! ```bash
//! cargo run --release --example fill_experiment -- 1..10
//! ```

use twogirth::cli::{parse_seeds, run_fill_batch};
use twogirth::cycles::SearchBudget;
use twogirth::random_model::median_area;

fn main() -> twogirth::error::Result<()> {
    let seeds = parse_seeds(&std::env::args().nth(1).unwrap_or_else(|| "1..10".into()))?;
    let n_list = [15, 20, 25];
    let rows = run_fill_batch(&n_list, 0.2, 0.1, &seeds, &SearchBudget::default())?;

    let mut w = csv::Writer::from_writer(std::io::stdout());
    for r in &rows {
        w.serialize(r)?;
    }
    w.flush()?;

    for n in n_list {
        let at_n: Vec<_> = rows.iter().filter(|r| r.n == n).cloned().collect();
        eprintln!("n = {n}: median area {:?}", median_area(&at_n));
    }
    Ok(())
}
