//! Checks the potential-function properties on every gluing order for
//! f <= 4 and on sampled stories beyond that.
//!
//! ```bash
//! cargo run --release --example verify_potential
//! ```

use twogirth::gluing::verify::{beta_split_check, exhaustive_verify, sampled_verify, StorySource};

fn main() -> twogirth::error::Result<()> {
    let deltas = [0.5, 0.2];
    for f in [2, 4] {
        let t = std::time::Instant::now();
        let r = exhaustive_verify(f, &deltas)?;
        println!(
            "f = {f}: {} states, {} transitions, {} closed matchings, {} surfaces, all hold: {} ({:.1?})",
            r.states,
            r.transitions,
            r.closed_matchings,
            r.surface_matchings,
            r.all_hold(),
            t.elapsed()
        );
    }

    let r = sampled_verify(6, 2000, 1, &deltas, &StorySource::Uniform)?;
    println!(
        "f = 6, 2000 uniform stories: all hold {}, out-of-scope rises {:?}, collapsed-edge notes in {} stories",
        r.all_hold(),
        r.property3_degenerate,
        r.stories_with_notes
    );

    for delta in deltas {
        let b = beta_split_check(delta, 200)?;
        println!("beta split inequality, delta = {delta}: {}", b.holds());
    }
    Ok(())
}
