//! Sweeps all move reorderings and triangle relabelings of a story and
//! checks orbit times stabilizer against the group order.
//!
//! ```bash
//! cargo run --release --example orbit_stabilizer
//! ```

use twogirth::census::orbit::orbit_stabilizer_check;
use twogirth::gluing::story::{pillow_story, tetrahedron_story};

fn main() -> twogirth::error::Result<()> {
    for (name, story) in [("pillow", pillow_story()), ("tetrahedron", tetrahedron_story())] {
        let t = std::time::Instant::now();
        let r = orbit_stabilizer_check(&story)?;
        println!(
            "{name}: |G| = {}, orbit {}, stabilizer {}, |Aut| {:?}, gluing symmetries {}, holds {} ({:.1?})",
            r.group_order,
            r.orbit,
            r.stabilizer,
            r.automorphisms,
            r.gluing_symmetries,
            r.holds(),
            t.elapsed()
        );
    }
    Ok(())
}
