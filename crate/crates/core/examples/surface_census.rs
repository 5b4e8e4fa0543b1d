//! Counts triangulated surfaces by face and vertex count, and compares the
//! flag-based automorphism count with a brute-force one.
//!
//! ```bash
//! cargo run --release --example surface_census -- 6
//! ```

use twogirth::census::brute::brute_force_surfaces;
use twogirth::census::canon::{brute_force_automorphisms, canonical_form_of_faces};
use twogirth::census::{census_table, surfaces_with_faces};

fn main() -> twogirth::error::Result<()> {
    let f_max: usize = std::env::args().nth(1).map_or(6, |s| s.parse().expect("f_max"));

    let table = census_table(f_max, true)?;
    println!("f,w,count,mode");
    for (f, w, c, mode) in table.rows() {
        println!("{f},{w},{c},{mode}");
    }

    let (surfaces, stats) = surfaces_with_faces(4, false)?;
    println!("\nunpruned f = 4: {stats:?}, {} surface(s)", surfaces.len());

    println!("\nlabeled search over at most 6 vertices:");
    for ((f, w), reps) in brute_force_surfaces(6, f_max.min(8))? {
        for faces in reps {
            let c = canonical_form_of_faces(w, &faces)?;
            println!(
                "  f={f} w={w} euler={} |Aut| flags {} brute {}",
                c.euler,
                c.automorphisms,
                brute_force_automorphisms(w, &faces)
            );
        }
    }
    Ok(())
}
