//! Minimum fillings of triangle boundaries and the filling Wiener index.
//!
//! ```bash
//! cargo run --example filling
//! ```

use std::collections::BTreeSet;

use twogirth::complex::Complex2;
use twogirth::cycles::{filling_area, wiener_fill_index, SearchBudget};

fn main() -> twogirth::error::Result<()> {
    let budget = SearchBudget::default();

    let full = Complex2::full_skeleton(7);
    let tau = full.triangle_cycle(0, 1, 2)?;
    println!("full skeleton n=7: Fill(012) = {:?}", filling_area(&full, &tau, &budget)?.area);

    // Drop the face 012 from the tetrahedron: the other three faces fill it.
    let tet = Complex2::tetrahedron();
    let face = tet.face_id([0, 1, 2]).expect("face 012");
    let punctured = tet.without_faces(&BTreeSet::from([face]));
    let tau = punctured.triangle_cycle(0, 1, 2)?;
    let r = filling_area(&punctured, &tau, &budget)?;
    println!(
        "tetrahedron minus 012: Fill(012) = {:?} using {:?}",
        r.area,
        r.filler.map(|c| punctured.chain_faces(&c))
    );

    for n in 4..=6 {
        let x = Complex2::full_skeleton(n);
        println!("wiener index, full skeleton n={n}: {}", wiener_fill_index(&x, &budget)?);
    }
    Ok(())
}
