//! Orbits of gluing stories under reordering moves and relabeling
//! triangles.

use std::collections::{HashMap, HashSet};

use itertools::Itertools;
use serde::Serialize;

use super::canon::canonical_form;
use crate::error::{Error, Result};
use crate::gluing::story::GluingStory;
use crate::gluing::{gluing_code, is_triangulated_surface, GluingMove, GluingState};

/// Largest group order swept element by element.
pub const MAX_GROUP_ORDER: u128 = 1_000_000;

#[derive(Clone, Debug, Serialize)]
pub struct OrbitReport {
    pub f: usize,
    pub group_order: u128,
    pub orbit: u64,
    pub stabilizer: u64,
    pub product_matches: bool,
    pub surface: bool,
    /// Automorphisms of the complex when it is a surface.
    pub automorphisms: Option<usize>,
    /// Symmetries of the gluing pattern, triangle relabelings combined with
    /// corner rotations and reflections; defined for every closed story.
    pub gluing_symmetries: usize,
    pub stabilizer_within_bound: bool,
    pub all_isomorphic: bool,
}

impl OrbitReport {
    pub fn holds(&self) -> bool {
        self.product_matches && self.stabilizer_within_bound && self.all_isomorphic
    }
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Isomorphism invariant of a story's closed complex.
fn complex_code(s: &GluingState) -> Result<Vec<u8>> {
    if is_triangulated_surface(s)? {
        Ok(canonical_form(s)?.code)
    } else {
        Ok(gluing_code(s)?.0)
    }
}

/// Applies every pair (move permutation, triangle permutation) to the
/// story. Triangle permutations keep side indices.
pub fn orbit_stabilizer_check(story: &GluingStory) -> Result<OrbitReport> {
    story.validate()?;
    let f = story.f;
    let k = story.moves.len();
    let group_order = factorial(k) * factorial(f);
    if group_order > MAX_GROUP_ORDER {
        return Err(Error::GroupTooLarge(group_order));
    }
    let base = story.final_state()?;
    let surface = is_triangulated_surface(&base)?;
    let automorphisms = if surface {
        Some(canonical_form(&base)?.automorphisms)
    } else {
        None
    };
    let gluing_symmetries = gluing_code(&base)?.1;
    let base_code = complex_code(&base)?;

    let triangle_perms: Vec<Vec<usize>> = (0..f).permutations(f).collect();
    let mut orbit: HashSet<Vec<GluingMove>> = HashSet::new();
    let mut stabilizer = 0u64;
    for order in (0..k).permutations(k) {
        for relabel in &triangle_perms {
            let mut moves = vec![story.moves[0]; k];
            for (i, m) in story.moves.iter().enumerate() {
                moves[order[i]] = GluingMove::new(
                    (relabel[m.a.0], m.a.1),
                    (relabel[m.b.0], m.b.1),
                    m.flip,
                );
            }
            if moves == story.moves {
                stabilizer += 1;
            }
            orbit.insert(moves);
        }
    }
    let mut codes: HashMap<Vec<u8>, u64> = HashMap::new();
    for moves in &orbit {
        let s = GluingStory {
            f,
            moves: moves.clone(),
        }
        .final_state()?;
        *codes.entry(complex_code(&s)?).or_default() += 1;
    }
    let orbit_size = orbit.len() as u64;
    let bound = automorphisms.unwrap_or(gluing_symmetries) as u64;
    Ok(OrbitReport {
        f,
        group_order,
        orbit: orbit_size,
        stabilizer,
        product_matches: orbit_size as u128 * stabilizer as u128 == group_order,
        surface,
        automorphisms,
        gluing_symmetries,
        stabilizer_within_bound: stabilizer <= bound,
        all_isomorphic: codes.len() == 1 && codes.contains_key(&base_code),
    })
}
