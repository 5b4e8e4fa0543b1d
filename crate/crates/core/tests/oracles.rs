//! Library results checked against direct brute-force computations that
//! share no code with the searches they check.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use twogirth::census::brute::brute_force_surfaces;
use twogirth::census::canon::{brute_force_automorphisms, canonical_form_of_faces};
use twogirth::census::{census_table, enumerate_closed_gluings, EnumOptions};
use twogirth::complex::{cycle_space_dim, Complex2};
use twogirth::cycles::{enumerate_minimal_cycles, filling_area, two_girth, SearchBudget};
use twogirth::random_model::sample_y;

/// Edge masks of each face, over the complex's own edge order.
fn face_edge_masks(x: &Complex2) -> Vec<u64> {
    assert!(x.num_edges() <= 64);
    x.faces()
        .iter()
        .map(|&[a, b, c]| {
            [[a, b], [a, c], [b, c]]
                .iter()
                .map(|&[p, q]| 1u64 << x.edge_id(p, q).unwrap())
                .fold(0, |m, e| m ^ e)
        })
        .collect()
}

/// Every nonzero face subset with empty boundary.
fn brute_cycles(x: &Complex2) -> Vec<u32> {
    let masks = face_edge_masks(x);
    let m = masks.len();
    assert!(m <= 24);
    (1u32..1 << m)
        .filter(|s| {
            (0..m)
                .filter(|i| s >> i & 1 == 1)
                .fold(0u64, |acc, i| acc ^ masks[i])
                == 0
        })
        .collect()
}

/// Cycles with no nonzero cycle strictly inside.
fn brute_minimal(cycles: &[u32]) -> BTreeSet<u32> {
    cycles
        .iter()
        .copied()
        .filter(|&c| !cycles.iter().any(|&d| d != c && d & c == d))
        .collect()
}

fn as_mask(faces: impl IntoIterator<Item = usize>) -> u32 {
    faces.into_iter().fold(0, |m, i| m | 1 << i)
}

#[test]
fn delta5_cycles_by_subset_enumeration() {
    let x = Complex2::full_skeleton(5);
    let cycles = brute_cycles(&x);
    assert_eq!(cycles.len(), 15);
    let minimal = brute_minimal(&cycles);
    let by_size: BTreeMap<u32, usize> = minimal.iter().fold(BTreeMap::new(), |mut m, c| {
        *m.entry(c.count_ones()).or_default() += 1;
        m
    });
    assert_eq!(by_size, BTreeMap::from([(4, 5), (6, 10)]));

    let found: BTreeSet<u32> = enumerate_minimal_cycles(&x, None, None, &SearchBudget::default())
        .unwrap()
        .iter()
        .map(|c| as_mask(c.support.indices()))
        .collect();
    assert_eq!(found, minimal);
}

#[test]
fn cycle_space_dimension_by_counting() {
    for n in 4..=6 {
        let x = Complex2::full_skeleton(n);
        let count = brute_cycles(&x).len() + 1;
        assert_eq!(count, 1 << cycle_space_dim(&x), "n = {n}");
    }
}

#[test]
fn minimal_cycles_and_girth_on_small_random_complexes() {
    let budget = SearchBudget::default();
    let mut checked = 0;
    for seed in 0..400u64 {
        let n = 5 + (seed % 4) as usize;
        let x = sample_y(n, 0.45, seed).unwrap();
        if x.num_faces() > 12 || x.num_faces() == 0 {
            continue;
        }
        checked += 1;
        let cycles = brute_cycles(&x);
        let minimal = brute_minimal(&cycles);
        let found: BTreeSet<u32> = enumerate_minimal_cycles(&x, None, None, &budget)
            .unwrap()
            .iter()
            .map(|c| as_mask(c.support.indices()))
            .collect();
        assert_eq!(found, minimal, "seed {seed}");
        let girth = cycles.iter().map(|c| c.count_ones() as usize).min();
        assert_eq!(two_girth(&x, &budget).unwrap(), girth, "seed {seed}");
    }
    assert!(checked >= 100, "only {checked} complexes had at most 12 faces");
}

#[test]
fn filling_areas_by_subset_enumeration() {
    let budget = SearchBudget::default();
    for seed in 0..200u64 {
        let x = sample_y(6, 0.5, seed).unwrap();
        if x.num_faces() > 16 {
            continue;
        }
        let target = [[0, 1], [0, 2], [1, 2]]
            .iter()
            .map(|&[p, q]| x.edge_id(p, q).map(|e| 1u64 << e))
            .collect::<Option<Vec<u64>>>();
        let Some(target) = target else { continue };
        let target = target.iter().fold(0, |m, e| m ^ e);
        let masks = face_edge_masks(&x);
        let m = masks.len();
        let best = (1u32..1 << m)
            .filter(|s| (0..m).filter(|i| s >> i & 1 == 1).fold(0, |a, i| a ^ masks[i]) == target)
            .map(|s| s.count_ones() as usize)
            .min();
        let tau = x.triangle_cycle(0, 1, 2).unwrap();
        assert_eq!(filling_area(&x, &tau, &budget).unwrap().area, best, "seed {seed}");
    }
}

#[test]
fn oriented_matching_counts() {
    // (3f - 1)!! matchings of the 3f sides, two orientations per pair.
    for (f, expected) in [(2usize, 15 * 8), (4, 10395 * 64)] {
        let count = std::sync::atomic::AtomicU64::new(0);
        enumerate_closed_gluings(f, EnumOptions::default(), &|_| {
            count.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
        })
        .unwrap();
        assert_eq!(count.into_inner(), expected);
    }
}

#[test]
fn census_agrees_with_labeled_surface_search() {
    let brute = brute_force_surfaces(6, 6).unwrap();
    let census = census_table(6, true).unwrap();
    for f in [2, 4, 6] {
        for w in 1..=8 {
            let expected = brute.get(&(f, w)).map_or(0, |v| v.len() as u64);
            assert_eq!(census.count(f, w), expected, "T({f}, {w})");
        }
    }
    let exhaustive = census_table(4, false).unwrap();
    for w in 1..=6 {
        assert_eq!(exhaustive.count(4, w), census.count(4, w));
    }
}

#[test]
fn canonical_codes_match_brute_isomorphism_up_to_eight_faces() {
    let brute = brute_force_surfaces(6, 8).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut codes = BTreeSet::new();
    let mut total = 0;
    for (&(f, w), reps) in &brute {
        for faces in reps {
            total += 1;
            let c = canonical_form_of_faces(w, faces).unwrap();
            assert_eq!(c.f, f);
            assert_eq!(c.automorphisms, brute_force_automorphisms(w, faces), "{faces:?}");
            // Relabeled copies share the code.
            for _ in 0..10 {
                let mut perm: Vec<usize> = (0..w).collect();
                perm.shuffle(&mut rng);
                let moved: Vec<[usize; 3]> = faces
                    .iter()
                    .map(|t| {
                        let mut u = t.map(|v| perm[v]);
                        u.sort_unstable();
                        u
                    })
                    .collect();
                assert_eq!(canonical_form_of_faces(w, &moved).unwrap().code, c.code);
            }
            codes.insert(c.code);
        }
    }
    // Representatives are pairwise non-isomorphic, so codes are distinct.
    assert_eq!(codes.len(), total);
}
