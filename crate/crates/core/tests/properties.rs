use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use twogirth::census::brute::brute_force_surfaces;
use twogirth::complex::{boundary1, boundary2, homology_ranks, is_cycle2, Chain2, Complex2};
use twogirth::cycles::{
    enumerate_minimal_cycles, filling_area, is_inclusion_minimal, two_girth, SearchBudget,
};
use twogirth::dense::{edge_pair_count, find_suspension_cycle, link_intersection};
use twogirth::gluing::story::{random_story, random_surface_story, trace_story};
use twogirth::gluing::verify::beta_split_check;
use twogirth::gluing::{classify_move, new_state, MoveType, PotentialParams};
use twogirth::random_model::{count_barely_dense, enumerate_barely_dense, sample_y};

fn complex_strategy(max_n: usize) -> impl Strategy<Value = Complex2> {
    sparse_complex_strategy(max_n, 0.9)
}

fn sparse_complex_strategy(max_n: usize, max_p: f64) -> impl Strategy<Value = Complex2> {
    (4..=max_n, 0.1f64..max_p, any::<u64>()).prop_map(|(n, p, seed)| sample_y(n, p, seed).unwrap())
}

/// Minimal cycles are listed up to this many faces; dense complexes on
/// eight vertices have hundreds of thousands of larger ones.
const MAX_CYCLE_FACES: usize = 10;

fn chain_of(x: &Complex2, mask: &[bool]) -> Chain2 {
    x.chain2((0..x.num_faces()).filter(|&i| mask[i % mask.len()]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn boundary_of_boundary_vanishes(x in complex_strategy(10), mask in prop::collection::vec(any::<bool>(), 1..64)) {
        let c = chain_of(&x, &mask);
        let b = boundary2(&c, &x).unwrap();
        prop_assert!(boundary1(&b, &x).unwrap().is_zero());
    }

    #[test]
    fn boundary_is_linear(
        x in complex_strategy(10),
        m1 in prop::collection::vec(any::<bool>(), 1..64),
        m2 in prop::collection::vec(any::<bool>(), 1..64),
    ) {
        let a = chain_of(&x, &m1);
        let b = chain_of(&x, &m2);
        let lhs = boundary2(&a.xor(&b), &x).unwrap();
        let rhs = boundary2(&a, &x).unwrap().xor(&boundary2(&b, &x).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn rank_nullity(x in complex_strategy(10)) {
        let h = homology_ranks(&x);
        prop_assert_eq!(h.dim_z2 + h.dim_b1, x.num_faces());
    }

    #[test]
    fn edge_degrees_sum_to_three_per_face(x in complex_strategy(10)) {
        let total: usize = (0..x.num_edges()).map(|e| x.edge_degree(e)).sum();
        prop_assert_eq!(total, 3 * x.num_faces());
    }

    #[test]
    fn link_intersections_count_edge_pairs(x in complex_strategy(9)) {
        let mut total = 0u64;
        for a in 0..x.n() {
            for b in a + 1..x.n() {
                total += link_intersection(&x, a, b).unwrap().num_edges() as u64;
            }
        }
        prop_assert_eq!(total, edge_pair_count(&x));
    }

    #[test]
    fn suspension_cycles_are_cycles(x in complex_strategy(9)) {
        if let Some(s) = find_suspension_cycle(&x).unwrap() {
            prop_assert!(is_cycle2(&s.chain, &x).unwrap());
            prop_assert_eq!(s.chain.weight(), 2 * s.equator.len());
            let g = two_girth(&x, &SearchBudget::default()).unwrap().unwrap();
            prop_assert!(g <= 2 * s.equator.len());
        }
    }

    #[test]
    fn barely_dense_pairs_have_2v_minus_4_faces(x in complex_strategy(8)) {
        for bd in enumerate_barely_dense(&x, 5, 1 << 24).unwrap() {
            prop_assert_eq!(bd.faces.len(), 2 * bd.vertices.len() - 4);
            let vs: BTreeSet<usize> = bd.vertices.iter().copied().collect();
            for &f in &bd.faces {
                prop_assert!(x.faces()[f].iter().all(|v| vs.contains(v)));
            }
        }
        let listed = enumerate_barely_dense(&x, 5, 1 << 24).unwrap().len() as f64;
        prop_assert_eq!(count_barely_dense(&x, 5).unwrap().total, listed);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn minimal_cycles_obey_the_euler_identity_and_range(x in sparse_complex_strategy(9, 0.6)) {
        let budget = SearchBudget::default();
        let cycles = enumerate_minimal_cycles(&x, Some(MAX_CYCLE_FACES), None, &budget).unwrap();
        for c in &cycles {
            prop_assert!(is_cycle2(&c.support, &x).unwrap());
            prop_assert!(is_inclusion_minimal(&x, &c.support).unwrap());
            prop_assert_eq!(c.euler(), 2 - c.beta1 as i64);
            prop_assert!(2 * c.e <= 3 * c.f);
            prop_assert!((c.v * c.v) as f64 >= 2.0 * c.f as f64);
            prop_assert!(2 * c.v <= c.f + 4);
            // Every small cycle meets the 2v - 4 face count.
            prop_assert!(c.f + 4 >= 2 * c.v);
        }
        let girth = two_girth(&x, &budget).unwrap().filter(|&g| g <= MAX_CYCLE_FACES);
        prop_assert_eq!(girth, cycles.iter().map(|c| c.f).min());
    }

    #[test]
    fn minimal_fillers_close_up_into_minimal_cycles(x in complex_strategy(8)) {
        let budget = SearchBudget::default();
        let Ok(tau) = x.triangle_cycle(0, 1, 2) else { return Ok(()); };
        let r = filling_area(&x, &tau, &budget).unwrap();
        let Some(filler) = r.filler else { return Ok(()); };
        prop_assert!(r.area.unwrap() <= x.num_faces());
        prop_assert_eq!(boundary2(&filler, &x).unwrap(), tau);
        if x.face_id([0, 1, 2]).is_some() {
            prop_assert_eq!(r.area, Some(1));
            return Ok(());
        }
        let mut faces: Vec<[usize; 3]> = x.chain_faces(&filler);
        faces.push([0, 1, 2]);
        let host = Complex2::new(x.n(), faces.iter().copied()).unwrap();
        let all = host.all_faces();
        prop_assert!(is_cycle2(&all, &host).unwrap());
        prop_assert!(is_inclusion_minimal(&host, &all).unwrap());
    }

    #[test]
    fn gluing_invariants_along_random_stories(f in (1usize..=5).prop_map(|k| 2 * k), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let story = random_story(f, &mut rng).unwrap();
        let params = PotentialParams::new(0.5).unwrap();
        let t = trace_story(&story, &params).unwrap();
        prop_assert!(t.closed);
        let mut v_prev = 0usize;
        let mut collapsed = false;
        for (k, step) in t.steps.iter().enumerate() {
            prop_assert_eq!(step.boundary_edges, 3 * f - 2 * (k + 1));
            if matches!(step.move_type, MoveType::B | MoveType::C) {
                prop_assert!(step.near);
            }
            collapsed |= !step.nondegenerate;
            if !collapsed {
                prop_assert_eq!(step.v_int - v_prev, step.move_type.index());
            }
            v_prev = step.v_int;
        }
        if !collapsed {
            prop_assert_eq!(t.v, t.type_counts[1] + 2 * t.type_counts[2]);
            prop_assert!(t.v <= 2 * t.n_near);
        }
    }
}

#[test]
fn start_moves_are_type_a() {
    let s = new_state(4).unwrap();
    assert_eq!(classify_move(&s, 0, 3).unwrap(), MoveType::A);
}

#[test]
fn beta_split_holds_up_to_200() {
    for delta in [0.5, 0.2, 0.1] {
        let r = beta_split_check(delta, 200).unwrap();
        assert!(r.holds(), "delta = {delta}: {r:?}");
    }
}

#[test]
fn surface_stories_never_see_a_loop_of_length_one() {
    let surfaces = brute_force_surfaces(6, 8).unwrap();
    let params = PotentialParams::new(0.2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for reps in surfaces.values() {
        for faces in reps {
            for _ in 0..50 {
                let story = random_surface_story(faces, &mut rng).unwrap();
                let t = trace_story(&story, &params).unwrap();
                assert!(t.surface);
                assert!(t.violations.is_empty(), "{:?}", t.violations);
                for s in &t.steps {
                    assert!(s.loops.iter().all(|&l| l >= 2), "{:?}", s.loops);
                }
            }
        }
    }
}
