//! Acceptance suite: one numbered criterion per function, each printing a
//! single PASS or FAIL line followed by its measurements.
//!
//! ```bash
//! cargo test --release --test acceptance
//! ```
//!
//! Runs without the libtest harness so the lines always reach stdout. The
//! process exits nonzero if any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{Duration, Instant};

use twogirth::census::brute::brute_force_surfaces;
use twogirth::census::canon::{brute_force_automorphisms, canonical_form_of_faces};
use twogirth::census::orbit::orbit_stabilizer_check;
use twogirth::census::{census_table, enumerate_closed_gluings, surfaces_with_faces, EnumOptions};
use twogirth::cli::{parse_seeds, run_fill_batch};
use twogirth::complex::{cycle_space_dim, is_cycle2, Complex2};
use twogirth::cycles::{enumerate_minimal_cycles, filling_area, wiener_fill_index, SearchBudget};
use twogirth::dense::find_suspension_cycle;
use twogirth::error::Result;
use twogirth::gluing::story::{disjoint_tetrahedra_story, run_story, tetrahedron_story};
use twogirth::gluing::verify::{exhaustive_verify, sampled_verify, StorySource};
use twogirth::gluing::PotentialParams;
use twogirth::random_model::{
    construct_large_girth, extract_small_cycle, has_cycle_on_few_vertices, median_area,
    sample_y, ModelParams,
};

const DELTAS: [f64; 2] = [0.5, 0.2];

struct Outcome {
    pass: bool,
    detail: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Self {
            pass: true,
            detail: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        let what = what.into();
        if !ok {
            self.pass = false;
            self.detail.push(format!("failed: {what}"));
        } else {
            self.detail.push(what);
        }
    }

    fn note(&mut self, what: impl Into<String>) {
        self.detail.push(what.into());
    }

    fn within(&mut self, start: Instant, limit: Duration, what: &str) {
        let took = start.elapsed();
        self.check(took <= limit, format!("{what} took {took:.2?} (limit {limit:?})"));
    }
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

fn c1_gluing_count() -> Result<Outcome> {
    let mut o = Outcome::new();
    let start = Instant::now();
    let count = AtomicU64::new(0);
    enumerate_closed_gluings(2, EnumOptions::default(), &|_| {
        count.fetch_add(1, Ordering::Relaxed);
    })?;
    let matchings = count.into_inner();
    o.within(start, Duration::from_secs(1), "f = 2 enumeration");
    o.check(matchings == 120, format!("{matchings} oriented matchings (expected 120)"));
    let stories = matchings * factorial(3) * 8;
    let formula = factorial(6) * 8;
    o.check(
        stories == 5760 && formula == 5760,
        format!("{matchings} * 3! * 2^3 = {stories}, (3f)! 2^(3f/2) = {formula}"),
    );
    let rep = exhaustive_verify(2, &[0.5])?;
    o.check(rep.closed_matchings == 120, "state sweep reaches 120 closed matchings");
    Ok(o)
}

fn c2_census() -> Result<Outcome> {
    let mut o = Outcome::new();
    let start = Instant::now();
    let exhaustive = census_table(4, false)?;
    o.within(start, Duration::from_secs(10), "unpruned census to f = 4");
    for w in 1..=6 {
        let want = u64::from(w == 4);
        o.check(exhaustive.count(4, w) == want, format!("T(4,{w}) = {}", exhaustive.count(4, w)));
    }
    o.check((1..=4).all(|w| exhaustive.count(2, w) == 0), "T(2, w) = 0 for all w");

    let start = Instant::now();
    let pruned = census_table(6, true)?;
    o.within(start, Duration::from_secs(600), "pruned census to f = 6");
    for w in 1..=8 {
        let want = u64::from(w == 5);
        o.check(pruned.count(6, w) == want, format!("T(6,{w}) = {}", pruned.count(6, w)));
    }
    for s in &pruned.stats {
        o.note(format!("f = {}: {} matchings visited, {} nodes, {} cuts", s.f, s.visited, s.nodes, s.cuts));
    }

    // Pruning soundness: the pruned and unpruned runs find the same surfaces.
    let (full, _) = surfaces_with_faces(4, false)?;
    let (cut, _) = surfaces_with_faces(4, true)?;
    o.check(
        full.keys().eq(cut.keys()),
        format!("pruned f = 4 keeps all {} surface class(es)", full.len()),
    );

    // Independent labeled search over vertex sets of size at most 6.
    let brute = brute_force_surfaces(6, 6)?;
    for f in [2, 4, 6] {
        for w in 1..=8 {
            let b = brute.get(&(f, w)).map_or(0, |v| v.len() as u64);
            if b != pruned.count(f, w) {
                o.check(false, format!("brute force T({f},{w}) = {b}"));
            }
        }
    }
    o.check(true, "labeled brute-force search agrees for f <= 6");
    Ok(o)
}

fn surface_lists() -> Result<BTreeMap<usize, Vec<Vec<[usize; 3]>>>> {
    let mut by_f: BTreeMap<usize, Vec<Vec<[usize; 3]>>> = BTreeMap::new();
    for ((f, _), reps) in brute_force_surfaces(6, 8)? {
        by_f.entry(f).or_default().extend(reps);
    }
    Ok(by_f)
}

fn c3_potential() -> Result<Outcome> {
    let mut o = Outcome::new();
    for f in [2, 4] {
        let start = Instant::now();
        let r = exhaustive_verify(f, &DELTAS)?;
        o.check(
            r.all_hold(),
            format!(
                "f = {f} exhaustive: {} states, {} transitions, {} closed matchings, violations P1 {} P2 {:?} P3 {:?} nearmoves {:?} ({:.1?})",
                r.states,
                r.transitions,
                r.closed_matchings,
                r.property1_violations,
                r.property2_violations,
                r.property3_violations,
                r.nearmoves_violations,
                start.elapsed()
            ),
        );
        o.note(format!(
            "f = {f}: max rise near {:?} far {:?}; out-of-scope rises into collapsed-edge states {:?}",
            r.max_near_increase, r.max_far_increase, r.property3_degenerate
        ));
    }

    let surfaces = surface_lists()?;
    for f in [6, 8] {
        let sources = [
            ("uniform", StorySource::Uniform),
            ("surface", StorySource::Surfaces(surfaces[&f].clone())),
        ];
        for (name, source) in sources {
            let start = Instant::now();
            let r = sampled_verify(f, 10_000, 20_260 + f as u64, &DELTAS, &source)?;
            o.check(
                r.all_hold(),
                format!(
                    "f = {f}, 10^4 {name} stories: violations {:?}, P3 {:?}, nearmoves {:?} ({:.1?})",
                    r.stories_with_violations,
                    r.property3_violations,
                    r.nearmoves_violations,
                    start.elapsed()
                ),
            );
            o.note(format!(
                "f = {f} {name}: {} surfaces; {} stories pass through collapsed edges, with {:?} out-of-scope rises",
                r.surfaces, r.stories_with_notes, r.property3_degenerate
            ));
            if let Some(v) = &r.first_violation {
                o.note(format!("first violation: {v}"));
            }
        }
    }

    for f in [4, 8, 12] {
        let story = disjoint_tetrahedra_story(f)?;
        for delta in DELTAS {
            let t = run_story(&story, &PotentialParams::new(delta)?)?;
            o.check(
                t.v == t.n_near + t.h,
                format!("{} disjoint tetrahedra, delta {delta}: V = {} = N + H = {} + {}", f / 4, t.v, t.n_near, t.h),
            );
        }
    }
    Ok(o)
}

fn c4_automorphisms() -> Result<Outcome> {
    let mut o = Outcome::new();
    let named = [
        ("tetrahedron", Complex2::tetrahedron(), 24),
        ("octahedron", Complex2::octahedron(), 48),
        ("bipyramid", Complex2::bipyramid(), 12),
    ];
    for (name, x, want) in named {
        let c = canonical_form_of_faces(x.n(), x.faces())?;
        let f = x.num_faces();
        o.check(
            c.automorphisms == want && c.automorphisms <= 6 * f,
            format!("{name}: |Aut| = {} (6f = {})", c.automorphisms, 6 * f),
        );
    }
    let mut checked = 0;
    for ((f, w), reps) in brute_force_surfaces(6, 8)? {
        for faces in reps {
            let flags = canonical_form_of_faces(w, &faces)?.automorphisms;
            let brute = brute_force_automorphisms(w, &faces);
            if flags != brute || flags > 6 * f {
                o.check(false, format!("f = {f}, w = {w}: flags {flags}, brute force {brute}"));
            }
            checked += 1;
        }
    }
    o.check(checked > 0, format!("flag and vertex-permutation counts agree on all {checked} surfaces with f <= 8"));
    Ok(o)
}

fn c5_orbit() -> Result<Outcome> {
    let mut o = Outcome::new();
    let start = Instant::now();
    let r = orbit_stabilizer_check(&tetrahedron_story())?;
    o.within(start, Duration::from_secs(60), "S6 x S4 sweep");
    o.check(r.group_order == 17_280, format!("|G| = {}", r.group_order));
    o.check(
        r.product_matches,
        format!("orbit {} * stabilizer {} = {}", r.orbit, r.stabilizer, r.orbit * r.stabilizer),
    );
    o.check(r.stabilizer <= 24, format!("stabilizer {} <= |Aut| = {:?}", r.stabilizer, r.automorphisms));
    o.check(r.all_isomorphic, "every story in the orbit builds a tetrahedron");
    Ok(o)
}

fn brute_cycles(x: &Complex2) -> Vec<u32> {
    let masks: Vec<u64> = x
        .faces()
        .iter()
        .map(|&[a, b, c]| {
            [[a, b], [a, c], [b, c]]
                .iter()
                .fold(0u64, |m, &[p, q]| m ^ 1 << x.edge_id(p, q).unwrap())
        })
        .collect();
    (1u32..1 << masks.len())
        .filter(|s| (0..masks.len()).filter(|i| s >> i & 1 == 1).fold(0, |a, i| a ^ masks[i]) == 0)
        .collect()
}

fn c6_minimal_cycles() -> Result<Outcome> {
    let mut o = Outcome::new();
    let budget = SearchBudget::default();
    let x = Complex2::full_skeleton(5);
    let all = brute_cycles(&x);
    let minimal: BTreeSet<u32> = all
        .iter()
        .copied()
        .filter(|&c| !all.iter().any(|&d| d != c && d & c == d))
        .collect();
    let mut sizes = BTreeMap::new();
    for c in &minimal {
        *sizes.entry(c.count_ones()).or_insert(0) += 1;
    }
    o.check(all.len() == 15, format!("{} nonzero cycles among 2^10 face subsets", all.len()));
    o.check(sizes == BTreeMap::from([(4, 5), (6, 10)]), format!("minimal by size {sizes:?}"));
    let found: BTreeSet<u32> = enumerate_minimal_cycles(&x, None, None, &budget)?
        .iter()
        .map(|c| c.support.indices().iter().fold(0u32, |m, &i| m | 1 << i))
        .collect();
    o.check(found == minimal, "enumeration matches the subset oracle");

    let mut cycles = 0;
    let mut bad = 0;
    for seed in 0..1000u64 {
        let n = 5 + (seed % 6) as usize;
        let p = 0.1 + 0.2 * (seed as f64 / 1000.0);
        let y = sample_y(n, p, seed)?;
        for c in enumerate_minimal_cycles(&y, None, None, &budget)? {
            cycles += 1;
            let (f, v) = (c.f as f64, c.v as f64);
            let ok = is_cycle2(&c.support, &y)?
                && (2.0 * f).sqrt() <= v
                && v <= f / 2.0 + 2.0
                && c.euler() == 2 - c.beta1 as i64
                && 2 * c.e <= 3 * c.f;
            bad += usize::from(!ok);
        }
    }
    o.check(bad == 0, format!("1000 complexes, n in 5..=10, p in [0.1, 0.3]: {cycles} minimal cycles, {bad} violations"));
    Ok(o)
}

fn c7_homology() -> Result<Outcome> {
    let mut o = Outcome::new();
    for n in 4..=8 {
        let dim = cycle_space_dim(&Complex2::full_skeleton(n));
        let want = binomial(n - 1, 3);
        o.check(dim == want, format!("n = {n}: dim Z_2 = {dim}, C(n-1, 3) = {want}"));
    }
    Ok(o)
}

fn c8_small_cycle() -> Result<Outcome> {
    let mut o = Outcome::new();
    for n in [8usize, 10, 12] {
        let x = Complex2::full_skeleton(n);
        // Largest alpha with C(n, 3) >= n^(2 + alpha).
        let alpha = (binomial(n, 3) as f64).ln() / (n as f64).ln() - 2.0 - 1e-9;
        let mut ok = 0;
        let mut worst: f64 = 0.0;
        for seed in 0..20 {
            if let Ok(w) = extract_small_cycle(&x, alpha, 50, seed) {
                let valid = is_cycle2(&w.cycle.support, &x)? && (w.cycle.f as f64) <= w.face_bound;
                ok += usize::from(valid);
                worst = worst.max(w.cycle.f as f64 / w.face_bound);
            }
        }
        o.check(
            ok >= 19,
            format!(
                "n = {n}, alpha = {alpha:.3}: {ok}/20 seeds succeed within 50 attempts, largest cycle at {:.1}% of 4 n^(2 - 2 alpha)",
                100.0 * worst
            ),
        );
    }
    Ok(o)
}

fn c9_suspension() -> Result<Outcome> {
    let mut o = Outcome::new();
    let mut cases = vec![
        ("bipyramid".to_string(), Complex2::bipyramid(), 6),
        ("octahedron".to_string(), Complex2::octahedron(), 8),
    ];
    for n in 5..=12 {
        cases.push((format!("full skeleton n={n}"), Complex2::full_skeleton(n), 6));
    }
    for (name, x, want) in cases {
        match find_suspension_cycle(&x)? {
            Some(s) => {
                let w = s.chain.weight();
                o.check(
                    w == want && w == 2 * s.equator.len() && is_cycle2(&s.chain, &x)?,
                    format!("{name}: {w} faces, equator {:?}", s.equator),
                );
            }
            None => o.check(false, format!("{name}: no suspension cycle")),
        }
    }
    Ok(o)
}

fn c10_construction() -> Result<Outcome> {
    let mut o = Outcome::new();
    let start = Instant::now();
    let params = ModelParams::new(25, 0.25, 0.1)?;
    let mut worst_fraction: f64 = 0.0;
    let mut residual = 0;
    let mut deleted = 0;
    for seed in 1..=20 {
        let (z, r) = construct_large_girth(&params, seed, &SearchBudget::default())?;
        residual += usize::from(has_cycle_on_few_vertices(&z, params.m_vertices)?);
        worst_fraction = worst_fraction.max(r.faces_deleted as f64 / r.faces_before as f64);
        deleted += r.faces_deleted;
    }
    o.within(start, Duration::from_secs(1800), "20 constructions");
    o.check(
        residual == 0,
        format!("M = {}: {residual} of 20 outputs keep a cycle on <= M vertices", params.m_vertices),
    );
    o.check(
        worst_fraction < 0.05,
        format!("largest deleted fraction {:.2}% ({deleted} faces over all seeds)", 100.0 * worst_fraction),
    );
    Ok(o)
}

fn c11_filling() -> Result<Outcome> {
    let mut o = Outcome::new();
    let budget = SearchBudget::default();
    for n in 3..=12 {
        let x = Complex2::full_skeleton(n);
        let area = filling_area(&x, &x.triangle_cycle(0, 1, 2)?, &budget)?.area;
        if area != Some(1) {
            o.check(false, format!("n = {n}: Fill(012) = {area:?}"));
        }
    }
    o.check(true, "Fill(012) = 1 in the full skeleton for n = 3..=12");
    let tet = Complex2::tetrahedron();
    let punctured = tet.without_faces(&BTreeSet::from([tet.face_id([0, 1, 2]).unwrap()]));
    let area = filling_area(&punctured, &punctured.triangle_cycle(0, 1, 2)?, &budget)?.area;
    o.check(area == Some(3), format!("tetrahedron minus 012: Fill(012) = {area:?}"));
    let w = wiener_fill_index(&Complex2::full_skeleton(4), &budget)?;
    o.check(w == 4, format!("wiener index of the full skeleton on 4 vertices = {w}"));

    let seeds = parse_seeds("1..300")?;
    let rows = run_fill_batch(&[15, 20, 25], 0.2, 0.1, &seeds, &budget)?;
    let mut medians = Vec::new();
    for n in [15, 20, 25] {
        let at_n: Vec<_> = rows.iter().filter(|r| r.n == n).cloned().collect();
        let finite = at_n.iter().filter(|r| r.area.is_some()).count();
        let large: Vec<usize> = at_n.iter().filter_map(|r| r.area).filter(|&a| a > 1).collect();
        let m = median_area(&at_n);
        o.note(format!(
            "n = {n}: {finite}/{} fillable, median finite area {m:?}, {} fillers larger than one face",
            at_n.len(),
            large.len()
        ));
        medians.push(m.unwrap_or(f64::INFINITY));
    }
    o.check(
        medians.windows(2).all(|w| w[0] <= w[1]),
        format!("medians {medians:?} nondecreasing over {} seeds", seeds.len()),
    );
    Ok(o)
}

fn main() {
    let criteria: [(&str, fn() -> Result<Outcome>); 11] = [
        ("gluing count identity", c1_gluing_count),
        ("census exactness", c2_census),
        ("potential-function verifier", c3_potential),
        ("automorphism bound", c4_automorphisms),
        ("orbit-stabilizer", c5_orbit),
        ("minimal-cycle suite", c6_minimal_cycles),
        ("homology rank", c7_homology),
        ("small cycles in dense complexes", c8_small_cycle),
        ("suspension cycles", c9_suspension),
        ("large-girth construction", c10_construction),
        ("filling", c11_filling),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run().unwrap_or_else(|e| Outcome {
            pass: false,
            detail: vec![format!("error: {e}")],
        });
        let tag = if outcome.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {tag}: {name} ({:.1?})", i + 1, start.elapsed());
        for d in &outcome.detail {
            println!("    {d}");
        }
        if !outcome.pass {
            failed.push(i + 1);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 11 criteria pass");
    } else {
        println!("acceptance: failing criteria {failed:?}");
        std::process::exit(1);
    }
}
