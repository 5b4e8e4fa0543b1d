//! Random 2-complexes Y(n, p), the induced-subcomplex witness for short
//! cycles in dense complexes, barely-dense subcomplexes and the large-girth
//! construction.

use std::collections::BTreeSet;

use itertools::Itertools;
use rand::seq::index::sample;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitset::rank;
use crate::complex::{cycle_basis, cycle_space_dim, Complex2};
use crate::cycles::{enumerate_minimal_cycles, minimalize_cycle, FillSolver, MinimalCycle, SearchBudget};
use crate::error::{Error, Result};
use crate::rng::{item_uniform, stream_rng, STREAM_ATTEMPTS, STREAM_FACES, STREAM_INDUCED};

/// Parameters of the large-girth construction.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub n: usize,
    pub alpha: f64,
    pub epsilon: f64,
    /// Face probability, `n^(alpha - 1)` unless overridden.
    pub p: f64,
    pub delta: f64,
    /// Vertex bound for small cycles.
    pub m_vertices: usize,
    /// `10^(1 / delta)`.
    pub d_delta: f64,
}

impl ModelParams {
    pub fn new(n: usize, alpha: f64, epsilon: f64) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParams(format!("n = {n} must be at least 3")));
        }
        if !(alpha > 0.0 && alpha < 0.5) {
            return Err(Error::InvalidParams(format!("alpha = {alpha} must lie in (0, 1/2)")));
        }
        if !(epsilon > 0.0) || 2.0 * alpha + epsilon >= 1.0 {
            return Err(Error::InvalidParams(format!(
                "need epsilon > 0 and 2 alpha + epsilon < 1, got alpha = {alpha}, epsilon = {epsilon}"
            )));
        }
        let delta = model_delta(alpha, epsilon);
        Ok(Self {
            n,
            alpha,
            epsilon,
            p: (n as f64).powf(alpha - 1.0),
            delta,
            m_vertices: small_cycle_vertex_bound(alpha),
            d_delta: 10f64.powf(1.0 / delta),
        })
    }

    /// Same parameters with an explicit face probability.
    pub fn with_p(mut self, p: f64) -> Result<Self> {
        check_probability(p)?;
        self.p = p;
        Ok(self)
    }
}

/// `delta = min((1 - 2 alpha) / 4, epsilon / (3 (2 - 2 alpha - epsilon)))`.
pub fn model_delta(alpha: f64, epsilon: f64) -> f64 {
    ((1.0 - 2.0 * alpha) / 4.0).min(epsilon / (3.0 * (2.0 - 2.0 * alpha - epsilon)))
}

/// `M = ceil(8 / (1 - 2 alpha)) + 1`.
pub fn small_cycle_vertex_bound(alpha: f64) -> usize {
    (8.0 / (1.0 - 2.0 * alpha)).ceil() as usize + 1
}

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!("p = {p} must lie in [0, 1]")))
    }
}

/// Y(n, p): complete 1-skeleton, each triangle present independently with
/// probability `p`. The decision for the i-th triangle in lexicographic
/// order depends only on `(seed, i)`.
pub fn sample_y(n: usize, p: f64, seed: u64) -> Result<Complex2> {
    if n < 3 {
        return Err(Error::InvalidParams(format!("n = {n} must be at least 3")));
    }
    check_probability(p)?;
    let mut rng = stream_rng(seed, STREAM_FACES);
    let mut faces = Vec::new();
    let mut index = 0u64;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if item_uniform(&mut rng, index) < p {
                    faces.push([a, b, c]);
                }
                index += 1;
            }
        }
    }
    let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| [a, b]));
    Complex2::with_edges(n, edges, faces)
}

/// Induced subcomplex on a uniformly random `k`-subset of vertices.
/// Returns the relabeled complex and the chosen original vertices.
pub fn sample_induced(x: &Complex2, k: usize, seed: u64) -> Result<(Complex2, Vec<usize>)> {
    sample_induced_stream(x, k, seed, STREAM_INDUCED)
}

fn sample_induced_stream(
    x: &Complex2,
    k: usize,
    seed: u64,
    stream: u64,
) -> Result<(Complex2, Vec<usize>)> {
    if k > x.n() {
        return Err(Error::InvalidParams(format!("k = {k} exceeds n = {}", x.n())));
    }
    let mut rng = stream_rng(seed, stream);
    let chosen = sample(&mut rng, x.n(), k).into_vec();
    Ok(x.induced(&chosen))
}

/// Probability that a fixed face survives in a uniform induced
/// subcomplex on `k` of `n` vertices: `C(n-3, k-3) / C(n, k)`.
pub fn face_retention_probability(n: usize, k: usize) -> f64 {
    if k < 3 {
        return 0.0;
    }
    (0..3).map(|i| (k - i) as f64 / (n - i) as f64).product()
}

/// Result of the induced-subcomplex cycle search.
#[derive(Clone, Debug)]
pub struct SmallCycleWitness {
    /// The cycle, indexed over the faces of the input complex.
    pub cycle: MinimalCycle,
    pub k: usize,
    pub attempts: usize,
    /// Vertices of the successful induced subcomplex.
    pub vertices: Vec<usize>,
    /// Face count threshold a sample had to reach.
    pub threshold: usize,
    /// `4 n^(2 - 2 alpha)`.
    pub face_bound: f64,
    /// Whether the input had at least `n^(2 + alpha)` faces.
    pub precondition_met: bool,
}

/// Size of the induced subcomplex: `ceil(2 n^(1 - alpha))`, capped at `n`.
pub fn induced_size(n: usize, alpha: f64) -> usize {
    ((2.0 * (n as f64).powf(1.0 - alpha)).ceil() as usize).min(n)
}

/// Samples induced subcomplexes on `k` vertices until one has at least
/// `k^2 / 2` faces, which forces a nonzero 2-cycle, and returns a
/// minimalized cycle from it.
pub fn extract_small_cycle(
    x: &Complex2,
    alpha: f64,
    max_attempts: usize,
    seed: u64,
) -> Result<SmallCycleWitness> {
    let n = x.n();
    if n < 3 {
        return Err(Error::InvalidParams(format!("n = {n} must be at least 3")));
    }
    let precondition_met = x.num_faces() as f64 >= (n as f64).powf(2.0 + alpha) * (1.0 - 1e-12);
    if !precondition_met {
        log::warn!(
            "complex has {} faces, below n^(2+alpha) = {:.1}; the search may fail",
            x.num_faces(),
            (n as f64).powf(2.0 + alpha)
        );
    }
    let k = induced_size(n, alpha);
    let threshold = (k * k).div_ceil(2);
    for attempt in 0..max_attempts {
        let (d, vertices) = sample_induced_stream(x, k, seed, STREAM_ATTEMPTS + attempt as u64)?;
        if d.num_faces() < threshold {
            continue;
        }
        let local = minimalize_cycle(&d, &d.all_faces())?;
        let faces: Vec<usize> = local
            .faces(&d)
            .into_iter()
            .map(|f| {
                x.face_id([vertices[f[0]], vertices[f[1]], vertices[f[2]]])
                    .expect("induced face exists in the host")
            })
            .collect();
        let cycle = MinimalCycle::from_support(x, x.chain2(faces));
        return Ok(SmallCycleWitness {
            cycle,
            k,
            attempts: attempt + 1,
            vertices,
            threshold,
            face_bound: 4.0 * (n as f64).powf(2.0 - 2.0 * alpha),
            precondition_met,
        });
    }
    Err(Error::AttemptsExhausted(max_attempts))
}

/// A vertex set with exactly `2v - 4` faces chosen inside it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BarelyDense {
    pub vertices: Vec<usize>,
    /// Face indices in the host complex.
    pub faces: Vec<usize>,
    /// Whether the chosen faces touch every vertex of the set.
    pub covers_all: bool,
}

/// Pairwise face masks: bit `c` of `masks[a * n + b]` is set when `abc` is
/// a face. Requires `n <= 64`.
struct PairMasks {
    n: usize,
    masks: Vec<u64>,
}

impl PairMasks {
    fn new(x: &Complex2) -> Result<Self> {
        let n = x.n();
        if n > 64 {
            return Err(Error::InvalidParams(format!(
                "vertex-subset sweeps support n <= 64, got {n}"
            )));
        }
        let mut masks = vec![0u64; n * n];
        for &[a, b, c] in x.faces() {
            for (p, q, r) in [(a, b, c), (a, c, b), (b, c, a)] {
                masks[p * n + q] |= 1 << r;
                masks[q * n + p] |= 1 << r;
            }
        }
        Ok(Self { n, masks })
    }

    /// Faces `{a, b, u}` with `a, b` in `set`.
    fn added_faces(&self, set: u64, u: usize) -> usize {
        let mut twice = 0;
        let mut rest = set;
        while rest != 0 {
            let a = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            twice += (self.masks[u * self.n + a] & set).count_ones() as usize;
        }
        twice / 2
    }

    /// Visits `set` and every extension of it by vertices numbered `next`
    /// or higher, up to `max_size` vertices, passing the face count.
    fn sweep(
        &self,
        set: u64,
        size: usize,
        faces: usize,
        next: usize,
        max_size: usize,
        visit: &mut dyn FnMut(u64, usize, usize),
    ) {
        visit(set, size, faces);
        if size == max_size {
            return;
        }
        for u in next..self.n {
            if set >> u & 1 == 1 {
                continue;
            }
            let f = faces + self.added_faces(set, u);
            self.sweep(set | 1 << u, size + 1, f, u + 1, max_size, visit);
        }
    }
}

fn binom_f64(n: f64, k: usize) -> f64 {
    if k as f64 > n {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, i| acc * (n - i as f64) / (i + 1) as f64)
}

fn binom_u128(n: usize, k: usize) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)? / (i + 1) as u128;
    }
    Some(acc)
}

/// Every barely-dense pair on at most `max_vertices` vertices. Fails with a
/// budget error once more than `limit` pairs are found.
pub fn enumerate_barely_dense(
    x: &Complex2,
    max_vertices: usize,
    limit: u64,
) -> Result<Vec<BarelyDense>> {
    if max_vertices < 4 {
        return Err(Error::InvalidParams("barely-dense sweeps need M >= 4".into()));
    }
    let pm = PairMasks::new(x)?;
    let mut sets = Vec::new();
    pm.sweep(0, 0, 0, 0, max_vertices.min(x.n()), &mut |set, v, f| {
        if v >= 4 && f >= 2 * v - 4 {
            sets.push(set);
        }
    });
    let mut out = Vec::new();
    for set in sets {
        let vertices: Vec<usize> = (0..x.n()).filter(|&v| set >> v & 1 == 1).collect();
        let inside: Vec<usize> = (0..x.num_faces())
            .filter(|&i| x.faces()[i].iter().all(|&v| set >> v & 1 == 1))
            .collect();
        for chosen in inside.iter().copied().combinations(2 * vertices.len() - 4) {
            if out.len() as u64 >= limit {
                return Err(Error::BudgetExceeded { nodes: limit });
            }
            let touched: BTreeSet<usize> = chosen.iter().flat_map(|&i| x.faces()[i]).collect();
            out.push(BarelyDense {
                covers_all: touched.len() == vertices.len(),
                vertices: vertices.clone(),
                faces: chosen,
            });
        }
    }
    Ok(out)
}

/// Totals of barely-dense pairs, by vertex count.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BarelyDenseCount {
    /// `(v, count)` for `v = 4..=M`, counts as floating point.
    pub by_vertices: Vec<(usize, f64)>,
    pub total: f64,
    /// Exact total, when it fits in 128 bits.
    pub exact_total: Option<u128>,
}

/// Sum over vertex sets `V` with `4 <= |V| <= M` of `C(f_V, 2|V| - 4)`,
/// where `f_V` counts faces inside `V`.
pub fn count_barely_dense(x: &Complex2, max_vertices: usize) -> Result<BarelyDenseCount> {
    let pm = PairMasks::new(x)?;
    let n = x.n();
    let m = max_vertices.min(n);
    // Split the sweep by the least vertex of the set.
    let parts: Vec<(Vec<f64>, Option<u128>)> = (0..n)
        .into_par_iter()
        .map(|first| {
            let mut by = vec![0.0; m + 1];
            let mut exact = Some(0u128);
            pm.sweep(1 << first, 1, 0, first + 1, m, &mut |_, v, f| {
                if v >= 4 && f >= 2 * v - 4 {
                    by[v] += binom_f64(f as f64, 2 * v - 4);
                    exact = exact
                        .zip(binom_u128(f, 2 * v - 4))
                        .and_then(|(a, b)| a.checked_add(b));
                }
            });
            (by, exact)
        })
        .collect();
    let mut by = vec![0.0; m + 1];
    let mut exact = Some(0u128);
    for (b, e) in parts {
        for v in 0..=m {
            by[v] += b[v];
        }
        exact = exact.zip(e).and_then(|(a, b)| a.checked_add(b));
    }
    let by_vertices: Vec<(usize, f64)> = (4..=m).map(|v| (v, by[v])).collect();
    Ok(BarelyDenseCount {
        total: by_vertices.iter().map(|p| p.1).sum(),
        by_vertices,
        exact_total: exact,
    })
}

/// Expected number of barely-dense pairs in Y(n, p):
/// `sum_{v=4}^{M} C(n, v) C(C(v, 3), 2v - 4) p^(2v - 4)`.
pub fn expected_barely_dense(n: usize, p: f64, max_vertices: usize) -> f64 {
    (4..=max_vertices.min(n))
        .map(|v| {
            let k = 2 * v - 4;
            binom_f64(n as f64, v) * binom_f64(binom_f64(v as f64, 3), k) * p.powi(k as i32)
        })
        .sum()
}

mod u128_text {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<u128>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(x) => s.serialize_some(&x.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<u128>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|t| t.parse().map_err(D::Error::custom))
            .transpose()
    }
}

/// Statistics of one run of the large-girth construction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstructionReport {
    pub seed: u64,
    pub faces_before: usize,
    pub faces_after: usize,
    /// Inclusion-minimal cycles on at most M vertices in the sample.
    pub small_cycles_found: usize,
    pub faces_deleted: usize,
    /// Barely-dense pairs in the sample, all sizes up to M.
    pub barely_dense_count: f64,
    /// Written as a decimal string since JSON numbers stop at 64 bits.
    #[serde(with = "u128_text")]
    pub barely_dense_exact: Option<u128>,
    /// Expected barely-dense count at these parameters.
    pub barely_dense_expected: f64,
    pub m_vertices: usize,
    /// Every remaining nonzero cycle has at least this many faces.
    pub residual_girth_floor: usize,
    /// Outcome of the independent recheck.
    pub recheck_passed: bool,
}

/// Samples Y(n, p), then removes the lowest face of every inclusion-minimal
/// cycle on at most M vertices that is still intact, processing cycles in
/// lexicographic support order.
pub fn construct_large_girth(
    params: &ModelParams,
    seed: u64,
    budget: &SearchBudget,
) -> Result<(Complex2, ConstructionReport)> {
    let m = params.m_vertices;
    let y = sample_y(params.n, params.p, seed)?;
    let cycles = enumerate_minimal_cycles(&y, None, Some(m), budget)?;
    let mut removed = BTreeSet::new();
    for c in &cycles {
        let faces = c.support.indices();
        if faces.iter().all(|f| !removed.contains(f)) {
            removed.insert(faces[0]);
        }
    }
    let mut z = y.without_faces(&removed);
    let mut extra = 0;
    loop {
        // Deleting faces cannot create cycles; this loop is a safety net.
        let rest = enumerate_minimal_cycles(&z, None, Some(m), budget)?;
        if rest.is_empty() {
            break;
        }
        let mut gone = BTreeSet::new();
        for c in &rest {
            let faces = c.support.indices();
            if faces.iter().all(|f| !gone.contains(f)) {
                gone.insert(faces[0]);
            }
        }
        extra += gone.len();
        z = z.without_faces(&gone);
    }
    let recheck_passed = !has_cycle_on_few_vertices(&z, m)?;
    if !recheck_passed {
        return Err(Error::PropertyViolation(format!(
            "a cycle on at most {m} vertices survived the construction"
        )));
    }
    let bd = count_barely_dense(&y, m)?;
    let report = ConstructionReport {
        seed,
        faces_before: y.num_faces(),
        faces_after: z.num_faces(),
        small_cycles_found: cycles.len(),
        faces_deleted: removed.len() + extra,
        barely_dense_count: bd.total,
        barely_dense_exact: bd.exact_total,
        barely_dense_expected: expected_barely_dense(params.n, params.p, m),
        m_vertices: m,
        residual_girth_floor: 2 * (m + 1) - 4,
        recheck_passed,
    };
    Ok((z, report))
}

/// Removes faces that have an edge of degree one until none remain.
pub fn two_core(x: &Complex2, faces: &[usize]) -> Vec<usize> {
    let mut alive: BTreeSet<usize> = faces.iter().copied().collect();
    let mut deg = vec![0usize; x.num_edges()];
    for &f in &alive {
        for e in x.face_edges(f) {
            deg[e] += 1;
        }
    }
    let mut stack: Vec<usize> = (0..x.num_edges()).filter(|&e| deg[e] == 1).collect();
    while let Some(e) = stack.pop() {
        if deg[e] != 1 {
            continue;
        }
        let f = *x
            .edge_faces(e)
            .iter()
            .find(|f| alive.contains(f))
            .expect("degree-one edge has a live face");
        alive.remove(&f);
        for e2 in x.face_edges(f) {
            deg[e2] -= 1;
            if deg[e2] == 1 {
                stack.push(e2);
            }
        }
    }
    alive.into_iter().collect()
}

/// Whether some nonzero 2-cycle is supported on at most `m` vertices,
/// decided without the face search: by walking the whole cycle space when
/// it is small, and otherwise by rank tests on every `m`-vertex subset of
/// the 2-core.
pub fn has_cycle_on_few_vertices(x: &Complex2, m: usize) -> Result<bool> {
    let dim = cycle_space_dim(x);
    if dim == 0 {
        return Ok(false);
    }
    let core = two_core(x, &(0..x.num_faces()).collect::<Vec<_>>());
    let core_vertices: BTreeSet<usize> = core.iter().flat_map(|&f| x.faces()[f]).collect();
    if core_vertices.len() <= m {
        return Ok(true);
    }
    if dim <= 20 {
        let basis = cycle_basis(x);
        let mut cur = x.empty_chain2().bits;
        let mut use_count = vec![0u32; x.n()];
        let mut used = 0usize;
        for i in 1u64..(1u64 << dim) {
            let g = &basis[i.trailing_zeros() as usize].bits;
            for f in g.iter_ones() {
                let adding = !cur.get(f);
                cur.toggle(f);
                for v in x.faces()[f] {
                    if adding {
                        use_count[v] += 1;
                        if use_count[v] == 1 {
                            used += 1;
                        }
                    } else {
                        use_count[v] -= 1;
                        if use_count[v] == 0 {
                            used -= 1;
                        }
                    }
                }
            }
            if used <= m {
                return Ok(true);
            }
        }
        return Ok(false);
    }
    let verts: Vec<usize> = core_vertices.into_iter().collect();
    let core_set: BTreeSet<usize> = core.into_iter().collect();
    let found = verts
        .iter()
        .copied()
        .combinations(m)
        .par_bridge()
        .any(|subset| {
            let inside: Vec<usize> = core_set
                .iter()
                .copied()
                .filter(|&f| x.faces()[f].iter().all(|v| subset.binary_search(v).is_ok()))
                .collect();
            let sub_core = two_core(x, &inside);
            !sub_core.is_empty() && {
                let cols: Vec<_> = sub_core.iter().map(|&f| x.boundary_column(f)).collect();
                rank(&cols) < cols.len()
            }
        });
    Ok(found)
}

/// One row of the filling experiment.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FillRow {
    pub seed: u64,
    pub n: usize,
    pub alpha: f64,
    pub p: f64,
    pub faces: usize,
    /// Filling area of the triangle on vertices 0, 1, 2.
    pub area: Option<usize>,
    /// Vertex sets V containing 0, 1, 2 with |V| <= M and at least
    /// 2|V| - 5 faces inside V.
    pub small_filling_sets: u64,
    pub small_filling: bool,
    pub status: String,
}

/// Vertex sets containing {0, 1, 2}, of size at most `m`, spanning at least
/// `2v - 5` faces.
pub fn count_small_filling_sets(x: &Complex2, m: usize) -> Result<u64> {
    let pm = PairMasks::new(x)?;
    if x.n() < 3 {
        return Ok(0);
    }
    let base = 0b111u64;
    let base_faces = usize::from(x.face_id([0, 1, 2]).is_some());
    let mut count = 0u64;
    pm.sweep(base, 3, base_faces, 3, m.min(x.n()), &mut |_, v, f| {
        if f + 5 >= 2 * v {
            count += 1;
        }
    });
    Ok(count)
}

/// Runs one filling instance.
pub fn fill_instance(params: &ModelParams, seed: u64, budget: &SearchBudget) -> Result<FillRow> {
    let y = sample_y(params.n, params.p, seed)?;
    let tau = y.triangle_cycle(0, 1, 2)?;
    let small = count_small_filling_sets(&y, params.m_vertices)?;
    let mut row = FillRow {
        seed,
        n: params.n,
        alpha: params.alpha,
        p: params.p,
        faces: y.num_faces(),
        area: None,
        small_filling_sets: small,
        small_filling: small > 0,
        status: "ok".into(),
    };
    match FillSolver::new(&y, *budget).fill(&tau) {
        Ok(r) => row.area = r.area,
        Err(Error::BudgetExceeded { .. }) => row.status = "budget_exceeded".into(),
        Err(e) => return Err(e),
    }
    Ok(row)
}

/// Filling areas of the triangle on {0, 1, 2} across seeds, sorted by seed.
/// Budget overruns are recorded in the row status.
pub fn fill_experiment(
    params: &ModelParams,
    seeds: &[u64],
    budget: &SearchBudget,
) -> Result<Vec<FillRow>> {
    if seeds.is_empty() {
        return Err(Error::EmptySeedList);
    }
    let mut rows: Vec<FillRow> = seeds
        .par_iter()
        .map(|&s| fill_instance(params, s, budget))
        .collect::<Result<_>>()?;
    rows.sort_by_key(|r| r.seed);
    Ok(rows)
}

/// Median of the finite areas, if any.
pub fn median_area(rows: &[FillRow]) -> Option<f64> {
    let mut a: Vec<usize> = rows.iter().filter_map(|r| r.area).collect();
    if a.is_empty() {
        return None;
    }
    a.sort_unstable();
    let k = a.len();
    Some(if k % 2 == 1 {
        a[k / 2] as f64
    } else {
        (a[k / 2 - 1] + a[k / 2]) as f64 / 2.0
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameter_formulas() {
        let p = ModelParams::new(25, 0.25, 0.1).unwrap();
        assert_eq!(p.m_vertices, 17);
        assert!((p.delta - (0.1 / (3.0 * 1.4))).abs() < 1e-12);
        assert!((p.p - 25f64.powf(-0.75)).abs() < 1e-12);
        assert_eq!(small_cycle_vertex_bound(0.2), 15);
        assert!(ModelParams::new(25, 0.3, 0.5).is_err());
        assert!(ModelParams::new(25, 0.0, 0.1).is_err());
    }

    #[test]
    fn sampling_extremes_and_determinism() {
        assert_eq!(sample_y(7, 1.0, 3).unwrap(), Complex2::full_skeleton(7));
        let empty = sample_y(7, 0.0, 3).unwrap();
        assert_eq!((empty.num_faces(), empty.num_edges()), (0, 21));
        assert_eq!(sample_y(12, 0.4, 5).unwrap(), sample_y(12, 0.4, 5).unwrap());
        assert_ne!(sample_y(12, 0.4, 5).unwrap(), sample_y(12, 0.4, 6).unwrap());
    }

    #[test]
    fn induced_extremes() {
        let x = Complex2::full_skeleton(6);
        let (all, map) = sample_induced(&x, 6, 1).unwrap();
        assert_eq!(all, x);
        assert_eq!(map, (0..6).collect::<Vec<_>>());
        assert_eq!(sample_induced(&x, 0, 1).unwrap().0.n(), 0);
    }

    #[test]
    fn barely_dense_examples() {
        let t = enumerate_barely_dense(&Complex2::tetrahedron(), 4, 100).unwrap();
        assert_eq!(t.len(), 1);
        assert!(t[0].covers_all);
        let three = Complex2::new(6, [[0, 1, 2], [0, 1, 3], [2, 4, 5]]).unwrap();
        assert!(enumerate_barely_dense(&three, 10, 100).unwrap().is_empty());
        let b = enumerate_barely_dense(&Complex2::bipyramid(), 5, 100).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].vertices.len(), 5);
        assert_eq!(count_barely_dense(&Complex2::bipyramid(), 5).unwrap().exact_total, Some(1));
    }

    #[test]
    fn core_peeling() {
        let t = Complex2::tetrahedron();
        assert_eq!(two_core(&t, &[0, 1, 2, 3]).len(), 4);
        assert!(two_core(&t, &[0, 1, 2]).is_empty());
    }
}
