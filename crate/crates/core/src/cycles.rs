//! Exact 2-girth, inclusion-minimal cycle enumeration, greedy
//! minimalization and filling areas.
//!
//! Two search engines are used. When the relevant linear space has small
//! dimension every element is visited in Gray-code order. Otherwise a
//! branch-and-bound over faces runs: the current face set `S` has an odd
//! boundary set, the branching edge is the odd edge with fewest usable faces,
//! and the i-th branch adds the i-th face while forbidding the earlier ones,
//! so each face set is reached at most once.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitset::{rank, rank_and_kernel, BitVec, EchelonBasis};
use crate::complex::{boundary2, homology_ranks, is_cycle1, Chain1, Chain2, Complex2};
use crate::error::{Error, Result};

/// Limits for the exact searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    /// Node limit for branch-and-bound.
    pub max_nodes: u64,
    /// Largest space dimension enumerated exhaustively.
    pub exhaustive_dim: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            max_nodes: 200_000_000,
            exhaustive_dim: 24,
        }
    }
}

impl SearchBudget {
    pub fn with_nodes(max_nodes: u64) -> Self {
        Self {
            max_nodes,
            ..Self::default()
        }
    }
}

/// An inclusion-minimal 2-cycle together with its support statistics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalCycle {
    pub support: Chain2,
    /// Number of faces.
    pub f: usize,
    /// Number of vertices in the support.
    pub v: usize,
    /// Number of edges in the support.
    pub e: usize,
    /// First Betti number of the support subcomplex.
    pub beta1: usize,
}

impl MinimalCycle {
    pub fn from_support(x: &Complex2, support: Chain2) -> Self {
        let sub = x.restrict_to_faces(support.bits.iter_ones());
        let h = homology_ranks(&sub);
        Self {
            f: support.weight(),
            v: x.chain_vertices(&support).len(),
            e: x.chain_edges(&support).len(),
            beta1: h.beta1,
            support,
        }
    }

    /// `v - e + f` on the support.
    pub fn euler(&self) -> i64 {
        self.v as i64 - self.e as i64 + self.f as i64
    }

    pub fn faces(&self, x: &Complex2) -> Vec<[usize; 3]> {
        x.chain_faces(&self.support)
    }
}

/// Minimum-weight filler of a 1-cycle, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FillResult {
    pub filler: Option<Chain2>,
    pub area: Option<usize>,
}

/// Rank of the boundary map restricted to the listed faces.
pub fn rank_of_faces(x: &Complex2, faces: &[usize]) -> usize {
    let cols: Vec<BitVec> = faces.iter().map(|&i| x.boundary_column(i)).collect();
    rank(&cols)
}

/// A cycle is inclusion-minimal exactly when its support carries a
/// one-dimensional cycle space.
pub fn is_inclusion_minimal(x: &Complex2, c: &Chain2) -> Result<bool> {
    if c.is_zero() || !boundary2(c, x)?.is_zero() {
        return Ok(false);
    }
    let faces = c.indices();
    Ok(rank_of_faces(x, &faces) + 1 == faces.len())
}

/// Cycle-space data reused across queries on one complex.
struct CycleSpace {
    basis: EchelonBasis,
    kernel: Vec<BitVec>,
    /// Faces lying in the support of some cycle.
    support: Vec<bool>,
}

impl CycleSpace {
    fn new(x: &Complex2) -> Self {
        let (_, kernel, basis) = rank_and_kernel(&x.boundary2_columns(), x.num_edges());
        let mut support = vec![false; x.num_faces()];
        for k in &kernel {
            for i in k.iter_ones() {
                support[i] = true;
            }
        }
        Self {
            basis,
            kernel,
            support,
        }
    }
}

/// Lexicographic comparison of two equal-weight supports: the one holding
/// the lowest differing index is smaller.
fn lex_less(a: &BitVec, b: &BitVec) -> bool {
    let mut d = a.clone();
    d.xor_assign(b);
    match d.lowest_one() {
        Some(i) => a.get(i),
        None => false,
    }
}

/// Minimum-weight element of `offset + span(gens)` (nonzero when `offset`
/// is `None`), visiting every element in Gray-code order.
fn gray_code_min(gens: &[BitVec], offset: Option<&BitVec>, len: usize) -> Option<BitVec> {
    let k = gens.len();
    let mut cur = offset.cloned().unwrap_or_else(|| BitVec::zeros(len));
    let mut best: Option<(usize, BitVec)> = None;
    if offset.is_some() {
        best = Some((cur.count_ones(), cur.clone()));
    }
    for i in 1u64..(1u64 << k) {
        cur.xor_assign(&gens[i.trailing_zeros() as usize]);
        let w = cur.count_ones();
        if offset.is_none() && w == 0 {
            continue;
        }
        let better = match &best {
            None => true,
            Some((bw, bv)) => w < *bw || (w == *bw && lex_less(&cur, bv)),
        };
        if better {
            best = Some((w, cur.clone()));
        }
    }
    best.map(|(_, v)| v)
}

/// Branch-and-bound over faces. See the module docs.
struct FaceDfs<'a> {
    x: &'a Complex2,
    allowed: &'a [bool],
    in_s: Vec<bool>,
    forbidden: Vec<u32>,
    odd: BitVec,
    odd_count: usize,
    vertex_use: Vec<u32>,
    vertex_count: usize,
    max_vertices: usize,
    chosen: Vec<usize>,
    nodes: &'a AtomicU64,
    max_nodes: u64,
}

impl<'a> FaceDfs<'a> {
    fn new(
        x: &'a Complex2,
        allowed: &'a [bool],
        target: &BitVec,
        max_vertices: usize,
        nodes: &'a AtomicU64,
        max_nodes: u64,
    ) -> Self {
        Self {
            x,
            allowed,
            in_s: vec![false; x.num_faces()],
            forbidden: vec![0; x.num_faces()],
            odd: target.clone(),
            odd_count: target.count_ones(),
            vertex_use: vec![0; x.n()],
            vertex_count: 0,
            max_vertices,
            chosen: Vec::new(),
            nodes,
            max_nodes,
        }
    }

    fn toggle_face(&mut self, g: usize, add: bool) {
        self.in_s[g] = add;
        for e in self.x.face_edges(g) {
            if self.odd.get(e) {
                self.odd_count -= 1;
            } else {
                self.odd_count += 1;
            }
            self.odd.toggle(e);
        }
        for v in self.x.faces()[g] {
            if add {
                if self.vertex_use[v] == 0 {
                    self.vertex_count += 1;
                }
                self.vertex_use[v] += 1;
            } else {
                self.vertex_use[v] -= 1;
                if self.vertex_use[v] == 0 {
                    self.vertex_count -= 1;
                }
            }
        }
        if add {
            self.chosen.push(g);
        } else {
            self.chosen.pop();
        }
    }

    fn new_vertices(&self, g: usize) -> usize {
        self.x.faces()[g]
            .iter()
            .filter(|&&v| self.vertex_use[v] == 0)
            .count()
    }

    fn usable(&self, g: usize) -> bool {
        self.allowed[g] && !self.in_s[g] && self.forbidden[g] == 0
    }

    fn forbid(&mut self, g: usize) {
        self.forbidden[g] += 1;
    }

    fn unforbid(&mut self, g: usize) {
        self.forbidden[g] -= 1;
    }

    /// Explore every face set containing the current one. `limit` is the
    /// largest leaf size still of interest; the leaf callback may lower it.
    fn run(&mut self, limit: &mut usize, leaf: &mut dyn FnMut(&[usize]) -> usize) -> Result<()> {
        let seen = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if seen > self.max_nodes {
            return Err(Error::BudgetExceeded { nodes: seen });
        }
        if self.chosen.len() + self.odd_count.div_ceil(3) > *limit {
            return Ok(());
        }
        if self.odd_count == 0 {
            *limit = leaf(&self.chosen);
            return Ok(());
        }
        let mut branch: Option<(usize, usize)> = None;
        for e in self.odd.iter_ones() {
            let c = self
                .x
                .edge_faces(e)
                .iter()
                .filter(|&&g| self.usable(g))
                .count();
            if branch.map_or(true, |(_, bc)| c < bc) {
                branch = Some((e, c));
                if c == 0 {
                    return Ok(());
                }
            }
        }
        let (e, _) = branch.expect("odd set is nonempty");
        let cands: Vec<usize> = self
            .x
            .edge_faces(e)
            .iter()
            .copied()
            .filter(|&g| self.usable(g))
            .collect();
        let mut result = Ok(());
        let mut forbidden_here = 0;
        for &g in &cands {
            if self.vertex_count + self.new_vertices(g) <= self.max_vertices {
                self.toggle_face(g, true);
                result = self.run(limit, leaf);
                self.toggle_face(g, false);
                if result.is_err() {
                    break;
                }
            }
            self.forbid(g);
            forbidden_here += 1;
        }
        for &g in &cands[..forbidden_here] {
            self.unforbid(g);
        }
        result
    }
}

fn nonzero_cycle_search(
    x: &Complex2,
    allowed: &[bool],
    starts: &[usize],
    max_vertices: usize,
    limit: usize,
    nodes: &AtomicU64,
    max_nodes: u64,
    leaf: &mut dyn FnMut(&[usize]) -> usize,
) -> Result<usize> {
    let mut limit = limit;
    let zero = BitVec::zeros(x.num_edges());
    let mut dfs = FaceDfs::new(x, allowed, &zero, max_vertices, nodes, max_nodes);
    // Each start is the least face of the cycles found from it, so it is
    // forbidden for every later start.
    for &f0 in starts {
        if dfs.new_vertices(f0) <= max_vertices && limit >= 1 {
            dfs.toggle_face(f0, true);
            let r = dfs.run(&mut limit, leaf);
            dfs.toggle_face(f0, false);
            r?;
        }
        dfs.forbid(f0);
    }
    Ok(limit)
}

fn allowed_faces(space: &CycleSpace) -> (Vec<bool>, Vec<usize>) {
    let starts = space
        .support
        .iter()
        .enumerate()
        .filter(|(_, &s)| s)
        .map(|(i, _)| i)
        .collect();
    (space.support.clone(), starts)
}

fn compress(v: &BitVec, idx: &[usize]) -> BitVec {
    BitVec::from_indices(idx.len(), idx.iter().enumerate().filter(|(_, &i)| v.get(i)).map(|(k, _)| k))
}

fn expand(v: &BitVec, idx: &[usize], len: usize) -> BitVec {
    BitVec::from_indices(len, v.iter_ones().map(|k| idx[k]))
}

/// A minimum-weight nonzero 2-cycle, ties broken by the lexicographically
/// least support. `None` when the cycle space is trivial.
pub fn min_weight_cycle(x: &Complex2, budget: &SearchBudget) -> Result<Option<Chain2>> {
    let space = CycleSpace::new(x);
    if space.kernel.is_empty() {
        return Ok(None);
    }
    let (allowed, starts) = allowed_faces(&space);
    if space.kernel.len() <= budget.exhaustive_dim {
        let gens: Vec<BitVec> = space.kernel.iter().map(|k| compress(k, &starts)).collect();
        let best = gray_code_min(&gens, None, starts.len()).expect("nonzero space");
        return Ok(Some(Chain2 {
            bits: expand(&best, &starts, x.num_faces()),
        }));
    }
    let nodes = AtomicU64::new(0);
    let upper = space.kernel.iter().map(|k| k.count_ones()).min().unwrap();
    // Pass 1: the minimum weight, improving strictly on the best basis vector.
    let mut best_w = upper;
    nonzero_cycle_search(
        x,
        &allowed,
        &starts,
        usize::MAX,
        upper - 1,
        &nodes,
        budget.max_nodes,
        &mut |s| {
            best_w = best_w.min(s.len());
            s.len() - 1
        },
    )?;
    // Pass 2: the lexicographically least support of that weight. Its least
    // face is the least start admitting any such cycle.
    let mut blocked = vec![false; x.num_faces()];
    for &f0 in &starts {
        let mut local = allowed.clone();
        for (g, b) in blocked.iter().enumerate() {
            if *b {
                local[g] = false;
            }
        }
        let mut found: Option<Vec<usize>> = None;
        nonzero_cycle_search(
            x,
            &local,
            &[f0],
            usize::MAX,
            best_w,
            &nodes,
            budget.max_nodes,
            &mut |s| {
                if s.len() == best_w {
                    let mut sorted = s.to_vec();
                    sorted.sort_unstable();
                    if found.as_ref().map_or(true, |f| sorted < *f) {
                        found = Some(sorted);
                    }
                }
                best_w
            },
        )?;
        if let Some(sup) = found {
            return Ok(Some(x.chain2(sup)));
        }
        blocked[f0] = true;
    }
    unreachable!("a cycle of the minimum weight exists")
}

/// The 2-girth: minimum number of faces in a nonzero 2-cycle.
pub fn two_girth(x: &Complex2, budget: &SearchBudget) -> Result<Option<usize>> {
    Ok(min_weight_cycle(x, budget)?.map(|c| c.weight()))
}

/// Every inclusion-minimal cycle with at most `max_faces` faces and at most
/// `max_vertices` vertices, sorted by support.
pub fn enumerate_minimal_cycles(
    x: &Complex2,
    max_faces: Option<usize>,
    max_vertices: Option<usize>,
    budget: &SearchBudget,
) -> Result<Vec<MinimalCycle>> {
    let space = CycleSpace::new(x);
    if space.kernel.is_empty() {
        return Ok(Vec::new());
    }
    let (allowed, starts) = allowed_faces(&space);
    let max_vertices = max_vertices.unwrap_or(usize::MAX);
    // A minimal cycle on v vertices has at most v^2/2 faces.
    let vertex_face_cap = if max_vertices == usize::MAX {
        usize::MAX
    } else {
        max_vertices * max_vertices / 2
    };
    let limit = max_faces.unwrap_or(usize::MAX).min(vertex_face_cap);
    let nodes = AtomicU64::new(0);
    let per_start: Vec<Result<Vec<Vec<usize>>>> = starts
        .par_iter()
        .enumerate()
        .map(|(k, &f0)| {
            let mut local = allowed.clone();
            for &g in &starts[..k] {
                local[g] = false;
            }
            let mut out = Vec::new();
            nonzero_cycle_search(
                x,
                &local,
                &[f0],
                max_vertices,
                limit,
                &nodes,
                budget.max_nodes,
                &mut |s| {
                    if rank_of_faces(x, s) + 1 == s.len() {
                        let mut sorted = s.to_vec();
                        sorted.sort_unstable();
                        out.push(sorted);
                    }
                    limit
                },
            )?;
            Ok(out)
        })
        .collect();
    let mut all = Vec::new();
    for r in per_start {
        all.extend(r?);
    }
    all.sort();
    all.dedup();
    Ok(all
        .into_iter()
        .map(|s| MinimalCycle::from_support(x, x.chain2(s)))
        .collect())
}

/// Greedily deletes faces of `start`, highest index first, while a nonzero
/// cycle survives. The result is an inclusion-minimal cycle inside the
/// support of `start`.
pub fn minimalize_cycle(x: &Complex2, start: &Chain2) -> Result<MinimalCycle> {
    if start.len() != x.num_faces() {
        return Err(Error::IndexMismatch {
            expected: x.num_faces(),
            got: start.len(),
        });
    }
    let mut keep: Vec<usize> = start.indices();
    if rank_of_faces(x, &keep) == keep.len() {
        return Err(Error::NoCycle);
    }
    let mut pos = keep.len();
    while pos > 0 {
        pos -= 1;
        let mut trial = keep.clone();
        trial.remove(pos);
        if rank_of_faces(x, &trial) < trial.len() {
            keep = trial;
        }
    }
    let support = x.chain2(keep);
    debug_assert!(is_inclusion_minimal(x, &support).unwrap_or(false));
    Ok(MinimalCycle::from_support(x, support))
}

/// Solves boundary equations and minimum-weight fillings on one complex.
pub struct FillSolver<'a> {
    x: &'a Complex2,
    space: CycleSpace,
    budget: SearchBudget,
}

impl<'a> FillSolver<'a> {
    pub fn new(x: &'a Complex2, budget: SearchBudget) -> Self {
        Self {
            x,
            space: CycleSpace::new(x),
            budget,
        }
    }

    /// Some 2-chain with boundary `tau`, or `None` when `tau` is not a
    /// boundary.
    pub fn particular_solution(&self, tau: &Chain1) -> Option<Chain2> {
        let mut residual = tau.bits.clone();
        let combo = self.space.basis.reduce(&mut residual);
        residual.is_zero().then_some(Chain2 { bits: combo })
    }

    pub fn fill(&self, tau: &Chain1) -> Result<FillResult> {
        let x = self.x;
        if tau.len() != x.num_edges() {
            return Err(Error::IndexMismatch {
                expected: x.num_edges(),
                got: tau.len(),
            });
        }
        if !is_cycle1(tau, x)? {
            return Err(Error::NotACycle);
        }
        let Some(y0) = self.particular_solution(tau) else {
            return Ok(FillResult {
                filler: None,
                area: None,
            });
        };
        let filler = if self.space.kernel.len() <= self.budget.exhaustive_dim {
            let idx: Vec<usize> = (0..x.num_faces())
                .filter(|&i| self.space.support[i] || y0.bits.get(i))
                .collect();
            let gens: Vec<BitVec> = self.space.kernel.iter().map(|k| compress(k, &idx)).collect();
            let best = gray_code_min(&gens, Some(&compress(&y0.bits, &idx)), idx.len())
                .expect("offset present");
            Chain2 {
                bits: expand(&best, &idx, x.num_faces()),
            }
        } else {
            self.fill_by_search(tau, &y0)?
        };
        debug_assert_eq!(boundary2(&filler, x).ok().as_ref(), Some(tau));
        let area = filler.weight();
        Ok(FillResult {
            filler: Some(filler),
            area: Some(area),
        })
    }

    fn fill_by_search(&self, tau: &Chain1, y0: &Chain2) -> Result<Chain2> {
        let x = self.x;
        // Faces outside every cycle have the same coefficient in all fillers.
        let forced: Vec<usize> = y0
            .bits
            .iter_ones()
            .filter(|&i| !self.space.support[i])
            .collect();
        let mut target = tau.bits.clone();
        for &g in &forced {
            for e in x.face_edges(g) {
                target.toggle(e);
            }
        }
        let free: Vec<usize> = y0
            .bits
            .iter_ones()
            .filter(|&i| self.space.support[i])
            .collect();
        let mut best: Vec<usize> = free.clone();
        if !target.is_zero() && !free.is_empty() {
            let nodes = AtomicU64::new(0);
            let mut dfs = FaceDfs::new(
                x,
                &self.space.support,
                &target,
                usize::MAX,
                &nodes,
                self.budget.max_nodes,
            );
            let mut limit = free.len() - 1;
            dfs.run(&mut limit, &mut |s| {
                best = s.to_vec();
                s.len().saturating_sub(1)
            })?;
        }
        let mut all = forced;
        if !target.is_zero() {
            all.extend(best);
        }
        Ok(x.chain2(all))
    }
}

/// Minimum number of faces in a 2-chain with boundary `tau`.
pub fn filling_area(x: &Complex2, tau: &Chain1, budget: &SearchBudget) -> Result<FillResult> {
    FillSolver::new(x, *budget).fill(tau)
}

/// Sum over all vertex triples of the squared filling area of the triangle
/// on that triple.
pub fn wiener_fill_index(x: &Complex2, budget: &SearchBudget) -> Result<u64> {
    let n = x.n();
    for a in 0..n {
        for b in a + 1..n {
            if x.edge_id(a, b).is_none() {
                return Err(Error::MissingEdge((a, b)));
            }
        }
    }
    let solver = FillSolver::new(x, *budget);
    let mut total = 0u64;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let tau = x.triangle_cycle(a, b, c)?;
                let area = solver.fill(&tau)?.area.ok_or(Error::Unfillable([a, b, c]))?;
                total += (area * area) as u64;
            }
        }
    }
    Ok(total)
}

/// Faces incident to a vertex set; handy for building induced chains.
pub fn faces_within(x: &Complex2, vertices: &BTreeSet<usize>) -> Vec<usize> {
    (0..x.num_faces())
        .filter(|&i| x.faces()[i].iter().all(|v| vertices.contains(v)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::is_cycle2;

    #[test]
    fn girth_of_small_complexes() {
        let b = SearchBudget::default();
        assert_eq!(two_girth(&Complex2::tetrahedron(), &b).unwrap(), Some(4));
        assert_eq!(two_girth(&Complex2::full_skeleton(6), &b).unwrap(), Some(4));
        assert_eq!(two_girth(&Complex2::new(5, []).unwrap(), &b).unwrap(), None);
        assert_eq!(two_girth(&Complex2::octahedron(), &b).unwrap(), Some(8));
    }

    #[test]
    fn search_path_agrees_with_gray_code() {
        let x = Complex2::full_skeleton(7);
        let gray = min_weight_cycle(&x, &SearchBudget::default()).unwrap().unwrap();
        let forced = SearchBudget {
            exhaustive_dim: 0,
            ..SearchBudget::default()
        };
        let dfs = min_weight_cycle(&x, &forced).unwrap().unwrap();
        assert_eq!(gray, dfs);
        assert!(is_cycle2(&dfs, &x).unwrap());
        assert_eq!(dfs.weight(), 4);
    }

    #[test]
    fn minimal_cycles_of_delta5() {
        let x = Complex2::full_skeleton(5);
        let cycles = enumerate_minimal_cycles(&x, None, None, &SearchBudget::default()).unwrap();
        assert_eq!(cycles.len(), 15);
        assert_eq!(cycles.iter().filter(|c| c.f == 4).count(), 5);
        assert_eq!(cycles.iter().filter(|c| c.f == 6).count(), 10);
    }

    #[test]
    fn minimalize_examples() {
        let t = Complex2::tetrahedron();
        assert_eq!(minimalize_cycle(&t, &t.all_faces()).unwrap().f, 4);
        assert!(matches!(minimalize_cycle(&t, &t.chain2([0])), Err(Error::NoCycle)));
        let d5 = Complex2::full_skeleton(5);
        let c = minimalize_cycle(&d5, &d5.all_faces()).unwrap();
        assert!([4, 6].contains(&c.f));
        assert!(is_inclusion_minimal(&d5, &c.support).unwrap());
    }

    #[test]
    fn filling_examples() {
        let b = SearchBudget::default();
        for n in 3..=8 {
            let x = Complex2::full_skeleton(n);
            let tau = x.triangle_cycle(0, 1, 2).unwrap();
            assert_eq!(filling_area(&x, &tau, &b).unwrap().area, Some(1), "n = {n}");
        }
        let cut = Complex2::new(4, [[0, 1, 3], [0, 2, 3], [1, 2, 3]]).unwrap();
        let tau = cut.triangle_cycle(0, 1, 2).unwrap();
        assert_eq!(filling_area(&cut, &tau, &b).unwrap().area, Some(3));
        let bare = Complex2::with_edges(3, [[0, 1], [0, 2], [1, 2]], []).unwrap();
        let tau = bare.triangle_cycle(0, 1, 2).unwrap();
        assert_eq!(filling_area(&bare, &tau, &b).unwrap().area, None);
        let not_cycle = bare.empty_chain1().xor(&Chain1::from_indices(3, [0]));
        assert!(matches!(filling_area(&bare, &not_cycle, &b), Err(Error::NotACycle)));
    }

    #[test]
    fn wiener_examples() {
        let b = SearchBudget::default();
        assert_eq!(wiener_fill_index(&Complex2::full_skeleton(4), &b).unwrap(), 4);
        assert_eq!(wiener_fill_index(&Complex2::full_skeleton(5), &b).unwrap(), 10);
        let cut = Complex2::new(4, [[0, 1, 3], [0, 2, 3], [1, 2, 3]]).unwrap();
        assert_eq!(wiener_fill_index(&cut, &b).unwrap(), 12);
    }
}
