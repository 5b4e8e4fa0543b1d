//! Exhaustive enumeration of closed gluings and the census of small
//! triangulated surfaces.

pub mod brute;
pub mod canon;
pub mod orbit;
pub mod sample;

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use rayon::prelude::*;
use serde::Serialize;

pub use canon::{automorphism_count, canonical_form, canonical_form_of_faces, CanonicalSurface};

use crate::error::{Error, Result};
use crate::gluing::{is_triangulated_surface, side_of, GluingMove, GluingState};

/// Largest `f` accepted by the enumerator.
pub const ENUM_MAX_F: usize = 10;
const MAX_EDGES: usize = 3 * ENUM_MAX_F;
const NONE: u8 = u8::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
pub struct EnumOptions {
    /// Cut branches that cannot end in a connected triangulated surface.
    pub prune: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EnumerationSummary {
    pub f: usize,
    pub pruned_mode: bool,
    /// Complete matchings handed to the visitor.
    pub visited: u64,
    /// Search nodes expanded, leaves included.
    pub nodes: u64,
    /// Branches cut by a pruning rule.
    pub cuts: u64,
}

/// A partial matching small enough to copy at every search node.
#[derive(Clone, Copy)]
struct Partial {
    f: usize,
    partner: [u8; MAX_EDGES],
    flip: u32,
    corner: [u8; MAX_EDGES],
    tri: [u8; ENUM_MAX_F],
}

fn find(p: &[u8], mut x: usize) -> usize {
    while p[x] as usize != x {
        x = p[x] as usize;
    }
    x
}

fn union(p: &mut [u8], a: usize, b: usize) {
    let (ra, rb) = (find(p, a), find(p, b));
    if ra != rb {
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        p[hi] = lo as u8;
    }
}

fn end(e: usize, j: usize) -> usize {
    3 * (e / 3) + (e % 3 + j) % 3
}

impl Partial {
    fn new(f: usize) -> Self {
        let mut p = Self {
            f,
            partner: [NONE; MAX_EDGES],
            flip: 0,
            corner: [0; MAX_EDGES],
            tri: [0; ENUM_MAX_F],
        };
        for i in 0..MAX_EDGES {
            p.corner[i] = i as u8;
        }
        for i in 0..ENUM_MAX_F {
            p.tri[i] = i as u8;
        }
        p
    }

    fn glue(&mut self, e1: usize, e2: usize, flip: bool) {
        self.partner[e1] = e2 as u8;
        self.partner[e2] = e1 as u8;
        if flip {
            self.flip |= 1 << e1 | 1 << e2;
        }
        for j in 0..2 {
            let j2 = if flip { 1 - j } else { j };
            union(&mut self.corner, end(e1, j), end(e2, j2));
        }
        union(&mut self.tri, e1 / 3, e2 / 3);
    }

    fn least_free(&self) -> Option<usize> {
        (0..3 * self.f).find(|&e| self.partner[e] == NONE)
    }

    fn to_state(self) -> Result<GluingState> {
        let mut s = GluingState::new(self.f)?;
        for e in 0..3 * self.f {
            let p = self.partner[e];
            if p != NONE && e < p as usize {
                let flip = self.flip >> e & 1 == 1;
                s.glue(&GluingMove::new(side_of(e), side_of(p as usize), flip))?;
            }
        }
        Ok(s)
    }

    /// Whether the last gluing, of `e`, rules out a connected surface.
    fn hopeless(&self, e: usize) -> bool {
        let n = 3 * self.f;
        let mut roots = [0u8; MAX_EDGES];
        for c in 0..n {
            roots[c] = find(&self.corner, c) as u8;
        }
        let pair = |e: usize| {
            let (a, b) = (roots[end(e, 0)], roots[end(e, 1)]);
            (a.min(b), a.max(b))
        };
        // A collapsed edge stays collapsed.
        let mut pairs: Vec<((u8, u8), bool)> = Vec::with_capacity(n);
        for g in 0..n {
            let (a, b) = pair(g);
            if a == b {
                return true;
            }
            let p = self.partner[g];
            if p == NONE {
                pairs.push(((a, b), false));
            } else if g < p as usize {
                pairs.push(((a, b), true));
            }
        }
        // A glued edge class and any other edge class with the same ends
        // would be two edges on one vertex pair.
        pairs.sort_unstable();
        for w in pairs.windows(2) {
            if w[0].0 == w[1].0 && (w[0].1 || w[1].1) {
                return true;
            }
        }
        let mut triples: Vec<[u8; 3]> = (0..self.f)
            .map(|t| {
                let mut x = [roots[3 * t], roots[3 * t + 1], roots[3 * t + 2]];
                x.sort_unstable();
                x
            })
            .collect();
        triples.sort_unstable();
        if triples.windows(2).any(|w| w[0] == w[1]) {
            return true;
        }
        // A component closed before using every triangle.
        let comp = find(&self.tri, e / 3);
        let mut size = 0;
        for t in 0..self.f {
            if find(&self.tri, t) == comp {
                size += 1;
                if (0..3).any(|s| self.partner[3 * t + s] == NONE) {
                    return false;
                }
            }
        }
        size < self.f
    }
}

struct Search<'a> {
    opts: EnumOptions,
    visitor: &'a (dyn Fn(&GluingState) + Sync),
    visited: AtomicU64,
    nodes: AtomicU64,
    cuts: AtomicU64,
    failure: Mutex<Option<Error>>,
}

impl Search<'_> {
    fn children(&self, p: &Partial) -> Vec<Partial> {
        let Some(e) = p.least_free() else {
            return Vec::new();
        };
        let mut out = Vec::new();
        let mut cuts = 0;
        for q in e + 1..3 * p.f {
            if p.partner[q] != NONE {
                continue;
            }
            // With pruning, side 0 of triangle 0 goes to side 0 of
            // triangle 1 with flip set; relabeling, rotating and
            // reflecting triangles reaches that from any connected surface.
            if self.opts.prune && e == 0 && q != 3 {
                continue;
            }
            for flip in [false, true] {
                if self.opts.prune && e == 0 && !flip {
                    continue;
                }
                let mut c = *p;
                c.glue(e, q, flip);
                if self.opts.prune && c.hopeless(e) {
                    cuts += 1;
                    continue;
                }
                out.push(c);
            }
        }
        self.cuts.fetch_add(cuts, Ordering::Relaxed);
        out
    }

    fn run(&self, p: Partial) {
        self.nodes.fetch_add(1, Ordering::Relaxed);
        if p.least_free().is_none() {
            match p.to_state() {
                Ok(s) => {
                    self.visited.fetch_add(1, Ordering::Relaxed);
                    (self.visitor)(&s);
                }
                Err(e) => {
                    self.failure.lock().unwrap().get_or_insert(e);
                }
            }
            return;
        }
        for c in self.children(&p) {
            self.run(c);
        }
    }
}

/// Visits every complete oriented edge matching of `f` triangles once, by
/// always pairing the least unmatched edge. With pruning, only matchings
/// that can form a connected triangulated surface are guaranteed to be
/// visited, and only up to relabeling of triangles. Subtrees below the
/// second gluing are explored in parallel.
pub fn enumerate_closed_gluings(
    f: usize,
    opts: EnumOptions,
    visitor: &(dyn Fn(&GluingState) + Sync),
) -> Result<EnumerationSummary> {
    if f > ENUM_MAX_F {
        return Err(Error::InvalidParams(format!(
            "enumeration supports f <= {ENUM_MAX_F}"
        )));
    }
    GluingState::new(f)?;
    let search = Search {
        opts,
        visitor,
        visited: AtomicU64::new(0),
        nodes: AtomicU64::new(0),
        cuts: AtomicU64::new(0),
        failure: Mutex::new(None),
    };
    let root = Partial::new(f);
    search.nodes.fetch_add(1, Ordering::Relaxed);
    let mut frontier = Vec::new();
    for c in search.children(&root) {
        search.nodes.fetch_add(1, Ordering::Relaxed);
        frontier.extend(search.children(&c));
    }
    frontier.par_iter().for_each(|c| search.run(*c));
    if let Some(e) = search.failure.into_inner().unwrap() {
        return Err(e);
    }
    Ok(EnumerationSummary {
        f,
        pruned_mode: opts.prune,
        visited: search.visited.into_inner(),
        nodes: search.nodes.into_inner(),
        cuts: search.cuts.into_inner(),
    })
}

/// Distinct connected surfaces with `f` faces, keyed by canonical code.
pub fn surfaces_with_faces(
    f: usize,
    prune: bool,
) -> Result<(BTreeMap<Vec<u8>, CanonicalSurface>, EnumerationSummary)> {
    let found: Mutex<BTreeMap<Vec<u8>, CanonicalSurface>> = Mutex::new(BTreeMap::new());
    let failure: Mutex<Option<Error>> = Mutex::new(None);
    let visit = |s: &GluingState| {
        let connected = s.analyze().num_components == 1;
        let result = if connected {
            is_triangulated_surface(s).and_then(|ok| ok.then(|| canonical_form(s)).transpose())
        } else {
            Ok(None)
        };
        match result {
            Ok(Some(c)) => {
                found.lock().unwrap().entry(c.code.clone()).or_insert(c);
            }
            Ok(None) => {}
            Err(e) => {
                failure.lock().unwrap().get_or_insert(e);
            }
        }
    };
    let summary = enumerate_closed_gluings(f, EnumOptions { prune }, &visit)?;
    if let Some(e) = failure.into_inner().unwrap() {
        return Err(e);
    }
    Ok((found.into_inner().unwrap(), summary))
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusTable {
    pub entries: BTreeMap<(usize, usize), u64>,
    pub mode: String,
    pub stats: Vec<EnumerationSummary>,
    pub surfaces: Vec<CanonicalSurface>,
}

/// Smallest and largest vertex counts a surface with `f` faces can have:
/// `w(w-1)/2 >= 3f/2` and Euler characteristic at most 2.
pub fn vertex_range(f: usize) -> (usize, usize) {
    let lo = (1..).find(|&w: &usize| w * w >= 2 * f).unwrap();
    (lo, f / 2 + 2)
}

impl CensusTable {
    pub fn count(&self, f: usize, w: usize) -> u64 {
        self.entries.get(&(f, w)).copied().unwrap_or(0)
    }

    /// Rows `(f, w, count, mode)`.
    pub fn rows(&self) -> Vec<(usize, usize, u64, String)> {
        self.entries
            .iter()
            .map(|(&(f, w), &c)| (f, w, c, self.mode.clone()))
            .collect()
    }
}

/// Census of connected triangulated surfaces for every even `f <= f_max`.
/// Every `w` in the admissible range gets a row, zero counts included.
pub fn census_table(f_max: usize, prune_to_surfaces: bool) -> Result<CensusTable> {
    if f_max < 2 {
        return Err(Error::InvalidParams("f_max must be at least 2".into()));
    }
    let limit = if prune_to_surfaces { 6 } else { 4 };
    if f_max > limit {
        return Err(Error::CensusLimit { f_max, limit });
    }
    let mut entries = BTreeMap::new();
    let mut stats = Vec::new();
    let mut surfaces = Vec::new();
    for f in (2..=f_max).step_by(2) {
        let (lo, hi) = vertex_range(f);
        for w in lo..=hi {
            entries.insert((f, w), 0);
        }
        let (found, summary) = surfaces_with_faces(f, prune_to_surfaces)?;
        for c in found.into_values() {
            *entries.entry((f, c.w)).or_insert(0) += 1;
            surfaces.push(c);
        }
        stats.push(summary);
    }
    Ok(CensusTable {
        entries,
        mode: if prune_to_surfaces { "pruned" } else { "exhaustive" }.to_string(),
        stats,
        surfaces,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f2_has_120_matchings_and_no_surface() {
        let summary = enumerate_closed_gluings(2, EnumOptions::default(), &|_| {}).unwrap();
        assert_eq!(summary.visited, 120);
        let t = census_table(2, false).unwrap();
        assert!(t.entries.values().all(|&c| c == 0));
    }

    #[test]
    fn vertex_ranges() {
        assert_eq!(vertex_range(4), (3, 4));
        assert_eq!(vertex_range(6), (4, 5));
        assert_eq!(vertex_range(8), (4, 6));
    }
}
