//! Surfaces found by trying every set of triangles on a few labeled
//! vertices. Slow, but shares no code with the gluing enumeration.

use std::collections::{BTreeMap, HashMap};

use itertools::Itertools;

use super::canon::brute_force_isomorphic;
use crate::error::{Error, Result};

/// Largest vertex count the generator accepts.
pub const BRUTE_MAX_W: usize = 6;

/// Whether labeled faces on `0..w` form a connected closed surface using
/// every vertex: each edge in exactly two faces and every vertex link a
/// single cycle.
pub fn is_closed_surface(w: usize, faces: &[[usize; 3]]) -> bool {
    let mut edge_count: HashMap<(usize, usize), usize> = HashMap::new();
    for face in faces {
        for (a, b) in [(face[0], face[1]), (face[1], face[2]), (face[0], face[2])] {
            *edge_count.entry((a.min(b), a.max(b))).or_default() += 1;
        }
    }
    if edge_count.values().any(|&c| c != 2) {
        return false;
    }
    for v in 0..w {
        // Link of v: the edge opposite v in each face containing v.
        let link: Vec<(usize, usize)> = faces
            .iter()
            .filter(|f| f.contains(&v))
            .map(|f| {
                let o: Vec<usize> = f.iter().copied().filter(|&x| x != v).collect();
                (o[0], o[1])
            })
            .collect();
        if link.is_empty() || !is_single_cycle(&link) {
            return false;
        }
    }
    is_connected(w, faces)
}

fn is_single_cycle(edges: &[(usize, usize)]) -> bool {
    let mut adj: HashMap<usize, Vec<usize>> = HashMap::new();
    for &(a, b) in edges {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    if adj.values().any(|n| n.len() != 2) {
        return false;
    }
    let start = edges[0].0;
    let (mut prev, mut cur, mut steps) = (start, adj[&start][0], 1);
    while cur != start {
        let n = &adj[&cur];
        let next = if n[0] == prev { n[1] } else { n[0] };
        prev = cur;
        cur = next;
        steps += 1;
    }
    steps == adj.len()
}

fn is_connected(w: usize, faces: &[[usize; 3]]) -> bool {
    let mut parent: Vec<usize> = (0..w).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for f in faces {
        for k in 1..3 {
            let (a, b) = (find(&mut parent, f[0]), find(&mut parent, f[k]));
            parent[a] = b;
        }
    }
    let r = find(&mut parent, 0);
    (0..w).all(|v| find(&mut parent, v) == r)
}

/// Isomorphism classes of connected closed surfaces with `4 <= w <= w_max`
/// vertices and at most `f_max` faces, keyed by `(f, w)`. Each class is
/// represented by one labeled face list.
pub fn brute_force_surfaces(
    w_max: usize,
    f_max: usize,
) -> Result<BTreeMap<(usize, usize), Vec<Vec<[usize; 3]>>>> {
    if w_max > BRUTE_MAX_W {
        return Err(Error::InvalidParams(format!(
            "brute-force generation supports w <= {BRUTE_MAX_W}"
        )));
    }
    let mut out: BTreeMap<(usize, usize), Vec<Vec<[usize; 3]>>> = BTreeMap::new();
    for w in 4..=w_max {
        let triples: Vec<[usize; 3]> = (0..w)
            .combinations(3)
            .map(|c| [c[0], c[1], c[2]])
            .collect();
        for f in (4..=f_max.min(triples.len())).step_by(2) {
            for subset in triples.iter().copied().combinations(f) {
                if !is_closed_surface(w, &subset) {
                    continue;
                }
                let reps = out.entry((f, w)).or_default();
                if !reps.iter().any(|r| brute_force_isomorphic(w, r, w, &subset)) {
                    reps.push(subset);
                }
            }
        }
    }
    Ok(out)
}
