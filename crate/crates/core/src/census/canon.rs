//! Canonical codes and automorphism counts of triangulated surfaces.

use std::collections::{BTreeSet, HashMap, VecDeque};

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gluing::{is_triangulated_surface, vertex_faces, GluingState};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CanonicalSurface {
    pub f: usize,
    pub w: usize,
    pub code: Vec<u8>,
    pub euler: i64,
    pub automorphisms: usize,
}

impl CanonicalSurface {
    /// Faces recovered from the code, with vertices in canonical labels.
    pub fn faces(&self) -> Vec<[usize; 3]> {
        self.code[2..]
            .chunks(3)
            .map(|c| [c[0] as usize, c[1] as usize, c[2] as usize])
            .collect()
    }
}

/// Canonical form of a closed gluing that forms a connected surface.
pub fn canonical_form(s: &GluingState) -> Result<CanonicalSurface> {
    if !is_triangulated_surface(s)? {
        return Err(Error::NotSurface);
    }
    let (w, faces) = vertex_faces(s);
    canonical_form_of_faces(w, &faces)
}

pub fn automorphism_count(s: &GluingState) -> Result<usize> {
    Ok(canonical_form(s)?.automorphisms)
}

/// Canonical form of a connected surface given by labeled faces on
/// vertices `0..w`. Every flag (a face with an ordering of its corners)
/// seeds a breadth-first relabeling; the code is the least sorted face list
/// over all flags, and the number of flags attaining it is the number of
/// automorphisms.
pub fn canonical_form_of_faces(w: usize, faces: &[[usize; 3]]) -> Result<CanonicalSurface> {
    let f = faces.len();
    if w > u8::MAX as usize || f > u8::MAX as usize {
        return Err(Error::InvalidParams("surface too large to encode".into()));
    }
    let across = edge_map(faces)?;
    let mut best: Option<Vec<u8>> = None;
    let mut count = 0;
    for t in 0..f {
        for perm in [[0, 1, 2], [1, 2, 0], [2, 0, 1], [0, 2, 1], [2, 1, 0], [1, 0, 2]] {
            let flag = perm.map(|i| faces[t][i]);
            let code = code_from_flag(w, faces, &across, t, flag)?;
            match &best {
                Some(b) if code > *b => {}
                Some(b) if code == *b => count += 1,
                _ => {
                    best = Some(code);
                    count = 1;
                }
            }
        }
    }
    let code = best.ok_or_else(|| Error::InvalidParams("no faces".into()))?;
    let e = 3 * f / 2;
    Ok(CanonicalSurface {
        f,
        w,
        code,
        euler: w as i64 - e as i64 + f as i64,
        automorphisms: count,
    })
}

/// Map from each edge to the faces containing it; every edge must lie in
/// exactly two faces.
fn edge_map(faces: &[[usize; 3]]) -> Result<HashMap<(usize, usize), [usize; 2]>> {
    let mut m: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (t, face) in faces.iter().enumerate() {
        for (a, b) in [(face[0], face[1]), (face[1], face[2]), (face[2], face[0])] {
            m.entry((a.min(b), a.max(b))).or_default().push(t);
        }
    }
    m.into_iter()
        .map(|(k, v)| match v.as_slice() {
            [x, y] => Ok((k, [*x, *y])),
            _ => Err(Error::NotSurface),
        })
        .collect()
}

fn code_from_flag(
    w: usize,
    faces: &[[usize; 3]],
    across: &HashMap<(usize, usize), [usize; 2]>,
    root: usize,
    flag: [usize; 3],
) -> Result<Vec<u8>> {
    let f = faces.len();
    let mut label = vec![usize::MAX; w];
    let mut next = 0;
    for v in flag {
        label[v] = next;
        next += 1;
    }
    let mut visited = vec![false; f];
    visited[root] = true;
    let mut queue = VecDeque::from([(root, flag)]);
    while let Some((_, [x, y, z])) = queue.pop_front() {
        for (p, q) in [(x, y), (y, z), (z, x)] {
            let pair = across[&(p.min(q), p.max(q))];
            for u in pair {
                if visited[u] {
                    continue;
                }
                visited[u] = true;
                let r = faces[u].into_iter().find(|&v| v != p && v != q).unwrap();
                if label[r] == usize::MAX {
                    label[r] = next;
                    next += 1;
                }
                queue.push_back((u, [q, p, r]));
            }
        }
    }
    if next != w || visited.iter().any(|&v| !v) {
        return Err(Error::NotSurface);
    }
    let mut triples: Vec<[u8; 3]> = faces
        .iter()
        .map(|face| {
            let mut t = face.map(|v| label[v] as u8);
            t.sort_unstable();
            t
        })
        .collect();
    triples.sort_unstable();
    let mut code = Vec::with_capacity(2 + 3 * f);
    code.push(w as u8);
    code.push(f as u8);
    code.extend(triples.into_iter().flatten());
    Ok(code)
}

fn face_set(faces: &[[usize; 3]]) -> BTreeSet<[usize; 3]> {
    faces
        .iter()
        .map(|f| {
            let mut t = *f;
            t.sort_unstable();
            t
        })
        .collect()
}

/// Vertex permutations preserving the face set, by trying all `w!`.
pub fn brute_force_automorphisms(w: usize, faces: &[[usize; 3]]) -> usize {
    let set = face_set(faces);
    (0..w)
        .permutations(w)
        .filter(|p| face_set(&faces.iter().map(|f| f.map(|v| p[v])).collect::<Vec<_>>()) == set)
        .count()
}

/// Whether some vertex bijection carries one face set onto the other.
pub fn brute_force_isomorphic(
    w1: usize,
    faces1: &[[usize; 3]],
    w2: usize,
    faces2: &[[usize; 3]],
) -> bool {
    if w1 != w2 || faces1.len() != faces2.len() {
        return false;
    }
    let target = face_set(faces2);
    (0..w1)
        .permutations(w1)
        .any(|p| face_set(&faces1.iter().map(|f| f.map(|v| p[v])).collect::<Vec<_>>()) == target)
}
