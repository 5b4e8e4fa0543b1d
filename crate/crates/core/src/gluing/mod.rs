//! Pseudomanifolds built by gluing triangle edges in pairs.
//!
//! Triangle `t` has corners `3t, 3t+1, 3t+2` and sides `3t + s`, where side
//! `s` runs from corner `s` to corner `(s + 1) % 3`. A gluing with
//! `flip = false` identifies tail with tail and head with head; with
//! `flip = true` it identifies tail with head. Two triangles carrying
//! compatible orientations are glued with `flip = true`.
//!
//! Boundary loops, vertex classes and components are derived from the
//! matching on demand, by walking vertex links.

pub mod story;
pub mod verify;

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Union-find over a small index set. Roots are always the least element
/// of their class, so results do not depend on union order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    /// Returns true when two classes were merged.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        // Compress the two queried paths.
        for mut x in [a, b] {
            while self.parent[x] != lo && self.parent[x] != x {
                let next = self.parent[x];
                self.parent[x] = lo;
                x = next;
            }
        }
        true
    }
}

/// Side of a triangle, as `(triangle, side)`.
pub type Side = (usize, usize);

pub fn edge_id(side: Side) -> usize {
    3 * side.0 + side.1
}

pub fn side_of(edge: usize) -> Side {
    (edge / 3, edge % 3)
}

/// Corner at end `j` (0 = tail, 1 = head) of edge `e`.
pub fn edge_end(e: usize, j: usize) -> usize {
    let (t, s) = side_of(e);
    3 * t + (s + j) % 3
}

/// Move type by number of shared vertex classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MoveType {
    A,
    B,
    C,
}

impl MoveType {
    pub fn index(self) -> usize {
        match self {
            MoveType::A => 0,
            MoveType::B => 1,
            MoveType::C => 2,
        }
    }
}

/// One oriented edge identification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GluingMove {
    pub a: Side,
    pub b: Side,
    pub flip: bool,
}

impl GluingMove {
    pub fn new(a: Side, b: Side, flip: bool) -> Self {
        Self { a, b, flip }
    }

    pub fn edges(&self) -> (usize, usize) {
        (edge_id(self.a), edge_id(self.b))
    }
}

/// The potential's parameters: `beta(l) = max(0, 1 - delta log10 l)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PotentialParams {
    pub delta: f64,
    pub d_delta: f64,
}

impl PotentialParams {
    pub fn new(delta: f64) -> Result<Self> {
        if !(delta > 0.0) || !delta.is_finite() {
            return Err(Error::InvalidParams(format!("delta = {delta} must be positive")));
        }
        Ok(Self {
            delta,
            d_delta: 10f64.powf(1.0 / delta),
        })
    }

    pub fn beta(&self, l: usize) -> f64 {
        (1.0 - self.delta * (l as f64).log10()).max(0.0)
    }

    /// Integer nearness radius: `floor(D_delta)`, saturating.
    pub fn radius(&self) -> usize {
        if self.d_delta >= usize::MAX as f64 {
            usize::MAX
        } else {
            self.d_delta.floor() as usize
        }
    }
}

/// A partially glued set of triangles.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GluingState {
    f: usize,
    partner: Vec<Option<(usize, bool)>>,
    corners: UnionFind,
    triangles: UnionFind,
    moves: usize,
}

/// Structures derived from a state: vertex classes, boundary loops and
/// components.
#[derive(Clone, Debug)]
pub struct Analysis {
    /// Dense vertex-class id of each corner.
    pub class_of_corner: Vec<usize>,
    pub num_classes: usize,
    /// Dense component id of each triangle.
    pub component_of_triangle: Vec<usize>,
    pub num_components: usize,
    /// Boundary loops as edge sequences, each starting at its least edge;
    /// loops ordered by that edge.
    pub loops: Vec<Vec<usize>>,
    /// Loop index of each boundary edge.
    pub loop_of_edge: Vec<Option<usize>>,
    /// Classes incident to some boundary edge.
    pub boundary_classes: BTreeSet<usize>,
    pub v_int: usize,
    pub h_cl: usize,
}

impl Analysis {
    pub fn edge_classes(&self, e: usize) -> (usize, usize) {
        (
            self.class_of_corner[edge_end(e, 0)],
            self.class_of_corner[edge_end(e, 1)],
        )
    }

    pub fn loop_lengths(&self) -> Vec<usize> {
        let mut l: Vec<usize> = self.loops.iter().map(Vec::len).collect();
        l.sort_unstable();
        l
    }

    /// Component of the triangle carrying a loop's first edge.
    pub fn loop_component(&self, i: usize) -> usize {
        self.component_of_triangle[side_of(self.loops[i][0]).0]
    }
}

impl GluingState {
    /// `f` disjoint triangles.
    pub fn new(f: usize) -> Result<Self> {
        if f < 2 || f % 2 != 0 {
            return Err(Error::InvalidParams(format!(
                "triangle count f = {f} must be even and at least 2"
            )));
        }
        Ok(Self {
            f,
            partner: vec![None; 3 * f],
            corners: UnionFind::new(3 * f),
            triangles: UnionFind::new(f),
            moves: 0,
        })
    }

    /// A closed or bounded state from labeled triangles: corners with equal
    /// labels form one vertex class, and sides with equal label pairs are
    /// glued. Unlike a gluing story this can express pinched vertices.
    pub fn from_labeled_faces(faces: &[[usize; 3]]) -> Result<Self> {
        let f = faces.len();
        if f < 2 || f % 2 != 0 {
            return Err(Error::InvalidParams(format!("need an even face count, got {f}")));
        }
        let mut state = Self::new(f)?;
        let mut by_pair: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (t, face) in faces.iter().enumerate() {
            if face[0] == face[1] || face[1] == face[2] || face[0] == face[2] {
                return Err(Error::DegenerateSimplex(face.to_vec()));
            }
            for s in 0..3 {
                let (a, b) = (face[s], face[(s + 1) % 3]);
                by_pair.entry((a.min(b), a.max(b))).or_default().push(3 * t + s);
            }
        }
        for (pair, sides) in &by_pair {
            match sides.as_slice() {
                [_] => {}
                [e1, e2] => {
                    let tail = |e: usize| faces[e / 3][e % 3];
                    let flip = tail(*e1) != tail(*e2);
                    state.partner[*e1] = Some((*e2, flip));
                    state.partner[*e2] = Some((*e1, flip));
                    state.triangles.union(e1 / 3, e2 / 3);
                    state.moves += 1;
                }
                _ => {
                    return Err(Error::Gluing(format!(
                        "edge {pair:?} lies in {} faces",
                        sides.len()
                    )))
                }
            }
        }
        let mut first: HashMap<usize, usize> = HashMap::new();
        for (t, face) in faces.iter().enumerate() {
            for k in 0..3 {
                let c = 3 * t + k;
                match first.get(&face[k]) {
                    Some(&c0) => {
                        state.corners.union(c0, c);
                    }
                    None => {
                        first.insert(face[k], c);
                    }
                }
            }
        }
        Ok(state)
    }

    pub fn f(&self) -> usize {
        self.f
    }

    pub fn moves_applied(&self) -> usize {
        self.moves
    }

    pub fn partner(&self, e: usize) -> Option<(usize, bool)> {
        self.partner[e]
    }

    pub fn is_boundary(&self, e: usize) -> bool {
        self.partner[e].is_none()
    }

    pub fn boundary_edges(&self) -> Vec<usize> {
        (0..3 * self.f).filter(|&e| self.is_boundary(e)).collect()
    }

    pub fn is_closed(&self) -> bool {
        self.partner.iter().all(Option::is_some)
    }

    pub fn corner_class_root(&self, c: usize) -> usize {
        self.corners.find(c)
    }

    /// Matched pairs as moves with `a < b`, sorted.
    pub fn matching(&self) -> Vec<GluingMove> {
        (0..3 * self.f)
            .filter_map(|e| match self.partner[e] {
                Some((p, flip)) if e < p => Some(GluingMove::new(side_of(e), side_of(p), flip)),
                _ => None,
            })
            .collect()
    }

    fn check_edge(&self, e: usize) -> Result<()> {
        if e >= 3 * self.f {
            return Err(Error::Gluing(format!("edge {e} out of range")));
        }
        Ok(())
    }

    fn check_boundary(&self, e: usize) -> Result<()> {
        self.check_edge(e)?;
        if !self.is_boundary(e) {
            return Err(Error::Gluing(format!("edge {:?} is already glued", side_of(e))));
        }
        Ok(())
    }

    /// Glues in place.
    pub fn glue(&mut self, m: &GluingMove) -> Result<()> {
        let (e1, e2) = m.edges();
        self.check_boundary(e1)?;
        self.check_boundary(e2)?;
        if e1 == e2 {
            return Err(Error::Gluing(format!("edge {:?} glued to itself", m.a)));
        }
        self.partner[e1] = Some((e2, m.flip));
        self.partner[e2] = Some((e1, m.flip));
        for j in 0..2 {
            let j2 = if m.flip { 1 - j } else { j };
            self.corners.union(edge_end(e1, j), edge_end(e2, j2));
        }
        self.triangles.union(e1 / 3, e2 / 3);
        self.moves += 1;
        Ok(())
    }

    /// Copy-on-apply gluing.
    pub fn apply_gluing(&self, m: &GluingMove) -> Result<GluingState> {
        let mut next = self.clone();
        next.glue(m)?;
        Ok(next)
    }

    /// From a corner on `side`, turn to the other side of the same triangle
    /// at that corner and cross matched sides until reaching a boundary
    /// side. Returns that side and the end of it at which the walk arrives.
    fn walk_link(&self, side: usize, corner: usize) -> (usize, usize) {
        let mut side = side;
        let mut corner = corner;
        for _ in 0..=3 * self.f {
            let (t, k) = (corner / 3, corner % 3);
            let other = if side % 3 == k { 3 * t + (k + 2) % 3 } else { 3 * t + k };
            let end = if other % 3 == k { 0 } else { 1 };
            match self.partner[other] {
                None => return (other, end),
                Some((p, flip)) => {
                    let end2 = if flip { 1 - end } else { end };
                    corner = edge_end(p, end2);
                    side = p;
                }
            }
        }
        unreachable!("vertex links are paths or cycles")
    }

    pub fn analyze(&self) -> Analysis {
        let n_corners = 3 * self.f;
        let mut class_of_corner = vec![usize::MAX; n_corners];
        let mut root_id: HashMap<usize, usize> = HashMap::new();
        for c in 0..n_corners {
            let r = self.corners.find(c);
            let next = root_id.len();
            class_of_corner[c] = *root_id.entry(r).or_insert(next);
        }
        let num_classes = root_id.len();
        let mut component_of_triangle = vec![0; self.f];
        let mut comp_id: HashMap<usize, usize> = HashMap::new();
        for t in 0..self.f {
            let r = self.triangles.find(t);
            let next = comp_id.len();
            component_of_triangle[t] = *comp_id.entry(r).or_insert(next);
        }
        let num_components = comp_id.len();

        let mut loop_of_edge = vec![None; n_corners];
        let mut loops = Vec::new();
        for e0 in 0..n_corners {
            if !self.is_boundary(e0) || loop_of_edge[e0].is_some() {
                continue;
            }
            let id = loops.len();
            let mut seq = vec![e0];
            loop_of_edge[e0] = Some(id);
            let (mut cur, mut exit) = (e0, 1);
            loop {
                let (next, entry) = self.walk_link(cur, edge_end(cur, exit));
                if next == e0 {
                    break;
                }
                seq.push(next);
                loop_of_edge[next] = Some(id);
                cur = next;
                exit = 1 - entry;
            }
            loops.push(seq);
        }
        let mut boundary_classes = BTreeSet::new();
        let mut open_components = BTreeSet::new();
        for e in 0..n_corners {
            if self.is_boundary(e) {
                boundary_classes.insert(class_of_corner[edge_end(e, 0)]);
                boundary_classes.insert(class_of_corner[edge_end(e, 1)]);
                open_components.insert(component_of_triangle[e / 3]);
            }
        }
        Analysis {
            v_int: num_classes - boundary_classes.len(),
            h_cl: num_components - open_components.len(),
            class_of_corner,
            num_classes,
            component_of_triangle,
            num_components,
            loops,
            loop_of_edge,
            boundary_classes,
        }
    }

    /// True when every edge joins two distinct vertex classes.
    pub fn is_edge_nondegenerate(&self) -> bool {
        (0..3 * self.f).all(|e| self.corners.find(edge_end(e, 0)) != self.corners.find(edge_end(e, 1)))
    }

    pub fn potential(&self, params: &PotentialParams) -> f64 {
        potential_from(&self.analyze(), params)
    }
}

/// `F = V_int - H_cl + B`, where each component contributes the sum of
/// `beta` over its boundary loops minus `beta` of its longest loop.
pub fn potential_from(a: &Analysis, params: &PotentialParams) -> f64 {
    let mut per_comp: BTreeMap<usize, (f64, usize)> = BTreeMap::new();
    for (i, l) in a.loops.iter().enumerate() {
        let entry = per_comp.entry(a.loop_component(i)).or_insert((0.0, 0));
        entry.0 += params.beta(l.len());
        entry.1 = entry.1.max(l.len());
    }
    let b: f64 = per_comp
        .values()
        .map(|&(sum, lmax)| sum - params.beta(lmax))
        .sum();
    a.v_int as f64 - a.h_cl as f64 + b
}

pub fn potential_f(s: &GluingState, params: &PotentialParams) -> f64 {
    s.potential(params)
}

pub fn new_state(f: usize) -> Result<GluingState> {
    GluingState::new(f)
}

/// Type of gluing `e1` to `e2` by number of shared endpoint classes.
pub fn classify_move(s: &GluingState, e1: usize, e2: usize) -> Result<MoveType> {
    s.check_boundary(e1)?;
    s.check_boundary(e2)?;
    if e1 == e2 {
        return Err(Error::Gluing("an edge cannot be glued to itself".into()));
    }
    Ok(classify_with(s, e1, e2))
}

fn classify_with(s: &GluingState, e1: usize, e2: usize) -> MoveType {
    let ends = |e: usize| -> BTreeSet<usize> {
        [edge_end(e, 0), edge_end(e, 1)]
            .into_iter()
            .map(|c| s.corners.find(c))
            .collect()
    };
    match ends(e1).intersection(&ends(e2)).count() {
        0 => MoveType::A,
        1 => MoveType::B,
        _ => MoveType::C,
    }
}

/// Breadth-first distance between boundary edges of one loop, where two
/// edges are adjacent when they share a vertex class. Edges on different
/// loops are never near.
pub fn boundary_distance(s: &GluingState, e1: usize, e2: usize) -> Result<Option<usize>> {
    s.check_boundary(e1)?;
    s.check_boundary(e2)?;
    let a = s.analyze();
    Ok(boundary_distances_from(s, &a, e1)[e2])
}

/// Distances from `src` to every boundary edge on its loop.
pub fn boundary_distances_from(s: &GluingState, a: &Analysis, src: usize) -> Vec<Option<usize>> {
    let n = 3 * s.f;
    let mut at_class: HashMap<usize, Vec<usize>> = HashMap::new();
    for e in 0..n {
        if s.is_boundary(e) && a.loop_of_edge[e] == a.loop_of_edge[src] {
            let (u, v) = a.edge_classes(e);
            at_class.entry(u).or_default().push(e);
            if v != u {
                at_class.entry(v).or_default().push(e);
            }
        }
    }
    let mut dist = vec![None; n];
    dist[src] = Some(0);
    let mut queue = VecDeque::from([src]);
    while let Some(e) = queue.pop_front() {
        let d = dist[e].unwrap();
        let (u, v) = a.edge_classes(e);
        for c in [u, v] {
            for &g in &at_class[&c] {
                if dist[g].is_none() {
                    dist[g] = Some(d + 1);
                    queue.push_back(g);
                }
            }
        }
    }
    dist
}

/// Whether two boundary edges are joined by at most `d` adjacency steps.
pub fn d_near(s: &GluingState, e1: usize, e2: usize, d: usize) -> Result<bool> {
    Ok(boundary_distance(s, e1, e2)?.is_some_and(|x| x <= d))
}

/// Checks that a closed state is a triangulated surface: edges join
/// distinct classes, edge classes have distinct endpoint pairs, faces have
/// distinct vertex triples, and every vertex link is one cycle.
pub fn is_triangulated_surface(s: &GluingState) -> Result<bool> {
    if !s.is_closed() {
        return Err(Error::NotClosed);
    }
    let a = s.analyze();
    let n = 3 * s.f;
    let mut pairs = BTreeSet::new();
    for e in 0..n {
        let (p, _) = s.partner[e].unwrap();
        let (u, v) = a.edge_classes(e);
        if u == v {
            return Ok(false);
        }
        if e < p && !pairs.insert((u.min(v), u.max(v))) {
            return Ok(false);
        }
    }
    let mut triples = BTreeSet::new();
    for t in 0..s.f {
        let mut tri = [0; 3];
        for k in 0..3 {
            tri[k] = a.class_of_corner[3 * t + k];
        }
        tri.sort_unstable();
        if tri[0] == tri[1] || tri[1] == tri[2] || !triples.insert(tri) {
            return Ok(false);
        }
    }
    // Link of a class: corners in the class, joined across glued sides.
    let mut link = UnionFind::new(n);
    for e in 0..n {
        let (p, flip) = s.partner[e].unwrap();
        for j in 0..2 {
            let j2 = if flip { 1 - j } else { j };
            link.union(edge_end(e, j), edge_end(p, j2));
        }
    }
    let mut pieces: HashMap<usize, BTreeSet<usize>> = HashMap::new();
    for c in 0..n {
        pieces
            .entry(a.class_of_corner[c])
            .or_default()
            .insert(link.find(c));
    }
    Ok(pieces.values().all(|p| p.len() == 1))
}

/// Labeled faces of a closed state, vertex classes numbered densely.
pub fn vertex_faces(s: &GluingState) -> (usize, Vec<[usize; 3]>) {
    let a = s.analyze();
    let faces = (0..s.f)
        .map(|t| {
            [
                a.class_of_corner[3 * t],
                a.class_of_corner[3 * t + 1],
                a.class_of_corner[3 * t + 2],
            ]
        })
        .collect();
    (a.num_classes, faces)
}

/// Isomorphism-invariant code of the gluing pattern itself: triangles are
/// relabeled in breadth-first order from a root flag, and each side records
/// its partner's label, local side and relative orientation. Works for any
/// closed connected state, surface or not. Returns the minimal code and the
/// number of root flags attaining it.
pub fn gluing_code(s: &GluingState) -> Result<(Vec<u8>, usize)> {
    if !s.is_closed() {
        return Err(Error::NotClosed);
    }
    let f = s.f;
    let mut best: Option<Vec<u8>> = None;
    let mut count = 0;
    for root in 0..f {
        for k in 0..3 {
            for dir in [1usize, 2] {
                let code = gluing_code_from(s, root, k, dir);
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
    }
    let code = best.expect("at least one triangle");
    Ok((code, count))
}

/// Frame of a triangle: local corner `j` is global corner
/// `(start + dir * j) % 3`, with `dir` 1 or 2 (that is, -1).
#[derive(Clone, Copy)]
struct Frame {
    start: usize,
    dir: usize,
}

impl Frame {
    fn corner(&self, j: usize) -> usize {
        (self.start + self.dir * j) % 3
    }

    /// Global edge under local side `j`.
    fn side(&self, t: usize, j: usize) -> usize {
        let (c0, c1) = (self.corner(j), self.corner(j + 1));
        if (c0 + 1) % 3 == c1 {
            3 * t + c0
        } else {
            3 * t + c1
        }
    }

    fn local_of_corner(&self, c: usize) -> usize {
        (0..3).find(|&j| self.corner(j) == c).unwrap()
    }
}

fn gluing_code_from(s: &GluingState, root: usize, start: usize, dir: usize) -> Vec<u8> {
    let f = s.f;
    let mut label = vec![usize::MAX; f];
    let mut frame = vec![Frame { start: 0, dir: 1 }; f];
    let mut order = vec![root];
    label[root] = 0;
    frame[root] = Frame { start, dir };
    let mut code = Vec::with_capacity(9 * f + 1);
    code.push(f as u8);
    let mut i = 0;
    while i < order.len() {
        let t = order[i];
        let fr = frame[t];
        for j in 0..3 {
            let e = fr.side(t, j);
            let (p, flip) = s.partner[e].unwrap();
            let pt = p / 3;
            // Global corners at local ends j and j+1 of this side.
            let here = [fr.corner(j), fr.corner(j + 1)].map(|c| 3 * t + c);
            // Partner corner identified with a corner of ours.
            let matched = |c: usize| -> usize {
                let end = if edge_end(e, 0) == c { 0 } else { 1 };
                let end2 = if flip { 1 - end } else { end };
                edge_end(p, end2) % 3
            };
            if label[pt] == usize::MAX {
                label[pt] = order.len();
                order.push(pt);
                let c0 = matched(here[1]);
                let c1 = matched(here[0]);
                frame[pt] = Frame {
                    start: c0,
                    dir: if (c0 + 1) % 3 == c1 { 1 } else { 2 },
                };
            }
            let pf = frame[pt];
            let c_at_j1 = matched(here[1]);
            let c_at_j = matched(here[0]);
            let (lj1, lj) = (pf.local_of_corner(c_at_j1), pf.local_of_corner(c_at_j));
            // Local side of the partner holding both corners, and whether
            // our head meets its tail.
            let (pside, reversed) = if (lj1 + 1) % 3 == lj {
                (lj1, true)
            } else {
                (lj, false)
            };
            code.push(label[pt] as u8);
            code.push(pside as u8);
            code.push(reversed as u8);
        }
        i += 1;
    }
    if order.len() < f {
        // Disconnected: append the unreached count so codes stay distinct.
        code.push(255);
        code.push((f - order.len()) as u8);
    }
    code
}
