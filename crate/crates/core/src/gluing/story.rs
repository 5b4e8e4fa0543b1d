//! Gluing stories: ordered sequences of `3f/2` edge identifications, and the
//! step-by-step potential trajectory they induce.

use std::collections::VecDeque;
use std::io::Write;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{
    boundary_distances_from, classify_with, edge_id, is_triangulated_surface, potential_from,
    side_of, GluingMove, GluingState, MoveType, PotentialParams,
};
use crate::error::{Error, Result};

/// Slack for floating-point comparisons of the potential.
pub const TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluingStory {
    pub f: usize,
    pub moves: Vec<GluingMove>,
}

impl GluingStory {
    pub fn from_json(text: &str) -> Result<Self> {
        let story: GluingStory = serde_json::from_str(text)?;
        story.validate()?;
        Ok(story)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("stories serialize")
    }

    /// Checks that every triangle edge appears in exactly one move.
    pub fn validate(&self) -> Result<()> {
        let f = self.f;
        if f < 2 || f % 2 != 0 {
            return Err(Error::MalformedStory(format!("f = {f} must be even and at least 2")));
        }
        if self.moves.len() != 3 * f / 2 {
            return Err(Error::MalformedStory(format!(
                "expected {} moves, found {}",
                3 * f / 2,
                self.moves.len()
            )));
        }
        let mut seen = vec![false; 3 * f];
        for (i, m) in self.moves.iter().enumerate() {
            for side in [m.a, m.b] {
                if side.0 >= f || side.1 >= 3 {
                    return Err(Error::MalformedStory(format!("move {i}: bad side {side:?}")));
                }
                let e = edge_id(side);
                if seen[e] {
                    return Err(Error::MalformedStory(format!(
                        "move {i}: side {side:?} used twice"
                    )));
                }
                seen[e] = true;
            }
        }
        Ok(())
    }

    /// The closed state reached by applying every move.
    pub fn final_state(&self) -> Result<GluingState> {
        self.validate()?;
        let mut s = GluingState::new(self.f)?;
        for m in &self.moves {
            s.glue(m)?;
        }
        Ok(s)
    }
}

/// One step of a trajectory.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StepRecord {
    pub step: usize,
    pub a: (usize, usize),
    pub b: (usize, usize),
    pub flip: bool,
    pub move_type: MoveType,
    pub distance: Option<usize>,
    pub near: bool,
    pub f_before: f64,
    pub f_after: f64,
    pub v_int: usize,
    pub h_cl: usize,
    pub boundary_edges: usize,
    pub loops: Vec<usize>,
    /// After the move, no edge has both ends in one vertex class.
    pub nondegenerate: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Trajectory {
    pub f: usize,
    pub delta: f64,
    pub d_delta: f64,
    pub steps: Vec<StepRecord>,
    pub closed: bool,
    pub surface: bool,
    pub v: usize,
    pub h: usize,
    pub n_near: usize,
    pub type_counts: [usize; 3],
    /// Shortest boundary loop seen in any intermediate state.
    pub min_loop: Option<usize>,
    pub violations: Vec<String>,
    /// Rule failures on states with a collapsed edge, where the final complex
    /// cannot be a surface and the rules do not apply.
    pub notes: Vec<String>,
}

impl Trajectory {
    pub fn nearmoves_bound(&self) -> f64 {
        (1.0 + self.delta) * self.n_near as f64 + self.h as f64
    }

    pub fn nearmoves_holds(&self) -> bool {
        self.v as f64 <= self.nearmoves_bound() + TOLERANCE
    }

    /// Writes one JSON object per step.
    pub fn write_json_lines<W: Write>(&self, mut w: W) -> Result<()> {
        for step in &self.steps {
            serde_json::to_writer(&mut w, step)?;
            writeln!(w)?;
        }
        Ok(())
    }
}

/// Applies a story and records every step, collecting property violations
/// instead of failing on them.
pub fn trace_story(story: &GluingStory, params: &PotentialParams) -> Result<Trajectory> {
    story.validate()?;
    let radius = params.radius();
    let mut s = GluingState::new(story.f)?;
    let mut a = s.analyze();
    let mut f_now = potential_from(&a, params);
    let mut violations = Vec::new();
    let mut notes = Vec::new();
    if f_now.abs() > TOLERANCE {
        violations.push(format!("property 1: F(X_0) = {f_now}"));
    }
    let mut steps = Vec::with_capacity(story.moves.len());
    let mut type_counts = [0; 3];
    let mut n_near = 0;
    let mut min_loop = a.loops.iter().map(Vec::len).min();
    for (k, m) in story.moves.iter().enumerate() {
        let (e1, e2) = m.edges();
        let move_type = classify_with(&s, e1, e2);
        let distance = boundary_distances_from(&s, &a, e1)[e2];
        let near = distance.is_some_and(|d| d <= radius);
        let v_before = a.v_int;
        s.glue(m)?;
        let a2 = s.analyze();
        let f_after = potential_from(&a2, params);
        let nondegenerate = s.is_edge_nondegenerate();
        let limit = if near { 1.0 + params.delta } else { 0.0 };
        if f_after - f_now > limit + TOLERANCE {
            let msg = format!(
                "property 3 at step {k}: F rose by {} on a {} move",
                f_after - f_now,
                if near { "near" } else { "far" }
            );
            // A collapsed edge never disappears, so the final complex cannot
            // be a surface and the potential bound does not apply.
            if nondegenerate {
                violations.push(msg);
            } else {
                notes.push(msg);
            }
        }
        if a2.v_int != v_before + move_type.index() {
            let msg = format!(
                "step {k}: V_int rose by {} on a type {move_type:?} move",
                a2.v_int as isize - v_before as isize
            );
            // Collapsing an edge onto a single vertex class merges the shared
            // vertex with a boundary vertex, so the count rule needs
            // nondegenerate edges.
            if nondegenerate {
                violations.push(msg);
            } else {
                notes.push(msg);
            }
        }
        if move_type != MoveType::A && distance != Some(1) {
            violations.push(format!("step {k}: type {move_type:?} move is not 1-near"));
        }
        let boundary = 3 * story.f - 2 * (k + 1);
        if s.boundary_edges().len() != boundary {
            violations.push(format!("step {k}: boundary edge count is off"));
        }
        if let Some(l) = a2.loops.iter().map(Vec::len).min() {
            min_loop = Some(min_loop.map_or(l, |m: usize| m.min(l)));
        }
        type_counts[move_type.index()] += 1;
        n_near += near as usize;
        steps.push(StepRecord {
            step: k,
            a: m.a,
            b: m.b,
            flip: m.flip,
            move_type,
            distance,
            near,
            f_before: f_now,
            f_after,
            v_int: a2.v_int,
            h_cl: a2.h_cl,
            boundary_edges: boundary,
            loops: a2.loop_lengths(),
            nondegenerate,
        });
        f_now = f_after;
        a = a2;
    }
    let v = a.num_classes;
    let h = a.num_components;
    if (f_now - (v as f64 - h as f64)).abs() > TOLERANCE {
        violations.push(format!("property 2: F = {f_now}, V - H = {}", v as isize - h as isize));
    }
    if v != type_counts[1] + 2 * type_counts[2] {
        if s.is_edge_nondegenerate() {
            violations.push("V differs from B + 2C".into());
        } else {
            notes.push("V differs from B + 2C".into());
        }
    }
    let surface = is_triangulated_surface(&s)?;
    if surface && min_loop.is_some_and(|l| l < 2) {
        violations.push("surface story passed through a loop of length 1".into());
    }
    let mut t = Trajectory {
        f: story.f,
        delta: params.delta,
        d_delta: params.d_delta,
        steps,
        closed: true,
        surface,
        v,
        h,
        n_near,
        type_counts,
        min_loop,
        violations,
        notes,
    };
    if !t.nearmoves_holds() {
        let msg = format!("V = {} exceeds (1 + delta) N + H = {}", t.v, t.nearmoves_bound());
        if s.is_edge_nondegenerate() {
            t.violations.push(msg);
        } else {
            t.notes.push(msg);
        }
    }
    Ok(t)
}

/// Like [`trace_story`], but any property violation is an error.
pub fn run_story(story: &GluingStory, params: &PotentialParams) -> Result<Trajectory> {
    let t = trace_story(story, params)?;
    if let Some(v) = t.violations.first() {
        return Err(Error::PropertyViolation(v.clone()));
    }
    Ok(t)
}

/// A story realizing labeled triangles: first the moves of a breadth-first
/// spanning tree of the triangles, then the remaining gluings in edge
/// order. Tree moves attach a fresh triangle, so they are all type A.
pub fn story_from_labeled_faces(faces: &[[usize; 3]]) -> Result<GluingStory> {
    let state = GluingState::from_labeled_faces(faces)?;
    if !state.is_closed() {
        return Err(Error::NotClosed);
    }
    let f = faces.len();
    let mut used = vec![false; 3 * f];
    let mut seen = vec![false; f];
    let mut moves = Vec::with_capacity(3 * f / 2);
    let mut rest = Vec::new();
    for start in 0..f {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(t) = queue.pop_front() {
            for s in 0..3 {
                let e = 3 * t + s;
                let (p, flip) = state.partner(e).unwrap();
                if seen[p / 3] {
                    continue;
                }
                seen[p / 3] = true;
                used[e] = true;
                used[p] = true;
                moves.push(GluingMove::new(side_of(e), side_of(p), flip));
                queue.push_back(p / 3);
            }
        }
    }
    for e in 0..3 * f {
        let (p, flip) = state.partner(e).unwrap();
        if e < p && !used[e] {
            rest.push(GluingMove::new(side_of(e), side_of(p), flip));
        }
    }
    moves.extend(rest);
    let story = GluingStory { f, moves };
    story.validate()?;
    Ok(story)
}

pub const TETRAHEDRON_FACES: [[usize; 3]; 4] = [[0, 1, 2], [0, 3, 1], [1, 3, 2], [2, 3, 0]];

/// Three type-A attachments followed by three near gluings.
pub fn tetrahedron_story() -> GluingStory {
    story_from_labeled_faces(&TETRAHEDRON_FACES).expect("tetrahedron is closed")
}

/// `f / 4` tetrahedra, each built completely before the next one starts.
pub fn disjoint_tetrahedra_story(f: usize) -> Result<GluingStory> {
    if f == 0 || f % 4 != 0 {
        return Err(Error::InvalidParams(format!("f = {f} must be a positive multiple of 4")));
    }
    let base = tetrahedron_story();
    let mut moves = Vec::with_capacity(3 * f / 2);
    for i in 0..f / 4 {
        let shift = |(t, s): (usize, usize)| (t + 4 * i, s);
        moves.extend(
            base.moves
                .iter()
                .map(|m| GluingMove::new(shift(m.a), shift(m.b), m.flip)),
        );
    }
    Ok(GluingStory { f, moves })
}

/// Two triangles glued along all three sides, matching corner to corner.
pub fn pillow_story() -> GluingStory {
    GluingStory {
        f: 2,
        moves: (0..3)
            .map(|s| GluingMove::new((0, s), (1, s), false))
            .collect(),
    }
}

/// A uniformly random oriented matching: the least unmatched edge is paired
/// with a uniform partner and orientation.
pub fn random_matching<R: Rng>(f: usize, rng: &mut R) -> Vec<GluingMove> {
    let mut free: Vec<usize> = (0..3 * f).collect();
    let mut moves = Vec::with_capacity(3 * f / 2);
    while !free.is_empty() {
        let e = free.remove(0);
        let j = rng.gen_range(0..free.len());
        let p = free.remove(j);
        moves.push(GluingMove::new(side_of(e), side_of(p), rng.gen()));
    }
    moves
}

/// A uniformly random story: a random matching in random order, with each
/// move's two sides in random order.
pub fn random_story<R: Rng>(f: usize, rng: &mut R) -> Result<GluingStory> {
    GluingState::new(f)?;
    let mut moves = random_matching(f, rng);
    moves.shuffle(rng);
    for m in &mut moves {
        if rng.gen() {
            std::mem::swap(&mut m.a, &mut m.b);
        }
    }
    Ok(GluingStory { f, moves })
}

/// A uniformly random story ending in the given labeled surface: triangles
/// are relabeled, each triangle's corners are rotated or reflected, and the
/// moves are put in random order with random side order.
pub fn random_surface_story<R: Rng>(faces: &[[usize; 3]], rng: &mut R) -> Result<GluingStory> {
    let mut faces = faces.to_vec();
    faces.shuffle(rng);
    for face in &mut faces {
        face.rotate_left(rng.gen_range(0..3));
        if rng.gen() {
            face.swap(1, 2);
        }
    }
    let story = story_from_labeled_faces(&faces)?;
    let mut story = shuffled(&story, rng);
    for m in &mut story.moves {
        if rng.gen() {
            std::mem::swap(&mut m.a, &mut m.b);
        }
    }
    Ok(story)
}

/// A random ordering of a fixed story's moves.
pub fn shuffled<R: Rng>(story: &GluingStory, rng: &mut R) -> GluingStory {
    let mut moves = story.moves.clone();
    moves.shuffle(rng);
    GluingStory { f: story.f, moves }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(d: f64) -> PotentialParams {
        PotentialParams::new(d).unwrap()
    }

    #[test]
    fn tetrahedron_trajectory() {
        let story = tetrahedron_story();
        let types: Vec<MoveType> = {
            let t = run_story(&story, &params(0.5)).unwrap();
            assert_eq!((t.v, t.h, t.n_near), (4, 1, 3));
            assert!(t.surface);
            t.steps.iter().map(|s| s.move_type).collect()
        };
        assert_eq!(&types[..3], &[MoveType::A; 3]);
        for d in [0.05, 0.2, 0.5, 1.0, 3.0] {
            let t = run_story(&story, &params(d)).unwrap();
            assert!(4.0 <= (1.0 + d) * 3.0 + 1.0);
            assert_eq!(t.n_near, 3);
        }
    }

    #[test]
    fn disjoint_tetrahedra_meet_the_bound_exactly() {
        for f in [4, 8, 12] {
            let t = run_story(&disjoint_tetrahedra_story(f).unwrap(), &params(0.2)).unwrap();
            assert_eq!((t.v, t.n_near, t.h), (f, 3 * f / 4, f / 4));
            assert_eq!(t.v, t.n_near + t.h);
        }
        assert!(disjoint_tetrahedra_story(6).is_err());
    }

    #[test]
    fn pillow_is_closed_but_not_a_surface() {
        let t = run_story(&pillow_story(), &params(0.5)).unwrap();
        assert!(t.closed && !t.surface);
        assert_eq!(t.v, 3);
        let types: Vec<MoveType> = t.steps.iter().map(|s| s.move_type).collect();
        assert_eq!(types, vec![MoveType::A, MoveType::B, MoveType::C]);
    }

    #[test]
    fn length_two_loop_gives_type_c() {
        let s = GluingState::new(2).unwrap();
        let s = s.apply_gluing(&GluingMove::new((0, 0), (1, 0), false)).unwrap();
        let s = s.apply_gluing(&GluingMove::new((0, 1), (1, 1), false)).unwrap();
        let a = s.analyze();
        assert_eq!(a.loop_lengths(), vec![2]);
        assert_eq!(super::super::classify_move(&s, 2, 5).unwrap(), MoveType::C);
        let before = a.v_int;
        let s2 = s.apply_gluing(&GluingMove::new((0, 2), (1, 2), false)).unwrap();
        let a2 = s2.analyze();
        assert_eq!((a2.v_int - before, a2.h_cl), (2, 1));
    }

    #[test]
    fn opposite_edges_of_a_square_are_two_apart() {
        let s = GluingState::new(2).unwrap();
        let s = s.apply_gluing(&GluingMove::new((0, 0), (1, 0), true)).unwrap();
        let a = s.analyze();
        assert_eq!(a.loops[0].len(), 4);
        let l = &a.loops[0];
        let (e, opposite) = (l[0], l[2]);
        assert!(!super::super::d_near(&s, e, opposite, 1).unwrap());
        assert!(super::super::d_near(&s, e, opposite, 2).unwrap());
        // Adjacent edges of the square: type B, loop 4 -> 2.
        let m = GluingMove::new(side_of(l[0]), side_of(l[1]), false);
        let flip_ok = [false, true]
            .into_iter()
            .map(|flip| GluingMove { flip, ..m })
            .find(|m| s.apply_gluing(m).unwrap().analyze().v_int == 1)
            .unwrap();
        assert_eq!(s.apply_gluing(&flip_ok).unwrap().analyze().loop_lengths(), vec![2]);
    }

    #[test]
    fn json_round_trip_and_validation() {
        let story = tetrahedron_story();
        let text = story.to_json();
        assert!(text.contains("\"a\":["));
        assert_eq!(GluingStory::from_json(&text).unwrap(), story);
        let mut bad = story.clone();
        bad.moves[1] = bad.moves[0];
        assert!(matches!(bad.validate(), Err(Error::MalformedStory(_))));
        bad.moves.pop();
        assert!(bad.validate().is_err());
    }
}
