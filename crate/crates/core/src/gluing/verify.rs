//! Checks of the potential argument over every gluing order at small `f`,
//! and over random stories at larger `f`.

use std::collections::HashMap;

use serde::Serialize;

use super::story::{random_story, random_surface_story, trace_story, GluingStory, TOLERANCE};
use super::{
    boundary_distances_from, classify_with, edge_end, is_triangulated_surface, potential_from,
    side_of, GluingMove, GluingState, MoveType, PotentialParams,
};
use crate::error::{Error, Result};
use crate::rng::{stream_rng, STREAM_SAMPLES};

/// Largest `f` the exhaustive sweep accepts: keys pack 5 bits per edge.
pub const EXHAUSTIVE_MAX_F: usize = 4;
const MAX_DELTAS: usize = 4;

/// Packs a matching into a key: 5 bits per edge, holding `partner + 1` and
/// the flip bit, or zero when unmatched.
pub fn state_key(s: &GluingState) -> u64 {
    let mut key = 0u64;
    for e in 0..3 * s.f() {
        if let Some((p, flip)) = s.partner(e) {
            key |= ((p as u64 + 1) | (flip as u64) << 4) << (5 * e);
        }
    }
    key
}

pub fn state_from_key(f: usize, key: u64) -> Result<GluingState> {
    let mut s = GluingState::new(f)?;
    for e in 0..3 * f {
        let code = (key >> (5 * e)) & 31;
        if code == 0 {
            continue;
        }
        let p = (code & 15) as usize - 1;
        if e < p {
            s.glue(&GluingMove::new(side_of(e), side_of(p), code & 16 != 0))?;
        }
    }
    Ok(s)
}

#[derive(Clone, Copy)]
struct Node {
    potential: [f64; MAX_DELTAS],
    min_near: [u32; MAX_DELTAS],
    v_int: usize,
    nondegenerate: bool,
}

impl Node {
    fn of(s: &GluingState, params: &[PotentialParams]) -> Self {
        let a = s.analyze();
        let mut potential = [0.0; MAX_DELTAS];
        for (i, p) in params.iter().enumerate() {
            potential[i] = potential_from(&a, p);
        }
        Self {
            potential,
            min_near: [u32::MAX; MAX_DELTAS],
            v_int: a.v_int,
            nondegenerate: s.is_edge_nondegenerate(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExhaustiveReport {
    pub f: usize,
    pub deltas: Vec<f64>,
    /// Distinct partial matchings reached, the empty one included.
    pub states: u64,
    pub transitions: u64,
    pub closed_matchings: u64,
    pub surface_matchings: u64,
    pub property1_violations: u64,
    pub property2_violations: Vec<u64>,
    pub property3_violations: Vec<u64>,
    /// Potential rises beyond the bound on moves into states with a
    /// collapsed edge. Such stories never end in a surface.
    pub property3_degenerate: Vec<u64>,
    /// Largest potential increase seen on near and far moves.
    pub max_near_increase: Vec<f64>,
    pub max_far_increase: Vec<f64>,
    /// Closed matchings where the best order still breaks the bound.
    pub nearmoves_violations: Vec<u64>,
    /// Smallest `(1 + delta) N + H - V` over closed matchings.
    pub min_nearmoves_slack: Vec<f64>,
    /// V_int increments that differ from the type index, on transitions
    /// into edge-nondegenerate states and into degenerate ones.
    pub count_rule_violations: u64,
    pub count_rule_degenerate: u64,
    /// B and C moves whose edges are not adjacent.
    pub bc_not_adjacent: u64,
}

impl ExhaustiveReport {
    pub fn all_hold(&self) -> bool {
        self.property1_violations == 0
            && self.property2_violations.iter().all(|&v| v == 0)
            && self.property3_violations.iter().all(|&v| v == 0)
            && self.nearmoves_violations.iter().all(|&v| v == 0)
            && self.count_rule_violations == 0
            && self.bc_not_adjacent == 0
    }
}

fn check_deltas(deltas: &[f64]) -> Result<Vec<PotentialParams>> {
    if deltas.is_empty() || deltas.len() > MAX_DELTAS {
        return Err(Error::InvalidParams(format!(
            "between 1 and {MAX_DELTAS} delta values are supported"
        )));
    }
    deltas.iter().map(|&d| PotentialParams::new(d)).collect()
}

/// Every partial matching is a state; every gluing of two boundary edges
/// in either orientation is a transition. Property 3 is checked on every
/// transition, which covers every order of every story. The least number
/// of near moves over all orders reaching a closed matching is found by a
/// shortest-path pass over the levels.
pub fn exhaustive_verify(f: usize, deltas: &[f64]) -> Result<ExhaustiveReport> {
    if f > EXHAUSTIVE_MAX_F {
        return Err(Error::InvalidParams(format!(
            "exhaustive verification supports f <= {EXHAUSTIVE_MAX_F}"
        )));
    }
    let params = check_deltas(deltas)?;
    let nd = params.len();
    let start = GluingState::new(f)?;
    let mut root = Node::of(&start, &params);
    root.min_near = [0; MAX_DELTAS];
    let mut rep = ExhaustiveReport {
        f,
        deltas: deltas.to_vec(),
        states: 1,
        transitions: 0,
        closed_matchings: 0,
        surface_matchings: 0,
        property1_violations: root.potential[..nd]
            .iter()
            .filter(|x| x.abs() > TOLERANCE)
            .count() as u64,
        property2_violations: vec![0; nd],
        property3_violations: vec![0; nd],
        property3_degenerate: vec![0; nd],
        max_near_increase: vec![f64::NEG_INFINITY; nd],
        max_far_increase: vec![f64::NEG_INFINITY; nd],
        nearmoves_violations: vec![0; nd],
        min_nearmoves_slack: vec![f64::INFINITY; nd],
        count_rule_violations: 0,
        count_rule_degenerate: 0,
        bc_not_adjacent: 0,
    };
    let radii: Vec<usize> = params.iter().map(PotentialParams::radius).collect();
    let mut level: HashMap<u64, Node> = HashMap::from([(0, root)]);
    for _ in 0..3 * f / 2 {
        let mut next: HashMap<u64, Node> = HashMap::with_capacity(level.len() * 2);
        for (&key, node) in &level {
            let s = state_from_key(f, key)?;
            let a = s.analyze();
            let boundary = s.boundary_edges();
            for (i, &e1) in boundary.iter().enumerate() {
                let dist = boundary_distances_from(&s, &a, e1);
                for &e2 in &boundary[i + 1..] {
                    let ty = classify_with(&s, e1, e2);
                    if ty != MoveType::A && dist[e2] != Some(1) {
                        rep.bc_not_adjacent += 2;
                    }
                    for flip in [false, true] {
                        rep.transitions += 1;
                        let bits = |p: usize| (p as u64 + 1) | (flip as u64) << 4;
                        let post_key = key | bits(e2) << (5 * e1) | bits(e1) << (5 * e2);
                        let post = match next.get_mut(&post_key) {
                            Some(n) => n,
                            None => {
                                let ps = s.apply_gluing(&GluingMove::new(
                                    side_of(e1),
                                    side_of(e2),
                                    flip,
                                ))?;
                                next.entry(post_key).or_insert(Node::of(&ps, &params))
                            }
                        };
                        if post.v_int != node.v_int + ty.index() {
                            if post.nondegenerate {
                                rep.count_rule_violations += 1;
                            } else {
                                rep.count_rule_degenerate += 1;
                            }
                        }
                        for d in 0..nd {
                            let near = dist[e2].is_some_and(|x| x <= radii[d]);
                            let rise = post.potential[d] - node.potential[d];
                            let limit = if near {
                                rep.max_near_increase[d] = rep.max_near_increase[d].max(rise);
                                1.0 + params[d].delta
                            } else {
                                rep.max_far_increase[d] = rep.max_far_increase[d].max(rise);
                                0.0
                            };
                            if rise > limit + TOLERANCE {
                                if post.nondegenerate {
                                    rep.property3_violations[d] += 1;
                                } else {
                                    rep.property3_degenerate[d] += 1;
                                }
                            }
                            let n = node.min_near[d] + near as u32;
                            post.min_near[d] = post.min_near[d].min(n);
                        }
                    }
                }
            }
        }
        rep.states += next.len() as u64;
        level = next;
    }
    for (&key, node) in &level {
        rep.closed_matchings += 1;
        let s = state_from_key(f, key)?;
        let a = s.analyze();
        if is_triangulated_surface(&s)? {
            rep.surface_matchings += 1;
        }
        let (v, h) = (a.num_classes as f64, a.num_components as f64);
        for d in 0..nd {
            if (node.potential[d] - (v - h)).abs() > TOLERANCE {
                rep.property2_violations[d] += 1;
            }
            let slack = (1.0 + params[d].delta) * node.min_near[d] as f64 + h - v;
            rep.min_nearmoves_slack[d] = rep.min_nearmoves_slack[d].min(slack);
            if slack < -TOLERANCE {
                rep.nearmoves_violations[d] += 1;
            }
        }
    }
    Ok(rep)
}

#[derive(Clone, Debug, Serialize)]
pub struct SampledReport {
    pub f: usize,
    pub samples: u64,
    pub seed: u64,
    pub deltas: Vec<f64>,
    pub surfaces: u64,
    /// Stories with at least one violation, per delta.
    pub stories_with_violations: Vec<u64>,
    pub property3_violations: Vec<u64>,
    /// Potential rises on moves into states with a collapsed edge.
    pub property3_degenerate: Vec<u64>,
    pub nearmoves_violations: Vec<u64>,
    /// Stories with rule failures confined to states with a collapsed edge.
    pub stories_with_notes: u64,
    pub first_violation: Option<String>,
}

impl SampledReport {
    pub fn all_hold(&self) -> bool {
        self.stories_with_violations.iter().all(|&v| v == 0)
    }
}

/// Where sampled stories come from.
#[derive(Clone, Debug)]
pub enum StorySource {
    /// Uniform over all stories with `f` triangles.
    Uniform,
    /// Uniform over the stories ending in one of these labeled surfaces,
    /// each surface picked with equal probability.
    Surfaces(Vec<Vec<[usize; 3]>>),
}

/// Traces `samples` random stories for every delta.
pub fn sampled_verify(
    f: usize,
    samples: u64,
    seed: u64,
    deltas: &[f64],
    source: &StorySource,
) -> Result<SampledReport> {
    let params = check_deltas(deltas)?;
    if let StorySource::Surfaces(list) = source {
        if list.is_empty() || list.iter().any(|faces| faces.len() != f) {
            return Err(Error::InvalidParams(format!(
                "surface list must be nonempty with {f} faces each"
            )));
        }
    }
    let nd = params.len();
    let mut rep = SampledReport {
        f,
        samples,
        seed,
        deltas: deltas.to_vec(),
        surfaces: 0,
        stories_with_violations: vec![0; nd],
        property3_violations: vec![0; nd],
        property3_degenerate: vec![0; nd],
        nearmoves_violations: vec![0; nd],
        stories_with_notes: 0,
        first_violation: None,
    };
    for i in 0..samples {
        let mut rng = stream_rng(seed, STREAM_SAMPLES + i);
        let story: GluingStory = match source {
            StorySource::Uniform => random_story(f, &mut rng)?,
            StorySource::Surfaces(list) => {
                let pick = rand::Rng::gen_range(&mut rng, 0..list.len());
                random_surface_story(&list[pick], &mut rng)?
            }
        };
        for (d, p) in params.iter().enumerate() {
            let t = trace_story(&story, p)?;
            if d == 0 {
                rep.surfaces += t.surface as u64;
                rep.stories_with_notes += !t.notes.is_empty() as u64;
            }
            if !t.violations.is_empty() {
                rep.stories_with_violations[d] += 1;
                if rep.first_violation.is_none() {
                    rep.first_violation =
                        Some(format!("sample {i}: {} in {}", t.violations[0], story.to_json()));
                }
            }
            rep.property3_violations[d] += t
                .violations
                .iter()
                .filter(|v| v.starts_with("property 3"))
                .count() as u64;
            rep.property3_degenerate[d] += t
                .notes
                .iter()
                .filter(|v| v.starts_with("property 3"))
                .count() as u64;
            rep.nearmoves_violations[d] += !t.nearmoves_holds() as u64;
        }
    }
    Ok(rep)
}

#[derive(Clone, Debug, Serialize)]
pub struct BetaSplitReport {
    pub delta: f64,
    pub l_max: usize,
    pub checked: u64,
    /// Largest value of `beta(l1) + beta(l2) - beta(l1 + l2 + 2) - (1 + delta)`.
    pub worst_excess: f64,
}

impl BetaSplitReport {
    pub fn holds(&self) -> bool {
        self.worst_excess <= TOLERANCE
    }
}

/// Checks `beta(l1) + beta(l2) - beta(l) <= 1 + delta` for all
/// `l1, l2 >= 2` with `l = l1 + l2 + 2 <= l_max`.
pub fn beta_split_check(delta: f64, l_max: usize) -> Result<BetaSplitReport> {
    let p = PotentialParams::new(delta)?;
    let mut checked = 0;
    let mut worst = f64::NEG_INFINITY;
    for l1 in 2..l_max {
        for l2 in 2..l_max {
            let l = l1 + l2 + 2;
            if l > l_max {
                break;
            }
            checked += 1;
            worst = worst.max(p.beta(l1) + p.beta(l2) - p.beta(l) - (1.0 + delta));
        }
    }
    Ok(BetaSplitReport {
        delta,
        l_max,
        checked,
        worst_excess: worst,
    })
}

/// Whether the two ends of edge `e` lie in one vertex class.
pub fn is_collapsed(s: &GluingState, e: usize) -> bool {
    s.corner_class_root(edge_end(e, 0)) == s.corner_class_root(edge_end(e, 1))
}
