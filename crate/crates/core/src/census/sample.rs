//! How often random gluing stories produce each vertex count.

use std::collections::BTreeMap;
use std::sync::Mutex;

use serde::Serialize;

use super::{enumerate_closed_gluings, EnumOptions};
use crate::error::Result;
use crate::gluing::story::{random_story, trace_story};
use crate::gluing::{GluingState, PotentialParams};
use crate::rng::{stream_rng, STREAM_SAMPLES};

#[derive(Clone, Debug, Serialize)]
pub struct VertexRow {
    pub w: usize,
    pub count: u64,
    pub surfaces: u64,
    pub frequency: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct VertexHistogram {
    pub f: usize,
    pub samples: u64,
    pub seed: u64,
    pub delta: f64,
    pub rows: Vec<VertexRow>,
    pub mean_near_moves: f64,
    /// Samples ending in a complex without collapsed edges that break
    /// `V <= (1 + delta) N + H`.
    pub nearmoves_failures: u64,
    /// The same, among samples ending with a collapsed edge.
    pub nearmoves_failures_degenerate: u64,
}

impl VertexHistogram {
    /// Most frequent vertex count, the smallest on ties.
    pub fn mode(&self) -> Option<usize> {
        self.rows
            .iter()
            .max_by(|a, b| a.count.cmp(&b.count).then(b.w.cmp(&a.w)))
            .map(|r| r.w)
    }

    /// Whether counts strictly decrease from the mode onward, looking only
    /// at vertex counts observed at least `min_count` times so that the
    /// sparse tail does not decide the answer.
    pub fn decreasing_beyond_mode(&self, min_count: u64) -> bool {
        let Some(mode) = self.mode() else {
            return true;
        };
        let count = |w: usize| self.rows.iter().find(|r| r.w == w).map_or(0, |r| r.count);
        let max_w = self
            .rows
            .iter()
            .filter(|r| r.count >= min_count)
            .map(|r| r.w)
            .max()
            .unwrap_or(mode);
        (mode..max_w).all(|w| count(w + 1) < count(w))
    }
}

/// Samples uniformly random stories: a uniform oriented matching put in
/// uniform order. Sample `i` draws from its own stream, so results do not
/// depend on scheduling.
pub fn sampled_vertex_statistics(
    f: usize,
    samples: u64,
    seed: u64,
    params: &PotentialParams,
) -> Result<VertexHistogram> {
    GluingState::new(f)?;
    let mut by_w: BTreeMap<usize, (u64, u64)> = BTreeMap::new();
    let mut near_total = 0u64;
    let (mut fail, mut fail_deg) = (0, 0);
    for i in 0..samples {
        let mut rng = stream_rng(seed, STREAM_SAMPLES + i);
        let story = random_story(f, &mut rng)?;
        let t = trace_story(&story, params)?;
        let entry = by_w.entry(t.v).or_default();
        entry.0 += 1;
        entry.1 += t.surface as u64;
        near_total += t.n_near as u64;
        if !t.nearmoves_holds() {
            let collapsed = t.steps.last().is_some_and(|s| !s.nondegenerate);
            if collapsed {
                fail_deg += 1;
            } else {
                fail += 1;
            }
        }
    }
    let rows = by_w
        .into_iter()
        .map(|(w, (count, surfaces))| VertexRow {
            w,
            count,
            surfaces,
            frequency: count as f64 / samples.max(1) as f64,
        })
        .collect();
    Ok(VertexHistogram {
        f,
        samples,
        seed,
        delta: params.delta,
        rows,
        mean_near_moves: near_total as f64 / samples.max(1) as f64,
        nearmoves_failures: fail,
        nearmoves_failures_degenerate: fail_deg,
    })
}

/// Vertex counts over every oriented matching, for small `f`.
pub fn exhaustive_vertex_distribution(f: usize) -> Result<BTreeMap<usize, u64>> {
    let counts: Mutex<BTreeMap<usize, u64>> = Mutex::new(BTreeMap::new());
    enumerate_closed_gluings(f, EnumOptions::default(), &|s| {
        let v = s.analyze().num_classes;
        *counts.lock().unwrap().entry(v).or_default() += 1;
    })?;
    Ok(counts.into_inner().unwrap())
}
