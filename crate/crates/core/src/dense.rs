//! Short cycles in dense complexes: edge degrees, link intersections,
//! short graph cycles and suspension 2-cycles.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::complex::{is_cycle2, Chain2, Complex2};
use crate::error::{Error, Result};

/// Simple undirected graph with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<Vec<usize>>,
}

/// On-disk form of a graph.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphDoc {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl SimpleGraph {
    pub fn empty(n: usize) -> Self {
        Self {
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph, rejecting loops, repeated edges and bad indices.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = [usize; 2]>) -> Result<Self> {
        let mut g = Self::empty(n);
        for [a, b] in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(Error::VertexOutOfRange { index: v, n });
                }
            }
            if a == b {
                return Err(Error::DegenerateSimplex(vec![a, b]));
            }
            if g.adj[a].contains(&b) {
                return Err(Error::Parse(format!("repeated edge {a}-{b}")));
            }
            g.adj[a].push(b);
            g.adj[b].push(a);
        }
        for l in &mut g.adj {
            l.sort_unstable();
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| [a, b]));
        Self::from_edges(n, edges).expect("complete graph is simple")
    }

    pub fn petersen() -> Self {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push([i, (i + 1) % 5]);
            edges.push([i, i + 5]);
            edges.push([5 + i, 5 + (i + 2) % 5]);
        }
        Self::from_edges(10, edges).expect("petersen graph is simple")
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|i| [i - 1, i])).expect("path is simple")
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    pub fn edges(&self) -> Vec<[usize; 2]> {
        (0..self.n())
            .flat_map(|a| {
                self.adj[a]
                    .iter()
                    .filter(move |&&b| b > a)
                    .map(move |&b| [a, b])
            })
            .collect()
    }

    /// Vertices with at least one neighbor.
    pub fn active_vertices(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| !self.adj[v].is_empty()).collect()
    }

    pub fn average_degree(&self) -> f64 {
        if self.n() == 0 {
            0.0
        } else {
            2.0 * self.num_edges() as f64 / self.n() as f64
        }
    }

    pub fn to_doc(&self) -> GraphDoc {
        GraphDoc {
            n: self.n(),
            edges: self.edges(),
        }
    }

    pub fn from_doc(doc: &GraphDoc) -> Result<Self> {
        Self::from_edges(doc.n, doc.edges.iter().copied())
    }
}

/// Repeatedly removes vertices of degree below `d`. The result keeps the
/// original labels; removed vertices become isolated.
pub fn min_degree_subgraph(g: &SimpleGraph, d: usize) -> SimpleGraph {
    let n = g.n();
    let mut alive = vec![true; n];
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| deg[v] < d).collect();
    while let Some(v) = queue.pop_front() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        for &w in g.neighbors(v) {
            if alive[w] {
                deg[w] -= 1;
                if deg[w] < d {
                    queue.push_back(w);
                }
            }
        }
    }
    let edges = g
        .edges()
        .into_iter()
        .filter(|&[a, b]| alive[a] && alive[b]);
    SimpleGraph::from_edges(n, edges).expect("subgraph of a simple graph")
}

/// A shortest cycle of the graph, as a vertex sequence. Among shortest
/// cycles, the first one met by breadth-first search from the lowest root
/// is returned.
pub fn shortest_cycle(g: &SimpleGraph) -> Option<Vec<usize>> {
    let n = g.n();
    let mut best: Option<Vec<usize>> = None;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut branch = vec![usize::MAX; n];
    for root in 0..n {
        if best.as_ref().is_some_and(|c| c.len() == 3) {
            break;
        }
        dist.fill(usize::MAX);
        dist[root] = 0;
        branch[root] = root;
        let mut queue = VecDeque::from([root]);
        let mut found: Option<(usize, usize)> = None;
        let mut limit = best.as_ref().map_or(usize::MAX, Vec::len);
        while let Some(u) = queue.pop_front() {
            if 2 * dist[u] + 1 >= limit {
                break;
            }
            for &w in g.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    branch[w] = if u == root { w } else { branch[u] };
                    queue.push_back(w);
                } else if w != parent[u] && branch[w] != branch[u] {
                    // The two tree paths meet only at the root.
                    let len = dist[u] + dist[w] + 1;
                    if len < limit {
                        limit = len;
                        found = Some((u, w));
                    }
                }
            }
        }
        if let Some((u, w)) = found {
            let mut left = vec![u];
            while *left.last().unwrap() != root {
                let p = parent[*left.last().unwrap()];
                left.push(p);
            }
            left.reverse();
            let mut right = vec![w];
            while parent[*right.last().unwrap()] != root {
                let p = parent[*right.last().unwrap()];
                right.push(p);
            }
            left.extend(right);
            best = Some(left);
        }
    }
    best
}

/// Whether `cycle` lists distinct vertices with consecutive (and last to
/// first) vertices adjacent.
pub fn is_graph_cycle(g: &SimpleGraph, cycle: &[usize]) -> bool {
    let distinct: std::collections::BTreeSet<_> = cycle.iter().collect();
    cycle.len() >= 3
        && distinct.len() == cycle.len()
        && (0..cycle.len()).all(|i| g.has_edge(cycle[i], cycle[(i + 1) % cycle.len()]))
}

/// Moore-bound cycle length `2 * ceil(1 / beta) + 1`.
pub fn moore_bound(beta: f64) -> usize {
    2 * (1.0 / beta).ceil() as usize + 1
}

/// A cycle of length at most the Moore bound in a graph on at most `n`
/// vertices with at least `n^(1 + beta)` edges.
pub fn short_graph_cycle(g: &SimpleGraph, beta: f64, n: usize) -> Result<Vec<usize>> {
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(Error::PreconditionUnmet(format!("beta = {beta} must be positive")));
    }
    if g.n() > n {
        return Err(Error::PreconditionUnmet(format!(
            "graph has {} vertices, more than n = {n}",
            g.n()
        )));
    }
    let need = (n as f64).powf(1.0 + beta);
    let have = g.num_edges() as f64;
    if have < need * (1.0 - 1e-9) {
        return Err(Error::PreconditionUnmet(format!(
            "graph has {have} edges, fewer than n^(1+beta) = {need:.3}"
        )));
    }
    let bound = moore_bound(beta);
    match shortest_cycle(g) {
        Some(c) if c.len() <= bound => Ok(c),
        _ => Err(Error::NoShortCycle { bound }),
    }
}

/// The graph `lk(a) ∩ lk(b)`: edge `xy` whenever faces `axy` and `bxy` both
/// exist. Vertices keep their labels in the complex.
pub fn link_intersection(x: &Complex2, a: usize, b: usize) -> Result<SimpleGraph> {
    if a == b {
        return Err(Error::InvalidParams("link intersection needs a != b".into()));
    }
    for v in [a, b] {
        if v >= x.n() {
            return Err(Error::VertexOutOfRange { index: v, n: x.n() });
        }
    }
    let n = x.n();
    let mut edges = Vec::new();
    for p in 0..n {
        if p == a || p == b {
            continue;
        }
        for q in p + 1..n {
            if q == a || q == b {
                continue;
            }
            if x.face_id([a, p, q]).is_some() && x.face_id([b, p, q]).is_some() {
                edges.push([p, q]);
            }
        }
    }
    SimpleGraph::from_edges(n, edges)
}

/// `P = sum over edges of C(deg e, 2)`.
pub fn edge_pair_count(x: &Complex2) -> u64 {
    (0..x.num_edges())
        .map(|e| {
            let d = x.edge_degree(e) as u64;
            d * d.saturating_sub(1) / 2
        })
        .sum()
}

/// Number of edges of `lk(a) ∩ lk(b)` for every pair `a < b`, in
/// lexicographic pair order. Each face pair sharing an edge contributes once.
pub fn link_intersection_sizes(x: &Complex2) -> Vec<((usize, usize), usize)> {
    let n = x.n();
    let mut counts = vec![0usize; n * n];
    for e in 0..x.num_edges() {
        let [p, q] = x.edges()[e];
        let apexes: Vec<usize> = x
            .edge_faces(e)
            .iter()
            .map(|&f| {
                let t = x.faces()[f];
                t.into_iter().find(|&v| v != p && v != q).unwrap()
            })
            .collect();
        for (i, &a) in apexes.iter().enumerate() {
            for &b in &apexes[i + 1..] {
                counts[a.min(b) * n + a.max(b)] += 1;
            }
        }
    }
    (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .map(|(a, b)| ((a, b), counts[a * n + b]))
        .collect()
}

/// A 2-cycle formed by suspending a graph cycle between two poles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuspensionCycle {
    pub poles: (usize, usize),
    pub equator: Vec<usize>,
    pub chain: Chain2,
}

impl SuspensionCycle {
    pub fn faces(&self, x: &Complex2) -> Vec<[usize; 3]> {
        x.chain_faces(&self.chain)
    }
}

/// Scans pole pairs by decreasing size of `lk(a) ∩ lk(b)` (ties in
/// lexicographic order) and suspends a shortest cycle of the first link
/// intersection that is not a forest.
pub fn find_suspension_cycle(x: &Complex2) -> Result<Option<SuspensionCycle>> {
    let mut pairs = link_intersection_sizes(x);
    pairs.retain(|&(_, c)| c >= 3);
    pairs.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    for ((a, b), _) in pairs {
        let t = link_intersection(x, a, b)?;
        let Some(equator) = shortest_cycle(&t) else {
            continue;
        };
        let mut faces = Vec::with_capacity(2 * equator.len());
        for i in 0..equator.len() {
            let p = equator[i];
            let q = equator[(i + 1) % equator.len()];
            for pole in [a, b] {
                faces.push(x.face_id([pole, p, q]).expect("link edge implies face"));
            }
        }
        let chain = x.chain2(faces);
        if chain.weight() != 2 * equator.len() || !is_cycle2(&chain, x)? {
            return Err(Error::PropertyViolation(format!(
                "suspension over poles ({a}, {b}) is not a 2-cycle"
            )));
        }
        return Ok(Some(SuspensionCycle {
            poles: (a, b),
            equator,
            chain,
        }));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn peeling() {
        let k4 = SimpleGraph::complete(4);
        assert_eq!(min_degree_subgraph(&k4, 3), k4);
        assert_eq!(min_degree_subgraph(&SimpleGraph::path(5), 2).num_edges(), 0);
    }

    #[test]
    fn girths() {
        assert_eq!(shortest_cycle(&SimpleGraph::complete(4)).unwrap().len(), 3);
        assert_eq!(shortest_cycle(&SimpleGraph::petersen()).unwrap().len(), 5);
        assert!(shortest_cycle(&SimpleGraph::path(6)).is_none());
        let c6 = SimpleGraph::from_edges(6, (0..6).map(|i| [i, (i + 1) % 6])).unwrap();
        let c = shortest_cycle(&c6).unwrap();
        assert_eq!(c.len(), 6);
        assert!(is_graph_cycle(&c6, &c));
    }

    #[test]
    fn moore_cycle_preconditions() {
        let k4 = SimpleGraph::complete(4);
        assert!(matches!(
            short_graph_cycle(&k4, 1.0, 5),
            Err(Error::PreconditionUnmet(_))
        ));
        let beta = (6f64).ln() / (5f64).ln() - 1.0;
        assert_eq!(short_graph_cycle(&k4, beta, 5).unwrap().len(), 3);
        let p = SimpleGraph::petersen();
        let beta = (15f64).ln() / (11f64).ln() - 1.0;
        let c = short_graph_cycle(&p, beta, 11).unwrap();
        assert_eq!(c.len(), 5);
        assert!(c.len() <= moore_bound(beta));
    }

    #[test]
    fn link_examples() {
        let d = Complex2::full_skeleton(6);
        assert_eq!(link_intersection(&d, 0, 1).unwrap().num_edges(), 6);
        let b = Complex2::bipyramid();
        let t = link_intersection(&b, 3, 4).unwrap();
        assert_eq!(t.edges(), vec![[0, 1], [0, 2], [1, 2]]);
        let e = Complex2::new(4, []).unwrap();
        assert_eq!(link_intersection(&e, 0, 1).unwrap().num_edges(), 0);
    }

    #[test]
    fn pair_counts() {
        assert_eq!(edge_pair_count(&Complex2::tetrahedron()), 6);
        assert_eq!(edge_pair_count(&Complex2::full_skeleton(5)), 30);
        assert_eq!(edge_pair_count(&Complex2::new(4, []).unwrap()), 0);
    }

    #[test]
    fn suspensions() {
        let s = find_suspension_cycle(&Complex2::bipyramid()).unwrap().unwrap();
        assert_eq!(s.poles, (3, 4));
        assert_eq!(s.chain.weight(), 6);
        let s = find_suspension_cycle(&Complex2::octahedron()).unwrap().unwrap();
        assert_eq!((s.poles, s.equator.len(), s.chain.weight()), ((0, 1), 4, 8));
        let s = find_suspension_cycle(&Complex2::full_skeleton(7)).unwrap().unwrap();
        assert_eq!(s.chain.weight(), 6);
        assert!(find_suspension_cycle(&Complex2::tetrahedron()).unwrap().is_none());
    }
}
