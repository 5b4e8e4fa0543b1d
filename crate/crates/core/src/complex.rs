//! Two-dimensional simplicial complexes and their Z/2 chain complexes.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::bitset::{rank, rank_and_kernel, BitVec};
use crate::error::{Error, Result};

/// A 2-dimensional simplicial complex on the vertex set `0..n`.
///
/// Edges and faces are kept sorted and densely indexed, so chains are bit
/// vectors over those indices.
#[derive(Clone, Debug)]
pub struct Complex2 {
    n: usize,
    edges: Vec<[usize; 2]>,
    faces: Vec<[usize; 3]>,
    edge_index: HashMap<[usize; 2], usize>,
    face_index: HashMap<[usize; 3], usize>,
    face_edges: Vec<[usize; 3]>,
    edge_faces: Vec<Vec<usize>>,
}

impl PartialEq for Complex2 {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges && self.faces == other.faces
    }
}

impl Eq for Complex2 {}

fn sorted_face(f: [usize; 3]) -> [usize; 3] {
    let mut f = f;
    f.sort_unstable();
    f
}

fn sorted_edge(a: usize, b: usize) -> [usize; 2] {
    if a < b {
        [a, b]
    } else {
        [b, a]
    }
}

impl Complex2 {
    /// Builds a complex from faces, adding every edge implied by a face.
    pub fn new(n: usize, faces: impl IntoIterator<Item = [usize; 3]>) -> Result<Self> {
        Self::with_edges(n, std::iter::empty(), faces)
    }

    /// Builds a complex from explicit edges plus faces. Edges implied by
    /// faces are added automatically.
    pub fn with_edges(
        n: usize,
        edges: impl IntoIterator<Item = [usize; 2]>,
        faces: impl IntoIterator<Item = [usize; 3]>,
    ) -> Result<Self> {
        let mut face_set = BTreeSet::new();
        for raw in faces {
            for &v in &raw {
                if v >= n {
                    return Err(Error::VertexOutOfRange { index: v, n });
                }
            }
            let f = sorted_face(raw);
            if f[0] == f[1] || f[1] == f[2] {
                return Err(Error::DegenerateSimplex(raw.to_vec()));
            }
            if !face_set.insert(f) {
                return Err(Error::DuplicateFace(f));
            }
        }
        let mut edge_set = BTreeSet::new();
        for [a, b] in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(Error::VertexOutOfRange { index: v, n });
                }
            }
            if a == b {
                return Err(Error::DegenerateSimplex(vec![a, b]));
            }
            edge_set.insert(sorted_edge(a, b));
        }
        for f in &face_set {
            edge_set.insert([f[0], f[1]]);
            edge_set.insert([f[0], f[2]]);
            edge_set.insert([f[1], f[2]]);
        }
        Ok(Self::from_sorted(
            n,
            edge_set.into_iter().collect(),
            face_set.into_iter().collect(),
        ))
    }

    fn from_sorted(n: usize, edges: Vec<[usize; 2]>, faces: Vec<[usize; 3]>) -> Self {
        let edge_index: HashMap<[usize; 2], usize> =
            edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let face_index: HashMap<[usize; 3], usize> =
            faces.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let mut edge_faces = vec![Vec::new(); edges.len()];
        let face_edges: Vec<[usize; 3]> = faces
            .iter()
            .enumerate()
            .map(|(i, f)| {
                let es = [
                    edge_index[&[f[0], f[1]]],
                    edge_index[&[f[0], f[2]]],
                    edge_index[&[f[1], f[2]]],
                ];
                for &e in &es {
                    edge_faces[e].push(i);
                }
                es
            })
            .collect();
        Self {
            n,
            edges,
            faces,
            edge_index,
            face_index,
            face_edges,
            edge_faces,
        }
    }

    /// The full 2-skeleton of the simplex on `n` vertices.
    pub fn full_skeleton(n: usize) -> Self {
        let faces = (0..n)
            .flat_map(|a| (a + 1..n).flat_map(move |b| (b + 1..n).map(move |c| [a, b, c])))
            .collect();
        let edges = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| [a, b]))
            .collect();
        Self::from_sorted(n, edges, faces)
    }

    /// Boundary of the tetrahedron on vertices 0..3.
    pub fn tetrahedron() -> Self {
        Self::new(4, [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]).expect("valid tetrahedron")
    }

    /// Triangle bipyramid: equator 0,1,2 and poles 3,4.
    pub fn bipyramid() -> Self {
        Self::new(
            5,
            [[0, 1, 3], [1, 2, 3], [0, 2, 3], [0, 1, 4], [1, 2, 4], [0, 2, 4]],
        )
        .expect("valid bipyramid")
    }

    /// Octahedron with antipodal pairs (0,1), (2,3), (4,5).
    pub fn octahedron() -> Self {
        let mut faces = Vec::new();
        for a in [0, 1] {
            for b in [2, 3] {
                for c in [4, 5] {
                    faces.push([a, b, c]);
                }
            }
        }
        Self::new(6, faces).expect("valid octahedron")
    }

    /// The 7-vertex triangulation of the torus.
    pub fn torus7() -> Self {
        let mut faces = Vec::new();
        for i in 0..7 {
            faces.push([i, (i + 1) % 7, (i + 3) % 7]);
            faces.push([i, (i + 2) % 7, (i + 3) % 7]);
        }
        Self::new(7, faces).expect("valid torus")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn faces(&self) -> &[[usize; 3]] {
        &self.faces
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn edge_id(&self, a: usize, b: usize) -> Option<usize> {
        self.edge_index.get(&sorted_edge(a, b)).copied()
    }

    pub fn face_id(&self, f: [usize; 3]) -> Option<usize> {
        self.face_index.get(&sorted_face(f)).copied()
    }

    /// Indices of the three edges of face `i`.
    pub fn face_edges(&self, i: usize) -> [usize; 3] {
        self.face_edges[i]
    }

    /// Indices of the faces containing edge `e`.
    pub fn edge_faces(&self, e: usize) -> &[usize] {
        &self.edge_faces[e]
    }

    /// Number of faces containing edge `e`.
    pub fn edge_degree(&self, e: usize) -> usize {
        self.edge_faces[e].len()
    }

    /// Column of the boundary matrix for face `i`.
    pub fn boundary_column(&self, i: usize) -> BitVec {
        BitVec::from_indices(self.edges.len(), self.face_edges[i])
    }

    /// Columns of the face-to-edge boundary matrix.
    pub fn boundary2_columns(&self) -> Vec<BitVec> {
        (0..self.faces.len())
            .map(|i| self.boundary_column(i))
            .collect()
    }

    /// Columns of the edge-to-vertex boundary matrix.
    pub fn boundary1_columns(&self) -> Vec<BitVec> {
        self.edges
            .iter()
            .map(|&[a, b]| BitVec::from_indices(self.n, [a, b]))
            .collect()
    }

    /// Vertex mask of face `i` (only meaningful for `n <= 128`).
    pub fn face_vertex_mask(&self, i: usize) -> u128 {
        let [a, b, c] = self.faces[i];
        (1u128 << a) | (1u128 << b) | (1u128 << c)
    }

    /// Vertices touched by the faces of a chain.
    pub fn chain_vertices(&self, c: &Chain2) -> BTreeSet<usize> {
        c.bits
            .iter_ones()
            .flat_map(|i| self.faces[i])
            .collect()
    }

    /// Edges touched by the faces of a chain.
    pub fn chain_edges(&self, c: &Chain2) -> BTreeSet<usize> {
        c.bits
            .iter_ones()
            .flat_map(|i| self.face_edges[i])
            .collect()
    }

    /// Sub-complex with the same vertex set consisting of the given faces and
    /// their edges only.
    pub fn restrict_to_faces(&self, faces: impl IntoIterator<Item = usize>) -> Complex2 {
        let fs: Vec<[usize; 3]> = faces.into_iter().map(|i| self.faces[i]).collect();
        Complex2::new(self.n, fs).expect("faces of a valid complex")
    }

    /// Removes the listed faces but keeps every edge.
    pub fn without_faces(&self, removed: &BTreeSet<usize>) -> Complex2 {
        let faces = self
            .faces
            .iter()
            .enumerate()
            .filter(|(i, _)| !removed.contains(i))
            .map(|(_, &f)| f)
            .collect();
        Self::from_sorted(self.n, self.edges.clone(), faces)
    }

    /// Induced subcomplex on `vertices`, relabeled densely in the given
    /// (sorted) order. Returns the complex and the old labels.
    pub fn induced(&self, vertices: &[usize]) -> (Complex2, Vec<usize>) {
        let mut vs = vertices.to_vec();
        vs.sort_unstable();
        vs.dedup();
        let mut new_label = vec![usize::MAX; self.n];
        for (i, &v) in vs.iter().enumerate() {
            new_label[v] = i;
        }
        let edges: Vec<[usize; 2]> = self
            .edges
            .iter()
            .filter(|e| new_label[e[0]] != usize::MAX && new_label[e[1]] != usize::MAX)
            .map(|e| [new_label[e[0]], new_label[e[1]]])
            .collect();
        let faces: Vec<[usize; 3]> = self
            .faces
            .iter()
            .filter(|f| f.iter().all(|&v| new_label[v] != usize::MAX))
            .map(|f| [new_label[f[0]], new_label[f[1]], new_label[f[2]]])
            .collect();
        // Relabeling is monotone so both lists stay sorted.
        (Self::from_sorted(vs.len(), edges, faces), vs)
    }

    /// True when every pair of vertices spans an edge.
    pub fn has_complete_skeleton(&self) -> bool {
        self.edges.len() == self.n * self.n.saturating_sub(1) / 2
    }

    pub fn empty_chain2(&self) -> Chain2 {
        Chain2::zeros(self.faces.len())
    }

    pub fn empty_chain1(&self) -> Chain1 {
        Chain1::zeros(self.edges.len())
    }

    /// Chain with the listed face indices set.
    pub fn chain2(&self, faces: impl IntoIterator<Item = usize>) -> Chain2 {
        Chain2::from_indices(self.faces.len(), faces)
    }

    /// Chain with all faces set.
    pub fn all_faces(&self) -> Chain2 {
        Chain2 {
            bits: BitVec::ones(self.faces.len()),
        }
    }

    /// The 1-cycle around the triangle on three vertices.
    pub fn triangle_cycle(&self, a: usize, b: usize, c: usize) -> Result<Chain1> {
        let mut ch = self.empty_chain1();
        for (x, y) in [(a, b), (a, c), (b, c)] {
            let e = self
                .edge_id(x, y)
                .ok_or(Error::MissingEdge((x.min(y), x.max(y))))?;
            ch.bits.toggle(e);
        }
        Ok(ch)
    }

    /// Sorted face triples of a chain.
    pub fn chain_faces(&self, c: &Chain2) -> Vec<[usize; 3]> {
        c.bits.iter_ones().map(|i| self.faces[i]).collect()
    }
}

/// A 2-chain over Z/2: a set of faces.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Chain2 {
    pub bits: BitVec,
}

/// A 1-chain over Z/2: a set of edges.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Chain1 {
    pub bits: BitVec,
}

/// A 0-chain over Z/2: a set of vertices.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Chain0 {
    pub bits: BitVec,
}

macro_rules! chain_common {
    ($t:ident) => {
        impl $t {
            pub fn zeros(len: usize) -> Self {
                Self {
                    bits: BitVec::zeros(len),
                }
            }

            pub fn from_indices(len: usize, idx: impl IntoIterator<Item = usize>) -> Self {
                Self {
                    bits: BitVec::from_indices(len, idx),
                }
            }

            /// Hamming weight.
            pub fn weight(&self) -> usize {
                self.bits.count_ones()
            }

            pub fn len(&self) -> usize {
                self.bits.len()
            }

            pub fn is_empty(&self) -> bool {
                self.bits.is_empty()
            }

            pub fn is_zero(&self) -> bool {
                self.bits.is_zero()
            }

            pub fn indices(&self) -> Vec<usize> {
                self.bits.to_indices()
            }

            pub fn xor(&self, other: &Self) -> Self {
                let mut bits = self.bits.clone();
                bits.xor_assign(&other.bits);
                Self { bits }
            }
        }
    };
}

chain_common!(Chain2);
chain_common!(Chain1);
chain_common!(Chain0);

/// Z/2 boundary of a 2-chain: each face maps to the sum of its three edges.
pub fn boundary2(c: &Chain2, x: &Complex2) -> Result<Chain1> {
    if c.len() != x.num_faces() {
        return Err(Error::IndexMismatch {
            expected: x.num_faces(),
            got: c.len(),
        });
    }
    let mut out = x.empty_chain1();
    for i in c.bits.iter_ones() {
        for e in x.face_edges(i) {
            out.bits.toggle(e);
        }
    }
    Ok(out)
}

/// Z/2 boundary of a 1-chain.
pub fn boundary1(c: &Chain1, x: &Complex2) -> Result<Chain0> {
    if c.len() != x.num_edges() {
        return Err(Error::IndexMismatch {
            expected: x.num_edges(),
            got: c.len(),
        });
    }
    let mut out = Chain0::zeros(x.n());
    for i in c.bits.iter_ones() {
        let [a, b] = x.edges()[i];
        out.bits.toggle(a);
        out.bits.toggle(b);
    }
    Ok(out)
}

pub fn is_cycle2(c: &Chain2, x: &Complex2) -> Result<bool> {
    Ok(boundary2(c, x)?.is_zero())
}

pub fn is_cycle1(c: &Chain1, x: &Complex2) -> Result<bool> {
    Ok(boundary1(c, x)?.is_zero())
}

/// Ranks of the chain complex and the Z/2 Betti numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologySummary {
    pub dim_z2: usize,
    pub dim_b1: usize,
    pub dim_h1: usize,
    pub dim_h2: usize,
    pub beta0: usize,
    pub beta1: usize,
    pub beta2: usize,
}

pub fn homology_ranks(x: &Complex2) -> HomologySummary {
    let r2 = rank(&x.boundary2_columns());
    let r1 = rank(&x.boundary1_columns());
    let dim_z2 = x.num_faces() - r2;
    let dim_z1 = x.num_edges() - r1;
    let dim_h1 = dim_z1 - r2;
    HomologySummary {
        dim_z2,
        dim_b1: r2,
        dim_h1,
        dim_h2: dim_z2,
        beta0: x.n() - r1,
        beta1: dim_h1,
        beta2: dim_z2,
    }
}

/// Dimension of the 2-cycle space.
pub fn cycle_space_dim(x: &Complex2) -> usize {
    x.num_faces() - rank(&x.boundary2_columns())
}

/// A basis of the 2-cycle space as chains.
pub fn cycle_basis(x: &Complex2) -> Vec<Chain2> {
    let (_, kernel, _) = rank_and_kernel(&x.boundary2_columns(), x.num_edges());
    kernel.into_iter().map(|bits| Chain2 { bits }).collect()
}

/// Raw Euler characteristic `n - e + f` of the whole complex.
pub fn euler_characteristic(x: &Complex2) -> i64 {
    x.n() as i64 - x.num_edges() as i64 + x.num_faces() as i64
}

/// Euler characteristic counting only vertices that lie on some edge.
/// This is the variant used for cycle supports.
pub fn euler_characteristic_support(x: &Complex2) -> i64 {
    let mut used = vec![false; x.n()];
    for &[a, b] in x.edges() {
        used[a] = true;
        used[b] = true;
    }
    let v = used.iter().filter(|&&u| u).count();
    v as i64 - x.num_edges() as i64 + x.num_faces() as i64
}

/// On-disk form of a complex.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexDoc {
    pub n: usize,
    pub faces: Vec<[usize; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<[usize; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<serde_json::Value>,
}

pub fn parse_complex(text: &str) -> Result<Complex2> {
    let doc: ComplexDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    complex_from_doc(&doc)
}

pub fn complex_from_doc(doc: &ComplexDoc) -> Result<Complex2> {
    Complex2::with_edges(
        doc.n,
        doc.edges.clone().unwrap_or_default(),
        doc.faces.iter().copied(),
    )
}

/// Document for a complex. Edges are written only when some edge lies in
/// no face, since otherwise they are implied.
pub fn complex_to_doc(x: &Complex2) -> ComplexDoc {
    let implied = Complex2::new(x.n(), x.faces().iter().copied()).expect("valid faces");
    let edges = (implied.num_edges() != x.num_edges()).then(|| x.edges().to_vec());
    ComplexDoc {
        n: x.n(),
        faces: x.faces().to_vec(),
        edges,
        meta: None,
    }
}

pub fn complex_to_json(x: &Complex2) -> String {
    serde_json::to_string(&complex_to_doc(x)).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn boundary_of_one_face() {
        let x = Complex2::full_skeleton(3);
        let d = boundary2(&x.chain2([0]), &x).unwrap();
        assert_eq!(d.weight(), 3);
    }

    #[test]
    fn tetrahedron_is_a_cycle() {
        let x = Complex2::tetrahedron();
        assert!(is_cycle2(&x.all_faces(), &x).unwrap());
        assert!(!is_cycle2(&x.chain2([0]), &x).unwrap());
        assert!(boundary2(&x.empty_chain2(), &x).unwrap().is_zero());
    }

    #[test]
    fn sum_of_two_tetrahedra_in_delta5_is_a_cycle() {
        let x = Complex2::full_skeleton(5);
        let t1 = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];
        let t2 = [[0, 1, 2], [0, 1, 4], [0, 2, 4], [1, 2, 4]];
        let c1 = x.chain2(t1.iter().map(|&f| x.face_id(f).unwrap()));
        let c2 = x.chain2(t2.iter().map(|&f| x.face_id(f).unwrap()));
        let sum = c1.xor(&c2);
        assert_eq!(sum.weight(), 6);
        assert!(is_cycle2(&sum, &x).unwrap());
    }

    #[test]
    fn mismatched_chain_is_rejected() {
        let x = Complex2::tetrahedron();
        let c = Chain2::zeros(3);
        assert!(matches!(
            boundary2(&c, &x),
            Err(Error::IndexMismatch { expected: 4, got: 3 })
        ));
    }

    #[test]
    fn homology_of_known_complexes() {
        assert_eq!(homology_ranks(&Complex2::tetrahedron()).dim_h2, 1);
        for n in 4..=8 {
            let h = homology_ranks(&Complex2::full_skeleton(n));
            assert_eq!(h.dim_z2, binom(n - 1, 3), "n = {n}");
            assert_eq!(h.beta0, 1);
            assert_eq!(h.beta1, 0);
        }
        let torus = homology_ranks(&Complex2::torus7());
        assert_eq!((torus.beta0, torus.beta1, torus.beta2), (1, 2, 1));
        let empty = Complex2::new(3, []).unwrap();
        assert_eq!(homology_ranks(&empty).dim_z2, 0);
        assert_eq!(homology_ranks(&empty).beta0, 3);
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(euler_characteristic(&Complex2::tetrahedron()), 2);
        assert_eq!(euler_characteristic(&Complex2::octahedron()), 2);
        let t = Complex2::torus7();
        assert_eq!((t.n(), t.num_edges(), t.num_faces()), (7, 21, 14));
        assert_eq!(euler_characteristic(&t), 0);
        let padded = Complex2::new(6, [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]).unwrap();
        assert_eq!(euler_characteristic(&padded), 4);
        assert_eq!(euler_characteristic_support(&padded), 2);
    }

    #[test]
    fn parse_examples() {
        let t = parse_complex(r#"{"n":4, "faces":[[0,1,2],[0,1,3],[0,2,3],[1,2,3]]}"#).unwrap();
        assert_eq!(t, Complex2::tetrahedron());
        let e = parse_complex(r#"{"n":3, "faces":[]}"#).unwrap();
        assert_eq!((e.num_edges(), e.num_faces()), (0, 0));
        assert!(matches!(
            parse_complex(r#"{"n":2, "faces":[[0,1,2]]}"#),
            Err(Error::VertexOutOfRange { index: 2, n: 2 })
        ));
        assert!(matches!(
            parse_complex(r#"{"n":3, "faces":[[0,1,2],[2,1,0]]}"#),
            Err(Error::DuplicateFace(_))
        ));
        assert!(matches!(parse_complex("{"), Err(Error::Parse(_))));
    }

    #[test]
    fn json_round_trip_keeps_bare_edges() {
        let x = Complex2::with_edges(4, [[0, 3], [1, 3]], [[0, 1, 2]]).unwrap();
        let back = parse_complex(&complex_to_json(&x)).unwrap();
        assert_eq!(back, x);
        let t = Complex2::tetrahedron();
        assert!(!complex_to_json(&t).contains("edges"));
    }

    #[test]
    fn induced_relabels() {
        let x = Complex2::full_skeleton(6);
        let (d, map) = x.induced(&[5, 1, 3]);
        assert_eq!(map, vec![1, 3, 5]);
        assert_eq!(d.num_faces(), 1);
        assert_eq!(d.faces()[0], [0, 1, 2]);
    }
}
