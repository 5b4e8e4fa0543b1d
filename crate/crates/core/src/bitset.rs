//! Dense bit vectors over GF(2) and deterministic Gaussian elimination.
//!
//! Vectors are packed into 64-bit words. Elimination always pivots on the
//! lowest set bit, so reduced forms are reproducible run to run.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in indices {
            v.set(i);
        }
        v
    }

    pub fn ones(len: usize) -> Self {
        Self::from_indices(len, 0..len)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len, "bit {i} out of range {}", self.len);
        (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        debug_assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i >> 6] |= 1 << (i & 63);
    }

    #[inline]
    pub fn clear(&mut self, i: usize) {
        debug_assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i >> 6] &= !(1 << (i & 63));
    }

    #[inline]
    pub fn toggle(&mut self, i: usize) {
        debug_assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i >> 6] ^= 1 << (i & 63);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "length mismatch in xor");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn and_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "length mismatch in and");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn or_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "length mismatch in or");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &BitVec) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn lowest_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * 64 + t)
            })
        })
    }

    pub fn to_indices(&self) -> Vec<usize> {
        self.iter_ones().collect()
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec{:?}", self.to_indices())
    }
}

/// Incremental row-echelon basis over GF(2) keyed by lowest set bit.
///
/// Every inserted vector is reduced against the stored pivots. Each stored
/// pivot row also carries the combination of inserted vectors that produced
/// it, which is what yields kernel vectors and particular solutions.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    dim: usize,
    tag_len: usize,
    pivot_of: Vec<Option<usize>>,
    rows: Vec<(BitVec, BitVec)>,
}

impl EchelonBasis {
    /// `dim` is the ambient length of the vectors, `tag_len` the number of
    /// vectors that will be inserted (length of the combination tags).
    pub fn new(dim: usize, tag_len: usize) -> Self {
        Self {
            dim,
            tag_len,
            pivot_of: vec![None; dim],
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` in place against the basis; returns the combination of
    /// inserted vectors that was added. Afterwards `v` is zero exactly when
    /// it lay in the span.
    pub fn reduce(&self, v: &mut BitVec) -> BitVec {
        let mut combo = BitVec::zeros(self.tag_len);
        let mut rest = v.clone();
        let mut out = BitVec::zeros(v.len());
        while let Some(p) = rest.lowest_one() {
            match self.pivot_of[p] {
                Some(r) => {
                    rest.xor_assign(&self.rows[r].0);
                    combo.xor_assign(&self.rows[r].1);
                }
                None => {
                    out.set(p);
                    rest.clear(p);
                }
            }
        }
        *v = out;
        combo
    }

    /// Insert vector number `tag`. Returns `Some(kernel_combo)` when the
    /// vector is dependent on earlier ones.
    pub fn insert(&mut self, tag: usize, v: &BitVec) -> Option<BitVec> {
        assert_eq!(v.len(), self.dim);
        let mut v = v.clone();
        let mut combo = BitVec::zeros(self.tag_len);
        combo.set(tag);
        while let Some(p) = v.lowest_one() {
            match self.pivot_of[p] {
                Some(r) => {
                    v.xor_assign(&self.rows[r].0);
                    combo.xor_assign(&self.rows[r].1);
                }
                None => {
                    self.pivot_of[p] = Some(self.rows.len());
                    self.rows.push((v, combo));
                    return None;
                }
            }
        }
        Some(combo)
    }
}

/// Rank of a set of columns over GF(2).
pub fn rank(columns: &[BitVec]) -> usize {
    let Some(first) = columns.first() else {
        return 0;
    };
    let mut basis = EchelonBasis::new(first.len(), 0);
    let mut r = 0;
    for c in columns {
        let mut v = c.clone();
        while let Some(p) = v.lowest_one() {
            match basis.pivot_of[p] {
                Some(row) => v.xor_assign(&basis.rows[row].0),
                None => {
                    basis.pivot_of[p] = Some(basis.rows.len());
                    basis.rows.push((v, BitVec::zeros(0)));
                    r += 1;
                    break;
                }
            }
        }
    }
    r
}

/// Rank and a kernel basis of the linear map whose columns are given.
/// Kernel vectors are indexed over the columns.
pub fn rank_and_kernel(columns: &[BitVec], dim: usize) -> (usize, Vec<BitVec>, EchelonBasis) {
    let mut basis = EchelonBasis::new(dim, columns.len());
    let mut kernel = Vec::new();
    for (j, c) in columns.iter().enumerate() {
        if let Some(k) = basis.insert(j, c) {
            kernel.push(k);
        }
    }
    (basis.rank(), kernel, basis)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_get_count() {
        let mut v = BitVec::zeros(130);
        v.set(0);
        v.set(64);
        v.set(129);
        assert!(v.get(64) && !v.get(65));
        assert_eq!(v.count_ones(), 3);
        assert_eq!(v.to_indices(), vec![0, 64, 129]);
        v.toggle(64);
        assert_eq!(v.lowest_one(), Some(0));
        assert_eq!(v.count_ones(), 2);
    }

    #[test]
    fn rank_of_identity_and_dependent() {
        let cols: Vec<BitVec> = (0..5).map(|i| BitVec::from_indices(5, [i])).collect();
        assert_eq!(rank(&cols), 5);
        let dep = vec![
            BitVec::from_indices(3, [0, 1]),
            BitVec::from_indices(3, [1, 2]),
            BitVec::from_indices(3, [0, 2]),
        ];
        assert_eq!(rank(&dep), 2);
        let (r, ker, _) = rank_and_kernel(&dep, 3);
        assert_eq!(r, 2);
        assert_eq!(ker.len(), 1);
        assert_eq!(ker[0].to_indices(), vec![0, 1, 2]);
    }

    #[test]
    fn reduce_detects_span_membership() {
        let cols = vec![BitVec::from_indices(4, [0, 1]), BitVec::from_indices(4, [1, 2])];
        let (_, _, basis) = rank_and_kernel(&cols, 4);
        let mut inside = BitVec::from_indices(4, [0, 2]);
        let combo = basis.reduce(&mut inside);
        assert!(inside.is_zero());
        assert_eq!(combo.to_indices(), vec![0, 1]);
        let mut outside = BitVec::from_indices(4, [3]);
        basis.reduce(&mut outside);
        assert!(!outside.is_zero());
    }
}
