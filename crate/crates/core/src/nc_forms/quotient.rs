//! Quotients of slices by subspaces, and the complexes and maps they carry.

use std::fmt::Debug;
use std::hash::Hash;

use crate::exact_linalg::{induced_rank, Cochains, ComplexError, ComplexSlice, Echelon, SparseMatrix, SparseVec};
use crate::graded::{LinComb, Slice};

/// `slice / sub`, with the non-pivot keys of `sub` as quotient basis.
#[derive(Clone, Debug)]
pub struct QuotientSpace<K> {
    slice: Slice<K>,
    sub: Echelon,
    complement: Vec<usize>,
}

impl<K: Ord + Clone + Hash + Eq + Debug> QuotientSpace<K> {
    pub fn new(slice: Slice<K>, sub: Echelon) -> Self {
        assert_eq!(slice.dim(), sub.dim());
        let complement = sub.complement();
        QuotientSpace { slice, sub, complement }
    }

    /// The whole slice.
    pub fn full(slice: Slice<K>) -> Self {
        let n = slice.dim();
        Self::new(slice, Echelon::new(n))
    }

    /// `slice` modulo the span of `vectors`.
    pub fn spanned<I: IntoIterator<Item = LinComb<K>>>(slice: Slice<K>, vectors: I) -> Self {
        let mut e = Echelon::new(slice.dim());
        for v in vectors {
            e.insert(slice.to_sparse(&v));
        }
        Self::new(slice, e)
    }

    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    pub fn ambient(&self) -> &Slice<K> {
        &self.slice
    }

    pub fn sub(&self) -> &Echelon {
        &self.sub
    }

    /// Keys whose classes form the quotient basis.
    pub fn representatives(&self) -> impl Iterator<Item = &K> + '_ {
        self.complement.iter().map(|&i| self.slice.key(i))
    }

    pub fn coords(&self, v: &LinComb<K>) -> SparseVec {
        self.sub.quotient_coords(&self.slice.to_sparse(v), &self.complement)
    }
}

/// Matrix of the map induced by `f` on representatives.
pub fn quotient_map<K, L, F>(from: &QuotientSpace<K>, to: &QuotientSpace<L>, f: F) -> SparseMatrix
where
    K: Ord + Clone + Hash + Eq + Debug,
    L: Ord + Clone + Hash + Eq + Debug,
    F: Fn(&K) -> LinComb<L>,
{
    let cols = from.representatives().map(|k| to.coords(&f(k))).collect();
    SparseMatrix::from_columns(to.dim(), cols)
}

/// The complex `levels[0] → levels[1] → …` with differential `d`, starting
/// in degree `start`. Fails if the induced maps do not square to zero.
pub fn quotient_complex<K, F>(start: i32, levels: &[QuotientSpace<K>], d: F) -> Result<ComplexSlice, ComplexError>
where
    K: Ord + Clone + Hash + Eq + Debug,
    F: Fn(&K) -> LinComb<K>,
{
    let dims = levels.iter().map(QuotientSpace::dim).collect();
    let diffs = levels.windows(2).map(|w| quotient_map(&w[0], &w[1], &d)).collect();
    ComplexSlice::new(start, dims, diffs)
}

/// Ranks of `H^n(src) → H^n(tgt)` for the chain map with components `maps`
/// (one per degree of `src`, same start).
pub fn induced_ranks(src: &ComplexSlice, tgt: &ComplexSlice, maps: &[SparseMatrix]) -> Vec<usize> {
    (0..maps.len())
        .map(|i| {
            let n = src.start() + i as i32;
            induced_rank(&src.spot(n).unwrap(), &tgt.spot(n).unwrap(), &maps[i])
        })
        .collect()
}
