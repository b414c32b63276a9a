//! Incremental row echelon forms used for spans, membership and solving.

use std::collections::BTreeMap;

use super::sparse::{axpy, scale, SparseVec};
use super::Scalar;

/// A subspace of `k^dim` kept as rows whose leading entry is 1.
///
/// Rows are only reduced against earlier pivots, which is enough for a
/// canonical normal form: reducing in increasing column order never
/// reintroduces an already eliminated pivot column.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    dim: usize,
    rows: Vec<SparseVec>,
    pivot_row: BTreeMap<usize, usize>,
    /// For each row, its expression in terms of inserted vectors.
    combos: Option<Vec<SparseVec>>,
    inserted: usize,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon { dim, ..Default::default() }
    }

    /// Like [`Echelon::new`] but records how every row arises from the
    /// inserted vectors, so that [`Echelon::solve`] works.
    pub fn with_tracking(dim: usize) -> Self {
        Echelon { dim, combos: Some(Vec::new()), ..Default::default() }
    }

    pub fn from_vectors<I: IntoIterator<Item = SparseVec>>(dim: usize, vs: I) -> Self {
        let mut e = Self::new(dim);
        for v in vs {
            e.insert(v);
        }
        e
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivot_row.keys().copied()
    }

    pub fn is_pivot(&self, c: usize) -> bool {
        self.pivot_row.contains_key(&c)
    }

    /// Column indices not used as pivots, in increasing order. These index
    /// a basis of the quotient `k^dim / span`.
    pub fn complement(&self) -> Vec<usize> {
        (0..self.dim).filter(|c| !self.pivot_row.contains_key(c)).collect()
    }

    /// Normal form of `v` modulo the span, together with the coefficients of
    /// the rows that were subtracted.
    fn reduce_with(&self, v: &[(usize, Scalar)]) -> (SparseVec, Vec<(usize, Scalar)>) {
        let mut work: BTreeMap<usize, Scalar> = v.iter().cloned().collect();
        let mut used = Vec::new();
        let mut cursor = 0usize;
        loop {
            let next = work.range(cursor..).next().map(|(c, _)| *c);
            let Some(c) = next else { break };
            cursor = c + 1;
            let Some(&r) = self.pivot_row.get(&c) else { continue };
            let coef = work.remove(&c).unwrap();
            for (j, x) in &self.rows[r][1..] {
                let e = work.entry(*j).or_insert_with(Scalar::zero);
                *e -= &(&coef * x);
                if e.is_zero() {
                    work.remove(j);
                }
            }
            used.push((r, coef));
        }
        (work.into_iter().collect(), used)
    }

    pub fn reduce(&self, v: &[(usize, Scalar)]) -> SparseVec {
        self.reduce_with(v).0
    }

    pub fn contains(&self, v: &[(usize, Scalar)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        debug_assert!(v.iter().all(|(i, _)| *i < self.dim));
        let idx = self.inserted;
        self.inserted += 1;
        let (nf, used) = self.reduce_with(&v);
        if nf.is_empty() {
            return false;
        }
        let lead = nf[0].1.recip();
        let row = scale(&nf, &lead);
        if let Some(combos) = &mut self.combos {
            let mut combo: SparseVec = vec![(idx, Scalar::one())];
            for (r, c) in &used {
                combo = axpy(&combo, &(-c), &combos[*r]);
            }
            combos.push(scale(&combo, &lead));
        }
        self.pivot_row.insert(row[0].0, self.rows.len());
        self.rows.push(row);
        true
    }

    /// Expresses `v` as a combination of the inserted vectors (by insertion
    /// index). Returns `None` if `v` is not in the span.
    ///
    /// Panics if the echelon was built without tracking.
    pub fn solve(&self, v: &[(usize, Scalar)]) -> Option<SparseVec> {
        let combos = self.combos.as_ref().expect("solve needs a tracking echelon");
        let (nf, used) = self.reduce_with(v);
        if !nf.is_empty() {
            return None;
        }
        let mut out: SparseVec = Vec::new();
        for (r, c) in used {
            out = axpy(&out, &c, &combos[r]);
        }
        Some(out)
    }

    /// Rows in reduced row echelon form, sorted by pivot.
    pub fn rref(&self) -> Vec<SparseVec> {
        let mut rows: BTreeMap<usize, SparseVec> = BTreeMap::new();
        for (&p, &r) in self.pivot_row.iter().rev() {
            let mut v = self.rows[r].clone();
            loop {
                let hit = v[1..].iter().find(|(c, _)| rows.contains_key(c)).cloned();
                let Some((c, coef)) = hit else { break };
                v = axpy(&v, &(-coef), &rows[&c]);
            }
            rows.insert(p, v);
        }
        rows.into_values().collect()
    }

    /// Coordinates of `v` in the quotient basis given by [`Echelon::complement`].
    pub fn quotient_coords(&self, v: &[(usize, Scalar)], complement: &[usize]) -> SparseVec {
        self.reduce(v)
            .into_iter()
            .map(|(c, x)| {
                let k = complement.binary_search(&c).expect("normal form hits a pivot");
                (k, x)
            })
            .collect()
    }
}
