//! Sparse vectors and column-major sparse matrices over [`Scalar`].

use std::collections::BTreeMap;

use super::Scalar;

/// A sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec = Vec<(usize, Scalar)>;

/// `a + c * b` for sparse vectors.
pub fn axpy(a: &[(usize, Scalar)], c: &Scalar, b: &[(usize, Scalar)]) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            let v = c * &b[j].1;
            if !v.is_zero() {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = &a[i].1 + &(c * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Collects unsorted (index, value) pairs into a canonical sparse vector.
pub fn collect_sparse<I: IntoIterator<Item = (usize, Scalar)>>(it: I) -> SparseVec {
    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (i, v) in it {
        if v.is_zero() {
            continue;
        }
        let e = acc.entry(i).or_insert_with(Scalar::zero);
        *e += &v;
    }
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

pub fn scale(v: &[(usize, Scalar)], c: &Scalar) -> SparseVec {
    if c.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, x * c)).collect()
}

/// A sparse matrix stored by columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, columns: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        let columns = (0..n).map(|i| vec![(i, Scalar::one())]).collect();
        SparseMatrix { rows: n, cols: n, columns }
    }

    /// Builds a matrix from its columns. Panics on out-of-range rows.
    pub fn from_columns(rows: usize, columns: Vec<SparseVec>) -> Self {
        for c in &columns {
            debug_assert!(c.windows(2).all(|w| w[0].0 < w[1].0));
            assert!(c.iter().all(|(r, v)| *r < rows && !v.is_zero()), "bad column entry");
        }
        SparseMatrix { rows, cols: columns.len(), columns }
    }

    pub fn from_triplets<I>(rows: usize, cols: usize, entries: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, Scalar)>,
    {
        let mut per_col: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); cols];
        for (r, c, v) in entries {
            assert!(r < rows && c < cols, "triplet out of range");
            per_col[c].push((r, v));
        }
        let columns = per_col.into_iter().map(collect_sparse).collect();
        SparseMatrix { rows, cols, columns }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let nr = rows.len();
        let nc = rows.first().map_or(0, |r| r.len());
        let trip = rows.iter().enumerate().flat_map(|(i, r)| {
            r.iter().enumerate().map(move |(j, &v)| (i, j, Scalar::from_int(v)))
        });
        Self::from_triplets(nr, nc, trip)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &[(usize, Scalar)] {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.columns
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        match self.columns[c].binary_search_by_key(&r, |e| e.0) {
            Ok(k) => self.columns[c][k].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    /// Entries as (row, col, value), ordered by column then row.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(j, c)| c.iter().map(move |(i, v)| (*i, j, v)))
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut cols: Vec<SparseVec> = vec![Vec::new(); self.rows];
        for (j, c) in self.columns.iter().enumerate() {
            for (i, v) in c {
                cols[*i].push((j, v.clone()));
            }
        }
        SparseMatrix { rows: self.cols, cols: self.rows, columns: cols }
    }

    /// Rows as sparse vectors over column indices.
    pub fn row_vectors(&self) -> Vec<SparseVec> {
        self.transpose().columns
    }

    pub fn apply(&self, v: &[(usize, Scalar)]) -> SparseVec {
        let mut acc: SparseVec = Vec::new();
        for (j, x) in v {
            acc = axpy(&acc, x, &self.columns[*j]);
        }
        acc
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let columns = rhs.columns.iter().map(|c| self.apply(c)).collect();
        SparseMatrix { rows: self.rows, cols: rhs.cols, columns }
    }

    /// Keeps only the listed rows and columns, renumbered in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> SparseMatrix {
        let mut row_map = vec![usize::MAX; self.rows];
        for (k, r) in rows.iter().enumerate() {
            row_map[*r] = k;
        }
        let columns = cols
            .iter()
            .map(|&j| {
                let mut c: SparseVec = self.columns[j]
                    .iter()
                    .filter(|(i, _)| row_map[*i] != usize::MAX)
                    .map(|(i, v)| (row_map[*i], v.clone()))
                    .collect();
                c.sort_by_key(|e| e.0);
                c
            })
            .collect();
        SparseMatrix { rows: rows.len(), cols: cols.len(), columns }
    }
}
