//! Rank and null space.
//!
//! Rank uses fraction-free elimination on integer rows: each rational row is
//! cleared of denominators, and after every elimination step the row is
//! divided by the gcd of its entries. Pivots are chosen Markowitz-style (the
//! shortest remaining row, and within it the least populated column). The
//! elimination first runs in `i128` with overflow checks and restarts in
//! arbitrary precision if any intermediate value escapes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::echelon::Echelon;
use super::sparse::{SparseMatrix, SparseVec};
use super::Scalar;

trait FfInt: Clone + Sized {
    fn mul(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    fn is_zero(&self) -> bool;
    fn gcd(&self, o: &Self) -> Self;
    fn div_exact(&self, o: &Self) -> Self;
    fn is_unit(&self) -> bool;
    fn from_big(b: &BigInt) -> Option<Self>;
}

impl FfInt for i128 {
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn from_big(b: &BigInt) -> Option<Self> {
        b.to_i128().filter(|v| v.checked_abs().is_some())
    }
}

impl FfInt for BigInt {
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
    fn is_unit(&self) -> bool {
        self.abs() == BigInt::from(1)
    }
    fn from_big(b: &BigInt) -> Option<Self> {
        Some(b.clone())
    }
}

type IntRow<R> = Vec<(usize, R)>;

fn integer_row<R: FfInt>(v: &[(usize, Scalar)]) -> Option<IntRow<R>> {
    let mut l = BigInt::from(1);
    for (_, x) in v {
        l = l.lcm(&x.denom());
    }
    let mut out = Vec::with_capacity(v.len());
    for (i, x) in v {
        let n = x.numer() * (&l / x.denom());
        out.push((*i, R::from_big(&n)?));
    }
    Some(out)
}

fn remove_content<R: FfInt>(row: &mut IntRow<R>) {
    let mut g = match row.first() {
        Some((_, x)) => x.clone(),
        None => return,
    };
    for (_, x) in &row[1..] {
        if g.is_unit() {
            return;
        }
        g = g.gcd(x);
    }
    if !g.is_unit() && !g.is_zero() {
        for (_, x) in row.iter_mut() {
            *x = x.div_exact(&g);
        }
    }
}

/// `p*a - c*b` for sorted rows.
fn combine<R: FfInt>(a: &IntRow<R>, p: &R, b: &IntRow<R>, c: &R) -> Option<IntRow<R>> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push((a[i].0, a[i].1.mul(p)?));
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, b[j].1.mul(c)?.neg()?));
            j += 1;
        } else {
            let v = a[i].1.mul(p)?.sub(&b[j].1.mul(c)?)?;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Some(out)
}

fn rank_ff<R: FfInt>(rows: Vec<IntRow<R>>, ncols: usize) -> Option<usize> {
    let mut active: Vec<Option<IntRow<R>>> = Vec::with_capacity(rows.len());
    let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); ncols];
    let mut col_count = vec![0usize; ncols];
    for mut r in rows {
        if r.is_empty() {
            continue;
        }
        remove_content(&mut r);
        let id = active.len();
        for (c, _) in &r {
            col_rows[*c].push(id);
            col_count[*c] += 1;
        }
        active.push(Some(r));
    }
    let mut rank = 0;
    loop {
        let pick = active
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r.as_ref().map(|r| (r.len(), i)))
            .min();
        let Some((_, pr)) = pick else { break };
        let prow = active[pr].take().unwrap();
        let &(pc, ref pval) = prow.iter().min_by_key(|(c, _)| (col_count[*c], *c)).unwrap();
        let pval = pval.clone();
        for (c, _) in &prow {
            col_count[*c] -= 1;
        }
        rank += 1;
        let mut targets = std::mem::take(&mut col_rows[pc]);
        targets.sort_unstable();
        targets.dedup();
        for t in targets {
            let Some(row) = active[t].as_ref() else { continue };
            let Ok(k) = row.binary_search_by_key(&pc, |e| e.0) else { continue };
            let coef = row[k].1.clone();
            let mut new = combine(row, &pval, &prow, &coef)?;
            new.retain(|(c, _)| *c != pc);
            remove_content(&mut new);
            for (c, _) in row {
                col_count[*c] -= 1;
            }
            for (c, _) in &new {
                col_count[*c] += 1;
                col_rows[*c].push(t);
            }
            active[t] = if new.is_empty() { None } else { Some(new) };
        }
    }
    Some(rank)
}

/// Rank of a list of sparse vectors in `k^ncols`.
pub fn rank_of_vectors(vs: &[SparseVec], ncols: usize) -> usize {
    let small: Option<Vec<IntRow<i128>>> = vs.iter().map(|v| integer_row(v)).collect();
    if let Some(rows) = small {
        if let Some(r) = rank_ff(rows, ncols) {
            return r;
        }
    }
    let rows: Vec<IntRow<BigInt>> = vs.iter().map(|v| integer_row(v).unwrap()).collect();
    rank_ff(rows, ncols).expect("arbitrary precision elimination cannot overflow")
}

/// Rank over the rationals.
pub fn rank(m: &SparseMatrix) -> usize {
    // Columns are rows of the transpose, which has the same rank.
    rank_of_vectors(m.columns(), m.rows())
}

/// A basis of the null space, one vector per free column of the reduced row
/// echelon form, normalized to have entry 1 in that column.
pub fn kernel_basis(m: &SparseMatrix) -> Vec<SparseVec> {
    let ech = Echelon::from_vectors(m.cols(), m.row_vectors());
    let rref = ech.rref();
    let free = ech.complement();
    let mut out: Vec<SparseVec> = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v: Vec<(usize, Scalar)> = vec![(f, Scalar::one())];
        for row in &rref {
            if let Ok(k) = row.binary_search_by_key(&f, |e| e.0) {
                v.push((row[0].0, -&row[k].1));
            }
        }
        v.sort_by_key(|e| e.0);
        out.push(v);
    }
    out
}
