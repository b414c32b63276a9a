//! Finite cochain complexes, 2-periodic complexes and towers of them.

use std::fmt;

use super::elim::{kernel_basis, rank, rank_of_vectors};
use super::sparse::{SparseMatrix, SparseVec};

/// Errors from complex and tower construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComplexError {
    /// A differential has the wrong shape for its neighbouring spaces.
    Shape { degree: i32 },
    /// `d_{n+1} d_n` is not zero.
    NotAComplex { degree: i32 },
    /// A tower transition does not commute with the differentials.
    NotAChainMap { level: usize, degree: i32 },
    /// Levels or transitions disagree in number or shape.
    TowerShape(String),
}

impl fmt::Display for ComplexError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplexError::Shape { degree } => write!(f, "differential out of degree {degree} has wrong shape"),
            ComplexError::NotAComplex { degree } => write!(f, "d∘d ≠ 0 starting in degree {degree}"),
            ComplexError::NotAChainMap { level, degree } => {
                write!(f, "transition from level {} to {level} is not a chain map in degree {degree}", level + 1)
            }
            ComplexError::TowerShape(m) => write!(f, "inconsistent tower: {m}"),
        }
    }
}

impl std::error::Error for ComplexError {}

/// Where cohomology is taken: a space with incoming and outgoing maps.
pub struct Spot<'a> {
    pub dim: usize,
    pub incoming: Option<&'a SparseMatrix>,
    pub outgoing: Option<&'a SparseMatrix>,
}

impl Spot<'_> {
    pub fn cohomology_dim(&self) -> usize {
        let z = self.dim - self.outgoing.map_or(0, rank);
        z - self.incoming.map_or(0, rank)
    }

    fn cycles(&self) -> Vec<SparseVec> {
        match self.outgoing {
            Some(d) => kernel_basis(d),
            None => (0..self.dim).map(|i| vec![(i, super::Scalar::one())]).collect(),
        }
    }

    fn boundaries(&self) -> Vec<SparseVec> {
        self.incoming.map_or(Vec::new(), |d| d.columns().to_vec())
    }
}

/// Anything whose cohomology can be read off at integer positions.
pub trait Cochains {
    /// `None` if the position is outside the stored range.
    fn spot(&self, degree: i32) -> Option<Spot<'_>>;
}

/// Rank of the map `H(src) → H(tgt)` induced by `f` at a given spot.
pub fn induced_rank(src: &Spot<'_>, tgt: &Spot<'_>, f: &SparseMatrix) -> usize {
    let mut vs: Vec<SparseVec> = src.cycles().iter().map(|z| f.apply(z)).collect();
    let b = tgt.boundaries();
    let rb = rank_of_vectors(&b, tgt.dim);
    vs.extend(b);
    rank_of_vectors(&vs, tgt.dim) - rb
}

/// A bounded cochain complex `C^start → … → C^{start+len−1}`.
///
/// The last space has no stored outgoing map; it is treated as zero, so the
/// top cohomology is only meaningful if the caller knows the complex stops
/// there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexSlice {
    start: i32,
    dims: Vec<usize>,
    diffs: Vec<SparseMatrix>,
}

impl ComplexSlice {
    /// Checks shapes and `d∘d = 0`.
    pub fn new(start: i32, dims: Vec<usize>, diffs: Vec<SparseMatrix>) -> Result<Self, ComplexError> {
        if diffs.len() + 1 != dims.len().max(1) {
            return Err(ComplexError::Shape { degree: start + diffs.len() as i32 });
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.cols() != dims[i] || d.rows() != dims[i + 1] {
                return Err(ComplexError::Shape { degree: start + i as i32 });
            }
        }
        for i in 1..diffs.len() {
            if !diffs[i].mul(&diffs[i - 1]).is_zero() {
                return Err(ComplexError::NotAComplex { degree: start + i as i32 - 1 });
            }
        }
        Ok(ComplexSlice { start, dims, diffs })
    }

    pub fn start(&self) -> i32 {
        self.start
    }

    pub fn end(&self) -> i32 {
        self.start + self.dims.len() as i32
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, degree: i32) -> usize {
        self.index(degree).map_or(0, |i| self.dims[i])
    }

    pub fn diff(&self, degree: i32) -> Option<&SparseMatrix> {
        self.index(degree).and_then(|i| self.diffs.get(i))
    }

    fn index(&self, degree: i32) -> Option<usize> {
        let i = degree - self.start;
        (i >= 0 && (i as usize) < self.dims.len()).then_some(i as usize)
    }

    /// `dim H^n` for every stored degree, in order.
    pub fn cohomology_dims(&self) -> Vec<usize> {
        (self.start..self.end()).map(|n| self.spot(n).unwrap().cohomology_dim()).collect()
    }

    pub fn cohomology_dim(&self, degree: i32) -> usize {
        self.spot(degree).map_or(0, |s| s.cohomology_dim())
    }

    /// The same complex with each basis reordered by the given permutations
    /// (`perms[i][old] = new`).
    pub fn permuted(&self, perms: &[Vec<usize>]) -> ComplexSlice {
        let diffs = self
            .diffs
            .iter()
            .enumerate()
            .map(|(i, d)| {
                let trip = d.entries().map(|(r, c, v)| (perms[i + 1][r], perms[i][c], v.clone()));
                SparseMatrix::from_triplets(d.rows(), d.cols(), trip)
            })
            .collect();
        ComplexSlice { start: self.start, dims: self.dims.clone(), diffs }
    }
}

impl Cochains for ComplexSlice {
    fn spot(&self, degree: i32) -> Option<Spot<'_>> {
        let i = self.index(degree)?;
        Some(Spot {
            dim: self.dims[i],
            incoming: if i > 0 { self.diffs.get(i - 1) } else { None },
            outgoing: self.diffs.get(i),
        })
    }
}

/// Free-function form of [`ComplexSlice::cohomology_dims`].
pub fn cohomology_dims(c: &ComplexSlice) -> Vec<usize> {
    c.cohomology_dims()
}

/// A 2-periodic complex `even ⇄ odd`. Position 0 is even, 1 is odd; other
/// integers are read modulo 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicComplex {
    even: usize,
    odd: usize,
    d_even: SparseMatrix,
    d_odd: SparseMatrix,
}

impl PeriodicComplex {
    pub fn new(even: usize, odd: usize, d_even: SparseMatrix, d_odd: SparseMatrix) -> Result<Self, ComplexError> {
        if d_even.cols() != even || d_even.rows() != odd {
            return Err(ComplexError::Shape { degree: 0 });
        }
        if d_odd.cols() != odd || d_odd.rows() != even {
            return Err(ComplexError::Shape { degree: 1 });
        }
        if !d_odd.mul(&d_even).is_zero() {
            return Err(ComplexError::NotAComplex { degree: 0 });
        }
        if !d_even.mul(&d_odd).is_zero() {
            return Err(ComplexError::NotAComplex { degree: 1 });
        }
        Ok(PeriodicComplex { even, odd, d_even, d_odd })
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.even, self.odd)
    }

    pub fn d_even(&self) -> &SparseMatrix {
        &self.d_even
    }

    pub fn d_odd(&self) -> &SparseMatrix {
        &self.d_odd
    }

    /// `(dim H^even, dim H^odd)`.
    pub fn cohomology_dims(&self) -> (usize, usize) {
        (self.spot(0).unwrap().cohomology_dim(), self.spot(1).unwrap().cohomology_dim())
    }
}

impl Cochains for PeriodicComplex {
    fn spot(&self, degree: i32) -> Option<Spot<'_>> {
        Some(if degree.rem_euclid(2) == 0 {
            Spot { dim: self.even, incoming: Some(&self.d_odd), outgoing: Some(&self.d_even) }
        } else {
            Spot { dim: self.odd, incoming: Some(&self.d_even), outgoing: Some(&self.d_odd) }
        })
    }
}

/// Outcome of the desk-scale pro-object test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case", tag = "status", content = "dim")]
pub enum ProStatus {
    StableDim(usize),
    ProZero,
    Undecided,
}

/// An inverse system `L_0 ← L_1 ← …` of complexes.
///
/// `transitions[k]` maps level `k+1` to level `k`; it is given per position
/// as a matrix keyed by the same integer positions as [`Cochains::spot`].
#[derive(Clone, Debug)]
pub struct Tower<C> {
    levels: Vec<C>,
    transitions: Vec<Vec<(i32, SparseMatrix)>>,
}

impl<C: Cochains> Tower<C> {
    /// Each transition matrix must commute with the differentials of the two
    /// levels it connects.
    pub fn new(levels: Vec<C>, transitions: Vec<Vec<(i32, SparseMatrix)>>) -> Result<Self, ComplexError> {
        if levels.len() != transitions.len() + 1 && !(levels.is_empty() && transitions.is_empty()) {
            return Err(ComplexError::TowerShape(format!(
                "{} levels but {} transitions",
                levels.len(),
                transitions.len()
            )));
        }
        for (k, maps) in transitions.iter().enumerate() {
            let (lo, hi) = (&levels[k], &levels[k + 1]);
            for (n, f) in maps {
                let (Some(s), Some(t)) = (hi.spot(*n), lo.spot(*n)) else {
                    return Err(ComplexError::TowerShape(format!("no position {n} at level {k}")));
                };
                if f.cols() != s.dim || f.rows() != t.dim {
                    return Err(ComplexError::TowerShape(format!("transition {k} at {n} has wrong shape")));
                }
                // d_lo f = f_next d_hi, whenever both sides are stored.
                if let (Some(dl), Some(dh)) = (t.outgoing, s.outgoing) {
                    if let Some((_, g)) = maps.iter().find(|(m, _)| *m == n + 1) {
                        if dl.mul(f) != g.mul(dh) {
                            return Err(ComplexError::NotAChainMap { level: k, degree: *n });
                        }
                    }
                }
            }
        }
        Ok(Tower { levels, transitions })
    }

    pub fn levels(&self) -> &[C] {
        &self.levels
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    fn transition(&self, k: usize, n: i32) -> Option<&SparseMatrix> {
        self.transitions[k].iter().find(|(m, _)| *m == n).map(|(_, f)| f)
    }

    /// Matrix of the composite `L_from → L_to` at position `n` (`from > to`).
    pub fn composite(&self, from: usize, to: usize, n: i32) -> Option<SparseMatrix> {
        let mut acc = self.transition(from - 1, n)?.clone();
        for k in (to..from - 1).rev() {
            acc = self.transition(k, n)?.mul(&acc);
        }
        Some(acc)
    }

    /// Dimensions of `H^n` at each level.
    pub fn cohomology_dims(&self, n: i32) -> Vec<usize> {
        self.levels.iter().map(|l| l.spot(n).map_or(0, |s| s.cohomology_dim())).collect()
    }

    /// Rank of `H^n(L_from) → H^n(L_to)`.
    pub fn image_rank(&self, from: usize, to: usize, n: i32) -> usize {
        let f = self.composite(from, to, n).expect("missing transition");
        induced_rank(&self.levels[from].spot(n).unwrap(), &self.levels[to].spot(n).unwrap(), &f)
    }
}

/// Decides the pro-behaviour of `H^n` from the top `window` levels.
///
/// Let `N` be the top level. For every lower level `k` in the window the
/// image of `H^n(L_N)` in `H^n(L_k)` is computed. If all those images
/// vanish the tower is `pro_zero`; if they all have the same dimension `d`
/// (so the transitions between them are isomorphisms, being surjective by
/// construction) it is `stable_dim d`. When every consecutive transition is
/// itself zero or an isomorphism this is exactly the consecutive-map test;
/// using images also lets a level carry classes that die one step later.
pub fn tower_pro_status<C: Cochains>(t: &Tower<C>, n: i32, window: usize) -> Result<ProStatus, ComplexError> {
    let window = window.max(2);
    if t.len() < 3 || t.len() < window {
        return Err(ComplexError::TowerShape(format!(
            "pro-status needs at least max(3, window) levels, got {}",
            t.len()
        )));
    }
    let top = t.len() - 1;
    let images: Vec<usize> = (top + 1 - window..top).map(|k| t.image_rank(top, k, n)).collect();
    if images.iter().all(|&r| r == 0) {
        return Ok(ProStatus::ProZero);
    }
    let d = images[0];
    if images.iter().all(|&r| r == d) {
        return Ok(ProStatus::StableDim(d));
    }
    Ok(ProStatus::Undecided)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::Scalar;

    fn id_complex() -> ComplexSlice {
        ComplexSlice::new(0, vec![1, 1], vec![SparseMatrix::identity(1)]).unwrap()
    }

    #[test]
    fn exact_complex_has_no_cohomology() {
        assert_eq!(id_complex().cohomology_dims(), vec![0, 0]);
    }

    #[test]
    fn zero_differentials() {
        let c = ComplexSlice::new(0, vec![2, 3], vec![SparseMatrix::zeros(3, 2)]).unwrap();
        assert_eq!(c.cohomology_dims(), vec![2, 3]);
    }

    #[test]
    fn rejects_non_complex() {
        let d = SparseMatrix::identity(1);
        let err = ComplexSlice::new(0, vec![1, 1, 1], vec![d.clone(), d]).unwrap_err();
        assert_eq!(err, ComplexError::NotAComplex { degree: 0 });
    }

    #[test]
    fn polynomial_line_weight_zero() {
        // weight 0 slice of (k[x], d): k → 0
        let c = ComplexSlice::new(0, vec![1, 0], vec![SparseMatrix::zeros(0, 1)]).unwrap();
        assert_eq!(c.cohomology_dims(), vec![1, 0]);
    }

    #[test]
    fn constant_tower_is_stable() {
        let lvl = ComplexSlice::new(0, vec![1], vec![]).unwrap();
        let tr = vec![vec![(0, SparseMatrix::identity(1))]; 3];
        let t = Tower::new(vec![lvl; 4], tr).unwrap();
        assert_eq!(tower_pro_status(&t, 0, 3).unwrap(), ProStatus::StableDim(1));
    }

    #[test]
    fn zero_transitions_are_pro_zero() {
        let lvl = ComplexSlice::new(0, vec![0, 1], vec![SparseMatrix::zeros(1, 0)]).unwrap();
        let tr = vec![vec![(0, SparseMatrix::zeros(0, 0)), (1, SparseMatrix::zeros(1, 1))]; 3];
        let t = Tower::new(vec![lvl; 4], tr).unwrap();
        assert_eq!(t.cohomology_dims(1), vec![1; 4]);
        assert_eq!(tower_pro_status(&t, 1, 3).unwrap(), ProStatus::ProZero);
    }

    #[test]
    fn periodic_cohomology() {
        let two = SparseMatrix::from_triplets(1, 1, [(0, 0, Scalar::from_int(2))]);
        let c = PeriodicComplex::new(1, 1, two, SparseMatrix::zeros(1, 1)).unwrap();
        assert_eq!(c.cohomology_dims(), (0, 0));
    }
}
