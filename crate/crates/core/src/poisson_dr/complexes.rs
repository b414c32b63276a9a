//! The `𝔑` complex, `τ` truncations, the `𝔜` tower and free DG Poisson
//! pieces.

use std::sync::Arc;

use crate::exact_linalg::{ComplexError, ComplexSlice, Echelon, PeriodicComplex, SparseMatrix, Tower};
use crate::free_assoc::{Generator, GeneratorSet};
use crate::graded::{Degree, LinComb};
use crate::lie_poisson::{FreePoisson, LieBasis, LieError, Monomial};
use crate::nc_forms::{quotient_map, QuotientSpace};

use super::forms::{CommForms, FormMono};

#[derive(Debug)]
pub enum DrError {
    Lie(LieError),
    Complex(ComplexError),
}

impl std::fmt::Display for DrError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DrError::Lie(e) => write!(f, "{e}"),
            DrError::Complex(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for DrError {}

impl From<LieError> for DrError {
    fn from(e: LieError) -> Self {
        DrError::Lie(e)
    }
}

impl From<ComplexError> for DrError {
    fn from(e: ComplexError) -> Self {
        DrError::Complex(e)
    }
}

/// Untruncated `Ω_comm Poiss V` with Lie symbols up to `max_len`.
pub fn poisson_forms(gens: &GeneratorSet, max_len: usize) -> CommForms {
    CommForms::new(FreePoisson::new(Arc::new(LieBasis::lyndon(gens, max_len)), None))
}

fn matrix<F>(from: &QuotientSpace<FormMono>, to: &QuotientSpace<FormMono>, f: F) -> Result<SparseMatrix, LieError>
where
    F: Fn(&FormMono) -> Result<LinComb<FormMono>, LieError>,
{
    // surface the first error before building the matrix
    for k in from.representatives() {
        f(k)?;
    }
    Ok(quotient_map(from, to, |k| f(k).unwrap()))
}

/// `ᵢΩ¹ / δ(ᵢ₋₁Ω²)` in content `c`.
fn odd_slot(forms: &CommForms, c: &Degree, i: usize) -> Result<QuotientSpace<FormMono>, LieError> {
    let mut rel = Vec::new();
    if i >= 1 {
        for w in forms.basis(c, 2, i - 1) {
            rel.push(forms.delta(&w)?);
        }
    }
    Ok(QuotientSpace::spanned(forms.slice(c, 1, i..=i), rel))
}

/// `𝔑⁰ → … → 𝔑^{2 i_max + 2}` in content `c`: `𝔑^{2i} = Pᵢ`,
/// `𝔑^{2i+1} = ᵢΩ¹/δ(ᵢ₋₁Ω²)`, with `d` out of even and `δ` out of odd
/// slots. The last slot is a truncation edge.
pub fn n_complex(forms: &CommForms, c: &Degree, i_max: usize) -> Result<ComplexSlice, DrError> {
    let mut levels = Vec::new();
    for i in 0..=i_max {
        levels.push(QuotientSpace::full(forms.slice(c, 0, i..=i)));
        levels.push(odd_slot(forms, c, i)?);
    }
    levels.push(QuotientSpace::full(forms.slice(c, 0, i_max + 1..=i_max + 1)));
    let mut diffs = Vec::new();
    for (k, w) in levels.windows(2).enumerate() {
        diffs.push(if k % 2 == 0 {
            matrix(&w[0], &w[1], |f| Ok(forms.d(f)))?
        } else {
            matrix(&w[0], &w[1], |f| forms.delta(f))?
        });
    }
    Ok(ComplexSlice::new(0, levels.iter().map(QuotientSpace::dim).collect(), diffs)?)
}

/// `C^s/dC^{s−1} → C^{s+1} → …` placed in degrees `0, 1, …`.
pub fn tau_truncation(complex: &ComplexSlice, start_slot: i32) -> Result<ComplexSlice, ComplexError> {
    let mut dims = Vec::new();
    let mut diffs = Vec::new();
    let first = complex.dim(start_slot);
    let comp = match complex.diff(start_slot - 1) {
        Some(d) => Echelon::from_vectors(first, d.columns().iter().cloned()).complement(),
        None => (0..first).collect(),
    };
    dims.push(comp.len());
    for n in start_slot..complex.end() - 1 {
        let d = complex.diff(n).expect("stored differential");
        dims.push(complex.dim(n + 1));
        if n == start_slot {
            let rows: Vec<usize> = (0..d.rows()).collect();
            diffs.push(d.submatrix(&rows, &comp));
        } else {
            diffs.push(d.clone());
        }
    }
    ComplexSlice::new(0, dims, diffs)
}

/// One level of the `𝔜` tower: `Ω_comm` of `P A / P_{≥n} A`, split by weight.
struct YLevel {
    forms: CommForms,
    even: QuotientSpace<FormMono>,
    odd: QuotientSpace<FormMono>,
}

fn y_level(base: &CommForms, c: &Degree, n: usize) -> Result<YLevel, LieError> {
    let forms = base.with_truncation(Some(n - 1));
    let even = QuotientSpace::full(forms.slice(c, 0, 0..=n - 1));
    let mut rel = Vec::new();
    for w in forms.slice(c, 2, 0..=n - 1).keys() {
        rel.push(forms.delta(w)?);
    }
    let odd = QuotientSpace::spanned(forms.slice(c, 1, 0..=n - 1), rel);
    Ok(YLevel { forms, even, odd })
}

fn y_periodic(l: &YLevel) -> Result<PeriodicComplex, DrError> {
    let d = matrix(&l.even, &l.odd, |f| Ok(l.forms.d(f)))?;
    let delta = matrix(&l.odd, &l.even, |f| l.forms.delta(f))?;
    Ok(PeriodicComplex::new(l.even.dim(), l.odd.dim(), d, delta)?)
}

/// Level `n ≥ 1` of `𝔜` in content `c`.
pub fn y_complex(base: &CommForms, c: &Degree, n: usize) -> Result<PeriodicComplex, DrError> {
    assert!(n >= 1);
    y_periodic(&y_level(base, c, n)?)
}

/// `𝔜(PA/P_{≥n}A)` for `n = 1..=levels` in content `c`, with the projections.
///
/// `base` must have Lie symbols of length at least `levels`.
pub fn y_complex_tower(base: &CommForms, c: &Degree, levels: usize) -> Result<Tower<PeriodicComplex>, DrError> {
    let lv = (1..=levels).map(|n| y_level(base, c, n)).collect::<Result<Vec<_>, _>>()?;
    let complexes = lv.iter().map(y_periodic).collect::<Result<Vec<_>, _>>()?;
    let mut transitions = Vec::new();
    for (k, w) in lv.windows(2).enumerate() {
        let keep = k + 1;
        let proj = |f: &FormMono| {
            if w[0].forms.weight(f) < keep {
                LinComb::basis(f.clone())
            } else {
                LinComb::zero()
            }
        };
        transitions.push(vec![(0, quotient_map(&w[1].even, &w[0].even, proj)), (1, quotient_map(&w[1].odd, &w[0].odd, proj))]);
    }
    Ok(Tower::new(complexes, transitions)?)
}

/// `P(Ω_comm SV) = S(L(V ⊕ dV))` graded by content, form degree and
/// Poisson weight.
#[derive(Debug)]
pub struct DgPoissonForms {
    nv: usize,
    p: FreePoisson,
}

impl DgPoissonForms {
    /// Lie symbols up to length `max_weight + 1`.
    pub fn new(gens: &GeneratorSet, max_weight: usize) -> Self {
        let mut all: Vec<Generator> = gens.iter().cloned().collect();
        all.extend(gens.iter().map(|g| Generator::odd(&format!("d{}", g.name))));
        let w = GeneratorSet::new(all).expect("differential names collide with generators");
        DgPoissonForms { nv: gens.len(), p: FreePoisson::new(Arc::new(LieBasis::spanning(&w, max_weight + 1)), None) }
    }

    pub fn poisson(&self) -> &FreePoisson {
        &self.p
    }

    /// Basis of `P_m(Ω_comm A)` in `V`-content `c` and form degree `r`.
    pub fn piece(&self, c: &Degree, r: usize, m: usize) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut b = vec![0i32; self.nv];
        self.fill(c, r as i32, 0, m, &mut b, &mut out);
        out.sort();
        out
    }

    fn fill(&self, c: &Degree, left: i32, i: usize, m: usize, b: &mut Vec<i32>, out: &mut Vec<Monomial>) {
        if i == self.nv {
            if left == 0 {
                let mut d: Degree = c.iter().zip(b.iter()).map(|(x, y)| x - y).collect();
                if d.iter().any(|&x| x < 0) {
                    return;
                }
                d.extend(b.iter());
                out.extend(self.p.basis_of_weight(&d, m));
            }
            return;
        }
        for k in 0..=left {
            b[i] = k;
            self.fill(c, left - k, i + 1, m, b, out);
        }
        b[i] = 0;
    }
}

/// Basis of `P_m(Ω_comm SV)` per `V`-content and form degree.
pub fn free_dg_poisson_pieces(gens: &GeneratorSet, m: usize, c: &Degree, r: usize) -> Vec<Monomial> {
    DgPoissonForms::new(gens, m).piece(c, r, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::{tower_pro_status, ProStatus};
    use crate::graded::degrees_up_to;
    use crate::lie_poisson::lie_dims_from_pbw;
    use crate::nc_forms::StarForms;

    #[test]
    fn n_complex_line_and_plane() {
        let line = poisson_forms(&GeneratorSet::standard(1), 4);
        for w in 0..=3 {
            let h = n_complex(&line, &vec![w], 2).unwrap().cohomology_dims();
            assert_eq!(h[..5], [usize::from(w == 0), 0, 0, 0, 0]);
        }
        let plane = poisson_forms(&GeneratorSet::standard(2), 4);
        let dr = CommForms::commutative(&GeneratorSet::standard(2));
        for c in degrees_up_to(2, 4) {
            let h = n_complex(&plane, &c, 4).unwrap().cohomology_dims();
            let h2 = n_complex(&plane, &c, 5).unwrap().cohomology_dims();
            let k = dr.de_rham(&c, 0, 3).unwrap().cohomology_dims();
            assert_eq!(h[..4], k[..4], "{c:?}");
            assert!(h[4..9].iter().all(|&x| x == 0), "{c:?} {h:?}");
            assert_eq!(h[..9], h2[..9]);
        }
    }

    #[test]
    fn tau_truncations() {
        let torus = CommForms::commutative(&GeneratorSet::laurent(2));
        let full = torus.de_rham(&vec![0, 0], 0, 3).unwrap();
        assert_eq!(tau_truncation(&full, 0).unwrap(), full);
        assert_eq!(tau_truncation(&full, 1).unwrap().cohomology_dims()[..2], [2, 1]);
        assert_eq!(tau_truncation(&full, 2).unwrap().cohomology_dims()[0], 1);
        let line = CommForms::commutative(&GeneratorSet::laurent(1));
        let full = line.de_rham(&vec![0], 0, 2).unwrap();
        assert_eq!(tau_truncation(&full, 1).unwrap().cohomology_dims()[..1], [1]);
        let full = line.de_rham(&vec![2], 0, 2).unwrap();
        assert_eq!(tau_truncation(&full, 1).unwrap().cohomology_dims(), vec![0, 0]);
    }

    #[test]
    fn y_level_one_has_zero_delta() {
        let base = poisson_forms(&GeneratorSet::laurent(1), 3);
        let y = y_complex(&base, &vec![2], 1).unwrap();
        assert!(y.d_odd().is_zero());
        assert_eq!(y.dims(), (1, 1));
    }

    #[test]
    fn y_tower_punctured_line() {
        let base = poisson_forms(&GeneratorSet::laurent(1), 4);
        for w in -2..=2 {
            let t = y_complex_tower(&base, &vec![w], 4).unwrap();
            let e = usize::from(w == 0);
            let want = |e| if e == 1 { ProStatus::StableDim(1) } else { ProStatus::ProZero };
            assert_eq!(tower_pro_status(&t, 0, 3).unwrap(), want(e), "{w}");
            assert_eq!(tower_pro_status(&t, 1, 3).unwrap(), want(e), "{w}");
        }
    }

    #[test]
    fn dg_poisson_pieces() {
        let g1 = GeneratorSet::standard(1);
        let dr = CommForms::commutative(&g1);
        for w in 0..=3 {
            for r in 0..=2 {
                assert_eq!(free_dg_poisson_pieces(&g1, 0, &vec![w], r).len(), dr.basis(&vec![w], r, 0).len());
            }
        }
        let f = DgPoissonForms::new(&g1, 1);
        let oracle = lie_dims_from_pbw(&[false, true], 2);
        let len2: usize = f.poisson().lie().symbols().iter().filter(|s| s.len() == 2).count();
        let want: u64 = oracle.iter().filter(|(d, _)| d.iter().sum::<i32>() == 2).map(|(_, n)| n).sum();
        assert_eq!(len2 as u64, want);
        assert_eq!(len2, 2);
    }

    #[test]
    fn poisson_quotient_matches_star_model() {
        // P_{≤1}(V ⊕ dV)/{,} against the star model modulo [,]_⋆
        let g1 = GeneratorSet::standard(1);
        let star = StarForms::new(&g1, 1).unwrap();
        let p = star.star().poisson();
        for w in 0..=3 {
            for r in 0..=2 {
                let c = vec![w];
                let slice = star.slice(&c, r);
                let mut e = Echelon::new(slice.dim());
                for g in crate::graded::GradedAlgebra::generators(p) {
                    let gc = star.v_content(&g);
                    let gr = star.form_degree(&g);
                    let Some(lr) = r.checked_sub(gr) else { continue };
                    let lower: Degree = c.iter().zip(&gc).map(|(x, y)| x - y).collect();
                    for lam in star.basis(&lower, lr) {
                        e.insert(slice.to_sparse(&crate::graded::GradedAlgebra::bracket(p, &lam, &g)));
                    }
                }
                assert_eq!(slice.dim() - e.rank(), star.commutators(&c, r).dim(), "{w} {r}");
            }
        }
    }
}
