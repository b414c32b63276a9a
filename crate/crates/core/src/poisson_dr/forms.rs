//! `Ω_comm P = S(LV ⊕ dLV)` for `P` a (Laurent, truncated) free Poisson
//! algebra, with de Rham `d` and the Brylinski boundary `δ`.

use crate::exact_linalg::{ComplexError, ComplexSlice, Scalar};
use crate::free_assoc::GeneratorSet;
use crate::graded::{Degree, LinComb, Slice};
use crate::lie_poisson::{FreePoisson, LieError, Monomial, SymId};
use crate::nc_forms::{quotient_complex, QuotientSpace};

/// `p · ds₁ ∧ … ∧ dsᵣ` with `s₁ < … < sᵣ`.
pub type FormMono = (Monomial, Vec<SymId>);

pub type CommForm = LinComb<FormMono>;

/// Sorts `syms` in place and returns the sign of the permutation, or `None`
/// if a symbol repeats.
fn wedge_sort(syms: &mut [SymId]) -> Option<Scalar> {
    let mut swaps = 0;
    for i in 1..syms.len() {
        let mut j = i;
        while j > 0 && syms[j - 1] > syms[j] {
            syms.swap(j - 1, j);
            swaps += 1;
            j -= 1;
        }
    }
    if syms.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some(if swaps % 2 == 1 { Scalar::from_int(-1) } else { Scalar::one() })
}

/// Kähler forms of an even free Poisson algebra.
#[derive(Clone, Debug)]
pub struct CommForms {
    p: FreePoisson,
}

impl CommForms {
    /// # Panics
    /// If some generator is odd.
    pub fn new(p: FreePoisson) -> Self {
        assert!(p.gens().iter().all(|g| !g.odd), "Kähler forms need even generators");
        CommForms { p }
    }

    /// `Ω_comm SV` (or of the Laurent polynomial ring).
    pub fn commutative(gens: &GeneratorSet) -> Self {
        Self::new(FreePoisson::truncated(gens, 0))
    }

    pub fn poisson(&self) -> &FreePoisson {
        &self.p
    }

    /// The same forms over another truncation of the same algebra.
    pub fn with_truncation(&self, l: Option<usize>) -> Self {
        CommForms { p: self.p.with_truncation(l) }
    }

    fn sym_weight(&self, s: SymId) -> usize {
        self.p.lie().symbol(s).weight()
    }

    /// Total Poisson weight, counting `ds` like `s`.
    pub fn weight(&self, f: &FormMono) -> usize {
        self.p.weight(&f.0) + f.1.iter().map(|&s| self.sym_weight(s)).sum::<usize>()
    }

    /// Weight of the function part only.
    pub fn function_weight(&self, f: &FormMono) -> usize {
        self.p.weight(&f.0)
    }

    pub fn content(&self, f: &FormMono) -> Degree {
        let mut d = self.p.monomial_degree(&f.0);
        for &s in &f.1 {
            for (x, y) in d.iter_mut().zip(&self.p.lie().symbol(s).content) {
                *x += y;
            }
        }
        d
    }

    fn survives(&self, w: usize) -> bool {
        self.p.truncation().is_none_or(|l| w <= l)
    }

    /// Basis of `ᵢΩʳ` in content `c`: `r` differentials, total weight `i`.
    pub fn basis(&self, c: &Degree, r: usize, i: usize) -> Vec<FormMono> {
        if !self.survives(i) {
            return Vec::new();
        }
        let lie = self.p.lie();
        let syms: Vec<SymId> = (0..lie.len() as SymId).filter(|&s| self.sym_weight(s) <= i).collect();
        let mut out = Vec::new();
        let mut chosen = Vec::new();
        self.fill(&syms, 0, r, i, c, &mut chosen, &mut out);
        out.sort();
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn fill(
        &self,
        syms: &[SymId],
        from: usize,
        r: usize,
        w: usize,
        rest: &Degree,
        chosen: &mut Vec<SymId>,
        out: &mut Vec<FormMono>,
    ) {
        if r == 0 {
            for m in self.p.basis_of_weight(rest, w) {
                out.push((m, chosen.clone()));
            }
            return;
        }
        let inv = self.p.invertible();
        for k in from..syms.len() {
            let s = self.p.lie().symbol(syms[k]);
            if s.weight() > w {
                continue;
            }
            let next: Degree = rest.iter().zip(&s.content).map(|(x, y)| x - y).collect();
            if next.iter().zip(inv).any(|(x, &i)| !i && *x < 0) {
                continue;
            }
            chosen.push(syms[k]);
            self.fill(syms, k + 1, r - 1, w - s.weight(), &next, chosen, out);
            chosen.pop();
        }
    }

    /// Forms with `r` differentials and total weight in `weights`.
    pub fn slice(&self, c: &Degree, r: usize, weights: std::ops::RangeInclusive<usize>) -> Slice<FormMono> {
        let mut keys = Vec::new();
        for i in weights {
            keys.extend(self.basis(c, r, i));
        }
        keys.sort();
        Slice::new(keys)
    }

    /// `p · (ds ∧ rest)` for a Lie element `ds`.
    fn attach(&self, p: &Monomial, sym: &LinComb<SymId>, rest: &[SymId], coeff: &Scalar) -> CommForm {
        let mut out = LinComb::zero();
        for (t, c) in sym.iter() {
            let mut syms = Vec::with_capacity(rest.len() + 1);
            syms.push(*t);
            syms.extend_from_slice(rest);
            if let Some(sign) = wedge_sort(&mut syms) {
                let key = (p.clone(), syms);
                if self.survives(self.weight(&key)) {
                    out.add_term(key, &(&(c * coeff) * &sign));
                }
            }
        }
        out
    }

    pub fn mul(&self, a: &FormMono, b: &FormMono) -> CommForm {
        let Some((s, m)) = self.p.mul_monomials(&a.0, &b.0) else { return LinComb::zero() };
        let mut syms = a.1.clone();
        syms.extend_from_slice(&b.1);
        let Some(sign) = wedge_sort(&mut syms) else { return LinComb::zero() };
        let key = (m, syms);
        if !self.survives(self.weight(&key)) {
            return LinComb::zero();
        }
        LinComb::term(key, &s * &sign)
    }

    pub fn d(&self, f: &FormMono) -> CommForm {
        let mut out = LinComb::zero();
        for (j, &(s, e)) in f.0.iter().enumerate() {
            let mut p = f.0.clone();
            if e == 1 {
                p.remove(j);
            } else {
                p[j].1 -= 1;
            }
            out.add_scaled(&self.attach(&p, &LinComb::basis(s), &f.1, &Scalar::one()), &Scalar::from_int(e as i64));
        }
        out
    }

    /// Brylinski's boundary
    /// `δ(p₀ dp₁ … dpₙ) = Σᵢ (−1)^{i+1} {p₀, pᵢ} … d̂pᵢ … + Σ_{i<j} (−1)^{i+j} p₀ d{pᵢ, pⱼ} … d̂pᵢ … d̂pⱼ …`.
    pub fn delta(&self, f: &FormMono) -> Result<CommForm, LieError> {
        let (p0, syms) = f;
        let n = syms.len();
        let mut out = LinComb::zero();
        let sign = |k: usize| if k % 2 == 1 { Scalar::from_int(-1) } else { Scalar::one() };
        for i in 0..n {
            let rest: Vec<SymId> = syms.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &s)| s).collect();
            let br = self.p.try_bracket(p0, &vec![(syms[i], 1)])?;
            for (m, c) in br.iter() {
                let key = (m.clone(), rest.clone());
                if self.survives(self.weight(&key)) {
                    // 1-based i + 1
                    out.add_term(key, &(c * &sign(i + 2)));
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                let rest: Vec<SymId> =
                    syms.iter().enumerate().filter(|&(k, _)| k != i && k != j).map(|(_, &s)| s).collect();
                let w = self.p.weight(p0) + rest.iter().map(|&s| self.sym_weight(s)).sum::<usize>();
                let wb = self.sym_weight(syms[i]) + self.sym_weight(syms[j]) + 1;
                if !self.survives(w + wb) {
                    continue;
                }
                let br = self.p.lie().bracket(syms[i], syms[j])?;
                out = out.plus(&self.attach(p0, &br, &rest, &sign(i + j + 2)));
            }
        }
        Ok(out)
    }

    pub fn d_lin(&self, x: &CommForm) -> CommForm {
        x.map_linear(|f| self.d(f))
    }

    pub fn delta_lin(&self, x: &CommForm) -> Result<CommForm, LieError> {
        let mut out = LinComb::zero();
        for (f, c) in x.iter() {
            out.add_scaled(&self.delta(f)?, c);
        }
        Ok(out)
    }

    /// `(ᵢΩ, d)` in content `c`, form degrees `0..=max_form`.
    pub fn de_rham(&self, c: &Degree, weight: usize, max_form: usize) -> Result<ComplexSlice, ComplexError> {
        let levels: Vec<_> = (0..=max_form).map(|r| QuotientSpace::full(self.slice(c, r, weight..=weight))).collect();
        quotient_complex(0, &levels, |f| self.d(f))
    }
}
