//! `Ω_{NC_l}` of a (localized) `T_{≤l}V` as the star algebra `(P_{≤l}(V ⊕ dV), ⋆)`.
//!
//! The letters of `W = V ⊕ dV` are the generators of `V` followed by odd
//! letters `dx_i`. `d` is the odd derivation with `d(x_i) = dx_i`; it is
//! computed on Lie symbols through their tensor expansions and extended to
//! monomials by the Leibniz rule.

use std::collections::HashMap;
use std::sync::RwLock;

use crate::exact_linalg::{ComplexError, ComplexSlice, Scalar};
use crate::free_assoc::{Generator, GeneratorSet, Word};
use crate::graded::{graded_commutator, Degree, GradedAlgebra, LinComb, Slice};
use crate::lie_poisson::{LieError, Monomial, PoissonElement, SymId};
use crate::pbw_star::{build_star, PbwError, StarAlgebra};

use super::quotient::{quotient_complex, QuotientSpace};

pub struct StarForms {
    nv: usize,
    star: StarAlgebra,
    dsym: Vec<PoissonElement>,
    dcache: RwLock<HashMap<Monomial, PoissonElement>>,
}

impl std::fmt::Debug for StarForms {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("StarForms").field("nv", &self.nv).field("l", &self.star.l()).finish()
    }
}

fn d_word(w: &[u8], nv: usize) -> LinComb<Word> {
    let mut out = LinComb::zero();
    let mut odd = 0;
    for (j, &u) in w.iter().enumerate() {
        if (u as usize) < nv {
            let mut v = w.to_vec();
            v[j] = u + nv as u8;
            let s = if odd % 2 == 1 { Scalar::from_int(-1) } else { Scalar::one() };
            out.add_term(v, &s);
        } else {
            odd += 1;
        }
    }
    out
}

impl StarForms {
    /// # Panics
    /// If some generator is already named `d` followed by another generator's name.
    pub fn new(gens: &GeneratorSet, l: usize) -> Result<Self, PbwError> {
        let nv = gens.len();
        let mut all: Vec<Generator> = gens.iter().cloned().collect();
        all.extend(gens.iter().map(|g| Generator::odd(&format!("d{}", g.name))));
        let w = GeneratorSet::new(all).expect("differential names collide with generators");
        let star = build_star(&w, l)?;
        let lie = star.poisson().lie().clone();
        let mut dsym = Vec::with_capacity(lie.len());
        for s in lie.symbols() {
            let dv = s.expansion.map_linear(|w| d_word(w, nv));
            let ids: LinComb<SymId> = lie.to_symbols(&dv).map_err(|e: LieError| PbwError::from(e))?;
            dsym.push(ids.map_linear(|&t| LinComb::basis(vec![(t, 1)])));
        }
        Ok(StarForms { nv, star, dsym, dcache: RwLock::new(HashMap::new()) })
    }

    pub fn star(&self) -> &StarAlgebra {
        &self.star
    }

    pub fn l(&self) -> usize {
        self.star.l()
    }

    pub fn rank(&self) -> usize {
        self.nv
    }

    /// Above this form degree every slice is zero.
    pub fn top_form(&self) -> usize {
        self.nv + 2 * self.l()
    }

    pub fn v_content(&self, m: &Monomial) -> Degree {
        let d = self.star.degree(m);
        (0..self.nv).map(|i| d[i] + d[self.nv + i]).collect()
    }

    pub fn form_degree(&self, m: &Monomial) -> usize {
        self.star.degree(m)[self.nv..].iter().sum::<i32>() as usize
    }

    /// Basis of the forms of degree `n` in `V`-content `c`.
    pub fn basis(&self, c: &Degree, n: usize) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut b = vec![0i32; self.nv];
        self.fill(c, n as i32, 0, &mut b, &mut out);
        out.sort();
        out
    }

    fn fill(&self, c: &Degree, left: i32, i: usize, b: &mut Vec<i32>, out: &mut Vec<Monomial>) {
        if i == self.nv {
            if left == 0 {
                let mut d: Degree = c.iter().zip(b.iter()).map(|(x, y)| x - y).collect();
                d.extend(b.iter());
                out.extend(self.star.basis(&d));
            }
            return;
        }
        for k in 0..=left {
            b[i] = k;
            self.fill(c, left - k, i + 1, b, out);
        }
        b[i] = 0;
    }

    pub fn slice(&self, c: &Degree, n: usize) -> Slice<Monomial> {
        Slice::new(self.basis(c, n))
    }

    pub fn d(&self, m: &Monomial) -> PoissonElement {
        if let Some(v) = self.dcache.read().unwrap().get(m) {
            return v.clone();
        }
        let p = self.star.poisson();
        let mut out = LinComb::zero();
        for j in 0..m.len() {
            let (s, k) = m[j];
            let prefix: Monomial = m[..j].to_vec();
            let suffix: Monomial = m[j + 1..].to_vec();
            let mut pow = LinComb::zero();
            pow.add_term(if k == 1 { Vec::new() } else { vec![(s, k - 1)] }, &Scalar::from_int(k as i64));
            let df = p.mul_elements(&pow, &self.dsym[s as usize]);
            let t = p.mul_elements(&p.mul_elements(&LinComb::basis(prefix.clone()), &df), &LinComb::basis(suffix));
            let sign = if p.monomial_is_odd(&prefix) { Scalar::from_int(-1) } else { Scalar::one() };
            out.add_scaled(&t, &sign);
        }
        self.dcache.write().unwrap().insert(m.clone(), out.clone());
        out
    }

    pub fn d_lin(&self, x: &PoissonElement) -> PoissonElement {
        x.map_linear(|m| self.d(m))
    }

    /// `(Ω_{NC_l}R, d)` in content `c`, form degrees `0..=max_form`.
    pub fn de_rham(&self, c: &Degree, max_form: usize) -> Result<ComplexSlice, ComplexError> {
        let levels: Vec<_> = (0..=max_form).map(|n| QuotientSpace::full(self.slice(c, n))).collect();
        quotient_complex(0, &levels, |m| self.d(m))
    }

    /// Graded commutators `[λ, g]_⋆` with `g` running over the letters of
    /// `W` and the inverses of invertible ones.
    pub fn commutators(&self, c: &Degree, n: usize) -> QuotientSpace<Monomial> {
        let mut jobs = Vec::new();
        for g in self.star.generators() {
            let gc = self.v_content(&g);
            let gn = self.form_degree(&g);
            let Some(lower_n) = n.checked_sub(gn) else { continue };
            let lower: Degree = c.iter().zip(&gc).map(|(x, y)| x - y).collect();
            for lam in self.basis(&lower, lower_n) {
                jobs.push((lam, g.clone()));
            }
        }
        let vs = crate::par::map(&jobs, |(lam, g)| graded_commutator(&self.star, lam, g));
        QuotientSpace::spanned(self.slice(c, n), vs)
    }

    /// `(Ω_{NC_l}R/[,], d)` in content `c`, form degrees `0..=max_form`.
    pub fn mod_commutators(&self, c: &Degree, max_form: usize) -> Result<ComplexSlice, ComplexError> {
        let levels: Vec<_> = (0..=max_form).map(|n| self.commutators(c, n)).collect();
        quotient_complex(0, &levels, |m| self.d(m))
    }

    /// Poisson brackets `{λ, g}` of the underlying `P_{≤l}(V ⊕ dV)`, which
    /// is `Ω_{NP_l}` of `P_{≤l}SV`.
    pub fn brackets(&self, c: &Degree, n: usize) -> QuotientSpace<Monomial> {
        let p = self.star.poisson();
        let mut jobs = Vec::new();
        for g in p.generators() {
            let gc = self.v_content(&g);
            let gn = self.form_degree(&g);
            let Some(lower_n) = n.checked_sub(gn) else { continue };
            let lower: Degree = c.iter().zip(&gc).map(|(x, y)| x - y).collect();
            for lam in self.basis(&lower, lower_n) {
                jobs.push((lam, g.clone()));
            }
        }
        let vs = crate::par::map(&jobs, |(lam, g)| p.bracket(lam, g));
        QuotientSpace::spanned(self.slice(c, n), vs)
    }

    /// `(Ω_{NP_l}/{,}, d)` in content `c`, form degrees `0..=max_form`.
    pub fn mod_brackets(&self, c: &Degree, max_form: usize) -> Result<ComplexSlice, ComplexError> {
        let levels: Vec<_> = (0..=max_form).map(|n| self.brackets(c, n)).collect();
        quotient_complex(0, &levels, |m| self.d(m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free_assoc::TensorAlgebra;
    use crate::graded::{degrees_up_to, mul_lin};
    use crate::nc_forms::{dg_truncate, NcForms, Support};

    #[test]
    fn d_on_words() {
        // d(x dx y) = dx dx y − x dx dy for V = ⟨x, y⟩
        let v = d_word(&[0, 2, 1], 2);
        let want = LinComb::basis(vec![2, 2, 1]).minus(&LinComb::basis(vec![0, 2, 3]));
        assert_eq!(v, want);
        assert_eq!(d_word(&[2, 0], 2), LinComb::term(vec![2, 2], Scalar::from_int(-1)));
    }

    #[test]
    fn d_squares_to_zero_and_is_a_star_derivation() {
        let f = StarForms::new(&GeneratorSet::standard(2), 1).unwrap();
        let mut all = Vec::new();
        for c in degrees_up_to(2, 2) {
            for n in 0..=2 {
                all.extend(f.basis(&c, n));
            }
        }
        for a in &all {
            assert!(f.d_lin(&f.d(a)).is_zero(), "{a:?}");
            for b in all.iter().take(20) {
                let ab = f.star.star(a, b);
                let sign = if f.form_degree(a) % 2 == 1 { Scalar::from_int(-1) } else { Scalar::one() };
                let mut rhs = mul_lin(&f.star, &f.d(a), &LinComb::basis(b.clone()));
                rhs.add_scaled(&mul_lin(&f.star, &LinComb::basis(a.clone()), &f.d(b)), &sign);
                assert_eq!(f.d_lin(&ab), rhs, "{a:?} {b:?}");
            }
        }
    }

    #[test]
    fn matches_literal_truncation() {
        let f = StarForms::new(&GeneratorSet::standard(2), 1).unwrap();
        let lit = NcForms::new(TensorAlgebra::new(GeneratorSet::standard(2)), Support::Positive);
        let t = dg_truncate(&lit, 1, 3, 4).unwrap();
        for (c, cx) in &t {
            for n in 0..=3 {
                assert_eq!(f.basis(c, n).len(), cx.dim(n as i32), "{c:?} {n}");
            }
            let h = f.de_rham(c, f.top_form() + 1).unwrap().cohomology_dims();
            assert_eq!(&h[..3], &cx.cohomology_dims()[..3], "{c:?}");
        }
    }

    #[test]
    fn top_form_bound() {
        let f = StarForms::new(&GeneratorSet::laurent(1), 1).unwrap();
        for w in -2..=2 {
            assert!(f.basis(&vec![w], f.top_form() + 1).is_empty());
        }
    }

    #[test]
    fn bracket_quotient_of_the_torus() {
        let f = StarForms::new(&GeneratorSet::laurent(2), 1).unwrap();
        for c in [vec![0, 0], vec![1, 0], vec![-1, 2]] {
            let h = f.mod_brackets(&c, 3).unwrap().cohomology_dims();
            let want = if c == [0, 0] { [2, 2, 1] } else { [0, 0, 0] };
            assert_eq!(h[..3], want, "{c:?}");
        }
    }

    #[test]
    fn punctured_line() {
        let f = StarForms::new(&GeneratorSet::laurent(1), 1).unwrap();
        for w in -3..=3 {
            let h = f.de_rham(&vec![w], f.top_form() + 1).unwrap().cohomology_dims();
            let e = usize::from(w == 0);
            assert_eq!(&h[..3], &[e, e, 0], "weight {w}");
        }
    }
}
