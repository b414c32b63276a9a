//! The symmetrization map `e: S(LV) → TV` and the star product it induces
//! on truncated free Poisson algebras.
//!
//! `e` and its inverse are computed one content slice at a time. The star
//! product `Φ(a, b) = e⁻¹(e(a)e(b))` on `P_{≤l}` is bidifferential, so it is
//! determined by its Taylor coefficients `c(u, v)` on monomials `u, v` of
//! order at most `l`:
//!
//! `Φ(a, b) = Σ ± a₁ b₁ c(a₂, b₂)` over the coproducts of `a` and `b`.
//!
//! The coefficients are extracted from the polynomial product by Möbius
//! inversion. The same formula with generalized binomials evaluates `Φ` on
//! negative powers of invertible generators, which realizes the localized
//! product `Γ⁻¹Φ`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::exact_linalg::{Echelon, Scalar};
use crate::free_assoc::{word_content, words_with_content, GeneratorSet, TensorAlgebra, Word};
use crate::graded::{deg_sub, degrees_up_to, graded_commutator, koszul, mul_lin, Degree, GradedAlgebra, LinComb, Slice};
use crate::lie_poisson::{FreePoisson, LieBasis, LieError, Monomial, PoissonElement, SymId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PbwError {
    /// The content needs Lie symbols longer than the basis provides.
    WindowOverflow { total: usize, max_length: usize },
    /// `e` is only defined here on polynomial monomials.
    NegativeExponent,
    /// A per-degree matrix of `e` is singular.
    Singular { degree: Degree },
    Lie(LieError),
}

impl fmt::Display for PbwError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PbwError::WindowOverflow { total, max_length } => {
                write!(f, "content of total weight {total} exceeds Lie basis length {max_length}")
            }
            PbwError::NegativeExponent => write!(f, "symmetrization needs nonnegative exponents"),
            PbwError::Singular { degree } => write!(f, "symmetrization matrix is singular in degree {degree:?}"),
            PbwError::Lie(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for PbwError {}

impl From<LieError> for PbwError {
    fn from(e: LieError) -> Self {
        PbwError::Lie(e)
    }
}

#[derive(Debug)]
struct InverseSlice {
    words: Slice<Word>,
    monos: Vec<Monomial>,
    echelon: Echelon,
}

/// `e` and `e⁻¹` with per-content caches.
#[derive(Debug)]
pub struct SymmetrizationMap {
    lie: Arc<LieBasis>,
    poly: FreePoisson,
    tv: TensorAlgebra,
    slices: RwLock<HashMap<Degree, Arc<InverseSlice>>>,
}

/// Per-degree outcome of the PBW check.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct PbwSlice {
    pub degree: Degree,
    pub poisson_dim: usize,
    pub tensor_dim: usize,
    pub rank: usize,
}

impl PbwSlice {
    pub fn invertible(&self) -> bool {
        self.poisson_dim == self.tensor_dim && self.rank == self.tensor_dim
    }
}

impl SymmetrizationMap {
    /// Uses a Lie basis up to `max_len`, which bounds the contents `e⁻¹`
    /// can handle.
    pub fn new(gens: &GeneratorSet, max_len: usize) -> Self {
        Self::from_lie(Arc::new(LieBasis::lyndon(gens, max_len)))
    }

    pub fn from_lie(lie: Arc<LieBasis>) -> Self {
        let poly = FreePoisson::polynomial(lie.clone(), None);
        let tv = TensorAlgebra::new(lie.gens().clone());
        SymmetrizationMap { lie, poly, tv, slices: RwLock::new(HashMap::new()) }
    }

    pub fn lie(&self) -> &Arc<LieBasis> {
        &self.lie
    }

    pub fn tensor_algebra(&self) -> &TensorAlgebra {
        &self.tv
    }

    /// `e` on a monomial: the average over orderings of the product of the
    /// factor expansions, with Koszul signs.
    pub fn symmetrize_monomial(&self, m: &Monomial) -> Result<LinComb<Word>, PbwError> {
        let mut factors: Vec<SymId> = Vec::new();
        for &(s, e) in m {
            if e < 0 {
                return Err(PbwError::NegativeExponent);
            }
            factors.extend(std::iter::repeat_n(s, e as usize));
        }
        assert!(factors.len() < 32, "too many factors to symmetrize");
        let mut memo: HashMap<u32, LinComb<Word>> = HashMap::new();
        Ok(self.sym_subset(&factors, (1u32 << factors.len()) - 1, &mut memo))
    }

    fn sym_subset(&self, factors: &[SymId], mask: u32, memo: &mut HashMap<u32, LinComb<Word>>) -> LinComb<Word> {
        if mask == 0 {
            return LinComb::basis(Vec::new());
        }
        if let Some(v) = memo.get(&mask) {
            return v.clone();
        }
        let n = mask.count_ones() as i64;
        let mut out = LinComb::zero();
        let mut odd_before = 0usize;
        for (i, &s) in factors.iter().enumerate() {
            if mask & (1 << i) == 0 {
                continue;
            }
            let sym = self.lie.symbol(s);
            let sign = if sym.odd && odd_before % 2 == 1 { Scalar::from_int(-1) } else { Scalar::one() };
            let rest = self.sym_subset(factors, mask & !(1 << i), memo);
            out.add_scaled(&mul_lin(&self.tv, &sym.expansion, &rest), &sign);
            if sym.odd {
                odd_before += 1;
            }
        }
        let out = out.scaled(&Scalar::new(1, n));
        memo.insert(mask, out.clone());
        out
    }

    pub fn symmetrize(&self, p: &PoissonElement) -> Result<LinComb<Word>, PbwError> {
        let mut out = LinComb::zero();
        for (m, c) in p.iter() {
            out.add_scaled(&self.symmetrize_monomial(m)?, c);
        }
        Ok(out)
    }

    fn slice(&self, d: &Degree) -> Result<Arc<InverseSlice>, PbwError> {
        if let Some(s) = self.slices.read().unwrap().get(d) {
            return Ok(s.clone());
        }
        let total = d.iter().sum::<i32>() as usize;
        if total > self.lie.max_len() {
            return Err(PbwError::WindowOverflow { total, max_length: self.lie.max_len() });
        }
        let words = Slice::new(words_with_content(d));
        let monos = self.poisson_monomials(d);
        let mut echelon = Echelon::with_tracking(words.dim());
        let mut ok = monos.len() == words.dim();
        for m in &monos {
            ok &= echelon.insert(words.to_sparse(&self.symmetrize_monomial(m)?));
        }
        if !ok {
            return Err(PbwError::Singular { degree: d.clone() });
        }
        let s = Arc::new(InverseSlice { words, monos, echelon });
        self.slices.write().unwrap().insert(d.clone(), s.clone());
        Ok(s)
    }

    /// All polynomial Poisson monomials of a content.
    pub fn poisson_monomials(&self, d: &Degree) -> Vec<Monomial> {
        let total = d.iter().sum::<i32>().max(1) as usize;
        (0..total).flat_map(|w| self.poly.basis_of_weight(d, w)).collect()
    }

    /// Rank data of `e` in one content.
    pub fn check_slice(&self, d: &Degree) -> PbwSlice {
        let words = Slice::new(words_with_content(d));
        let monos = self.poisson_monomials(d);
        let vs: Vec<_> = monos.iter().map(|m| words.to_sparse(&self.symmetrize_monomial(m).unwrap())).collect();
        PbwSlice {
            degree: d.clone(),
            poisson_dim: monos.len(),
            tensor_dim: words.dim(),
            rank: crate::exact_linalg::rank_of_vectors(&vs, words.dim()),
        }
    }

    /// `e⁻¹` by solving in each content slice.
    pub fn unsymmetrize(&self, t: &LinComb<Word>) -> Result<PoissonElement, PbwError> {
        let mut parts: HashMap<Degree, LinComb<Word>> = HashMap::new();
        for (w, c) in t.iter() {
            parts.entry(word_content(w, self.lie.gens().len())).or_insert_with(LinComb::zero).add_term(w.clone(), c);
        }
        let mut out = LinComb::zero();
        for (d, part) in parts {
            let s = self.slice(&d)?;
            let coords = s.echelon.solve(&s.words.to_sparse(&part)).ok_or(PbwError::Singular { degree: d.clone() })?;
            for (i, c) in coords {
                out.add_term(s.monos[i].clone(), &c);
            }
        }
        Ok(out)
    }
}

/// Checks that `e` is bijective in every content of total weight at most
/// `max_total`.
pub fn pbw_check(gens: &GeneratorSet, max_total: u32) -> Vec<PbwSlice> {
    let e = SymmetrizationMap::new(gens, max_total.max(1) as usize);
    let degrees = degrees_up_to(gens.len(), max_total);
    crate::par::map(&degrees, |d| e.check_slice(d))
}

/// `(P_{≤l}, Φ)`, localized at the invertible generators.
#[derive(Debug)]
pub struct StarAlgebra {
    sym: Arc<SymmetrizationMap>,
    algebra: FreePoisson,
    shape: FreePoisson,
    l: usize,
    taylor: Vec<(Monomial, Monomial, PoissonElement)>,
    cache: RwLock<HashMap<(Monomial, Monomial), PoissonElement>>,
}

/// Builds the star algebra of order `l`.
pub fn build_star(gens: &GeneratorSet, l: usize) -> Result<StarAlgebra, PbwError> {
    StarAlgebra::new(gens, l, l)
}

impl StarAlgebra {
    /// `order` bounds the monomials `u, v` whose Taylor coefficients are
    /// computed. Anything at least `l` is exact.
    pub fn new(gens: &GeneratorSet, l: usize, order: usize) -> Result<Self, PbwError> {
        let max_len = (2 * order + l).max(l + 1).max(1);
        let lie = Arc::new(LieBasis::lyndon(gens, max_len));
        let sym = Arc::new(SymmetrizationMap::from_lie(lie.clone()));
        let shape = FreePoisson::new(lie, None);
        let algebra = shape.with_truncation(Some(l));
        let mut star = StarAlgebra { sym, algebra, shape, l, taylor: Vec::new(), cache: RwLock::new(HashMap::new()) };
        star.compute_taylor(order)?;
        Ok(star)
    }

    fn compute_taylor(&mut self, order: usize) -> Result<(), PbwError> {
        let monos = positive_monomials(&self.shape, order, self.l);
        let mut pairs: Vec<(&Monomial, &Monomial)> = Vec::new();
        for u in &monos {
            for v in &monos {
                if self.shape.weight(u) + self.shape.weight(v) <= self.l {
                    pairs.push((u, v));
                }
            }
        }
        let ord = |m: &Monomial| m.iter().map(|(_, e)| *e as usize).sum::<usize>();
        pairs.sort_by_key(|(u, v)| (ord(u) + ord(v), (*u).clone(), (*v).clone()));
        for (u, v) in pairs {
            let b = self.star_via_e(u, v)?;
            let c = b.minus(&self.assemble(u, v));
            if !c.is_zero() {
                self.taylor.push((u.clone(), v.clone(), c));
            }
        }
        Ok(())
    }

    pub fn l(&self) -> usize {
        self.l
    }

    /// The underlying truncated Poisson algebra `P_{≤l}`.
    pub fn poisson(&self) -> &FreePoisson {
        &self.algebra
    }

    pub fn symmetrization(&self) -> &Arc<SymmetrizationMap> {
        &self.sym
    }

    /// Nonzero Taylor coefficients `(u, v, c(u, v))`.
    pub fn taylor(&self) -> &[(Monomial, Monomial, PoissonElement)] {
        &self.taylor
    }

    /// `e⁻¹(e(a)e(b))` modulo weight above `l`, for polynomial monomials.
    pub fn star_via_e(&self, a: &Monomial, b: &Monomial) -> Result<PoissonElement, PbwError> {
        let ea = self.sym.symmetrize_monomial(a)?;
        let eb = self.sym.symmetrize_monomial(b)?;
        let p = self.sym.unsymmetrize(&mul_lin(self.sym.tensor_algebra(), &ea, &eb))?;
        Ok(p.filtered(|m| self.algebra.weight(m) <= self.l))
    }

    /// Coproduct component: the coefficient and cofactor `a₁` with
    /// `a₁ ⊗ u` appearing in `Δa`.
    fn split(&self, a: &Monomial, u: &Monomial) -> Option<(Scalar, Monomial)> {
        let mut coeff = Scalar::one();
        let mut rest: HashMap<SymId, i32> = a.iter().copied().collect();
        for &(s, f) in u {
            let e = rest.get(&s).copied().unwrap_or(0);
            let c = Scalar::binomial(e as i64, f as u32);
            if c.is_zero() {
                return None;
            }
            coeff *= &c;
            let left = e - f;
            if left == 0 {
                rest.remove(&s);
            } else {
                rest.insert(s, left);
            }
        }
        let mut a1: Monomial = rest.into_iter().collect();
        a1.sort();
        let (sign, m) = self.shape.mul_monomials(&a1, u)?;
        debug_assert_eq!(&m, a);
        Some((&coeff * &sign, a1))
    }

    fn assemble(&self, a: &Monomial, b: &Monomial) -> PoissonElement {
        let mut out = LinComb::zero();
        for (u, v, c) in &self.taylor {
            let Some((ca, a1)) = self.split(a, u) else { continue };
            let Some((cb, b1)) = self.split(b, v) else { continue };
            let sign = koszul(self.shape.monomial_is_odd(u), self.shape.monomial_is_odd(&b1));
            let Some((s, ab)) = self.algebra.mul_monomials(&a1, &b1) else { continue };
            let coeff = &(&(&ca * &cb) * &sign) * &s;
            out.add_scaled(&self.algebra.mul_elements(&LinComb::basis(ab), c), &coeff);
        }
        out
    }

    /// `a ⋆ b`, valid on Laurent monomials.
    pub fn star(&self, a: &Monomial, b: &Monomial) -> PoissonElement {
        let key = (a.clone(), b.clone());
        if let Some(v) = self.cache.read().unwrap().get(&key) {
            return v.clone();
        }
        let v = self.assemble(a, b);
        self.cache.write().unwrap().insert(key, v.clone());
        v
    }

    pub fn star_elements(&self, x: &PoissonElement, y: &PoissonElement) -> PoissonElement {
        let mut out = LinComb::zero();
        for (a, ca) in x.iter() {
            for (b, cb) in y.iter() {
                out.add_scaled(&self.star(a, b), &(ca * cb));
            }
        }
        out
    }

    /// The part `Φ_p(a, b)` of Poisson weight `wt(a) + wt(b) + p`.
    pub fn component(&self, p: usize, a: &Monomial, b: &Monomial) -> PoissonElement {
        let w = self.algebra.weight(a) + self.algebra.weight(b) + p;
        self.star(a, b).filtered(|m| self.algebra.weight(m) == w)
    }

    /// Graded commutator for the star product.
    pub fn commutator(&self, a: &Monomial, b: &Monomial) -> PoissonElement {
        graded_commutator(self, a, b)
    }

    /// Single-generator monomials.
    pub fn letters(&self) -> Vec<Monomial> {
        (0..self.algebra.gens().len() as u8).map(|i| self.algebra.letter(i)).collect()
    }
}

/// Monomials with positive exponents, at most `order` factors and Poisson
/// weight at most `max_weight`, including the unit.
fn positive_monomials(p: &FreePoisson, order: usize, max_weight: usize) -> Vec<Monomial> {
    fn go(
        p: &FreePoisson,
        syms: &[SymId],
        from: usize,
        order: usize,
        weight: usize,
        cur: &mut Monomial,
        out: &mut Vec<Monomial>,
    ) {
        out.push(cur.clone());
        for i in from..syms.len() {
            let s = p.lie().symbol(syms[i]);
            let max_e = if s.odd { 1 } else { order };
            for e in 1..=max_e.min(order) {
                if s.weight() * e > weight {
                    break;
                }
                cur.push((syms[i], e as i32));
                go(p, syms, i + 1, order - e, weight - s.weight() * e, cur, out);
                cur.pop();
            }
        }
    }
    let syms: Vec<SymId> = (0..p.lie().len() as SymId).filter(|&s| p.lie().symbol(s).weight() <= max_weight).collect();
    let mut out = Vec::new();
    go(p, &syms, 0, order, max_weight, &mut Vec::new(), &mut out);
    out
}

impl GradedAlgebra for StarAlgebra {
    type Key = Monomial;

    fn alphabet_len(&self) -> usize {
        self.algebra.gens().len()
    }

    fn degree(&self, k: &Monomial) -> Degree {
        self.algebra.monomial_degree(k)
    }

    fn is_odd(&self, k: &Monomial) -> bool {
        self.algebra.monomial_is_odd(k)
    }

    fn basis(&self, d: &Degree) -> Vec<Monomial> {
        self.algebra.basis(d)
    }

    fn mul(&self, a: &Monomial, b: &Monomial) -> LinComb<Monomial> {
        self.star(a, b)
    }

    fn unit(&self) -> Monomial {
        Vec::new()
    }

    /// Letters and the inverses of invertible letters.
    fn generators(&self) -> Vec<Monomial> {
        let mut g = self.letters();
        for (i, &inv) in self.algebra.invertible().iter().enumerate() {
            if inv {
                g.push(self.algebra.power(i as u8, -1));
            }
        }
        g
    }
}

/// Per-degree comparison of `P/{P,P}` with `(P, Φ)/[P,P]_Φ`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct QuotientComparison {
    pub degree: Degree,
    pub dim: usize,
    pub poisson_quotient: usize,
    pub star_quotient: usize,
    /// The two subspaces coincide, so the identity induces the isomorphism.
    pub same_subspace: bool,
}

/// Compares the bracket quotients of `P_{≤l}` and of the star algebra.
///
/// `{P,P}` is spanned by brackets with single symbols and `[P,P]_Φ` by
/// commutators with letters, by the derivation identities.
pub fn bracket_quotient_compare(star: &StarAlgebra, window: &[Degree]) -> Vec<QuotientComparison> {
    let p = star.poisson();
    let syms: Vec<Monomial> = (0..p.lie().len() as SymId)
        .filter(|&s| p.lie().symbol(s).weight() < star.l().max(1))
        .map(|s| vec![(s, 1)])
        .collect();
    crate::par::map(window, |d| {
        let slice = Slice::new(p.basis(d));
        let span = |gens: &[Monomial], f: &dyn Fn(&Monomial, &Monomial) -> PoissonElement| {
            let mut e = Echelon::new(slice.dim());
            for g in gens {
                let rest = deg_sub(d, &p.monomial_degree(g));
                for lam in p.basis(&rest) {
                    e.insert(slice.to_sparse(&f(&lam, g)));
                }
            }
            e
        };
        let pb = span(&syms, &|a, b| p.bracket(a, b));
        let sb = span(&star.letters(), &|a, b| star.commutator(a, b));
        let same = pb.rank() == sb.rank() && pb.rows().iter().all(|r| sb.contains(r));
        QuotientComparison {
            degree: d.clone(),
            dim: slice.dim(),
            poisson_quotient: slice.dim() - pb.rank(),
            star_quotient: slice.dim() - sb.rank(),
            same_subspace: same,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free_assoc::{commutator_filtration, Generator};
    use crate::graded::degrees_of_total;
    use crate::lie_poisson::poisson_filtration;

    fn s(n: i64, d: i64) -> Scalar {
        Scalar::new(n, d)
    }

    #[test]
    fn symmetrize_examples() {
        let e = SymmetrizationMap::new(&GeneratorSet::standard(2), 4);
        let xy = e.symmetrize_monomial(&vec![(0, 1), (1, 1)]).unwrap();
        let expect = LinComb::term(vec![0, 1], s(1, 2)).plus(&LinComb::term(vec![1, 0], s(1, 2)));
        assert_eq!(xy, expect);
        assert_eq!(e.symmetrize_monomial(&vec![(0, 2)]).unwrap(), LinComb::basis(vec![0, 0]));
        let br = e.symmetrize_monomial(&vec![(2, 1)]).unwrap();
        assert_eq!(br, LinComb::basis(vec![0, 1]).minus(&LinComb::basis(vec![1, 0])));
    }

    #[test]
    fn unsymmetrize_examples() {
        let e = SymmetrizationMap::new(&GeneratorSet::standard(2), 4);
        let p = e.unsymmetrize(&LinComb::basis(vec![0, 1])).unwrap();
        let expect = LinComb::basis(vec![(0, 1), (1, 1)]).plus(&LinComb::term(vec![(2, 1)], s(1, 2)));
        assert_eq!(p, expect);
        assert_eq!(e.unsymmetrize(&LinComb::basis(vec![0, 0])).unwrap(), LinComb::basis(vec![(0, 2)]));
        let lie = LinComb::basis(vec![0, 1]).minus(&LinComb::basis(vec![1, 0]));
        assert_eq!(e.unsymmetrize(&lie).unwrap(), LinComb::basis(vec![(2, 1)]));
    }

    #[test]
    fn pbw_small() {
        for n in 1..=3 {
            for sl in pbw_check(&GeneratorSet::standard(n), 4) {
                assert!(sl.invertible(), "{sl:?}");
            }
        }
    }

    #[test]
    fn pbw_super() {
        let g = GeneratorSet::new(vec![Generator::even("x"), Generator::odd("dx")]).unwrap();
        let e = SymmetrizationMap::new(&g, 4);
        for d in degrees_up_to(2, 4) {
            assert!(e.check_slice(&d).invertible(), "{d:?}");
        }
    }

    #[test]
    fn round_trip() {
        let e = SymmetrizationMap::new(&GeneratorSet::standard(2), 4);
        for d in degrees_up_to(2, 4) {
            for w in words_with_content(&d) {
                let t = LinComb::basis(w);
                assert_eq!(e.symmetrize(&e.unsymmetrize(&t).unwrap()).unwrap(), t);
            }
        }
    }

    #[test]
    fn star_examples() {
        let st = build_star(&GeneratorSet::standard(2), 1).unwrap();
        let (x, y) = (vec![(0, 1)], vec![(1, 1)]);
        let c = st.star(&x, &y).minus(&st.star(&y, &x));
        assert_eq!(c, LinComb::basis(vec![(2, 1)]));
        assert_eq!(st.star(&x, &x), LinComb::basis(vec![(0, 2)]));
        let lp = build_star(&GeneratorSet::new(vec![Generator::invertible("x"), Generator::even("y")]).unwrap(), 1).unwrap();
        let xinv = vec![(0, -1)];
        let phi0 = lp.component(0, &xinv, &y);
        assert_eq!(phi0, LinComb::basis(vec![(0, -1), (1, 1)]));
    }

    #[test]
    fn taylor_formula_matches_e_route() {
        for l in 1..=2 {
            // a larger order bound also makes the Lie basis long enough for e
            let st = StarAlgebra::new(&GeneratorSet::standard(2), l, 3).unwrap();
            let mut monos = Vec::new();
            for t in 0..=3 {
                for d in degrees_of_total(2, t) {
                    monos.extend(st.poisson().basis(&d));
                }
            }
            for a in &monos {
                for b in &monos {
                    assert_eq!(st.star(a, b), st.star_via_e(a, b).unwrap(), "l={l} {a:?} {b:?}");
                }
            }
        }
    }

    #[test]
    fn taylor_coefficients_vanish_beyond_order_l() {
        for l in 1..=2 {
            let st = StarAlgebra::new(&GeneratorSet::standard(2), l, l + 1).unwrap();
            let ord = |m: &Monomial| m.iter().map(|(_, e)| *e as usize).sum::<usize>();
            for (u, v, _) in st.taylor() {
                assert!(ord(u) <= l && ord(v) <= l, "{u:?} {v:?}");
            }
        }
    }

    fn laurent_monos(st: &StarAlgebra, range: i32) -> Vec<Monomial> {
        let n = st.poisson().gens().len();
        let mut out = Vec::new();
        for d in crate::graded::degrees_up_to(n, (range * n as i32) as u32) {
            let shifted: Degree = d.iter().map(|x| x - range).collect();
            if shifted.iter().any(|x| x.abs() > range) {
                continue;
            }
            out.extend(st.basis(&shifted));
        }
        out
    }

    #[test]
    fn localized_associativity() {
        let line = build_star(&GeneratorSet::new(vec![Generator::invertible("x"), Generator::even("y")]).unwrap(), 2).unwrap();
        let monos: Vec<_> = laurent_monos(&line, 1);
        for a in &monos {
            for b in &monos {
                for c in &monos {
                    let l = line.star_elements(&line.star(a, b), &LinComb::basis(c.clone()));
                    let r = line.star_elements(&LinComb::basis(a.clone()), &line.star(b, c));
                    assert_eq!(l, r, "{a:?} {b:?} {c:?}");
                }
            }
        }
    }

    #[test]
    fn super_torus_associativity() {
        let g = GeneratorSet::new(vec![
            Generator::invertible("x"),
            Generator::odd("dx"),
        ])
        .unwrap();
        let st = build_star(&g, 1).unwrap();
        let monos = laurent_monos(&st, 2);
        for a in &monos {
            for b in &monos {
                for c in &monos {
                    let l = st.star_elements(&st.star(a, b), &LinComb::basis(c.clone()));
                    let r = st.star_elements(&LinComb::basis(a.clone()), &st.star(b, c));
                    assert_eq!(l, r, "{a:?} {b:?} {c:?}");
                }
            }
        }
    }

    #[test]
    fn first_order_term_is_the_bracket() {
        let st = build_star(&GeneratorSet::laurent(2), 2).unwrap();
        let monos = laurent_monos(&st, 1);
        for a in &monos {
            for b in &monos {
                let lhs = st.component(1, a, b).minus(&st.component(1, b, a));
                assert_eq!(lhs, st.poisson().bracket(a, b), "{a:?} {b:?}");
            }
        }
    }

    #[test]
    fn commutators_with_letters_are_brackets() {
        // higher parts of [a, v]_Φ vanish, also for negative powers
        let st = build_star(&GeneratorSet::laurent(2), 2).unwrap();
        for a in laurent_monos(&st, 2) {
            for v in st.letters() {
                assert_eq!(st.commutator(&a, &v), st.poisson().bracket(&a, &v), "{a:?}");
            }
        }
    }

    #[test]
    fn quotients_agree() {
        let l0 = build_star(&GeneratorSet::standard(2), 0).unwrap();
        for r in bracket_quotient_compare(&l0, &degrees_up_to(2, 3)) {
            assert_eq!(r.poisson_quotient, r.dim);
            assert_eq!(r.star_quotient, r.dim);
        }
        let line = build_star(&GeneratorSet::laurent(1), 1).unwrap();
        let window: Vec<Degree> = (-3..=3).map(|w| vec![w]).collect();
        for r in bracket_quotient_compare(&line, &window) {
            assert!(r.same_subspace && r.poisson_quotient == r.star_quotient, "{r:?}");
        }
        let plane = build_star(&GeneratorSet::standard(2), 1).unwrap();
        for r in bracket_quotient_compare(&plane, &degrees_up_to(2, 4)) {
            assert!(r.same_subspace && r.poisson_quotient == r.star_quotient, "{r:?}");
        }
    }

    #[test]
    fn e_carries_poisson_filtration_to_commutator_filtration() {
        let g = GeneratorSet::standard(2);
        let pf = poisson_filtration(&g, 2, 4);
        let cf = commutator_filtration(&g, 2, 4);
        let e = SymmetrizationMap::new(&g, 4);
        for d in &pf.window {
            let words = Slice::new(words_with_content(d));
            for m in 0..=2 {
                let mut img = Echelon::new(words.dim());
                for v in pf.levels[m].vectors(d) {
                    img.insert(words.to_sparse(&e.symmetrize(&v).unwrap()));
                }
                assert_eq!(img.rank(), cf.dim(m, d), "{d:?} {m}");
                for v in cf.levels[m].vectors(d) {
                    assert!(img.contains(&words.to_sparse(&v)), "{d:?} {m}");
                }
            }
        }
    }
}
