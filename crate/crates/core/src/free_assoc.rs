//! The tensor algebra on a generator set and its commutator filtration.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exact_linalg::{Echelon, Scalar};
use crate::graded::{
    bracket_filtration, deg_sub, degrees_up_to, koszul, splits, Degree, GradedAlgebra, GradedSubspace, LinComb,
    Slice,
};
use crate::par;

/// One generator of a free (super)algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    /// Reporting weight; internally every generator has its own degree slot.
    #[serde(default)]
    pub weight: Vec<i32>,
    #[serde(default)]
    pub odd: bool,
    #[serde(default)]
    pub invertible: bool,
}

impl Generator {
    pub fn even(name: &str) -> Self {
        Generator { name: name.to_string(), weight: Vec::new(), odd: false, invertible: false }
    }

    pub fn odd(name: &str) -> Self {
        Generator { odd: true, ..Self::even(name) }
    }

    pub fn invertible(name: &str) -> Self {
        Generator { invertible: true, ..Self::even(name) }
    }
}

/// Errors for generator sets and tensor elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    DuplicateName(String),
    NegativeWeight(String),
    OddInvertible(String),
    AmbientMismatch,
    TooManyGenerators(usize),
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::DuplicateName(n) => write!(f, "duplicate generator name {n:?}"),
            AlgebraError::NegativeWeight(n) => write!(f, "generator {n:?} has a negative weight"),
            AlgebraError::OddInvertible(n) => write!(f, "odd generator {n:?} cannot be invertible"),
            AlgebraError::AmbientMismatch => write!(f, "elements live in different algebras"),
            AlgebraError::TooManyGenerators(n) => write!(f, "{n} generators exceed the supported 255"),
        }
    }
}

impl std::error::Error for AlgebraError {}

/// An ordered list of distinct generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSet {
    gens: Vec<Generator>,
}

impl GeneratorSet {
    pub fn new(gens: Vec<Generator>) -> Result<Self, AlgebraError> {
        if gens.len() > 255 {
            return Err(AlgebraError::TooManyGenerators(gens.len()));
        }
        let mut seen = HashSet::new();
        for g in &gens {
            if !seen.insert(g.name.clone()) {
                return Err(AlgebraError::DuplicateName(g.name.clone()));
            }
            if g.weight.iter().any(|&w| w < 0) {
                return Err(AlgebraError::NegativeWeight(g.name.clone()));
            }
            if g.odd && g.invertible {
                return Err(AlgebraError::OddInvertible(g.name.clone()));
            }
        }
        Ok(GeneratorSet { gens })
    }

    /// Even generators named `x0, x1, …` (or `x, y, z` for up to three).
    pub fn standard(n: usize) -> Self {
        Self::new((0..n).map(|i| Generator::even(&standard_name(n, i))).collect()).unwrap()
    }

    /// Like [`GeneratorSet::standard`] but with every generator invertible.
    pub fn laurent(n: usize) -> Self {
        Self::new((0..n).map(|i| Generator::invertible(&standard_name(n, i))).collect()).unwrap()
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn get(&self, i: usize) -> &Generator {
        &self.gens[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = &Generator> {
        self.gens.iter()
    }

    pub fn names(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.name.clone()).collect()
    }

    pub fn is_odd(&self, i: u8) -> bool {
        self.gens[i as usize].odd
    }

    pub fn any_invertible(&self) -> bool {
        self.gens.iter().any(|g| g.invertible)
    }
}

fn standard_name(n: usize, i: usize) -> String {
    if n <= 3 {
        ["x", "y", "z"][i].to_string()
    } else {
        format!("x{i}")
    }
}

/// A word in the generators (indices into the generator set).
pub type Word = Vec<u8>;

pub fn word_content(w: &[u8], n: usize) -> Degree {
    let mut d = vec![0; n];
    for &c in w {
        d[c as usize] += 1;
    }
    d
}

/// All words with the given content, in lexicographic order.
pub fn words_with_content(d: &[i32]) -> Vec<Word> {
    if d.iter().any(|&x| x < 0) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut rem: Vec<i32> = d.to_vec();
    let len: i32 = d.iter().sum();
    fn rec(rem: &mut Vec<i32>, left: i32, cur: &mut Word, out: &mut Vec<Word>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in 0..rem.len() {
            if rem[i] > 0 {
                rem[i] -= 1;
                cur.push(i as u8);
                rec(rem, left - 1, cur, out);
                cur.pop();
                rem[i] += 1;
            }
        }
    }
    rec(&mut rem, len, &mut Vec::new(), &mut out);
    out
}

/// The free associative (super)algebra `TV`.
#[derive(Clone, Debug)]
pub struct TensorAlgebra {
    gens: GeneratorSet,
}

impl TensorAlgebra {
    pub fn new(gens: GeneratorSet) -> Self {
        TensorAlgebra { gens }
    }

    pub fn gens(&self) -> &GeneratorSet {
        &self.gens
    }

    pub fn word_is_odd(&self, w: &[u8]) -> bool {
        w.iter().filter(|&&c| self.gens.is_odd(c)).count() % 2 == 1
    }
}

impl GradedAlgebra for TensorAlgebra {
    type Key = Word;

    fn alphabet_len(&self) -> usize {
        self.gens.len()
    }

    fn degree(&self, k: &Word) -> Degree {
        word_content(k, self.gens.len())
    }

    fn is_odd(&self, k: &Word) -> bool {
        self.word_is_odd(k)
    }

    fn basis(&self, d: &Degree) -> Vec<Word> {
        words_with_content(d)
    }

    fn mul(&self, a: &Word, b: &Word) -> LinComb<Word> {
        let mut w = a.clone();
        w.extend_from_slice(b);
        LinComb::basis(w)
    }

    fn unit(&self) -> Word {
        Vec::new()
    }

    fn generators(&self) -> Vec<Word> {
        (0..self.gens.len() as u8).map(|i| vec![i]).collect()
    }
}

/// An element of `TV` tied to its generator set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    pub ambient: GeneratorSet,
    pub terms: LinComb<Word>,
}

impl TensorElement {
    pub fn new(ambient: GeneratorSet, terms: LinComb<Word>) -> Self {
        TensorElement { ambient, terms }
    }

    pub fn word(ambient: &GeneratorSet, w: &[u8]) -> Self {
        TensorElement { ambient: ambient.clone(), terms: LinComb::basis(w.to_vec()) }
    }

    pub fn add(&self, other: &TensorElement) -> Result<TensorElement, AlgebraError> {
        if self.ambient != other.ambient {
            return Err(AlgebraError::AmbientMismatch);
        }
        Ok(TensorElement { ambient: self.ambient.clone(), terms: self.terms.plus(&other.terms) })
    }
}

/// Concatenation product.
pub fn multiply(a: &TensorElement, b: &TensorElement) -> Result<TensorElement, AlgebraError> {
    if a.ambient != b.ambient {
        return Err(AlgebraError::AmbientMismatch);
    }
    let alg = TensorAlgebra::new(a.ambient.clone());
    Ok(TensorElement { ambient: a.ambient.clone(), terms: crate::graded::mul_lin(&alg, &a.terms, &b.terms) })
}

/// Filtration pieces `F_0 ⊇ F_1 ⊇ … ⊇ F_n` over a degree window.
#[derive(Clone, Debug)]
pub struct FiltrationTable<K> {
    pub window: Vec<Degree>,
    pub levels: Vec<GradedSubspace<K>>,
}

impl<K: Ord + Clone + std::hash::Hash + Eq + fmt::Debug> FiltrationTable<K> {
    pub fn level(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn dim(&self, m: usize, d: &Degree) -> usize {
        self.levels[m].dim(d)
    }

    /// `dim F_m/F_{m+1}` in degree `d`.
    pub fn graded_dim(&self, m: usize, d: &Degree) -> usize {
        self.levels[m].dim(d) - self.levels[m + 1].dim(d)
    }
}

/// The commutator filtration of `TV` up to `F_n`, in all degrees of total
/// weight at most `max_weight`.
pub fn commutator_filtration(gens: &GeneratorSet, n: usize, max_weight: u32) -> FiltrationTable<Word> {
    let alg = TensorAlgebra::new(gens.clone());
    let window = degrees_up_to(gens.len(), max_weight);
    let levels = bracket_filtration(&alg, n, &window);
    FiltrationTable { window, levels }
}

/// A graded bimodule over a graded algebra, with finite slices.
pub trait GradedBimodule<A: GradedAlgebra>: Sync + Send {
    type Key: Ord + Clone + std::hash::Hash + Eq + fmt::Debug + Send + Sync;
    fn degree(&self, m: &Self::Key) -> Degree;
    fn is_odd(&self, m: &Self::Key) -> bool;
    fn basis(&self, d: &Degree) -> Vec<Self::Key>;
    fn left(&self, r: &A::Key, m: &Self::Key) -> LinComb<Self::Key>;
    fn right(&self, m: &Self::Key, r: &A::Key) -> LinComb<Self::Key>;
}

fn left_lin<A: GradedAlgebra, M: GradedBimodule<A>>(
    module: &M,
    r: &LinComb<A::Key>,
    m: &LinComb<M::Key>,
) -> LinComb<M::Key> {
    let mut out = LinComb::zero();
    for (a, ca) in r.iter() {
        for (b, cb) in m.iter() {
            out.add_scaled(&module.left(a, b), &(ca * cb));
        }
    }
    out
}

fn right_lin<A: GradedAlgebra, M: GradedBimodule<A>>(
    module: &M,
    m: &LinComb<M::Key>,
    r: &LinComb<A::Key>,
) -> LinComb<M::Key> {
    let mut out = LinComb::zero();
    for (b, cb) in m.iter() {
        for (a, ca) in r.iter() {
            out.add_scaled(&module.right(b, a), &(ca * cb));
        }
    }
    out
}

/// The filtration `F_{n+1}M = Σ_p F_pM·F_{n+1−p}R + F_{n+1−p}R·F_pM + ⟨[F_pM, F_{n−p}R]⟩`
/// of a bimodule, using the commutator filtration of the algebra.
///
/// The window must be ordered by total degree, contain zero, and be closed
/// under in-window splitting.
pub fn bimodule_filtration<A, M>(alg: &A, module: &M, n: usize, window: &[Degree]) -> FiltrationTable<M::Key>
where
    A: GradedAlgebra,
    M: GradedBimodule<A>,
{
    let rf = bracket_filtration(alg, n + 1, window);
    let gens: Vec<(A::Key, Degree)> = alg.generators().into_iter().map(|g| {
        let d = alg.degree(&g);
        (g, d)
    }).collect();
    let full = par::map(window, |d| {
        let s = Slice::new(module.basis(d));
        let mut e = Echelon::new(s.dim());
        for i in 0..s.dim() {
            e.insert(vec![(i, Scalar::one())]);
        }
        (d.clone(), (s, e))
    });
    let mut levels = vec![GradedSubspace { slices: full.into_iter().collect() }];
    for k in 0..n {
        let seeds: BTreeMap<Degree, Vec<LinComb<M::Key>>> = par::map(window, |d| {
            let mut seeds = Vec::new();
            for (d1, d2) in splits(window, d) {
                for p in 0..=k {
                    let q = k + 1 - p;
                    for m in levels[p].vectors(&d1) {
                        for r in rf[q].vectors(&d2) {
                            seeds.push(right_lin(module, &m, &r));
                        }
                    }
                    for r in rf[q].vectors(&d1) {
                        for m in levels[p].vectors(&d2) {
                            seeds.push(left_lin(module, &r, &m));
                        }
                    }
                    for m in levels[p].vectors(&d1) {
                        for r in rf[k - p].vectors(&d2) {
                            let mut c = right_lin(module, &m, &r);
                            for (rk, rc) in r.iter() {
                                for (mk, mc) in m.iter() {
                                    let s = -koszul(module.is_odd(mk), alg.is_odd(rk));
                                    c.add_scaled(&module.left(rk, mk), &(&(rc * mc) * &s));
                                }
                            }
                            seeds.push(c);
                        }
                    }
                }
            }
            (d.clone(), seeds)
        })
        .into_iter()
        .collect();
        // Sub-bimodule closure, degree by degree in total order.
        let mut done: BTreeMap<Degree, (Slice<M::Key>, Echelon)> = BTreeMap::new();
        for d in window {
            let s = Slice::new(module.basis(d));
            let mut e = Echelon::new(s.dim());
            for v in &seeds[d] {
                e.insert(s.to_sparse(v));
            }
            for (g, gd) in &gens {
                let lower = deg_sub(d, gd);
                let Some((ls, le)) = done.get(&lower) else { continue };
                let gl = LinComb::basis(g.clone());
                for r in le.rows() {
                    let v = ls.to_lincomb(r);
                    e.insert(s.to_sparse(&left_lin(module, &gl, &v)));
                    e.insert(s.to_sparse(&right_lin(module, &v, &gl)));
                }
            }
            done.insert(d.clone(), (s, e));
        }
        levels.push(GradedSubspace { slices: done });
    }
    FiltrationTable { window: window.to_vec(), levels }
}

/// An algebra as a bimodule over itself.
pub struct Regular<'a, A>(pub &'a A);

impl<A: GradedAlgebra> GradedBimodule<A> for Regular<'_, A> {
    type Key = A::Key;
    fn degree(&self, m: &A::Key) -> Degree {
        self.0.degree(m)
    }
    fn is_odd(&self, m: &A::Key) -> bool {
        self.0.is_odd(m)
    }
    fn basis(&self, d: &Degree) -> Vec<A::Key> {
        self.0.basis(d)
    }
    fn left(&self, r: &A::Key, m: &A::Key) -> LinComb<A::Key> {
        self.0.mul(r, m)
    }
    fn right(&self, m: &A::Key, r: &A::Key) -> LinComb<A::Key> {
        self.0.mul(m, r)
    }
}

/// A graded algebra modulo a graded ideal, known on a finite window.
///
/// Basis keys are the base keys that are not pivots of the ideal's echelon
/// form; products are reduced to that normal form.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra<A: GradedAlgebra> {
    base: A,
    ideal: GradedSubspace<A::Key>,
    quotient_keys: BTreeMap<Degree, Vec<A::Key>>,
}

impl<A: GradedAlgebra> QuotientAlgebra<A> {
    pub fn new(base: A, ideal: GradedSubspace<A::Key>) -> Self {
        let quotient_keys = ideal
            .slices
            .iter()
            .map(|(d, (s, e))| (d.clone(), e.complement().into_iter().map(|i| s.key(i).clone()).collect()))
            .collect();
        QuotientAlgebra { base, ideal, quotient_keys }
    }

    pub fn base(&self) -> &A {
        &self.base
    }

    pub fn ideal(&self) -> &GradedSubspace<A::Key> {
        &self.ideal
    }

    pub fn in_window(&self, d: &Degree) -> bool {
        self.quotient_keys.contains_key(d)
    }

    pub fn window(&self) -> Vec<Degree> {
        self.quotient_keys.keys().cloned().collect()
    }

    /// Normal form of an element of the base algebra.
    pub fn reduce(&self, v: &LinComb<A::Key>) -> LinComb<A::Key> {
        let mut by_deg: BTreeMap<Degree, LinComb<A::Key>> = BTreeMap::new();
        for (k, c) in v.iter() {
            by_deg.entry(self.base.degree(k)).or_insert_with(LinComb::zero).add_term(k.clone(), c);
        }
        let mut out = LinComb::zero();
        for (d, part) in by_deg {
            let (s, e) = self
                .ideal
                .slices
                .get(&d)
                .unwrap_or_else(|| panic!("window overflow: degree {d:?} outside the quotient window"));
            out.add_scaled(&s.to_lincomb(&e.reduce(&s.to_sparse(&part))), &Scalar::one());
        }
        out
    }
}

impl<A: GradedAlgebra> GradedAlgebra for QuotientAlgebra<A> {
    type Key = A::Key;

    fn alphabet_len(&self) -> usize {
        self.base.alphabet_len()
    }

    fn degree(&self, k: &A::Key) -> Degree {
        self.base.degree(k)
    }

    fn is_odd(&self, k: &A::Key) -> bool {
        self.base.is_odd(k)
    }

    fn basis(&self, d: &Degree) -> Vec<A::Key> {
        match self.quotient_keys.get(d) {
            Some(k) => k.clone(),
            None => panic!("window overflow: degree {d:?} outside the quotient window"),
        }
    }

    fn mul(&self, a: &A::Key, b: &A::Key) -> LinComb<A::Key> {
        self.reduce(&self.base.mul(a, b))
    }

    fn unit(&self) -> A::Key {
        self.base.unit()
    }

    fn generators(&self) -> Vec<A::Key> {
        self.base
            .generators()
            .into_iter()
            .filter(|g| self.reduce(&LinComb::basis(g.clone())) == LinComb::basis(g.clone()))
            .collect()
    }

    fn is_commutative(&self) -> bool {
        self.base.is_commutative()
    }
}

/// `T_{≤l} = TV/F_{l+1}TV` on all degrees of total weight at most `max_weight`.
pub fn truncate_ncl(gens: &GeneratorSet, l: usize, max_weight: u32) -> QuotientAlgebra<TensorAlgebra> {
    let table = commutator_filtration(gens, l + 1, max_weight);
    let ideal = table.levels.into_iter().nth(l + 1).unwrap();
    QuotientAlgebra::new(TensorAlgebra::new(gens.clone()), ideal)
}
