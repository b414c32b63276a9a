//! Free Lie algebras and free Poisson algebras `S(LV)`.
//!
//! A [`LieBasis`] is a list of bracket symbols with their expansions in the
//! tensor algebra. For even generators the symbols are Lyndon words with
//! their standard bracketing; with odd generators the basis is picked
//! greedily among left-normed brackets, which span the free Lie
//! superalgebra.
//!
//! [`FreePoisson`] is the (super)commutative algebra on those symbols with
//! the bracket induced from the Lie bracket. Monomials may carry negative
//! exponents on invertible generators, and the algebra may be truncated at
//! a Poisson weight `l`, which kills every monomial of weight above `l`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::exact_linalg::{Echelon, Scalar};
use crate::free_assoc::{words_with_content, FiltrationTable, GeneratorSet, TensorAlgebra, Word};
use crate::graded::{
    bracket_filtration, deg_add, deg_sub, degrees_up_to, graded_commutator, koszul, Degree, GradedAlgebra,
    LinComb, Slice,
};

/// Errors from Lie and Poisson computations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LieError {
    /// A bracket needs symbols longer than the basis provides.
    Overflow { needed: usize, max_length: usize },
    /// The element is not a Lie element (cannot happen for brackets).
    NotInSpan,
    /// A degree has infinitely many monomials (Laurent and untruncated).
    UnboundedSlice,
}

impl fmt::Display for LieError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LieError::Overflow { needed, max_length } => {
                write!(f, "bracket needs length {needed} but the Lie basis stops at {max_length}")
            }
            LieError::NotInSpan => write!(f, "element is not in the span of the Lie basis"),
            LieError::UnboundedSlice => write!(f, "Laurent slices need a Poisson weight bound"),
        }
    }
}

impl std::error::Error for LieError {}

/// Identifier of a Lie basis symbol.
pub type SymId = u16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieSymbol {
    /// Lyndon word, or the letters of a left-normed bracket.
    pub word: Word,
    pub content: Degree,
    pub odd: bool,
    pub expansion: LinComb<Word>,
}

impl LieSymbol {
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// Poisson weight of the symbol: length minus one.
    pub fn weight(&self) -> usize {
        self.word.len() - 1
    }
}

/// Per-content solver for re-expressing Lie elements in the basis.
#[derive(Debug)]
struct ContentSolver {
    slice: Slice<Word>,
    echelon: Echelon,
    ids: Vec<SymId>,
}

/// A basis of the free Lie (super)algebra up to a maximal length.
#[derive(Debug)]
pub struct LieBasis {
    gens: GeneratorSet,
    max_len: usize,
    symbols: Vec<LieSymbol>,
    solvers: HashMap<Degree, ContentSolver>,
    cache: RwLock<HashMap<(SymId, SymId), LinComb<SymId>>>,
}

/// All Lyndon words of length at most `max_len` over `k` letters, in
/// lexicographic order (Duval's algorithm).
pub fn lyndon_words(k: u8, max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    if k == 0 || max_len == 0 {
        return out;
    }
    let mut w: Vec<u8> = vec![0];
    loop {
        out.push(w.clone());
        let n = w.len();
        while w.len() < max_len {
            let c = w[w.len() - n];
            w.push(c);
        }
        while let Some(&last) = w.last() {
            if last == k - 1 {
                w.pop();
            } else {
                break;
            }
        }
        match w.last_mut() {
            Some(last) => *last += 1,
            None => break,
        }
    }
    out
}

/// Standard factorization `w = uv` with `v` the smallest proper suffix.
pub fn standard_factorization(w: &[u8]) -> (Word, Word) {
    let mut best = 1;
    for i in 2..w.len() {
        if w[i..] < w[best..] {
            best = i;
        }
    }
    (w[..best].to_vec(), w[best..].to_vec())
}

fn bracket_expansion(tv: &TensorAlgebra, x: &LinComb<Word>, y: &LinComb<Word>) -> LinComb<Word> {
    let mut out = LinComb::zero();
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            out.add_scaled(&graded_commutator(tv, a, b), &(ca * cb));
        }
    }
    out
}

fn lyndon_expansion(tv: &TensorAlgebra, w: &[u8]) -> LinComb<Word> {
    if w.len() == 1 {
        return LinComb::basis(w.to_vec());
    }
    let (u, v) = standard_factorization(w);
    bracket_expansion(tv, &lyndon_expansion(tv, &u), &lyndon_expansion(tv, &v))
}

/// `[w_1, [w_2, [… , w_k]]]` expanded in the tensor algebra.
pub fn left_normed_expansion(tv: &TensorAlgebra, w: &[u8]) -> LinComb<Word> {
    let mut acc = LinComb::basis(vec![*w.last().unwrap()]);
    for &c in w[..w.len() - 1].iter().rev() {
        acc = bracket_expansion(tv, &LinComb::basis(vec![c]), &acc);
    }
    acc
}

impl LieBasis {
    /// Lyndon basis for even generators; falls back to [`LieBasis::spanning`]
    /// if any generator is odd.
    pub fn lyndon(gens: &GeneratorSet, max_len: usize) -> Self {
        if gens.iter().any(|g| g.odd) {
            return Self::spanning(gens, max_len);
        }
        let tv = TensorAlgebra::new(gens.clone());
        let mut words = lyndon_words(gens.len() as u8, max_len);
        words.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        let symbols = words
            .into_iter()
            .map(|w| LieSymbol {
                content: tv.degree(&w),
                odd: false,
                expansion: lyndon_expansion(&tv, &w),
                word: w,
            })
            .collect();
        Self::from_symbols(gens.clone(), max_len, symbols)
    }

    /// Greedy basis of left-normed brackets, content by content.
    pub fn spanning(gens: &GeneratorSet, max_len: usize) -> Self {
        let tv = TensorAlgebra::new(gens.clone());
        let mut symbols = Vec::new();
        for len in 1..=max_len as u32 {
            for d in crate::graded::degrees_of_total(gens.len(), len) {
                let slice = Slice::new(words_with_content(&d));
                let mut e = Echelon::new(slice.dim());
                for w in slice.keys() {
                    let x = left_normed_expansion(&tv, w);
                    if x.is_zero() {
                        continue;
                    }
                    if e.insert(slice.to_sparse(&x)) {
                        symbols.push(LieSymbol { word: w.clone(), content: d.clone(), odd: tv.word_is_odd(w), expansion: x });
                    }
                }
            }
        }
        Self::from_symbols(gens.clone(), max_len, symbols)
    }

    fn from_symbols(gens: GeneratorSet, max_len: usize, symbols: Vec<LieSymbol>) -> Self {
        assert!(symbols.len() <= SymId::MAX as usize, "too many Lie symbols");
        let mut solvers: HashMap<Degree, ContentSolver> = HashMap::new();
        for (i, s) in symbols.iter().enumerate() {
            let sol = solvers.entry(s.content.clone()).or_insert_with(|| {
                let slice = Slice::new(words_with_content(&s.content));
                let echelon = Echelon::with_tracking(slice.dim());
                ContentSolver { slice, echelon, ids: Vec::new() }
            });
            let v = sol.slice.to_sparse(&s.expansion);
            let grew = sol.echelon.insert(v);
            assert!(grew, "Lie basis expansions must be independent");
            sol.ids.push(i as SymId);
        }
        LieBasis { gens, max_len, symbols, solvers, cache: RwLock::new(HashMap::new()) }
    }

    pub fn gens(&self) -> &GeneratorSet {
        &self.gens
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn symbols(&self) -> &[LieSymbol] {
        &self.symbols
    }

    pub fn symbol(&self, id: SymId) -> &LieSymbol {
        &self.symbols[id as usize]
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Number of symbols of each length `1..=max_len`.
    pub fn counts_by_length(&self) -> Vec<usize> {
        let mut c = vec![0; self.max_len];
        for s in &self.symbols {
            c[s.len() - 1] += 1;
        }
        c
    }

    /// Symbol for a single generator.
    pub fn letter(&self, i: u8) -> SymId {
        self.symbols.iter().position(|s| s.word == [i]).unwrap() as SymId
    }

    /// Expresses a Lie element of `TV` in the basis.
    pub fn to_symbols(&self, v: &LinComb<Word>) -> Result<LinComb<SymId>, LieError> {
        let mut by_deg: BTreeMap<Degree, LinComb<Word>> = BTreeMap::new();
        for (w, c) in v.iter() {
            if w.len() > self.max_len {
                return Err(LieError::Overflow { needed: w.len(), max_length: self.max_len });
            }
            let d = crate::free_assoc::word_content(w, self.gens.len());
            by_deg.entry(d).or_insert_with(LinComb::zero).add_term(w.clone(), c);
        }
        let mut out = LinComb::zero();
        for (d, part) in by_deg {
            let sol = self.solvers.get(&d).ok_or(LieError::NotInSpan)?;
            let coords = sol.echelon.solve(&sol.slice.to_sparse(&part)).ok_or(LieError::NotInSpan)?;
            for (i, c) in coords {
                out.add_term(sol.ids[i], &c);
            }
        }
        Ok(out)
    }

    /// Lie bracket of two basis symbols, in the basis.
    pub fn bracket(&self, a: SymId, b: SymId) -> Result<LinComb<SymId>, LieError> {
        if let Some(v) = self.cache.read().unwrap().get(&(a, b)) {
            return Ok(v.clone());
        }
        let (sa, sb) = (self.symbol(a), self.symbol(b));
        let needed = sa.len() + sb.len();
        if needed > self.max_len {
            return Err(LieError::Overflow { needed, max_length: self.max_len });
        }
        let tv = TensorAlgebra::new(self.gens.clone());
        let v = self.to_symbols(&bracket_expansion(&tv, &sa.expansion, &sb.expansion))?;
        self.cache.write().unwrap().insert((a, b), v.clone());
        Ok(v)
    }
}

/// Lyndon basis up to `max_length`.
pub fn lyndon_basis(gens: &GeneratorSet, max_length: usize) -> LieBasis {
    LieBasis::lyndon(gens, max_length)
}

/// Necklace count of Lyndon words of length `n` over `q` letters.
pub fn witt_count(q: u64, n: u64) -> u64 {
    fn mobius(mut n: u64) -> i64 {
        let mut m = 1;
        let mut p = 2;
        while p * p <= n {
            if n.is_multiple_of(p) {
                n /= p;
                if n.is_multiple_of(p) {
                    return 0;
                }
                m = -m;
            }
            p += 1;
        }
        if n > 1 {
            m = -m;
        }
        m
    }
    let mut s: i64 = 0;
    for d in 1..=n {
        if n.is_multiple_of(d) {
            s += mobius(d) * (q as i64).pow((n / d) as u32);
        }
    }
    (s / n as i64) as u64
}

/// Dimensions of the free Lie superalgebra per content, obtained by
/// inverting the PBW identity `H_{S(L)} = H_{T}` of Hilbert series.
pub fn lie_dims_from_pbw(odd: &[bool], max_len: u32) -> BTreeMap<Degree, u64> {
    let n = odd.len();
    let window = degrees_up_to(n, max_len);
    let mut series: HashMap<Degree, i128> = HashMap::new();
    series.insert(vec![0; n], 1);
    let mut out = BTreeMap::new();
    let multinomial = |d: &Degree| -> i128 {
        let mut num: i128 = 1;
        let mut k: i128 = 0;
        for &x in d {
            for j in 1..=x as i128 {
                k += 1;
                num = num * k / j;
            }
        }
        num
    };
    for d in window.iter().skip(1) {
        let dim = multinomial(d) - series.get(d).copied().unwrap_or(0);
        assert!(dim >= 0);
        out.insert(d.clone(), dim as u64);
        if dim == 0 {
            continue;
        }
        let is_odd = d.iter().zip(odd).filter(|(_, &o)| o).map(|(x, _)| *x).sum::<i32>() % 2 == 1;
        // coefficients of (1 - u)^{-dim} or (1 + u)^{dim}
        let coef = |k: i128| -> i128 {
            let mut c: i128 = 1;
            for i in 0..k {
                c = if is_odd { c * (dim - i) / (i + 1) } else { c * (dim + i) / (i + 1) };
            }
            c
        };
        let mut next: HashMap<Degree, i128> = HashMap::new();
        for (base, v) in &series {
            let mut k = 0i128;
            loop {
                let shifted: Degree = base.iter().zip(d).map(|(b, x)| b + (k as i32) * x).collect();
                if shifted.iter().sum::<i32>() as u32 > max_len {
                    break;
                }
                let c = coef(k);
                if c == 0 && k > 0 {
                    break;
                }
                *next.entry(shifted).or_insert(0) += v * c;
                k += 1;
            }
        }
        series = next;
    }
    out
}

/// A monomial in Lie symbols: sorted `(symbol, exponent)` pairs with
/// nonzero exponents. Odd symbols have exponent 1.
pub type Monomial = Vec<(SymId, i32)>;

/// Elements of a free Poisson algebra.
pub type PoissonElement = LinComb<Monomial>;

/// The free Poisson (super)algebra `S(LV)`, optionally localized at
/// invertible generators and truncated at a Poisson weight.
#[derive(Clone, Debug)]
pub struct FreePoisson {
    lie: Arc<LieBasis>,
    invertible: Vec<bool>,
    truncation: Option<usize>,
}

impl FreePoisson {
    /// `truncation = Some(l)` realizes `P_{≤l} = Poiss/P_{>l}`.
    pub fn new(lie: Arc<LieBasis>, truncation: Option<usize>) -> Self {
        let invertible = lie.gens().iter().map(|g| g.invertible).collect();
        FreePoisson { lie, invertible, truncation }
    }

    /// Same symbols with every generator treated as non-invertible.
    pub fn polynomial(lie: Arc<LieBasis>, truncation: Option<usize>) -> Self {
        let invertible = vec![false; lie.gens().len()];
        FreePoisson { lie, invertible, truncation }
    }

    /// The same algebra with another truncation.
    pub fn with_truncation(&self, truncation: Option<usize>) -> Self {
        FreePoisson { truncation, ..self.clone() }
    }

    pub fn invertible(&self) -> &[bool] {
        &self.invertible
    }

    /// Free Poisson algebra on `gens` with a Lyndon basis long enough for
    /// every bracket that survives truncation at `l`.
    pub fn truncated(gens: &GeneratorSet, l: usize) -> Self {
        Self::new(Arc::new(LieBasis::lyndon(gens, l + 1)), Some(l))
    }

    pub fn lie(&self) -> &Arc<LieBasis> {
        &self.lie
    }

    pub fn truncation(&self) -> Option<usize> {
        self.truncation
    }

    pub fn gens(&self) -> &GeneratorSet {
        self.lie.gens()
    }

    pub fn is_laurent(&self) -> bool {
        self.invertible.iter().any(|&b| b)
    }

    pub fn symbol_monomial(&self, s: SymId) -> Monomial {
        vec![(s, 1)]
    }

    pub fn letter(&self, i: u8) -> Monomial {
        vec![(self.lie.letter(i), 1)]
    }

    /// `x_i^k` for a generator (negative `k` needs an invertible one).
    pub fn power(&self, i: u8, k: i32) -> Monomial {
        if k == 0 {
            return Vec::new();
        }
        vec![(self.lie.letter(i), k)]
    }

    pub fn weight(&self, m: &Monomial) -> usize {
        m.iter().map(|(s, e)| self.lie.symbol(*s).weight() * (*e).max(0) as usize).sum()
    }

    pub fn monomial_degree(&self, m: &Monomial) -> Degree {
        let mut d = vec![0; self.gens().len()];
        for (s, e) in m {
            for (x, c) in d.iter_mut().zip(&self.lie.symbol(*s).content) {
                *x += c * e;
            }
        }
        d
    }

    pub fn monomial_is_odd(&self, m: &Monomial) -> bool {
        m.iter().filter(|(s, _)| self.lie.symbol(*s).odd).count() % 2 == 1
    }

    fn survives(&self, w: usize) -> bool {
        self.truncation.is_none_or(|l| w <= l)
    }

    /// Product of monomials with its Koszul sign, or `None` if it vanishes.
    pub fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Option<(Scalar, Monomial)> {
        if !self.survives(self.weight(a) + self.weight(b)) {
            return None;
        }
        let mut out = Vec::with_capacity(a.len() + b.len());
        let mut swaps = 0usize;
        let odd_in_a_after = |i: usize| a[i..].iter().filter(|(s, _)| self.lie.symbol(*s).odd).count();
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                if self.lie.symbol(b[j].0).odd {
                    swaps += odd_in_a_after(i);
                }
                out.push(b[j]);
                j += 1;
            } else {
                let s = a[i].0;
                if self.lie.symbol(s).odd {
                    return None;
                }
                let e = a[i].1 + b[j].1;
                if e != 0 {
                    out.push((s, e));
                }
                i += 1;
                j += 1;
            }
        }
        let sign = if swaps % 2 == 1 { Scalar::from_int(-1) } else { Scalar::one() };
        Some((sign, out))
    }

    pub fn mul_elements(&self, x: &PoissonElement, y: &PoissonElement) -> PoissonElement {
        let mut out = LinComb::zero();
        for (a, ca) in x.iter() {
            for (b, cb) in y.iter() {
                if let Some((s, m)) = self.mul_monomials(a, b) {
                    out.add_term(m, &(&(ca * cb) * &s));
                }
            }
        }
        out
    }

    fn mul_mono_lin(&self, a: &Monomial, y: &PoissonElement) -> PoissonElement {
        self.mul_elements(&LinComb::basis(a.clone()), y)
    }

    fn mul_lin_mono(&self, x: &PoissonElement, b: &Monomial) -> PoissonElement {
        self.mul_elements(x, &LinComb::basis(b.clone()))
    }

    /// Poisson bracket of two monomials.
    pub fn try_bracket(&self, a: &Monomial, b: &Monomial) -> Result<PoissonElement, LieError> {
        if a.is_empty() || b.is_empty() || !self.survives(self.weight(a) + self.weight(b) + 1) {
            return Ok(LinComb::zero());
        }
        if a.len() > 1 {
            // {f a', b} = f {a', b} + (−1)^{|a'||b|} {f, b} a'
            let f = vec![a[0]];
            let rest = a[1..].to_vec();
            let mut out = self.mul_mono_lin(&f, &self.try_bracket(&rest, b)?);
            let s = koszul(self.monomial_is_odd(&rest), self.monomial_is_odd(b));
            out.add_scaled(&self.mul_lin_mono(&self.try_bracket(&f, b)?, &rest), &s);
            return Ok(out);
        }
        if b.len() > 1 {
            // {f, g b'} = {f, g} b' + (−1)^{|f||g|} g {f, b'}
            let g = vec![b[0]];
            let rest = b[1..].to_vec();
            let mut out = self.mul_lin_mono(&self.try_bracket(a, &g)?, &rest);
            let s = koszul(self.monomial_is_odd(a), self.monomial_is_odd(&g));
            out.add_scaled(&self.mul_mono_lin(&g, &self.try_bracket(a, &rest)?), &s);
            return Ok(out);
        }
        // {s^k, t^m} = k m s^{k−1} t^{m−1} {s, t}
        let ((s, k), (t, m)) = (a[0], b[0]);
        let lie = self.lie.bracket(s, t)?;
        let st: PoissonElement = lie.iter().map(|(u, c)| (vec![(*u, 1)], c.clone())).collect();
        let coeff = Scalar::from_int(k as i64 * m as i64);
        let lower_s = if k == 1 { Vec::new() } else { vec![(s, k - 1)] };
        let lower_t = if m == 1 { Vec::new() } else { vec![(t, m - 1)] };
        let mut out = self.mul_mono_lin(&lower_s, &self.mul_lin_mono(&st, &lower_t));
        out = out.scaled(&coeff);
        Ok(out)
    }

    pub fn bracket_elements(&self, x: &PoissonElement, y: &PoissonElement) -> Result<PoissonElement, LieError> {
        let mut out = LinComb::zero();
        for (a, ca) in x.iter() {
            for (b, cb) in y.iter() {
                out.add_scaled(&self.try_bracket(a, b)?, &(ca * cb));
            }
        }
        Ok(out)
    }

    /// Monomials of the given degree and Poisson weight exactly `w`.
    pub fn basis_of_weight(&self, d: &Degree, w: usize) -> Vec<Monomial> {
        let n = self.gens().len();
        // Symbols of length ≥ 2 and of non-invertible letters are chosen
        // freely; invertible letters absorb whatever content remains.
        let brackets: Vec<SymId> =
            (0..self.lie.len() as SymId).filter(|&s| self.lie.symbol(s).len() >= 2).collect();
        let mut out = Vec::new();
        let mut chosen: Vec<(SymId, i32)> = Vec::new();
        self.enumerate_brackets(&brackets, 0, w, &vec![0; n], &mut chosen, d, &mut out);
        out.sort();
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn enumerate_brackets(
        &self,
        brackets: &[SymId],
        from: usize,
        weight_left: usize,
        used: &Degree,
        chosen: &mut Vec<(SymId, i32)>,
        target: &Degree,
        out: &mut Vec<Monomial>,
    ) {
        if weight_left == 0 {
            if let Some(m) = self.complete_with_letters(chosen, used, target) {
                out.push(m);
            }
            return;
        }
        for idx in from..brackets.len() {
            let s = brackets[idx];
            let sym = self.lie.symbol(s);
            if sym.weight() > weight_left {
                continue;
            }
            let max_e = if sym.odd { 1 } else { weight_left / sym.weight() };
            for e in 1..=max_e {
                let mut u = used.clone();
                for (x, c) in u.iter_mut().zip(&sym.content) {
                    *x += c * e as i32;
                }
                // content on non-invertible letters can only grow
                if u.iter().zip(target).zip(&self.invertible).any(|((x, t), inv)| !inv && x > t) {
                    break;
                }
                chosen.push((s, e as i32));
                self.enumerate_brackets(brackets, idx + 1, weight_left - sym.weight() * e, &u, chosen, target, out);
                chosen.pop();
            }
        }
    }

    fn complete_with_letters(&self, chosen: &[(SymId, i32)], used: &Degree, target: &Degree) -> Option<Monomial> {
        let mut m: Monomial = chosen.to_vec();
        for (i, (t, u)) in target.iter().zip(used).enumerate() {
            let e = t - u;
            if e == 0 {
                continue;
            }
            let g = self.gens().get(i);
            if e < 0 && !g.invertible {
                return None;
            }
            if g.odd && e > 1 {
                return None;
            }
            m.push((self.lie.letter(i as u8), e));
        }
        m.sort();
        Some(m)
    }

    /// All monomials of a degree with Poisson weight at most the truncation.
    pub fn try_basis(&self, d: &Degree) -> Result<Vec<Monomial>, LieError> {
        let top = match self.truncation {
            Some(l) => l,
            None if self.is_laurent() => return Err(LieError::UnboundedSlice),
            None => (d.iter().sum::<i32>().max(1) - 1) as usize,
        };
        let mut out = Vec::new();
        for w in 0..=top {
            out.extend(self.basis_of_weight(d, w));
        }
        Ok(out)
    }
}

impl GradedAlgebra for FreePoisson {
    type Key = Monomial;

    fn alphabet_len(&self) -> usize {
        self.gens().len()
    }

    fn degree(&self, k: &Monomial) -> Degree {
        self.monomial_degree(k)
    }

    fn is_odd(&self, k: &Monomial) -> bool {
        self.monomial_is_odd(k)
    }

    fn basis(&self, d: &Degree) -> Vec<Monomial> {
        self.try_basis(d).unwrap_or_else(|e| panic!("{e}"))
    }

    fn mul(&self, a: &Monomial, b: &Monomial) -> LinComb<Monomial> {
        match self.mul_monomials(a, b) {
            Some((s, m)) => LinComb::term(m, s),
            None => LinComb::zero(),
        }
    }

    fn unit(&self) -> Monomial {
        Vec::new()
    }

    fn generators(&self) -> Vec<Monomial> {
        (0..self.lie.len() as SymId).map(|s| vec![(s, 1)]).collect()
    }

    fn is_commutative(&self) -> bool {
        true
    }

    fn bracket(&self, a: &Monomial, b: &Monomial) -> LinComb<Monomial> {
        self.try_bracket(a, b).unwrap_or_else(|e| panic!("{e}"))
    }
}

/// Splits an element by Poisson weight.
pub fn p_grading(p: &FreePoisson, x: &PoissonElement) -> BTreeMap<usize, PoissonElement> {
    let mut out: BTreeMap<usize, PoissonElement> = BTreeMap::new();
    for (m, c) in x.iter() {
        out.entry(p.weight(m)).or_insert_with(LinComb::zero).add_term(m.clone(), c);
    }
    out
}

/// The Poisson filtration up to `F_n` on degrees of total weight at most
/// `max_weight` (polynomial generators only).
pub fn poisson_filtration(gens: &GeneratorSet, n: usize, max_weight: u32) -> FiltrationTable<Monomial> {
    let lie = Arc::new(LieBasis::lyndon(gens, max_weight.max(1) as usize));
    let p = FreePoisson::new(lie, None);
    let window = degrees_up_to(gens.len(), max_weight);
    let levels = bracket_filtration(&p, n, &window);
    FiltrationTable { window, levels }
}

/// `P_{≤l}` on the given generators.
pub fn truncate_npl(gens: &GeneratorSet, l: usize) -> FreePoisson {
    FreePoisson::truncated(gens, l)
}

/// Degrees `d + e` for a generator slot, used by Laurent windows.
pub fn shift(d: &Degree, i: usize, by: i32) -> Degree {
    let mut e = vec![0; d.len()];
    e[i] = by;
    deg_add(d, &e)
}

/// Content left after removing a symbol's content.
pub fn remove_content(d: &Degree, sym: &LieSymbol, times: i32) -> Degree {
    let c: Degree = sym.content.iter().map(|x| x * times).collect();
    deg_sub(d, &c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free_assoc::Generator;
    use crate::graded::degrees_of_total;

    fn p2(l: usize) -> FreePoisson {
        FreePoisson::truncated(&GeneratorSet::standard(2), l)
    }

    #[test]
    fn lyndon_counts() {
        let b = lyndon_basis(&GeneratorSet::standard(2), 4);
        assert_eq!(b.counts_by_length(), vec![2, 1, 2, 3]);
        let b1 = lyndon_basis(&GeneratorSet::standard(1), 4);
        assert_eq!(b1.counts_by_length(), vec![1, 0, 0, 0]);
        for q in 1..=3u64 {
            let b = lyndon_basis(&GeneratorSet::standard(q as usize), 6);
            let counts = b.counts_by_length();
            for n in 1..=6u64 {
                assert_eq!(counts[n as usize - 1] as u64, witt_count(q, n));
                let s: u64 = (1..=n).filter(|d| n % d == 0).map(|d| d * counts[d as usize - 1] as u64).sum();
                assert_eq!(s, q.pow(n as u32));
            }
        }
    }

    #[test]
    fn length_two_expansion() {
        let b = lyndon_basis(&GeneratorSet::standard(2), 2);
        let s = &b.symbols()[2];
        assert_eq!(s.word, vec![0, 1]);
        let expect = LinComb::basis(vec![0, 1]).minus(&LinComb::basis(vec![1, 0]));
        assert_eq!(s.expansion, expect);
    }

    #[test]
    fn spanning_basis_matches_lyndon_counts() {
        let g = GeneratorSet::standard(2);
        let a = LieBasis::lyndon(&g, 6);
        let b = LieBasis::spanning(&g, 6);
        assert_eq!(a.counts_by_length(), b.counts_by_length());
    }

    #[test]
    fn super_dims_match_pbw_oracle() {
        let g = GeneratorSet::new(vec![Generator::even("x"), Generator::odd("dx")]).unwrap();
        let b = LieBasis::spanning(&g, 5);
        let oracle = lie_dims_from_pbw(&[false, true], 5);
        for (d, &dim) in &oracle {
            let got = b.symbols().iter().filter(|s| &s.content == d).count() as u64;
            assert_eq!(got, dim, "content {d:?}");
        }
        // [dx, dx] = 2 dx dx is a nonzero even bracket
        assert_eq!(oracle[&vec![0, 2]], 1);
        assert_eq!(oracle[&vec![2, 0]], 0);
    }

    #[test]
    fn bracket_examples() {
        let p = p2(3);
        let (x, y) = (p.letter(0), p.letter(1));
        let xy = p.try_bracket(&x, &y).unwrap();
        assert_eq!(xy, LinComb::basis(vec![(2, 1)]));
        let g3 = GeneratorSet::standard(3);
        let p3 = FreePoisson::truncated(&g3, 2);
        let (x, y, z) = (p3.letter(0), p3.letter(1), p3.letter(2));
        let yz = p3.mul(&y, &z);
        let lhs = p3.bracket_elements(&LinComb::basis(x.clone()), &yz).unwrap();
        let rhs = p3
            .mul_elements(&p3.bracket_elements(&LinComb::basis(x.clone()), &LinComb::basis(y.clone())).unwrap(), &LinComb::basis(z.clone()))
            .plus(&p3.mul_elements(&LinComb::basis(y.clone()), &p3.bracket_elements(&LinComb::basis(x.clone()), &LinComb::basis(z.clone())).unwrap()));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_laws_exhaustive() {
        let p = FreePoisson::new(Arc::new(LieBasis::lyndon(&GeneratorSet::standard(2), 6)), None);
        let mut monos = Vec::new();
        for t in 1..=2u32 {
            for d in degrees_of_total(2, t) {
                monos.extend(p.basis(&d));
            }
        }
        for a in &monos {
            for b in &monos {
                let ab = p.try_bracket(a, b).unwrap();
                let ba = p.try_bracket(b, a).unwrap();
                assert!(ab.plus(&ba).is_zero());
                for c in &monos {
                    let f = |u: &Monomial, v: &Monomial, w: &Monomial| {
                        let inner = p.try_bracket(v, w).unwrap();
                        p.bracket_elements(&LinComb::basis(u.clone()), &inner).unwrap()
                    };
                    let jac = f(a, b, c).plus(&f(b, c, a)).plus(&f(c, a, b));
                    assert!(jac.is_zero(), "{a:?} {b:?} {c:?}");
                }
            }
        }
    }

    #[test]
    fn weights_are_additive() {
        let p = FreePoisson::new(Arc::new(LieBasis::lyndon(&GeneratorSet::standard(2), 5)), None);
        let mut monos = Vec::new();
        for t in 1..=3u32 {
            for d in degrees_of_total(2, t) {
                monos.extend(p.basis(&d));
            }
        }
        for a in &monos {
            for b in &monos {
                if p.degree(a).iter().sum::<i32>() + p.degree(b).iter().sum::<i32>() > 5 {
                    continue;
                }
                for (m, _) in p.try_bracket(a, b).unwrap().iter() {
                    assert_eq!(p.weight(m), p.weight(a) + p.weight(b) + 1);
                }
                for (m, _) in p.mul(a, b).iter() {
                    assert_eq!(p.weight(m), p.weight(a) + p.weight(b));
                }
            }
        }
    }

    #[test]
    fn grading_examples() {
        let p = FreePoisson::new(Arc::new(LieBasis::lyndon(&GeneratorSet::standard(2), 3)), None);
        let (x, y) = (p.letter(0), p.letter(1));
        assert_eq!(p.weight(&p.mul_monomials(&x, &y).unwrap().1), 0);
        let xy = p.try_bracket(&x, &y).unwrap();
        let xyx = p.mul_elements(&xy, &LinComb::basis(x.clone()));
        assert_eq!(p_grading(&p, &xyx).keys().copied().collect::<Vec<_>>(), vec![1]);
        let xxy = p.bracket_elements(&LinComb::basis(x), &xy).unwrap();
        assert_eq!(p_grading(&p, &xxy).keys().copied().collect::<Vec<_>>(), vec![2]);
    }

    #[test]
    fn laurent_consistency() {
        let g = GeneratorSet::laurent(2);
        let p = FreePoisson::truncated(&g, 2);
        let x = p.letter(0);
        let xinv = p.power(0, -1);
        let one = p.mul_elements(&LinComb::basis(x.clone()), &LinComb::basis(xinv.clone()));
        assert_eq!(one, LinComb::basis(Vec::new()));
        for d in [vec![1, 1], vec![-1, 2], vec![0, 0]] {
            for q in p.basis(&d) {
                assert!(p.bracket_elements(&one, &LinComb::basis(q.clone())).unwrap().is_zero());
                // {x^{-1}, q} = -x^{-2} {x, q}
                let lhs = p.try_bracket(&xinv, &q).unwrap();
                let xq = p.try_bracket(&x, &q).unwrap();
                let rhs = p.mul_elements(&LinComb::basis(p.power(0, -2)), &xq).scaled(&Scalar::from_int(-1));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn filtration_equals_grading() {
        let g = GeneratorSet::standard(2);
        let t = poisson_filtration(&g, 3, 5);
        let p = FreePoisson::new(Arc::new(LieBasis::lyndon(&g, 5)), None);
        for d in &t.window {
            for l in 0..=3 {
                let expect: usize = (l..6).map(|w| p.basis_of_weight(d, w).len()).sum();
                assert_eq!(t.dim(l, d), expect, "degree {d:?} level {l}");
            }
        }
    }

    #[test]
    fn truncated_slice_dims() {
        let p = p2(1);
        let dim: usize = degrees_of_total(2, 2).iter().map(|d| p.basis(d).len()).sum();
        assert_eq!(dim, 4);
        let p0 = p2(0);
        assert_eq!(p0.basis(&vec![2, 1]).len(), 1);
    }
}
