//! Multigraded algebras with finite slices, and span computations in them.
//!
//! A [`Degree`] counts letters of an alphabet (negative entries for inverted
//! letters). Every algebra here has a finite basis in each degree, and all
//! products and brackets are additive in degree, so filtrations and ideals
//! can be computed one degree at a time.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Debug;
use std::hash::Hash;

use crate::exact_linalg::{Echelon, Scalar, SparseVec};
use crate::par;

/// Content vector: one slot per alphabet letter.
pub type Degree = Vec<i32>;

pub fn deg_add(a: &[i32], b: &[i32]) -> Degree {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn deg_sub(a: &[i32], b: &[i32]) -> Degree {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn deg_total(a: &[i32]) -> i32 {
    a.iter().sum()
}

/// All nonnegative degrees with `len` slots and total at most `max`, ordered
/// by total and then lexicographically.
pub fn degrees_up_to(len: usize, max: u32) -> Vec<Degree> {
    let mut out = Vec::new();
    for t in 0..=max {
        compositions(len, t, &mut Vec::new(), &mut out);
    }
    out
}

/// All nonnegative degrees with `len` slots and total exactly `t`.
pub fn degrees_of_total(len: usize, t: u32) -> Vec<Degree> {
    let mut out = Vec::new();
    compositions(len, t, &mut Vec::new(), &mut out);
    out
}

fn compositions(len: usize, t: u32, prefix: &mut Vec<i32>, out: &mut Vec<Degree>) {
    if prefix.len() + 1 == len {
        prefix.push(t as i32);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    if len == 0 {
        if t == 0 {
            out.push(Vec::new());
        }
        return;
    }
    for k in (0..=t).rev() {
        prefix.push(k as i32);
        compositions(len, t - k, prefix, out);
        prefix.pop();
    }
}

/// A finite linear combination of basis keys.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinComb<K: Ord>(BTreeMap<K, Scalar>);

impl<K: Ord + Clone> LinComb<K> {
    pub fn zero() -> Self {
        LinComb(BTreeMap::new())
    }

    pub fn term(k: K, c: Scalar) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(k, c);
        }
        LinComb(m)
    }

    pub fn basis(k: K) -> Self {
        Self::term(k, Scalar::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Scalar)> {
        self.0.iter()
    }

    pub fn coeff(&self, k: &K) -> Scalar {
        self.0.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, k: K, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.0.get_mut(&k) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.0.remove(&k);
                }
            }
            None => {
                self.0.insert(k, c.clone());
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &LinComb<K>, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.0 {
            self.add_term(k.clone(), &(v * c));
        }
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LinComb(self.0.iter().map(|(k, v)| (k.clone(), v * c)).collect())
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::one());
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::from_int(-1));
        out
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.0.keys()
    }

    pub fn into_iter_terms(self) -> impl Iterator<Item = (K, Scalar)> {
        self.0.into_iter()
    }

    /// Keeps the terms whose key satisfies `f`.
    pub fn filtered(&self, f: impl Fn(&K) -> bool) -> Self {
        LinComb(self.0.iter().filter(|(k, _)| f(k)).map(|(k, v)| (k.clone(), v.clone())).collect())
    }

    /// Linear extension of a map on keys.
    pub fn map_linear<L: Ord + Clone>(&self, f: impl Fn(&K) -> LinComb<L>) -> LinComb<L> {
        let mut out = LinComb::zero();
        for (k, c) in &self.0 {
            out.add_scaled(&f(k), c);
        }
        out
    }
}

impl<K: Ord + Clone> FromIterator<(K, Scalar)> for LinComb<K> {
    fn from_iter<I: IntoIterator<Item = (K, Scalar)>>(it: I) -> Self {
        let mut out = LinComb::zero();
        for (k, c) in it {
            out.add_term(k, &c);
        }
        out
    }
}

impl<K: Ord + Debug> Debug for LinComb<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.0.iter().map(|(k, v)| format!("{v}*{k:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Ordered basis of one degree, with reverse lookup.
#[derive(Clone, Debug)]
pub struct Slice<K> {
    keys: Vec<K>,
    index: HashMap<K, usize>,
}

impl<K: Ord + Clone + Hash + Eq> Slice<K> {
    pub fn new(keys: Vec<K>) -> Self {
        let index = keys.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
        Slice { keys, index }
    }

    pub fn dim(&self) -> usize {
        self.keys.len()
    }

    pub fn keys(&self) -> &[K] {
        &self.keys
    }

    pub fn key(&self, i: usize) -> &K {
        &self.keys[i]
    }

    pub fn position(&self, k: &K) -> Option<usize> {
        self.index.get(k).copied()
    }

    /// Panics if a term lies outside the slice.
    pub fn to_sparse(&self, v: &LinComb<K>) -> SparseVec
    where
        K: Debug,
    {
        let mut out: SparseVec = v
            .iter()
            .map(|(k, c)| {
                let i = self.position(k).unwrap_or_else(|| panic!("term {k:?} outside slice"));
                (i, c.clone())
            })
            .collect();
        out.sort_by_key(|e| e.0);
        out
    }

    pub fn to_lincomb(&self, v: &[(usize, Scalar)]) -> LinComb<K> {
        v.iter().map(|(i, c)| (self.keys[*i].clone(), c.clone())).collect()
    }
}

/// A multigraded (super)algebra with finite-dimensional slices.
pub trait GradedAlgebra: Sync + Send {
    type Key: Ord + Clone + Hash + Eq + Debug + Send + Sync;

    /// Number of slots in a [`Degree`].
    fn alphabet_len(&self) -> usize;

    fn degree(&self, k: &Self::Key) -> Degree;

    /// Parity for Koszul signs.
    fn is_odd(&self, k: &Self::Key) -> bool;

    /// Ordered basis of a degree.
    fn basis(&self, d: &Degree) -> Vec<Self::Key>;

    fn mul(&self, a: &Self::Key, b: &Self::Key) -> LinComb<Self::Key>;

    fn unit(&self) -> Self::Key;

    /// Homogeneous elements generating the algebra (products of them span).
    fn generators(&self) -> Vec<Self::Key>;

    /// Whether `mul` is graded-commutative (ideals then need one-sided
    /// closure only).
    fn is_commutative(&self) -> bool {
        false
    }

    /// The bracket used by filtrations: the graded commutator unless the
    /// algebra carries another one.
    fn bracket(&self, a: &Self::Key, b: &Self::Key) -> LinComb<Self::Key> {
        graded_commutator(self, a, b)
    }
}

pub fn koszul(odd_a: bool, odd_b: bool) -> Scalar {
    if odd_a && odd_b {
        Scalar::from_int(-1)
    } else {
        Scalar::one()
    }
}

/// `ab − (−1)^{|a||b|} ba`.
pub fn graded_commutator<A: GradedAlgebra + ?Sized>(alg: &A, a: &A::Key, b: &A::Key) -> LinComb<A::Key> {
    let mut out = alg.mul(a, b);
    let s = -koszul(alg.is_odd(a), alg.is_odd(b));
    out.add_scaled(&alg.mul(b, a), &s);
    out
}

pub fn mul_lin<A: GradedAlgebra + ?Sized>(alg: &A, x: &LinComb<A::Key>, y: &LinComb<A::Key>) -> LinComb<A::Key> {
    let mut out = LinComb::zero();
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            out.add_scaled(&alg.mul(a, b), &(ca * cb));
        }
    }
    out
}

pub fn bracket_lin<A: GradedAlgebra + ?Sized>(alg: &A, x: &LinComb<A::Key>, y: &LinComb<A::Key>) -> LinComb<A::Key> {
    let mut out = LinComb::zero();
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            out.add_scaled(&alg.bracket(a, b), &(ca * cb));
        }
    }
    out
}

/// Per-degree subspaces of an algebra over a finite window of degrees.
#[derive(Clone, Debug)]
pub struct GradedSubspace<K> {
    pub slices: BTreeMap<Degree, (Slice<K>, Echelon)>,
}

impl<K: Ord + Clone + Hash + Eq + Debug> GradedSubspace<K> {
    pub fn dim(&self, d: &Degree) -> usize {
        self.slices.get(d).map_or(0, |(_, e)| e.rank())
    }

    pub fn ambient_dim(&self, d: &Degree) -> usize {
        self.slices.get(d).map_or(0, |(s, _)| s.dim())
    }

    pub fn degrees(&self) -> impl Iterator<Item = &Degree> {
        self.slices.keys()
    }

    pub fn contains(&self, d: &Degree, v: &LinComb<K>) -> bool {
        if v.is_zero() {
            return true;
        }
        let (s, e) = &self.slices[d];
        e.contains(&s.to_sparse(v))
    }

    /// Spanning vectors of the subspace in one degree.
    pub fn vectors(&self, d: &Degree) -> Vec<LinComb<K>> {
        match self.slices.get(d) {
            Some((s, e)) => e.rows().iter().map(|r| s.to_lincomb(r)).collect(),
            None => Vec::new(),
        }
    }

    /// Whether `self ⊆ other` in every degree of `self`.
    pub fn is_within(&self, other: &GradedSubspace<K>) -> bool {
        self.slices.iter().all(|(d, (_, e))| {
            let (_, oe) = &other.slices[d];
            e.rows().iter().all(|r| oe.contains(r))
        })
    }

    pub fn same_as(&self, other: &GradedSubspace<K>) -> bool {
        self.is_within(other) && other.is_within(self)
    }
}

/// Splits of `d` into `d1 + d2` with both parts in `window`.
pub fn splits(window: &[Degree], d: &Degree) -> Vec<(Degree, Degree)> {
    let set: std::collections::HashSet<&Degree> = window.iter().collect();
    window
        .iter()
        .filter_map(|d1| {
            let d2 = deg_sub(d, d1);
            set.contains(&d2).then(|| (d1.clone(), d2))
        })
        .collect()
}

/// The whole algebra over a window, or a zero subspace.
pub fn full_subspace<A: GradedAlgebra>(alg: &A, window: &[Degree], full: bool) -> GradedSubspace<A::Key> {
    let slices = par::map(window, |d| {
        let s = Slice::new(alg.basis(d));
        let mut e = Echelon::new(s.dim());
        if full {
            for i in 0..s.dim() {
                e.insert(vec![(i, Scalar::one())]);
            }
        }
        (d.clone(), (s, e))
    });
    GradedSubspace { slices: slices.into_iter().collect() }
}

/// Closes per-degree seed vectors to the two-sided ideal they generate
/// inside the window. `window` must be sorted so that degrees of generators
/// are added only to already processed degrees (e.g. by total degree).
pub fn ideal_closure<A: GradedAlgebra>(
    alg: &A,
    window: &[Degree],
    mut seeds: BTreeMap<Degree, Vec<LinComb<A::Key>>>,
) -> GradedSubspace<A::Key> {
    let gens: Vec<(A::Key, Degree)> = alg.generators().into_iter().map(|g| {
        let d = alg.degree(&g);
        (g, d)
    }).collect();
    let mut done: BTreeMap<Degree, (Slice<A::Key>, Echelon)> = BTreeMap::new();
    let in_window: std::collections::HashSet<&Degree> = window.iter().collect();
    // Group by total degree so that each group only depends on earlier ones.
    let mut groups: BTreeMap<i64, Vec<Degree>> = BTreeMap::new();
    for d in window {
        groups.entry(d.iter().map(|&x| x as i64).sum()).or_default().push(d.clone());
    }
    for (_, group) in groups {
        let built = par::map(&group, |d| {
            let s = Slice::new(alg.basis(d));
            let mut e = Echelon::new(s.dim());
            for v in seeds.get(d).map(Vec::as_slice).unwrap_or(&[]) {
                e.insert(s.to_sparse(v));
            }
            for (g, gd) in &gens {
                let lower = deg_sub(d, gd);
                if !in_window.contains(&lower) {
                    continue;
                }
                let Some((ls, le)) = done.get(&lower) else { continue };
                let gl = LinComb::basis(g.clone());
                for r in le.rows() {
                    let v = ls.to_lincomb(r);
                    e.insert(s.to_sparse(&mul_lin(alg, &gl, &v)));
                    if !alg.is_commutative() {
                        e.insert(s.to_sparse(&mul_lin(alg, &v, &gl)));
                    }
                }
            }
            (d.clone(), (s, e))
        });
        for (d, v) in built {
            seeds.remove(&d);
            done.insert(d, v);
        }
    }
    GradedSubspace { slices: done }
}

/// The recursion `F_0 = A`, `F_{k+1} = Σ_{p=1}^{k} F_p F_{k+1−p} + Σ_{p=0}^{k} ⟨[F_p, F_{k−p}]⟩`
/// with the algebra's own bracket, computed up to `F_n`.
///
/// `window` must contain the zero degree, be closed under splitting into
/// in-window parts, and be ordered by total degree.
pub fn bracket_filtration<A: GradedAlgebra>(alg: &A, n: usize, window: &[Degree]) -> Vec<GradedSubspace<A::Key>> {
    let mut levels = vec![full_subspace(alg, window, true)];
    for k in 0..n {
        let seeds_list = par::map(window, |d| {
            let mut seeds: Vec<LinComb<A::Key>> = Vec::new();
            for (d1, d2) in splits(window, d) {
                for p in 1..=k {
                    let q = k + 1 - p;
                    for x in levels[p].vectors(&d1) {
                        for y in levels[q].vectors(&d2) {
                            seeds.push(mul_lin(alg, &x, &y));
                        }
                    }
                }
                for p in 0..=k {
                    let q = k - p;
                    // [F_p, F_q] and [F_q, F_p] span the same space.
                    if q < p {
                        continue;
                    }
                    for x in levels[p].vectors(&d1) {
                        for y in levels[q].vectors(&d2) {
                            seeds.push(bracket_lin(alg, &x, &y));
                        }
                    }
                }
            }
            (d.clone(), seeds)
        });
        let seeds: BTreeMap<Degree, Vec<LinComb<A::Key>>> = seeds_list.into_iter().collect();
        levels.push(ideal_closure(alg, window, seeds));
    }
    levels
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_enumeration() {
        assert_eq!(degrees_up_to(2, 1), vec![vec![0, 0], vec![1, 0], vec![0, 1]]);
        assert_eq!(degrees_of_total(3, 2).len(), 6);
        assert_eq!(degrees_up_to(1, 3).len(), 4);
    }

    #[test]
    fn lincomb_cancellation() {
        let mut a = LinComb::basis("x");
        a.add_term("x", &Scalar::from_int(-1));
        assert!(a.is_zero());
    }
}
