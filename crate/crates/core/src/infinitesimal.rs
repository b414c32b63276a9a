//! Adic towers of Kähler complexes, Čech–Alexander levels of the affine
//! space and the coinvariant count behind them.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exact_linalg::{
    kernel_basis, rank_of_vectors, Echelon, Cochains, ComplexError, ComplexSlice, ProStatus, Scalar, SparseMatrix, SparseVec,
    Tower,
};
use crate::free_assoc::GeneratorSet;
use crate::graded::{degrees_of_total, Degree, LinComb, Slice};
use crate::lie_poisson::SymId;
use crate::nc_forms::{quotient_complex, quotient_map, QuotientSpace};
use crate::poisson_dr::{CommForm, CommForms, FormMono};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InfError {
    /// Several generators that are not all monomials.
    NotMonomial,
    /// A polynomial ideal over more than one variable.
    Multivariate,
    EmptyPolynomial,
    Complex(ComplexError),
}

impl fmt::Display for InfError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InfError::NotMonomial => write!(f, "only monomial ideals or a single polynomial are supported"),
            InfError::Multivariate => write!(f, "polynomial ideals need exactly one variable"),
            InfError::EmptyPolynomial => write!(f, "the polynomial has no terms"),
            InfError::Complex(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for InfError {}

impl From<ComplexError> for InfError {
    fn from(e: ComplexError) -> Self {
        InfError::Complex(e)
    }
}

/// The ideal `I` of an adic tower.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AdicIdeal {
    /// Exponent vectors of monomial generators (empty list: `I = 0`).
    Monomials(Vec<Vec<u32>>),
    /// Integer coefficients `c₀ + c₁x + …` of one univariate polynomial.
    Polynomial(Vec<i64>),
}

fn exponents(forms: &CommForms, m: &crate::lie_poisson::Monomial) -> Degree {
    forms.poisson().monomial_degree(m)
}

fn letter_index(forms: &CommForms) -> HashMap<SymId, usize> {
    let lie = forms.poisson().lie();
    (0..forms.poisson().gens().len()).map(|i| (lie.letter(i as u8), i)).collect()
}

/// `Ω(S/Iⁿ)` for a monomial ideal, in content `c`, form degrees `0..=max_form`.
fn monomial_level(
    forms: &CommForms,
    ideal: &[Vec<u32>],
    n: usize,
    c: &Degree,
    max_form: usize,
) -> Vec<QuotientSpace<FormMono>> {
    let inv = forms.poisson().invertible().to_vec();
    // generators of Iⁿ
    let mut power: Vec<Vec<u32>> = vec![vec![0; c.len()]];
    for _ in 0..n {
        let mut next = Vec::new();
        for a in &power {
            for g in ideal {
                next.push(a.iter().zip(g).map(|(x, y)| x + y).collect::<Vec<u32>>());
            }
        }
        next.sort();
        next.dedup();
        power = next;
    }
    let divides = |g: &[u32], e: &Degree| g.iter().zip(e).zip(&inv).all(|((gi, ei), &i)| i || *ei >= *gi as i32);
    let lie = forms.poisson().lie();
    let gen_mono = |g: &[u32]| -> crate::lie_poisson::Monomial {
        g.iter().enumerate().filter(|(_, e)| **e > 0).map(|(i, e)| (lie.letter(i as u8), *e as i32)).collect()
    };
    (0..=max_form)
        .map(|r| {
            let slice = forms.slice(c, r, 0..=0);
            let mut rel: Vec<CommForm> = Vec::new();
            for k in slice.keys() {
                let e = exponents(forms, &k.0);
                if power.iter().any(|g| divides(g, &e)) {
                    rel.push(LinComb::basis(k.clone()));
                }
            }
            if r >= 1 {
                for g in &power {
                    let gm = gen_mono(g);
                    let dg = forms.d(&(gm, Vec::new()));
                    let gd: Degree = g.iter().map(|&x| x as i32).collect();
                    let lower: Degree = c.iter().zip(&gd).map(|(x, y)| x - y).collect();
                    if lower.iter().zip(&inv).any(|(x, &i)| !i && *x < 0) {
                        continue;
                    }
                    for w in forms.basis(&lower, r - 1, 0) {
                        rel.push(dg.map_linear(|k| forms.mul(k, &w)));
                    }
                }
            }
            QuotientSpace::spanned(slice, rel)
        })
        .collect()
}

/// Tower `Ω(S/I) ← Ω(S/I²) ← …` in content `c` for a monomial ideal, levels
/// `n = 1..=levels`, form degrees `0..=max_form` (the top one is an edge).
pub fn monomial_adic_tower(
    gens: &GeneratorSet,
    ideal: &[Vec<u32>],
    levels: usize,
    c: &Degree,
    max_form: usize,
) -> Result<Tower<ComplexSlice>, InfError> {
    let forms = CommForms::commutative(gens);
    let lv: Vec<_> = (1..=levels).map(|n| monomial_level(&forms, ideal, n, c, max_form)).collect();
    let complexes = lv.iter().map(|l| quotient_complex(0, l, |k| forms.d(k))).collect::<Result<Vec<_>, _>>()?;
    let transitions = lv
        .windows(2)
        .map(|w| {
            w[1].iter()
                .zip(&w[0])
                .enumerate()
                .map(|(r, (hi, lo))| (r as i32, quotient_map(hi, lo, |k| LinComb::basis(k.clone()))))
                .collect()
        })
        .collect();
    Ok(Tower::new(complexes, transitions)?)
}

type Poly = Vec<Scalar>;

fn poly_trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[Scalar], b: &[Scalar]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Scalar::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    poly_trim(out)
}

/// `p mod g`, with `g` of positive degree.
fn poly_rem(p: &[Scalar], g: &[Scalar]) -> Poly {
    let mut r = p.to_vec();
    let lead = g.last().unwrap().recip();
    while r.len() >= g.len() {
        let c = &r[r.len() - 1] * &lead;
        let shift = r.len() - g.len();
        for (i, x) in g.iter().enumerate() {
            r[shift + i] = &r[shift + i] - &(&c * x);
        }
        r.pop();
        r = poly_trim(r);
    }
    r
}

fn poly_vec(p: &[Scalar]) -> SparseVec {
    p.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect()
}

/// `k[x]/(g) → Ω¹ = k[x]dx/(g, g')dx` for `g = fⁿ`.
fn polynomial_level(f: &[Scalar], n: usize) -> (usize, QuotientSpace<usize>) {
    let mut g = vec![Scalar::one()];
    for _ in 0..n {
        g = poly_mul(&g, f);
    }
    let deg = g.len() - 1;
    let dg: Poly = poly_trim((1..g.len()).map(|i| &g[i] * &Scalar::from_int(i as i64)).collect());
    let rel = (0..deg).map(|i| {
        let mut xi = vec![Scalar::zero(); i + 1];
        xi[i] = Scalar::one();
        let v = poly_rem(&poly_mul(&xi, &dg), &g);
        LinComb::from_iter(v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()))
    });
    (deg, QuotientSpace::spanned(Slice::new((0..deg).collect()), rel))
}

/// Tower of `k[x]/(fⁿ) → Ω¹(k[x]/(fⁿ))` for `n = 1..=levels` (ungraded).
pub fn polynomial_adic_tower(f: &[i64], levels: usize) -> Result<Tower<ComplexSlice>, InfError> {
    let f: Poly = poly_trim(f.iter().map(|&c| Scalar::from_int(c)).collect());
    if f.is_empty() {
        return Err(InfError::EmptyPolynomial);
    }
    if f.len() == 1 {
        // a unit: every level is zero
        let z = ComplexSlice::new(0, vec![0, 0], vec![SparseMatrix::zeros(0, 0)])?;
        let t = (1..levels).map(|_| vec![(0, SparseMatrix::zeros(0, 0)), (1, SparseMatrix::zeros(0, 0))]).collect();
        return Ok(Tower::new(vec![z; levels], t)?);
    }
    let lv: Vec<_> = (1..=levels).map(|n| polynomial_level(&f, n)).collect();
    let mut complexes = Vec::new();
    for (deg, q1) in &lv {
        let cols = (0..*deg)
            .map(|j| {
                let dv: LinComb<usize> = if j == 0 {
                    LinComb::zero()
                } else {
                    LinComb::term(j - 1, Scalar::from_int(j as i64))
                };
                q1.coords(&dv)
            })
            .collect();
        complexes.push(ComplexSlice::new(0, vec![*deg, q1.dim()], vec![SparseMatrix::from_columns(q1.dim(), cols)])?);
    }
    let mut transitions = Vec::new();
    for w in lv.windows(2) {
        let ((_, lo1), (hi_deg, hi1)) = (&w[0], &w[1]);
        let g_lo = {
            let mut g = vec![Scalar::one()];
            for _ in 0..transitions.len() + 1 {
                g = poly_mul(&g, &f);
            }
            g
        };
        let t0 = (0..*hi_deg)
            .map(|j| {
                let mut xj = vec![Scalar::zero(); j + 1];
                xj[j] = Scalar::one();
                poly_vec(&poly_rem(&xj, &g_lo))
            })
            .collect();
        let lo_deg = g_lo.len() - 1;
        let t1 = quotient_map(hi1, lo1, |&j| {
            let mut xj = vec![Scalar::zero(); j + 1];
            xj[j] = Scalar::one();
            LinComb::from_iter(poly_rem(&xj, &g_lo).into_iter().enumerate().filter(|(_, c)| !c.is_zero()))
        });
        transitions.push(vec![(0, SparseMatrix::from_columns(lo_deg, t0)), (1, t1)]);
    }
    Ok(Tower::new(complexes, transitions)?)
}

/// `deg f − deg gcd(f, f′)`, the number of distinct roots over `k̄`.
pub fn squarefree_degree(f: &[i64]) -> usize {
    let f: Poly = poly_trim(f.iter().map(|&c| Scalar::from_int(c)).collect());
    if f.len() <= 1 {
        return 0;
    }
    let df: Poly = poly_trim((1..f.len()).map(|i| &f[i] * &Scalar::from_int(i as i64)).collect());
    let (mut a, mut b) = (f.clone(), df);
    while !b.is_empty() {
        let r = poly_rem(&a, &b);
        a = b;
        b = r;
    }
    (f.len() - 1) - (a.len() - 1)
}

/// Dispatches on the kind of ideal. `c` and `max_form` only matter for
/// monomial ideals.
pub fn adic_de_rham_tower(
    gens: &GeneratorSet,
    ideal: &AdicIdeal,
    levels: usize,
    c: &Degree,
    max_form: usize,
) -> Result<Tower<ComplexSlice>, InfError> {
    match ideal {
        AdicIdeal::Monomials(g) => monomial_adic_tower(gens, g, levels, c, max_form),
        AdicIdeal::Polynomial(f) => {
            if gens.len() != 1 {
                return Err(InfError::Multivariate);
            }
            polynomial_adic_tower(f, levels)
        }
    }
}

/// Image ranks from the top level summed over several towers, with the
/// rule of [`crate::exact_linalg::tower_pro_status`].
pub fn summed_pro_status<C: Cochains>(towers: &[Tower<C>], n: i32, window: usize) -> ProStatus {
    let Some(first) = towers.first() else { return ProStatus::ProZero };
    let window = window.max(2);
    let top = first.len() - 1;
    let images: Vec<usize> =
        (top + 1 - window..top).map(|k| towers.iter().map(|t| t.image_rank(top, k, n)).sum()).collect();
    if images.iter().all(|&r| r == 0) {
        ProStatus::ProZero
    } else if images.iter().all(|&r| r == images[0]) {
        ProStatus::StableDim(images[0])
    } else {
        ProStatus::Undecided
    }
}

/// Which cosimplicial object the Čech–Alexander levels carry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SheafKind {
    O,
    Omega(usize),
}

impl SheafKind {
    fn form_degree(self) -> usize {
        match self {
            SheafKind::O => 0,
            SheafKind::Omega(p) => p,
        }
    }
}

/// `S^{⊗m+1}` in the coordinates `u_{0,a}`, `t_{j,a} = u_{j,a} − u_{0,a}`.
struct CechSpace {
    m: usize,
    u: usize,
    forms: CommForms,
    index: HashMap<SymId, usize>,
}

impl CechSpace {
    fn new(m: usize, u: usize) -> Self {
        let forms = CommForms::commutative(&GeneratorSet::standard((m + 1) * u));
        let index = letter_index(&forms);
        CechSpace { m, u, forms, index }
    }

    fn t_degree(&self, k: &FormMono) -> usize {
        k.0.iter().filter(|(s, _)| self.index[s] >= self.u).map(|(_, e)| *e as usize).sum()
    }

    /// Forms of total degree `total`, form degree `p`, `t`-degree at most `n`.
    fn slice(&self, total: u32, p: usize, n: usize) -> Slice<FormMono> {
        let mut keys = Vec::new();
        for c in degrees_of_total((self.m + 1) * self.u, total) {
            keys.extend(self.forms.basis(&c, p, 0).into_iter().filter(|k| self.t_degree(k) <= n));
        }
        keys.sort();
        Slice::new(keys)
    }

    fn var(&self, j: usize, a: usize) -> FormMono {
        (vec![(self.forms.poisson().lie().letter((j * self.u + a) as u8), 1)], Vec::new())
    }

    fn dvar(&self, j: usize, a: usize) -> FormMono {
        (Vec::new(), vec![self.forms.poisson().lie().letter((j * self.u + a) as u8)])
    }
}

/// Pullback along the ring map induced by `π: [m] → [m']` (`u_j ↦ u_{π j}`),
/// truncated at `t`-degree `n`.
fn pullback(src: &CechSpace, tgt: &CechSpace, pi: &[usize], k: &FormMono, n: usize) -> CommForm {
    let image = |j: usize, a: usize, dif: bool| -> CommForm {
        let key = |jj: usize| if dif { tgt.dvar(jj, a) } else { tgt.var(jj, a) };
        // u_0 ↦ u_0 + t_{π0};  t_j ↦ t_{πj} − t_{π0}
        let mut out = LinComb::zero();
        if j == 0 {
            out.add_term(key(0), &Scalar::one());
            if pi[0] != 0 {
                out.add_term(key(pi[0]), &Scalar::one());
            }
        } else {
            if pi[j] != 0 {
                out.add_term(key(pi[j]), &Scalar::one());
            }
            if pi[0] != 0 {
                out.add_term(key(pi[0]), &Scalar::from_int(-1));
            }
        }
        out
    };
    let mul = |x: &CommForm, y: &CommForm| -> CommForm {
        let mut out = LinComb::zero();
        for (a, ca) in x.iter() {
            for (b, cb) in y.iter() {
                out.add_scaled(&tgt.forms.mul(a, b), &(ca * cb));
            }
        }
        out.filtered(|k| tgt.t_degree(k) <= n)
    };
    let mut acc: CommForm = LinComb::basis((Vec::new(), Vec::new()));
    for &(s, e) in &k.0 {
        let v = src.index[&s];
        let img = image(v / src.u, v % src.u, false);
        for _ in 0..e {
            acc = mul(&acc, &img);
        }
    }
    for &s in &k.1 {
        let v = src.index[&s];
        acc = mul(&acc, &image(v / src.u, v % src.u, true));
    }
    acc
}

fn coface(m: usize, i: usize) -> Vec<usize> {
    (0..=m).map(|j| if j < i { j } else { j + 1 }).collect()
}

fn codegeneracy(m: usize, i: usize) -> Vec<usize> {
    (0..=m).map(|j| if j <= i { j } else { j - 1 }).collect()
}

fn map_matrix(src: &CechSpace, tgt: &CechSpace, pi: &[usize], from: &Slice<FormMono>, to: &Slice<FormMono>, n: usize) -> SparseMatrix {
    let cols = from.keys().iter().map(|k| to.to_sparse(&pullback(src, tgt, pi, k, n))).collect();
    SparseMatrix::from_columns(to.dim(), cols)
}

/// Normalized cochains `N^m = ⋂ ker σʲ` as kernel bases; coordinates of a
/// kernel vector are its entries at the free columns.
struct Normalized {
    basis: Vec<SparseVec>,
    free: Vec<usize>,
}

impl Normalized {
    fn coords(&self, v: &[(usize, Scalar)]) -> SparseVec {
        v.iter().filter_map(|(i, c)| self.free.binary_search(i).ok().map(|k| (k, c.clone()))).collect()
    }
}

fn normalized(spaces: &[CechSpace], slices: &[Slice<FormMono>], m: usize, n: usize, normalize: bool) -> Normalized {
    let dim = slices[m].dim();
    if m == 0 || !normalize {
        return Normalized { basis: (0..dim).map(|i| vec![(i, Scalar::one())]).collect(), free: (0..dim).collect() };
    }
    let mut rows: Vec<SparseVec> = Vec::new();
    for i in 0..m {
        let s = map_matrix(&spaces[m], &spaces[m - 1], &codegeneracy(m, i), &slices[m], &slices[m - 1], n);
        rows.extend(s.row_vectors());
    }
    let stacked = SparseMatrix::from_columns(dim, rows).transpose();
    let free = Echelon::from_vectors(dim, stacked.row_vectors()).complement();
    Normalized { basis: kernel_basis(&stacked), free }
}

/// Čech–Alexander complexes of `𝔸^u` for `I = 0`: for each adic level
/// `n = 0..=n_max`, the normalized complex `N⁰ → … → N^{m_max}` in total
/// degree `total`, with the projections between levels. `H^{m_max}` is a
/// truncation edge.
pub fn cech_alexander_levels(
    u: usize,
    kind: SheafKind,
    m_max: usize,
    n_max: usize,
    total: u32,
) -> Result<Tower<ComplexSlice>, InfError> {
    cech_alexander(u, kind, m_max, n_max, total, true)
}

fn cech_alexander(
    u: usize,
    kind: SheafKind,
    m_max: usize,
    n_max: usize,
    total: u32,
    normalize: bool,
) -> Result<Tower<ComplexSlice>, InfError> {
    let p = kind.form_degree();
    let spaces: Vec<CechSpace> = (0..=m_max + 1).map(|m| CechSpace::new(m, u)).collect();
    let mut levels = Vec::new();
    let mut data = Vec::new();
    for n in 0..=n_max {
        let slices: Vec<_> = (0..=m_max).map(|m| spaces[m].slice(total, p, n)).collect();
        let norms: Vec<_> = (0..=m_max).map(|m| normalized(&spaces, &slices, m, n, normalize)).collect();
        let mut diffs = Vec::new();
        for m in 0..m_max {
            let mut cols = Vec::new();
            for v in &norms[m].basis {
                let x = slices[m].to_lincomb(v);
                let mut img = LinComb::zero();
                for i in 0..=m + 1 {
                    let s = if i % 2 == 1 { Scalar::from_int(-1) } else { Scalar::one() };
                    let pi = coface(m, i);
                    for (k, c) in x.iter() {
                        img.add_scaled(&pullback(&spaces[m], &spaces[m + 1], &pi, k, n), &(c * &s));
                    }
                }
                cols.push(norms[m + 1].coords(&slices[m + 1].to_sparse(&img)));
            }
            diffs.push(SparseMatrix::from_columns(norms[m + 1].basis.len(), cols));
        }
        levels.push(ComplexSlice::new(0, norms.iter().map(|x| x.basis.len()).collect(), diffs)?);
        data.push((slices, norms));
    }
    let mut transitions = Vec::new();
    for n in 0..n_max {
        let (lo_s, lo_n) = &data[n];
        let (hi_s, hi_n) = &data[n + 1];
        let mut maps = Vec::new();
        for m in 0..=m_max {
            let cols = hi_n[m]
                .basis
                .iter()
                .map(|v| {
                    let x = hi_s[m].to_lincomb(v).filtered(|k| spaces[m].t_degree(k) <= n);
                    lo_n[m].coords(&lo_s[m].to_sparse(&x))
                })
                .collect();
            maps.push((m as i32, SparseMatrix::from_columns(lo_n[m].basis.len(), cols)));
        }
        transitions.push(maps);
    }
    Ok(Tower::new(levels, transitions)?)
}

/// `Σ_{α,β}`-coinvariant dimension of `T^γU ⊗ T^γV` under the signed action
/// against `dim Sᵅ(U⊗V) ⊗ Λᵝ(U⊗V)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CoinvariantDims {
    pub lhs: u64,
    pub rhs: u64,
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    if n == 0 {
        return vec![(Vec::new(), false)];
    }
    let mut out = Vec::new();
    for (p, odd) in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            // inserting the largest element at `pos` adds len − pos inversions
            out.push((q, odd ^ ((p.len() - pos) % 2 == 1)));
        }
    }
    out
}

pub fn coinvariant_dims(u: usize, v: usize, alpha: usize, beta: usize) -> CoinvariantDims {
    let nn = (u * v) as u64;
    let lhs = binom(nn + alpha as u64 - 1, alpha as u64) * binom(nn, beta as u64);
    let lhs = if alpha == 0 { binom(nn, beta as u64) } else { lhs };
    let gamma = alpha + beta;
    // basis: pairs of index words, encoded as one base-(u·v) word of pairs
    let size = (u * v).pow(gamma as u32);
    let decode = |mut x: usize| -> Vec<(usize, usize)> {
        let mut w = Vec::with_capacity(gamma);
        for _ in 0..gamma {
            let p = x % (u * v);
            w.push((p / v, p % v));
            x /= u * v;
        }
        w
    };
    let encode = |w: &[(usize, usize)]| -> usize { w.iter().rev().fold(0, |acc, &(a, b)| acc * u * v + a * v + b) };
    let group: Vec<(Vec<usize>, Scalar)> = {
        let mut g = Vec::new();
        for (s, _) in permutations(alpha) {
            for (t, todd) in permutations(beta) {
                let mut perm: Vec<usize> = s.clone();
                perm.extend(t.iter().map(|x| x + alpha));
                g.push((perm, if todd { Scalar::from_int(-1) } else { Scalar::one() }));
            }
        }
        g
    };
    // coinvariants = quotient by span{g·x − x}; its dimension is
    // size − rank of that span
    let mut rel: Vec<SparseVec> = Vec::new();
    for x in 0..size {
        let w = decode(x);
        for (perm, sign) in &group {
            let moved: Vec<(usize, usize)> = perm.iter().map(|&i| w[i]).collect();
            let y = encode(&moved);
            let mut v: SparseVec = Vec::new();
            if y == x {
                let c = sign - &Scalar::one();
                if !c.is_zero() {
                    v.push((x, c));
                }
            } else {
                v.push((y, sign.clone()));
                v.push((x, Scalar::from_int(-1)));
                v.sort_by_key(|e| e.0);
            }
            if !v.is_empty() {
                rel.push(v);
            }
        }
    }
    let rhs = (size - rank_of_vectors(&rel, size)) as u64;
    CoinvariantDims { lhs, rhs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::tower_pro_status;

    #[test]
    fn fat_point() {
        let g = GeneratorSet::standard(1);
        let mut towers = Vec::new();
        for w in 0..=6 {
            let t = monomial_adic_tower(&g, &[vec![1]], 5, &vec![w], 2).unwrap();
            for lv in t.levels() {
                let h = lv.cohomology_dims();
                assert_eq!(h[..2], [usize::from(w == 0), 0], "{w}");
            }
            towers.push(t);
        }
        assert_eq!(summed_pro_status(&towers, 0, 3), ProStatus::StableDim(1));
        assert_eq!(summed_pro_status(&towers, 1, 3), ProStatus::ProZero);
    }

    #[test]
    fn zero_ideal_is_constant() {
        let g = GeneratorSet::standard(2);
        let t = monomial_adic_tower(&g, &[], 3, &vec![1, 1], 3).unwrap();
        let dr = CommForms::commutative(&g).de_rham(&vec![1, 1], 0, 3).unwrap();
        for lv in t.levels() {
            assert_eq!(*lv, dr);
        }
    }

    #[test]
    fn two_points() {
        let t = polynomial_adic_tower(&[0, -1, 1], 4).unwrap();
        for lv in t.levels() {
            assert_eq!(lv.cohomology_dims(), vec![2, 0]);
        }
        assert_eq!(tower_pro_status(&t, 0, 3).unwrap(), ProStatus::StableDim(2));
        let fat = polynomial_adic_tower(&[0, 1], 4).unwrap();
        assert_eq!(fat.cohomology_dims(0), vec![1; 4]);
    }

    #[test]
    fn squarefree_degrees() {
        assert_eq!(squarefree_degree(&[0, -1, 1]), 2);
        assert_eq!(squarefree_degree(&[0, 0, 1]), 1);
        assert_eq!(squarefree_degree(&[1, 2, 1]), 1);
        assert_eq!(squarefree_degree(&[-1, 0, 0, 1]), 3);
        assert_eq!(squarefree_degree(&[5]), 0);
        // x²(x − 1)³ has the fat tower of two points
        let f = [0, 0, -1, 3, -3, 1];
        let t = polynomial_adic_tower(&f, 3).unwrap();
        assert_eq!(tower_pro_status(&t, 0, 3).unwrap(), ProStatus::StableDim(squarefree_degree(&f)));
    }

    #[test]
    fn rejects_multivariate_polynomial() {
        let e = adic_de_rham_tower(&GeneratorSet::standard(2), &AdicIdeal::Polynomial(vec![0, 1]), 2, &vec![0, 0], 1);
        assert_eq!(e.unwrap_err(), InfError::Multivariate);
    }

    #[test]
    fn cosimplicial_identities() {
        let sp: Vec<CechSpace> = (0..=3).map(|m| CechSpace::new(m, 1)).collect();
        let n = 2;
        for m in 0..=1 {
            let s0 = sp[m].slice(2, 1, n);
            let s2 = sp[m + 2].slice(2, 1, n);
            // δʲδⁱ = δⁱδʲ⁻¹ for i < j
            for j in 0..=m + 2 {
                for i in 0..j {
                    for k in s0.keys() {
                        let a = pullback(&sp[m], &sp[m + 1], &coface(m, i), k, n)
                            .map_linear(|x| pullback(&sp[m + 1], &sp[m + 2], &coface(m + 1, j), x, n));
                        let b = pullback(&sp[m], &sp[m + 1], &coface(m, j - 1), k, n)
                            .map_linear(|x| pullback(&sp[m + 1], &sp[m + 2], &coface(m + 1, i), x, n));
                        assert_eq!(a, b);
                        let _ = &s2;
                    }
                }
            }
            // σʲδʲ = id
            for j in 0..=m {
                for k in s0.keys() {
                    let a = pullback(&sp[m], &sp[m + 1], &coface(m, j), k, n)
                        .map_linear(|x| pullback(&sp[m + 1], &sp[m], &codegeneracy(m + 1, j), x, n));
                    assert_eq!(a, LinComb::basis(k.clone()));
                }
            }
        }
    }

    #[test]
    fn cech_alexander_line() {
        for total in 0..=3 {
            let t = cech_alexander_levels(1, SheafKind::O, 2, 3, total).unwrap();
            for lv in &t.levels()[1..] {
                let h = lv.cohomology_dims();
                assert_eq!(h[..2], [usize::from(total == 0), 0], "{total}");
            }
            // level 0 only sees the constant cosimplicial object
            assert_eq!(t.levels()[0].cohomology_dims()[0], 1);
            let z = cech_alexander_levels(1, SheafKind::O, 0, 4, total).unwrap();
            let s = CommForms::commutative(&GeneratorSet::standard(1)).basis(&vec![total as i32], 0, 0).len();
            assert_eq!(z.levels().last().unwrap().dims(), &[s]);
        }
    }

    #[test]
    fn normalization_keeps_cohomology() {
        for (kind, total) in [(SheafKind::O, 0), (SheafKind::O, 2), (SheafKind::Omega(1), 2)] {
            let a = cech_alexander(1, kind, 3, 2, total, true).unwrap();
            let b = cech_alexander(1, kind, 3, 2, total, false).unwrap();
            for (x, y) in a.levels().iter().zip(b.levels()) {
                assert_eq!(x.cohomology_dims()[..3], y.cohomology_dims()[..3]);
            }
        }
    }

    #[test]
    fn omega_one_trends_to_zero() {
        for total in 1..=3 {
            let t = cech_alexander_levels(1, SheafKind::Omega(1), 2, 3, total).unwrap();
            assert_eq!(tower_pro_status(&t, 0, 3).unwrap(), ProStatus::ProZero, "{total}");
            assert_eq!(tower_pro_status(&t, 1, 3).unwrap(), ProStatus::ProZero, "{total}");
        }
    }

    #[test]
    fn coinvariants() {
        assert_eq!(coinvariant_dims(1, 1, 1, 1), CoinvariantDims { lhs: 1, rhs: 1 });
        assert_eq!(coinvariant_dims(1, 1, 0, 2), CoinvariantDims { lhs: 0, rhs: 0 });
        assert_eq!(coinvariant_dims(1, 1, 0, 0), CoinvariantDims { lhs: 1, rhs: 1 });
        for u in 1..=2 {
            for v in 1..=2 {
                for a in 0..=4 {
                    for b in 0..=4 - a {
                        let d = coinvariant_dims(u, v, a, b);
                        assert_eq!(d.lhs, d.rhs, "{u} {v} {a} {b}");
                    }
                }
            }
        }
    }
}
