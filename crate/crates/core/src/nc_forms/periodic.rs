//! The X-complex and the `CC^per` tower.
//!
//! Level `n` is `Ω⁰ ⊕ … ⊕ Ω^{n−1} ⊕ Ωⁿ_♮` with `Ωⁿ_♮ = Ωⁿ/bΩ^{n+1}`, split
//! into even and odd form degrees, with differential `b + B`. Level 1 is the
//! X-complex `R ⇄ Ω¹_♮`.

use crate::exact_linalg::{ComplexError, PeriodicComplex, SparseMatrix, SparseVec, Tower};
use crate::graded::{Degree, GradedAlgebra, LinComb};

use super::literal::{FormKey, NcForms};
use super::quotient::{quotient_map, QuotientSpace};

struct Level<K> {
    blocks: Vec<QuotientSpace<K>>,
}

impl<K: Ord + Clone + std::hash::Hash + Eq + std::fmt::Debug> Level<K> {
    fn parity_blocks(&self, odd: bool) -> impl Iterator<Item = usize> + '_ {
        (0..self.blocks.len()).filter(move |k| (k % 2 == 1) == odd)
    }

    fn offsets(&self, odd: bool) -> (Vec<usize>, usize) {
        let mut off = vec![0; self.blocks.len()];
        let mut total = 0;
        for k in self.parity_blocks(odd) {
            off[k] = total;
            total += self.blocks[k].dim();
        }
        (off, total)
    }
}

fn level<A: GradedAlgebra>(forms: &NcForms<A>, c: &Degree, n: usize) -> Level<FormKey<A::Key>> {
    let mut blocks: Vec<_> = (0..n).map(|k| QuotientSpace::full(forms.slice(c, k))).collect();
    let top = forms.forms(c, n + 1).into_iter().map(|w| forms.b(&w));
    blocks.push(QuotientSpace::spanned(forms.slice(c, n), top));
    Level { blocks }
}

fn differential<A: GradedAlgebra>(forms: &NcForms<A>, lv: &Level<FormKey<A::Key>>, from_odd: bool) -> SparseMatrix {
    let (src_off, _) = lv.offsets(from_odd);
    let (dst_off, dst_dim) = lv.offsets(!from_odd);
    let mut cols: Vec<SparseVec> = Vec::new();
    for k in lv.parity_blocks(from_odd) {
        let _ = src_off[k];
        for w in lv.blocks[k].representatives() {
            let mut col: SparseVec = Vec::new();
            if k >= 1 {
                let v = lv.blocks[k - 1].coords(&forms.b(w));
                col.extend(v.into_iter().map(|(i, x)| (i + dst_off[k - 1], x)));
            }
            if k + 1 < lv.blocks.len() {
                let v = lv.blocks[k + 1].coords(&forms.connes_b(w));
                col.extend(v.into_iter().map(|(i, x)| (i + dst_off[k + 1], x)));
            }
            col.sort_by_key(|e| e.0);
            cols.push(col);
        }
    }
    SparseMatrix::from_columns(dst_dim, cols)
}

fn periodic<A: GradedAlgebra>(forms: &NcForms<A>, lv: &Level<FormKey<A::Key>>) -> Result<PeriodicComplex, ComplexError> {
    let (_, even) = lv.offsets(false);
    let (_, odd) = lv.offsets(true);
    PeriodicComplex::new(even, odd, differential(forms, lv, false), differential(forms, lv, true))
}

/// Level `n ≥ 1` of `CC^per` in content `c`.
pub fn cc_per_level<A: GradedAlgebra>(forms: &NcForms<A>, c: &Degree, n: usize) -> Result<PeriodicComplex, ComplexError> {
    assert!(n >= 1);
    periodic(forms, &level(forms, c, n))
}

/// The X-complex `R ⇄ Ω¹R_♮` in content `c`.
pub fn x_complex<A: GradedAlgebra>(forms: &NcForms<A>, c: &Degree) -> Result<PeriodicComplex, ComplexError> {
    cc_per_level(forms, c, 1)
}

/// Levels `1..=levels` of `CC^per` in content `c` with the projections
/// between them.
pub fn cc_per_tower<A: GradedAlgebra>(
    forms: &NcForms<A>,
    c: &Degree,
    levels: usize,
) -> Result<Tower<PeriodicComplex>, ComplexError> {
    let lvls: Vec<_> = (1..=levels).map(|n| level(forms, c, n)).collect();
    let complexes = lvls.iter().map(|l| periodic(forms, l)).collect::<Result<Vec<_>, _>>()?;
    let mut transitions = Vec::new();
    for w in lvls.windows(2) {
        let (lo, hi) = (&w[0], &w[1]);
        let mut maps = Vec::new();
        for odd in [false, true] {
            let (hi_off, _) = hi.offsets(odd);
            let (lo_off, lo_dim) = lo.offsets(odd);
            let mut cols: Vec<SparseVec> = Vec::new();
            for k in hi.parity_blocks(odd) {
                let _ = hi_off[k];
                if k < lo.blocks.len() {
                    let m = quotient_map(&hi.blocks[k], &lo.blocks[k], |x| LinComb::basis(x.clone()));
                    for col in m.columns() {
                        cols.push(col.iter().map(|(i, x)| (i + lo_off[k], x.clone())).collect());
                    }
                } else {
                    cols.extend(std::iter::repeat_n(Vec::new(), hi.blocks[k].dim()));
                }
            }
            maps.push((i32::from(odd), SparseMatrix::from_columns(lo_dim, cols)));
        }
        transitions.push(maps);
    }
    Tower::new(complexes, transitions)
}
