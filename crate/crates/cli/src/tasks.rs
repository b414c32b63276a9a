use std::fmt;
use std::sync::Arc;

use ncgeom::exact_linalg::{tower_pro_status, ComplexSlice, ProStatus, Tower};
use ncgeom::free_assoc::{commutator_filtration, TensorAlgebra};
use ncgeom::graded::Degree;
use ncgeom::infinitesimal::{
    cech_alexander_levels, coinvariant_dims, monomial_adic_tower, polynomial_adic_tower, squarefree_degree,
    summed_pro_status, AdicIdeal, SheafKind,
};
use ncgeom::lie_poisson::{poisson_filtration, FreePoisson, LieBasis};
use ncgeom::nc_forms::{karoubi_limit_ranks, NcForms, StarForms, Support};
use ncgeom::pbw_star::SymmetrizationMap;
use ncgeom::poisson_dr::{n_complex, poisson_forms, y_complex_tower, CommForms};

use crate::config::{Job, JobConfig, Task, FORMAT_VERSION};
use crate::report::{Cell, Report, Table, ValidityWindow, Verdict};

/// A computation that could not be carried out inside the window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaskError(pub String);

impl fmt::Display for TaskError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for TaskError {}

fn err<E: fmt::Display>(what: &str) -> impl Fn(E) -> TaskError + '_ {
    move |e| TaskError(format!("{what}: {e}"))
}

struct Out {
    tables: Vec<Table>,
    verdicts: Vec<Verdict>,
    notes: Vec<String>,
}

impl Out {
    fn new() -> Self {
        Out { tables: Vec::new(), verdicts: Vec::new(), notes: Vec::new() }
    }
}

pub fn run(job: &Job, cfg: &JobConfig) -> Result<Report, TaskError> {
    let out = match job.task {
        Task::PbwCheck => pbw(job),
        Task::Filtration => filtration(job),
        Task::Derham => derham(job),
        Task::Karoubi => karoubi(job),
        Task::NcAcyclic => nc_acyclic(job),
        Task::HodgeNc => hodge(job, false),
        Task::HodgeNp => hodge(job, true),
        Task::Hcper => hcper(job),
        Task::InfCohomology => inf_cohomology(job),
        Task::Lemma78 => lemma78(job),
        Task::NComplex => n_cx(job),
    }?;
    let contents = if job.task == Task::Lemma78 { 0 } else { job.contents().len() };
    Ok(Report {
        format_version: FORMAT_VERSION,
        task: job.task.name().to_string(),
        config: job.echo(cfg),
        window: ValidityWindow { contents, notes: out.notes },
        tables: out.tables,
        verdicts: out.verdicts,
        timing_ms: None,
    })
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `H^n_dR` of `k[x_i, y_j^{±1}]` in content `c`: `Λⁿ` of the units in
/// content zero, nothing elsewhere.
fn expected_dr(job: &Job, c: &[i32], n: usize) -> usize {
    if c.iter().all(|&x| x == 0) {
        binom(job.invertible_count(), n)
    } else {
        0
    }
}

fn compare(got: &[usize], want: &[usize]) -> Option<String> {
    (got != want).then(|| format!("got {got:?}, expected {want:?}"))
}

fn slots(n: usize) -> Vec<i32> {
    (0..n as i32).collect()
}

fn columns(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

fn cells(v: &[usize]) -> Vec<Cell> {
    v.iter().map(|&x| Cell::Num(x)).collect()
}

fn status_text(s: ProStatus) -> String {
    match s {
        ProStatus::StableDim(d) => format!("stable_dim({d})"),
        ProStatus::ProZero => "pro_zero".to_string(),
        ProStatus::Undecided => "undecided".to_string(),
    }
}

fn want_status(d: usize) -> ProStatus {
    if d == 0 {
        ProStatus::ProZero
    } else {
        ProStatus::StableDim(d)
    }
}

fn pbw(job: &Job) -> Result<Out, TaskError> {
    let contents = job.contents();
    let max_len = contents.iter().map(|c| c.iter().sum::<i32>()).max().unwrap_or(1).max(1) as usize;
    let e = SymmetrizationMap::new(&job.gens, max_len);
    let slices = ncgeom::par::map(&contents, |d| e.check_slice(d));
    let mut out = Out::new();
    let mut t = Table::new("symmetrization", ["poisson_dim", "tensor_dim", "rank"].map(String::from));
    let mut v = Verdict::new("e: Poiss V -> TV is bijective in each content", Vec::new());
    for s in &slices {
        t.push(s.degree.clone(), job.weight_of(&s.degree), cells(&[s.poisson_dim, s.tensor_dim, s.rank]));
        v.check(&s.degree, (!s.invertible()).then(|| format!("rank {} of {}x{}", s.rank, s.tensor_dim, s.poisson_dim)));
    }
    out.tables.push(t);
    out.verdicts.push(v);
    Ok(out)
}

fn filtration(job: &Job) -> Result<Out, TaskError> {
    let contents = job.contents();
    let top = contents.iter().map(|c| c.iter().sum::<i32>()).max().unwrap_or(0).max(1) as u32;
    let l = job.l;
    let pf = poisson_filtration(&job.gens, l, top);
    let tf = commutator_filtration(&job.gens, l, top);
    let p = FreePoisson::new(Arc::new(LieBasis::lyndon(&job.gens, top as usize)), None);
    let mut out = Out::new();
    let mut cols = columns("F", l + 1);
    cols.extend(columns("P", top as usize));
    cols.extend(columns("grTV", l));
    let mut t = Table::new("filtrations", cols);
    let mut va = Verdict::new("F_m(Poiss V) = sum_{w>=m} P_w as spans", (0..=l as i32).collect());
    let mut vb = Verdict::new("dim F_m/F_{m+1}(TV) = dim P_m", slots(l));
    for c in &contents {
        let pw: Vec<usize> = (0..top as usize).map(|w| p.basis_of_weight(c, w).len()).collect();
        let fd: Vec<usize> = (0..=l).map(|m| pf.dim(m, c)).collect();
        let gr: Vec<usize> = (0..l).map(|m| tf.graded_dim(m, c)).collect();
        let mut row = cells(&fd);
        row.extend(cells(&pw));
        row.extend(cells(&gr));
        t.push(c.clone(), job.weight_of(c), row);
        let mut bad = Vec::new();
        for (m, &got) in fd.iter().enumerate() {
            let want: usize = pw.iter().skip(m).sum();
            if got != want {
                bad.push(format!("dim F_{m} = {got}, expected {want}"));
            }
            if pf.levels[m].vectors(c).iter().any(|x| x.iter().any(|(k, _)| p.weight(k) < m)) {
                bad.push(format!("F_{m} leaves weights >= {m}"));
            }
        }
        va.check(c, (!bad.is_empty()).then(|| bad.join("; ")));
        let want: Vec<usize> = pw.iter().copied().chain(std::iter::repeat(0)).take(l).collect();
        vb.check(c, compare(&gr, &want));
    }
    out.tables.push(t);
    out.verdicts.push(va);
    out.verdicts.push(vb);
    Ok(out)
}

fn derham(job: &Job) -> Result<Out, TaskError> {
    let nv = job.rank();
    let contents = job.contents();
    let forms = CommForms::commutative(&job.gens);
    let comm = ncgeom::par::map(&contents, |c| forms.de_rham(c, 0, nv + 1).map(|x| x.cohomology_dims()));
    let mut out = Out::new();
    let mut t = Table::new("de_rham", columns("H", nv + 1));
    let mut v = Verdict::new("H^n(Omega_comm) = Lambda^n(units) in content 0, zero elsewhere", slots(nv + 1));
    for (c, h) in contents.iter().zip(comm) {
        let h = h.map_err(err("de Rham complex"))?;
        let want: Vec<usize> = (0..=nv).map(|n| expected_dr(job, c, n)).collect();
        t.push(c.clone(), job.weight_of(c), cells(&h[..=nv]));
        v.check(c, compare(&h[..=nv], &want));
    }
    out.tables.push(t);
    out.verdicts.push(v);
    if job.l >= 1 {
        let star = StarForms::new(&job.gens, job.l).map_err(err("star model"))?;
        let top = star.top_form();
        let nc = ncgeom::par::map(&contents, |c| star.de_rham(c, top + 1).map(|x| x.cohomology_dims()));
        let mut t = Table::new("nc_de_rham", columns("H", top + 1));
        let mut v = Verdict::new("H^n(Omega_{NC_l} R) = H^n_dR per content", slots(top + 1));
        for (c, h) in contents.iter().zip(nc) {
            let h = h.map_err(err("NC forms"))?;
            let want: Vec<usize> = (0..=top).map(|n| expected_dr(job, c, n)).collect();
            t.push(c.clone(), job.weight_of(c), cells(&h[..=top]));
            v.check(c, compare(&h[..=top], &want));
        }
        out.tables.push(t);
        out.verdicts.push(v);
        out.notes.push(format!("star model with l = {}; forms vanish above degree {top}", job.l));
    }
    Ok(out)
}

fn karoubi(job: &Job) -> Result<Out, TaskError> {
    let contents = job.contents();
    let alg = || FreePoisson::truncated(&job.gens, 0);
    let (small, large) = if job.gens.any_invertible() {
        (NcForms::new(alg(), Support::Spread(job.spread)), NcForms::new(alg(), Support::Spread(job.spread + 2)))
    } else {
        (NcForms::new(alg(), Support::Positive), NcForms::new(alg(), Support::Positive))
    };
    let mf = job.max_form;
    let mut out = Out::new();
    let mut t = Table::new("omega_mod_commutators", columns("H", mf));
    let mut v = Verdict::new("H^n(Omega A/[Omega A, Omega A]) = sum_{2m<=n} H^{n-2m}_dR", slots(mf));
    for c in &contents {
        let r = karoubi_limit_ranks(&small, &large, c, mf).map_err(err("Karoubi complex"))?;
        let want: Vec<usize> = (0..mf).map(|n| (0..=n / 2).map(|m| expected_dr(job, c, n - 2 * m)).sum()).collect();
        t.push(c.clone(), job.weight_of(c), cells(&r[..mf]));
        v.check(c, compare(&r[..mf], &want));
    }
    out.tables.push(t);
    out.verdicts.push(v);
    out.notes.push(format!("form degree {mf} is a truncation edge"));
    if job.gens.any_invertible() {
        out.notes.push(format!(
            "Laurent forms read as the image of spread {} in spread {}",
            job.spread,
            job.spread + 2
        ));
    }
    Ok(out)
}

fn nc_acyclic(job: &Job) -> Result<Out, TaskError> {
    let contents = job.contents();
    let forms = NcForms::new(TensorAlgebra::new(job.gens.clone()), Support::Positive);
    let mf = job.max_form;
    let hs = ncgeom::par::map(&contents, |c| forms.de_rham(c, mf).map(|x| x.cohomology_dims()));
    let mut out = Out::new();
    let mut t = Table::new("omega_tv", columns("H", mf));
    let mut v = Verdict::new("H^n(Omega TV) = k at n = 0 only", slots(mf));
    for (c, h) in contents.iter().zip(hs) {
        let h = h.map_err(err("NC forms"))?;
        let zero = c.iter().all(|&x| x == 0);
        let want: Vec<usize> = (0..mf).map(|n| usize::from(zero && n == 0)).collect();
        t.push(c.clone(), job.weight_of(c), cells(&h[..mf]));
        v.check(c, compare(&h[..mf], &want));
    }
    out.tables.push(t);
    out.verdicts.push(v);
    out.notes.push(format!("form degree {mf} is a truncation edge"));
    Ok(out)
}

fn hodge(job: &Job, poisson: bool) -> Result<Out, TaskError> {
    let contents = job.contents();
    let star = StarForms::new(&job.gens, job.l).map_err(err("star model"))?;
    let mf = job.max_form;
    let hs = ncgeom::par::map(&contents, |c| {
        let cx = if poisson { star.mod_brackets(c, mf) } else { star.mod_commutators(c, mf) };
        cx.map(|x| x.cohomology_dims())
    });
    let (name, identity) = if poisson {
        ("omega_np_mod_brackets", "H^n(Omega_{NP_l}/{,}) = sum_{m<=l} H^n(tau_{2m} Omega_comm)")
    } else {
        ("omega_nc_mod_commutators", "H^n(Omega_{NC_l}/[,]) = sum_{m<=l} H^{n+2m}_dR")
    };
    let mut out = Out::new();
    let mut t = Table::new(name, columns("H", mf));
    let mut v = Verdict::new(identity, slots(mf));
    for (c, h) in contents.iter().zip(hs) {
        let h = h.map_err(err("quotient complex"))?;
        let want: Vec<usize> = (0..mf).map(|n| (0..=job.l).map(|m| expected_dr(job, c, n + 2 * m)).sum()).collect();
        t.push(c.clone(), job.weight_of(c), cells(&h[..mf]));
        v.check(c, compare(&h[..mf], &want));
    }
    out.tables.push(t);
    out.verdicts.push(v);
    out.notes.push(format!("star model with l = {}; form degree {mf} is a truncation edge", job.l));
    if poisson {
        out.notes.push("affine case: H^n(tau_{2m} Omega_comm) = H^{n+2m}_dR".to_string());
    }
    Ok(out)
}

fn hcper(job: &Job) -> Result<Out, TaskError> {
    let contents = job.contents();
    let levels = job.levels;
    let window = levels.min(3);
    let base = poisson_forms(&job.gens, levels + 1);
    let towers = ncgeom::par::map(&contents, |c| y_complex_tower(&base, c, levels));
    let mut cols: Vec<String> = (1..=levels).flat_map(|k| [format!("L{k}_even"), format!("L{k}_odd")]).collect();
    cols.extend(["pro_even".to_string(), "pro_odd".to_string()]);
    let mut out = Out::new();
    let mut t = Table::new("y_tower", cols);
    let mut v = Verdict::new("pro-H(Y) = (sum_j H^{2j}_dR, sum_j H^{2j+1}_dR)", vec![0, 1]);
    let nv = job.rank();
    for (c, tw) in contents.iter().zip(towers) {
        let tw = tw.map_err(err("Y tower"))?;
        let mut row = Vec::new();
        for k in 0..levels {
            let (e, o) = tw.levels()[k].cohomology_dims();
            row.extend([Cell::Num(e), Cell::Num(o)]);
        }
        let got: Vec<ProStatus> =
            (0..2).map(|n| tower_pro_status(&tw, n, window)).collect::<Result<_, _>>().map_err(err("pro status"))?;
        row.extend(got.iter().map(|&s| Cell::Text(status_text(s))));
        t.push(c.clone(), job.weight_of(c), row);
        let want: Vec<ProStatus> = (0..2)
            .map(|p| want_status((p..=nv).step_by(2).map(|n| expected_dr(job, c, n)).sum()))
            .collect();
        v.check(c, (got != want).then(|| format!("got {got:?}, expected {want:?}")));
    }
    out.tables.push(t);
    out.verdicts.push(v);
    out.notes.push(format!("levels 1..={levels}; pro statements read from the top level into the {} below", window - 1));
    Ok(out)
}

fn inf_cohomology(job: &Job) -> Result<Out, TaskError> {
    let mut out = Out::new();
    let levels = job.levels;
    let nv = job.rank();
    let mut t = Table::new("adic_tower", (1..=levels).map(|k| format!("L{k}")).collect::<Vec<_>>());
    let (towers, want, checked): (Vec<Tower<ComplexSlice>>, Vec<usize>, Vec<Degree>) = match job.ideal.as_ref() {
        Some(AdicIdeal::Polynomial(f)) => {
            let tw = polynomial_adic_tower(f, levels).map_err(err("adic tower"))?;
            out.notes.push("polynomial ideal: the tower is not graded".to_string());
            (vec![tw], vec![squarefree_degree(f), 0], vec![vec![]])
        }
        Some(AdicIdeal::Monomials(g)) => {
            let contents = job.contents();
            let tws = ncgeom::par::map(&contents, |c| monomial_adic_tower(&job.gens, g, levels, c, job.max_form));
            let tws = tws.into_iter().collect::<Result<Vec<_>, _>>().map_err(err("adic tower"))?;
            let unit = g.iter().any(|e| e.iter().all(|&x| x == 0));
            let zero = vec![0; nv];
            let want = (0..=nv.min(job.max_form.saturating_sub(1)))
                .map(|n| if unit { 0 } else { expected_dr(job, &zero, n) })
                .collect();
            (tws, want, contents)
        }
        None => unreachable!("validated"),
    };
    for (c, tw) in checked.iter().zip(&towers) {
        let row = tw.levels().iter().map(|l| Cell::Text(format!("{:?}", l.cohomology_dims()))).collect::<Vec<_>>();
        t.push(c.clone(), if c.is_empty() { vec![] } else { job.weight_of(c) }, row);
    }
    out.tables.push(t);
    let window = levels.min(3);
    let mut v = Verdict::new("pro-H of the adic tower = H_dR of the reduced locus", slots(want.len()));
    let mut s = Table::new("adic_pro", ["status"].map(String::from));
    let mut bad = Vec::new();
    for (n, &w) in want.iter().enumerate() {
        let got = summed_pro_status(&towers, n as i32, window);
        s.push(vec![n as i32], vec![], [Cell::Text(status_text(got))]);
        if got != want_status(w) {
            bad.push(format!("H^{n}: {}, expected {}", status_text(got), status_text(want_status(w))));
        }
    }
    for c in &checked {
        v.degrees_checked.push(c.clone());
    }
    if !bad.is_empty() {
        v.pass = false;
        v.failures = bad;
    }
    out.tables.push(s);
    out.verdicts.push(v);
    out.notes.push(format!("adic levels 1..={levels}, summed over the window; pro window {window}"));

    if job.gens.any_invertible() {
        out.notes.push("Cech-Alexander levels skipped: they are built for affine space only".to_string());
        return Ok(out);
    }
    // Čech–Alexander levels of 𝔸^nv, I = 0, cosimplicial degrees 0..=2
    let m_max = 2;
    let n_max = levels - 1;
    let totals: Vec<u32> = (0..=job.max_total.min(3)).collect();
    for (kind, name) in [(SheafKind::O, "O"), (SheafKind::Omega(1), "Omega1")] {
        let tws = ncgeom::par::map(&totals, |&d| cech_alexander_levels(nv, kind, m_max, n_max, d));
        let mut t = Table::new(&format!("cech_alexander_{name}"), (0..=n_max).map(|n| format!("n{n}")).collect::<Vec<_>>());
        let identity = match kind {
            SheafKind::O => "Cech-Alexander O: H^0 = k, H^1 = 0 at every level n >= 1",
            SheafKind::Omega(_) => "Cech-Alexander Omega^1: pro-zero in degrees 0, 1",
        };
        let mut v = Verdict::new(identity, vec![0, 1]);
        for (&d, tw) in totals.iter().zip(tws) {
            let tw = tw.map_err(err("Cech-Alexander"))?;
            let row = tw.levels().iter().map(|l| Cell::Text(format!("{:?}", &l.cohomology_dims()[..2]))).collect::<Vec<_>>();
            t.push(vec![d as i32], vec![d as i32], row);
            let mismatch = match kind {
                SheafKind::O => {
                    let want = [usize::from(d == 0), 0];
                    tw.levels()[1..]
                        .iter()
                        .enumerate()
                        .find(|(_, l)| l.cohomology_dims()[..2] != want)
                        .map(|(k, l)| format!("level {}: {:?}, expected {want:?}", k + 1, &l.cohomology_dims()[..2]))
                }
                SheafKind::Omega(_) => {
                    let got: Vec<ProStatus> =
                        (0..2).map(|n| tower_pro_status(&tw, n, window)).collect::<Result<_, _>>().map_err(err("pro status"))?;
                    got.iter().any(|&s| s != ProStatus::ProZero).then(|| format!("got {got:?}"))
                }
            };
            v.check(&[d as i32], mismatch);
        }
        out.tables.push(t);
        out.verdicts.push(v);
    }
    out.notes.push(format!(
        "Cech-Alexander: total degrees 0..={}, cosimplicial degree {m_max} is an edge, levels n = 0..={n_max}",
        job.max_total.min(3)
    ));
    Ok(out)
}

fn lemma78(job: &Job) -> Result<Out, TaskError> {
    let mut cases = Vec::new();
    for u in 1..=job.max_dim {
        for v in 1..=job.max_dim {
            for a in 0..=job.max_total as usize {
                for b in 0..=job.max_total as usize - a {
                    cases.push([u, v, a, b]);
                }
            }
        }
    }
    let dims = ncgeom::par::map(&cases, |&[u, v, a, b]| coinvariant_dims(u, v, a, b));
    let mut out = Out::new();
    let mut t = Table::new("coinvariants", ["lhs", "rhs"].map(String::from));
    let mut ver = Verdict::new("dim S^a(U(x)V) (x) Lambda^b(U(x)V) = dim coinvariants", Vec::new());
    for (k, d) in cases.iter().zip(dims) {
        let key: Vec<i32> = k.iter().map(|&x| x as i32).collect();
        t.push(key.clone(), vec![], cells(&[d.lhs as usize, d.rhs as usize]));
        ver.check(&key, (d.lhs != d.rhs).then(|| format!("{} vs {}", d.lhs, d.rhs)));
    }
    out.tables.push(t);
    out.verdicts.push(ver);
    out.notes.push("rows are keyed by [dim U, dim V, alpha, beta]".to_string());
    Ok(out)
}

fn n_cx(job: &Job) -> Result<Out, TaskError> {
    let nv = job.rank();
    let contents = job.contents();
    let top = contents.iter().map(|c| c.iter().sum::<i32>()).max().unwrap_or(0).max(1) as usize;
    let forms = poisson_forms(&job.gens, top);
    let dr = CommForms::commutative(&job.gens);
    let i_max = top;
    let checked = 2 * i_max + 2;
    let hs = ncgeom::par::map(&contents, |c| -> Result<(Vec<usize>, Vec<usize>), TaskError> {
        let n = n_complex(&forms, c, i_max).map_err(err("N complex"))?.cohomology_dims();
        let d = dr.de_rham(c, 0, nv + 1).map_err(err("de Rham complex"))?.cohomology_dims();
        Ok((n, d))
    });
    let mut out = Out::new();
    let mut t = Table::new("n_complex", columns("H", checked));
    let mut v = Verdict::new("H^n(N) = H^n(Omega_comm SV) per content", slots(checked));
    for (c, h) in contents.iter().zip(hs) {
        let (n, d) = h?;
        let want: Vec<usize> = (0..checked).map(|k| d.get(k).copied().unwrap_or(0)).collect();
        t.push(c.clone(), job.weight_of(c), cells(&n[..checked]));
        v.check(c, compare(&n[..checked], &want));
    }
    out.tables.push(t);
    out.verdicts.push(v);
    out.notes.push(format!("Poisson weights 0..={i_max}; slot {checked} is a truncation edge"));

    let max_r = top.min(nv + 2);
    let mut vd = Verdict::new("d^2 = 0, delta^2 = 0, d delta + delta d = 0 on basis forms", slots(max_r + 1));
    let results = ncgeom::par::map(&contents, |c| -> Result<Option<String>, TaskError> {
        for r in 0..=max_r {
            for w in forms.slice(c, r, 0..=top).keys() {
                let dl = forms.delta(w).map_err(err("delta"))?;
                if !forms.d_lin(&forms.d(w)).is_zero() {
                    return Ok(Some(format!("d^2 {w:?}")));
                }
                if !forms.delta_lin(&dl).map_err(err("delta"))?.is_zero() {
                    return Ok(Some(format!("delta^2 {w:?}")));
                }
                if !forms.d_lin(&dl).plus(&forms.delta_lin(&forms.d(w)).map_err(err("delta"))?).is_zero() {
                    return Ok(Some(format!("d delta + delta d {w:?}")));
                }
            }
        }
        Ok(None)
    });
    for (c, r) in contents.iter().zip(results) {
        vd.check(c, r?);
    }
    out.verdicts.push(vd);
    Ok(out)
}
