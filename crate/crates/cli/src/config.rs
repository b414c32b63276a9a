use std::fmt;
use std::str::FromStr;

use ncgeom::free_assoc::{Generator, GeneratorSet};
use ncgeom::graded::Degree;
use ncgeom::infinitesimal::AdicIdeal;
use serde::{Deserialize, Serialize};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, clap::ValueEnum)]
pub enum Task {
    PbwCheck,
    Filtration,
    Derham,
    Karoubi,
    NcAcyclic,
    HodgeNc,
    HodgeNp,
    Hcper,
    InfCohomology,
    Lemma78,
    NComplex,
}

impl Task {
    pub const ALL: [Task; 11] = [
        Task::PbwCheck,
        Task::Filtration,
        Task::Derham,
        Task::Karoubi,
        Task::NcAcyclic,
        Task::HodgeNc,
        Task::HodgeNp,
        Task::Hcper,
        Task::InfCohomology,
        Task::Lemma78,
        Task::NComplex,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Task::PbwCheck => "pbw-check",
            Task::Filtration => "filtration",
            Task::Derham => "derham",
            Task::Karoubi => "karoubi",
            Task::NcAcyclic => "nc-acyclic",
            Task::HodgeNc => "hodge-nc",
            Task::HodgeNp => "hodge-np",
            Task::Hcper => "hcper",
            Task::InfCohomology => "inf-cohomology",
            Task::Lemma78 => "lemma78",
            Task::NComplex => "n-complex",
        }
    }

    /// Tasks whose constructions only exist over polynomial generators.
    fn polynomial_only(self) -> bool {
        matches!(self, Task::PbwCheck | Task::Filtration | Task::NcAcyclic | Task::NComplex)
    }
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Task {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Task::ALL.into_iter().find(|t| t.name() == s).ok_or_else(|| format!("unknown task `{s}`"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub name: String,
    /// Defaults to the unit vector of the generator's own axis.
    #[serde(default)]
    pub weight: Vec<i32>,
    #[serde(default)]
    pub invertible: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_weight: Option<Vec<i32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_weight: Option<Vec<i32>>,
    /// Bound on the sum of absolute weights.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_total: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_form_degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tower_levels: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    /// inf-cohomology: the ideal of the adic tower.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideal: Option<AdicIdeal>,
    /// karoubi: spread of the smaller truncation; the larger one adds 2.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spread: Option<u32>,
    /// lemma78: largest `dim U`, `dim V`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_dim: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub format_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub task: Option<String>,
    #[serde(default)]
    pub generators: Vec<GeneratorSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<usize>,
    #[serde(default)]
    pub window: WindowSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub options: Option<Options>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigError {
    pub field: String,
    pub message: String,
}

impl ConfigError {
    fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        ConfigError { field: field.into(), message: message.into() }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "config error at `{}`: {}", self.field, self.message)
    }
}

impl std::error::Error for ConfigError {}

impl JobConfig {
    pub fn parse(text: &str) -> Result<JobConfig, ConfigError> {
        serde_json::from_str(text).map_err(|e| ConfigError::new("$", e.to_string()))
    }
}

/// A validated job with every default filled in.
#[derive(Clone, Debug)]
pub struct Job {
    pub task: Task,
    pub gens: GeneratorSet,
    pub weights: Vec<Vec<i32>>,
    pub l: usize,
    pub min_weight: Vec<i32>,
    pub max_weight: Vec<i32>,
    pub max_total: u32,
    pub max_form: usize,
    pub levels: usize,
    pub ideal: Option<AdicIdeal>,
    pub spread: u32,
    pub max_dim: usize,
}

struct Defaults {
    bound: i32,
    max_total: Option<u32>,
    max_form: usize,
    levels: usize,
    l: usize,
}

fn defaults(task: Task, nv: usize, any_invertible: bool) -> Defaults {
    let small = |one: i32, two: i32, more: i32| match nv {
        0 | 1 => one,
        2 => two,
        _ => more,
    };
    let (bound, max_total, max_form, levels, l) = match task {
        Task::PbwCheck => (6, Some(6), 0, 0, 0),
        Task::Filtration => (5, Some(5), 0, 0, 3),
        Task::Derham => (small(4, 3, 2), None, nv + 1, 0, 1),
        Task::Karoubi => (if any_invertible { 0 } else { 2 }, None, 4, 0, 0),
        Task::NcAcyclic => (4, Some(4), 6, 0, 0),
        Task::HodgeNc | Task::HodgeNp => (small(3, 3, 1), None, nv + 1, 0, 1),
        Task::Hcper => (1, None, 0, 4, 0),
        Task::InfCohomology => (small(4, 3, 2), Some(small(4, 3, 2) as u32), nv + 1, 4, 0),
        Task::Lemma78 => (0, Some(4), 0, 0, 0),
        Task::NComplex => (4, Some(4), 0, 0, 0),
    };
    Defaults { bound, max_total, max_form, levels, l }
}

impl Job {
    /// Validates `cfg` for `task`; the task named in the file, if any, must agree.
    pub fn from_config(task: Task, cfg: &JobConfig) -> Result<Job, ConfigError> {
        if cfg.format_version != FORMAT_VERSION {
            return Err(ConfigError::new(
                "format_version",
                format!("expected {FORMAT_VERSION}, found {}", cfg.format_version),
            ));
        }
        if let Some(t) = &cfg.task {
            let named: Task = t.parse().map_err(|e: String| ConfigError::new("task", e))?;
            if named != task {
                return Err(ConfigError::new("task", format!("config is for `{named}` but `{task}` was requested")));
            }
        }
        let nv = cfg.generators.len();
        if nv == 0 && task != Task::Lemma78 {
            return Err(ConfigError::new("generators", "at least one generator is required"));
        }
        if nv > 8 {
            return Err(ConfigError::new("generators", "at most 8 generators are supported"));
        }
        let mut gens = Vec::with_capacity(nv);
        let mut weights = Vec::with_capacity(nv);
        for (i, g) in cfg.generators.iter().enumerate() {
            let field = |f: &str| format!("generators[{i}].{f}");
            if g.name.is_empty() {
                return Err(ConfigError::new(field("name"), "must not be empty"));
            }
            let w = if g.weight.is_empty() {
                (0..nv).map(|j| i32::from(i == j)).collect()
            } else {
                g.weight.clone()
            };
            if w.iter().any(|&x| x < 0) || w.iter().all(|&x| x == 0) {
                return Err(ConfigError::new(field("weight"), "must be non-negative and non-zero"));
            }
            if g.invertible && (w.iter().filter(|&&x| x != 0).count() != 1 || !w.contains(&1)) {
                return Err(ConfigError::new(field("invertible"), "only single-axis weight-1 generators can be invertible"));
            }
            weights.push(w);
            gens.push(if g.invertible { Generator::invertible(&g.name) } else { Generator::even(&g.name) });
        }
        let axes = weights.first().map_or(0, Vec::len);
        for (i, w) in weights.iter().enumerate() {
            if w.len() != axes {
                return Err(ConfigError::new(format!("generators[{i}].weight"), format!("expected {axes} axes")));
            }
        }
        for (i, g) in cfg.generators.iter().enumerate() {
            if !g.invertible {
                continue;
            }
            let a = weights[i].iter().position(|&x| x == 1).unwrap();
            if weights.iter().enumerate().any(|(j, w)| j != i && w[a] != 0) {
                return Err(ConfigError::new(
                    format!("generators[{i}].weight"),
                    "an invertible generator needs an axis of its own, otherwise the window is infinite",
                ));
            }
        }
        let gens = GeneratorSet::new(gens).map_err(|e| ConfigError::new("generators", e.to_string()))?;
        let any_invertible = gens.any_invertible();
        if task.polynomial_only() && any_invertible {
            return Err(ConfigError::new("generators", format!("`{task}` needs polynomial generators")));
        }
        let d = defaults(task, nv, any_invertible);
        let inv_axis = |a: usize| cfg.generators.iter().zip(&weights).any(|(g, w)| g.invertible && w[a] != 0);
        let min_weight = match &cfg.window.min_weight {
            Some(v) => v.clone(),
            None => (0..axes).map(|a| if inv_axis(a) { -d.bound } else { 0 }).collect(),
        };
        let max_weight = cfg.window.max_weight.clone().unwrap_or_else(|| vec![d.bound; axes]);
        for (f, v) in [("window.min_weight", &min_weight), ("window.max_weight", &max_weight)] {
            if v.len() != axes {
                return Err(ConfigError::new(f, format!("expected {axes} axes")));
            }
        }
        if min_weight.iter().zip(&max_weight).any(|(a, b)| a > b) {
            return Err(ConfigError::new("window.min_weight", "exceeds window.max_weight"));
        }
        let max_total = cfg.window.max_total.or(d.max_total).unwrap_or_else(|| {
            min_weight.iter().zip(&max_weight).map(|(a, b)| a.unsigned_abs().max(b.unsigned_abs())).sum()
        });
        if max_total > 12 {
            return Err(ConfigError::new("window.max_total", "windows above total weight 12 are out of desk scale"));
        }
        let max_form = cfg.window.max_form_degree.unwrap_or(d.max_form);
        let levels = cfg.window.tower_levels.unwrap_or(d.levels);
        if matches!(task, Task::Hcper | Task::InfCohomology) && levels < 3 {
            return Err(ConfigError::new("window.tower_levels", "the pro-reading needs at least 3 levels"));
        }
        let l = cfg.l.unwrap_or(d.l);
        if task == Task::Filtration && l == 0 {
            return Err(ConfigError::new("l", "the filtration task needs l ≥ 1"));
        }
        let opts = cfg.options.clone().unwrap_or_default();
        let ideal = match (task, opts.ideal) {
            (Task::InfCohomology, None) => {
                Some(AdicIdeal::Monomials(vec![(0..nv).map(|j| u32::from(j == 0)).collect()]))
            }
            (Task::InfCohomology, Some(AdicIdeal::Monomials(g))) => {
                for (k, e) in g.iter().enumerate() {
                    if e.len() != nv {
                        return Err(ConfigError::new(format!("options.ideal.monomials[{k}]"), format!("expected {nv} exponents")));
                    }
                    if e.iter().zip(gens.iter()).any(|(x, g)| *x > 0 && g.invertible) {
                        return Err(ConfigError::new(
                            format!("options.ideal.monomials[{k}]"),
                            "monomials may not involve invertible generators",
                        ));
                    }
                }
                Some(AdicIdeal::Monomials(g))
            }
            (Task::InfCohomology, Some(AdicIdeal::Polynomial(f))) => {
                if nv != 1 || any_invertible {
                    return Err(ConfigError::new("options.ideal.polynomial", "needs exactly one polynomial generator"));
                }
                if f.iter().all(|&c| c == 0) {
                    return Err(ConfigError::new("options.ideal.polynomial", "must be non-zero"));
                }
                Some(AdicIdeal::Polynomial(f))
            }
            (_, Some(_)) => return Err(ConfigError::new("options.ideal", format!("not used by `{task}`"))),
            (_, None) => None,
        };
        let spread = opts.spread.unwrap_or(6);
        let max_dim = opts.max_dim.unwrap_or(2);
        if task == Task::Lemma78 && max_dim == 0 {
            return Err(ConfigError::new("options.max_dim", "must be at least 1"));
        }
        Ok(Job {
            task,
            gens,
            weights,
            l,
            min_weight,
            max_weight,
            max_total,
            max_form,
            levels,
            ideal,
            spread,
            max_dim,
        })
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    pub fn invertible_count(&self) -> usize {
        self.gens.iter().filter(|g| g.invertible).count()
    }

    pub fn weight_of(&self, c: &Degree) -> Vec<i32> {
        let axes = self.min_weight.len();
        (0..axes).map(|a| c.iter().zip(&self.weights).map(|(x, w)| x * w[a]).sum()).collect()
    }

    /// Fine contents whose weight lies in the window, in lexicographic order.
    pub fn contents(&self) -> Vec<Degree> {
        let ranges: Vec<(i32, i32)> = self
            .gens
            .iter()
            .zip(&self.weights)
            .map(|(g, w)| {
                let a = w.iter().position(|&x| x != 0).unwrap();
                if g.invertible {
                    (self.min_weight[a], self.max_weight[a])
                } else {
                    let hi = w
                        .iter()
                        .zip(&self.max_weight)
                        .filter(|(x, _)| **x > 0)
                        .map(|(x, m)| m.div_euclid(*x))
                        .min()
                        .unwrap();
                    (0, hi.max(-1))
                }
            })
            .collect();
        let mut out = Vec::new();
        let mut c = ranges.iter().map(|r| r.0).collect::<Vec<_>>();
        if ranges.iter().any(|r| r.0 > r.1) {
            return out;
        }
        loop {
            let w = self.weight_of(&c);
            let total: u32 = w.iter().map(|x| x.unsigned_abs()).sum();
            if total <= self.max_total && w.iter().zip(&self.min_weight).zip(&self.max_weight).all(|((x, a), b)| a <= x && x <= b) {
                out.push(c.clone());
            }
            let mut i = c.len();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if c[i] < ranges[i].1 {
                    c[i] += 1;
                    break;
                }
                c[i] = ranges[i].0;
            }
        }
    }

    /// The config echoed into the report, with defaults made explicit.
    pub fn echo(&self, cfg: &JobConfig) -> JobConfig {
        let opts = Options {
            ideal: self.ideal.clone(),
            spread: (self.task == Task::Karoubi && self.gens.any_invertible()).then_some(self.spread),
            max_dim: (self.task == Task::Lemma78).then_some(self.max_dim),
        };
        JobConfig {
            format_version: FORMAT_VERSION,
            task: Some(self.task.name().to_string()),
            generators: cfg
                .generators
                .iter()
                .zip(&self.weights)
                .map(|(g, w)| GeneratorSpec { name: g.name.clone(), weight: w.clone(), invertible: g.invertible })
                .collect(),
            l: Some(self.l),
            window: WindowSpec {
                min_weight: Some(self.min_weight.clone()),
                max_weight: Some(self.max_weight.clone()),
                max_total: Some(self.max_total),
                max_form_degree: Some(self.max_form),
                tower_levels: Some(self.levels),
            },
            output: cfg.output.clone(),
            options: (opts != Options::default()).then_some(opts),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(text: &str) -> JobConfig {
        JobConfig::parse(text).unwrap()
    }

    #[test]
    fn contents_of_a_torus_window() {
        let c = cfg(r#"{"format_version":1,"generators":[{"name":"x","invertible":true},{"name":"y","invertible":true}],
            "window":{"min_weight":[-1,-1],"max_weight":[1,1]}}"#);
        let job = Job::from_config(Task::Hcper, &c).unwrap();
        assert_eq!(job.contents().len(), 9);
        assert_eq!(job.contents()[0], vec![-1, -1]);
    }

    #[test]
    fn shared_weight_axis() {
        let c = cfg(r#"{"format_version":1,"generators":[{"name":"x","weight":[1]},{"name":"y","weight":[1]}],
            "window":{"max_weight":[2]}}"#);
        let job = Job::from_config(Task::Derham, &c).unwrap();
        assert_eq!(job.contents().len(), 6);
        assert!(job.contents().iter().all(|c| job.weight_of(c)[0] <= 2));
    }

    #[test]
    fn field_level_errors() {
        let bad = [
            (r#"{"format_version":2,"generators":[{"name":"x"}]}"#, "format_version"),
            (r#"{"format_version":1,"generators":[]}"#, "generators"),
            (r#"{"format_version":1,"generators":[{"name":"x","weight":[2],"invertible":true}]}"#, "generators[0].invertible"),
            (r#"{"format_version":1,"task":"karoubi","generators":[{"name":"x"}]}"#, "task"),
            (r#"{"format_version":1,"generators":[{"name":"x"}],"window":{"max_weight":[1,2]}}"#, "window.max_weight"),
        ];
        for (text, field) in bad {
            let e = Job::from_config(Task::Derham, &cfg(text)).unwrap_err();
            assert_eq!(e.field, field, "{text}");
        }
        let e = Job::from_config(Task::PbwCheck, &cfg(r#"{"format_version":1,"generators":[{"name":"x","invertible":true}]}"#));
        assert_eq!(e.unwrap_err().field, "generators");
        assert!(JobConfig::parse(r#"{"format_version":1,"bogus":3}"#).is_err());
    }
}
