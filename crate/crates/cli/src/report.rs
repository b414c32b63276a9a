use serde::Serialize;

use crate::config::JobConfig;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Num(usize),
    Text(String),
}

impl From<usize> for Cell {
    fn from(n: usize) -> Self {
        Cell::Num(n)
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub degree: Vec<i32>,
    pub weight: Vec<i32>,
    pub values: Vec<Cell>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Row>,
}

impl Table {
    pub fn new(name: &str, columns: impl IntoIterator<Item = String>) -> Self {
        Table { name: name.to_string(), columns: columns.into_iter().collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, degree: Vec<i32>, weight: Vec<i32>, values: impl IntoIterator<Item = Cell>) {
        self.rows.push(Row { degree, weight, values: values.into_iter().collect() });
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub identity: String,
    pub pass: bool,
    /// Contents (fine degrees) at which the identity was compared.
    pub degrees_checked: Vec<Vec<i32>>,
    /// Cohomological or form degrees compared at each content.
    pub slots_checked: Vec<i32>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
}

impl Verdict {
    pub fn new(identity: &str, slots_checked: Vec<i32>) -> Self {
        Verdict { identity: identity.to_string(), pass: true, degrees_checked: Vec::new(), slots_checked, failures: Vec::new() }
    }

    /// Records one content; `mismatch` describes a failure there.
    pub fn check(&mut self, degree: &[i32], mismatch: Option<String>) {
        self.degrees_checked.push(degree.to_vec());
        if let Some(m) = mismatch {
            self.pass = false;
            self.failures.push(format!("{degree:?}: {m}"));
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidityWindow {
    pub contents: usize,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub format_version: u32,
    pub task: String,
    pub config: JobConfig,
    pub window: ValidityWindow,
    pub tables: Vec<Table>,
    pub verdicts: Vec<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
        s.push('\n');
        s
    }
}
