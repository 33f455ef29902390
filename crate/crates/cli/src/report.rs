//! Report model. The JSON rendering is the serde form; the text rendering is
//! computed from the same value.

use std::fmt::Write;

use serde::Serialize;
use tdhom::witness::Witness;

pub const REPORT_FORMAT: &str = "tdhom-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    fn tag(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckLine {
    pub suite: String,
    pub identity: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub over: Option<String>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FileReport {
    pub path: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub role: Option<String>,
    pub checks: Vec<CheckLine>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassicalTable {
    pub cochain_dims: Vec<usize>,
    pub ranks: Vec<usize>,
    pub cohomology: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TwistedTable {
    pub coalgebra: String,
    pub alt_dims: Vec<usize>,
    pub kernel_dims: Vec<usize>,
    pub td_dims: Vec<usize>,
    pub delta_ranks: Vec<usize>,
    pub cohomology: Vec<usize>,
    pub direct_matches_induced: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CohomologyReport {
    pub module: String,
    pub maxdeg: usize,
    pub classical: ClassicalTable,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub twisted: Option<TwistedTable>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExampleLine {
    pub name: String,
    pub classification: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub format: &'static str,
    pub command: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub files: Vec<FileReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cohomology: Option<CohomologyReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub examples: Vec<ExampleLine>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self {
            format: REPORT_FORMAT,
            command: command.to_string(),
            status: Status::Pass,
            files: Vec::new(),
            cohomology: None,
            examples: Vec::new(),
            error: None,
            timing_ms: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }
}

fn list(xs: &[usize]) -> String {
    xs.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn witness_text(w: &Witness) -> String {
    let terms: Vec<String> = w.residual.iter().map(|(l, q)| format!("{}*{l}", tdhom::linalg::scalar::format(q))).collect();
    format!("at ({}) residual {}", w.tuple.join(", "), terms.join(" + "))
}

pub fn render_text(r: &Report) -> String {
    let mut out = String::new();
    for f in &r.files {
        let what = match (&f.role, &f.name) {
            (Some(role), Some(name)) => format!(" ({role} {name})"),
            _ => String::new(),
        };
        let _ = writeln!(out, "{}{what}", f.path);
        if let Some(e) = &f.error {
            let _ = writeln!(out, "  error: {e}");
        }
        for c in &f.checks {
            let over = c.over.as_ref().map(|o| format!(" over {o}")).unwrap_or_default();
            let _ = writeln!(out, "  {} [{}] {}{over}", c.status.tag(), c.suite, c.identity);
            if let Some(w) = &c.witness {
                let _ = writeln!(out, "       {}", witness_text(w));
            }
            if let Some(n) = &c.note {
                let _ = writeln!(out, "       {n}");
            }
        }
        if let Some(t) = f.timing_ms {
            let _ = writeln!(out, "  {t:.1} ms");
        }
    }
    if let Some(c) = &r.cohomology {
        let _ = writeln!(out, "module {} up to degree {}", c.module, c.maxdeg);
        let _ = writeln!(out, "  cochain dims  {}", list(&c.classical.cochain_dims));
        let _ = writeln!(out, "  ranks of d    {}", list(&c.classical.ranks));
        let _ = writeln!(out, "  H dims        {}", list(&c.classical.cohomology));
        if let Some(t) = &c.twisted {
            let _ = writeln!(out, "twisted over {}", t.coalgebra);
            let _ = writeln!(out, "  Alt dims      {}", list(&t.alt_dims));
            let _ = writeln!(out, "  ker ι dims    {}", list(&t.kernel_dims));
            let _ = writeln!(out, "  TD dims       {}", list(&t.td_dims));
            let _ = writeln!(out, "  ranks of δ    {}", list(&t.delta_ranks));
            let _ = writeln!(out, "  H dims        {}", list(&t.cohomology));
            let agree = if t.direct_matches_induced { "agree" } else { "DISAGREE" };
            let _ = writeln!(out, "  direct and induced δ {agree}");
        }
    }
    let width = r.examples.iter().map(|e| e.name.len()).max().unwrap_or(0);
    for e in &r.examples {
        let _ = writeln!(out, "{:width$}  {}", e.name, e.classification);
    }
    if let Some(e) = &r.error {
        let _ = writeln!(out, "error: {e}");
    }
    if let Some(t) = r.timing_ms {
        let _ = writeln!(out, "total {t:.1} ms");
    }
    let _ = writeln!(out, "status: {}", serde_json::to_value(r.status).unwrap().as_str().unwrap());
    out
}
