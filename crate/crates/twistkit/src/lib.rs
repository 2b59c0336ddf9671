//! Suite runner and report serialization behind the `twistkit` binary.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;
use thiserror::Error;
use twistkit_core::coeff::{fmt_q, int, parse_q, rat, Q};
use twistkit_core::pbw::{verify_hopf_axioms, PbwError, Presentation};
use twistkit_core::rep::RepError;
use twistkit_core::report::{Check, Status, Table, VerificationReport};
use twistkit_core::twist::{
    build_r_std, build_twist, check_closed_forms, check_cybe, check_twisted_hopf,
    extract_classical_r, twist_r, verify_rmatrix, verify_twist_axioms, TwistKind, TwistedHopf,
};

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Hopf,
    TwistAxioms,
    ClosedForms,
    Rmatrix,
    Qybe,
    Affine,
    Limits,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Hopf => "hopf",
            Suite::TwistAxioms => "twist-axioms",
            Suite::ClosedForms => "closed-forms",
            Suite::Rmatrix => "rmatrix",
            Suite::Qybe => "qybe",
            Suite::Affine => "affine",
            Suite::Limits => "limits",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub suite: Suite,
    pub order: u32,
    pub q: Option<Q>,
    pub xi: Option<Q>,
    pub zeta: Option<Q>,
    pub z: Vec<Q>,
    pub nmax: usize,
}

impl SuiteConfig {
    pub fn new(suite: Suite) -> Self {
        SuiteConfig {
            suite,
            order: 4,
            q: None,
            xi: None,
            zeta: None,
            z: Vec::new(),
            nmax: 6,
        }
    }
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Pbw(#[from] PbwError),
}

impl RunError {
    /// Configuration and singular-point problems are usage errors.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            RunError::Config(_) | RunError::Rep(RepError::SingularPoint(_))
        )
    }
}

pub fn parse_rational(s: &str) -> Result<Q, String> {
    parse_q(s).map_err(|e| e.to_string())
}

/// `(q, xi)` points of the default grid, `q = p^2`.
pub fn default_qybe_points() -> Vec<(Q, Q)> {
    [(int(2), int(1)), (int(3), rat(1, 2)), (int(5), int(2))]
        .into_iter()
        .map(|(p, x)| (&p * &p, x))
        .collect()
}

fn validate(cfg: &SuiteConfig) -> Result<(), RunError> {
    let bad = |m: &str| Err(RunError::Config(m.to_string()));
    if cfg.order == 0 {
        return bad("--order must be at least 1");
    }
    if cfg.nmax == 0 {
        return bad("--nmax must be at least 1");
    }
    match cfg.suite {
        Suite::Qybe => {
            if !cfg.z.is_empty() && cfg.z.len() != 3 {
                return bad("qybe takes exactly three --z values");
            }
            if cfg.z.iter().any(|z| z == &int(0)) {
                return bad("spectral parameters must be nonzero");
            }
            if cfg.q.as_ref().is_some_and(|q| q == &int(0)) {
                return bad("q must be nonzero");
            }
        }
        Suite::Affine => {
            if cfg.z.len() > 1 {
                return bad("affine takes a single --z value");
            }
            if cfg.z.first().is_some_and(|z| z == &int(1)) {
                return bad("z = 1 is singular");
            }
        }
        _ => {}
    }
    Ok(())
}

pub fn run_suite(cfg: &SuiteConfig) -> Result<VerificationReport, RunError> {
    validate(cfg)?;
    let n = cfg.order;
    let mut r = match cfg.suite {
        Suite::Hopf => {
            let mut r = VerificationReport::new("hopf");
            r.param("order", n.to_string());
            for p in [Presentation::Borel, Presentation::Sl2] {
                r.extend(verify_hopf_axioms(p, n));
            }
            let qj = build_twist(TwistKind::QJ, Presentation::Sl2, n)?;
            r.extend(check_twisted_hopf(&TwistedHopf::new(qj)?)?);
            r
        }
        Suite::TwistAxioms => verify_twist_axioms(n)?,
        Suite::ClosedForms => check_closed_forms(n)?,
        Suite::Rmatrix => {
            let mut r = verify_rmatrix(n)?;
            r.extend(twistkit_core::rep::verify_rep(n)?);
            if let Some(zeta) = &cfg.zeta {
                let f = build_twist(TwistKind::QJ, Presentation::Sl2, n)?;
                let cr = extract_classical_r(&twist_r(&f, &build_r_std(n)?))?;
                r.push(check_cybe(
                    &cr,
                    zeta,
                    &format!("rmatrix.qj.cybe.zeta={}", fmt_q(zeta)),
                ));
                r.param("zeta", fmt_q(zeta));
            }
            r
        }
        Suite::Qybe => {
            let points = if cfg.q.is_some() || cfg.xi.is_some() {
                vec![(
                    cfg.q.clone().unwrap_or_else(|| int(4)),
                    cfg.xi.clone().unwrap_or_else(|| int(1)),
                )]
            } else {
                default_qybe_points()
            };
            let z = match cfg.z.as_slice() {
                [a, b, c] => [a.clone(), b.clone(), c.clone()],
                _ => [rat(1, 2), rat(1, 3), rat(1, 5)],
            };
            let mut r = twistkit_core::rep::verify_qybe(&points, z)?;
            r.param(
                "points",
                points
                    .iter()
                    .map(|(q, x)| format!("({},{})", fmt_q(q), fmt_q(x)))
                    .collect::<Vec<_>>()
                    .join(","),
            );
            r
        }
        Suite::Affine => {
            let z = cfg.z.first().cloned().unwrap_or_else(|| rat(1, 10));
            twistkit_core::affine::verify_affine(cfg.nmax, &z)?
        }
        Suite::Limits => twistkit_core::limits::verify_limits(n)?,
    };
    let uses_order = !matches!(cfg.suite, Suite::Qybe | Suite::Affine);
    if uses_order && !r.params.iter().any(|(k, _)| k == "order") {
        r.param("order", n.to_string());
    }
    r.suite = cfg.suite.name().to_string();
    r.params.sort_by(|a, b| a.0.cmp(&b.0));
    r.params.dedup_by(|a, b| a.0 == b.0);
    r.sort();
    Ok(r)
}

struct Params<'a>(&'a [(String, String)]);

impl Serialize for Params<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0 {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

#[derive(Serialize)]
struct CheckOut<'a> {
    check_id: &'a str,
    paper_anchor: &'a str,
    status: &'a str,
    residual: &'a str,
    printed: Option<&'a str>,
    derived: Option<&'a str>,
}

impl<'a> From<&'a Check> for CheckOut<'a> {
    fn from(c: &'a Check) -> Self {
        CheckOut {
            check_id: &c.id,
            paper_anchor: &c.anchor,
            status: c.status.as_str(),
            residual: &c.residual,
            printed: c.printed.as_deref(),
            derived: c.derived.as_deref(),
        }
    }
}

#[derive(Serialize)]
struct TableOut<'a> {
    name: &'a str,
    columns: &'a [String],
    rows: &'a [Vec<String>],
}

#[derive(Serialize)]
struct ReportOut<'a> {
    suite: &'a str,
    engine_version: &'a str,
    config: Params<'a>,
    passed: bool,
    checks: Vec<CheckOut<'a>>,
    tables: Vec<TableOut<'a>>,
}

pub fn to_json(r: &VerificationReport) -> String {
    let out = ReportOut {
        suite: &r.suite,
        engine_version: ENGINE_VERSION,
        config: Params(&r.params),
        passed: r.all_passed(),
        checks: r.checks.iter().map(CheckOut::from).collect(),
        tables: r
            .tables
            .iter()
            .map(|t: &Table| TableOut {
                name: &t.name,
                columns: &t.columns,
                rows: &t.rows,
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&out).expect("report serializes");
    s.push('\n');
    s
}

pub fn to_text(r: &VerificationReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "suite {} (twistkit {ENGINE_VERSION})", r.suite);
    for (k, v) in &r.params {
        let _ = writeln!(s, "  {k} = {v}");
    }
    let w = r.checks.iter().map(|c| c.id.len()).max().unwrap_or(0);
    let ws = r
        .checks
        .iter()
        .map(|c| c.status.as_str().len())
        .max()
        .unwrap_or(0);
    for c in &r.checks {
        let _ = writeln!(
            s,
            "{:<w$}  {:<ws$}  {}",
            c.id,
            c.status.as_str(),
            c.residual
        );
        if c.status == Status::DocumentedMisprint {
            if let (Some(p), Some(d)) = (&c.printed, &c.derived) {
                for (label, form) in [("printed", p), ("derived", d)] {
                    let _ = writeln!(s, "  {label}:");
                    for line in form.lines() {
                        let _ = writeln!(s, "    {line}");
                    }
                }
            }
        }
    }
    for t in &r.tables {
        let _ = writeln!(s, "table {}", t.name);
        let mut widths: Vec<usize> = t.columns.iter().map(String::len).collect();
        for row in &t.rows {
            for (i, cell) in row.iter().enumerate() {
                widths[i] = widths[i].max(cell.len());
            }
        }
        let line = |cells: &[String]| {
            cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:>w$}"))
                .collect::<Vec<_>>()
                .join("  ")
        };
        let _ = writeln!(s, "  {}", line(&t.columns));
        for row in &t.rows {
            let _ = writeln!(s, "  {}", line(row));
        }
    }
    let fails = r.failures().count();
    let _ = writeln!(s, "{} checks, {} failed", r.checks.len(), fails);
    s
}

pub fn emit_report(r: &VerificationReport, format: Format) -> String {
    match format {
        Format::Json => to_json(r),
        Format::Text => to_text(r),
    }
}
