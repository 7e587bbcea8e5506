use std::fmt::Write as _;

use serde::Serialize;

/// Default absolute tolerance for a formula against a finite difference.
pub const FD_ABS_TOL: f64 = 1e-6;
/// Default relative tolerance for a formula against a finite difference.
pub const FD_REL_TOL: f64 = 1e-5;
/// Tolerance for identities that hold exactly up to rounding.
pub const EXACT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { abs: FD_ABS_TOL, rel: FD_REL_TOL }
    }
}

impl Tolerance {
    pub fn absolute(abs: f64) -> Self {
        Tolerance { abs, rel: 0.0 }
    }
}

/// A named scalar check attached to a report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubCheck {
    pub name: String,
    pub value: f64,
    pub tol: f64,
    pub pass: bool,
}

impl SubCheck {
    /// Passes when `|value| <= tol`.
    pub fn within(name: impl Into<String>, value: f64, tol: f64) -> Self {
        SubCheck { name: name.into(), value, tol, pass: value.abs() <= tol }
    }
}

/// Outcome of one verification run. `lhs` is the finite-difference volume
/// derivative and `rhs` the formula; the gaps are always recomputed from
/// them.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub scenario: String,
    pub seed: Option<u64>,
    pub lhs: f64,
    pub rhs: f64,
    pub abs_gap: f64,
    pub rel_gap: f64,
    pub h: f64,
    pub tol: Tolerance,
    pub pass: bool,
    pub checks: Vec<SubCheck>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(scenario: impl Into<String>, lhs: f64, rhs: f64, h: f64, tol: Tolerance) -> Self {
        let mut r = VerificationReport {
            scenario: scenario.into(),
            seed: None,
            lhs,
            rhs,
            abs_gap: 0.0,
            rel_gap: 0.0,
            h,
            tol,
            pass: false,
            checks: Vec::new(),
            notes: Vec::new(),
        };
        r.recompute();
        r
    }

    /// Gaps and verdict from the stored sides and sub-checks.
    pub fn recompute(&mut self) {
        self.abs_gap = (self.lhs - self.rhs).abs();
        let scale = self.lhs.abs().max(self.rhs.abs());
        self.rel_gap = if scale == 0.0 { 0.0 } else { self.abs_gap / scale };
        let sides = self.abs_gap <= self.tol.abs || self.rel_gap <= self.tol.rel;
        self.pass = sides && self.checks.iter().all(|c| c.pass);
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_check(mut self, c: SubCheck) -> Self {
        self.checks.push(c);
        self.recompute();
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Text,
}

fn num(x: f64) -> String {
    format!("{x:.12e}")
}

/// Deterministic rendering of a list of reports.
pub fn emit_report(reports: &[VerificationReport], format: ReportFormat) -> Vec<u8> {
    let mut out = String::new();
    match format {
        ReportFormat::Csv => {
            out.push_str("scenario,lhs,rhs,abs_gap,rel_gap,h,pass\n");
            for r in reports {
                let name = if r.scenario.contains([',', '"']) {
                    format!("\"{}\"", r.scenario.replace('"', "\"\""))
                } else {
                    r.scenario.clone()
                };
                let _ = writeln!(
                    out,
                    "{name},{},{},{},{},{},{}",
                    num(r.lhs),
                    num(r.rhs),
                    num(r.abs_gap),
                    num(r.rel_gap),
                    num(r.h),
                    r.pass
                );
            }
        }
        ReportFormat::Text => {
            let passed = reports.iter().filter(|r| r.pass).count();
            for r in reports {
                let _ = writeln!(
                    out,
                    "[{}] {}  lhs={} rhs={} gap={} (rel {}) h={}{}",
                    if r.pass { "PASS" } else { "FAIL" },
                    r.scenario,
                    num(r.lhs),
                    num(r.rhs),
                    num(r.abs_gap),
                    num(r.rel_gap),
                    num(r.h),
                    r.seed.map(|s| format!(" seed={s}")).unwrap_or_default()
                );
                for c in &r.checks {
                    let _ = writeln!(
                        out,
                        "    {} {} = {} (tol {})",
                        if c.pass { "ok  " } else { "FAIL" },
                        c.name,
                        num(c.value),
                        num(c.tol)
                    );
                }
                for n in &r.notes {
                    let _ = writeln!(out, "    note: {n}");
                }
            }
            let _ = writeln!(out, "{passed}/{} scenarios passed", reports.len());
        }
    }
    out.into_bytes()
}
