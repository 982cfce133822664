use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::{Cell, FiniteGrayCategory, GrayError};

/// One failed axiom instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: String,
    pub witness: Vec<String>,
    pub expected: Option<String>,
    pub actual: Option<String>,
    pub detail: Option<String>,
}

/// How often an axiom was instantiated, and how many instances had a non-identity argument.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Coverage {
    pub instances: u64,
    pub nontrivial: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub subject: String,
    pub violations: Vec<Violation>,
    pub coverage: BTreeMap<String, Coverage>,
    pub notes: Vec<String>,
}

impl ValidationReport {
    pub fn new(subject: impl Into<String>) -> Self {
        ValidationReport {
            subject: subject.into(),
            ..Default::default()
        }
    }

    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violated(&self, axiom: &str) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }

    pub fn push(&mut self, v: Violation) {
        self.violations.push(v);
    }

    /// Record a failure that is not an equation between two cells.
    pub fn fail(&mut self, axiom: impl Into<String>, witness: Vec<String>, detail: impl Into<String>) {
        self.violations.push(Violation {
            axiom: axiom.into(),
            witness,
            expected: None,
            actual: None,
            detail: Some(detail.into()),
        });
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn count(&mut self, axiom: &str, nontrivial: bool) {
        let c = self.coverage.entry(axiom.to_string()).or_default();
        c.instances += 1;
        c.nontrivial += nontrivial as u64;
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
        for (k, v) in other.coverage {
            let c = self.coverage.entry(k).or_default();
            c.instances += v.instances;
            c.nontrivial += v.nontrivial;
        }
        self.notes.extend(other.notes);
    }

    /// Merges `other`, prefixing each of its violation witnesses with `context`.
    pub fn merge_at(&mut self, mut other: ValidationReport, context: &str) {
        for v in &mut other.violations {
            v.witness.insert(0, context.to_string());
        }
        self.merge(other);
    }

    /// Deterministic text rendering.
    pub fn render(&self) -> String {
        let mut s = String::new();
        let status = if self.ok() { "ok" } else { "FAIL" };
        let _ = writeln!(s, "{}: {status} ({} violations)", self.subject, self.violations.len());
        for v in &self.violations {
            let _ = write!(s, "  violation [{}] at ({})", v.axiom, v.witness.join(", "));
            if let (Some(e), Some(a)) = (&v.expected, &v.actual) {
                let _ = write!(s, ": expected {e}, got {a}");
            }
            if let Some(d) = &v.detail {
                let _ = write!(s, ": {d}");
            }
            s.push('\n');
        }
        for n in &self.notes {
            let _ = writeln!(s, "  note: {n}");
        }
        s
    }

    pub fn render_coverage(&self) -> String {
        let mut s = String::new();
        for (k, c) in &self.coverage {
            let _ = writeln!(s, "  {k}: {} instances, {} nontrivial", c.instances, c.nontrivial);
        }
        s
    }
}

/// Evaluates axiom instances into a report, naming result cells in `cat`.
pub(crate) struct Checker<'a> {
    pub report: &'a mut ValidationReport,
    pub cat: &'a FiniteGrayCategory,
}

impl<'a> Checker<'a> {
    pub fn new(report: &'a mut ValidationReport, cat: &'a FiniteGrayCategory) -> Self {
        Checker { report, cat }
    }

    /// `eval` returns `(expected, actual)`; a typing or closure error counts as a violation.
    pub fn eq(
        &mut self,
        axiom: &str,
        nontrivial: bool,
        witness: impl FnOnce() -> Vec<String>,
        eval: impl FnOnce() -> Result<(Cell, Cell), GrayError>,
    ) {
        self.report.count(axiom, nontrivial);
        match eval() {
            Ok((e, a)) if e == a => {}
            Ok((e, a)) => self.report.push(Violation {
                axiom: axiom.to_string(),
                witness: witness(),
                expected: Some(self.cat.show(e)),
                actual: Some(self.cat.show(a)),
                detail: None,
            }),
            Err(err) => self.report.push(Violation {
                axiom: axiom.to_string(),
                witness: witness(),
                expected: None,
                actual: None,
                detail: Some(err.to_string()),
            }),
        }
    }

    pub fn holds(
        &mut self,
        axiom: &str,
        nontrivial: bool,
        witness: impl FnOnce() -> Vec<String>,
        ok: bool,
        detail: impl FnOnce() -> String,
    ) {
        self.report.count(axiom, nontrivial);
        if !ok {
            let w = witness();
            self.report.fail(axiom, w, detail());
        }
    }
}
