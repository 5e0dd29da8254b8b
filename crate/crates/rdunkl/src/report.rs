//! Machine-readable verification reports.
//!
//! Schema: `{suite, cases: [{name, inputs, computed, reference, abs_err,
//! rel_err, pass}], summary}`. Key order inside `inputs` is sorted by the
//! JSON map, so a fixed seed reproduces reports byte for byte.

use serde::Serialize;
use serde_json::{json, Value};

use crate::laplace::IdentityReport;

#[derive(Debug, Clone, Serialize)]
pub struct CaseReport {
    pub name: String,
    pub inputs: Value,
    pub computed: Value,
    pub reference: Value,
    pub abs_err: Option<f64>,
    pub rel_err: Option<f64>,
    pub pass: bool,
}

impl CaseReport {
    /// Exact two-sided comparison; computed/reference are display strings.
    pub fn exact(
        name: impl Into<String>,
        inputs: Value,
        computed: impl Into<String>,
        reference: impl Into<String>,
        pass: bool,
    ) -> CaseReport {
        CaseReport {
            name: name.into(),
            inputs,
            computed: Value::String(computed.into()),
            reference: Value::String(reference.into()),
            abs_err: if pass { Some(0.0) } else { None },
            rel_err: if pass { Some(0.0) } else { None },
            pass,
        }
    }

    /// Boolean property observed over a batch of trials.
    pub fn property(
        name: impl Into<String>,
        inputs: Value,
        trials: usize,
        failures: usize,
    ) -> CaseReport {
        CaseReport {
            name: name.into(),
            inputs,
            computed: json!({ "trials": trials, "failures": failures }),
            reference: json!({ "failures": 0 }),
            abs_err: None,
            rel_err: None,
            pass: failures == 0,
        }
    }

    pub fn from_identity(inputs: Value, rep: &IdentityReport) -> CaseReport {
        CaseReport {
            name: rep.name.clone(),
            inputs,
            computed: complex_value(rep.computed_re, rep.computed_im),
            reference: complex_value(rep.reference_re, rep.reference_im),
            abs_err: Some(rep.abs_err),
            rel_err: Some(rep.rel_err),
            pass: rep.pass,
        }
    }

    /// A case that could not run at all (setup error); counted as failed.
    pub fn error(name: impl Into<String>, inputs: Value, message: String) -> CaseReport {
        CaseReport {
            name: name.into(),
            inputs,
            computed: json!({ "error": message }),
            reference: Value::Null,
            abs_err: None,
            rel_err: None,
            pass: false,
        }
    }
}

pub fn complex_value(re: f64, im: f64) -> Value {
    if im == 0.0 {
        json!(re)
    } else {
        json!({ "re": re, "im": im })
    }
}

#[derive(Debug, Clone, Serialize, Default)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: Vec<CaseReport>,
    /// Cost-cap or input-flavor annotations (e.g. decimal inputs routed to
    /// the float path, skipped oversize dimensions).
    pub warnings: Vec<String>,
    pub summary: Summary,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>) -> SuiteReport {
        SuiteReport {
            suite: suite.into(),
            cases: Vec::new(),
            warnings: Vec::new(),
            summary: Summary::default(),
        }
    }

    pub fn push(&mut self, case: CaseReport) {
        self.summary.total += 1;
        if case.pass {
            self.summary.passed += 1;
        } else {
            self.summary.failed += 1;
        }
        self.cases.push(case);
    }

    /// Records a suite-level skip (cost cap without --force).
    pub fn skip(&mut self, reason: String) {
        self.summary.total += 1;
        self.summary.skipped += 1;
        self.warnings.push(reason);
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AggregateReport {
    pub suites: Vec<SuiteReport>,
    pub seed: u64,
    pub summary: Summary,
}

impl AggregateReport {
    pub fn new(suites: Vec<SuiteReport>, seed: u64) -> AggregateReport {
        let mut summary = Summary::default();
        for s in &suites {
            summary.total += s.summary.total;
            summary.passed += s.summary.passed;
            summary.failed += s.summary.failed;
            summary.skipped += s.summary.skipped;
        }
        AggregateReport {
            suites,
            seed,
            summary,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }
}

/// Flat CSV rendering: suite,case,pass,abs_err,rel_err.
pub fn to_csv(suites: &[SuiteReport]) -> String {
    let mut out = String::from("suite,case,pass,abs_err,rel_err\n");
    for s in suites {
        for c in &s.cases {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                s.suite,
                c.name.replace(',', ";"),
                c.pass,
                c.abs_err.map_or(String::new(), |v| format!("{v:e}")),
                c.rel_err.map_or(String::new(), |v| format!("{v:e}")),
            ));
        }
    }
    out
}

/// Human-readable rendering, one line per case.
pub fn to_text(suites: &[SuiteReport]) -> String {
    let mut out = String::new();
    for s in suites {
        out.push_str(&format!(
            "suite {}: {}/{} passed{}\n",
            s.suite,
            s.summary.passed,
            s.summary.total,
            if s.summary.skipped > 0 {
                format!(" ({} skipped)", s.summary.skipped)
            } else {
                String::new()
            }
        ));
        for w in &s.warnings {
            out.push_str(&format!("  warning: {w}\n"));
        }
        for c in &s.cases {
            let status = if c.pass { "PASS" } else { "FAIL" };
            match c.rel_err {
                Some(rel) => out.push_str(&format!("  [{status}] {} (rel_err {rel:.2e})\n", c.name)),
                None => out.push_str(&format!("  [{status}] {}\n", c.name)),
            }
        }
    }
    out
}
