//! Pass/fail reporting shared by the law suites, the system validators and
//! the CLI.

use serde::Serialize;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Failure {
    pub law: String,
    pub witness: String,
}

/// The outcome of running a named suite of exact checks.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Report {
    pub suite: String,
    pub cases: usize,
    pub failures: Vec<Failure>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Report {
        Report { suite: suite.into(), cases: 0, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn record(&mut self, law: &str, witness: impl Into<String>) {
        self.failures.push(Failure { law: law.to_string(), witness: witness.into() });
    }

    /// Records the outcome of one law instance: a false outcome or an error
    /// both count as failures, with the error text appended to the witness.
    pub fn check<E: std::fmt::Display>(
        &mut self,
        law: &str,
        witness: &str,
        outcome: Result<bool, E>,
    ) {
        self.cases += 1;
        match outcome {
            Ok(true) => {}
            Ok(false) => self.record(law, witness),
            Err(e) => self.record(law, format!("{witness} [{e}]")),
        }
    }

    /// Folds another report into this one, prefixing its failure labels.
    pub fn absorb(&mut self, other: Report) {
        self.cases += other.cases;
        for f in other.failures {
            self.failures.push(Failure { law: format!("{}/{}", other.suite, f.law), witness: f.witness });
        }
    }

    /// Canonical text rendering: one status line, then one line per failure.
    pub fn render_text(&self) -> String {
        let mut out = format!(
            "{}: {} over {} case(s)\n",
            self.suite,
            if self.passed() { "ok" } else { "FAILED" },
            self.cases
        );
        for f in &self.failures {
            out.push_str(&format!("  violated {}: {}\n", f.law, f.witness));
        }
        out
    }
}
