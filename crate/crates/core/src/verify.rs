//! Structured verification reports.
//!
//! Every theorem-level check produces a `VerifyReport`: what was checked,
//! with which windows and seeds, how many instances ran, and an explicit
//! witness for every failure. Exit-code policy and rendering live in the
//! CLI; this module only counts.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct FailureWitness {
    pub inputs: Vec<String>,
    pub expected: String,
    pub got: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub check: String,
    pub params: BTreeMap<String, String>,
    pub attempted: u64,
    pub passed: u64,
    pub failures: Vec<FailureWitness>,
    pub inconclusive: bool,
    pub wall_ms: u128,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        !self.inconclusive && self.failures.is_empty()
    }
}

/// Builder that keeps `passed + failures = attempted` by construction.
pub struct Checker {
    check: String,
    params: BTreeMap<String, String>,
    attempted: u64,
    passed: u64,
    failures: Vec<FailureWitness>,
    inconclusive: bool,
    started: Instant,
    max_witnesses: usize,
}

impl Checker {
    pub fn new(check: &str) -> Self {
        Checker {
            check: check.to_string(),
            params: BTreeMap::new(),
            attempted: 0,
            passed: 0,
            failures: Vec::new(),
            inconclusive: false,
            started: Instant::now(),
            max_witnesses: 32,
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    /// Record one instance. Failure witnesses carry both sides in
    /// canonical text form.
    pub fn case(&mut self, pass: bool, inputs: impl FnOnce() -> Vec<String>, expected: impl FnOnce() -> String, got: impl FnOnce() -> String) {
        self.attempted += 1;
        if pass {
            self.passed += 1;
        } else if self.failures.len() < self.max_witnesses {
            self.failures.push(FailureWitness {
                inputs: inputs(),
                expected: expected(),
                got: got(),
            });
        } else {
            self.failures.push(FailureWitness {
                inputs: vec!["(witness elided)".into()],
                expected: String::new(),
                got: String::new(),
            });
        }
    }

    pub fn simple_case(&mut self, pass: bool, label: &str, expected: &str, got: &str) {
        let (label, expected, got) = (label.to_string(), expected.to_string(), got.to_string());
        self.case(pass, move || vec![label], move || expected, move || got);
    }

    pub fn mark_inconclusive(&mut self) {
        self.inconclusive = true;
    }

    pub fn finish(self) -> VerifyReport {
        let attempted = self.attempted;
        let passed = self.passed;
        debug_assert_eq!(passed + self.failures.len() as u64, attempted);
        VerifyReport {
            check: self.check,
            params: self.params,
            attempted,
            passed,
            failures: self.failures,
            inconclusive: self.inconclusive,
            wall_ms: self.started.elapsed().as_millis(),
        }
    }
}
