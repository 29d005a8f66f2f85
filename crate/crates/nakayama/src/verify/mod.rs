//! Check suites shared by the command-line tool and the acceptance tests.
//!
//! Every suite returns [`CheckRecord`]s; a record aggregates all samples of
//! one law on one structure and carries a witness when it fails.

mod criteria;
mod families;
mod laws;
pub mod sample;

use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{Algebra, Element, LinearMap};
use crate::field::Field;
use crate::linalg::Matrix;

pub use criteria::{rng_for, run_criterion, Criterion, CriterionOutcome, CRITERIA};
pub use families::{
    crossed_product_checks, crossed_suite, cyclic_suite, divergence_obstruction_suite, grassmann_suite, liouville_checks, liouville_suite, qci_suite, reduction_suite, separable_suite,
    trivial_extension_suite,
};
pub use laws::{
    degree_fits, divergence_suite, expected_symmetric, frobenius_suite, hochschild_suite, homology_suite,
    jacobian_suite, main_theorem_suite, structure_suite, SuiteOptions,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Inconclusive,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Inconclusive => "inconclusive",
            Status::Fail => "fail",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub law: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub witness: Value,
}

/// Worst status among the records (`Pass` when empty).
pub fn overall(records: &[CheckRecord]) -> Status {
    records.iter().map(|r| r.status).max().unwrap_or(Status::Pass)
}

/// One law checked on many samples; keeps the first failure.
pub struct Law {
    id: String,
    law: &'static str,
    samples: usize,
    failure: Option<Value>,
    inconclusive: Option<Value>,
    note: Value,
}

impl Law {
    pub fn new(scope: &str, law: &'static str) -> Self {
        Law { id: format!("{scope}/{law}"), law, samples: 0, failure: None, inconclusive: None, note: Value::Null }
    }

    pub fn check(&mut self, ok: bool, witness: impl FnOnce() -> Value) {
        self.samples += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(witness());
        }
    }

    /// Record an operation that should have succeeded.
    pub fn check_result<T, E: fmt::Display>(&mut self, res: Result<T, E>) -> Option<T> {
        match res {
            Ok(v) => Some(v),
            Err(e) => {
                self.check(false, || json!({ "error": e.to_string() }));
                None
            }
        }
    }

    pub fn inconclusive(&mut self, witness: Value) {
        self.samples += 1;
        if self.inconclusive.is_none() {
            self.inconclusive = Some(witness);
        }
    }

    /// Extra data attached to a passing record.
    pub fn note(&mut self, note: Value) {
        self.note = note;
    }

    pub fn finish(self) -> CheckRecord {
        let (status, witness) = match (self.failure, self.inconclusive) {
            (Some(w), _) => (Status::Fail, w),
            (None, Some(w)) => (Status::Inconclusive, w),
            (None, None) => {
                let mut w = json!({ "samples": self.samples });
                if let Value::Object(extra) = self.note {
                    w.as_object_mut().expect("object").extend(extra);
                }
                (Status::Pass, w)
            }
        };
        CheckRecord { id: self.id, law: self.law.to_string(), status, witness }
    }
}

pub(crate) fn show<F: Field>(alg: &Algebra<F>, a: &Element<F>) -> Value {
    Value::String(alg.format_element(a))
}

pub(crate) fn show_matrix<F: Field>(m: &Matrix<F>) -> Value {
    Value::Array(
        m.to_rows()
            .into_iter()
            .map(|r| Value::Array(r.into_iter().map(|x| Value::String(x.to_string())).collect()))
            .collect(),
    )
}

pub(crate) fn show_map<F: Field>(u: &LinearMap<F>) -> Value {
    show_matrix(u.matrix())
}

pub(crate) fn show_scalars<F: Field>(v: &[F]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

/// A failing record for a structure that could not even be set up.
pub(crate) fn setup_failure(scope: &str, law: &'static str, err: impl fmt::Display) -> CheckRecord {
    CheckRecord { id: format!("{scope}/{law}"), law: law.to_string(), status: Status::Fail, witness: json!({ "error": err.to_string() }) }
}
