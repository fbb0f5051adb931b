use serde::Serialize;

use crate::params::Family;
use crate::partitions::Partition;

/// One nonzero residual entry (or one measured defect) of a check.
#[derive(Clone, Debug, Serialize)]
pub struct ResidualTerm {
    pub label: String,
    pub value: String,
    pub magnitude: f64,
}

impl ResidualTerm {
    pub fn new(label: impl Into<String>, value: impl std::fmt::Display, magnitude: f64) -> Self {
        ResidualTerm { label: label.into(), value: value.to_string(), magnitude }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Conditions {
    pub self_dual: bool,
    /// The family's parameter condition was checked before running.
    pub enforced: bool,
    /// The check ran with the condition failing, by request.
    pub overridden: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub identity: String,
    pub family: Family,
    pub lambda: Option<Partition>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<Partition>,
    pub r: Option<usize>,
    pub pass: bool,
    pub residual_terms: Vec<ResidualTerm>,
    pub conditions: Conditions,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl VerificationReport {
    pub fn new(identity: &str, family: Family) -> Self {
        VerificationReport {
            identity: identity.into(),
            family,
            lambda: None,
            mu: None,
            r: None,
            pass: true,
            residual_terms: Vec::new(),
            conditions: Conditions::default(),
            note: None,
        }
    }

    pub fn with_lambda(mut self, lambda: &Partition) -> Self {
        self.lambda = Some(lambda.clone());
        self
    }

    pub fn with_mu(mut self, mu: &Partition) -> Self {
        self.mu = Some(mu.clone());
        self
    }

    pub fn with_r(mut self, r: usize) -> Self {
        self.r = Some(r);
        self
    }

    /// Records a failing entry.
    pub fn fail(&mut self, term: ResidualTerm) {
        self.pass = false;
        self.residual_terms.push(term);
    }

    /// Records an informational entry that does not affect `pass`.
    pub fn record(&mut self, term: ResidualTerm) {
        self.residual_terms.push(term);
    }
}
