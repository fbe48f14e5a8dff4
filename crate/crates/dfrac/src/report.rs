//! Residual records produced by the identity verifiers.

use std::fmt;

/// One verified identity: which suite, with which parameters, the maximum
/// absolute residual observed, and pass/fail at the tolerance.
#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub suite: String,
    pub params: String,
    pub seed: Option<u64>,
    pub residual: f64,
    pub tol: f64,
    pub pass: bool,
}

impl IdentityReport {
    pub fn new(suite: impl Into<String>, params: impl Into<String>, residual: f64, tol: f64) -> Self {
        IdentityReport {
            suite: suite.into(),
            params: params.into(),
            seed: None,
            residual,
            tol,
            pass: residual.is_finite() && residual <= tol,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    /// Re-judges the report against a different tolerance.
    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self.pass = self.residual.is_finite() && self.residual <= tol;
        self
    }

    /// `suite,params,seed,residual,pass` (params never contain commas).
    pub fn csv_row(&self) -> String {
        let seed = match self.seed {
            Some(s) => s.to_string(),
            None => String::from("-"),
        };
        format!(
            "{},{},{},{:e},{}",
            self.suite, self.params, seed, self.residual, self.pass
        )
    }

    /// Folds another observation of the same identity into this record,
    /// keeping the worst residual and its parameters.
    pub fn merge(&mut self, other: &IdentityReport) {
        if !other.residual.is_finite() || other.residual > self.residual {
            self.residual = other.residual;
            self.params = other.params.clone();
        }
        self.tol = self.tol.min(other.tol);
        self.pass = self.pass && other.pass;
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:28} {:42} residual {:>12.5e} tol {:>8.1e} {}",
            self.suite,
            self.params,
            self.residual,
            self.tol,
            if self.pass { "pass" } else { "FAIL" }
        )
    }
}
