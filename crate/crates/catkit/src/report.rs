//! Law reports.
//!
//! Every validator in this crate is total: it never aborts on a broken law
//! but returns a [`LawReport`] carrying either a pass or the first failing
//! equation together with both of its sides, rendered for inspection.

use std::fmt;

/// A single broken equation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawFailure {
    /// Which law failed, e.g. `"associativity"` or `"cocycle"`.
    pub law: String,
    /// Where it failed, e.g. the object triple or the morphism pair.
    pub location: String,
    /// Rendering of the left-hand side of the equation.
    pub lhs: String,
    /// Rendering of the right-hand side of the equation.
    pub rhs: String,
}

impl fmt::Display for LawFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} fails at {}: lhs = {} , rhs = {}",
            self.law, self.location, self.lhs, self.rhs
        )
    }
}

/// Outcome of a validator: number of equations checked plus the first
/// failure, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawReport {
    pub checks: usize,
    pub failure: Option<LawFailure>,
}

impl LawReport {
    pub fn pass(checks: usize) -> Self {
        LawReport {
            checks,
            failure: None,
        }
    }

    pub fn fail(
        checks: usize,
        law: impl Into<String>,
        location: impl Into<String>,
        lhs: impl Into<String>,
        rhs: impl Into<String>,
    ) -> Self {
        LawReport {
            checks,
            failure: Some(LawFailure {
                law: law.into(),
                location: location.into(),
                lhs: lhs.into(),
                rhs: rhs.into(),
            }),
        }
    }

    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    /// Chain another validation after this one, keeping the first failure.
    pub fn and_then(self, next: impl FnOnce() -> LawReport) -> LawReport {
        if self.failure.is_some() {
            return self;
        }
        let mut rest = next();
        rest.checks += self.checks;
        rest
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "pass ({} equations checked)", self.checks),
            Some(failure) => write!(f, "FAIL after {} checks: {}", self.checks, failure),
        }
    }
}
