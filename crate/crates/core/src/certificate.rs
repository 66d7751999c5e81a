//! Structured verdicts returned by the oracles.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Equivalent,
    Distinct,
    Contradiction,
}

impl Verdict {
    /// Distinct and contradiction are the negative verdicts.
    pub fn is_negative(self) -> bool {
        !matches!(self, Verdict::Equivalent)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Innermost pole at which the two profiles disagree.
    PoleMismatch {
        location: f64,
        weight_p: u32,
        weight_q: u32,
    },
    /// All poles matched but the smooth remainder is not zero.
    ProfileResidual { t: f64, difference: f64 },
    /// A family member differs from the first member.
    MemberMismatch { index: usize, witness: Box<Witness> },
    /// The K-eigenvalue data differ between family members.
    KappaMismatch { index: usize },
    /// Best candidate found by the residual minimization.
    ResidualFloor {
        alpha: f64,
        parameter: f64,
        lambda2_initial: f64,
        residual: f64,
    },
    /// `lambda2 = 0` forced, but the Riccati equation then needs the Jacobi
    /// eigenvalue to vanish.
    ZeroBranch { jacobi_eigenvalue: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub verdict: Verdict,
    pub residual: f64,
    pub tolerance: f64,
    pub witness: Option<Witness>,
}

impl Certificate {
    pub fn equivalent(residual: f64, tolerance: f64) -> Self {
        Certificate {
            verdict: Verdict::Equivalent,
            residual,
            tolerance,
            witness: None,
        }
    }

    pub fn distinct(witness: Witness, residual: f64, tolerance: f64) -> Self {
        Certificate {
            verdict: Verdict::Distinct,
            residual,
            tolerance,
            witness: Some(witness),
        }
    }

    pub fn contradiction(witness: Witness, residual: f64, tolerance: f64) -> Self {
        Certificate {
            verdict: Verdict::Contradiction,
            residual,
            tolerance,
            witness: Some(witness),
        }
    }

    /// `equivalent => residual <= tolerance`; `distinct => witness present`.
    pub fn is_well_formed(&self) -> bool {
        match self.verdict {
            Verdict::Equivalent => self.residual <= self.tolerance,
            Verdict::Distinct => self.witness.is_some(),
            Verdict::Contradiction => self.residual >= 0.0,
        }
    }
}
