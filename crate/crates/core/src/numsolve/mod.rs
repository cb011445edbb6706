//! Closed-form solution of the singular T5, T3 and U1 branches, the
//! appendix coefficient evaluators, discriminant conditions and
//! parameter-plane sweeps. Roots are extracted in closed form and then
//! Newton-refined on the defining equations of each subsystem.

mod appendix;
mod branches;
mod config;
mod newton;
mod sweep;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use appendix::{appendix_coefficients, CoefficientTable};
pub use branches::{
    branch_conditions, solve_k1, solve_k2, solve_k2_with, solve_t3, solve_t5, solve_u1, t_delta,
    t_root_counts, u1_angle7, Arm, ArmTuple, BranchSolution, K2Tuple, KCoefficients, RootCount,
    Z1_TOLERANCE,
};
pub use config::{Configuration, ExactConfiguration};
pub use newton::refine_on_variety;
pub use sweep::{region_sweep, sweep_csv, SweepAxis, SweepGrid, SweepNode};

use crate::exactalg::parse_rational;
use crate::mechanism::MechanismParameters;

/// Relative size below which a discriminant counts as zero.
pub const ZERO_BAND: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("degenerate branch: {0}")]
    Degenerate(String),
    #[error("no real roots: {0}")]
    NoRealRoots(String),
    #[error("branch does not apply: {0}")]
    InvalidBranch(String),
    #[error("missing input: {0}")]
    MissingInput(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

/// The branches with closed-form solvers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    T5,
    T3,
    U1,
}

impl Branch {
    pub fn label(self) -> &'static str {
        match self {
            Branch::T5 => "T5",
            Branch::T3 => "T3",
            Branch::U1 => "U1",
        }
    }

    pub fn solve(
        self,
        p: &crate::mechanism::NumericParameters,
    ) -> Result<BranchSolution, SolveError> {
        match self {
            Branch::T5 => solve_t5(p),
            Branch::T3 => solve_t3(p),
            Branch::U1 => solve_u1(p),
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Branch {
    type Err = SolveError;

    fn from_str(s: &str) -> Result<Branch, SolveError> {
        match s.to_ascii_lowercase().as_str() {
            "t5" => Ok(Branch::T5),
            "t3" => Ok(Branch::T3),
            "u1" => Ok(Branch::U1),
            _ => Err(SolveError::MissingInput(format!("unknown branch `{s}`"))),
        }
    }
}

/// Sign conditions governing real roots on a branch.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchConditions {
    /// `f2² - 4 f1 f3 f4`, the discriminant of the s7 quadratic.
    pub discriminant: Option<f64>,
    /// `f2² + 4 f1 f3 f4` as printed.
    pub discriminant_printed: Option<f64>,
    /// `E = n1 n2`, one value per `(c3, s3)` root.
    pub e: Vec<f64>,
    /// `n3 (4 a1 a2 - n3)`.
    pub u1_quad: Option<f64>,
    /// `t5 t6 t7 t8`.
    pub c4_product: Option<f64>,
}

/// `+1.7e-05` style: sign, `digits` decimals, two-digit exponent.
pub fn fmt_sci(x: f64, digits: usize) -> String {
    let s = format!("{:+.*e}", digits, x);
    match s.split_once('e') {
        Some((m, e)) => {
            let (sign, d) = match e.strip_prefix('-') {
                Some(d) => ("-", d),
                None => ("+", e),
            };
            format!("{m}e{sign}{d:0>2}")
        }
        None => s,
    }
}

/// The rational example: parameters and the configuration with rational
/// cosines and sines on the `a4 = a5 = a6 = a7` component.
pub fn rational_singularity() -> (MechanismParameters, ExactConfiguration) {
    let q = |t: &str| parse_rational(t).expect("literal");
    let c = ["0", "3/5", "4/5", "0", "3/5", "0", "4/5"].map(q);
    let s = ["1", "-4/5", "-3/5", "-1", "4/5", "1", "3/5"].map(q);
    (
        MechanismParameters::rational_example(),
        ExactConfiguration { c, s },
    )
}

#[cfg(test)]
mod tests;
