//! Certificates for claimed singular configurations: constraint
//! residuals, numeric Jacobian rank and exact rank over the rationals.

mod exact;
mod report;
mod svd;

use std::sync::OnceLock;

pub use exact::{
    exact_jacobian, exact_rank, exact_residuals, lemma1_det_a_check, lemma1_elimination,
    lemma1_elimination_check, lemma1_matrix, lemma1_report, Lemma1Report, LEMMA1_PRINTED_I46,
};
pub use report::{format_reports, parse_reports, ReportError, SingularityReport};
pub use svd::{lu_solve, rank_from_singular_values, svd, Svd};

use crate::exactalg::Polynomial;
use crate::fitting::{jacobian, PolyMatrix};
use crate::mechanism::{configuration_variables, full_system, NumericParameters};
use crate::numsolve::Configuration;

/// Singular values at most this fraction of the largest count as zero.
pub const DEFAULT_TOL_RATIO: f64 = 1e-8;
/// Largest accepted residual ∞-norm for an emitted singularity.
pub const RESIDUAL_GATE: f64 = 1e-10;

struct Model {
    system: Vec<Polynomial>,
    jac: PolyMatrix,
}

fn model() -> &'static Model {
    static MODEL: OnceLock<Model> = OnceLock::new();
    MODEL.get_or_init(|| {
        let system = full_system(None);
        let jac = jacobian(&system, &configuration_variables()).expect("13 x 14 Jacobian");
        Model { system, jac }
    })
}

/// `p1..p13` at the configuration.
pub fn residuals(config: &Configuration, params: &NumericParameters) -> [f64; 13] {
    let pt = config.point(params);
    let mut out = [0.0; 13];
    for (o, p) in out.iter_mut().zip(&model().system) {
        *o = p.eval_f64(&pt);
    }
    out
}

pub fn residual_norm(config: &Configuration, params: &NumericParameters) -> f64 {
    residuals(config, params)
        .iter()
        .fold(0.0, |m, r| m.max(r.abs()))
}

/// The 13 x 14 Jacobian with respect to `c1, s1, ..., c7, s7`.
pub fn jacobian_at(config: &Configuration, params: &NumericParameters) -> Vec<Vec<f64>> {
    model().jac.eval_f64(&config.point(params))
}

/// Rank and singular values of a dense matrix.
pub fn matrix_rank(m: &[Vec<f64>], tol_ratio: f64) -> (usize, Vec<f64>) {
    if m.is_empty() || m[0].is_empty() {
        return (0, Vec::new());
    }
    let sigma = svd(m).sigma;
    (rank_from_singular_values(&sigma, tol_ratio), sigma)
}

/// Rank of the constraint Jacobian at the configuration.
pub fn numeric_rank(
    config: &Configuration,
    params: &NumericParameters,
    tol_ratio: f64,
) -> (usize, Vec<f64>) {
    matrix_rank(&jacobian_at(config, params), tol_ratio)
}

#[cfg(test)]
mod tests;
