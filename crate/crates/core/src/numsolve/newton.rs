use crate::mechanism::NumericParameters;
use crate::verify::{jacobian_at, lu_solve, residuals};

use super::Configuration;

fn inf_norm(r: &[f64]) -> f64 {
    r.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Square Newton iteration. A step is kept only if it lowers the residual
/// ∞-norm, so a singular or stalled Jacobian leaves `x` where it was.
pub(crate) fn newton<F, J>(x: &mut Vec<f64>, f: F, jac: J, max_iter: usize)
where
    F: Fn(&[f64]) -> Vec<f64>,
    J: Fn(&[f64]) -> Vec<Vec<f64>>,
{
    let mut r = f(x);
    let mut norm = inf_norm(&r);
    for _ in 0..max_iter {
        if norm == 0.0 {
            break;
        }
        let neg: Vec<f64> = r.iter().map(|v| -v).collect();
        let Some(dx) = lu_solve(&jac(x), &neg) else {
            break;
        };
        let cand: Vec<f64> = x.iter().zip(&dx).map(|(a, d)| a + d).collect();
        let rc = f(&cand);
        let nc = inf_norm(&rc);
        if nc >= norm {
            break;
        }
        *x = cand;
        r = rc;
        norm = nc;
    }
}

/// Minimum-norm Gauss-Newton steps onto the constraint variety.
pub fn refine_on_variety(
    config: &Configuration,
    params: &NumericParameters,
    max_iter: usize,
) -> Configuration {
    let mut cur = *config;
    let mut norm = inf_norm(&residuals(&cur, params));
    for _ in 0..max_iter {
        if norm < 1e-15 {
            break;
        }
        let r = residuals(&cur, params);
        let j = jacobian_at(&cur, params);
        let jjt: Vec<Vec<f64>> = j
            .iter()
            .map(|a| {
                j.iter()
                    .map(|b| a.iter().zip(b).map(|(x, y)| x * y).sum())
                    .collect()
            })
            .collect();
        let neg: Vec<f64> = r.iter().map(|v| -v).collect();
        let Some(z) = lu_solve(&jjt, &neg) else {
            break;
        };
        let x = cur.to_vec();
        let step: Vec<f64> = (0..x.len())
            .map(|k| x[k] + j.iter().zip(&z).map(|(row, zi)| row[k] * zi).sum::<f64>())
            .collect();
        let cand = Configuration::from_slice(&step);
        let nc = inf_norm(&residuals(&cand, params));
        if nc >= norm {
            break;
        }
        cur = cand;
        norm = nc;
    }
    cur
}
