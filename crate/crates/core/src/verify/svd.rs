//! Dense singular values by one-sided Jacobi rotations.

/// `a = u * diag(sigma) * v^T` with `k = min(m, n)` columns in `u`, `v`.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: Vec<Vec<f64>>,
    pub sigma: Vec<f64>,
    pub v: Vec<Vec<f64>>,
}

impl Svd {
    pub fn reconstruct(&self) -> Vec<Vec<f64>> {
        let m = self.u.len();
        let n = self.v.len();
        let mut out = vec![vec![0.0; n]; m];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = (0..self.sigma.len())
                    .map(|k| self.u[i][k] * self.sigma[k] * self.v[j][k])
                    .sum();
            }
        }
        out
    }
}

fn transpose(a: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.first().map_or(0, Vec::len);
    (0..n).map(|j| a.iter().map(|r| r[j]).collect()).collect()
}

/// Singular value decomposition of a row-major `m x n` matrix. Singular
/// values come back non-increasing.
pub fn svd(a: &[Vec<f64>]) -> Svd {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    if m < n {
        let t = svd(&transpose(a));
        return Svd {
            u: t.v,
            sigma: t.sigma,
            v: t.u,
        };
    }
    // Columns of `w` are rotated until mutually orthogonal.
    let mut w: Vec<Vec<f64>> = transpose(a);
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let eps = f64::EPSILON;
    for _sweep in 0..80 {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha: f64 = w[p].iter().map(|x| x * x).sum();
                let beta: f64 = w[q].iter().map(|x| x * x).sum();
                let gamma: f64 = w[p].iter().zip(&w[q]).map(|(x, y)| x * y).sum();
                if gamma == 0.0 || gamma.abs() <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for k in 0..m {
                    let (x, y) = (w[p][k], w[q][k]);
                    w[p][k] = c * x - s * y;
                    w[q][k] = s * x + c * y;
                }
                for row in v.iter_mut() {
                    let (x, y) = (row[p], row[q]);
                    row[p] = c * x - s * y;
                    row[q] = s * x + c * y;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let norms: Vec<f64> = w
        .iter()
        .map(|col| col.iter().map(|x| x * x).sum::<f64>().sqrt())
        .collect();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]).then(i.cmp(&j)));
    let sigma: Vec<f64> = idx.iter().map(|&i| norms[i]).collect();
    let mut u = vec![vec![0.0; n]; m];
    for (k, &i) in idx.iter().enumerate() {
        if norms[i] > 0.0 {
            for r in 0..m {
                u[r][k] = w[i][r] / norms[i];
            }
        }
    }
    let v = v
        .iter()
        .map(|row| idx.iter().map(|&i| row[i]).collect())
        .collect();
    Svd { u, sigma, v }
}

/// Number of singular values above `tol_ratio` times the largest.
pub fn rank_from_singular_values(sigma: &[f64], tol_ratio: f64) -> usize {
    let top = sigma.first().copied().unwrap_or(0.0);
    if top == 0.0 {
        return 0;
    }
    sigma.iter().filter(|s| **s > tol_ratio * top).count()
}

/// Solves the square system `a x = b` by partial-pivot elimination.
/// Returns `None` when a pivot is exactly zero.
pub fn lu_solve(a: &[Vec<f64>], b: &[f64]) -> Option<Vec<f64>> {
    let n = b.len();
    let mut m: Vec<Vec<f64>> = a.to_vec();
    let mut x = b.to_vec();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if m[piv][col] == 0.0 {
            return None;
        }
        m.swap(col, piv);
        x.swap(col, piv);
        for r in col + 1..n {
            let f = m[r][col] / m[col][col];
            if f != 0.0 {
                for k in col..n {
                    m[r][k] -= f * m[col][k];
                }
                x[r] -= f * x[col];
            }
        }
    }
    for col in (0..n).rev() {
        let s: f64 = (col + 1..n).map(|k| m[col][k] * x[k]).sum();
        x[col] = (x[col] - s) / m[col][col];
    }
    Some(x)
}
