//! Symbolic Jacobians, maximal minors and the singular-locus ideal
//! `I ∪ F_I`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use log::info;
use thiserror::Error;

use crate::exactalg::{AlgebraError, MonomialOrder, Polynomial, Rational, Universe, Variable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FittingError {
    #[error("matrix has {rows} rows but only {cols} columns")]
    TooManyRows { rows: usize, cols: usize },
    #[error("matrix dimensions must be positive and match the entry count")]
    BadShape,
    #[error("more than 64 columns")]
    TooManyColumns,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

pub type Result<T> = std::result::Result<T, FittingError>;

/// Dense row-major matrix of polynomials over one universe.
#[derive(Clone, PartialEq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Polynomial>) -> Result<PolyMatrix> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(FittingError::BadShape);
        }
        let names = entries[0].universe().names();
        if entries.iter().any(|e| e.universe().names() != names) {
            return Err(AlgebraError::UniverseMismatch.into());
        }
        Ok(PolyMatrix {
            rows,
            cols,
            entries,
        })
    }

    /// Matrix of constants.
    pub fn from_rationals(universe: &Arc<Universe>, rows: &[Vec<Rational>]) -> Result<PolyMatrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(FittingError::BadShape);
        }
        let entries = rows
            .iter()
            .flatten()
            .map(|x| Polynomial::constant(universe, x.clone()))
            .collect();
        PolyMatrix::new(r, c, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn universe(&self) -> &Arc<Universe> {
        self.entries[0].universe()
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Polynomial] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn nonzeros_in_row(&self, i: usize) -> usize {
        self.row(i).iter().filter(|p| !p.is_zero()).count()
    }

    /// Exact evaluation of every entry; `point` is indexed by universe.
    pub fn eval_exact(&self, point: &[Rational]) -> Vec<Vec<Rational>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|p| p.eval_exact(point)).collect())
            .collect()
    }

    pub fn eval_f64(&self, point: &[f64]) -> Vec<Vec<f64>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|p| p.eval_f64(point)).collect())
            .collect()
    }

    /// Row-major text, one row per line with entries separated by `;`.
    pub fn to_text(&self, ord: &MonomialOrder) -> String {
        let mut out = String::new();
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|p| p.to_text(ord)).collect();
            out.push_str(&row.join("; "));
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PolyMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|p| p.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// `J[i][j] = ∂polys[i]/∂vars[j]`.
pub fn jacobian(polys: &[Polynomial], vars: &[Variable]) -> Result<PolyMatrix> {
    let entries = polys
        .iter()
        .flat_map(|p| vars.iter().map(move |&v| p.derivative(v)))
        .collect();
    PolyMatrix::new(polys.len(), vars.len(), entries)
}

/// `k`-subsets of `0..n` in lexicographic order.
pub fn column_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

fn mask_of(cols: &[usize]) -> u64 {
    cols.iter().fold(0u64, |m, &c| m | (1u64 << c))
}

/// Laplace expansion with rows taken sparsest first and sub-determinants
/// memoized by column set.
struct Expander<'a> {
    m: &'a PolyMatrix,
    order: Vec<usize>,
    memo: HashMap<u64, Polynomial>,
}

impl Expander<'_> {
    fn det(&mut self, cols: u64) -> Polynomial {
        let k = self.m.rows - cols.count_ones() as usize;
        if k == self.m.rows {
            return Polynomial::one(self.m.universe());
        }
        if let Some(p) = self.memo.get(&cols) {
            return p.clone();
        }
        let r = self.order[k];
        let mut acc = Polynomial::zero(self.m.universe());
        let mut pos = 0usize;
        for j in 0..self.m.cols {
            if cols & (1 << j) == 0 {
                continue;
            }
            let e = self.m.get(r, j);
            if !e.is_zero() {
                let sub = self.det(cols & !(1 << j));
                if !sub.is_zero() {
                    let t = e * &sub;
                    acc = if pos.is_multiple_of(2) {
                        &acc + &t
                    } else {
                        &acc - &t
                    };
                }
            }
            pos += 1;
        }
        self.memo.insert(cols, acc.clone());
        acc
    }
}

/// Sign of the permutation `p` of `0..n`.
fn perm_sign(p: &[usize]) -> i64 {
    let mut seen = vec![false; p.len()];
    let mut sign = 1;
    for i in 0..p.len() {
        if seen[i] {
            continue;
        }
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = p[j];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

fn check_shape(m: &PolyMatrix) -> Result<()> {
    if m.rows > m.cols {
        return Err(FittingError::TooManyRows {
            rows: m.rows,
            cols: m.cols,
        });
    }
    if m.cols > 64 {
        return Err(FittingError::TooManyColumns);
    }
    Ok(())
}

/// All `C(cols, rows)` maximal minors, column subsets in lexicographic
/// order. Zero minors are included.
pub fn maximal_minors(m: &PolyMatrix) -> Result<Vec<Polynomial>> {
    check_shape(m)?;
    let mut order: Vec<usize> = (0..m.rows).collect();
    order.sort_by_key(|&i| (m.nonzeros_in_row(i), i));
    let sign = perm_sign(&order);
    let mut ex = Expander {
        m,
        order,
        memo: HashMap::new(),
    };
    Ok(column_subsets(m.cols, m.rows)
        .iter()
        .map(|cols| {
            let d = ex.det(mask_of(cols));
            if sign < 0 {
                -d
            } else {
                d
            }
        })
        .collect())
}

/// Cross-check path: plain cofactor expansion along the first row, no
/// memoization.
pub fn maximal_minors_naive(m: &PolyMatrix) -> Result<Vec<Polynomial>> {
    check_shape(m)?;
    fn det(m: &PolyMatrix, row: usize, cols: &[usize]) -> Polynomial {
        if cols.is_empty() {
            return Polynomial::one(m.universe());
        }
        let mut acc = Polynomial::zero(m.universe());
        for (pos, &j) in cols.iter().enumerate() {
            let rest: Vec<usize> = cols.iter().copied().filter(|&c| c != j).collect();
            let t = m.get(row, j) * &det(m, row + 1, &rest);
            acc = if pos % 2 == 0 { &acc + &t } else { &acc - &t };
        }
        acc
    }
    Ok(column_subsets(m.cols, m.rows)
        .iter()
        .map(|cols| det(m, 0, cols))
        .collect())
}

/// `gens` followed by the nonzero maximal minors of their Jacobian with
/// respect to `config_vars`.
pub fn singular_ideal(gens: &[Polynomial], config_vars: &[Variable]) -> Result<Vec<Polynomial>> {
    let j = jacobian(gens, config_vars)?;
    let minors = maximal_minors(&j)?;
    let total = minors.len();
    let mut out = gens.to_vec();
    out.extend(minors.into_iter().filter(|p| !p.is_zero()));
    let dropped = total - (out.len() - gens.len());
    if dropped > 0 {
        info!("singular_ideal: dropped {dropped} of {total} zero minors");
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
