use rayon::prelude::*;

use crate::mechanism::NumericParameters;

use super::branches::{solve_k2_with, t_delta, Arm};
use super::{fmt_sci, u1_angle7, Branch, SolveError, ZERO_BAND};

/// `start, start + step, ...` up to `stop` inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepAxis {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl SweepAxis {
    pub fn len(&self) -> usize {
        ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        self.step <= 0.0 || self.stop < self.start
    }

    pub fn value(&self, i: usize) -> f64 {
        self.start + i as f64 * self.step
    }
}

/// A grid over `(a1, a2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepGrid {
    pub a1: SweepAxis,
    pub a2: SweepAxis,
}

impl Default for SweepGrid {
    fn default() -> Self {
        let axis = SweepAxis {
            start: 0.005,
            stop: 0.08,
            step: 0.00025,
        };
        SweepGrid { a1: axis, a2: axis }
    }
}

/// Condition values at one grid node, with their signs (`0` inside the
/// zero band). T branches carry `E` per `(c3, s3)` root; U1 carries
/// `n3 (4 a1 a2 - n3)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepNode {
    pub a1: f64,
    pub a2: f64,
    pub values: Vec<f64>,
    pub signs: Vec<i8>,
}

fn sign(v: f64, scale: f64) -> i8 {
    if v.abs() <= ZERO_BAND * scale {
        0
    } else if v < 0.0 {
        -1
    } else {
        1
    }
}

/// Evaluates the branch conditions over the grid. `fixed` supplies every
/// parameter but `a1`, `a2`. Nodes are ordered by `a1`, then `a2`.
pub fn region_sweep(
    branch: Branch,
    grid: &SweepGrid,
    fixed: &NumericParameters,
) -> Result<Vec<SweepNode>, SolveError> {
    if grid.a1.is_empty() || grid.a2.is_empty() {
        return Err(SolveError::MissingInput("empty sweep axis".into()));
    }
    // The targets (x, y) of the arm do not depend on a1, a2.
    let targets: Vec<(f64, f64)> = match branch {
        Branch::T5 | Branch::T3 => {
            let b = crate::mechanism::t_branch(if branch == Branch::T5 { 5 } else { 3 })
                .expect("T index");
            solve_k2_with(t_delta(&b, fixed), fixed)?
                .iter()
                .map(|t| {
                    let arm = Arm::k1(fixed, t.c3, t.s3);
                    (arm.x, arm.y)
                })
                .collect()
        }
        Branch::U1 => {
            let (c7, s7) = u1_angle7(fixed)?;
            let arm = Arm::l1(fixed, c7, s7);
            vec![(arm.x, arm.y)]
        }
    };
    let n1 = grid.a1.len();
    let n2 = grid.a2.len();
    let nodes = (0..n1 * n2)
        .into_par_iter()
        .map(|k| {
            let a1 = grid.a1.value(k / n2);
            let a2 = grid.a2.value(k % n2);
            let mut values = Vec::new();
            let mut signs = Vec::new();
            for &(x, y) in &targets {
                let arm = Arm { a1, a2, x, y };
                let v = if branch == Branch::U1 {
                    -arm.e()
                } else {
                    arm.e()
                };
                values.push(v);
                signs.push(sign(v, arm.e_scale()));
            }
            SweepNode {
                a1,
                a2,
                values,
                signs,
            }
        })
        .collect();
    Ok(nodes)
}

/// `format=1`, a header row, then one row per node.
pub fn sweep_csv(branch: Branch, nodes: &[SweepNode]) -> String {
    let width = nodes.first().map_or(0, |n| n.values.len());
    let mut out = String::from("format=1\n");
    let header: Vec<String> = match branch {
        Branch::U1 => vec!["a1".into(), "a2".into(), "Q".into(), "sign".into()],
        _ => {
            let mut h = vec!["a1".to_string(), "a2".to_string()];
            h.extend((1..=width).map(|i| format!("E{i}")));
            h.extend((1..=width).map(|i| format!("sign{i}")));
            h
        }
    };
    out.push_str(&header.join(","));
    out.push('\n');
    for n in nodes {
        let mut row = vec![format!("{:.5}", n.a1), format!("{:.5}", n.a2)];
        row.extend(n.values.iter().map(|v| fmt_sci(*v, 6)));
        row.extend(n.signs.iter().map(|s| s.to_string()));
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}
