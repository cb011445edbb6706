use crate::mechanism::{t_branch, u_branch, NumericParameters, TBranch};
use crate::verify::SingularityReport;

use super::newton::newton;
use super::{fmt_sci, Branch, BranchConditions, Configuration, SolveError, ZERO_BAND};

/// `(c3, s3, c7, s7)` from the K2 equations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct K2Tuple {
    pub c3: f64,
    pub s3: f64,
    pub c7: f64,
    pub s7: f64,
}

/// `(c1, s1, c2, s2)` of the two-rod arm from the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArmTuple {
    pub c1: f64,
    pub s1: f64,
    pub c2: f64,
    pub s2: f64,
}

/// How many real roots a quadratic condition admits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootCount {
    Two,
    Double,
    None,
}

impl RootCount {
    pub fn count(self) -> usize {
        match self {
            RootCount::Two => 2,
            RootCount::Double => 1,
            RootCount::None => 0,
        }
    }

    /// Roots exist when `value <= 0`; `|value| <= band * scale` is a double
    /// root.
    pub fn from_nonpositive(value: f64, scale: f64, band: f64) -> RootCount {
        if value.abs() <= band * scale {
            RootCount::Double
        } else if value < 0.0 {
            RootCount::Two
        } else {
            RootCount::None
        }
    }
}

/// The `f1..f5` of the s7 quadratic for a K2-type system
/// `delta*s7 + a3*s3 + b1 - w1 = 0`, `-delta*c7 - a3*c3 + b2 - w2 = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KCoefficients {
    pub f1: f64,
    pub f2: f64,
    pub f3: f64,
    pub f4: f64,
    pub f5: f64,
}

impl KCoefficients {
    pub fn new(delta: f64, p: &NumericParameters) -> KCoefficients {
        let a3 = p.a[2];
        let (b1, b2) = (p.b1 - p.w1, p.b2 - p.w2);
        let r2 = b1 * b1 + b2 * b2;
        let f5 = a3 * a3 - delta * delta - r2;
        KCoefficients {
            f1: 4.0 * delta * delta * r2,
            f2: -4.0 * b1 * delta * f5,
            f3: r2 + 2.0 * b2 * delta - a3 * a3 + delta * delta,
            f4: r2 - 2.0 * b2 * delta - a3 * a3 + delta * delta,
            f5,
        }
    }

    /// Discriminant of `f1 s7² + f2 s7 + f3 f4`.
    pub fn discriminant(&self) -> f64 {
        self.f2 * self.f2 - 4.0 * self.f1 * self.f3 * self.f4
    }

    /// The printed `f2² + 4 f1 f3 f4`.
    pub fn discriminant_printed(&self) -> f64 {
        self.f2 * self.f2 + 4.0 * self.f1 * self.f3 * self.f4
    }

    fn scale(&self) -> f64 {
        self.f2 * self.f2 + (4.0 * self.f1 * self.f3 * self.f4).abs()
    }
}

fn k2_residual(delta: f64, p: &NumericParameters, x: &[f64]) -> Vec<f64> {
    let a3 = p.a[2];
    let (c3, s3, c7, s7) = (x[0], x[1], x[2], x[3]);
    vec![
        delta * s7 + a3 * s3 + p.b1 - p.w1,
        -delta * c7 - a3 * c3 + p.b2 - p.w2,
        c3 * c3 + s3 * s3 - 1.0,
        c7 * c7 + s7 * s7 - 1.0,
    ]
}

fn k2_jacobian(delta: f64, p: &NumericParameters, x: &[f64]) -> Vec<Vec<f64>> {
    let a3 = p.a[2];
    vec![
        vec![0.0, a3, 0.0, delta],
        vec![-a3, 0.0, -delta, 0.0],
        vec![2.0 * x[0], 2.0 * x[1], 0.0, 0.0],
        vec![0.0, 0.0, 2.0 * x[2], 2.0 * x[3]],
    ]
}

/// Quadratic roots of `a x² + b x + c`, ascending; one root when the
/// discriminant is inside the zero band.
fn quadratic(a: f64, b: f64, c: f64, disc: f64, scale: f64) -> Vec<f64> {
    if disc.abs() <= ZERO_BAND * scale {
        return vec![-b / (2.0 * a)];
    }
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    let (x1, x2) = if q == 0.0 { (0.0, 0.0) } else { (q / a, c / q) };
    vec![x1.min(x2), x1.max(x2)]
}

/// Solves a K2-type system with the given `delta`. Tuples are sorted by
/// `s7` ascending, ties by `c7`.
pub fn solve_k2_with(delta: f64, p: &NumericParameters) -> Result<Vec<K2Tuple>, SolveError> {
    let a3 = p.a[2];
    let (b1, b2) = (p.b1 - p.w1, p.b2 - p.w2);
    let r = b1.hypot(b2);
    let lengths = p.a[3].abs() + p.a[4].abs();
    if delta.abs() <= ZERO_BAND * lengths {
        return Err(SolveError::Degenerate(
            "a4 = a5: the s7 quadratic vanishes and solutions need |b - w| = a3".into(),
        ));
    }
    if r == 0.0 {
        return Err(SolveError::Degenerate("b = w".into()));
    }
    let k = KCoefficients::new(delta, p);
    let mut out = Vec::new();
    if b2.abs() >= b1.abs() {
        let disc = k.discriminant();
        if disc < -ZERO_BAND * k.scale() {
            return Err(SolveError::NoRealRoots(format!(
                "D = {} < 0",
                fmt_sci(disc, 3)
            )));
        }
        for s7 in quadratic(k.f1, k.f2, k.f3 * k.f4, disc, k.scale()) {
            let c7 = (2.0 * b1 * delta * s7 - k.f5) / (2.0 * b2 * delta);
            out.push((c7, s7));
        }
    } else {
        // Near w2 = b2 the s7 roots merge; solve for c7 instead from
        // b1 s7 - b2 c7 = kappa and c7² + s7² = 1.
        let kappa = k.f5 / (2.0 * delta);
        let (qa, qb, qc) = (r * r, 2.0 * kappa * b2, kappa * kappa - b1 * b1);
        let disc = qb * qb - 4.0 * qa * qc;
        let scale = qb * qb + (4.0 * qa * qc).abs();
        if disc < -ZERO_BAND * scale {
            return Err(SolveError::NoRealRoots(format!(
                "D = {} < 0",
                fmt_sci(k.discriminant(), 3)
            )));
        }
        for c7 in quadratic(qa, qb, qc, disc, scale) {
            out.push((c7, (kappa + b2 * c7) / b1));
        }
    }
    let out: Vec<[f64; 4]> = out
        .into_iter()
        .map(|(c7, s7)| [(b2 - delta * c7) / a3, (-b1 - delta * s7) / a3, c7, s7])
        .collect();
    let mut tuples: Vec<K2Tuple> = out
        .into_iter()
        .map(|x| {
            let mut x = x.to_vec();
            newton(
                &mut x,
                |v| k2_residual(delta, p, v),
                |v| k2_jacobian(delta, p, v),
                20,
            );
            K2Tuple {
                c3: x[0],
                s3: x[1],
                c7: x[2],
                s7: x[3],
            }
        })
        .collect();
    tuples.sort_by(|a, b| a.s7.total_cmp(&b.s7).then(a.c7.total_cmp(&b.c7)));
    Ok(tuples)
}

/// The K2 system of the T5 branch.
pub fn solve_k2(p: &NumericParameters) -> Result<Vec<K2Tuple>, SolveError> {
    solve_k2_with(p.a[3] - p.a[4], p)
}

/// The arm equations `a1 c1 - a2 (c1 c2 - s1 s2) = x`,
/// `a1 s1 - a2 (s1 c2 + c1 s2) = y` and the two circles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arm {
    pub a1: f64,
    pub a2: f64,
    pub x: f64,
    pub y: f64,
}

impl Arm {
    /// Target of the K1 system for a given `(c3, s3)`.
    pub fn k1(p: &NumericParameters, c3: f64, s3: f64) -> Arm {
        Arm {
            a1: p.a[0],
            a2: p.a[1],
            x: p.a[2] * s3 + p.b1,
            y: p.b2 - p.a[2] * c3,
        }
    }

    /// Target of the L1 system for a given `(c7, s7)`.
    pub fn l1(p: &NumericParameters, c7: f64, s7: f64) -> Arm {
        Arm {
            a1: p.a[0],
            a2: p.a[1],
            x: p.b1 - p.a[2] * s7,
            y: p.b2 + p.a[2] * c7,
        }
    }

    /// `d0` (or `n4`): squared distance the arm has to span.
    pub fn d0(&self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    pub fn n1(&self) -> f64 {
        (self.a1 + self.a2).powi(2) - self.d0()
    }

    pub fn n2(&self) -> f64 {
        (self.a1 - self.a2).powi(2) - self.d0()
    }

    /// `E = n1 n2`; real roots need `E <= 0`.
    pub fn e(&self) -> f64 {
        self.n1() * self.n2()
    }

    /// Size of the terms of `E` for the zero band.
    pub fn e_scale(&self) -> f64 {
        let d0 = self.d0();
        let s = self.a1 * self.a1 + self.a2 * self.a2;
        let m = self.a1 * self.a1 - self.a2 * self.a2;
        d0 * d0 + 2.0 * s * d0 + m * m
    }

    pub fn root_count(&self, band: f64) -> RootCount {
        RootCount::from_nonpositive(self.e(), self.e_scale(), band)
    }

    fn residual(&self, v: &[f64]) -> Vec<f64> {
        let (c1, s1, c2, s2) = (v[0], v[1], v[2], v[3]);
        vec![
            self.a1 * c1 - self.a2 * (c1 * c2 - s1 * s2) - self.x,
            self.a1 * s1 - self.a2 * (s1 * c2 + c1 * s2) - self.y,
            c1 * c1 + s1 * s1 - 1.0,
            c2 * c2 + s2 * s2 - 1.0,
        ]
    }

    fn jacobian(&self, v: &[f64]) -> Vec<Vec<f64>> {
        let (a1, a2) = (self.a1, self.a2);
        let (c1, s1, c2, s2) = (v[0], v[1], v[2], v[3]);
        vec![
            vec![a1 - a2 * c2, a2 * s2, -a2 * c1, a2 * s1],
            vec![-a2 * s2, a1 - a2 * c2, -a2 * s1, -a2 * c1],
            vec![2.0 * c1, 2.0 * s1, 0.0, 0.0],
            vec![0.0, 0.0, 2.0 * c2, 2.0 * s2],
        ]
    }

    /// Up to two tuples, sorted by `s2` ascending.
    pub fn solve(&self) -> Result<Vec<ArmTuple>, SolveError> {
        let (a1, a2) = (self.a1, self.a2);
        let d0 = self.d0();
        let scale = (a1 + a2).powi(2);
        if (a1 - a2).abs() <= ZERO_BAND * (a1 + a2) && d0 <= ZERO_BAND * scale {
            return Err(SolveError::Degenerate(
                "a1 = a2 and d0 = 0: the centre node sits at the origin".into(),
            ));
        }
        let e = self.e();
        let count = self.root_count(ZERO_BAND);
        if count == RootCount::None {
            return Err(SolveError::NoRealRoots(format!(
                "E = {} > 0",
                fmt_sci(e, 1)
            )));
        }
        let c2 = (a1 * a1 + a2 * a2 - d0) / (2.0 * a1 * a2);
        let seeds: Vec<(f64, f64)> = match count {
            RootCount::Double => vec![(c2.signum(), 0.0)],
            _ => {
                let s2 = (-e).sqrt() / (2.0 * a1 * a2);
                vec![(c2, -s2), (c2, s2)]
            }
        };
        let mut out = Vec::new();
        for (c2, s2) in seeds {
            let alpha = a1 - a2 * c2;
            let beta = a2 * s2;
            let mut v = vec![
                (alpha * self.x - beta * self.y) / d0,
                (beta * self.x + alpha * self.y) / d0,
                c2,
                s2,
            ];
            if count == RootCount::Two {
                newton(&mut v, |w| self.residual(w), |w| self.jacobian(w), 20);
            }
            out.push(ArmTuple {
                c1: v[0],
                s1: v[1],
                c2: v[2],
                s2: v[3],
            });
        }
        out.sort_by(|a, b| a.s2.total_cmp(&b.s2));
        Ok(out)
    }
}

/// The K1 system given `(c3, s3)`.
pub fn solve_k1(p: &NumericParameters, c3: f64, s3: f64) -> Result<Vec<ArmTuple>, SolveError> {
    Arm::k1(p, c3, s3).solve()
}

/// Solutions of one branch with the reasons why roots were dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchSolution {
    pub branch: Branch,
    pub reports: Vec<SingularityReport>,
    pub rejected: Vec<String>,
    pub conditions: BranchConditions,
}

impl BranchSolution {
    pub fn reason(&self) -> String {
        self.rejected.join("; ")
    }
}

fn certify(
    branch: Branch,
    config: Configuration,
    p: &NumericParameters,
) -> Result<SingularityReport, SolveError> {
    let r = SingularityReport::certify(branch.label(), config, p);
    if r.passes() {
        Ok(r)
    } else {
        Err(SolveError::Verification(format!(
            "{} root failed: residual {} rank {}",
            branch.label(),
            fmt_sci(r.residual_norm, 3),
            r.numeric_rank
        )))
    }
}

/// `delta` of the K2 system on a T component:
/// `p3 - p1 = delta*s7 + a3*s3 + b1 - w1` after substitution.
pub fn t_delta(b: &TBranch, p: &NumericParameters) -> f64 {
    b.eps as f64 * (p.a[3] * b.s4 as f64 + p.a[4])
}

fn t_factor_value(t: usize, p: &NumericParameters) -> f64 {
    crate::mechanism::singular_variety_factors(crate::mechanism::FactorFamily::F4567, p)[t - 1].1
}

fn t_index(branch: Branch) -> usize {
    match branch {
        Branch::T5 => 5,
        Branch::T3 => 3,
        Branch::U1 => unreachable!("not a T branch"),
    }
}

/// Per K2 root: the arm and its root count at the given zero band.
pub fn t_root_counts(
    branch: Branch,
    p: &NumericParameters,
    band: f64,
) -> Result<Vec<(K2Tuple, RootCount)>, SolveError> {
    let b = t_branch(t_index(branch)).expect("T index");
    let k2 = solve_k2_with(t_delta(&b, p), p)?;
    Ok(k2
        .into_iter()
        .map(|t| (t, Arm::k1(p, t.c3, t.s3).root_count(band)))
        .collect())
}

pub(crate) fn solve_t(branch: Branch, p: &NumericParameters) -> Result<BranchSolution, SolveError> {
    let b = t_branch(t_index(branch)).expect("T index");
    let tv = t_factor_value(b.t, p);
    let lengths: f64 = p.a[3..7].iter().map(|x| x.abs()).sum();
    if tv.abs() > ZERO_BAND * lengths {
        return Err(SolveError::InvalidBranch(format!(
            "t{} = {} is not zero",
            b.t,
            fmt_sci(tv, 3)
        )));
    }
    let conditions = branch_conditions(branch, p);
    let mut sol = BranchSolution {
        branch,
        reports: Vec::new(),
        rejected: Vec::new(),
        conditions,
    };
    let k2 = match solve_k2_with(t_delta(&b, p), p) {
        Ok(k) => k,
        Err(SolveError::NoRealRoots(why)) => {
            sol.rejected.push(why);
            return Ok(sol);
        }
        Err(e) => return Err(e),
    };
    let (s4, s6, eps) = (b.s4 as f64, b.s6 as f64, b.eps as f64);
    for t in k2 {
        let arms = match solve_k1(p, t.c3, t.s3) {
            Ok(a) => a,
            Err(SolveError::NoRealRoots(why)) => {
                sol.rejected.push(why);
                continue;
            }
            Err(e) => return Err(e),
        };
        for a in arms {
            let config = Configuration {
                c: [a.c1, a.c2, t.c3, 0.0, -eps * t.s7, 0.0, t.c7],
                s: [a.s1, a.s2, t.s3, s4, eps * t.c7, s6, t.s7],
            };
            sol.reports.push(certify(branch, config, p)?);
        }
    }
    Ok(sol)
}

/// Singular configurations on the T5 component.
pub fn solve_t5(p: &NumericParameters) -> Result<BranchSolution, SolveError> {
    solve_t(Branch::T5, p)
}

/// Singular configurations on the T3 component.
pub fn solve_t3(p: &NumericParameters) -> Result<BranchSolution, SolveError> {
    solve_t(Branch::T3, p)
}

/// Relative tolerance on `z1` for the U1 branch to apply.
pub const Z1_TOLERANCE: f64 = 1e-6;

/// `(c7, s7)` on U1, normalised onto the unit circle.
pub fn u1_angle7(p: &NumericParameters) -> Result<(f64, f64), SolveError> {
    let (a3, a6, a7) = (p.a[2], p.a[5], p.a[6]);
    let (b1, b2) = (p.b1 - p.w1, p.b2 - p.w2);
    let g = a3 - a6 + a7;
    if g.abs() <= ZERO_BAND * (a3 + a6 + a7) {
        return Err(SolveError::Degenerate("a3 - a6 + a7 = 0".into()));
    }
    let z1 = g * g - b1 * b1 - b2 * b2;
    if z1.abs() > Z1_TOLERANCE * g * g {
        return Err(SolveError::InvalidBranch(format!(
            "z1 = {} is not zero",
            fmt_sci(z1, 3)
        )));
    }
    let (c7, s7) = (-b2 / g, b1 / g);
    let n = c7.hypot(s7);
    Ok((c7 / n, s7 / n))
}

fn l2_residual(p: &NumericParameters, c7: f64, s7: f64, v: &[f64]) -> Vec<f64> {
    let (a4, a5, a6, a7) = (p.a[3], p.a[4], p.a[5], p.a[6]);
    let (c4, s4, c5, s5) = (v[0], v[1], v[2], v[3]);
    vec![
        a4 * (s4 * c5 + c4 * s5) + c5 * a5 + s7 * (a6 - a7),
        a4 * (c4 * c5 - s4 * s5) - s5 * a5 + c7 * (a6 - a7),
        c4 * c4 + s4 * s4 - 1.0,
        c5 * c5 + s5 * s5 - 1.0,
    ]
}

fn l2_jacobian(p: &NumericParameters, v: &[f64]) -> Vec<Vec<f64>> {
    let (a4, a5) = (p.a[3], p.a[4]);
    let (c4, s4, c5, s5) = (v[0], v[1], v[2], v[3]);
    vec![
        vec![a4 * s5, a4 * c5, a4 * s4 + a5, a4 * c4],
        vec![a4 * c5, -a4 * s5, a4 * c4, -a4 * s4 - a5],
        vec![2.0 * c4, 2.0 * s4, 0.0, 0.0],
        vec![0.0, 0.0, 2.0 * c5, 2.0 * s5],
    ]
}

/// Singular configurations on the U1 component.
pub fn solve_u1(p: &NumericParameters) -> Result<BranchSolution, SolveError> {
    let (a4, a5, a6, a7) = (p.a[3], p.a[4], p.a[5], p.a[6]);
    if (a6 - a7).abs() <= ZERO_BAND * (a6 + a7) {
        return Err(SolveError::Degenerate(
            "a6 = a7: the angle-4/5 system splits into three components".into(),
        ));
    }
    let (c7, s7) = u1_angle7(p)?;
    let arm = Arm::l1(p, c7, s7);
    if arm.d0() <= ZERO_BAND * (p.a[0] + p.a[1]).powi(2) {
        return Err(SolveError::Degenerate("n4 = 0".into()));
    }
    let b = u_branch(1).expect("U1");
    let conditions = branch_conditions(Branch::U1, p);
    let mut sol = BranchSolution {
        branch: Branch::U1,
        reports: Vec::new(),
        rejected: Vec::new(),
        conditions,
    };
    let s4 = (a4 * a4 + a5 * a5 - (a6 - a7).powi(2)) / (-2.0 * a4 * a5);
    let prod = sol.conditions.c4_product.expect("U1 product");
    let c4_count = RootCount::from_nonpositive(prod, (a4 + a5 + a6 + a7).powi(4), ZERO_BAND);
    let angle4: Vec<(f64, f64)> = match c4_count {
        RootCount::None => {
            sol.rejected
                .push(format!("t5 t6 t7 t8 = {} > 0", fmt_sci(prod, 3)));
            return Ok(sol);
        }
        RootCount::Double => vec![(0.0, s4.signum())],
        RootCount::Two => {
            let c4 = (-prod).sqrt() / (2.0 * a4 * a5);
            vec![(-c4, s4), (c4, s4)]
        }
    };
    let arms = match arm.solve() {
        Ok(a) => a,
        Err(SolveError::NoRealRoots(_)) => {
            let q = sol.conditions.u1_quad.expect("U1 quadratic");
            sol.rejected
                .push(format!("n3 (4 a1 a2 - n3) = {} < 0", fmt_sci(q, 3)));
            return Ok(sol);
        }
        Err(e) => return Err(e),
    };
    for (c4, s4) in angle4 {
        let s5 = (a4 * s4 * c7 + a5 * c7 - a4 * c4 * s7) / (a6 - a7);
        let c5 = (a4 * c4 * c7 + a4 * s4 * s7 + a5 * s7) / (a7 - a6);
        let mut v = vec![c4, s4, c5, s5];
        if c4_count == RootCount::Two {
            newton(
                &mut v,
                |w| l2_residual(p, c7, s7, w),
                |w| l2_jacobian(p, w),
                20,
            );
        }
        let eps = b.eps as f64;
        for a in &arms {
            let config = Configuration {
                c: [a.c1, a.c2, eps * c7, v[0], v[2], 0.0, c7],
                s: [a.s1, a.s2, eps * s7, v[1], v[3], b.s6 as f64, s7],
            };
            sol.reports.push(certify(Branch::U1, config, p)?);
        }
    }
    Ok(sol)
}

/// Discriminant values and sign conditions of a branch.
pub fn branch_conditions(branch: Branch, p: &NumericParameters) -> BranchConditions {
    match branch {
        Branch::T5 | Branch::T3 => {
            let b = t_branch(t_index(branch)).expect("T index");
            let delta = t_delta(&b, p);
            let k = KCoefficients::new(delta, p);
            let e = solve_k2_with(delta, p)
                .map(|ts| ts.iter().map(|t| Arm::k1(p, t.c3, t.s3).e()).collect())
                .unwrap_or_default();
            BranchConditions {
                discriminant: Some(k.discriminant()),
                discriminant_printed: Some(k.discriminant_printed()),
                e,
                u1_quad: None,
                c4_product: None,
            }
        }
        Branch::U1 => {
            let t = t_factor_values(p);
            let u1_quad = u1_angle7(p).ok().map(|(c7, s7)| -Arm::l1(p, c7, s7).e());
            BranchConditions {
                discriminant: None,
                discriminant_printed: None,
                e: Vec::new(),
                u1_quad,
                c4_product: Some(t[4] * t[5] * t[6] * t[7]),
            }
        }
    }
}

fn t_factor_values(p: &NumericParameters) -> Vec<f64> {
    crate::mechanism::singular_variety_factors(crate::mechanism::FactorFamily::F4567, p)
        .into_iter()
        .map(|(_, v)| v)
        .collect()
}
