use std::fmt;
use std::str::FromStr;

use crate::exactalg::{MonomialOrder, Polynomial, Universe, Variable};

use super::params::NumericParameters;
use super::systems::{circle, parse_all};
use super::MechanismError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    T,
    U,
    I,
}

/// One of the listed physical components: T1..T7, U1..U4, I1..I3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ComponentLabel {
    family: Family,
    index: usize,
}

impl ComponentLabel {
    pub fn new(family: Family, index: usize) -> Result<ComponentLabel, MechanismError> {
        let max = match family {
            Family::T => 7,
            Family::U => 4,
            Family::I => 3,
        };
        if (1..=max).contains(&index) {
            Ok(ComponentLabel { family, index })
        } else {
            Err(MechanismError::InvalidLabel(format!("{family:?}{index}")))
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn all(family: Family) -> Vec<ComponentLabel> {
        let max = match family {
            Family::T => 7,
            Family::U => 4,
            Family::I => 3,
        };
        (1..=max)
            .map(|i| ComponentLabel { family, index: i })
            .collect()
    }
}

impl fmt::Display for ComponentLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.index)
    }
}

impl FromStr for ComponentLabel {
    type Err = MechanismError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || MechanismError::InvalidLabel(s.to_string());
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('T') => Family::T,
            Some('U') => Family::U,
            Some('I') => Family::I,
            _ => return Err(bad()),
        };
        let index: usize = chars.as_str().parse().map_err(|_| bad())?;
        ComponentLabel::new(family, index).map_err(|_| bad())
    }
}

/// Text of the linear factor `t_i` in `a4..a7`.
fn t_text(i: usize) -> &'static str {
    [
        "a4 - a5 - a6 - a7",
        "a4 - a5 + a6 + a7",
        "a4 + a5 + a6 + a7",
        "a4 + a5 - a6 - a7",
        "a4 - a5 + a6 - a7",
        "a4 - a5 - a6 + a7",
        "a4 + a5 - a6 + a7",
        "a4 + a5 + a6 - a7",
    ][i - 1]
}

/// `t_i`, `i = 1..8`.
pub fn t_factor(i: usize) -> Polynomial {
    parse_all(&[t_text(i)]).pop().unwrap()
}

/// `z_i`, `i = 1..4`: `(a3 ± a6 ± a7)² - |b - w|²`.
pub fn z_factor(i: usize) -> Polynomial {
    let inner = [
        "a3 - a6 + a7",
        "a3 + a6 + a7",
        "a3 + a6 - a7",
        "a3 - a6 - a7",
    ][i - 1];
    parse_all(&[&format!("({inner})^2 - (b1 - w1)^2 - (b2 - w2)^2")])
        .pop()
        .unwrap()
}

pub fn t_product() -> Polynomial {
    (2..=8).fold(t_factor(1), |acc, i| &acc * &t_factor(i))
}

pub fn z_product() -> Polynomial {
    (2..=4).fold(z_factor(1), |acc, i| &acc * &z_factor(i))
}

/// Sign data of a T component: `s4 = s4`, `s6 = s6`, `s5 = eps*c7`,
/// `c5 = -eps*s7`, and the factor `t` that vanishes on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TBranch {
    pub t: usize,
    pub s4: i64,
    pub s6: i64,
    pub eps: i64,
}

pub fn t_branch(index: usize) -> Result<TBranch, MechanismError> {
    let (t, s6, eps, s4) = match index {
        1 => (1, -1, 1, -1),
        2 => (2, -1, -1, -1),
        3 => (4, -1, -1, 1),
        4 => (5, 1, 1, -1),
        5 => (6, 1, -1, -1),
        6 => (7, 1, 1, 1),
        7 => (8, 1, -1, 1),
        _ => return Err(MechanismError::InvalidLabel(format!("T{index}"))),
    };
    Ok(TBranch { t, s4, s6, eps })
}

/// Sign data of a U component: `s6 = s6`, `(c3, s3) = eps*(c7, s7)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UBranch {
    pub z: usize,
    pub s6: i64,
    pub eps: i64,
}

pub fn u_branch(index: usize) -> Result<UBranch, MechanismError> {
    let (s6, eps) = match index {
        1 => (1, -1),
        2 => (-1, -1),
        3 => (-1, 1),
        4 => (1, 1),
        _ => return Err(MechanismError::InvalidLabel(format!("U{index}"))),
    };
    Ok(UBranch { z: index, s6, eps })
}

fn signed(u: &std::sync::Arc<Universe>, sign: i64, name: &str) -> Polynomial {
    Polynomial::named(u, name).scale(&crate::exactalg::Rational::from_integer(sign.into()))
}

/// Substitution implied by a T component (all but the circle and `t`).
pub fn t_relations(index: usize) -> Result<Vec<(Variable, Polynomial)>, MechanismError> {
    let b = t_branch(index)?;
    let u = Universe::mechanism();
    let v = |n: &str| u.var(n).unwrap();
    Ok(vec![
        (v("c4"), Polynomial::zero(&u)),
        (v("c6"), Polynomial::zero(&u)),
        (v("s4"), Polynomial::integer(&u, b.s4)),
        (v("s6"), Polynomial::integer(&u, b.s6)),
        (v("s5"), signed(&u, b.eps, "c7")),
        (v("c5"), signed(&u, -b.eps, "s7")),
    ])
}

/// Substitution implied by a U component (all but `u1`, `u2` and the
/// circle).
pub fn u_relations(index: usize) -> Result<Vec<(Variable, Polynomial)>, MechanismError> {
    let b = u_branch(index)?;
    let u = Universe::mechanism();
    let v = |n: &str| u.var(n).unwrap();
    Ok(vec![
        (v("c6"), Polynomial::zero(&u)),
        (v("s6"), Polynomial::integer(&u, b.s6)),
        (v("c3"), signed(&u, b.eps, "c7")),
        (v("s3"), signed(&u, b.eps, "s7")),
    ])
}

/// Generators of a component ideal, with `t_i`, `u1`, `u2` expanded.
pub fn component_ideal(label: ComponentLabel) -> Vec<Polynomial> {
    match label.family {
        Family::T => {
            let b = t_branch(label.index).unwrap();
            let sgn = |x: i64| if x > 0 { "-" } else { "+" };
            let s5 = if b.eps > 0 { "s5 - c7" } else { "s5 + c7" };
            let c5 = if b.eps > 0 { "c5 + s7" } else { "c5 - s7" };
            let mut g = vec![circle(7), t_factor(b.t)];
            g.extend(parse_all(&[
                &format!("s6 {} 1", sgn(b.s6)),
                s5,
                c5,
                &format!("s4 {} 1", sgn(b.s4)),
                "c4",
                "c6",
            ]));
            g
        }
        Family::U => {
            let b = u_branch(label.index).unwrap();
            let mut g = parse_all(&[
                "-s6*c7*a6 - c3*a3 + c7*a7 + b2 - w2",
                "s6*s7*a6 + s3*a3 - s7*a7 + b1 - w1",
            ]);
            g.push(circle(7));
            let s6 = if b.s6 > 0 { "s6 - 1" } else { "s6 + 1" };
            let (s3, c3) = if b.eps < 0 {
                ("s3 + s7", "c3 + c7")
            } else {
                ("s3 - s7", "c3 - c7")
            };
            g.extend(parse_all(&["c6", s6, s3, c3]));
            g
        }
        Family::I => {
            let texts: &[&str] = match label.index {
                1 => &[
                    "s4^2 + c6^2 - 1",
                    "c4 - c6",
                    "c7^2 + s7^2 - 1",
                    "s5 + c7*s4 - s7*c6",
                    "c5 - c7*c6 - s7*s4",
                ],
                2 => &["c6", "s4 + 1", "c4", "c7^2 + s7^2 - 1", "c5^2 + s5^2 - 1"],
                _ => &[
                    "s4^2 + c6^2 - 1",
                    "c4 + c6",
                    "c7^2 + s7^2 - 1",
                    "s5 + c7",
                    "c5 - s7",
                ],
            };
            parse_all(texts)
        }
    }
}

/// True iff some generator forces a non-physical parameter condition: it
/// is a scalar multiple of a power of some `a_i`, or of a power of `t3`.
pub fn is_non_physical(gens: &[Polynomial]) -> bool {
    let u = Universe::mechanism();
    let ord = MonomialOrder::degrevlex(&u);
    let a_vars: Vec<Variable> = (1..=7).map(|i| u.var(&format!("a{i}")).unwrap()).collect();
    let t3 = t_factor(3);
    gens.iter().any(|g| {
        let Ok(g) = g.transfer(&u) else {
            return false;
        };
        if g.is_zero() || g.is_constant() {
            return false;
        }
        if g.len() == 1 {
            let vars = g.variables();
            if vars.len() == 1 && a_vars.contains(&vars[0]) {
                return true;
            }
        }
        let d = g.total_degree();
        d > 0 && g.monic(&ord) == t3.pow(d).monic(&ord)
    })
}

/// Which subsystem's factor list to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorFamily {
    F4567,
    F367,
}

/// Numeric values of `t1..t8` or `z1..z4`.
pub fn singular_variety_factors(family: FactorFamily, p: &NumericParameters) -> Vec<(String, f64)> {
    let a = p.a;
    let (a3, a4, a5, a6, a7) = (a[2], a[3], a[4], a[5], a[6]);
    match family {
        FactorFamily::F4567 => {
            let t = [
                a4 - a5 - a6 - a7,
                a4 - a5 + a6 + a7,
                a4 + a5 + a6 + a7,
                a4 + a5 - a6 - a7,
                a4 - a5 + a6 - a7,
                a4 - a5 - a6 + a7,
                a4 + a5 - a6 + a7,
                a4 + a5 + a6 - a7,
            ];
            t.iter()
                .enumerate()
                .map(|(i, v)| (format!("t{}", i + 1), *v))
                .collect()
        }
        FactorFamily::F367 => {
            let d = p.bw2();
            let z = [
                (a3 - a6 + a7).powi(2) - d,
                (a3 + a6 + a7).powi(2) - d,
                (a3 + a6 - a7).powi(2) - d,
                (a3 - a6 - a7).powi(2) - d,
            ];
            z.iter()
                .enumerate()
                .map(|(i, v)| (format!("z{}", i + 1), *v))
                .collect()
        }
    }
}
