//! The constraint polynomials and the systems derived from them. All
//! builders return polynomials over the 25-variable mechanism universe;
//! passing parameters specializes `a`, `b`, `w` to exact rationals.

use std::sync::Arc;

use crate::exactalg::{parse_polynomial, Polynomial, Universe, Variable};

use super::params::MechanismParameters;
use super::MechanismError;

pub(crate) fn parse_all(texts: &[&str]) -> Vec<Polynomial> {
    let u = Universe::mechanism();
    texts
        .iter()
        .map(|t| parse_polynomial(t, &u).expect("builder text"))
        .collect()
}

/// Substitutes exact parameter values into every polynomial.
pub fn specialize(polys: &[Polynomial], params: &MechanismParameters) -> Vec<Polynomial> {
    polys
        .iter()
        .map(|p| p.specialize(&params.bindings(p.universe())))
        .collect()
}

fn maybe(polys: Vec<Polynomial>, params: Option<&MechanismParameters>) -> Vec<Polynomial> {
    match params {
        Some(p) => specialize(&polys, p),
        None => polys,
    }
}

/// `c_i² + s_i² - 1`.
pub fn circle(i: usize) -> Polynomial {
    parse_all(&[&format!("c{i}^2 + s{i}^2 - 1")]).pop().unwrap()
}

/// `c1, s1, ..., c7, s7`.
pub fn configuration_variables() -> Vec<Variable> {
    let u = Universe::mechanism();
    (1..=7)
        .flat_map(|i| [format!("c{i}"), format!("s{i}")])
        .map(|n| u.var(&n).unwrap())
        .collect()
}

pub fn variables_of(names: &[&str]) -> Vec<Variable> {
    Universe::mechanism().vars(names).expect("mechanism names")
}

/// The 13 constraint polynomials: six loop equations then seven circle
/// identities.
pub fn full_system(params: Option<&MechanismParameters>) -> Vec<Polynomial> {
    let mut p = parse_all(&[
        "a1*c1 - a2*(c1*c2 - s1*s2) - a3*s3 - b1",
        "a1*s1 - a2*(s1*c2 + c1*s2) + a3*c3 - b2",
        "a1*c1 - a2*(c1*c2 - s1*s2) - a4*(s4*c5 + c4*s5) - a5*c5 - w1",
        "a1*s1 - a2*(s1*c2 + c1*s2) + a4*(c4*c5 - s4*s5) - a5*s5 - w2",
        "a1*c1 - a2*(c1*c2 - s1*s2) - a6*(c6*c7 - s6*s7) - a7*s7 - w1",
        "a1*s1 - a2*(s1*c2 + c1*s2) - a6*(s6*c7 + c6*s7) + a7*c7 - w2",
    ]);
    p.extend((1..=7).map(circle));
    maybe(p, params)
}

pub const VARIABLES_4567: [&str; 8] = ["c4", "s4", "c5", "s5", "c6", "s6", "c7", "s7"];
pub const PARAMETERS_4567: [&str; 4] = ["a4", "a5", "a6", "a7"];
pub const VARIABLES_367: [&str; 6] = ["c3", "s3", "c6", "s6", "c7", "s7"];
pub const PARAMETERS_367: [&str; 7] = ["a3", "a6", "a7", "b1", "b2", "w1", "w2"];

/// `q1 = p5 - p3`, `q2 = p4 - p6` and the circles of angles 4 to 7.
pub fn subsystem_4567() -> Vec<Polynomial> {
    let mut q = parse_all(&[
        "a4*(s4*c5 + c4*s5) + a5*c5 - a6*(c6*c7 - s6*s7) - a7*s7",
        "a4*(c4*c5 - s4*s5) - a5*s5 + a6*(s6*c7 + c6*s7) - a7*c7",
    ]);
    q.extend((4..=7).map(circle));
    q
}

/// `h1 = p1 - p5`, `h2 = p2 - p6` and the circles of angles 3, 6, 7.
pub fn subsystem_367() -> Vec<Polynomial> {
    let mut h = parse_all(&[
        "a6*(c6*c7 - s6*s7) + a7*s7 - a3*s3 + w1 - b1",
        "a6*(s6*c7 + c6*s7) - a7*c7 + a3*c3 + w2 - b2",
    ]);
    h.extend([3, 6, 7].into_iter().map(circle));
    h
}

/// The pair `(K1, K2)` on the T5 branch.
pub fn system_k(params: Option<&MechanismParameters>) -> (Vec<Polynomial>, Vec<Polynomial>) {
    let mut k1 = parse_all(&[
        "a2*(-c1*c2 + s1*s2) + c1*a1 - s3*a3 - b1",
        "a2*(-s1*c2 - c1*s2) + s1*a1 + c3*a3 - b2",
    ]);
    k1.extend([circle(1), circle(2)]);
    let mut k2 = parse_all(&[
        "s7*(a4 - a5) + s3*a3 + b1 - w1",
        "c7*(a5 - a4) - c3*a3 + b2 - w2",
    ]);
    k2.extend([circle(3), circle(7)]);
    (maybe(k1, params), maybe(k2, params))
}

/// Which of the four `L` systems to build. `FourPrinted` keeps the
/// printed `-c7*(a6 + c7)` term; `Four` uses `-c7*(a6 + a7)`, which is
/// what substituting `s6 = -1` into `p4 - p6` actually gives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LVariant {
    One,
    Two,
    Three,
    Four,
    FourPrinted,
}

impl LVariant {
    pub fn from_index(i: u8) -> Result<LVariant, MechanismError> {
        match i {
            1 => Ok(LVariant::One),
            2 => Ok(LVariant::Two),
            3 => Ok(LVariant::Three),
            4 => Ok(LVariant::Four),
            _ => Err(MechanismError::InvalidVariant(i)),
        }
    }
}

pub fn system_l(variant: LVariant, params: Option<&MechanismParameters>) -> Vec<Polynomial> {
    let (lin, circles): (&[&str], [usize; 2]) = match variant {
        LVariant::One => (
            &[
                "a2*(-c1*c2 + s1*s2) + c1*a1 + s7*a3 - b1",
                "a2*(-s1*c2 - c1*s2) + s1*a1 - c7*a3 - b2",
            ],
            [1, 2],
        ),
        LVariant::Three => (
            &[
                "a2*(-c1*c2 + s1*s2) + c1*a1 - s7*a3 - b1",
                "a2*(-s1*c2 - c1*s2) + s1*a1 + c7*a3 - b2",
            ],
            [1, 2],
        ),
        LVariant::Two => (
            &[
                "a4*(s4*c5 + c4*s5) + c5*a5 + s7*(a6 - a7)",
                "a4*(c4*c5 - s4*s5) - s5*a5 + c7*(a6 - a7)",
            ],
            [4, 5],
        ),
        LVariant::Four => (
            &[
                "a4*(s4*c5 + c4*s5) + c5*a5 - s7*(a6 + a7)",
                "a4*(c4*c5 - s4*s5) - s5*a5 - c7*(a6 + a7)",
            ],
            [4, 5],
        ),
        LVariant::FourPrinted => (
            &[
                "a4*(s4*c5 + c4*s5) + c5*a5 - s7*(a6 + a7)",
                "a4*(c4*c5 - s4*s5) - s5*a5 - c7*(a6 + c7)",
            ],
            [4, 5],
        ),
    };
    let mut out = parse_all(lin);
    out.extend(circles.map(circle));
    maybe(out, params)
}

/// The two `L` systems paired with a U component. `s6 = 1` selects L2
/// and `s6 = -1` L4; `(c3, s3) = -(c7, s7)` selects L1 and `+(c7, s7)` L3.
pub fn l_pair_for_u(index: usize) -> Result<(LVariant, LVariant), MechanismError> {
    match index {
        1 => Ok((LVariant::One, LVariant::Two)),
        2 => Ok((LVariant::One, LVariant::Four)),
        3 => Ok((LVariant::Three, LVariant::Four)),
        4 => Ok((LVariant::Three, LVariant::Two)),
        _ => Err(MechanismError::InvalidLabel(format!("U{index}"))),
    }
}

/// `m1..m9`: the first four loop equations once angles 6 and 7 are
/// eliminated, and the circles of angles 1 to 5.
pub fn reduced_system_m(params: Option<&MechanismParameters>) -> Vec<Polynomial> {
    let mut m = full_system(None)[..4].to_vec();
    m.extend((1..=5).map(circle));
    maybe(m, params)
}

pub const VARIABLES_M: [&str; 10] = ["c1", "s1", "c2", "s2", "c3", "s3", "c4", "s4", "c5", "s5"];

/// `r1..r6`: the 4567 subsystem with `a6 = a4`, `a7 = a5`.
pub fn symmetric_system() -> Vec<Polynomial> {
    let u = Universe::mechanism();
    let a4 = Polynomial::named(&u, "a4");
    let a5 = Polynomial::named(&u, "a5");
    let sub = [(u.var("a6").unwrap(), a4), (u.var("a7").unwrap(), a5)];
    subsystem_4567()
        .iter()
        .map(|q| q.substitute(&sub))
        .collect()
}

/// Moves polynomials onto a smaller universe with the given variable
/// names, in that order.
pub fn restrict(
    polys: &[Polynomial],
    names: &[&str],
) -> Result<(Arc<Universe>, Vec<Polynomial>), MechanismError> {
    let u = Universe::new(names)?;
    let out = polys
        .iter()
        .map(|p| p.transfer(&u))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((u, out))
}
