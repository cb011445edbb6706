use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exactalg::{parse_polynomial, MonomialOrder, OrderKind, Polynomial, Rational, Universe};
use crate::fitting::jacobian;
use crate::groebner::{buchberger, contains, eliminate, normal_form, IdealBasis};
use crate::mechanism::{
    circle, configuration_variables, full_system, restrict, symmetric_system, MechanismParameters,
};
use crate::numsolve::ExactConfiguration;

/// Rank over the rationals by fraction-free (Bareiss) elimination.
pub fn exact_rank(m: &[Vec<Rational>]) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            row.iter().map(|q| q.numer() * (&l / q.denom())).collect()
        })
        .collect();
    let rows = a.len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// `p1..p13` evaluated exactly.
pub fn exact_residuals(config: &ExactConfiguration, params: &MechanismParameters) -> Vec<Rational> {
    let pt = config.point(params);
    full_system(None)
        .iter()
        .map(|p| p.eval_exact(&pt))
        .collect()
}

/// The 13 x 14 constraint Jacobian evaluated exactly.
pub fn exact_jacobian(
    config: &ExactConfiguration,
    params: &MechanismParameters,
) -> Vec<Vec<Rational>> {
    let j = jacobian(&full_system(None), &configuration_variables()).expect("13 x 14 Jacobian");
    j.eval_exact(&config.point(params))
}

fn p(text: &str) -> Polynomial {
    parse_polynomial(text, &Universe::mechanism()).expect("builder text")
}

/// Coefficient matrix of the two linear equations in `(c7, s7)` on the
/// branch `(c6, s6) = (c4, -s4)` with `a6 = a4`, `a7 = a5`.
pub fn lemma1_matrix() -> [[Polynomial; 2]; 2] {
    [
        [
            p("a4^2*(c4^2 - s4^2) - 2*a4*a5*s4 - a5^2"),
            p("2*a4*c4*(a4*s4 + a5)"),
        ],
        [p("-2*a4^2*c4*s4"), p("a4^2*(c4^2 - s4^2) + a5^2")],
    ]
}

fn lemma1_rows() -> (Polynomial, Polynomial, Polynomial) {
    let [[a11, a12], [a21, a22]] = lemma1_matrix();
    let c7 = p("c7");
    let s7 = p("s7");
    let row1 = &(&(&a11 * &c7) + &(&a12 * &s7)) - &p("s5*(a4^2 + a5^2 + 2*a4*a5*s4)");
    let row2 = &(&(&a21 * &c7) + &(&a22 * &s7)) + &p("(a4^2 - a5^2)*c5 - 2*a4*a5*s5*c4");
    let printed1 = p(
        "c7*(a4^2*(s4^2 - c4^2) - a5*(2*a4*s4 + a5)) + s7*(2*a4*(a5 + a4*c4*s4)) \
         - s5*((a4^2 + a5^2) - 2*a4*a5*s4)",
    );
    (row1, row2, printed1)
}

fn det(m: &[[Polynomial; 2]; 2]) -> Polynomial {
    &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0])
}

/// Outcome of each exact check on the `(c6, s6) = (c4, -s4)` branch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma1Report {
    /// Both linear equations built from [`lemma1_matrix`] lie in the ideal.
    pub rows_in_ideal: bool,
    /// The printed first equation lies in the ideal.
    pub printed_first_row_in_ideal: bool,
    /// `det(A)` mod `c4² + s4² - 1` equals the factored form.
    pub det_identity: bool,
    /// The factored form is `(a4 + a5)(a4 - a5) h(s4)` and
    /// `h(-1) = (a5 - a4)²`.
    pub h_identity: bool,
    /// Setting `a5 = a4` makes the reduced determinant vanish.
    pub equal_lengths_vanish: bool,
}

pub fn lemma1_report() -> Lemma1Report {
    let names = ["c5", "s5", "c7", "s7", "c4", "s4", "c6", "s6", "a4", "a5"];
    let mut gens = symmetric_system();
    gens.push(p("c6 - c4"));
    gens.push(p("s6 + s4"));
    let (u, gens) = restrict(&gens, &names).expect("lemma universe");
    let ord = MonomialOrder::from_names(
        &u,
        OrderKind::DegRevLex,
        &[names[..8].to_vec(), names[8..].to_vec()],
    )
    .expect("block order");
    let b = buchberger(&gens, &ord).expect("small ideal");
    let inside = |f: &Polynomial| contains(&b, &f.transfer(&u).expect("lemma universe"));
    let (row1, row2, printed1) = lemma1_rows();

    let circ =
        IdealBasis::from_generators(vec![circle(4)], MonomialOrder::lex(&Universe::mechanism()));
    let reduce = |f: &Polynomial| normal_form(f, &circ).remainder;
    let factored = p("2*a4*a5*(a4 + a5)*(a4 - a5)*s4 + (a4 - a5)*(a4 + a5)*(a4^2 + a5^2)");
    let reduced = reduce(&det(&lemma1_matrix()));
    let h = p("2*a4*a5*s4 + a4^2 + a5^2");
    let s4 = Universe::mechanism().var("s4").unwrap();
    let a5 = Universe::mechanism().var("a5").unwrap();
    let h_identity = factored == &p("(a4 + a5)*(a4 - a5)") * &h
        && h.substitute(&[(s4, p("-1"))]) == p("(a5 - a4)^2");
    Lemma1Report {
        rows_in_ideal: inside(&row1) && inside(&row2),
        printed_first_row_in_ideal: inside(&printed1),
        det_identity: reduced == reduce(&factored),
        h_identity,
        equal_lengths_vanish: reduced.substitute(&[(a5, p("a4"))]).is_zero(),
    }
}

/// True when the determinant identity, `h(-1) = (a5 - a4)²`, the
/// `a4 = a5` degeneration and the row memberships all hold exactly.
pub fn lemma1_det_a_check() -> bool {
    let r = lemma1_report();
    r.rows_in_ideal && r.det_identity && r.h_identity && r.equal_lengths_vanish
}

/// The three printed generators of the angle-4/angle-6 elimination ideal.
pub const LEMMA1_PRINTED_I46: [&str; 3] = ["s4 + s6", "c6^2 + s6^2 - 1", "c4^2 + s4^2 - 1"];

/// Generators of `⟨r1..r6⟩ ∩ Q[c4, s4, c6, s6]` at exact `a4`, `a5`,
/// computed under the block order `[(c5, s5, c7, s7), (c4, s4, c6, s6)]`.
/// Returned on the mechanism universe.
pub fn lemma1_elimination(a4: &Rational, a5: &Rational) -> Vec<Polynomial> {
    let mech = Universe::mechanism();
    let bind = [
        (mech.var("a4").unwrap(), a4.clone()),
        (mech.var("a5").unwrap(), a5.clone()),
    ];
    let sys: Vec<Polynomial> = symmetric_system()
        .iter()
        .map(|r| r.specialize(&bind))
        .collect();
    let names = ["c5", "s5", "c7", "s7", "c4", "s4", "c6", "s6"];
    let (u, sys) = restrict(&sys, &names).expect("angle universe");
    let ord = MonomialOrder::from_names(
        &u,
        OrderKind::DegRevLex,
        &[names[..4].to_vec(), names[4..].to_vec()],
    )
    .expect("block order");
    let b = buchberger(&sys, &ord).expect("small ideal");
    let keep = u.vars(&names[4..]).unwrap();
    eliminate(&b, &keep)
        .expect("last block")
        .iter()
        .map(|g| g.transfer(&mech).expect("mechanism names"))
        .collect()
}

/// Mutual membership of [`lemma1_elimination`] and the printed ideal.
pub fn lemma1_elimination_check(a4: &Rational, a5: &Rational) -> bool {
    let computed = lemma1_elimination(a4, a5);
    let printed: Vec<Polynomial> = LEMMA1_PRINTED_I46.iter().map(|t| p(t)).collect();
    let names = ["c4", "s4", "c6", "s6"];
    let (u, computed) = restrict(&computed, &names).expect("angle universe");
    let (_, printed) = restrict(&printed, &names).expect("angle universe");
    let ord = MonomialOrder::degrevlex(&u);
    let (Ok(bc), Ok(bp)) = (buchberger(&computed, &ord), buchberger(&printed, &ord)) else {
        return false;
    };
    printed.iter().all(|f| contains(&bc, f)) && computed.iter().all(|f| contains(&bp, f))
}
