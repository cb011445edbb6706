use super::*;
use crate::exactalg::{parse_polynomial, OrderKind};

fn uni(names: &[&str]) -> Arc<Universe> {
    Universe::new(names).unwrap()
}

fn polys(u: &Arc<Universe>, texts: &[&str]) -> Vec<Polynomial> {
    texts
        .iter()
        .map(|t| parse_polynomial(t, u).unwrap())
        .collect()
}

#[test]
fn lex_direct_elimination() {
    let u = uni(&["c4", "s4"]);
    let ord = MonomialOrder::lex(&u);
    let b = buchberger(&polys(&u, &["c4^2 + s4^2 - 1", "c4"]), &ord).unwrap();
    assert_eq!(b.generators(), polys(&u, &["c4", "s4^2 - 1"]).as_slice());
    assert!(b.is_reduced());
}

#[test]
fn textbook_grlex_example() {
    // x^3 - 2xy, x^2 y - 2y^2 + x under graded order: {x^2, xy, y^2 - x/2}.
    let u = uni(&["x", "y"]);
    let ord = MonomialOrder::degrevlex(&u);
    let b = buchberger(&polys(&u, &["x^3 - 2*x*y", "x^2*y - 2*y^2 + x"]), &ord).unwrap();
    assert_eq!(
        b.generators(),
        polys(&u, &["x^2", "x*y", "y^2 - 1/2*x"]).as_slice()
    );
}

#[test]
fn inconsistent_pair_is_unit() {
    let u = uni(&["x"]);
    let ord = MonomialOrder::lex(&u);
    let b = buchberger(&polys(&u, &["x", "x - 1"]), &ord).unwrap();
    assert!(is_unit_ideal(&b));
    assert!(contains(&b, &parse_polynomial("x^5 + 3", &u).unwrap()));
}

#[test]
fn membership_and_oracle_non_membership() {
    let u = uni(&["c4", "s4"]);
    let ord = MonomialOrder::degrevlex(&u);
    let circle = polys(&u, &["c4^2 + s4^2 - 1"]);
    let b = buchberger(&circle, &ord).unwrap();
    let c4 = Polynomial::named(&u, "c4");
    assert!(!contains(&b, &c4));
    // (0,1) is a common zero on which c4 takes value 0, so use s4 instead:
    // s4 = 1 there, certifying s4 is not in the ideal either.
    let point = [Rational::zero(), Rational::one()];
    assert!(circle[0].eval_exact(&point).is_zero());
    let s4 = Polynomial::named(&u, "s4");
    assert!(!s4.eval_exact(&point).is_zero());
    assert!(!contains(&b, &s4));
    // c4 is nonzero at the common zero (1, 0).
    let p2 = [Rational::one(), Rational::zero()];
    assert!(!c4.eval_exact(&p2).is_zero());
    assert!(contains(&b, &Polynomial::zero(&u)));
    assert!(contains(&b, &(&circle[0] * &s4)));
}

#[test]
fn zero_normal_form() {
    let u = uni(&["x", "y"]);
    let ord = MonomialOrder::degrevlex(&u);
    let b = buchberger(&polys(&u, &["x*y - 1"]), &ord).unwrap();
    let t = normal_form(&Polynomial::zero(&u), &b);
    assert!(t.remainder.is_zero());
    assert!(t.quotients.is_empty());
}

#[test]
fn trace_reconstructs_input() {
    let u = uni(&["x", "y", "z"]);
    let ord = MonomialOrder::lex(&u);
    let b = buchberger(
        &polys(&u, &["x^2 + y*z - 2", "y^2 - 3/7*x*z + 1", "z^3 - x + y"]),
        &ord,
    )
    .unwrap();
    let f = parse_polynomial("5/3*x^3*y - 2*y^4*z + 7*x*z^2 - 1/11", &u).unwrap();
    let t = normal_form(&f, &b);
    let mut acc = t.remainder.clone();
    for (i, q) in &t.quotients {
        acc = &acc + &(q * &b.generators()[*i]);
    }
    assert_eq!(acc, f);
    let lms = b.leading_monomials();
    for (m, _) in t.remainder.terms() {
        assert!(lms.iter().all(|l| !l.divides(m)));
    }
    let again = normal_form(&t.remainder, &b);
    assert_eq!(again.remainder, t.remainder);
}

#[test]
fn certificate_replays_to_basis() {
    let u = uni(&["x", "y", "z"]);
    let ord = MonomialOrder::degrevlex(&u);
    let gens = polys(&u, &["x*y - z^2", "y^2*z - x", "x^2 + 2/3*y - z"]);
    let (b, cert) = buchberger_certified(&gens, &ord, &GroebnerConfig::default()).unwrap();
    assert_eq!(b, buchberger(&gens, &ord).unwrap());
    for (g, row) in b.generators().iter().zip(&cert) {
        let mut acc = Polynomial::zero(&u);
        for (c, h) in row.iter().zip(&gens) {
            acc = &acc + &(c * h);
        }
        assert_eq!(&acc, g);
    }
    for g in &gens {
        assert!(contains(&b, g));
    }
}

#[test]
fn certificate_for_unit_ideal() {
    let u = uni(&["x", "y"]);
    let ord = MonomialOrder::lex(&u);
    let gens = polys(&u, &["x*y - 1", "x^2 - y", "y^3 - 2"]);
    let (b, cert) = buchberger_certified(&gens, &ord, &GroebnerConfig::default()).unwrap();
    assert!(is_unit_ideal(&b));
    let mut acc = Polynomial::zero(&u);
    for (c, h) in cert[0].iter().zip(&gens) {
        acc = &acc + &(c * h);
    }
    assert_eq!(acc, Polynomial::one(&u));
}

#[test]
fn post_checks_and_determinism() {
    let u = uni(&["x", "y", "z", "w"]);
    let ord =
        MonomialOrder::from_names(&u, OrderKind::DegRevLex, &[vec!["x", "y"], vec!["z", "w"]])
            .unwrap();
    let gens = polys(
        &u,
        &["x^2 - z*w + 1", "x*y - w^2", "y^2 - z + x", "x*z - y*w"],
    );
    let a = buchberger(&gens, &ord).unwrap();
    let b = buchberger(&gens, &ord).unwrap();
    assert_eq!(a.to_text(), b.to_text());
    assert!(a.s_polynomials_reduce_to_zero());
    assert!(a.is_autoreduced());
}

#[test]
fn elimination_by_block_order() {
    // x - t^2, y - t^3: eliminating t leaves the cuspidal cubic.
    let u = uni(&["t", "x", "y"]);
    let ord = MonomialOrder::from_names(&u, OrderKind::Lex, &[vec!["t"], vec!["x", "y"]]).unwrap();
    let b = buchberger(&polys(&u, &["x - t^2", "y - t^3"]), &ord).unwrap();
    let keep = u.vars(&["x", "y"]).unwrap();
    let e = eliminate(&b, &keep).unwrap();
    assert_eq!(e, polys(&u, &["x^3 - y^2"]));
    let bad = u.vars(&["x"]).unwrap();
    assert!(matches!(
        eliminate(&b, &bad),
        Err(GroebnerError::OrderMismatch(_))
    ));
    let plain = MonomialOrder::lex(&u);
    let pb = buchberger(&polys(&u, &["x - t^2", "y - t^3"]), &plain).unwrap();
    let all: Vec<Variable> = u.variables().collect();
    assert_eq!(eliminate(&pb, &all).unwrap(), pb.generators().to_vec());
}

#[test]
fn ceiling_aborts_loudly() {
    let u = uni(&["x", "y", "z"]);
    let ord = MonomialOrder::lex(&u);
    let gens = polys(&u, &["x^3 - y*z + 1", "y^3 - x*z", "z^3 - x*y + 2"]);
    let cfg = GroebnerConfig {
        max_pairs: 2,
        max_terms: 5_000_000,
    };
    assert!(matches!(
        buchberger_with(&gens, &ord, &cfg),
        Err(GroebnerError::ResourceLimit { .. })
    ));
    let cfg = GroebnerConfig {
        max_pairs: 200_000,
        max_terms: 5,
    };
    assert!(matches!(
        buchberger_with(&gens, &ord, &cfg),
        Err(GroebnerError::ResourceLimit { .. })
    ));
}

#[test]
fn text_roundtrip() {
    let u = uni(&["c4", "s4", "a4"]);
    let ord =
        MonomialOrder::from_names(&u, OrderKind::Lex, &[vec!["c4", "s4"], vec!["a4"]]).unwrap();
    let b = buchberger(&polys(&u, &["c4^2 + s4^2 - 1", "a4*c4 - 1/2*s4"]), &ord).unwrap();
    let back = IdealBasis::from_text(&b.to_text()).unwrap();
    assert_eq!(back, b);
    assert!(back.is_reduced());
    let unchecked = IdealBasis::from_text("order=lex blocks=(x,y)\nx^2 + y\nx*y\n").unwrap();
    assert!(!unchecked.is_reduced());
}

#[test]
fn rejects_mismatched_input() {
    let u = uni(&["x"]);
    let v = uni(&["y"]);
    let ord = MonomialOrder::lex(&u);
    assert!(matches!(
        buchberger(&[], &ord),
        Err(GroebnerError::EmptyInput)
    ));
    assert!(buchberger(&[Polynomial::named(&v, "y")], &ord).is_err());
}
