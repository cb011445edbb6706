//! The singular varieties of the two subsystems, read off parametric
//! Groebner bases under a (configuration, parameter) block order.

use squeeze_core::exactalg::{parse_polynomial, MonomialOrder, OrderKind, Polynomial};
use squeeze_core::fitting::singular_ideal;
use squeeze_core::groebner::{buchberger_with, contains, GroebnerConfig, IdealBasis};
use squeeze_core::mechanism::*;

fn parametric_basis(sys: Vec<Polynomial>, vars: &[&str], params: &[&str]) -> IdealBasis {
    let names: Vec<&str> = vars.iter().chain(params).copied().collect();
    let (u, sys) = restrict(&sys, &names).unwrap();
    let k = singular_ideal(&sys, &u.vars(vars).unwrap()).unwrap();
    let ord =
        MonomialOrder::from_names(&u, OrderKind::DegRevLex, &[vars.to_vec(), params.to_vec()])
            .unwrap();
    let (b, stats) = buchberger_with(&k, &ord, &GroebnerConfig::default()).unwrap();
    assert!(b.s_polynomials_reduce_to_zero());
    assert!(b.is_autoreduced());
    assert_eq!(stats.basis_size, b.len());
    b
}

fn member(b: &IdealBasis, f: &Polynomial) -> bool {
    contains(b, &f.transfer(b.universe()).unwrap())
}

#[test]
fn subsystem_4567_singular_variety_is_the_t_product() {
    let b = parametric_basis(subsystem_4567(), &VARIABLES_4567, &PARAMETERS_4567);
    let u = b.universe().clone();
    assert!(contains(&b, &parse_polynomial("c6*a6*a7", &u).unwrap()));
    assert!(contains(&b, &parse_polynomial("c4*a4*a5", &u).unwrap()));
    assert!(member(&b, &t_product()));
    // No single factor lies in the ideal; only the product does.
    for i in 1..=8 {
        assert!(!member(&b, &t_factor(i)), "t{i}");
    }
    let params = u.vars(&PARAMETERS_4567).unwrap();
    let pure: Vec<_> = b
        .generators()
        .iter()
        .filter(|g| g.uses_only(&params))
        .collect();
    assert_eq!(pure.len(), 1);
    assert_eq!(pure[0].total_degree(), 8);
}

#[test]
fn subsystem_367_singular_variety_is_the_z_product() {
    let b = parametric_basis(subsystem_367(), &VARIABLES_367, &PARAMETERS_367);
    let u = b.universe().clone();
    assert!(contains(&b, &parse_polynomial("c6*a6*a7", &u).unwrap()));
    assert!(member(&b, &z_product()));
    for i in 1..=4 {
        assert!(!member(&b, &z_factor(i)), "z{i}");
    }
}
