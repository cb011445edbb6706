use squeeze_core::exactalg::MonomialOrder;
use squeeze_core::fitting::singular_ideal;
use squeeze_core::groebner::{buchberger_with, is_unit_ideal, GroebnerConfig};
use squeeze_core::mechanism::{reduced_system_m, restrict, MechanismParameters, VARIABLES_M};

#[test]
fn benchmark_m_system_has_no_singularities() {
    let m = reduced_system_m(Some(&MechanismParameters::benchmark()));
    let (u, m) = restrict(&m, &VARIABLES_M).unwrap();
    let vars: Vec<_> = u.variables().collect();
    let k = singular_ideal(&m, &vars).unwrap();
    let ord = MonomialOrder::degrevlex(&u);
    let (basis, stats) = buchberger_with(&k, &ord, &GroebnerConfig::default()).unwrap();
    assert!(is_unit_ideal(&basis), "{stats:?}");
}
