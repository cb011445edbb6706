use num_traits::Zero;

use super::*;
use crate::exactalg::{parse_polynomial, Polynomial, Universe};
use crate::groebner::{buchberger, contains};
use crate::mechanism::{restrict, system_k, MechanismParameters, NumericParameters};
use crate::testutil::rng;
use rand::Rng;

fn bench() -> NumericParameters {
    MechanismParameters::benchmark().numeric()
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

#[test]
fn k2_reproduces_printed_tuples() {
    let t = solve_k2(&bench()).unwrap();
    let want = [
        [0.4299535996, -0.9028509856, -0.9975812008, 0.06951077517],
        [0.9266735994, -0.3758670513, -0.1283212011, 0.9917326602],
    ];
    assert_eq!(t.len(), 2);
    for (got, w) in t.iter().zip(want) {
        for (g, x) in [got.c3, got.s3, got.c7, got.s7].iter().zip(w) {
            assert!(close(*g, x, 5e-10), "{g} vs {x}");
        }
    }
}

fn k2_res(delta: f64, p: &NumericParameters, t: &K2Tuple) -> f64 {
    let r = [
        delta * t.s7 + p.a[2] * t.s3 + p.b1 - p.w1,
        -delta * t.c7 - p.a[2] * t.c3 + p.b2 - p.w2,
        t.c3 * t.c3 + t.s3 * t.s3 - 1.0,
        t.c7 * t.c7 + t.s7 * t.s7 - 1.0,
    ];
    r.iter().fold(0.0, |m, x| m.max(x.abs()))
}

#[test]
fn k2_newton_residuals_are_tiny() {
    let p = bench();
    for t in solve_k2(&p).unwrap() {
        assert!(k2_res(p.a[3] - p.a[4], &p, &t) < 1e-13);
    }
}

#[test]
fn k2_double_root_gives_one_tuple() {
    // a3 = |b - w| + |a4 - a5| puts the line tangent to the circle.
    let p = bench();
    let a3 = p.bw2().sqrt() + (p.a[3] - p.a[4]).abs();
    let q = MechanismParameters::benchmark()
        .with_f64("a3", a3)
        .unwrap()
        .numeric();
    let t = solve_k2(&q).unwrap();
    assert_eq!(t.len(), 1);
    assert!(k2_res(q.a[3] - q.a[4], &q, &t[0]) < 1e-12);
}

#[test]
fn k2_degenerate_and_empty_cases() {
    let eq = MechanismParameters::benchmark().with("a5", "0.02").unwrap();
    assert!(matches!(
        solve_k2(&eq.numeric()),
        Err(SolveError::Degenerate(_))
    ));
    let far = MechanismParameters::benchmark().with("a3", "0.5").unwrap();
    assert!(matches!(
        solve_k2(&far.numeric()),
        Err(SolveError::NoRealRoots(_))
    ));
}

#[test]
fn k2_mirrored_branch() {
    let p = MechanismParameters::benchmark()
        .with("b2", "-0.00227")
        .unwrap()
        .numeric();
    let t = solve_k2(&p).unwrap();
    assert_eq!(t.len(), 2);
    for x in &t {
        assert!(k2_res(p.a[3] - p.a[4], &p, x) < 1e-13);
    }
    assert!(t[0].s7 <= t[1].s7);
    assert_eq!(t[0].s7, t[1].s7);
    // Nudging b2 off the mirrored case moves the roots continuously.
    let q = MechanismParameters::benchmark()
        .with_f64("b2", -0.00227 + 1e-9)
        .unwrap()
        .numeric();
    for b in solve_k2(&q).unwrap() {
        assert!(t
            .iter()
            .any(|a| close(a.s7, b.s7, 1e-6) && close(a.c3, b.c3, 1e-6)));
    }
}

#[test]
fn k1_reproduces_first_table_column() {
    let p = MechanismParameters::t5_example().numeric();
    let k2 = solve_k2(&p).unwrap();
    let arms = solve_k1(&p, k2[0].c3, k2[0].s3).unwrap();
    assert_eq!(arms.len(), 2);
    let a = arms[1];
    for (g, w) in [a.c1, a.s1, a.c2, a.s2]
        .iter()
        .zip([-0.8322, -0.5544, -0.3045, 0.9525])
    {
        assert!(close(*g, w, 5e-5), "{g} vs {w}");
    }
    assert!(arms[0].s2 < arms[1].s2);
}

#[test]
fn k1_double_root_when_e_vanishes() {
    let p = MechanismParameters::t5_example().numeric();
    let t = solve_k2(&p).unwrap()[0];
    let d0 = Arm::k1(&p, t.c3, t.s3).d0();
    let a2 = p.a[0] + d0.sqrt();
    let arm = Arm {
        a2,
        ..Arm::k1(&p, t.c3, t.s3)
    };
    let roots = arm.solve().unwrap();
    assert_eq!(roots.len(), 1);
    assert_eq!(roots[0].s2, 0.0);
    assert!(close(roots[0].c2, 1.0, 1e-15));
    let r = [
        arm.a1 * roots[0].c1 - arm.a2 * roots[0].c1 - arm.x,
        arm.a1 * roots[0].s1 - arm.a2 * roots[0].s1 - arm.y,
    ];
    assert!(r.iter().all(|v| v.abs() < 1e-14), "{r:?}");
}

#[test]
fn k1_degenerate_centre_node() {
    let arm = Arm {
        a1: 0.03,
        a2: 0.03,
        x: 0.0,
        y: 0.0,
    };
    assert!(matches!(arm.solve(), Err(SolveError::Degenerate(_))));
}

#[test]
fn benchmark_t5_is_empty_with_positive_e() {
    let s = solve_t5(&bench()).unwrap();
    assert!(s.reports.is_empty());
    assert_eq!(s.conditions.e.len(), 2);
    for e in &s.conditions.e {
        assert!(*e > 0.0 && *e < 1e-4, "{e}");
    }
    assert!(s.reason().starts_with("E = +1.7e-05 > 0"), "{}", s.reason());
}

#[test]
fn t_branch_requires_its_factor() {
    let p = MechanismParameters::benchmark().with("a7", "0.05").unwrap();
    assert!(matches!(
        solve_t5(&p.numeric()),
        Err(SolveError::InvalidBranch(_))
    ));
}

#[test]
fn t3_example_has_four_singularities() {
    let p = MechanismParameters::benchmark()
        .with("a1", "0.06")
        .unwrap()
        .with("a2", "0.06")
        .unwrap()
        .numeric();
    let s = solve_t3(&p).unwrap();
    assert_eq!(s.reports.len(), 4);
    for r in &s.reports {
        assert!(r.passes());
        assert_eq!(r.configuration.s[3], 1.0);
        assert_eq!(r.configuration.s[5], -1.0);
    }
}

#[test]
fn u1_example_has_two_singularities() {
    let p = MechanismParameters::u1_example().numeric();
    let (c7, s7) = u1_angle7(&p).unwrap();
    assert!(close(c7, -0.6364, 5e-5) && close(s7, 0.7714, 5e-5));
    let s = solve_u1(&p).unwrap();
    assert_eq!(s.conditions.c4_product, Some(0.0));
    assert_eq!(s.reports.len(), 2);
    assert!(s.reports.iter().all(|r| r.passes()));
}

#[test]
fn u1_simple_c4_roots_double_the_count() {
    let p = MechanismParameters::u1_example()
        .with("a4", "0.021")
        .unwrap()
        .numeric();
    let s = solve_u1(&p).unwrap();
    assert!(s.conditions.c4_product.unwrap() < 0.0);
    assert_eq!(s.reports.len(), 4);
    assert!(s.reports.iter().all(|r| r.passes()));
}

#[test]
fn u1_rejections() {
    let off = bench();
    assert!(matches!(solve_u1(&off), Err(SolveError::InvalidBranch(_))));
    let eq = MechanismParameters::u1_example()
        .with("a7", "0.02")
        .unwrap();
    assert!(matches!(
        solve_u1(&eq.numeric()),
        Err(SolveError::Degenerate(_))
    ));
}

#[test]
fn branch_parse_and_fmt() {
    assert_eq!("t5".parse::<Branch>().unwrap(), Branch::T5);
    assert_eq!("U1".parse::<Branch>().unwrap(), Branch::U1);
    assert!("t4".parse::<Branch>().is_err());
    assert_eq!(fmt_sci(3.4e-5, 1), "+3.4e-05");
    assert_eq!(fmt_sci(-12.0, 2), "-1.20e+01");
    assert_eq!(fmt_sci(0.0, 1), "+0.0e+00");
}

fn random_params(r: &mut impl Rng) -> NumericParameters {
    let mut a = [0.0; 7];
    for x in a.iter_mut() {
        *x = r.gen_range(0.005..0.08);
    }
    NumericParameters {
        a,
        b1: r.gen_range(-0.08..0.08),
        b2: r.gen_range(-0.08..0.08),
        w1: r.gen_range(-0.08..0.08),
        w2: r.gen_range(-0.08..0.08),
    }
}

#[test]
fn appendix_forms_agree() {
    let mut r = rng(11);
    for _ in 0..100 {
        let p = random_params(&mut r);
        let (t3, t7): (f64, f64) = (r.gen_range(-3.0..3.0), r.gen_range(-3.0..3.0));
        let tables = [
            (CoefficientTable::F, None),
            (CoefficientTable::D, Some((t3.cos(), t3.sin()))),
            (CoefficientTable::L, Some((t3.cos(), t3.sin()))),
            (CoefficientTable::N, Some((t3.cos(), t3.sin()))),
            (CoefficientTable::R, Some((t7.cos(), t7.sin()))),
        ];
        for (which, extra) in tables {
            let m = appendix_coefficients(which, &p, extra).unwrap();
            // Terms are at most of size 0.3^6, so compare against that scale.
            let scale = m.values().fold(0.3f64.powi(6), |s, v| s.max(v.abs()));
            for (k, v) in &m {
                if let Some(base) = k.strip_suffix("_expanded") {
                    let w = m[base];
                    assert!((v - w).abs() <= 1e-12 * scale, "{k}: {v} vs {w}");
                }
            }
            if which == CoefficientTable::F {
                assert!((m["D_printed"] - m["D_theorem"]).abs() <= 1e-12 * scale);
            }
        }
    }
}

#[test]
fn appendix_needs_extra_input() {
    assert!(appendix_coefficients(CoefficientTable::D, &bench(), None).is_err());
    let eq = MechanismParameters::benchmark()
        .with("a5", "0.02")
        .unwrap()
        .numeric();
    let m = appendix_coefficients(CoefficientTable::F, &eq, None).unwrap();
    assert_eq!(m["f1"], 0.0);
    assert_eq!(m["f2"], 0.0);
    assert_eq!(m["f1_expanded"], 0.0);
}

#[test]
fn appendix_matches_solver_coefficients() {
    let p = bench();
    let m = appendix_coefficients(CoefficientTable::F, &p, None).unwrap();
    let k = KCoefficients::new(p.a[3] - p.a[4], &p);
    for (name, v) in [
        ("f1", k.f1),
        ("f2", k.f2),
        ("f3", k.f3),
        ("f4", k.f4),
        ("f5", k.f5),
    ] {
        assert!((m[name] - v).abs() <= 1e-15 * v.abs().max(1e-10), "{name}");
    }
    assert_eq!(m["D"], k.discriminant());
}

fn mp(text: &str) -> Polynomial {
    parse_polynomial(text, &Universe::mechanism()).unwrap()
}

#[test]
fn simplifications_are_polynomial_identities() {
    let bw = "((b1 - w1)^2 + (b2 - w2)^2)";
    assert_eq!(
        mp(&format!("4*(a5 - a4)^2*{bw}")),
        mp("4*(a5 - a4)^2*(b1^2 - 2*b1*w1 + b2^2 - 2*b2*w2 + w1^2 + w2^2)")
    );
    let d0 = "(a3^2 + b1^2 + b2^2 + 2*a3*(b1*s3 - b2*c3))";
    let n1 = mp(&format!("(a1 + a2)^2 - {d0}"));
    let n2 = mp(&format!("(a1 - a2)^2 - {d0}"));
    assert_eq!(n2, &n1 - &mp("4*a1*a2"));
    assert_eq!(
        n1,
        mp("a1^2 + 2*a1*a2 + a2^2 - a3^2 - 2*a3*b1*s3 + 2*a3*b2*c3 - b1^2 - b2^2")
    );
}

#[test]
fn c4_squared_identity() {
    // 4 a4² a5² (1 - s4²) = -t5 t6 t7 t8 with s4 from the angle-4 generator.
    let num = mp("a4^2 + a5^2 - a6^2 + 2*a6*a7 - a7^2");
    let lhs = &mp("4*a4^2*a5^2") - &num.pow(2);
    let prod = (5..=8).fold(mp("1"), |acc, i| &acc * &crate::mechanism::t_factor(i));
    assert!((&lhs + &prod).is_zero());
}

#[test]
fn corrected_quadratic_lies_in_k2() {
    let (_, k2) = system_k(None);
    let names = [
        "c3", "s3", "c7", "s7", "a3", "a4", "a5", "b1", "b2", "w1", "w2",
    ];
    let (u, gens) = restrict(&k2, &names).unwrap();
    let ord = crate::exactalg::MonomialOrder::from_names(
        &u,
        crate::exactalg::OrderKind::DegRevLex,
        &[names[..4].to_vec(), names[4..].to_vec()],
    )
    .unwrap();
    let b = buchberger(&gens, &ord).unwrap();
    let bw = "((b1 - w1)^2 + (b2 - w2)^2)";
    let f1 = format!("4*(a5 - a4)^2*{bw}");
    let f2 = format!("4*(w1 - b1)*(a4 - a5)*(a3^2 - (a4 - a5)^2 - {bw})");
    let f3 = format!("({bw} + 2*(b2 - w2)*(a4 - a5) - a3^2 + (a4 - a5)^2)");
    let f4 = format!("({bw} - 2*(b2 - w2)*(a4 - a5) - a3^2 + (a4 - a5)^2)");
    let good = parse_polynomial(&format!("{f1}*s7^2 + {f2}*s7 + {f3}*{f4}"), &u).unwrap();
    let printed = parse_polynomial(&format!("{f1}*s7^2 + {f2}*s7 - {f3}*{f4}"), &u).unwrap();
    assert!(contains(&b, &good));
    assert!(!contains(&b, &printed));
}

#[test]
fn arm_linear_forms() {
    // Which printed linear relations for c2 and s1 hold at solved roots.
    let p = MechanismParameters::t5_example().numeric();
    let [a1, a2, ..] = p.a;
    for t in solve_k2(&p).unwrap() {
        let arm = Arm::k1(&p, t.c3, t.s3);
        let (d0, n1, n2) = (arm.d0(), arm.n1(), arm.n2());
        let d1 = 2.0 * a1 * a2 * d0;
        let d3 = (a1 * a1 + a2 * a2) * d0 - (a1 * a1 - a2 * a2).powi(2);
        for r in arm.solve().unwrap() {
            let scale = d0 * d0;
            assert!((d1 * r.c2 + n1 * n2 + d3).abs() < 1e-12 * scale);
            assert!((d1 * r.c2 + d3).abs() > 1e-3 * scale);
            let m = a1 * a1 - a2 * a2 + d0;
            let fixed = -2.0 * a1 * d0 * r.s1 + 2.0 * a1 * a2 * r.s2 * arm.x + m * arm.y;
            let printed = -2.0 * a1 * a2 * d0 * r.s1 + 2.0 * a1 * a2 * arm.x + m * arm.y;
            assert!(fixed.abs() < 1e-14 * d0, "{fixed}");
            assert!(printed.abs() > 1e-3 * d0 * a1, "{printed}");
        }
    }
}

#[test]
fn rational_example_is_printed_configuration() {
    let (p, c) = rational_singularity();
    assert!(c.on_circles());
    let f = c.to_f64();
    assert_eq!(f.c, [0.0, 0.6, 0.8, 0.0, 0.6, 0.0, 0.8]);
    assert_eq!(f.s, [1.0, -0.8, -0.6, -1.0, 0.8, 1.0, 0.6]);
    let pt = c.point(&p);
    assert!(crate::mechanism::full_system(None)
        .iter()
        .all(|q| q.eval_exact(&pt).is_zero()));
}

#[test]
fn sweep_symmetry_and_regions() {
    let grid = SweepGrid {
        a1: SweepAxis {
            start: 0.01,
            stop: 0.06,
            step: 0.005,
        },
        a2: SweepAxis {
            start: 0.01,
            stop: 0.06,
            step: 0.005,
        },
    };
    let nodes = region_sweep(Branch::T5, &grid, &bench()).unwrap();
    let n = grid.a1.len();
    assert_eq!(nodes.len(), n * n);
    for i in 0..n {
        for j in 0..n {
            assert_eq!(nodes[i * n + j].values, nodes[j * n + i].values);
        }
    }
    let at = |a1: f64, a2: f64, b: Branch, p: &NumericParameters| {
        let g = SweepGrid {
            a1: SweepAxis {
                start: a1,
                stop: a1,
                step: 1.0,
            },
            a2: SweepAxis {
                start: a2,
                stop: a2,
                step: 1.0,
            },
        };
        region_sweep(b, &g, p).unwrap().pop().unwrap()
    };
    assert_eq!(at(0.03, 0.055, Branch::T5, &bench()).signs, vec![-1, -1]);
    assert_eq!(at(0.007, 0.028, Branch::T5, &bench()).signs, vec![1, 1]);
    let u = MechanismParameters::u1_example().numeric();
    assert_eq!(at(0.02, 0.055, Branch::U1, &u).signs, vec![1]);
    let csv = sweep_csv(Branch::T5, &nodes);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("format=1"));
    assert_eq!(lines.next(), Some("a1,a2,E1,E2,sign1,sign2"));
    assert_eq!(lines.count(), n * n);
}

#[test]
fn default_grid_extent() {
    let g = SweepGrid::default();
    assert_eq!(g.a1.len(), 301);
    assert!((g.a1.value(300) - 0.08).abs() < 1e-12);
}

#[test]
fn configuration_angles() {
    let y = [
        -2.5,
        1.0,
        0.0,
        -std::f64::consts::FRAC_PI_2,
        3.0,
        std::f64::consts::PI,
        -0.1,
    ];
    let c = Configuration::from_angles(&y);
    for (a, b) in c.angles().iter().zip(y) {
        assert!((a - b).abs() < 1e-15);
    }
    assert!(c.circle_defect() < 1e-15);
    // atan2 maps the negative axis to +pi.
    let neg = Configuration {
        c: [-1.0; 7],
        s: [0.0; 7],
    };
    assert_eq!(neg.angles()[0], std::f64::consts::PI);
    assert_eq!(Configuration::from_slice(&c.to_vec()), c);
}
