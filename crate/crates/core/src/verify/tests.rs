use num_bigint::BigInt;
use rand::Rng;

use super::*;
use crate::exactalg::Rational;
use crate::mechanism::MechanismParameters;
use crate::numsolve::{rational_singularity, refine_on_variety, solve_t5};
use crate::testutil::{rng, small_rational};

fn random_matrix(r: &mut impl Rng, m: usize, n: usize) -> Vec<Vec<f64>> {
    (0..m)
        .map(|_| (0..n).map(|_| r.gen_range(-1.0..1.0)).collect())
        .collect()
}

fn frob(a: &[Vec<f64>]) -> f64 {
    a.iter().flatten().map(|x| x * x).sum::<f64>().sqrt()
}

#[test]
fn svd_reconstructs_and_orders() {
    let mut r = rng(3);
    for (m, n) in [(13, 14), (14, 13), (5, 5), (1, 4), (7, 2)] {
        let a = random_matrix(&mut r, m, n);
        let d = svd(&a);
        assert_eq!(d.sigma.len(), m.min(n));
        assert!(d.sigma.windows(2).all(|w| w[0] >= w[1]));
        assert!(d.sigma.iter().all(|s| *s >= 0.0));
        let back = d.reconstruct();
        let err: Vec<Vec<f64>> = a
            .iter()
            .zip(&back)
            .map(|(x, y)| x.iter().zip(y).map(|(p, q)| p - q).collect())
            .collect();
        assert!(frob(&err) <= 1e-12 * frob(&a), "{m}x{n}");
        for i in 0..d.sigma.len() {
            for j in 0..d.sigma.len() {
                let dot: f64 = d.v.iter().map(|row| row[i] * row[j]).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((dot - want).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn svd_of_known_matrix() {
    let a = vec![vec![3.0, 0.0], vec![4.0, 5.0]];
    let s = svd(&a).sigma;
    // Singular values of [[3, 0], [4, 5]] are 3 sqrt(5) and sqrt(5).
    assert!((s[0] - 45f64.sqrt()).abs() < 1e-14);
    assert!((s[1] - 5f64.sqrt()).abs() < 1e-14);
}

#[test]
fn rank_of_degenerate_matrices() {
    assert_eq!(matrix_rank(&vec![vec![0.0; 14]; 13], 1e-8).0, 0);
    let mut r = rng(4);
    let a = random_matrix(&mut r, 3, 14);
    let mut rows = a.clone();
    let combo: Vec<f64> = (0..14).map(|j| a[0][j] - 2.0 * a[1][j]).collect();
    rows.push(combo);
    assert_eq!(matrix_rank(&rows, 1e-8).0, 3);
}

#[test]
fn residuals_at_origin_and_on_identities() {
    let p = MechanismParameters::benchmark().numeric();
    let zero = Configuration {
        c: [0.0; 7],
        s: [0.0; 7],
    };
    let r = residuals(&zero, &p);
    assert!(r[6..].iter().all(|x| *x == -1.0));
    assert_eq!(r[0], -p.b1);
    let mut g = rng(5);
    for _ in 0..20 {
        let y: [f64; 7] = std::array::from_fn(|_| g.gen_range(-3.2..3.2));
        let r = residuals(&Configuration::from_angles(&y), &p);
        assert!(r[6..].iter().all(|x| x.abs() <= 1e-15));
    }
}

/// Consistent initial angles of the benchmark problem.
const BENCHMARK_START: [f64; 7] = [
    -0.061_713_890_014_276_45,
    0.0,
    0.455_279_819_163_070_37,
    0.222_668_390_165_885_88,
    0.487_364_979_543_842_56,
    -0.222_668_390_165_885_88,
    1.230_547_444_549_821_2,
];

#[test]
fn generic_benchmark_point_has_full_rank() {
    let p = MechanismParameters::benchmark().numeric();
    let start = Configuration::from_angles(&BENCHMARK_START);
    assert!(residual_norm(&start, &p) < 1e-12);
    let mut g = rng(6);
    let nudged = start.angles().map(|y| y + g.gen_range(-0.01..0.01));
    let seed = Configuration::from_angles(&nudged);
    let q = refine_on_variety(&seed, &p, 30);
    assert!(residual_norm(&q, &p) < 1e-14);
    let (rank, sigma) = numeric_rank(&q, &p, DEFAULT_TOL_RATIO);
    assert_eq!(rank, 13, "{sigma:?}");
}

#[test]
fn exact_rank_basics() {
    let id: Vec<Vec<Rational>> = (0..13)
        .map(|i| {
            (0..13)
                .map(|j| Rational::from_integer(BigInt::from((i == j) as i32)))
                .collect()
        })
        .collect();
    assert_eq!(exact_rank(&id), 13);
    assert_eq!(exact_rank(&[]), 0);
    let z = vec![vec![Rational::from_integer(0.into()); 3]; 2];
    assert_eq!(exact_rank(&z), 0);
}

#[test]
fn exact_rank_matches_numeric_rank() {
    let mut r = rng(7);
    for trial in 0..40 {
        let (m, n) = (r.gen_range(1..7), r.gen_range(1..7));
        let mut rows: Vec<Vec<Rational>> = (0..m)
            .map(|_| (0..n).map(|_| small_rational(&mut r)).collect())
            .collect();
        if trial % 2 == 0 && m > 1 {
            // Force a dependent row.
            let k = small_rational(&mut r);
            rows[m - 1] = rows[0].iter().map(|x| x * &k).collect();
        }
        let f: Vec<Vec<f64>> = rows
            .iter()
            .map(|row| row.iter().map(crate::exactalg::rational_to_f64).collect())
            .collect();
        let (nr, sigma) = matrix_rank(&f, 1e-9);
        // Only compare well-conditioned draws.
        let kept: Vec<&f64> = sigma.iter().filter(|s| **s > 1e-9 * sigma[0]).collect();
        if kept.last().is_some_and(|s| **s > 1e-6 * sigma[0]) || nr == 0 {
            assert_eq!(exact_rank(&rows), nr, "{rows:?}");
        }
    }
}

#[test]
fn rational_singularity_certificate() {
    let (p, c) = rational_singularity();
    assert!(exact_residuals(&c, &p)
        .iter()
        .all(|x| *x == Rational::from_integer(0.into())));
    let j = exact_jacobian(&c, &p);
    assert_eq!((j.len(), j[0].len()), (13, 14));
    assert!(exact_rank(&j) <= 12);
    let (rank, _) = numeric_rank(&c.to_f64(), &p.numeric(), DEFAULT_TOL_RATIO);
    assert!(rank <= 12);
}

#[test]
fn lemma1_certificates() {
    let r = lemma1_report();
    assert!(r.rows_in_ideal);
    assert!(r.det_identity);
    assert!(r.h_identity);
    assert!(r.equal_lengths_vanish);
    assert!(!r.printed_first_row_in_ideal);
    assert!(lemma1_det_a_check());
}

#[test]
fn lemma1_det_numeric_spot_check() {
    let mut g = rng(8);
    for _ in 0..100 {
        let (a4, a5): (f64, f64) = (g.gen_range(0.01..1.0), g.gen_range(0.01..1.0));
        let th: f64 = g.gen_range(-3.2..3.2);
        let (c4, s4) = (th.cos(), th.sin());
        let a11 = a4 * a4 * (c4 * c4 - s4 * s4) - 2.0 * a4 * a5 * s4 - a5 * a5;
        let a12 = 2.0 * a4 * c4 * (a4 * s4 + a5);
        let a21 = -2.0 * a4 * a4 * c4 * s4;
        let a22 = a4 * a4 * (c4 * c4 - s4 * s4) + a5 * a5;
        let direct = a11 * a22 - a12 * a21;
        let factored = 2.0 * a4 * a5 * (a4 + a5) * (a4 - a5) * s4
            + (a4 - a5) * (a4 + a5) * (a4 * a4 + a5 * a5);
        assert!((direct - factored).abs() < 1e-12, "{direct} vs {factored}");
    }
}

#[test]
fn lemma1_elimination_matches_printed() {
    let q = |t: &str| crate::exactalg::parse_rational(t).unwrap();
    assert!(lemma1_elimination_check(&q("1/50"), &q("1/25")));
    assert!(lemma1_elimination_check(&q("3/7"), &q("2/9")));
    assert_eq!(lemma1_elimination(&q("1/50"), &q("1/25")).len(), 3);
}

#[test]
fn report_round_trip() {
    let p = MechanismParameters::t5_example().numeric();
    let mut reports = solve_t5(&p).unwrap().reports;
    reports[0].exact_rank = Some(12);
    let text = format_reports(&reports);
    assert!(text.starts_with("format=1\n"));
    assert_eq!(text.matches("[singularity").count(), 4);
    assert!(text.contains("c1=-4.56") || text.contains("c1=-8.32"));
    let back = parse_reports(&text).unwrap();
    assert_eq!(back.len(), reports.len());
    let close = |x: f64, y: f64| (x - y).abs() <= 1e-15 * x.abs().max(1e-300);
    for (b, r) in back.iter().zip(&reports) {
        assert_eq!(b.branch, r.branch);
        assert_eq!(
            (b.numeric_rank, b.exact_rank),
            (r.numeric_rank, r.exact_rank)
        );
        assert_eq!(b.tol_ratio, r.tol_ratio);
        assert!(close(b.residual_norm, r.residual_norm));
        let (x, y) = (b.configuration.to_vec(), r.configuration.to_vec());
        assert!(x.iter().zip(&y).all(|(p, q)| close(*p, *q)));
        assert_eq!(b.singular_values.len(), r.singular_values.len());
        assert!(b
            .singular_values
            .iter()
            .zip(&r.singular_values)
            .all(|(p, q)| close(*p, *q)));
    }
    assert_eq!(format_reports(&back), text);
    assert!(parse_reports("c1=0").is_err());
    assert!(matches!(
        parse_reports("format=1\n[singularity 1]\nbranch=T5\n"),
        Err(ReportError::Field { .. })
    ));
}

#[test]
fn sixteen_significant_digits() {
    let c = Configuration::from_angles(&[0.1; 7]);
    let r = SingularityReport::certify("T5", c, &MechanismParameters::benchmark().numeric());
    let text = format_reports(&[r]);
    let line = text.lines().find(|l| l.starts_with("c1=")).unwrap();
    let mantissa = line[3..].split('e').next().unwrap();
    assert_eq!(
        mantissa.chars().filter(|ch| ch.is_ascii_digit()).count(),
        16
    );
}
