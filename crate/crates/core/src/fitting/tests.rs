use num_traits::{One, Zero};

use super::*;
use crate::exactalg::parse_polynomial;
use crate::testutil::{random_point, random_poly, rng};

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Determinant by Gaussian elimination over ℚ.
fn det_exact(mut a: Vec<Vec<Rational>>) -> Rational {
    let n = a.len();
    let mut d = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= a[c][c].clone();
        for r in c + 1..n {
            let f = &a[r][c] / &a[c][c];
            for k in c..n {
                let t = &f * &a[c][k];
                a[r][k] -= t;
            }
        }
    }
    d
}

fn random_matrix(seed: u64, u: &Arc<Universe>, rows: usize, cols: usize) -> PolyMatrix {
    let mut r = rng(seed);
    let entries = (0..rows * cols)
        .map(|_| random_poly(&mut r, u, 3, 2))
        .collect();
    PolyMatrix::new(rows, cols, entries).unwrap()
}

#[test]
fn constant_minors() {
    let u = Universe::new(&["x"]).unwrap();
    let m =
        PolyMatrix::from_rationals(&u, &[vec![q(1), q(0), q(2)], vec![q(0), q(1), q(3)]]).unwrap();
    let minors = maximal_minors(&m).unwrap();
    let want: Vec<Polynomial> = [1, 3, -2]
        .iter()
        .map(|&c| Polynomial::integer(&u, c))
        .collect();
    assert_eq!(minors, want);
    assert_eq!(maximal_minors_naive(&m).unwrap(), want);
}

#[test]
fn too_many_rows() {
    let u = Universe::new(&["x"]).unwrap();
    let m = PolyMatrix::from_rationals(&u, &[vec![q(1)], vec![q(2)]]).unwrap();
    assert!(matches!(
        maximal_minors(&m),
        Err(FittingError::TooManyRows { .. })
    ));
}

#[test]
fn circle_jacobian() {
    let u = Universe::mechanism();
    let f = parse_polynomial("c4^2 + s4^2 - 1", &u).unwrap();
    let j = jacobian(&[f], &u.vars(&["c4", "s4"]).unwrap()).unwrap();
    assert_eq!(j.get(0, 0), &parse_polynomial("2*c4", &u).unwrap());
    assert_eq!(j.get(0, 1), &parse_polynomial("2*s4", &u).unwrap());
}

#[test]
fn regular_hypersurface_has_unit_singular_ideal() {
    let u = Universe::new(&["x"]).unwrap();
    let x = Polynomial::named(&u, "x");
    let s = singular_ideal(std::slice::from_ref(&x), &u.vars(&["x"]).unwrap()).unwrap();
    assert_eq!(s, vec![x, Polynomial::one(&u)]);
}

#[test]
fn subset_enumeration() {
    assert_eq!(
        column_subsets(3, 2),
        vec![vec![0, 1], vec![0, 2], vec![1, 2]]
    );
    assert_eq!(column_subsets(8, 6).len(), 28);
    assert_eq!(column_subsets(4, 0), vec![Vec::<usize>::new()]);
    assert!(column_subsets(2, 3).is_empty());
}

#[test]
fn minors_commute_with_evaluation() {
    let u = Universe::new(&["x", "y", "z"]).unwrap();
    let mut r = rng(7);
    for seed in 0..5 {
        let m = random_matrix(100 + seed, &u, 3, 5);
        let minors = maximal_minors(&m).unwrap();
        let pt = random_point(&mut r, 3);
        let vals = m.eval_exact(&pt);
        for (cols, minor) in column_subsets(5, 3).iter().zip(&minors) {
            let sub: Vec<Vec<Rational>> = vals
                .iter()
                .map(|row| cols.iter().map(|&c| row[c].clone()).collect())
                .collect();
            assert_eq!(minor.eval_exact(&pt), det_exact(sub));
        }
    }
}

#[test]
fn row_swap_negates_minors() {
    let u = Universe::new(&["x", "y"]).unwrap();
    for seed in 0..5 {
        let m = random_matrix(200 + seed, &u, 3, 4);
        let mut s = m.clone();
        s.swap_rows(0, 2);
        let a = maximal_minors(&m).unwrap();
        let b = maximal_minors(&s).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x, &-y);
        }
    }
}

#[test]
fn sparse_and_naive_paths_agree() {
    let u = Universe::new(&["x", "y", "z"]).unwrap();
    for (seed, (rows, cols)) in [(2, 3), (3, 5), (4, 6), (5, 7), (6, 8)].iter().enumerate() {
        let mut m = random_matrix(300 + seed as u64, &u, *rows, *cols);
        // Sparsify so that the row reordering matters.
        let mut r = rng(seed as u64);
        for i in 0..*rows {
            for j in 0..*cols {
                if rand::Rng::gen_bool(&mut r, 0.4) {
                    m.entries[i * cols + j] = Polynomial::zero(&u);
                }
            }
        }
        assert_eq!(
            maximal_minors(&m).unwrap(),
            maximal_minors_naive(&m).unwrap()
        );
    }
}

#[test]
fn jacobian_matches_finite_differences() {
    let u = Universe::new(&["x", "y", "z"]).unwrap();
    let mut r = rng(11);
    let polys: Vec<Polynomial> = (0..3).map(|_| random_poly(&mut r, &u, 5, 3)).collect();
    let vars: Vec<Variable> = u.variables().collect();
    let j = jacobian(&polys, &vars).unwrap();
    let pt: Vec<f64> = random_point(&mut r, 3)
        .iter()
        .map(crate::exactalg::rational_to_f64)
        .collect();
    let h = 1e-6;
    for (i, p) in polys.iter().enumerate() {
        for (k, _) in vars.iter().enumerate() {
            let mut a = pt.clone();
            let mut b = pt.clone();
            a[k] += h;
            b[k] -= h;
            let fd = (p.eval_f64(&a) - p.eval_f64(&b)) / (2.0 * h);
            let exact = j.get(i, k).eval_f64(&pt);
            assert!(
                (fd - exact).abs() <= 1e-5 * (1.0 + exact.abs()),
                "{fd} vs {exact}"
            );
        }
    }
}
