//! Random inputs for unit tests.

use std::sync::Arc;

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::exactalg::{Monomial, Polynomial, Rational, Universe};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn small_rational(r: &mut StdRng) -> Rational {
    let n: i64 = r.gen_range(-9..=9);
    let d: i64 = r.gen_range(1..=5);
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn nonzero_rational(r: &mut StdRng) -> Rational {
    loop {
        let q = small_rational(r);
        if q != Rational::from_integer(0.into()) {
            return q;
        }
    }
}

/// Up to `terms` terms, each of total degree at most `deg`.
pub fn random_poly(r: &mut StdRng, u: &Arc<Universe>, terms: usize, deg: u32) -> Polynomial {
    let n = u.len();
    let count = r.gen_range(0..=terms);
    let mut out = Vec::new();
    for _ in 0..count {
        let mut exps = vec![0u16; n];
        let d = r.gen_range(0..=deg);
        for _ in 0..d {
            exps[r.gen_range(0..n)] += 1;
        }
        out.push((Monomial::from_exponents(&exps), nonzero_rational(r)));
    }
    Polynomial::from_terms(u, out)
}

pub fn random_point(r: &mut StdRng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| small_rational(r)).collect()
}
