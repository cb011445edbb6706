//! Integer-coefficient working representation used inside Buchberger.
//!
//! Polynomials are kept primitive with a positive leading coefficient and
//! terms sorted by the active order, largest first. Reduction is
//! fraction-free: `f <- a*f - b*q*g` with `a = lc(g)/d`, `b = lc(f)/d`,
//! `d = gcd(lc(f), lc(g))`.

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exactalg::{Monomial, MonomialOrder, Polynomial, Rational, Universe};

#[derive(Clone, Debug)]
pub(crate) struct IPoly {
    pub terms: Vec<(Monomial, BigInt)>,
}

/// One elementary operation performed during a reduction, replayable on
/// cofactor vectors.
#[derive(Clone, Debug)]
pub(crate) enum Step {
    /// `f <- a*f - b*q*basis[by]`
    Reduce {
        a: BigInt,
        b: BigInt,
        q: Monomial,
        by: usize,
    },
    /// `f <- f / c`
    Divide(BigInt),
}

impl IPoly {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn lead(&self) -> &(Monomial, BigInt) {
        &self.terms[0]
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Clears denominators; returns the polynomial and the factor `k` with
    /// `result = k * p`.
    pub fn from_rational(p: &Polynomial, ord: &MonomialOrder) -> (IPoly, Rational) {
        let terms = p.sorted_terms(ord);
        let mut lcm = BigInt::one();
        for (_, c) in &terms {
            lcm = lcm.lcm(c.denom());
        }
        let mut out: Vec<(Monomial, BigInt)> = terms
            .into_iter()
            .map(|(m, c)| (m, (c.numer() * &lcm) / c.denom()))
            .collect();
        let mut factor = Rational::from_integer(lcm);
        let content = content_of(out.iter().map(|t| &t.1));
        let negate = out.first().is_some_and(|t| t.1.is_negative());
        let mut div = content.clone();
        if negate {
            div = -div;
        }
        if !div.is_one() && !div.is_zero() {
            for t in out.iter_mut() {
                t.1 = &t.1 / &div;
            }
            factor /= Rational::from_integer(div);
        }
        (IPoly { terms: out }, factor)
    }

    pub fn to_rational(&self, universe: &Arc<Universe>) -> Polynomial {
        Polynomial::from_terms(
            universe,
            self.terms
                .iter()
                .map(|(m, c)| (*m, Rational::from_integer(c.clone()))),
        )
    }

    /// Makes the polynomial primitive with positive leading coefficient;
    /// returns the divisor applied (possibly negative).
    pub fn normalize(&mut self) -> BigInt {
        if self.terms.is_empty() {
            return BigInt::one();
        }
        let mut c = content_of(self.terms.iter().map(|t| &t.1));
        if self.terms[0].1.is_negative() {
            c = -c;
        }
        if !c.is_one() {
            for t in self.terms.iter_mut() {
                t.1 = &t.1 / &c;
            }
        }
        c
    }
}

pub(crate) fn content_of<'a, I: Iterator<Item = &'a BigInt>>(coeffs: I) -> BigInt {
    let mut g = BigInt::zero();
    for c in coeffs {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// `a*f - b*q*g` where `f` and `g` are descending term lists.
fn combine(
    ord: &MonomialOrder,
    f: &[(Monomial, BigInt)],
    a: &BigInt,
    g: &[(Monomial, BigInt)],
    b: &BigInt,
    q: &Monomial,
) -> Vec<(Monomial, BigInt)> {
    let mut out = Vec::with_capacity(f.len() + g.len());
    let a_one = a.is_one();
    let (mut i, mut j) = (0, 0);
    let mut gm = g.first().map(|t| t.0.mul(q));
    while i < f.len() || j < g.len() {
        let take = match (i < f.len(), gm) {
            (true, Some(ref m)) => ord.cmp(&f[i].0, m),
            (true, None) => Ordering::Greater,
            (false, _) => Ordering::Less,
        };
        match take {
            Ordering::Greater => {
                let c = if a_one { f[i].1.clone() } else { &f[i].1 * a };
                out.push((f[i].0, c));
                i += 1;
            }
            Ordering::Less => {
                let c = -(&g[j].1 * b);
                out.push((gm.unwrap(), c));
                j += 1;
                gm = g.get(j).map(|t| t.0.mul(q));
            }
            Ordering::Equal => {
                let c = if a_one {
                    &f[i].1 - &g[j].1 * b
                } else {
                    &f[i].1 * a - &g[j].1 * b
                };
                if !c.is_zero() {
                    out.push((f[i].0, c));
                }
                i += 1;
                j += 1;
                gm = g.get(j).map(|t| t.0.mul(q));
            }
        }
    }
    out
}

/// Divisor lookup over a set of reducers.
pub(crate) struct Reducers<'a> {
    pub ord: &'a MonomialOrder,
    pub polys: &'a [IPoly],
    entries: Vec<(usize, u32, Monomial, usize)>,
}

impl<'a> Reducers<'a> {
    pub fn new(ord: &'a MonomialOrder, polys: &'a [IPoly], active: &[usize]) -> Reducers<'a> {
        let entries = active
            .iter()
            .map(|&i| {
                let lm = polys[i].lead().0;
                (i, lm.support_mask(), lm, polys[i].len())
            })
            .collect();
        Reducers {
            ord,
            polys,
            entries,
        }
    }

    /// Reducer with the fewest terms whose leading monomial divides `m`;
    /// ties go to the lowest index.
    fn find(&self, m: &Monomial) -> Option<usize> {
        let mask = m.support_mask();
        let mut best: Option<(usize, usize)> = None;
        for &(idx, lmask, ref lm, len) in &self.entries {
            if lmask & !mask != 0 || !lm.divides(m) {
                continue;
            }
            match best {
                Some((_, blen)) if blen <= len => {}
                _ => best = Some((idx, len)),
            }
        }
        best.map(|(i, _)| i)
    }

    /// Full (`tail = true`) or top-only reduction of `f`.
    pub fn reduce(&self, f: IPoly, tail: bool, mut steps: Option<&mut Vec<Step>>) -> IPoly {
        let mut rem: Vec<(Monomial, BigInt)> = Vec::new();
        let mut cur = f.terms;
        let mut start = 0usize;
        let mut since_content = 0usize;
        while start < cur.len() {
            let m = cur[start].0;
            let Some(k) = self.find(&m) else {
                if !tail {
                    break;
                }
                rem.push(std::mem::replace(&mut cur[start], (m, BigInt::zero())));
                start += 1;
                continue;
            };
            let g = &self.polys[k];
            let (lg, cg) = g.lead();
            let q = lg.quotient_of(&m).expect("divisor");
            let c = &cur[start].1;
            let d = c.gcd(cg);
            let mut a = cg / &d;
            let mut b = c / &d;
            if a.is_negative() {
                a = -a;
                b = -b;
            }
            cur = combine(self.ord, &cur[start + 1..], &a, &g.terms[1..], &b, &q);
            start = 0;
            if !a.is_one() {
                for t in rem.iter_mut() {
                    t.1 *= &a;
                }
            }
            if let Some(s) = steps.as_deref_mut() {
                s.push(Step::Reduce { a, b, q, by: k });
            }
            since_content += 1;
            if since_content >= 8 {
                since_content = 0;
                let bits = rem
                    .iter()
                    .chain(cur.iter())
                    .map(|t| t.1.bits())
                    .max()
                    .unwrap_or(0);
                if bits > 64 {
                    let g = content_of(rem.iter().chain(cur.iter()).map(|t| &t.1));
                    if !g.is_one() && !g.is_zero() {
                        for t in rem.iter_mut().chain(cur.iter_mut()) {
                            t.1 = &t.1 / &g;
                        }
                        if let Some(s) = steps.as_deref_mut() {
                            s.push(Step::Divide(g));
                        }
                    }
                }
            }
        }
        rem.extend(cur.drain(start..));
        IPoly { terms: rem }
    }
}

/// `S(f, g)` as integer polynomial, with the multipliers used:
/// `S = uf*mf*f - ug*mg*g`.
pub(crate) fn s_polynomial(
    ord: &MonomialOrder,
    f: &IPoly,
    g: &IPoly,
) -> (IPoly, (BigInt, Monomial), (BigInt, Monomial)) {
    let (lf, cf) = f.lead();
    let (lg, cg) = g.lead();
    let l = lf.lcm(lg);
    let mf = lf.quotient_of(&l).unwrap();
    let mg = lg.quotient_of(&l).unwrap();
    let d = cf.gcd(cg);
    let uf = cg / &d;
    let ug = cf / &d;
    let fs: Vec<(Monomial, BigInt)> = f.terms[1..]
        .iter()
        .map(|(m, c)| (m.mul(&mf), c.clone()))
        .collect();
    let terms = combine(ord, &fs, &uf, &g.terms[1..], &ug, &mg);
    (IPoly { terms }, (uf, mf), (ug, mg))
}
