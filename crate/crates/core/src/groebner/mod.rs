//! Reduction, Buchberger's algorithm, membership and elimination.
//!
//! Bases are computed over ℚ with integer-coefficient working polynomials
//! (see `ipoly`), pair selection by the normal strategy and the
//! Gebauer–Möller criteria, and a final auto-reduction. The result is the
//! unique reduced basis, so output is deterministic for fixed input.

mod buchberger;
mod ipoly;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactalg::{
    parse_polynomial, AlgebraError, Monomial, MonomialOrder, Polynomial, Rational, Universe,
    Variable,
};
use ipoly::{IPoly, Reducers, Step};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("resource ceiling reached: more than {limit} {what}")]
    ResourceLimit { what: &'static str, limit: usize },
    #[error("empty generator list")]
    EmptyInput,
    #[error("order/keep mismatch: {0}")]
    OrderMismatch(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

pub type Result<T> = std::result::Result<T, GroebnerError>;

/// Ceilings for a Buchberger run.
#[derive(Debug, Clone)]
pub struct GroebnerConfig {
    pub max_pairs: usize,
    pub max_terms: usize,
}

impl Default for GroebnerConfig {
    fn default() -> Self {
        GroebnerConfig {
            max_pairs: 200_000,
            max_terms: 5_000_000,
        }
    }
}

/// Counters from a finished run.
#[derive(Debug, Clone, Default)]
pub struct GroebnerStats {
    pub pairs_processed: usize,
    pub pairs_skipped: usize,
    pub zero_reductions: usize,
    pub basis_size: usize,
}

/// A generating set together with the order it was computed under.
#[derive(Clone)]
pub struct IdealBasis {
    generators: Vec<Polynomial>,
    order: MonomialOrder,
    reduced: bool,
    work: OnceLock<Vec<IPoly>>,
}

impl IdealBasis {
    /// Wraps generators without any checks; `reduced` is false.
    pub fn from_generators(generators: Vec<Polynomial>, order: MonomialOrder) -> IdealBasis {
        IdealBasis {
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
            order,
            reduced: false,
            work: OnceLock::new(),
        }
    }

    fn new_reduced(generators: Vec<Polynomial>, order: MonomialOrder) -> IdealBasis {
        IdealBasis {
            generators,
            order,
            reduced: true,
            work: OnceLock::new(),
        }
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn universe(&self) -> &Arc<Universe> {
        self.order.universe()
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.generators
            .iter()
            .map(|g| *g.leading_term(&self.order).unwrap().0)
            .collect()
    }

    /// Primitive integer copies of the generators.
    fn work(&self) -> &[IPoly] {
        self.work.get_or_init(|| {
            self.generators
                .iter()
                .map(|g| IPoly::from_rational(g, &self.order).0)
                .collect()
        })
    }

    fn all_indices(&self) -> Vec<usize> {
        (0..self.generators.len()).collect()
    }

    /// Checks every pairwise S-polynomial reduces to zero, without using
    /// any pair criteria.
    pub fn s_polynomials_reduce_to_zero(&self) -> bool {
        let work = self.work();
        let idx = self.all_indices();
        let red = Reducers::new(&self.order, work, &idx);
        for i in 0..work.len() {
            for j in i + 1..work.len() {
                let (s, _, _) = ipoly::s_polynomial(&self.order, &work[i], &work[j]);
                if !red.reduce(s, false, None).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Checks the structural conditions of a reduced basis: monic
    /// generators, and no term of any generator divisible by another
    /// generator's leading monomial.
    pub fn is_autoreduced(&self) -> bool {
        let lms = self.leading_monomials();
        for (i, g) in self.generators.iter().enumerate() {
            if !g.leading_term(&self.order).unwrap().1.is_one() {
                return false;
            }
            for (m, _) in g.terms() {
                if lms.iter().enumerate().any(|(j, l)| j != i && l.divides(m)) {
                    return false;
                }
            }
        }
        true
    }

    /// Serializes as a header line followed by one generator per line.
    pub fn to_text(&self) -> String {
        let mut out = self.order.header();
        out.push('\n');
        for g in &self.generators {
            out.push_str(&g.to_text(&self.order));
            out.push('\n');
        }
        out
    }

    /// Parses [`IdealBasis::to_text`] output. The result is marked reduced
    /// only if it passes both reduced-basis checks.
    pub fn from_text(text: &str) -> Result<IdealBasis> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| AlgebraError::InvalidOrder("missing header line".into()))?;
        let order = MonomialOrder::parse_header(header)?;
        let u = order.universe().clone();
        let gens = lines
            .map(|l| parse_polynomial(l, &u))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        let mut b = IdealBasis::from_generators(gens, order);
        b.reduced = b.is_autoreduced() && b.s_polynomials_reduce_to_zero();
        Ok(b)
    }
}

impl fmt::Debug for IdealBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdealBasis")
            .field("order", &self.order)
            .field("reduced", &self.reduced)
            .field("generators", &self.generators)
            .finish()
    }
}

impl PartialEq for IdealBasis {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.generators == other.generators
    }
}

/// Division-with-remainder certificate:
/// `f = Σ multiplier·generator[index] + remainder`.
#[derive(Debug, Clone)]
pub struct ReductionTrace {
    pub quotients: Vec<(usize, Polynomial)>,
    pub remainder: Polynomial,
}

fn check_gens(gens: &[Polynomial], ord: &MonomialOrder) -> Result<()> {
    if gens.is_empty() {
        return Err(GroebnerError::EmptyInput);
    }
    for g in gens {
        if g.universe().names() != ord.universe().names() {
            return Err(AlgebraError::UniverseMismatch.into());
        }
    }
    Ok(())
}

/// Reduced Gröbner basis of `⟨gens⟩` under `ord` with default ceilings.
pub fn buchberger(gens: &[Polynomial], ord: &MonomialOrder) -> Result<IdealBasis> {
    buchberger_with(gens, ord, &GroebnerConfig::default()).map(|(b, _)| b)
}

pub fn buchberger_with(
    gens: &[Polynomial],
    ord: &MonomialOrder,
    config: &GroebnerConfig,
) -> Result<(IdealBasis, GroebnerStats)> {
    check_gens(gens, ord)?;
    let run = buchberger::run(gens, ord, config, false)?;
    Ok((run.basis, run.stats))
}

/// Like [`buchberger`], additionally returning for every basis element `b_i`
/// cofactors with `b_i = Σ_k cof[i][k] * gens[k]`. Much slower; intended
/// for small systems.
pub fn buchberger_certified(
    gens: &[Polynomial],
    ord: &MonomialOrder,
    config: &GroebnerConfig,
) -> Result<(IdealBasis, Vec<Vec<Polynomial>>)> {
    check_gens(gens, ord)?;
    let run = buchberger::run(gens, ord, config, true)?;
    Ok((run.basis, run.certificate.unwrap()))
}

/// Full division of `f` by the generators of `b`.
pub fn normal_form(f: &Polynomial, b: &IdealBasis) -> ReductionTrace {
    let ord = &b.order;
    let u = b.universe();
    let f = f.transfer(u).expect("polynomial outside basis universe");
    if f.is_zero() || b.is_empty() {
        return ReductionTrace {
            quotients: Vec::new(),
            remainder: f,
        };
    }
    let work = b.work();
    let factors: Vec<Rational> = b
        .generators
        .iter()
        .zip(work)
        .map(|(g, w)| Rational::from_integer(w.terms[0].1.clone()) / g.leading_term(ord).unwrap().1)
        .collect();
    let (fi, k) = IPoly::from_rational(&f, ord);
    let idx = b.all_indices();
    let red = Reducers::new(ord, work, &idx);
    let mut steps = Vec::new();
    let rem = red.reduce(fi, true, Some(&mut steps));

    // work_by = factor_by * g_by; replay backwards accumulating the scale of
    // every later step.
    let mut quot: Vec<HashMap<Monomial, Rational>> = vec![HashMap::new(); work.len()];
    let mut r = Rational::one();
    for s in steps.iter().rev() {
        match s {
            Step::Reduce { a, b: bb, q, by } => {
                let c = &r * Rational::from_integer(bb.clone()) * &factors[*by];
                *quot[*by].entry(*q).or_insert_with(Rational::zero) += c;
                r *= Rational::from_integer(a.clone());
            }
            Step::Divide(c) => {
                r /= Rational::from_integer(c.clone());
            }
        }
    }
    // rem_int = s*f - Σ Q g with s = r*k.
    let s = r * k;
    let inv = s.recip();
    let quotients = quot
        .into_iter()
        .enumerate()
        .filter(|(_, m)| !m.is_empty())
        .map(|(i, m)| {
            let p = Polynomial::from_terms(u, m.into_iter().map(|(mm, c)| (mm, c * &inv)));
            (i, p)
        })
        .filter(|(_, p)| !p.is_zero())
        .collect();
    ReductionTrace {
        quotients,
        remainder: rem.to_rational(u).scale(&inv),
    }
}

/// Membership test by top-reduction; meaningful when `b` is a Gröbner basis.
pub fn contains(b: &IdealBasis, f: &Polynomial) -> bool {
    let u = b.universe();
    let f = f.transfer(u).expect("polynomial outside basis universe");
    if f.is_zero() {
        return true;
    }
    if b.is_empty() {
        return false;
    }
    let (fi, _) = IPoly::from_rational(&f, &b.order);
    let idx = b.all_indices();
    Reducers::new(&b.order, b.work(), &idx)
        .reduce(fi, false, None)
        .is_zero()
}

pub fn is_unit_ideal(b: &IdealBasis) -> bool {
    b.generators.len() == 1 && b.generators[0].is_constant()
}

/// Basis elements involving only `keep`; requires the order's last block
/// to be exactly `keep`.
pub fn eliminate(b: &IdealBasis, keep: &[Variable]) -> Result<Vec<Polynomial>> {
    let last: BTreeSet<Variable> = b
        .order
        .blocks()
        .last()
        .map(|bl| bl.iter().copied().collect())
        .unwrap_or_default();
    let want: BTreeSet<Variable> = keep.iter().copied().collect();
    if last != want {
        return Err(GroebnerError::OrderMismatch(format!(
            "last block is {} but keep has {} variables",
            b.order.header(),
            want.len()
        )));
    }
    Ok(b.generators
        .iter()
        .filter(|g| g.uses_only(keep))
        .cloned()
        .collect())
}

#[cfg(test)]
mod tests;
