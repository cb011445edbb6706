use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, MonomialOrder};
use super::rational::{rational_to_f64, Rational};
use super::universe::{same_universe, Universe, Variable};
use super::{AlgebraError, Result};

/// A binding value for evaluation.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Exact(Rational),
    Float(f64),
}

impl Value {
    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(r) => rational_to_f64(r),
            Value::Float(x) => *x,
        }
    }

    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            Value::Exact(r) => Some(r),
            Value::Float(_) => None,
        }
    }
}

pub type Bindings = HashMap<Variable, Value>;

/// Sparse polynomial with exact rational coefficients.
///
/// Terms are kept sorted by the canonical monomial storage order with no
/// zero coefficients, so structural equality is algebraic equality.
#[derive(Clone)]
pub struct Polynomial {
    universe: Arc<Universe>,
    terms: Vec<(Monomial, Rational)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_universe(&self.universe, &other.universe) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(universe: &Arc<Universe>) -> Polynomial {
        Polynomial {
            universe: universe.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(universe: &Arc<Universe>) -> Polynomial {
        Polynomial::constant(universe, Rational::one())
    }

    pub fn constant(universe: &Arc<Universe>, c: Rational) -> Polynomial {
        Polynomial::from_terms(universe, [(Monomial::one(), c)])
    }

    pub fn integer(universe: &Arc<Universe>, c: i64) -> Polynomial {
        Polynomial::constant(universe, Rational::from_integer(BigInt::from(c)))
    }

    pub fn var(universe: &Arc<Universe>, v: Variable) -> Polynomial {
        Polynomial::from_terms(universe, [(Monomial::var(v, 1), Rational::one())])
    }

    /// Variable by name; panics on unknown names (builder convenience).
    pub fn named(universe: &Arc<Universe>, name: &str) -> Polynomial {
        let v = universe
            .var(name)
            .unwrap_or_else(|_| panic!("unknown variable {name}"));
        Polynomial::var(universe, v)
    }

    /// Collects terms, merging duplicates and dropping zeros.
    pub fn from_terms<I>(universe: &Arc<Universe>, terms: I) -> Polynomial
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut list: Vec<(Monomial, Rational)> = terms.into_iter().collect();
        list.sort_by_key(|a| a.0);
        let mut merged: Vec<(Monomial, Rational)> = Vec::with_capacity(list.len());
        for (m, c) in list {
            match merged.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => merged.push((m, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        Polynomial {
            universe: universe.clone(),
            terms: merged,
        }
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    /// Terms in canonical storage order.
    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn constant_term(&self) -> Rational {
        match self.terms.first() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => Rational::zero(),
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms
            .binary_search_by(|(t, _)| t.cmp(m))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.degree())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, v: Variable) -> u16 {
        self.terms.iter().map(|(m, _)| m.exp(v)).max().unwrap_or(0)
    }

    /// Variables that occur, in universe order.
    pub fn variables(&self) -> Vec<Variable> {
        let mask = self
            .terms
            .iter()
            .fold(0u32, |acc, (m, _)| acc | m.support_mask());
        self.universe
            .variables()
            .filter(|v| mask & (1 << v.index()) != 0)
            .collect()
    }

    pub fn uses_only(&self, allowed: &[Variable]) -> bool {
        self.variables().iter().all(|v| allowed.contains(v))
    }

    /// Leading term under `ord`.
    pub fn leading_term(&self, ord: &MonomialOrder) -> Option<(&Monomial, &Rational)> {
        self.terms
            .iter()
            .max_by(|a, b| ord.cmp(&a.0, &b.0))
            .map(|(m, c)| (m, c))
    }

    /// Terms sorted by `ord`, largest first.
    pub fn sorted_terms(&self, ord: &MonomialOrder) -> Vec<(Monomial, Rational)> {
        let mut t = self.terms.clone();
        t.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        t
    }

    /// Divides by the leading coefficient under `ord`.
    pub fn monic(&self, ord: &MonomialOrder) -> Polynomial {
        match self.leading_term(ord) {
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    fn check(&self, other: &Polynomial) -> Result<()> {
        if same_universe(&self.universe, &other.universe) {
            Ok(())
        } else {
            Err(AlgebraError::UniverseMismatch)
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        Ok(self.merge(other, true))
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                out.push((b[j].0, c));
                j += 1;
            } else {
                let c = if negate {
                    &a[i].1 - &b[j].1
                } else {
                    &a[i].1 + &b[j].1
                };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        Polynomial {
            universe: self.universe.clone(),
            terms: out,
        }
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.universe));
        }
        let mut acc: HashMap<Monomial, Rational> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                acc.entry(m).and_modify(|e| *e += &c).or_insert(c);
            }
        }
        let mut terms: Vec<(Monomial, Rational)> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by_key(|a| a.0);
        Ok(Polynomial {
            universe: self.universe.clone(),
            terms,
        })
    }

    /// Integer power; negative exponents are rejected.
    pub fn checked_pow(&self, exponent: i64) -> Result<Polynomial> {
        if exponent < 0 {
            return Err(AlgebraError::NegativeExponent(exponent));
        }
        Ok(self.pow(exponent as u32))
    }

    pub fn pow(&self, mut exponent: u32) -> Polynomial {
        let mut result = Polynomial::one(&self.universe);
        let mut base = self.clone();
        while exponent > 0 {
            if exponent & 1 == 1 {
                result = &result * &base;
            }
            exponent >>= 1;
            if exponent > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.universe);
        }
        Polynomial {
            universe: self.universe.clone(),
            terms: self.terms.iter().map(|(m, t)| (*m, t * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|(t, k)| (t.mul(m), k * c))
            .collect::<Vec<_>>();
        Polynomial::from_terms(&self.universe, terms)
    }

    /// Formal partial derivative.
    pub fn derivative(&self, v: Variable) -> Polynomial {
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.exp(v);
            (e > 0).then(|| {
                (
                    m.with_exp(v, e - 1),
                    c * Rational::from_integer(BigInt::from(e)),
                )
            })
        });
        Polynomial::from_terms(&self.universe, terms.collect::<Vec<_>>())
    }

    /// Evaluates at a point. The result is exact when every binding the
    /// polynomial touches is exact, and a double otherwise (each exact
    /// binding is rounded to the nearest double before use).
    pub fn evaluate(&self, point: &Bindings) -> Result<Value> {
        let vars = self.variables();
        let mut all_exact = true;
        for v in &vars {
            match point.get(v) {
                None => {
                    return Err(AlgebraError::UnboundVariable(
                        self.universe.name(*v).to_string(),
                    ))
                }
                Some(Value::Float(_)) => all_exact = false,
                Some(Value::Exact(_)) => {}
            }
        }
        if all_exact {
            let mut dense = vec![Rational::zero(); self.universe.len()];
            for v in &vars {
                dense[v.index()] = point[v].as_exact().unwrap().clone();
            }
            Ok(Value::Exact(self.eval_exact(&dense)))
        } else {
            let mut dense = vec![0.0; self.universe.len()];
            for v in &vars {
                dense[v.index()] = point[v].to_f64();
            }
            Ok(Value::Float(self.eval_f64(&dense)))
        }
    }

    /// Exact evaluation at a dense point (one value per universe variable).
    pub fn eval_exact(&self, point: &[Rational]) -> Rational {
        let mut sum = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(point[i].clone(), e as usize);
                }
            }
            sum += t;
        }
        sum
    }

    /// Floating evaluation at a dense point.
    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut t = rational_to_f64(c);
                for (i, &e) in m.exponents().iter().enumerate() {
                    if e > 0 {
                        t *= point[i].powi(e as i32);
                    }
                }
                t
            })
            .sum()
    }

    /// Simultaneous substitution `v -> image` for every binding.
    pub fn substitute(&self, bindings: &[(Variable, Polynomial)]) -> Polynomial {
        if bindings.is_empty() || self.is_zero() {
            return self.clone();
        }
        let mut powers: HashMap<(usize, u16), Polynomial> = HashMap::new();
        let mut collected: Vec<(Monomial, Rational)> = Vec::new();
        for (m, c) in &self.terms {
            let mut rest = *m;
            let mut factor = Polynomial::constant(&self.universe, c.clone());
            for (idx, (v, image)) in bindings.iter().enumerate() {
                let (stripped, e) = rest.without(*v);
                rest = stripped;
                if e == 0 {
                    continue;
                }
                let p = powers
                    .entry((idx, e))
                    .or_insert_with(|| image.pow(e as u32));
                factor = &factor * p;
            }
            collected.extend(factor.terms.into_iter().map(|(t, k)| (t.mul(&rest), k)));
        }
        Polynomial::from_terms(&self.universe, collected)
    }

    /// Substitutes rational constants for variables.
    pub fn specialize(&self, values: &[(Variable, Rational)]) -> Polynomial {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut rest = *m;
            let mut coef = c.clone();
            for (v, val) in values {
                let (stripped, e) = rest.without(*v);
                rest = stripped;
                if e > 0 {
                    coef *= num_traits::pow(val.clone(), e as usize);
                }
            }
            terms.push((rest, coef));
        }
        Polynomial::from_terms(&self.universe, terms)
    }

    /// Re-expresses the polynomial in another universe, matching variables
    /// by name.
    pub fn transfer(&self, target: &Arc<Universe>) -> Result<Polynomial> {
        if same_universe(&self.universe, target) {
            return Ok(self.clone());
        }
        let mut map = Vec::new();
        for v in self.variables() {
            let name = self.universe.name(v);
            map.push((v, target.var(name)?));
        }
        let terms = self.terms.iter().map(|(m, c)| {
            let mut nm = Monomial::one();
            for (from, to) in &map {
                let e = m.exp(*from);
                if e > 0 {
                    nm = nm.mul(&Monomial::var(*to, e));
                }
            }
            (nm, c.clone())
        });
        Ok(Polynomial::from_terms(target, terms.collect::<Vec<_>>()))
    }

    /// Text form with terms in descending `ord` sequence.
    pub fn to_text(&self, ord: &MonomialOrder) -> String {
        format_terms(&self.sorted_terms(ord), &self.universe)
    }

    /// Largest absolute coefficient, as a double (diagnostics only).
    pub fn max_abs_coefficient(&self) -> f64 {
        self.terms
            .iter()
            .map(|(_, c)| rational_to_f64(&c.abs()))
            .fold(0.0, f64::max)
    }
}

fn format_terms(terms: &[(Monomial, Rational)], universe: &Universe) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in terms.iter().enumerate() {
        let negative = c.is_negative();
        let mag = c.abs();
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if m.is_one() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&m.display(universe).to_string());
        } else {
            out.push_str(&format!("{}*{}", mag, m.display(universe)));
        }
    }
    out
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ord = MonomialOrder::degrevlex(&self.universe);
        write!(f, "{}", self.to_text(&ord))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("universe mismatch in add")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("universe mismatch in sub")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("universe mismatch in mul")
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            universe: self.universe.clone(),
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}
