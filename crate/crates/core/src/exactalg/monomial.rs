use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use super::universe::{same_universe, Universe, Variable};
use super::{AlgebraError, Result};

/// Upper bound on universe size; exponent vectors are stored densely.
pub const MAX_VARS: usize = 25;

/// A power product `x1^e1 * ... * xn^en` with a cached total degree.
///
/// Exponents beyond the universe size are always zero. The derived `Ord`
/// (lexicographic on the raw exponent vector) is only the canonical storage
/// order; algebraic comparisons go through [`MonomialOrder`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    degree: u32,
}

impl Monomial {
    pub const fn one() -> Monomial {
        Monomial {
            exps: [0; MAX_VARS],
            degree: 0,
        }
    }

    pub fn var(v: Variable, e: u16) -> Monomial {
        let mut m = Monomial::one();
        m.exps[v.0] = e;
        m.degree = e as u32;
        m
    }

    pub fn from_exponents(exps: &[u16]) -> Monomial {
        assert!(exps.len() <= MAX_VARS, "too many exponents");
        let mut m = Monomial::one();
        m.exps[..exps.len()].copy_from_slice(exps);
        m.degree = exps.iter().map(|&e| e as u32).sum();
        m
    }

    #[inline]
    pub fn exp(&self, v: Variable) -> u16 {
        self.exps[v.0]
    }

    #[inline]
    pub fn exponents(&self) -> &[u16; MAX_VARS] {
        &self.exps
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    /// Bit `i` is set when variable `i` occurs.
    #[inline]
    pub fn support_mask(&self) -> u32 {
        let mut mask = 0u32;
        for (i, &e) in self.exps.iter().enumerate() {
            if e != 0 {
                mask |= 1 << i;
            }
        }
        mask
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps;
        for (e, o) in exps.iter_mut().zip(other.exps.iter()) {
            *e = e.checked_add(*o).expect("exponent overflow");
        }
        Monomial {
            exps,
            degree: self.degree + other.degree,
        }
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut exps = other.exps;
        for (e, s) in exps.iter_mut().zip(self.exps.iter()) {
            *e -= *s;
        }
        Some(Monomial {
            exps,
            degree: other.degree - self.degree,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps;
        let mut degree = 0;
        for (e, o) in exps.iter_mut().zip(other.exps.iter()) {
            *e = (*e).max(*o);
            degree += *e as u32;
        }
        Monomial { exps, degree }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Removes variable `v`, returning the exponent it had.
    pub(crate) fn without(&self, v: Variable) -> (Monomial, u16) {
        let mut m = *self;
        let e = m.exps[v.0];
        m.exps[v.0] = 0;
        m.degree -= e as u32;
        (m, e)
    }

    pub(crate) fn with_exp(&self, v: Variable, e: u16) -> Monomial {
        let mut m = *self;
        m.degree = m.degree - m.exps[v.0] as u32 + e as u32;
        m.exps[v.0] = e;
        m
    }

    pub(crate) fn fits(&self, len: usize) -> bool {
        self.exps[len..].iter().all(|&e| e == 0)
    }

    pub fn display<'a>(&'a self, universe: &'a Universe) -> impl fmt::Display + 'a {
        MonomialDisplay { m: self, universe }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.exps.iter().rposition(|&e| e != 0).map_or(0, |p| p + 1);
        write!(f, "Monomial{:?}", &self.exps[..last])
    }
}

struct MonomialDisplay<'a> {
    m: &'a Monomial,
    universe: &'a Universe,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for v in self.universe.variables() {
            let e = self.m.exp(v);
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", self.universe.name(v))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Lex,
    DegRevLex,
}

impl OrderKind {
    pub fn name(self) -> &'static str {
        match self {
            OrderKind::Lex => "lex",
            OrderKind::DegRevLex => "degrevlex",
        }
    }

    pub fn from_name(s: &str) -> Result<OrderKind> {
        match s {
            "lex" => Ok(OrderKind::Lex),
            "degrevlex" | "dp" | "grevlex" => Ok(OrderKind::DegRevLex),
            other => Err(AlgebraError::InvalidOrder(format!(
                "unknown order kind `{other}`"
            ))),
        }
    }
}

/// A lex or degrevlex order, optionally split into blocks (a product order).
///
/// Within a block the variables rank in the listed sequence, first is
/// largest. Any monomial touching an earlier block dominates every monomial
/// that only involves later blocks.
#[derive(Clone)]
pub struct MonomialOrder {
    kind: OrderKind,
    blocks: Vec<Vec<Variable>>,
    universe: Arc<Universe>,
}

impl MonomialOrder {
    /// Builds a block order; `blocks` must partition the universe exactly.
    pub fn new(
        universe: &Arc<Universe>,
        kind: OrderKind,
        blocks: Vec<Vec<Variable>>,
    ) -> Result<MonomialOrder> {
        let mut seen = vec![false; universe.len()];
        for v in blocks.iter().flatten() {
            if v.0 >= universe.len() {
                return Err(AlgebraError::InvalidOrder(format!(
                    "variable index {} outside universe",
                    v.0
                )));
            }
            if seen[v.0] {
                return Err(AlgebraError::InvalidOrder(format!(
                    "variable `{}` appears in two blocks",
                    universe.name(*v)
                )));
            }
            seen[v.0] = true;
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(AlgebraError::InvalidOrder(format!(
                "variable `{}` is in no block",
                universe.name(Variable(i))
            )));
        }
        if blocks.iter().any(|b| b.is_empty()) {
            return Err(AlgebraError::InvalidOrder("empty block".into()));
        }
        Ok(MonomialOrder {
            kind,
            blocks,
            universe: universe.clone(),
        })
    }

    /// Single-block order on the universe's own variable sequence.
    pub fn plain(universe: &Arc<Universe>, kind: OrderKind) -> MonomialOrder {
        MonomialOrder {
            kind,
            blocks: vec![universe.variables().collect()],
            universe: universe.clone(),
        }
    }

    pub fn lex(universe: &Arc<Universe>) -> MonomialOrder {
        MonomialOrder::plain(universe, OrderKind::Lex)
    }

    pub fn degrevlex(universe: &Arc<Universe>) -> MonomialOrder {
        MonomialOrder::plain(universe, OrderKind::DegRevLex)
    }

    /// Block order from variable names, e.g. `[["c4","s4"],["a4"]]`.
    pub fn from_names(
        universe: &Arc<Universe>,
        kind: OrderKind,
        blocks: &[Vec<&str>],
    ) -> Result<MonomialOrder> {
        let blocks = blocks
            .iter()
            .map(|b| universe.vars(b))
            .collect::<Result<Vec<_>>>()?;
        MonomialOrder::new(universe, kind, blocks)
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn blocks(&self) -> &[Vec<Variable>] {
        &self.blocks
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    /// Compares two monomials assumed to live in this order's universe.
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        if self.blocks.len() == 1 && self.kind == OrderKind::DegRevLex {
            let d = a.degree.cmp(&b.degree);
            if d != Ordering::Equal {
                return d;
            }
            return Self::revlex_tail(&self.blocks[0], a, b);
        }
        for block in &self.blocks {
            let c = match self.kind {
                OrderKind::Lex => Self::lex_block(block, a, b),
                OrderKind::DegRevLex => {
                    let da: u32 = block.iter().map(|v| a.exps[v.0] as u32).sum();
                    let db: u32 = block.iter().map(|v| b.exps[v.0] as u32).sum();
                    da.cmp(&db).then_with(|| Self::revlex_tail(block, a, b))
                }
            };
            if c != Ordering::Equal {
                return c;
            }
        }
        Ordering::Equal
    }

    #[inline]
    fn lex_block(block: &[Variable], a: &Monomial, b: &Monomial) -> Ordering {
        for v in block {
            let c = a.exps[v.0].cmp(&b.exps[v.0]);
            if c != Ordering::Equal {
                return c;
            }
        }
        Ordering::Equal
    }

    #[inline]
    fn revlex_tail(block: &[Variable], a: &Monomial, b: &Monomial) -> Ordering {
        for v in block.iter().rev() {
            let c = a.exps[v.0].cmp(&b.exps[v.0]);
            if c != Ordering::Equal {
                return c.reverse();
            }
        }
        Ordering::Equal
    }

    /// A key whose lexicographic order agrees with [`MonomialOrder::cmp`].
    pub fn sort_key(&self, m: &Monomial) -> Vec<i32> {
        let mut key = Vec::with_capacity(self.universe.len() + self.blocks.len());
        for block in &self.blocks {
            match self.kind {
                OrderKind::Lex => key.extend(block.iter().map(|v| m.exps[v.0] as i32)),
                OrderKind::DegRevLex => {
                    key.push(block.iter().map(|v| m.exps[v.0] as i32).sum());
                    key.extend(block.iter().rev().map(|v| -(m.exps[v.0] as i32)));
                }
            }
        }
        key
    }

    /// Checked comparison: fails if either monomial uses variables outside
    /// this order's universe.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        let n = self.universe.len();
        if !a.fits(n) || !b.fits(n) {
            return Err(AlgebraError::UniverseMismatch);
        }
        Ok(self.cmp(a, b))
    }

    /// `kind` plus the block structure as text, e.g.
    /// `order=degrevlex blocks=(c4,s4);(a4,a5)`.
    pub fn header(&self) -> String {
        let blocks: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                let names: Vec<&str> = b.iter().map(|v| self.universe.name(*v)).collect();
                format!("({})", names.join(","))
            })
            .collect();
        format!("order={} blocks={}", self.kind.name(), blocks.join(";"))
    }

    /// Inverse of [`MonomialOrder::header`]. The universe is the
    /// concatenation of the blocks.
    pub fn parse_header(line: &str) -> Result<MonomialOrder> {
        let mut kind = None;
        let mut blocks_text = None;
        for tok in line.split_whitespace() {
            if let Some(k) = tok.strip_prefix("order=") {
                kind = Some(OrderKind::from_name(k)?);
            } else if let Some(b) = tok.strip_prefix("blocks=") {
                blocks_text = Some(b.to_string());
            } else {
                return Err(AlgebraError::InvalidOrder(format!(
                    "unexpected token `{tok}`"
                )));
            }
        }
        let kind = kind.ok_or_else(|| AlgebraError::InvalidOrder("missing order=".into()))?;
        let blocks_text =
            blocks_text.ok_or_else(|| AlgebraError::InvalidOrder("missing blocks=".into()))?;
        let mut names: Vec<Vec<String>> = Vec::new();
        for part in blocks_text.split(';') {
            let inner = part
                .trim()
                .strip_prefix('(')
                .and_then(|p| p.strip_suffix(')'))
                .ok_or_else(|| AlgebraError::InvalidOrder(format!("bad block `{part}`")))?;
            names.push(
                inner
                    .split(',')
                    .map(|s| s.trim().to_string())
                    .filter(|s| !s.is_empty())
                    .collect(),
            );
        }
        let flat: Vec<&str> = names.iter().flatten().map(|s| s.as_str()).collect();
        let universe = Universe::new(&flat)?;
        let blocks: Vec<Vec<&str>> = names
            .iter()
            .map(|b| b.iter().map(|s| s.as_str()).collect())
            .collect();
        MonomialOrder::from_names(&universe, kind, &blocks)
    }
}

impl fmt::Debug for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MonomialOrder({})", self.header())
    }
}

impl PartialEq for MonomialOrder {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
            && self.blocks == other.blocks
            && same_universe(&self.universe, &other.universe)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> Arc<Universe> {
        Universe::new(&["x", "y", "z"]).unwrap()
    }

    #[test]
    fn degrevlex_basic() {
        let u = xy();
        let ord = MonomialOrder::degrevlex(&u);
        let x2 = Monomial::from_exponents(&[2, 0, 0]);
        let xy_ = Monomial::from_exponents(&[1, 1, 0]);
        let y2 = Monomial::from_exponents(&[0, 2, 0]);
        let xz = Monomial::from_exponents(&[1, 0, 1]);
        assert_eq!(ord.cmp(&x2, &xy_), Ordering::Greater);
        assert_eq!(ord.cmp(&xy_, &y2), Ordering::Greater);
        // degrevlex distinguishes from deglex here: y^2 > xz
        assert_eq!(ord.cmp(&y2, &xz), Ordering::Greater);
        let x3 = Monomial::from_exponents(&[0, 0, 3]);
        assert_eq!(ord.cmp(&x3, &x2), Ordering::Greater);
    }

    #[test]
    fn lex_basic() {
        let u = xy();
        let ord = MonomialOrder::lex(&u);
        let x = Monomial::from_exponents(&[1, 0, 0]);
        let y5 = Monomial::from_exponents(&[0, 5, 0]);
        assert_eq!(ord.cmp(&x, &y5), Ordering::Greater);
    }

    #[test]
    fn block_dominance() {
        let u = Universe::mechanism();
        let ord = MonomialOrder::from_names(
            &u,
            OrderKind::DegRevLex,
            &[
                crate::exactalg::universe::MECHANISM_VARIABLES[..14].to_vec(),
                crate::exactalg::universe::MECHANISM_VARIABLES[14..].to_vec(),
            ],
        )
        .unwrap();
        let c4 = Monomial::var(u.var("c4").unwrap(), 1);
        let a4_5 = Monomial::var(u.var("a4").unwrap(), 5);
        assert_eq!(ord.cmp(&c4, &a4_5), Ordering::Greater);
    }

    #[test]
    fn order_must_partition() {
        let u = xy();
        let x = u.var("x").unwrap();
        let y = u.var("y").unwrap();
        assert!(MonomialOrder::new(&u, OrderKind::Lex, vec![vec![x, y]]).is_err());
        let z = u.var("z").unwrap();
        assert!(MonomialOrder::new(&u, OrderKind::Lex, vec![vec![x, y], vec![y, z]]).is_err());
        assert!(MonomialOrder::new(&u, OrderKind::Lex, vec![vec![x], vec![y, z]]).is_ok());
    }

    #[test]
    fn checked_compare_rejects_foreign_monomials() {
        let u = Universe::new(&["x", "y"]).unwrap();
        let ord = MonomialOrder::lex(&u);
        let outside = Monomial::from_exponents(&[0, 0, 1]);
        assert_eq!(
            ord.compare(&outside, &Monomial::one()),
            Err(AlgebraError::UniverseMismatch)
        );
    }

    #[test]
    fn header_roundtrip() {
        let u = Universe::new(&["c4", "s4", "a4"]).unwrap();
        let ord =
            MonomialOrder::from_names(&u, OrderKind::Lex, &[vec!["c4", "s4"], vec!["a4"]]).unwrap();
        let h = ord.header();
        assert_eq!(h, "order=lex blocks=(c4,s4);(a4)");
        assert_eq!(MonomialOrder::parse_header(&h).unwrap(), ord);
    }
}
