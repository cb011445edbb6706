use std::collections::BTreeMap;
use std::sync::Arc;

use log::debug;
use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::ipoly::{s_polynomial, IPoly, Reducers, Step};
use super::{GroebnerConfig, GroebnerError, GroebnerStats, IdealBasis};
use crate::exactalg::{Monomial, MonomialOrder, Polynomial, Rational, Universe};

/// Cofactor vectors expressing each working polynomial in the input
/// generators: `work[i] = Σ_k cof[i][k] * gens[k]`.
struct Cofactors {
    universe: Arc<Universe>,
    rows: Vec<Vec<Polynomial>>,
}

impl Cofactors {
    fn scaled(&self, row: &[Polynomial], c: &Rational, m: &Monomial) -> Vec<Polynomial> {
        row.iter().map(|p| p.mul_monomial(m, c)).collect()
    }

    fn axpy(a: Vec<Polynomial>, b: Vec<Polynomial>) -> Vec<Polynomial> {
        a.into_iter().zip(b).map(|(x, y)| &x + &y).collect()
    }

    /// Replays reduction steps on a cofactor row.
    fn replay(&self, mut row: Vec<Polynomial>, steps: &[Step]) -> Vec<Polynomial> {
        let one = Monomial::one();
        for s in steps {
            match s {
                Step::Reduce { a, b, q, by } => {
                    let a = Rational::from_integer(a.clone());
                    let b = Rational::from_integer(-b.clone());
                    let left = self.scaled(&row, &a, &one);
                    let right = self.scaled(&self.rows[*by], &b, q);
                    row = Self::axpy(left, right);
                }
                Step::Divide(c) => {
                    let r = Rational::from_integer(c.clone()).recip();
                    row = self.scaled(&row, &r, &one);
                }
            }
        }
        row
    }

    fn divided(&self, row: Vec<Polynomial>, c: &BigInt) -> Vec<Polynomial> {
        if c.is_one() {
            return row;
        }
        let r = Rational::from_integer(c.clone()).recip();
        self.scaled(&row, &r, &Monomial::one())
    }

    fn zero_row(&self, n: usize) -> Vec<Polynomial> {
        vec![Polynomial::zero(&self.universe); n]
    }
}

/// Output of a certified run: the basis plus, for each basis element,
/// its expansion in the input generators.
pub(super) struct Run {
    pub basis: IdealBasis,
    pub stats: GroebnerStats,
    pub certificate: Option<Vec<Vec<Polynomial>>>,
}

/// Lowest lcm degree first, then smallest lcm in the order, then indices.
type PairKey = (u32, Vec<i32>, usize, usize);

struct State<'a> {
    ord: &'a MonomialOrder,
    config: &'a GroebnerConfig,
    polys: Vec<IPoly>,
    active: Vec<usize>,
    pairs: BTreeMap<PairKey, Monomial>,
    stored_terms: usize,
    stats: GroebnerStats,
    cof: Option<Cofactors>,
}

impl State<'_> {
    fn reduce(&self, f: IPoly, tail: bool, steps: Option<&mut Vec<Step>>) -> IPoly {
        let r = Reducers::new(self.ord, &self.polys, &self.active);
        r.reduce(f, tail, steps)
    }

    /// Gebauer–Möller update on inserting `h`.
    fn update(&mut self, h: usize) {
        let lh = self.polys[h].lead().0;
        let cands: Vec<(usize, Monomial)> = self
            .active
            .iter()
            .map(|&g| (g, self.polys[g].lead().0.lcm(&lh)))
            .collect();
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        for idx in 0..cands.len() {
            let (g, l) = cands[idx];
            let coprime = self.polys[g].lead().0.is_coprime(&lh);
            if coprime {
                kept.push((g, l, true));
                continue;
            }
            let dominated = cands[idx + 1..].iter().any(|(_, l2)| l2.divides(&l))
                || kept.iter().any(|(_, l2, _)| l2.divides(&l));
            if !dominated {
                kept.push((g, l, false));
            }
        }
        let before = self.pairs.len();
        self.pairs.retain(|&(_, _, i, j), l| {
            !(lh.divides(l)
                && self.polys[i].lead().0.lcm(&lh) != *l
                && self.polys[j].lead().0.lcm(&lh) != *l)
        });
        let mut skipped = before - self.pairs.len();
        for (g, l, coprime) in kept {
            if coprime {
                skipped += 1;
                continue;
            }
            self.pairs
                .insert((l.degree(), self.ord.sort_key(&l), g.min(h), g.max(h)), l);
        }
        self.stats.pairs_skipped += skipped;
        let polys = &self.polys;
        self.active.retain(|&g| !lh.divides(&polys[g].lead().0));
        self.active.push(h);
    }

    fn insert(&mut self, f: IPoly, cof: Option<Vec<Polynomial>>) -> Result<usize, GroebnerError> {
        self.stored_terms += f.len();
        if self.stored_terms > self.config.max_terms {
            return Err(GroebnerError::ResourceLimit {
                what: "stored terms",
                limit: self.config.max_terms,
            });
        }
        let idx = self.polys.len();
        self.polys.push(f);
        if let (Some(c), Some(row)) = (self.cof.as_mut(), cof) {
            c.rows.push(row);
        }
        self.update(idx);
        Ok(idx)
    }

    /// Reduces the tail of every active polynomial by the others. Leading
    /// monomials do not change, so queued pairs stay valid.
    fn autoreduce(&mut self) {
        let active = self.active.clone();
        for &g in &active {
            let others: Vec<usize> = active.iter().copied().filter(|&o| o != g).collect();
            let r = Reducers::new(self.ord, &self.polys, &others);
            let mut steps = Vec::new();
            let tracked = self.cof.is_some();
            let mut h = r.reduce(self.polys[g].clone(), true, tracked.then_some(&mut steps));
            let d = h.normalize();
            if let Some(c) = self.cof.as_mut() {
                let row = c.rows[g].clone();
                let row = c.divided(c.replay(row, &steps), &d);
                c.rows[g] = row;
            }
            self.stored_terms = self.stored_terms + h.len() - self.polys[g].len();
            self.polys[g] = h;
        }
    }

    /// Reduces `f` (with cofactor row) fully and normalizes it.
    fn process(&self, f: IPoly, row: Option<Vec<Polynomial>>) -> (IPoly, Option<Vec<Polynomial>>) {
        match (&self.cof, row) {
            (Some(c), Some(row)) => {
                let mut steps = Vec::new();
                let mut h = self.reduce(f, true, Some(&mut steps));
                let row = c.replay(row, &steps);
                let d = h.normalize();
                let row = c.divided(row, &d);
                (h, Some(row))
            }
            _ => {
                let mut h = self.reduce(f, true, None);
                h.normalize();
                (h, None)
            }
        }
    }
}

pub(super) fn run(
    gens: &[Polynomial],
    ord: &MonomialOrder,
    config: &GroebnerConfig,
    certify: bool,
) -> Result<Run, GroebnerError> {
    let universe = ord.universe().clone();
    let ngens = gens.len();
    let mut st = State {
        ord,
        config,
        polys: Vec::new(),
        active: Vec::new(),
        pairs: BTreeMap::new(),
        stored_terms: 0,
        stats: GroebnerStats::default(),
        cof: certify.then(|| Cofactors {
            universe: universe.clone(),
            rows: Vec::new(),
        }),
    };

    let mut inputs: Vec<(IPoly, Rational, usize)> = gens
        .iter()
        .enumerate()
        .filter(|(_, g)| !g.is_zero())
        .map(|(k, g)| {
            let (p, factor) = IPoly::from_rational(g, ord);
            (p, factor, k)
        })
        .collect();
    // Inputs go in by degree batches: each batch is reduced against the
    // basis of the lower-degree ones and pairs are drained before the next.
    // High-degree inputs such as Jacobian minors then enter already reduced.
    inputs.sort_by(|a, b| {
        let (la, lb) = (a.0.lead().0, b.0.lead().0);
        la.degree()
            .cmp(&lb.degree())
            .then_with(|| ord.cmp(&la, &lb))
            .then(a.2.cmp(&b.2))
    });
    let mut rest = &inputs[..];
    while !rest.is_empty() {
        let deg = rest[0].0.lead().0.degree();
        let n = rest
            .iter()
            .take_while(|x| x.0.lead().0.degree() == deg)
            .count();
        let (batch, tail) = rest.split_at(n);
        rest = tail;
        let mut reduced = Vec::with_capacity(batch.len());
        for (p, factor, k) in batch {
            let row = st.cof.as_ref().map(|c| {
                let mut r = c.zero_row(ngens);
                r[*k] = Polynomial::constant(&universe, factor.clone());
                r
            });
            reduced.push(st.process(p.clone(), row));
        }
        debug!(
            "batch deg={} size={} terms={:?}",
            deg,
            n,
            reduced.iter().map(|r| r.0.len()).collect::<Vec<_>>()
        );
        for (h, row) in reduced {
            // Earlier members of the batch may now reduce this one further.
            let (h, row) = st.process(h, row);
            if h.is_zero() {
                continue;
            }
            if h.is_constant() {
                return Ok(unit_result(&st, &universe, h, row));
            }
            st.insert(h, row)?;
        }
        if let Some(unit) = drain_pairs(&mut st, &universe)? {
            return Ok(unit);
        }
        if !rest.is_empty() {
            st.autoreduce();
        }
    }

    st.autoreduce();
    let finals: Vec<(IPoly, Option<Vec<Polynomial>>)> = st
        .active
        .iter()
        .map(|&g| {
            (
                st.polys[g].clone(),
                st.cof.as_ref().map(|c| c.rows[g].clone()),
            )
        })
        .collect();
    let mut out: Vec<(Polynomial, Option<Vec<Polynomial>>)> = finals
        .into_iter()
        .map(|(h, row)| {
            let p = h.to_rational(&universe);
            let lc = p.leading_term(ord).unwrap().1.clone();
            let inv = lc.recip();
            let row = row.map(|r| r.iter().map(|c| c.scale(&inv)).collect());
            (p.scale(&inv), row)
        })
        .collect();
    out.sort_by(|a, b| {
        let la = a.0.leading_term(ord).unwrap().0;
        let lb = b.0.leading_term(ord).unwrap().0;
        ord.cmp(lb, la)
    });
    st.stats.basis_size = out.len();
    let certificate = certify.then(|| out.iter().map(|(_, r)| r.clone().unwrap()).collect());
    Ok(Run {
        basis: IdealBasis::new_reduced(out.into_iter().map(|(p, _)| p).collect(), ord.clone()),
        stats: st.stats,
        certificate,
    })
}

/// Processes pairs until the queue is empty. Returns the unit-ideal result
/// if a constant turns up.
fn drain_pairs(st: &mut State<'_>, universe: &Arc<Universe>) -> Result<Option<Run>, GroebnerError> {
    let ord = st.ord;
    while let Some(((deg, _, i, j), _)) = st.pairs.pop_first() {
        st.stats.pairs_processed += 1;
        if st.stats.pairs_processed > st.config.max_pairs {
            return Err(GroebnerError::ResourceLimit {
                what: "processed pairs",
                limit: st.config.max_pairs,
            });
        }
        let (s, (uf, mf), (ug, mg)) = s_polynomial(ord, &st.polys[i], &st.polys[j]);
        let row = st.cof.as_ref().map(|c| {
            let left = c.scaled(&c.rows[i], &Rational::from_integer(uf), &mf);
            let right = c.scaled(&c.rows[j], &Rational::from_integer(-ug), &mg);
            Cofactors::axpy(left, right)
        });
        let (h, row) = st.process(s, row);
        if h.is_zero() {
            st.stats.zero_reductions += 1;
            continue;
        }
        if st.stats.pairs_processed.is_multiple_of(500) {
            debug!(
                "pairs={} queue={} basis={} deg={} terms={}",
                st.stats.pairs_processed,
                st.pairs.len(),
                st.active.len(),
                deg,
                st.stored_terms
            );
        }
        if h.is_constant() {
            return Ok(Some(unit_result(st, universe, h, row)));
        }
        st.insert(h, row)?;
    }
    Ok(None)
}

fn unit_result(
    st: &State<'_>,
    universe: &Arc<Universe>,
    h: IPoly,
    row: Option<Vec<Polynomial>>,
) -> Run {
    let c = Rational::from_integer(h.lead().1.clone());
    debug_assert!(c.is_positive());
    let mut stats = st.stats.clone();
    stats.basis_size = 1;
    let certificate = row.map(|r| vec![r.iter().map(|p| p.scale(&c.recip())).collect()]);
    Run {
        basis: IdealBasis::new_reduced(vec![Polynomial::one(universe)], st.ord.clone()),
        stats,
        certificate,
    }
}
