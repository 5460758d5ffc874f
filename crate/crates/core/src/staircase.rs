//! Standard monomials of vanishing ideals of finite integer point sets.
//!
//! The staircase `E_A` of a finite set `A` is computed by scanning monomials
//! in increasing order and keeping those whose evaluation vectors on `A` are
//! independent of the vectors kept so far. Evaluations use the binomial basis
//! `C(x_1 - t_1, e_1) ... C(x_n - t_n, e_n)` with `t` the coordinatewise
//! minimum of `A`: every monomial appearing in that polynomial divides `X^e`,
//! so for any monomial order the span of the first `k` basis elements agrees
//! with the span of the first `k` monomials, and the scan yields the same
//! staircase with much smaller integers.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{format_rat, parse_rat, rref, IndependenceOracle, Rat, RatMatrix};
use crate::order::{ascending_stream, Exponent, MonomialOrder, OrderKind};

/// Orders points by their last coordinate first, i.e. by `(y, x)` in the
/// plane. All point lists in this crate use this order.
pub fn point_cmp(a: &[i64], b: &[i64]) -> Ordering {
    a.iter().rev().cmp(b.iter().rev())
}

/// A finite set of distinct integer points of a common arity, stored in
/// [`point_cmp`] order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointSet {
    n: usize,
    points: Vec<Vec<i64>>,
}

impl PointSet {
    /// Builds a point set; repeated points are merged.
    pub fn new(n: usize, points: Vec<Vec<i64>>) -> Result<Self> {
        Self::from_points_dedup(n, points)
    }

    /// Like [`PointSet::new`] but rejects repeated points.
    pub fn new_distinct(n: usize, points: Vec<Vec<i64>>) -> Result<Self> {
        let len = points.len();
        let set = Self::from_points_dedup(n, points)?;
        if set.points.len() != len {
            return Err(Error::InvalidInput("repeated point in point set".into()));
        }
        Ok(set)
    }

    fn from_points_dedup(n: usize, mut points: Vec<Vec<i64>>) -> Result<Self> {
        if let Some(p) = points.iter().find(|p| p.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: p.len(),
            });
        }
        points.sort_by(|a, b| point_cmp(a, b));
        points.dedup();
        Ok(Self { n, points })
    }

    pub fn from_pairs(pts: &[(i64, i64)]) -> Self {
        Self::new(2, pts.iter().map(|&(x, y)| vec![x, y]).collect())
            .expect("pairs have arity 2")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        self.points
            .binary_search_by(|q| point_cmp(q, p))
            .is_ok()
    }

    pub fn translate(&self, v: &[i64]) -> PointSet {
        let pts = self
            .points
            .iter()
            .map(|p| p.iter().zip(v).map(|(a, b)| a + b).collect())
            .collect();
        PointSet::new(self.n, pts).expect("translation keeps arity")
    }

    /// Minkowski sum `A + B`.
    pub fn sum(&self, other: &PointSet) -> Result<PointSet> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        let pts = self
            .points
            .iter()
            .flat_map(|a| {
                other
                    .points
                    .iter()
                    .map(move |b| a.iter().zip(b).map(|(x, y)| x + y).collect())
            })
            .collect();
        PointSet::new(self.n, pts)
    }

    /// Number of distinct values taken by each coordinate, minus one. The
    /// staircase lies in the box `[0, cap]` by the product-set case.
    fn coordinate_cap(&self) -> Exponent {
        Exponent(
            (0..self.n)
                .map(|i| {
                    let vals: BTreeSet<i64> = self.points.iter().map(|p| p[i]).collect();
                    vals.len().saturating_sub(1) as u32
                })
                .collect(),
        )
    }
}

/// A finitely supported rational-valued function on `Z^n`; equivalently the
/// Laurent polynomial `sum f(a) X^a`. Zero values are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteFn {
    n: usize,
    terms: BTreeMap<Vec<i64>, Rat>,
}

impl FiniteFn {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn delta(p: &[i64]) -> Self {
        let mut f = Self::zero(p.len());
        f.terms.insert(p.to_vec(), Rat::one());
        f
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Vec<i64>, Rat)>) -> Result<Self> {
        let mut f = Self::zero(n);
        for (p, c) in terms {
            f.add_term(p, c)?;
        }
        Ok(f)
    }

    pub fn from_int_terms(terms: &[((i64, i64), i64)]) -> Self {
        Self::from_terms(
            2,
            terms
                .iter()
                .map(|&((x, y), c)| (vec![x, y], Rat::from_integer(c.into()))),
        )
        .expect("arity 2")
    }

    pub fn add_term(&mut self, p: Vec<i64>, c: Rat) -> Result<()> {
        if p.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: p.len(),
            });
        }
        let entry = self.terms.entry(p.clone()).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&p);
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, p: &[i64]) -> Rat {
        self.terms.get(p).cloned().unwrap_or_else(Rat::zero)
    }

    /// Terms in [`point_cmp`] order.
    pub fn terms(&self) -> Vec<(&Vec<i64>, &Rat)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by(|a, b| point_cmp(a.0, b.0));
        t
    }

    pub fn support(&self) -> PointSet {
        PointSet::new(self.n, self.terms.keys().cloned().collect()).expect("uniform arity")
    }

    pub fn scale(&self, c: &Rat) -> FiniteFn {
        if c.is_zero() {
            return FiniteFn::zero(self.n);
        }
        FiniteFn {
            n: self.n,
            terms: self.terms.iter().map(|(p, v)| (p.clone(), v * c)).collect(),
        }
    }

    pub fn translate(&self, v: &[i64]) -> FiniteFn {
        FiniteFn {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(p, c)| (p.iter().zip(v).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Applies `p -> M p + t` to the support.
    pub fn map_support(&self, m: &[Vec<i64>], t: &[i64]) -> FiniteFn {
        let mut out = FiniteFn::zero(self.n);
        for (p, c) in &self.terms {
            let q = (0..self.n)
                .map(|i| t[i] + m[i].iter().zip(p).map(|(a, b)| a * b).sum::<i64>())
                .collect();
            out.add_term(q, c.clone()).expect("same arity");
        }
        out
    }

    /// Scales so the last nonzero value in point order is 1.
    pub fn normalize_last(&self) -> FiniteFn {
        match self.terms().last() {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    pub fn to_json(&self) -> FiniteFnJson {
        FiniteFnJson {
            n: self.n,
            terms: self
                .terms()
                .into_iter()
                .map(|(p, c)| TermJson {
                    p: p.clone(),
                    c: format_rat(c),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &FiniteFnJson) -> Result<Self> {
        let terms = j
            .terms
            .iter()
            .map(|t| Ok((t.p.clone(), parse_rat(&t.c)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(j.n, terms)
    }
}

/// `{"n":2,"terms":[{"p":[x,y],"c":"num/den"},...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteFnJson {
    pub n: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub p: Vec<i64>,
    pub c: String,
}

/// `{"n":2,"points":[[x,y],...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointSetJson {
    pub n: usize,
    pub points: Vec<Vec<i64>>,
}

impl From<&PointSet> for PointSetJson {
    fn from(a: &PointSet) -> Self {
        Self {
            n: a.n,
            points: a.points.clone(),
        }
    }
}

impl TryFrom<PointSetJson> for PointSet {
    type Error = Error;

    fn try_from(j: PointSetJson) -> Result<Self> {
        PointSet::new_distinct(j.n, j.points)
    }
}

/// The lower set `E_A` together with the order it was computed for.
/// `elements` is sorted ascending in that order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Staircase {
    pub order: MonomialOrder,
    elements: Vec<Exponent>,
    lookup: HashSet<Exponent>,
}

impl Staircase {
    pub fn new(order: MonomialOrder, mut elements: Vec<Exponent>) -> Self {
        order.sort(&mut elements);
        let lookup = elements.iter().cloned().collect();
        Self {
            order,
            elements,
            lookup,
        }
    }

    pub fn elements(&self) -> &[Exponent] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, e: &Exponent) -> bool {
        self.lookup.contains(e)
    }

    pub fn max_degree(&self) -> Option<u64> {
        self.elements.iter().map(Exponent::degree).max()
    }

    /// Smallest total degree of an exponent outside the staircase.
    pub fn min_missing_degree(&self) -> u64 {
        let n = self.order.arity();
        let mut per_degree: BTreeMap<u64, u64> = BTreeMap::new();
        for e in &self.elements {
            *per_degree.entry(e.degree()).or_default() += 1;
        }
        (0..)
            .find(|&k| per_degree.get(&k).copied().unwrap_or(0) < monomials_of_degree(n, k))
            .expect("staircase is finite")
    }
}

fn monomials_of_degree(n: usize, k: u64) -> u64 {
    // C(k + n - 1, n - 1)
    let mut acc: u64 = 1;
    for i in 1..n as u64 {
        acc = acc * (k + i) / i;
    }
    acc
}

fn check_arity(f: &FiniteFn, e: &Exponent) -> Result<()> {
    if f.n != e.arity() {
        return Err(Error::DimensionMismatch {
            expected: f.n,
            got: e.arity(),
        });
    }
    Ok(())
}

fn monomial_value(a: &[i64], e: &Exponent) -> BigInt {
    a.iter()
        .zip(&e.0)
        .fold(BigInt::one(), |acc, (&x, &k)| acc * BigInt::from(x).pow(k))
}

/// Values of `X^e` at the points of `A`, in point order.
pub fn moment_row(a: &PointSet, e: &Exponent) -> Vec<Rat> {
    a.points
        .iter()
        .map(|p| Rat::from_integer(monomial_value(p, e)))
        .collect()
}

/// `<f, X^e> = sum_a f(a) a^e`, with `0^0 = 1`.
pub fn pairing(f: &FiniteFn, e: &Exponent) -> Result<Rat> {
    check_arity(f, e)?;
    Ok(f.terms
        .iter()
        .fold(Rat::zero(), |acc, (a, c)| acc + c * Rat::from_integer(monomial_value(a, e))))
}

/// The smallest exponent `e` with `<f, X^e> != 0`.
pub fn sm(f: &FiniteFn, order: &MonomialOrder) -> Result<Exponent> {
    if f.is_zero() {
        return Err(Error::ZeroFunction);
    }
    if order.arity() != f.n {
        return Err(Error::DimensionMismatch {
            expected: f.n,
            got: order.arity(),
        });
    }
    let support = f.support();
    let cap = support.coordinate_cap();
    // Per-coordinate power tables, shared across the scan.
    let terms: Vec<(&Vec<i64>, &Rat)> = f.terms.iter().collect();
    let powers: Vec<Vec<Vec<BigInt>>> = terms
        .iter()
        .map(|(a, _)| {
            a.iter()
                .zip(&cap.0)
                .map(|(&x, &c)| {
                    let x = BigInt::from(x);
                    let mut row = Vec::with_capacity(c as usize + 1);
                    let mut cur = BigInt::one();
                    for _ in 0..=c {
                        row.push(cur.clone());
                        cur *= &x;
                    }
                    row
                })
                .collect()
        })
        .collect();
    for e in ascending_stream(order, &cap) {
        let value = terms.iter().zip(&powers).fold(Rat::zero(), |acc, ((_, c), pw)| {
            let mono = pw
                .iter()
                .zip(&e.0)
                .fold(BigInt::one(), |m, (row, &k)| m * &row[k as usize]);
            acc + *c * Rat::from_integer(mono)
        });
        if !value.is_zero() {
            return Ok(e);
        }
    }
    unreachable!("sm(f) lies in the staircase of supp(f), which is inside the coordinate box")
}

/// Order of vanishing of the Laurent polynomial of `f` at the all-ones
/// point, i.e. `|sm(f)|` under graded lex.
pub fn vanishing_order(f: &FiniteFn) -> Result<u64> {
    Ok(sm(f, &MonomialOrder::deglex(f.n))?.degree())
}

/// Binomial-basis evaluation vectors of a point set, translated to start at
/// the coordinatewise minimum.
struct BinomialEvaluator {
    shifted: Vec<Vec<usize>>,
    tables: Vec<Vec<Vec<BigInt>>>,
}

impl BinomialEvaluator {
    fn new(a: &PointSet, cap: &Exponent) -> Self {
        let n = a.n;
        let mins: Vec<i64> = (0..n)
            .map(|i| a.points.iter().map(|p| p[i]).min().unwrap_or(0))
            .collect();
        let shifted: Vec<Vec<usize>> = a
            .points
            .iter()
            .map(|p| p.iter().zip(&mins).map(|(x, m)| (x - m) as usize).collect())
            .collect();
        let tables = (0..n)
            .map(|i| {
                let max = shifted.iter().map(|p| p[i]).max().unwrap_or(0);
                let k_max = cap.0[i] as usize;
                (0..=max)
                    .map(|x| {
                        // C(x, k) for k = 0..=k_max
                        let mut row = Vec::with_capacity(k_max + 1);
                        let mut c = BigInt::one();
                        for k in 0..=k_max {
                            row.push(c.clone());
                            if k >= x {
                                c = BigInt::zero();
                            } else {
                                c = c * BigInt::from(x - k) / BigInt::from(k + 1);
                            }
                        }
                        row
                    })
                    .collect()
            })
            .collect();
        Self { shifted, tables }
    }

    fn column_order(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.shifted.len()).collect();
        idx.sort_by_key(|&i| {
            let p = &self.shifted[i];
            (p.iter().sum::<usize>(), p.iter().rev().cloned().collect::<Vec<_>>())
        });
        idx
    }

    fn vector(&self, e: &Exponent, columns: &[usize]) -> Vec<BigInt> {
        columns
            .iter()
            .map(|&j| {
                let p = &self.shifted[j];
                let mut v = BigInt::one();
                for (i, (&x, &k)) in p.iter().zip(&e.0).enumerate() {
                    let t = &self.tables[i][x][k as usize];
                    if t.is_zero() {
                        return BigInt::zero();
                    }
                    v *= t;
                }
                v
            })
            .collect()
    }
}

/// `E_A` by ascending independence of evaluation vectors.
pub fn compute_e(a: &PointSet, order: &MonomialOrder) -> Result<Staircase> {
    if a.is_empty() {
        return Err(Error::EmptyInput("point set"));
    }
    if order.arity() != a.n {
        return Err(Error::DimensionMismatch {
            expected: a.n,
            got: order.arity(),
        });
    }
    let cap = a.coordinate_cap();
    let eval = BinomialEvaluator::new(a, &cap);
    let columns = eval.column_order();
    let mut oracle = IndependenceOracle::with_dim(a.len());
    let mut accepted: HashSet<Exponent> = HashSet::new();
    let mut elements = Vec::with_capacity(a.len());
    for e in ascending_stream(order, &cap) {
        // Staircases are lower sets: a monomial with a predecessor outside
        // E_A is a leading monomial of the vanishing ideal.
        if !e.predecessors().all(|p| accepted.contains(&p)) {
            continue;
        }
        if oracle.feed_int(eval.vector(&e, &columns))? {
            accepted.insert(e.clone());
            elements.push(e);
            if elements.len() == a.len() {
                break;
            }
        }
    }
    if elements.len() != a.len() {
        return Err(Error::Verification(format!(
            "monomial scan exhausted its cap with {} of {} standard monomials",
            elements.len(),
            a.len()
        )));
    }
    Ok(Staircase::new(order.clone(), elements))
}

/// `E_A` for a lexicographic order via the fiber recursion: `e` is standard
/// iff more than `e_1` fibers over the smallest variable have
/// `(e_2, ..., e_n)` in their own staircase.
pub fn compute_e_lex(a: &PointSet, order: &MonomialOrder) -> Result<Staircase> {
    if order.kind != OrderKind::Lex {
        return Err(Error::Unsupported("compute_e_lex needs a lex order".into()));
    }
    if a.is_empty() {
        return Err(Error::EmptyInput("point set"));
    }
    if order.arity() != a.n {
        return Err(Error::DimensionMismatch {
            expected: a.n,
            got: order.arity(),
        });
    }
    // Relabel so coordinate 0 is the smallest variable.
    let relabeled: Vec<Vec<i64>> = a
        .points
        .iter()
        .map(|p| order.priority.iter().map(|&v| p[v]).collect())
        .collect();
    let local = lex_recursion(&relabeled);
    let elements = local
        .into_iter()
        .map(|e| {
            let mut out = vec![0; a.n];
            for (slot, &v) in order.priority.iter().enumerate() {
                out[v] = e[slot];
            }
            Exponent(out)
        })
        .collect();
    Ok(Staircase::new(order.clone(), elements))
}

fn lex_recursion(points: &[Vec<i64>]) -> Vec<Vec<u32>> {
    let n = points.first().map_or(0, Vec::len);
    if n == 1 {
        return (0..points.len() as u32).map(|k| vec![k]).collect();
    }
    let mut fibers: BTreeMap<i64, Vec<Vec<i64>>> = BTreeMap::new();
    for p in points {
        fibers.entry(p[0]).or_default().push(p[1..].to_vec());
    }
    let mut counts: BTreeMap<Vec<u32>, u32> = BTreeMap::new();
    for fiber in fibers.values() {
        for tail in lex_recursion(fiber) {
            *counts.entry(tail).or_default() += 1;
        }
    }
    counts
        .into_iter()
        .flat_map(|(tail, c)| {
            (0..c).map(move |e1| {
                let mut e = Vec::with_capacity(n);
                e.push(e1);
                e.extend_from_slice(&tail);
                e
            })
        })
        .collect()
}

/// Smallest degree of a nonzero polynomial vanishing on `A`.
pub fn r_value(a: &PointSet) -> Result<u64> {
    Ok(compute_e(a, &MonomialOrder::deglex(a.n))?.min_missing_degree())
}

/// Largest degree of a standard monomial of `A` under graded lex.
pub fn s_value(a: &PointSet) -> Result<u64> {
    Ok(compute_e(a, &MonomialOrder::deglex(a.n))?
        .max_degree()
        .expect("nonempty"))
}

/// A function supported on `A` whose smallest monomial is `X^e`, normalized
/// so that `<f, X^e> = 1`.
///
/// Only the staircase monomials below `e` are imposed as constraints: any
/// smaller monomial outside the staircase agrees on `A` with a combination
/// of smaller staircase monomials, so orthogonality to those suffices. This
/// keeps the system finite even for lex orders.
pub fn witness(a: &PointSet, order: &MonomialOrder, e: &Exponent) -> Result<FiniteFn> {
    let stairs = compute_e(a, order)?;
    witness_in(a, &stairs, e)
}

/// [`witness`] with a precomputed staircase of `A`.
pub fn witness_in(a: &PointSet, stairs: &Staircase, e: &Exponent) -> Result<FiniteFn> {
    if !stairs.contains(e) {
        return Err(Error::NotInStaircase(e.0.clone()));
    }
    let below: Vec<&Exponent> = stairs
        .elements()
        .iter()
        .take_while(|s| stairs.order.compare(s, e) == Ordering::Less)
        .collect();
    let n = a.len();
    let mut rows: Vec<Vec<Rat>> = below
        .iter()
        .map(|s| {
            let mut row: Vec<Rat> = a
                .points
                .iter()
                .map(|p| Rat::from_integer(monomial_value(p, s)))
                .collect();
            row.push(Rat::zero());
            row
        })
        .collect();
    let mut last: Vec<Rat> = a
        .points
        .iter()
        .map(|p| Rat::from_integer(monomial_value(p, e)))
        .collect();
    last.push(Rat::one());
    rows.push(last);
    let reduced = rref(&RatMatrix::from_rows(rows)?);
    if reduced.pivots.last() == Some(&n) {
        // Inconsistent system; impossible when e is standard.
        return Err(Error::NotInStaircase(e.0.clone()));
    }
    let mut f = FiniteFn::zero(a.n);
    for (i, &p) in reduced.pivots.iter().enumerate() {
        let value = reduced.matrix[(i, n)].clone();
        if !value.is_zero() {
            f.add_term(a.points[p].clone(), value)?;
        }
    }
    Ok(f)
}

/// Convolution `(f * g)(c) = sum_{a+b=c} f(a) g(b)`, i.e. the product of
/// the corresponding Laurent polynomials.
pub fn convolve(f: &FiniteFn, g: &FiniteFn) -> Result<FiniteFn> {
    if f.n != g.n {
        return Err(Error::DimensionMismatch {
            expected: f.n,
            got: g.n,
        });
    }
    let mut out = FiniteFn::zero(f.n);
    let mut acc: BTreeMap<Vec<i64>, Rat> = BTreeMap::new();
    for (a, x) in &f.terms {
        for (b, y) in &g.terms {
            let c: Vec<i64> = a.iter().zip(b).map(|(p, q)| p + q).collect();
            *acc.entry(c).or_insert_with(Rat::zero) += x * y;
        }
    }
    acc.retain(|_, v| !v.is_zero());
    out.terms = acc;
    Ok(out)
}

/// Sign-and-scale independent comparison: `f = c g` for some nonzero `c`.
pub fn proportional(f: &FiniteFn, g: &FiniteFn) -> bool {
    if f.terms.len() != g.terms.len() || f.is_zero() || g.is_zero() {
        return f.is_zero() && g.is_zero();
    }
    let (p0, c0) = f.terms.iter().next().expect("nonempty");
    let Some(d0) = g.terms.get(p0) else {
        return false;
    };
    let ratio = c0 / d0;
    f.terms
        .iter()
        .all(|(p, c)| g.terms.get(p).is_some_and(|d| &(d * &ratio) == c))
}

/// Integer content check used by tests and normalization: true when every
/// value is an integer.
pub fn is_integral(f: &FiniteFn) -> bool {
    f.terms.values().all(|c| c.is_integer())
}

/// Sign of the last nonzero value in point order.
pub fn leading_sign_positive(f: &FiniteFn) -> bool {
    f.terms()
        .last()
        .is_some_and(|(_, c)| c.is_positive())
}
