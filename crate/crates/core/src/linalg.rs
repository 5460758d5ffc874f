//! Exact rational scalars and dense rational linear algebra.
//!
//! Everything here is exact: [`Rat`] is an arbitrary-precision reduced
//! fraction and no routine ever rounds. The [`IndependenceOracle`] is the
//! workhorse behind staircase computation; it keeps its accepted vectors as
//! primitive integer rows in echelon form so that reductions stay
//! fraction-free.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rat = BigRational;

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Formats a rational as `"num/den"`; integers keep the `/1` suffix so the
/// textual form is uniform.
pub fn format_rat(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"num/den"` or a bare integer.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let parse_int = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|e| Error::Parse(format!("bad integer {t:?}: {e}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rat::new(parse_int(n)?, d))
        }
        None => Ok(Rat::from_integer(parse_int(s)?)),
    }
}

/// Dense row-major rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rat>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    /// Builds a matrix from rows; all rows must share a length. An empty row
    /// list yields a `0 x cols` matrix only through [`RatMatrix::zeros`].
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    got: row.len(),
                });
            }
            entries.extend(row);
        }
        Self::new(n, cols, entries)
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat_int(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Result<Vec<Rat>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Rat::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = Rat;

    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: RatMatrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// Reduced row-echelon form by Gauss-Jordan elimination over the rationals.
pub fn rref(m: &RatMatrix) -> Rref {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        a.swap_rows(r, p);
        let inv = a[(r, c)].recip();
        for j in c..a.cols {
            let v = &a[(r, j)] * &inv;
            a[(r, j)] = v;
        }
        for i in 0..a.rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let factor = a[(i, c)].clone();
            for j in c..a.cols {
                let v = &a[(r, j)] * &factor;
                a[(i, j)] -= v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    let rank = pivots.len();
    Rref {
        matrix: a,
        pivots,
        rank,
    }
}

/// Basis of the right null space, one vector per free column. Each vector
/// has a 1 in its free column.
pub fn kernel_basis(m: &RatMatrix) -> Vec<Vec<Rat>> {
    let Rref {
        matrix: r, pivots, ..
    } = rref(m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..m.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![Rat::zero(); m.cols];
            v[free] = Rat::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r[(i, free)].clone();
            }
            v
        })
        .collect()
}

/// Multiplies a rational vector by the lcm of its denominators.
pub fn clear_denominators(v: &[Rat]) -> Vec<BigInt> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    v.iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect()
}

fn make_primitive(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g > BigInt::one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
}

/// Incremental linear-independence test.
///
/// Accepted vectors are stored as primitive integer rows with distinct pivot
/// columns; every stored row vanishes at the pivots of the rows stored
/// before it, so a single forward pass reduces a candidate completely.
#[derive(Clone, Debug, Default)]
pub struct IndependenceOracle {
    dim: Option<usize>,
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl IndependenceOracle {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_dim(dim: usize) -> Self {
        Self {
            dim: Some(dim),
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn feed(&mut self, v: &[Rat]) -> Result<bool> {
        self.feed_int(clear_denominators(v))
    }

    /// Integer fast path of [`IndependenceOracle::feed`].
    pub fn feed_int(&mut self, mut v: Vec<BigInt>) -> Result<bool> {
        match self.dim {
            Some(d) if d != v.len() => {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: v.len(),
                })
            }
            None => self.dim = Some(v.len()),
            _ => {}
        }
        if self.rows.len() == v.len() {
            return Ok(false);
        }
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let g = v[*p].gcd(&row[*p]);
            let a = &row[*p] / &g;
            let b = &v[*p] / &g;
            for (x, y) in v.iter_mut().zip(row) {
                if y.is_zero() {
                    if !x.is_zero() {
                        *x *= &a;
                    }
                } else {
                    *x = &*x * &a - &b * y;
                }
            }
            if a.bits() > 1 {
                make_primitive(&mut v);
            }
        }
        make_primitive(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return Ok(false);
        };
        if v[p].is_negative() {
            for x in v.iter_mut() {
                *x = -&*x;
            }
        }
        self.rows.push((p, v));
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn rref_identity() {
        let r = rref(&m(&[&[1, 0], &[0, 1]]));
        assert_eq!(r.matrix, m(&[&[1, 0], &[0, 1]]));
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.rank, 2);
    }

    #[test]
    fn rref_dependent_rows() {
        let r = rref(&m(&[&[1, 2], &[2, 4]]));
        assert_eq!(r.matrix, m(&[&[1, 2], &[0, 0]]));
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn rref_swap() {
        let r = rref(&m(&[&[0, 1], &[1, 0]]));
        assert_eq!(r.matrix, m(&[&[1, 0], &[0, 1]]));
        assert_eq!(r.rank, 2);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&m(&[&[1, 0], &[0, 1]])).is_empty());
        let k = kernel_basis(&m(&[&[1, 1]]));
        assert_eq!(k, vec![vec![rat_int(-1), rat_int(1)]]);
        let a = m(&[&[1, 2, 3]]);
        let k = kernel_basis(&a);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(a.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn oracle_examples() {
        let mut o = IndependenceOracle::new();
        assert!(o.feed(&[rat_int(1), rat_int(0)]).unwrap());
        assert!(!o.feed(&[rat_int(2), rat_int(0)]).unwrap());
        assert!(o.feed(&[rat_int(0), rat_int(1)]).unwrap());

        let mut o = IndependenceOracle::new();
        assert!(!o.feed(&[rat_int(0), rat_int(0)]).unwrap());

        let a = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(rref(&a).rank, 3);
        let mut o = IndependenceOracle::new();
        for i in 0..3 {
            assert!(o.feed(a.row(i)).unwrap());
        }
    }

    #[test]
    fn oracle_dimension_mismatch() {
        let mut o = IndependenceOracle::new();
        o.feed(&[rat_int(1), rat_int(0)]).unwrap();
        assert!(matches!(
            o.feed(&[rat_int(1)]),
            Err(Error::DimensionMismatch { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn oracle_rational_input() {
        let mut o = IndependenceOracle::new();
        assert!(o.feed(&[rat(1, 2), rat(1, 3)]).unwrap());
        assert!(!o.feed(&[rat(3, 1), rat(2, 1)]).unwrap());
    }

    #[test]
    fn rat_text_roundtrip() {
        assert_eq!(format_rat(&rat(-8, 6)), "-4/3");
        assert_eq!(parse_rat("-4/3").unwrap(), rat(-4, 3));
        assert_eq!(parse_rat("7").unwrap(), rat_int(7));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }
}
