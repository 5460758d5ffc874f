//! Exponent vectors and the two monomial orders used throughout: graded
//! lexicographic and pure lexicographic, each with a configurable variable
//! priority.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponent vector `e` of the monomial `X^e`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Exponent(pub Vec<u32>);

impl Exponent {
    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    /// Total degree `|e|`.
    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&x| u64::from(x)).sum()
    }

    pub fn add(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Coordinatewise `self <= other`.
    pub fn divides(&self, other: &Exponent) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// The exponents obtained by lowering one coordinate by one.
    pub fn predecessors(&self) -> impl Iterator<Item = Exponent> + '_ {
        (0..self.0.len()).filter(|&i| self.0[i] > 0).map(|i| {
            let mut p = self.0.clone();
            p[i] -= 1;
            Exponent(p)
        })
    }
}

impl From<Vec<u32>> for Exponent {
    fn from(v: Vec<u32>) -> Self {
        Self(v)
    }
}

impl<const N: usize> From<[u32; N]> for Exponent {
    fn from(v: [u32; N]) -> Self {
        Self(v.to_vec())
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    Deglex,
    Lex,
}

/// A monomial order. `priority` lists variable indices from the smallest
/// variable to the largest, so `deglex:x1<x2` has priority `[0, 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub priority: Vec<usize>,
}

impl MonomialOrder {
    pub fn deglex(n: usize) -> Self {
        Self {
            kind: OrderKind::Deglex,
            priority: (0..n).collect(),
        }
    }

    pub fn lex(n: usize) -> Self {
        Self {
            kind: OrderKind::Lex,
            priority: (0..n).collect(),
        }
    }

    pub fn arity(&self) -> usize {
        self.priority.len()
    }

    /// `deglex` with `X1 < ... < Xn`, the order every Laurent-polynomial
    /// statement in this crate is phrased in.
    pub fn is_standard_deglex(&self) -> bool {
        self.kind == OrderKind::Deglex && self.priority.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn cmp(&self, a: &Exponent, b: &Exponent) -> Result<Ordering> {
        for e in [a, b] {
            if e.arity() != self.arity() {
                return Err(Error::DimensionMismatch {
                    expected: self.arity(),
                    got: e.arity(),
                });
            }
        }
        Ok(self.compare(a, b))
    }

    /// Comparison without arity checks; callers guarantee matching arity.
    pub fn compare(&self, a: &Exponent, b: &Exponent) -> Ordering {
        if self.kind == OrderKind::Deglex {
            match a.degree().cmp(&b.degree()) {
                Ordering::Equal => {}
                other => return other,
            }
        }
        for &v in self.priority.iter().rev() {
            match a.0[v].cmp(&b.0[v]) {
                Ordering::Equal => {}
                other => return other,
            }
        }
        Ordering::Equal
    }

    pub fn sort(&self, v: &mut [Exponent]) {
        v.sort_by(|a, b| self.compare(a, b));
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            OrderKind::Deglex => "deglex",
            OrderKind::Lex => "lex",
        };
        let vars: Vec<String> = self.priority.iter().map(|v| format!("x{}", v + 1)).collect();
        write!(f, "{kind}:{}", vars.join("<"))
    }
}

impl FromStr for MonomialOrder {
    type Err = Error;

    /// Parses `"deglex:x1<x2"`, `"lex:x2<x1<x3"` and so on. Every variable
    /// `x1..xn` must appear exactly once.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("order spec {s:?}: {why}"));
        let (kind, vars) = s.split_once(':').ok_or_else(|| bad("missing ':'"))?;
        let kind = match kind.trim() {
            "deglex" => OrderKind::Deglex,
            "lex" => OrderKind::Lex,
            _ => return Err(bad("kind must be deglex or lex")),
        };
        let priority = vars
            .split('<')
            .map(|v| {
                v.trim()
                    .strip_prefix('x')
                    .and_then(|i| i.parse::<usize>().ok())
                    .filter(|&i| i >= 1)
                    .map(|i| i - 1)
                    .ok_or_else(|| bad("variables are x1, x2, ..."))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut seen = priority.clone();
        seen.sort_unstable();
        if seen != (0..priority.len()).collect::<Vec<_>>() {
            return Err(bad("variables must be a permutation of x1..xn"));
        }
        Ok(Self { kind, priority })
    }
}

/// All exponents `e` with `e <= cap` coordinatewise, in increasing order.
pub fn ascending_stream(order: &MonomialOrder, cap: &Exponent) -> std::vec::IntoIter<Exponent> {
    let mut all = vec![Exponent::zero(cap.arity())];
    for (i, &c) in cap.0.iter().enumerate() {
        all = all
            .into_iter()
            .flat_map(|e| {
                (0..=c).map(move |k| {
                    let mut v = e.0.clone();
                    v[i] = k;
                    Exponent(v)
                })
            })
            .collect();
    }
    order.sort(&mut all);
    all.into_iter()
}

/// Number of monomials strictly below `X^e` in `deglex` with `X1 < X2`.
pub fn q_count(order: &MonomialOrder, e: &Exponent) -> Result<u64> {
    if e.arity() != 2 || !order.is_standard_deglex() {
        return Err(Error::Unsupported(
            "q_count needs two variables and deglex:x1<x2".into(),
        ));
    }
    let d = e.degree();
    Ok(d * (d + 1) / 2 + u64::from(e.0[1]))
}

pub fn is_lower_set<'a>(set: impl IntoIterator<Item = &'a Exponent>) -> bool {
    let set: BTreeSet<&Exponent> = set.into_iter().collect();
    set.iter()
        .all(|e| e.predecessors().all(|p| set.contains(&p)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn e(v: &[u32]) -> Exponent {
        Exponent(v.to_vec())
    }

    #[test]
    fn deglex_examples() {
        let o = MonomialOrder::deglex(2);
        assert_eq!(o.cmp(&e(&[1, 0]), &e(&[0, 1])).unwrap(), Ordering::Less);
        assert_eq!(o.cmp(&e(&[0, 1]), &e(&[2, 0])).unwrap(), Ordering::Less);
        assert!(o.cmp(&e(&[1]), &e(&[0, 1])).is_err());
    }

    #[test]
    fn lex_examples() {
        let o = MonomialOrder::lex(2);
        for k in 0..50 {
            assert_eq!(o.compare(&e(&[k, 0]), &e(&[0, 1])), Ordering::Less);
        }
    }

    #[test]
    fn streams() {
        let got: Vec<_> = ascending_stream(&MonomialOrder::deglex(2), &e(&[1, 1])).collect();
        assert_eq!(got, vec![e(&[0, 0]), e(&[1, 0]), e(&[0, 1]), e(&[1, 1])]);
        let got: Vec<_> = ascending_stream(&MonomialOrder::lex(2), &e(&[2, 1])).collect();
        assert_eq!(
            got,
            vec![e(&[0, 0]), e(&[1, 0]), e(&[2, 0]), e(&[0, 1]), e(&[1, 1]), e(&[2, 1])]
        );
        let got: Vec<_> = ascending_stream(&MonomialOrder::deglex(2), &e(&[0, 0])).collect();
        assert_eq!(got, vec![e(&[0, 0])]);
    }

    #[test]
    fn q_count_examples() {
        let o = MonomialOrder::deglex(2);
        assert_eq!(q_count(&o, &e(&[0, 0])).unwrap(), 0);
        assert_eq!(q_count(&o, &e(&[2, 1])).unwrap(), 7);
        assert_eq!(q_count(&o, &e(&[0, 2])).unwrap(), 5);
        assert!(q_count(&MonomialOrder::lex(2), &e(&[0, 2])).is_err());
    }

    #[test]
    fn q_count_matches_enumeration() {
        let o = MonomialOrder::deglex(2);
        let all: Vec<_> = ascending_stream(&o, &e(&[12, 12])).collect();
        for target in all.iter().filter(|x| x.degree() <= 12) {
            let brute = all
                .iter()
                .filter(|x| o.compare(x, target) == Ordering::Less)
                .count() as u64;
            assert_eq!(q_count(&o, target).unwrap(), brute, "{target}");
        }
    }

    #[test]
    fn lower_sets() {
        assert!(is_lower_set(&[e(&[0, 0]), e(&[1, 0]), e(&[0, 1])]));
        assert!(!is_lower_set(&[e(&[1, 0])]));
    }

    #[test]
    fn parse_and_display() {
        let o: MonomialOrder = "lex:x2<x1".parse().unwrap();
        assert_eq!(o.kind, OrderKind::Lex);
        assert_eq!(o.priority, vec![1, 0]);
        assert_eq!(o.to_string(), "lex:x2<x1");
        assert_eq!("deglex:x1<x2".parse::<MonomialOrder>().unwrap(), MonomialOrder::deglex(2));
        assert!("deglex:x1<x1".parse::<MonomialOrder>().is_err());
        assert!("grevlex:x1<x2".parse::<MonomialOrder>().is_err());
        assert!("deglex".parse::<MonomialOrder>().is_err());
    }

    fn arb_order() -> impl Strategy<Value = MonomialOrder> {
        (any::<bool>(), Just(vec![0usize, 1, 2]).prop_shuffle()).prop_map(|(deg, priority)| {
            MonomialOrder {
                kind: if deg { OrderKind::Deglex } else { OrderKind::Lex },
                priority,
            }
        })
    }

    fn arb_exp() -> impl Strategy<Value = Exponent> {
        proptest::collection::vec(0u32..6, 3).prop_map(Exponent)
    }

    proptest! {
        #[test]
        fn order_is_total_and_additive(o in arb_order(), a in arb_exp(), b in arb_exp(), c in arb_exp()) {
            let ab = o.compare(&a, &b);
            prop_assert_eq!(ab, o.compare(&b, &a).reverse());
            prop_assert_eq!(ab == Ordering::Equal, a == b);
            prop_assert_eq!(o.compare(&a.add(&c), &b.add(&c)), ab);
            if o.compare(&a, &b).is_le() && o.compare(&b, &c).is_le() {
                prop_assert!(o.compare(&a, &c).is_le());
            }
        }

        #[test]
        fn stream_is_sorted_box(o in arb_order(), cap in proptest::collection::vec(0u32..4, 3)) {
            let cap = Exponent(cap);
            let got: Vec<_> = ascending_stream(&o, &cap).collect();
            let n: usize = cap.0.iter().map(|&c| c as usize + 1).product();
            prop_assert_eq!(got.len(), n);
            for w in got.windows(2) {
                prop_assert_eq!(o.compare(&w[0], &w[1]), Ordering::Less);
            }
            prop_assert!(got.iter().all(|x| x.divides(&cap)));
        }
    }
}
