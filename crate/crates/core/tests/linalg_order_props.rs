use std::cmp::Ordering;

use proptest::prelude::*;

use staircase_core::linalg::{kernel_basis, rat_int, rref, IndependenceOracle, RatMatrix};
use staircase_core::order::{ascending_stream, q_count, Exponent, MonomialOrder, OrderKind};

fn matrix() -> impl Strategy<Value = RatMatrix> {
    (1usize..5, 1usize..6).prop_flat_map(|(r, c)| {
        prop::collection::vec(-3i64..=3, r * c).prop_map(move |v| {
            RatMatrix::new(r, c, v.into_iter().map(rat_int).collect()).unwrap()
        })
    })
}

fn order(n: usize) -> impl Strategy<Value = MonomialOrder> {
    (any::<bool>(), Just((0..n).collect::<Vec<usize>>()).prop_shuffle()).prop_map(|(graded, priority)| {
        MonomialOrder {
            kind: if graded { OrderKind::Deglex } else { OrderKind::Lex },
            priority,
        }
    })
}

fn exps(n: usize, len: usize) -> impl Strategy<Value = Vec<Exponent>> {
    prop::collection::vec(prop::collection::vec(0u32..5, n).prop_map(Exponent), len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rank_nullity(m in matrix()) {
        let r = rref(&m);
        prop_assert_eq!(r.rank + kernel_basis(&m).len(), m.cols());
        for v in kernel_basis(&m) {
            prop_assert!(m.mul_vec(&v).unwrap().iter().all(|x| *x == rat_int(0)));
        }
    }

    #[test]
    fn rref_is_idempotent(m in matrix()) {
        let once = rref(&m);
        let twice = rref(&once.matrix);
        prop_assert_eq!(once.matrix, twice.matrix);
    }

    #[test]
    fn oracle_accepts_rank_many_rows(m in matrix(), seed in any::<u64>()) {
        let mut rows: Vec<usize> = (0..m.rows()).collect();
        // deterministic shuffle from the seed
        let mut s = seed;
        for i in (1..rows.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            rows.swap(i, (s >> 33) as usize % (i + 1));
        }
        let mut oracle = IndependenceOracle::with_dim(m.cols());
        let accepted = rows.iter().filter(|&&i| oracle.feed(m.row(i)).unwrap()).count();
        prop_assert_eq!(accepted, rref(&m).rank);
        prop_assert_eq!(oracle.rank(), accepted);
    }

    #[test]
    fn order_is_strict_total_and_additive(o in order(3), v in exps(3, 3)) {
        let (a, b, c) = (&v[0], &v[1], &v[2]);
        let ab = o.compare(a, b);
        prop_assert_eq!(ab, o.compare(b, a).reverse());
        prop_assert_eq!(ab == Ordering::Equal, a == b);
        if ab == Ordering::Less && o.compare(b, c) == Ordering::Less {
            prop_assert_eq!(o.compare(a, c), Ordering::Less);
        }
        prop_assert_eq!(o.compare(&a.add(c), &b.add(c)), ab);
    }

    #[test]
    fn ascending_stream_is_sorted_box(o in order(3), cap in prop::collection::vec(0u32..4, 3)) {
        let cap = Exponent(cap);
        let got: Vec<Exponent> = ascending_stream(&o, &cap).collect();
        let mut want = Vec::new();
        for x in 0..=cap.0[0] {
            for y in 0..=cap.0[1] {
                for z in 0..=cap.0[2] {
                    want.push(Exponent(vec![x, y, z]));
                }
            }
        }
        o.sort(&mut want);
        prop_assert_eq!(got, want);
    }
}

#[test]
fn q_count_matches_enumeration_up_to_degree_12() {
    let o = MonomialOrder::deglex(2);
    let cap = Exponent(vec![12, 12]);
    let all: Vec<Exponent> = ascending_stream(&o, &cap).filter(|e| e.degree() <= 12).collect();
    for (i, e) in all.iter().enumerate() {
        assert_eq!(q_count(&o, e).unwrap(), i as u64, "e = {e}");
    }
}
