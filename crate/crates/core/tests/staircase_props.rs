use std::collections::BTreeSet;

use proptest::prelude::*;

use staircase_core::geometry::newton_polygon;
use staircase_core::linalg::rat_int;
use staircase_core::order::{is_lower_set, Exponent, MonomialOrder, OrderKind};
use staircase_core::staircase::{
    compute_e, compute_e_lex, convolve, sm, vanishing_order, FiniteFn, PointSet,
};

fn point_set(n: usize, max_len: usize, span: i64) -> impl Strategy<Value = PointSet> {
    prop::collection::vec(prop::collection::vec(-span..=span, n), 1..=max_len)
        .prop_map(move |pts| PointSet::new(n, pts).unwrap())
}

fn finite_fn(max_len: usize, span: i64) -> impl Strategy<Value = FiniteFn> {
    prop::collection::vec(((-span..=span, -span..=span), (-3i64..=3).prop_filter("nonzero", |c| *c != 0)), 1..=max_len)
        .prop_map(|terms| {
            let mut f = FiniteFn::zero(2);
            for ((x, y), c) in terms {
                f.add_term(vec![x, y], rat_int(c)).unwrap();
            }
            f
        })
        .prop_filter("nonzero", |f| !f.is_zero())
}

fn deglex(n: usize) -> MonomialOrder {
    MonomialOrder::deglex(n)
}

fn elements(a: &PointSet, o: &MonomialOrder) -> BTreeSet<Exponent> {
    compute_e(a, o).unwrap().elements().iter().cloned().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cardinality_and_lower_set(a in point_set(2, 12, 4)) {
        let e = compute_e(&a, &deglex(2)).unwrap();
        prop_assert_eq!(e.len(), a.len());
        prop_assert!(is_lower_set(e.elements()));
    }

    #[test]
    fn cardinality_in_three_variables(a in point_set(3, 10, 2)) {
        let e = compute_e(&a, &deglex(3)).unwrap();
        prop_assert_eq!(e.len(), a.len());
        prop_assert!(is_lower_set(e.elements()));
    }

    #[test]
    fn translation_invariance(a in point_set(2, 10, 4), v in prop::collection::vec(-9i64..=9, 2)) {
        prop_assert_eq!(elements(&a, &deglex(2)), elements(&a.translate(&v), &deglex(2)));
    }

    #[test]
    fn monotone_under_inclusion(a in point_set(2, 12, 4), keep in prop::collection::vec(any::<bool>(), 12)) {
        let sub: Vec<Vec<i64>> = a
            .points()
            .iter()
            .zip(keep.iter().cycle())
            .filter(|(_, k)| **k)
            .map(|(p, _)| p.clone())
            .collect();
        prop_assume!(!sub.is_empty());
        let b = PointSet::new(2, sub).unwrap();
        prop_assert!(elements(&b, &deglex(2)).is_subset(&elements(&a, &deglex(2))));
    }

    #[test]
    fn superadditive(a in point_set(2, 6, 3), b in point_set(2, 6, 3)) {
        let ab = elements(&a.sum(&b).unwrap(), &deglex(2));
        for x in elements(&a, &deglex(2)) {
            for y in elements(&b, &deglex(2)) {
                prop_assert!(ab.contains(&x.add(&y)));
            }
        }
    }

    #[test]
    fn superadditive_three_variables(a in point_set(3, 5, 2), b in point_set(3, 5, 2)) {
        let ab = elements(&a.sum(&b).unwrap(), &deglex(3));
        for x in elements(&a, &deglex(3)) {
            for y in elements(&b, &deglex(3)) {
                prop_assert!(ab.contains(&x.add(&y)));
            }
        }
    }

    #[test]
    fn lex_scan_matches_fiber_recursion(
        a in point_set(3, 10, 2),
        priority in Just(vec![0usize, 1, 2]).prop_shuffle(),
    ) {
        let o = MonomialOrder { kind: OrderKind::Lex, priority };
        prop_assert_eq!(compute_e(&a, &o).unwrap(), compute_e_lex(&a, &o).unwrap());
    }

    #[test]
    fn convolution_adds_sm_and_newton_polygons(f in finite_fn(5, 3), g in finite_fn(5, 3)) {
        let fg = convolve(&f, &g).unwrap();
        let o = deglex(2);
        prop_assert_eq!(sm(&fg, &o).unwrap(), sm(&f, &o).unwrap().add(&sm(&g, &o).unwrap()));
        prop_assert_eq!(
            newton_polygon(&fg).unwrap(),
            newton_polygon(&f).unwrap().minkowski_sum(&newton_polygon(&g).unwrap())
        );
    }

    #[test]
    fn vanishing_order_is_unimodular_invariant(
        f in finite_fn(6, 3),
        ops in prop::collection::vec((0u8..4, -2i64..=2), 1..=4),
        t in prop::collection::vec(-4i64..=4, 2),
    ) {
        let mut m = vec![vec![1i64, 0], vec![0, 1]];
        for (kind, k) in ops {
            let e = match kind {
                0 => [[1, k], [0, 1]],
                1 => [[1, 0], [k, 1]],
                2 => [[0, 1], [1, 0]],
                _ => [[-1, 0], [0, 1]],
            };
            m = (0..2)
                .map(|i| (0..2).map(|j| e[i][0] * m[0][j] + e[i][1] * m[1][j]).collect())
                .collect();
        }
        let g = f.map_support(&m, &t);
        prop_assert_eq!(vanishing_order(&f).unwrap(), vanishing_order(&g).unwrap());
    }

    #[test]
    fn lower_sets_are_their_own_staircase(heights in prop::collection::vec(0u32..5, 1..6)) {
        // a staircase profile: nonincreasing column heights
        let mut heights = heights;
        heights.sort_unstable_by(|a, b| b.cmp(a));
        let pts: Vec<Vec<i64>> = heights
            .iter()
            .enumerate()
            .flat_map(|(x, &h)| (0..=h).map(move |y| vec![x as i64, y as i64]))
            .collect();
        let a = PointSet::new(2, pts.clone()).unwrap();
        let want: BTreeSet<Exponent> = pts
            .iter()
            .map(|p| Exponent(vec![p[0] as u32, p[1] as u32]))
            .collect();
        prop_assert_eq!(elements(&a, &deglex(2)), want.clone());
        let lex = MonomialOrder::lex(2);
        prop_assert_eq!(elements(&a, &lex), want);
    }
}
