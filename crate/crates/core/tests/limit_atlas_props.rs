use std::collections::BTreeSet;

use proptest::prelude::*;

use staircase_core::atlas::{atlas_search, decide_irreducible, max_order_witness, polygon_s_value, Status};
use staircase_core::geometry::{lp, LatticePolygon, Point, RatPoint, RatPolygon};
use staircase_core::limit::{a_lower, bracket, dilate_staircase, lex_sp_2d, triangle_sp_exact, BRegion};
use staircase_core::linalg::{rat, rat_int, Rat};
use staircase_core::staircase::FiniteFn;

fn small_rat() -> impl Strategy<Value = Rat> {
    (1i64..=4).prop_flat_map(|den| (0..=2 * den).prop_map(move |num| rat(num, den)))
}

fn rat_polygon() -> impl Strategy<Value = RatPolygon> {
    prop::collection::vec((small_rat(), small_rat()), 3..=4)
        .prop_filter_map("positive area", |pts| {
            let p = RatPolygon::hull(pts.into_iter().map(|(x, y)| Point::new(x, y))).ok()?;
            (p.dim() == 2).then_some(p)
        })
}

fn scaled(d: &Rat, e: &[u32]) -> RatPoint {
    Point::new(rat_int(e[0] as i64) / d, rat_int(e[1] as i64) / d)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn dilates_form_an_ascending_chain(p in rat_polygon()) {
        let mut prev: Option<BTreeSet<RatPoint>> = None;
        for k in 0..4 {
            let d = rat_int(1 << k);
            let cur: BTreeSet<RatPoint> = match dilate_staircase(&p, &d).unwrap() {
                None => BTreeSet::new(),
                Some((_, s)) => s.elements().iter().map(|e| scaled(&d, &e.0)).collect(),
            };
            if let Some(prev) = &prev {
                prop_assert!(prev.is_subset(&cur));
            }
            prev = Some(cur);
        }
    }

    #[test]
    fn inner_body_inside_outer_region(p in rat_polygon(), k in 0u32..3) {
        let d = rat_int(1 << k);
        if let Some(a) = a_lower(&p, &d).unwrap() {
            let region = BRegion::new(a.clone(), p.double_area()).unwrap();
            for v in a.vertices() {
                prop_assert!(region.contains(v));
            }
            let b = bracket(&p, &d).unwrap().unwrap();
            prop_assert!(&b.v_lo * &b.w_lo <= p.double_area());
        }
    }

    #[test]
    fn lex_body_is_lower_with_the_same_area(p in rat_polygon()) {
        let s = lex_sp_2d(&p).unwrap();
        prop_assert_eq!(s.double_area(), p.double_area());
        let origin = Point::new(rat_int(0), rat_int(0));
        for v in s.vertices() {
            prop_assert!(s.contains(&Point::new(v.x.clone(), rat_int(0))));
            prop_assert!(s.contains(&Point::new(rat_int(0), v.y.clone())));
            prop_assert!(s.contains(&origin));
        }
    }

    /// Wide triangles with the segment witness `x - 1`.
    #[test]
    fn exact_body_of_wide_triangles(base in 2i64..=5, h in 1i64..=3, x in 0i64..=5) {
        prop_assume!(base * base >= base * h);
        let lat = LatticePolygon::from_pairs(&[(0, 0), (base, 0), (x, h)]).unwrap();
        let p = lat.to_rat();
        let f = FiniteFn::from_int_terms(&[((0, 0), -1), ((1, 0), 1)]);
        let seg = LatticePolygon::from_pairs(&[(0, 0), (1, 0)]).unwrap();
        let verdict = decide_irreducible(&max_order_witness(&seg).unwrap()).unwrap();
        let sp = triangle_sp_exact(&p, &f, &verdict).unwrap();
        prop_assert_eq!(sp.polygon.double_area(), p.double_area());
        for k in 0..3 {
            let d = rat_int(1 << k);
            if let Some(a) = a_lower(&p, &d).unwrap() {
                prop_assert!(sp.polygon.contains_polygon(&a));
            }
        }
    }
}

#[test]
fn atlas_rows_are_consistent() {
    let res = atlas_search(15).unwrap();
    let mut canon = BTreeSet::new();
    for row in &res.rows {
        let p = &row.polygon;
        let dbl = p.double_area();
        assert!((row.m * row.m) as i64 > dbl, "{p}");
        assert_eq!(2 * p.lattice_point_count() as i64, dbl + p.boundary_count() + 2);
        assert!(canon.insert(p.unimodular_canonical()), "duplicate class {p}");

        // the same class in another position carries the same invariants
        let moved = p.apply([[2, 1], [1, 1]], &lp(-3, 4));
        let w = max_order_witness(&moved).unwrap();
        assert_eq!((w.m, moved.double_area()), (row.m, dbl));
        assert_eq!(w.space_dim, row.space_dim);

        for (q1, q2) in p.minkowski_decompositions() {
            let s = polygon_s_value(&q1).unwrap() + polygon_s_value(&q2).unwrap();
            assert!(s < row.m || row.space_dim > 1, "{p}: s(Q1) + s(Q2) = {s}");
        }
        assert_eq!(decide_irreducible(&max_order_witness(p).unwrap()).unwrap().status, Status::Irreducible);
    }
}
