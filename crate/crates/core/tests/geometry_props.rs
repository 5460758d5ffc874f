use proptest::prelude::*;

use staircase_core::geometry::{cross, lp, LatticePolygon};

fn polygon(max_pts: usize, span: i64) -> impl Strategy<Value = LatticePolygon> {
    prop::collection::vec((-span..=span, -span..=span), 1..=max_pts)
        .prop_map(|pts| LatticePolygon::from_pairs(&pts).unwrap())
}

fn unimodular() -> impl Strategy<Value = ([[i64; 2]; 2], (i64, i64))> {
    (prop::collection::vec((0u8..4, -2i64..=2), 1..=4), -6i64..=6, -6i64..=6).prop_map(|(ops, tx, ty)| {
        let mut m = [[1i64, 0], [0, 1]];
        for (kind, k) in ops {
            let e = match kind {
                0 => [[1, k], [0, 1]],
                1 => [[1, 0], [k, 1]],
                2 => [[0, 1], [1, 0]],
                _ => [[-1, 0], [0, 1]],
            };
            m = [
                [e[0][0] * m[0][0] + e[0][1] * m[1][0], e[0][0] * m[0][1] + e[0][1] * m[1][1]],
                [e[1][0] * m[0][0] + e[1][1] * m[1][0], e[1][0] * m[0][1] + e[1][1] * m[1][1]],
            ];
        }
        (m, (tx, ty))
    })
}

fn count(p: &LatticePolygon) -> i64 {
    p.lattice_point_count() as i64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn hull_contains_inputs_and_is_convex(pts in prop::collection::vec((-6i64..=6, -6i64..=6), 1..10)) {
        let p = LatticePolygon::from_pairs(&pts).unwrap();
        for &(x, y) in &pts {
            prop_assert!(p.contains(&lp(x, y)));
        }
        for v in p.vertices() {
            prop_assert!(pts.contains(&(v.x, v.y)));
        }
        let vs = p.vertices();
        if vs.len() >= 3 {
            for i in 0..vs.len() {
                let (a, b, c) = (&vs[i], &vs[(i + 1) % vs.len()], &vs[(i + 2) % vs.len()]);
                prop_assert!(cross(a, b, c) > 0);
            }
        }
    }

    #[test]
    fn lattice_points_match_bounding_box_scan(p in polygon(6, 5)) {
        let xs = p.vertices().iter().map(|v| v.x);
        let ys = p.vertices().iter().map(|v| v.y);
        let (x0, x1) = (xs.clone().min().unwrap(), xs.max().unwrap());
        let (y0, y1) = (ys.clone().min().unwrap(), ys.max().unwrap());
        let brute = (y0..=y1)
            .flat_map(|y| (x0..=x1).map(move |x| lp(x, y)))
            .filter(|q| p.contains(q))
            .count();
        prop_assert_eq!(p.lattice_points().len(), brute);
    }

    #[test]
    fn pick(p in polygon(7, 6)) {
        prop_assert_eq!(2 * count(&p), p.double_area() + p.boundary_count() + 2);
    }

    #[test]
    fn minkowski_count(p in polygon(5, 4), q in polygon(5, 4)) {
        let s = p.minkowski_sum(&q);
        prop_assert_eq!(count(&s), count(&p) + count(&q) + p.mixed_volume_2x(&q) - 1);
    }

    #[test]
    fn parallelogram_law(u in polygon(4, 3), p in polygon(4, 3), q in polygon(4, 3)) {
        let up = u.minkowski_sum(&p);
        let uq = u.minkowski_sum(&q);
        let upq = up.minkowski_sum(&q);
        prop_assert_eq!(count(&upq) - count(&up) - count(&uq) + count(&u), p.mixed_volume_2x(&q));
    }

    #[test]
    fn minkowski_sum_is_hull_of_pairwise_sums(p in polygon(5, 4), q in polygon(5, 4)) {
        let sums: Vec<(i64, i64)> = p
            .vertices()
            .iter()
            .flat_map(|a| q.vertices().iter().map(move |b| (a.x + b.x, a.y + b.y)))
            .collect();
        prop_assert_eq!(p.minkowski_sum(&q), LatticePolygon::from_pairs(&sums).unwrap());
    }

    #[test]
    fn canonical_form_keeps_invariants(p in polygon(6, 5), (m, t) in unimodular()) {
        let c = p.unimodular_canonical();
        prop_assert_eq!(c.double_area(), p.double_area());
        prop_assert_eq!(c.boundary_count(), p.boundary_count());
        prop_assert_eq!(count(&c), count(&p));
        let mut g1 = p.edge_gcds();
        let mut g2 = c.edge_gcds();
        g1.sort_unstable();
        g2.sort_unstable();
        prop_assert_eq!(g1, g2);
        let moved = p.apply(m, &lp(t.0, t.1));
        prop_assert_eq!(moved.unimodular_canonical(), c);
        prop_assert!(moved.is_equivalent(&p));
    }

    #[test]
    fn decompositions_sum_back(p in polygon(5, 3)) {
        for (q1, q2) in p.minkowski_decompositions() {
            prop_assert!(count(&q1) >= 2 && count(&q2) >= 2);
            prop_assert_eq!(q1.minkowski_sum(&q2), p.clone());
        }
    }

    #[test]
    fn segment_decompositions(k in 1i64..12, dx in -3i64..=3, dy in -3i64..=3) {
        prop_assume!(dx != 0 || dy != 0);
        let g = num_integer::gcd(dx, dy);
        let (dx, dy) = (dx / g, dy / g);
        let seg = LatticePolygon::from_pairs(&[(0, 0), (k * dx, k * dy)]).unwrap();
        prop_assert_eq!(seg.minkowski_decompositions().len() as i64, k / 2);
    }
}

#[test]
fn unit_square_is_unit_segment_squared() {
    let sq = LatticePolygon::from_pairs(&[(0, 0), (1, 0), (0, 1), (1, 1)]).unwrap();
    let decs = sq.minkowski_decompositions();
    assert_eq!(decs.len(), 1);
    let (a, b) = &decs[0];
    assert_eq!(a.mixed_volume_2x(b), 1);
}
