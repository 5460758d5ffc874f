//! Dilates `d P`, their staircases, and exact brackets for the limit body
//! `S_P`, the limit of `d^{-1} E_{dP ∩ Z^2}`.
//!
//! The inner body `A = hull(d^{-1} E)` lies in `S_P`, and `S_P` has the area of
//! `P`, so `S_P` lies in the region `B` of points `e` with
//! `area(hull(A ∪ {e})) <= area(P)`. Both `A` and the first-quadrant part of
//! `B` are computed as exact rational polygons.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::atlas::{Status, Verdict};
use crate::error::{Error, Result};
use crate::geometry::{cross, l_ratio_fn, Point, RatPoint, RatPolygon};
use crate::linalg::{rat_int, Rat};
use crate::order::MonomialOrder;
use crate::staircase::{compute_e, sm, FiniteFn, PointSet, Staircase};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DilateReport {
    pub d: Rat,
    pub point_count: usize,
    /// `None` when `dP` has no lattice points.
    pub r: Option<u64>,
    pub s: Option<u64>,
    pub v_est: Option<Rat>,
    pub w_est: Option<Rat>,
}

/// Staircase of `dP ∩ Z^2` under graded lex, or `None` if it is empty.
pub fn dilate_staircase(p: &RatPolygon, d: &Rat) -> Result<Option<(PointSet, Staircase)>> {
    if p.dim() != 2 {
        return Err(Error::Degenerate("polygon must have positive area"));
    }
    let pts = p.lattice_points_dilate(d)?;
    if pts.is_empty() {
        return Ok(None);
    }
    let a = PointSet::new(2, pts.iter().map(|q| vec![q.x, q.y]).collect())?;
    let stairs = compute_e(&a, &MonomialOrder::deglex(2))?;
    Ok(Some((a, stairs)))
}

fn report_from(d: &Rat, found: Option<&(PointSet, Staircase)>) -> DilateReport {
    match found {
        None => DilateReport {
            d: d.clone(),
            point_count: 0,
            r: None,
            s: None,
            v_est: None,
            w_est: None,
        },
        Some((a, stairs)) => {
            let r = stairs.min_missing_degree();
            let s = stairs.max_degree().expect("nonempty");
            DilateReport {
                d: d.clone(),
                point_count: a.len(),
                r: Some(r),
                s: Some(s),
                v_est: Some(rat_int(r as i64 - 1) / d),
                w_est: Some(rat_int(s as i64) / d),
            }
        }
    }
}

pub fn dilate_report(p: &RatPolygon, d: &Rat) -> Result<DilateReport> {
    let found = dilate_staircase(p, d)?;
    Ok(report_from(d, found.as_ref()))
}

fn scaled_hull(stairs: &Staircase, d: &Rat) -> RatPolygon {
    RatPolygon::hull(stairs.elements().iter().map(|e| {
        Point::new(rat_int(e.0[0] as i64) / d, rat_int(e.0[1] as i64) / d)
    }))
    .expect("nonempty staircase")
}

/// `hull(d^{-1} E_{dP ∩ Z^2})`, or `None` for an empty dilate.
pub fn a_lower(p: &RatPolygon, d: &Rat) -> Result<Option<RatPolygon>> {
    Ok(dilate_staircase(p, d)?.map(|(_, s)| scaled_hull(&s, d)))
}

/// The outer region `{e >= 0 : area(hull(A ∪ {e})) <= area(P)}`.
#[derive(Clone, Debug)]
pub struct BRegion {
    pub a_poly: RatPolygon,
    /// `2 area(P) - 2 area(A)`.
    pub slack: Rat,
    target: Rat,
}

impl BRegion {
    pub fn new(a_poly: RatPolygon, p_double_area: Rat) -> Result<Self> {
        let slack = &p_double_area - a_poly.double_area();
        if slack.is_negative() {
            return Err(Error::Verification(
                "inner hull has larger area than P".into(),
            ));
        }
        Ok(Self {
            a_poly,
            slack,
            target: p_double_area,
        })
    }

    /// Direct test by hulling `A ∪ {e}`.
    pub fn contains(&self, e: &RatPoint) -> bool {
        if e.x.is_negative() || e.y.is_negative() {
            return false;
        }
        let h = RatPolygon::hull(self.a_poly.vertices().iter().cloned().chain([e.clone()]))
            .expect("nonempty");
        h.double_area() <= self.target
    }

    /// Doubled area added by `e`: the sum over edges of `A` that see `e`.
    fn added(&self, e: &RatPoint) -> Rat {
        let v = self.a_poly.vertices();
        let k = v.len();
        (0..k).fold(Rat::zero(), |acc, i| {
            let c = cross(&v[i], &v[(i + 1) % k], e);
            if c.is_negative() {
                acc - c
            } else {
                acc
            }
        })
    }

    /// Points of the line `q + t u` where the added area equals the slack.
    fn boundary_on_line(&self, q: &RatPoint, u: &RatPoint) -> Vec<Rat> {
        let v = self.a_poly.vertices();
        let k = v.len();
        // added(q + t u) = sum_i max(0, alpha_i t + beta_i)
        let terms: Vec<(Rat, Rat)> = (0..k)
            .map(|i| {
                let edge = v[(i + 1) % k].sub(&v[i]);
                let alpha = -(&edge.x * &u.y - &edge.y * &u.x);
                let beta = -cross(&v[i], &v[(i + 1) % k], q);
                (alpha, beta)
            })
            .collect();
        let mut breaks: Vec<Rat> = terms
            .iter()
            .filter(|(a, _)| !a.is_zero())
            .map(|(a, b)| -b / a)
            .collect();
        breaks.sort();
        breaks.dedup();
        let mut pieces: Vec<(Option<Rat>, Option<Rat>)> = Vec::new();
        if breaks.is_empty() {
            pieces.push((None, None));
        } else {
            pieces.push((None, Some(breaks[0].clone())));
            for w in breaks.windows(2) {
                pieces.push((Some(w[0].clone()), Some(w[1].clone())));
            }
            pieces.push((Some(breaks[breaks.len() - 1].clone()), None));
        }
        let one = Rat::one();
        let two = rat_int(2);
        let mut out = Vec::new();
        for (lo, hi) in pieces {
            let sample = match (&lo, &hi) {
                (None, None) => Rat::zero(),
                (None, Some(h)) => h - &one,
                (Some(l), None) => l + &one,
                (Some(l), Some(h)) => (l + h) / &two,
            };
            let (mut slope, mut offset) = (Rat::zero(), Rat::zero());
            for (a, b) in &terms {
                if (a * &sample + b).is_positive() {
                    slope += a;
                    offset += b;
                }
            }
            let within = |t: &Rat| {
                lo.as_ref().is_none_or(|l| t >= l) && hi.as_ref().is_none_or(|h| t <= h)
            };
            if !slope.is_zero() {
                let t = (&self.slack - &offset) / &slope;
                if within(&t) {
                    out.push(t);
                }
            } else if offset == self.slack {
                out.extend(lo.iter().cloned());
                out.extend(hi.iter().cloned());
            }
        }
        out
    }

    fn axis_extent(&self, axis: usize) -> Rat {
        let origin = Point::new(Rat::zero(), Rat::zero());
        let u = if axis == 0 {
            Point::new(Rat::one(), Rat::zero())
        } else {
            Point::new(Rat::zero(), Rat::one())
        };
        self.boundary_on_line(&origin, &u)
            .into_iter()
            .filter(|t| !t.is_negative())
            .max()
            .unwrap_or_else(Rat::zero)
    }

    /// The region as an exact polygon when `A` has positive area; otherwise
    /// it is unbounded.
    pub fn polygon(&self) -> Option<RatPolygon> {
        if self.a_poly.dim() < 2 {
            return None;
        }
        let v = self.a_poly.vertices();
        let k = v.len();
        let mut cands: Vec<RatPoint> = v.to_vec();
        let mut lines: Vec<(RatPoint, RatPoint)> = (0..k)
            .map(|i| (v[i].clone(), v[(i + 1) % k].sub(&v[i])))
            .collect();
        let origin = Point::new(Rat::zero(), Rat::zero());
        lines.push((origin.clone(), Point::new(Rat::one(), Rat::zero())));
        lines.push((origin, Point::new(Rat::zero(), Rat::one())));
        for (q, u) in &lines {
            for t in self.boundary_on_line(q, u) {
                cands.push(q.add(&u.scale(&t)));
            }
        }
        cands.retain(|p| !p.x.is_negative() && !p.y.is_negative());
        debug_assert!(cands.iter().all(|p| self.added(p) <= self.slack));
        Some(RatPolygon::hull(cands).expect("contains A"))
    }

    /// `max e1 + e2` over the region; `None` if unbounded.
    pub fn w_hi(&self) -> Option<Rat> {
        self.polygon()
            .map(|b| b.vertices().iter().map(|p| &p.x + &p.y).max().expect("nonempty"))
    }

    /// Largest `t` with `(t, 0)` and `(0, t)` in the region; `None` if
    /// unbounded. By convexity the whole degree-`t` simplex is then inside.
    pub fn v_hi(&self) -> Option<Rat> {
        if self.a_poly.dim() < 2 {
            return None;
        }
        Some(self.axis_extent(0).min(self.axis_extent(1)))
    }
}

/// `vol(hull(A ∪ {e})) <= vol(P)` with `A` the inner body at `d`.
pub fn b_contains(p: &RatPolygon, d: &Rat, e: &RatPoint) -> Result<bool> {
    if e.x.is_negative() || e.y.is_negative() {
        return Err(Error::InvalidInput("e must be coordinatewise nonnegative".into()));
    }
    match a_lower(p, d)? {
        None => Ok(true),
        Some(a) => Ok(BRegion::new(a, p.double_area())?.contains(e)),
    }
}

#[derive(Clone, Debug)]
pub struct SPBracket {
    pub report: DilateReport,
    pub a_poly: RatPolygon,
    pub b_poly: Option<RatPolygon>,
    pub vol_target: Rat,
    pub v_lo: Rat,
    pub v_hi: Option<Rat>,
    pub w_lo: Rat,
    pub w_hi: Option<Rat>,
}

/// Exact brackets `v_lo <= v_P <= v_hi` and `w_lo <= w_P <= w_hi` at `d`, or
/// `None` when `dP` has no lattice points. An upper bound of `None` means the
/// outer region is unbounded (the inner hull has zero area).
pub fn bracket(p: &RatPolygon, d: &Rat) -> Result<Option<SPBracket>> {
    match dilate_staircase(p, d)? {
        Some(found) => bracket_from(p, d, &found).map(Some),
        None => Ok(None),
    }
}

/// [`bracket`] from an already computed dilate staircase.
pub fn bracket_from(p: &RatPolygon, d: &Rat, found: &(PointSet, Staircase)) -> Result<SPBracket> {
    let report = report_from(d, Some(found));
    let a_poly = scaled_hull(&found.1, d);
    let region = BRegion::new(a_poly.clone(), p.double_area())?;
    Ok(SPBracket {
        v_lo: report.v_est.clone().expect("nonempty"),
        w_lo: report.w_est.clone().expect("nonempty"),
        v_hi: region.v_hi(),
        w_hi: region.w_hi(),
        b_poly: region.polygon(),
        vol_target: p.double_area() / rat_int(2),
        a_poly,
        report,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Quadrilateral,
    Triangle,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleSP {
    pub shape: Shape,
    pub polygon: RatPolygon,
    pub e: RatPoint,
    pub v: Rat,
    pub w: Rat,
}

/// `S_P = hull{0, (v,0), e, (0,v)}` for a triangle `P` carrying an
/// irreducible `f` with `w = |sm f| / l_{P,f}` and `w^2 >= 2 vol(P)`, where
/// `e = sm(f) / l_{P,f}` and `v = 2 vol(P) / w`.
pub fn triangle_sp_exact(p: &RatPolygon, f: &FiniteFn, verdict: &Verdict) -> Result<TriangleSP> {
    if p.dim() != 2 || p.vertices().len() != 3 {
        return Err(Error::Degenerate("P must be a nondegenerate triangle"));
    }
    if verdict.status != Status::Irreducible {
        return Err(Error::InvalidInput(
            "witness is not certified irreducible".into(),
        ));
    }
    let l = l_ratio_fn(p, f)?;
    if !l.is_positive() {
        return Err(Error::InvalidInput("witness support is a single point".into()));
    }
    let s = sm(f, &MonomialOrder::deglex(2))?;
    let e = Point::new(rat_int(s.0[0] as i64) / &l, rat_int(s.0[1] as i64) / &l);
    let w = &e.x + &e.y;
    let two_vol = p.double_area();
    if &w * &w < two_vol {
        return Err(Error::WitnessInsufficient {
            w_squared: crate::linalg::format_rat(&(&w * &w)),
            two_vol: crate::linalg::format_rat(&two_vol),
        });
    }
    let v = &two_vol / &w;
    let zero = Rat::zero();
    let polygon = RatPolygon::hull([
        Point::new(zero.clone(), zero.clone()),
        Point::new(v.clone(), zero.clone()),
        e.clone(),
        Point::new(zero, v.clone()),
    ])?;
    let shape = if polygon.vertices().len() == 4 {
        Shape::Quadrilateral
    } else {
        Shape::Triangle
    };
    Ok(TriangleSP {
        shape,
        polygon,
        e,
        v,
        w,
    })
}

/// Limit body under lex with `X1 < X2`:
/// `{(e1, e2) : |{x : chord(x) >= e2}| >= e1}` where `chord(x)` is the length
/// of the vertical section of `P` over `x`.
pub fn lex_sp_2d(p: &RatPolygon) -> Result<RatPolygon> {
    if p.dim() != 2 {
        return Err(Error::Degenerate("lex body needs positive area"));
    }
    let mut xs: Vec<Rat> = p.vertices().iter().map(|q| q.x.clone()).collect();
    xs.sort();
    xs.dedup();
    let hs: Vec<Rat> = xs.iter().map(|x| p.vertical_chord(x)).collect();
    let mut knots: Vec<Rat> = hs.clone();
    knots.push(Rat::zero());
    let hmax = hs.iter().max().expect("nonempty").clone();
    knots.sort();
    knots.dedup();
    // measure of {x : chord(x) >= t}; chord is linear between vertex abscissae
    let measure = |t: &Rat| -> Rat {
        (0..xs.len() - 1).fold(Rat::zero(), |acc, j| {
            let len = &xs[j + 1] - &xs[j];
            let (lo, hi) = if hs[j] <= hs[j + 1] {
                (&hs[j], &hs[j + 1])
            } else {
                (&hs[j + 1], &hs[j])
            };
            if lo >= t {
                acc + len
            } else if hi < t {
                acc
            } else {
                acc + len * (hi - t) / (hi - lo)
            }
        })
    };
    let zero = Rat::zero();
    let mut pts = vec![
        Point::new(zero.clone(), zero.clone()),
        Point::new(zero, hmax),
    ];
    for t in &knots {
        pts.push(Point::new(measure(t), t.clone()));
    }
    RatPolygon::hull(pts)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RhoVariant {
    /// Column reduction left to right.
    Forward,
    /// Column reduction right to left, followed by a shear.
    Reverse,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedTriangle {
    pub weights: [u64; 3],
    /// Rows of the projection `Z^3 -> Z^2`.
    pub rho: [[i64; 3]; 2],
    pub polygon: RatPolygon,
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let e = a.extended_gcd(&b);
    if e.gcd < 0 {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

fn inverse_unimodular(u: &[[i64; 3]; 3]) -> [[i64; 3]; 3] {
    let c = |i: usize, j: usize| -> i64 {
        let r: Vec<usize> = (0..3).filter(|&x| x != i).collect();
        let s: Vec<usize> = (0..3).filter(|&x| x != j).collect();
        let minor = u[r[0]][s[0]] * u[r[1]][s[1]] - u[r[0]][s[1]] * u[r[1]][s[0]];
        if (i + j).is_multiple_of(2) {
            minor
        } else {
            -minor
        }
    };
    let det: i64 = (0..3).map(|j| u[0][j] * c(0, j)).sum();
    debug_assert!(det == 1 || det == -1);
    let mut inv = [[0i64; 3]; 3];
    for (i, row) in inv.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = c(j, i) * det;
        }
    }
    inv
}

/// The triangle `rho(P')` for `P' = hull{e1/a, e2/b, e3/c}`. The map
/// `rho` is the last two rows of a unimodular `V` whose first row is
/// `(a, b, c)`, so it is a bijection from `{x ∈ Z^3 : a x1 + b x2 + c x3 = d}`
/// onto `Z^2` for every `d`.
pub fn weighted_triangle(a: u64, b: u64, c: u64, variant: RhoVariant) -> Result<WeightedTriangle> {
    if a == 0 || b == 0 || c == 0 {
        return Err(Error::InvalidInput("weights must be positive".into()));
    }
    if a.gcd(&b).gcd(&c) != 1 {
        return Err(Error::NotCoprime([a, b, c]));
    }
    let w = [a as i64, b as i64, c as i64];
    let (pivot, others) = match variant {
        RhoVariant::Forward => (0, [1, 2]),
        RhoVariant::Reverse => (2, [1, 0]),
    };
    // Column operations with (a,b,c) U = g e_pivot.
    let mut u = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    let mut v = w;
    for j in others {
        let (g, p, q) = ext_gcd(v[pivot], v[j]);
        let (vp, vj) = (v[pivot] / g, v[j] / g);
        for row in u.iter_mut() {
            let (cp, cj) = (row[pivot], row[j]);
            row[pivot] = p * cp + q * cj;
            row[j] = -vj * cp + vp * cj;
        }
        v[pivot] = g;
        v[j] = 0;
    }
    let inv = inverse_unimodular(&u);
    debug_assert_eq!(inv[pivot], w);
    let mut rows: Vec<[i64; 3]> = (0..3).filter(|&i| i != pivot).map(|i| inv[i]).collect();
    if variant == RhoVariant::Reverse {
        // (r0, r1) -> (r0, r0 + r1)
        let r0 = rows[0];
        for (x, y) in rows[1].iter_mut().zip(r0) {
            *x += y;
        }
    }
    let rho = [rows[0], rows[1]];
    let verts = (0..3).map(|i| {
        Point::new(
            Rat::new(rho[0][i].into(), w[i].into()),
            Rat::new(rho[1][i].into(), w[i].into()),
        )
    });
    Ok(WeightedTriangle {
        weights: [a, b, c],
        rho,
        polygon: RatPolygon::hull(verts)?,
    })
}

/// Number of `(i, j, k) >= 0` with `a i + b j + c k = d`.
pub fn weighted_monomial_count(a: u64, b: u64, c: u64, d: u64) -> u64 {
    let mut n = 0;
    for i in 0..=d / a {
        let rest = d - a * i;
        for j in 0..=rest / b {
            if (rest - b * j).is_multiple_of(c) {
                n += 1;
            }
        }
    }
    n
}

#[derive(Clone, Debug)]
pub struct SeshadriRow {
    pub d: u64,
    pub point_count: usize,
    pub w_lo: Option<Rat>,
    pub w_hi: Option<Rat>,
}

#[derive(Clone, Debug)]
pub struct SeshadriInterval {
    pub weights: [u64; 3],
    pub variant: RhoVariant,
    /// Running intersection of `[1 / w_hi, 1 / w_lo]`.
    pub lo: Rat,
    /// `None` while no dilate has `s > 0`.
    pub hi: Option<Rat>,
    pub rows: Vec<SeshadriRow>,
}

/// Brackets `1 / w_P` for the weighted triangle over a schedule of integer
/// dilates. Each dilate's point count is checked against the weighted
/// monomial count.
pub fn seshadri_bracket(
    a: u64,
    b: u64,
    c: u64,
    schedule: &[u64],
    variant: RhoVariant,
) -> Result<SeshadriInterval> {
    let tri = weighted_triangle(a, b, c, variant)?;
    let mut out = SeshadriInterval {
        weights: [a, b, c],
        variant,
        lo: Rat::zero(),
        hi: None,
        rows: Vec::new(),
    };
    let mut sorted = schedule.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    for &d in &sorted {
        if d == 0 {
            return Err(Error::InvalidInput("dilation factors must be positive".into()));
        }
        let dr = rat_int(d as i64);
        let br = bracket(&tri.polygon, &dr)?;
        let count = br.as_ref().map_or(0, |x| x.report.point_count);
        let expected = weighted_monomial_count(a, b, c, d);
        if count as u64 != expected {
            return Err(Error::Verification(format!(
                "|{d}P ∩ Z^2| = {count} but {expected} monomials have weighted degree {d}"
            )));
        }
        let (w_lo, w_hi) = match &br {
            Some(x) => (Some(x.w_lo.clone()), x.w_hi.clone()),
            None => (None, None),
        };
        if let Some(wh) = &w_hi {
            if wh.is_positive() {
                out.lo = out.lo.max(wh.recip());
            }
        }
        if let Some(wl) = &w_lo {
            if wl.is_positive() {
                let cand = wl.recip();
                out.hi = Some(match out.hi.take() {
                    Some(h) => h.min(cand),
                    None => cand,
                });
            }
        }
        out.rows.push(SeshadriRow {
            d,
            point_count: count,
            w_lo,
            w_hi,
        });
    }
    Ok(out)
}

/// Default schedule `1, 2, 4, ..., 2^k`.
pub fn doubling_schedule(k: u32) -> Vec<u64> {
    (0..=k).map(|i| 1u64 << i).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::{decide_irreducible, max_order_witness};
    use crate::geometry::LatticePolygon;
    use crate::linalg::rat;

    fn ipoly(pts: &[(i64, i64)]) -> RatPolygon {
        LatticePolygon::from_pairs(pts).unwrap().to_rat()
    }

    fn rp(x: Rat, y: Rat) -> RatPoint {
        Point::new(x, y)
    }

    #[test]
    fn square_report() {
        let sq = ipoly(&[(0, 0), (1, 0), (1, 1), (0, 1)]);
        let r = dilate_report(&sq, &rat_int(3)).unwrap();
        assert_eq!(r.point_count, 16);
        assert_eq!((r.r, r.s), (Some(4), Some(6)));
        assert_eq!(r.v_est, Some(rat_int(1)));
        assert_eq!(r.w_est, Some(rat_int(2)));
    }

    #[test]
    fn standard_triangle_report() {
        let t = ipoly(&[(0, 0), (1, 0), (0, 1)]);
        for d in 1..6 {
            let r = dilate_report(&t, &rat_int(d)).unwrap();
            assert_eq!((r.r, r.s), (Some(d as u64 + 1), Some(d as u64)));
        }
    }

    #[test]
    fn empty_dilate() {
        let t = RatPolygon::from_rat_pairs(&[
            (rat(1, 3), rat(1, 3)),
            (rat(2, 3), rat(1, 3)),
            (rat(1, 3), rat(2, 3)),
        ])
        .unwrap();
        let r = dilate_report(&t, &rat_int(1)).unwrap();
        assert_eq!(r.point_count, 0);
        assert!(r.r.is_none());
        assert!(bracket(&t, &rat_int(1)).unwrap().is_none());
    }

    #[test]
    fn a_lower_square() {
        let sq = ipoly(&[(0, 0), (1, 0), (1, 1), (0, 1)]);
        assert_eq!(a_lower(&sq, &rat_int(2)).unwrap().unwrap(), sq);
    }

    #[test]
    fn b_region_examples() {
        let p = ipoly(&[(0, 0), (4, 2), (2, 3)]);
        let d = rat_int(8);
        assert!(b_contains(&p, &d, &rp(rat_int(2), rat_int(1))).unwrap());
        assert!(!b_contains(&p, &d, &rp(rat_int(100), rat_int(100))).unwrap());
        assert!(b_contains(&p, &d, &rp(rat(-1, 1), rat_int(0))).is_err());
    }

    #[test]
    fn b_polygon_matches_direct_test() {
        let p = ipoly(&[(0, 0), (4, 2), (2, 3)]);
        let (_, stairs) = dilate_staircase(&p, &rat_int(2)).unwrap().unwrap();
        let region = BRegion::new(scaled_hull(&stairs, &rat_int(2)), p.double_area()).unwrap();
        let poly = region.polygon().unwrap();
        for v in poly.vertices() {
            assert!(region.contains(v), "vertex {v:?}");
        }
        for i in 0..=24 {
            for j in 0..=24 {
                let e = rp(rat(i, 4), rat(j, 4));
                assert_eq!(poly.contains(&e), region.contains(&e), "{e:?}");
            }
        }
    }

    #[test]
    fn standard_triangle_bracket_exact() {
        let t = ipoly(&[(0, 0), (2, 0), (0, 2)]);
        for d in [1, 2, 4] {
            let b = bracket(&t, &rat_int(d)).unwrap().unwrap();
            assert_eq!(b.v_lo, rat_int(2));
            assert_eq!(b.w_lo, rat_int(2));
            assert_eq!(b.v_hi, Some(rat_int(2)));
            assert_eq!(b.w_hi, Some(rat_int(2)));
        }
    }

    #[test]
    fn example_quad() {
        let lat = LatticePolygon::from_pairs(&[(0, 0), (4, 2), (2, 3)]).unwrap();
        let w = max_order_witness(&lat).unwrap();
        let verdict = decide_irreducible(&w).unwrap();
        let sp = triangle_sp_exact(&lat.to_rat(), &w.f, &verdict).unwrap();
        assert_eq!(sp.shape, Shape::Quadrilateral);
        let want = RatPolygon::from_rat_pairs(&[
            (rat_int(0), rat_int(0)),
            (rat(8, 3), rat_int(0)),
            (rat_int(2), rat_int(1)),
            (rat_int(0), rat(8, 3)),
        ])
        .unwrap();
        assert_eq!(sp.polygon, want);
        assert_eq!(sp.polygon.double_area(), lat.to_rat().double_area());
    }

    #[test]
    fn right_triangle_is_its_own_body() {
        let p = ipoly(&[(0, 0), (3, 0), (0, 2)]);
        let f = FiniteFn::from_int_terms(&[((0, 0), -1), ((1, 0), 1)]);
        let verdict = decide_irreducible(
            &max_order_witness(&LatticePolygon::from_pairs(&[(0, 0), (1, 0)]).unwrap()).unwrap(),
        )
        .unwrap();
        let sp = triangle_sp_exact(&p, &f, &verdict).unwrap();
        assert_eq!(sp.polygon, p);
        assert_eq!(sp.shape, Shape::Triangle);
        let tall = ipoly(&[(0, 0), (2, 0), (0, 3)]);
        assert!(matches!(
            triangle_sp_exact(&tall, &f, &verdict),
            Err(Error::WitnessInsufficient { .. })
        ));
    }

    #[test]
    fn lex_body_examples() {
        let p = ipoly(&[(0, 0), (1, 1), (2, 0)]);
        assert_eq!(lex_sp_2d(&p).unwrap(), ipoly(&[(0, 0), (2, 0), (0, 1)]));
        let t = ipoly(&[(0, 0), (3, 0), (0, 2)]);
        assert_eq!(lex_sp_2d(&t).unwrap(), t);
        let q = ipoly(&[(0, 0), (4, 2), (2, 3)]);
        assert_eq!(lex_sp_2d(&q).unwrap().double_area(), q.double_area());
        assert!(lex_sp_2d(&ipoly(&[(0, 0), (1, 1)])).is_err());
    }

    #[test]
    fn weighted_triangles() {
        for (a, b, c) in [(1, 1, 1), (1, 1, 2), (1, 2, 3), (2, 3, 5)] {
            for variant in [RhoVariant::Forward, RhoVariant::Reverse] {
                let t = weighted_triangle(a, b, c, variant).unwrap();
                assert_eq!(t.polygon.double_area(), Rat::new(1.into(), ((a * b * c) as i64).into()));
                for d in 0..=10u64 {
                    let n = if d == 0 {
                        1
                    } else {
                        t.polygon.lattice_points_dilate(&rat_int(d as i64)).unwrap().len() as u64
                    };
                    assert_eq!(n, weighted_monomial_count(a, b, c, d), "{a},{b},{c} d={d}");
                }
            }
        }
        let f = weighted_triangle(1, 1, 2, RhoVariant::Forward).unwrap();
        let r = weighted_triangle(1, 1, 2, RhoVariant::Reverse).unwrap();
        assert_ne!(f.polygon, r.polygon);
        assert!(matches!(weighted_triangle(2, 4, 6, RhoVariant::Forward), Err(Error::NotCoprime(_))));
    }

    #[test]
    fn seshadri_111() {
        for variant in [RhoVariant::Forward, RhoVariant::Reverse] {
            let s = seshadri_bracket(1, 1, 1, &[1, 2, 4], variant).unwrap();
            assert_eq!(s.lo, rat_int(1));
            assert_eq!(s.hi, Some(rat_int(1)));
        }
    }
}
