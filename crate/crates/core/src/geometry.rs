//! Exact planar geometry over `i64` lattice points and rational points.
//!
//! Polygons are stored as their extreme points only, counterclockwise,
//! starting from the vertex that is smallest in `(x, y)` order. A polygon of
//! dimension one is stored as its two endpoints and a point as itself.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use num_integer::Integer;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{rat_int, Rat};
use crate::staircase::{point_cmp, FiniteFn, PointSet};

pub trait Scalar: Clone + Ord + Num + fmt::Debug {}

impl Scalar for i64 {}
impl Scalar for Rat {}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

pub type LatticePoint = Point<i64>;
pub type RatPoint = Point<Rat>;

impl<T: Scalar> Point<T> {
    pub fn new(x: T, y: T) -> Self {
        Self { x, y }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.x.clone() + o.x.clone(), self.y.clone() + o.y.clone())
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(self.x.clone() - o.x.clone(), self.y.clone() - o.y.clone())
    }

    pub fn scale(&self, k: &T) -> Self {
        Self::new(self.x.clone() * k.clone(), self.y.clone() * k.clone())
    }
}

impl LatticePoint {
    pub fn to_rat(&self) -> RatPoint {
        Point::new(rat_int(self.x), rat_int(self.y))
    }
}

impl<T: fmt::Display> fmt::Display for Point<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

pub fn lp(x: i64, y: i64) -> LatticePoint {
    Point::new(x, y)
}

/// `(a - o) x (b - o)`; positive when `o, a, b` turn counterclockwise.
pub fn cross<T: Scalar>(o: &Point<T>, a: &Point<T>, b: &Point<T>) -> T {
    (a.x.clone() - o.x.clone()) * (b.y.clone() - o.y.clone())
        - (a.y.clone() - o.y.clone()) * (b.x.clone() - o.x.clone())
}

fn cross_vec<T: Scalar>(u: &Point<T>, v: &Point<T>) -> T {
    u.x.clone() * v.y.clone() - u.y.clone() * v.x.clone()
}

/// Convex polygon of dimension 0, 1 or 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polygon<T> {
    vertices: Vec<Point<T>>,
}

pub type LatticePolygon = Polygon<i64>;
pub type RatPolygon = Polygon<Rat>;

impl<T: Scalar> Polygon<T> {
    /// Convex hull by the monotone chain; collinear points are dropped.
    pub fn hull(points: impl IntoIterator<Item = Point<T>>) -> Result<Self> {
        let mut pts: Vec<Point<T>> = points.into_iter().collect();
        if pts.is_empty() {
            return Err(Error::EmptyInput("convex hull of no points"));
        }
        pts.sort();
        pts.dedup();
        if pts.len() <= 2 {
            return Ok(Self { vertices: pts });
        }
        let mut lower: Vec<Point<T>> = Vec::new();
        for p in &pts {
            while lower.len() >= 2
                && cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= T::zero()
            {
                lower.pop();
            }
            lower.push(p.clone());
        }
        let mut upper: Vec<Point<T>> = Vec::new();
        for p in pts.iter().rev() {
            while upper.len() >= 2
                && cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= T::zero()
            {
                upper.pop();
            }
            upper.push(p.clone());
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        Ok(Self { vertices: lower })
    }

    pub fn vertices(&self) -> &[Point<T>] {
        &self.vertices
    }

    pub fn dim(&self) -> u8 {
        match self.vertices.len() {
            1 => 0,
            2 => 1,
            _ => 2,
        }
    }

    /// Edge vectors in counterclockwise order. A segment has two opposite
    /// edges, a point none.
    pub fn edges(&self) -> Vec<Point<T>> {
        let k = self.vertices.len();
        if k == 1 {
            return Vec::new();
        }
        (0..k)
            .map(|i| self.vertices[(i + 1) % k].sub(&self.vertices[i]))
            .collect()
    }

    /// Twice the area (shoelace); zero for dimension below two.
    pub fn double_area(&self) -> T {
        let k = self.vertices.len();
        if k < 3 {
            return T::zero();
        }
        let o = &self.vertices[0];
        (1..k - 1).fold(T::zero(), |acc, i| {
            acc + cross(o, &self.vertices[i], &self.vertices[i + 1])
        })
    }

    pub fn translate(&self, v: &Point<T>) -> Self {
        Self {
            vertices: self.vertices.iter().map(|p| p.add(v)).collect(),
        }
    }

    pub fn scale(&self, k: &T) -> Result<Self> {
        Self::hull(self.vertices.iter().map(|p| p.scale(k)))
    }

    /// Closed containment test.
    pub fn contains(&self, p: &Point<T>) -> bool {
        match self.vertices.len() {
            1 => &self.vertices[0] == p,
            2 => {
                let (a, b) = (&self.vertices[0], &self.vertices[1]);
                cross(a, b, p).is_zero()
                    && p.x >= a.x.clone().min(b.x.clone())
                    && p.x <= a.x.clone().max(b.x.clone())
                    && p.y >= a.y.clone().min(b.y.clone())
                    && p.y <= a.y.clone().max(b.y.clone())
            }
            k => (0..k).all(|i| {
                cross(&self.vertices[i], &self.vertices[(i + 1) % k], p) >= T::zero()
            }),
        }
    }

    pub fn contains_polygon(&self, other: &Self) -> bool {
        other.vertices.iter().all(|v| self.contains(v))
    }

    /// Minkowski sum by merging the edge sequences in angular order.
    pub fn minkowski_sum(&self, other: &Self) -> Self {
        let (sa, ea) = self.angular_edges();
        let (sb, eb) = other.angular_edges();
        let mut pts = Vec::with_capacity(ea.len() + eb.len() + 1);
        let mut cur = sa.add(&sb);
        pts.push(cur.clone());
        let (mut i, mut j) = (0, 0);
        while i < ea.len() || j < eb.len() {
            let take_a = if i == ea.len() {
                false
            } else if j == eb.len() {
                true
            } else {
                angle_cmp(&ea[i], &eb[j]) != std::cmp::Ordering::Greater
            };
            let e = if take_a {
                i += 1;
                &ea[i - 1]
            } else {
                j += 1;
                &eb[j - 1]
            };
            cur = cur.add(e);
            pts.push(cur.clone());
        }
        Self::hull(pts).expect("nonempty")
    }

    /// Start vertex (smallest `(y, x)`) and edges sorted by polar angle in
    /// `[0, 2pi)`.
    fn angular_edges(&self) -> (Point<T>, Vec<Point<T>>) {
        let k = self.vertices.len();
        let start = (0..k)
            .min_by(|&a, &b| {
                let (p, q) = (&self.vertices[a], &self.vertices[b]);
                (&p.y, &p.x).cmp(&(&q.y, &q.x))
            })
            .expect("nonempty");
        let edges = self.edges();
        let ordered: Vec<Point<T>> = (0..edges.len())
            .map(|i| edges[(start + i) % edges.len()].clone())
            .collect();
        (self.vertices[start].clone(), ordered)
    }

    /// `2 vol(P, Q) = area(P + Q) - area(P) - area(Q)`; integral on lattice
    /// polygons.
    pub fn mixed_volume_2x(&self, other: &Self) -> T {
        let two = T::one() + T::one();
        (self.minkowski_sum(other).double_area() - self.double_area() - other.double_area()) / two
    }
}

fn half<T: Scalar>(v: &Point<T>) -> u8 {
    // 0 for angles in [0, pi), 1 for [pi, 2pi)
    if v.y > T::zero() || (v.y.is_zero() && v.x > T::zero()) {
        0
    } else {
        1
    }
}

fn angle_cmp<T: Scalar>(u: &Point<T>, v: &Point<T>) -> std::cmp::Ordering {
    half(u)
        .cmp(&half(v))
        .then_with(|| T::zero().cmp(&cross_vec(u, v)))
}

impl<T: fmt::Display> fmt::Display for Polygon<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

fn floor_div(a: i128, b: i128) -> i128 {
    Integer::div_floor(&a, &b)
}

fn ceil_div(a: i128, b: i128) -> i128 {
    -Integer::div_floor(&-a, &b)
}

impl LatticePolygon {
    pub fn from_pairs(pts: &[(i64, i64)]) -> Result<Self> {
        Self::hull(pts.iter().map(|&(x, y)| lp(x, y)))
    }

    pub fn to_rat(&self) -> RatPolygon {
        Polygon {
            vertices: self.vertices.iter().map(LatticePoint::to_rat).collect(),
        }
    }

    pub fn to_pairs(&self) -> Vec<(i64, i64)> {
        self.vertices.iter().map(|p| (p.x, p.y)).collect()
    }

    /// Lattice length of each edge.
    pub fn edge_gcds(&self) -> Vec<i64> {
        self.edges().iter().map(|e| e.x.gcd(&e.y)).collect()
    }

    /// Number of lattice points on the boundary, a segment counted as two
    /// opposite edges.
    pub fn boundary_count(&self) -> i64 {
        self.edge_gcds().iter().sum()
    }

    /// Lattice points in `(y, x)` order, by a row sweep.
    pub fn lattice_points(&self) -> Vec<LatticePoint> {
        let ys = self.vertices.iter().map(|p| p.y);
        let (ymin, ymax) = (ys.clone().min().unwrap(), ys.max().unwrap());
        let k = self.vertices.len();
        let mut out = Vec::new();
        for y in ymin..=ymax {
            // x-range of the polygon on this row as reduced fractions num/den
            let mut lo: Option<(i128, i128)> = None;
            let mut hi: Option<(i128, i128)> = None;
            let mut push = |num: i128, den: i128| {
                let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
                if lo.is_none_or(|(n, d)| num * d < n * den) {
                    lo = Some((num, den));
                }
                if hi.is_none_or(|(n, d)| num * d > n * den) {
                    hi = Some((num, den));
                }
            };
            for i in 0..k {
                let a = &self.vertices[i];
                let b = &self.vertices[(i + 1) % k];
                if a.y == y {
                    push(a.x as i128, 1);
                }
                let (ylo, yhi) = (a.y.min(b.y), a.y.max(b.y));
                if a.y != b.y && ylo < y && y < yhi {
                    let num = a.x as i128 * (b.y - a.y) as i128
                        + (y - a.y) as i128 * (b.x - a.x) as i128;
                    push(num, (b.y - a.y) as i128);
                }
            }
            if let (Some((ln, ld)), Some((hn, hd))) = (lo, hi) {
                for x in ceil_div(ln, ld)..=floor_div(hn, hd) {
                    out.push(lp(x as i64, y));
                }
            }
        }
        out
    }

    pub fn lattice_point_count(&self) -> usize {
        self.lattice_points().len()
    }

    pub fn point_set(&self) -> PointSet {
        PointSet::new(2, self.lattice_points().iter().map(|p| vec![p.x, p.y]).collect())
            .expect("arity 2")
    }

    /// Primitive edge directions with their lattice lengths, counterclockwise
    /// from the lowest vertex.
    fn primitive_edges(&self) -> (LatticePoint, Vec<(LatticePoint, i64)>) {
        let (start, edges) = self.angular_edges();
        let prim = edges
            .iter()
            .map(|e| {
                let g = e.x.gcd(&e.y);
                (lp(e.x / g, e.y / g), g)
            })
            .collect();
        (start, prim)
    }

    /// All unordered pairs `(Q1, Q2)` of lattice polygons with at least two
    /// lattice points each and `Q1 + Q2 = P`. Each edge of `P` is split
    /// between the summands; `Q1` is placed at `P`'s lowest vertex and `Q2`
    /// at the origin so the sum is exact.
    pub fn minkowski_decompositions(&self) -> Vec<(LatticePolygon, LatticePolygon)> {
        let (start, prim) = self.primitive_edges();
        let mut out = Vec::new();
        if prim.is_empty() {
            return out;
        }
        let mut parts = vec![0i64; prim.len()];
        loop {
            let (sx, sy) = parts
                .iter()
                .zip(&prim)
                .fold((0, 0), |(sx, sy), (a, (d, _))| (sx + a * d.x, sy + a * d.y));
            let complement: Vec<i64> = parts.iter().zip(&prim).map(|(a, (_, k))| k - a).collect();
            let trivial = parts.iter().all(|&a| a == 0) || complement.iter().all(|&a| a == 0);
            if sx == 0 && sy == 0 && !trivial && parts <= complement {
                let walk = |origin: LatticePoint, amounts: &[i64]| {
                    let mut cur = origin;
                    let mut pts = vec![cur.clone()];
                    for (a, (d, _)) in amounts.iter().zip(&prim) {
                        cur = cur.add(&d.scale(a));
                        pts.push(cur.clone());
                    }
                    Polygon::hull(pts).expect("nonempty")
                };
                out.push((walk(start.clone(), &parts), walk(lp(0, 0), &complement)));
            }
            // odometer over 0..=k_j
            let mut i = 0;
            loop {
                if i == parts.len() {
                    return out;
                }
                parts[i] += 1;
                if parts[i] <= prim[i].1 {
                    break;
                }
                parts[i] = 0;
                i += 1;
            }
        }
    }

    pub fn apply(&self, m: [[i64; 2]; 2], t: &LatticePoint) -> LatticePolygon {
        Polygon::hull(self.vertices.iter().map(|p| {
            lp(
                m[0][0] * p.x + m[0][1] * p.y + t.x,
                m[1][0] * p.x + m[1][1] * p.y + t.y,
            )
        }))
        .expect("nonempty")
    }

    /// Canonical representative of the orbit under `x -> Ux + t` with `U`
    /// integral of determinant `+-1` and `t` integral.
    ///
    /// For every vertex and both traversal directions there is exactly one
    /// `U` sending the outgoing edge to `(g, 0)`, the incoming neighbour into
    /// the upper half plane, and that neighbour's `x` into `[0, y)`. The
    /// candidate images are translated so their `(x, y)`-smallest vertex is
    /// the origin and the lexicographically smallest vertex list wins.
    /// Equivalent polygons produce the same candidate set.
    pub fn unimodular_canonical(&self) -> LatticePolygon {
        match self.dim() {
            0 => return Polygon::hull([lp(0, 0)]).unwrap(),
            1 => {
                let g = self.boundary_count() / 2;
                return Polygon::hull([lp(0, 0), lp(g, 0)]).unwrap();
            }
            _ => {}
        }
        let k = self.vertices.len();
        let mut best: Option<LatticePolygon> = None;
        for i in 0..k {
            for dir in [1, k - 1] {
                let v = &self.vertices[i];
                let u = self.vertices[(i + dir) % k].sub(v);
                let w = self.vertices[(i + k - dir) % k].sub(v);
                let m = normalizing_matrix(&u, &w);
                let img = Polygon::hull(self.vertices.iter().map(|p| {
                    let q = p.sub(v);
                    lp(m[0][0] * q.x + m[0][1] * q.y, m[1][0] * q.x + m[1][1] * q.y)
                }))
                .expect("nonempty");
                let origin = img.vertices[0].clone();
                let img = img.translate(&lp(-origin.x, -origin.y));
                if best.as_ref().is_none_or(|b| img.vertices < b.vertices) {
                    best = Some(img);
                }
            }
        }
        best.expect("dimension two has vertices")
    }

    pub fn is_equivalent(&self, other: &LatticePolygon) -> bool {
        self.unimodular_canonical() == other.unimodular_canonical()
    }
}

/// Integer matrix of determinant `+-1` with `M u = (gcd(u), 0)`, `M w` in the
/// open upper half plane and `0 <= (M w).x < (M w).y`.
fn normalizing_matrix(u: &LatticePoint, w: &LatticePoint) -> [[i64; 2]; 2] {
    let ext = u.x.extended_gcd(&u.y);
    let g = ext.gcd;
    let (mut p, mut q) = (ext.x, ext.y);
    if g < 0 {
        p = -p;
        q = -q;
    }
    let g = g.abs();
    let mut r0 = [p, q];
    let mut r1 = [-u.y / g, u.x / g];
    let mut wy = r1[0] * w.x + r1[1] * w.y;
    if wy < 0 {
        r1 = [-r1[0], -r1[1]];
        wy = -wy;
    }
    let wx = r0[0] * w.x + r0[1] * w.y;
    let shift = -Integer::div_floor(&wx, &wy);
    r0 = [r0[0] + shift * r1[0], r0[1] + shift * r1[1]];
    [r0, r1]
}

impl RatPolygon {
    pub fn from_rat_pairs(pts: &[(Rat, Rat)]) -> Result<Self> {
        Self::hull(pts.iter().map(|(x, y)| Point::new(x.clone(), y.clone())))
    }

    /// Lattice points of `d P` in `(y, x)` order, by an exact rational row
    /// sweep.
    pub fn lattice_points_dilate(&self, d: &Rat) -> Result<Vec<LatticePoint>> {
        if !d.is_positive() {
            return Err(Error::InvalidInput("dilation factor must be positive".into()));
        }
        let scaled = self.scale(d)?;
        Ok(scaled.lattice_points())
    }

    pub fn lattice_points(&self) -> Vec<LatticePoint> {
        let v = &self.vertices;
        let k = v.len();
        let ymin = v.iter().map(|p| p.y.clone()).min().unwrap().ceil();
        let ymax = v.iter().map(|p| p.y.clone()).max().unwrap().floor();
        let mut out = Vec::new();
        let mut y = ymin;
        while y <= ymax {
            let mut lo: Option<Rat> = None;
            let mut hi: Option<Rat> = None;
            let mut push = |x: Rat| {
                if lo.as_ref().is_none_or(|l| &x < l) {
                    lo = Some(x.clone());
                }
                if hi.as_ref().is_none_or(|h| &x > h) {
                    hi = Some(x);
                }
            };
            for i in 0..k {
                let a = &v[i];
                let b = &v[(i + 1) % k];
                if a.y == y {
                    push(a.x.clone());
                }
                let (ylo, yhi) = if a.y < b.y { (&a.y, &b.y) } else { (&b.y, &a.y) };
                if a.y != b.y && ylo < &y && &y < yhi {
                    push(&a.x + (&y - &a.y) * (&b.x - &a.x) / (&b.y - &a.y));
                }
            }
            if let (Some(l), Some(h)) = (lo, hi) {
                let yi = y.to_integer().to_i64().expect("coordinate fits in i64");
                let mut x = l.ceil();
                while x <= h {
                    out.push(lp(x.to_integer().to_i64().expect("coordinate fits in i64"), yi));
                    x += Rat::one();
                }
            }
            y += Rat::one();
        }
        out
    }

    /// Smallest and largest `y` on the polygon.
    pub fn y_range(&self) -> (Rat, Rat) {
        let ys = self.vertices.iter().map(|p| p.y.clone());
        (ys.clone().min().unwrap(), ys.max().unwrap())
    }

    /// Length of the horizontal chord at height `y` (zero outside).
    pub fn horizontal_chord(&self, y: &Rat) -> Rat {
        self.chord(y, true)
    }

    /// Length of the vertical chord at abscissa `x` (zero outside).
    pub fn vertical_chord(&self, x: &Rat) -> Rat {
        self.chord(x, false)
    }

    fn chord(&self, level: &Rat, horizontal: bool) -> Rat {
        let coord = |p: &RatPoint| if horizontal { (p.y.clone(), p.x.clone()) } else { (p.x.clone(), p.y.clone()) };
        let v: Vec<(Rat, Rat)> = self.vertices.iter().map(coord).collect();
        let k = v.len();
        let mut hits: Vec<Rat> = Vec::new();
        for i in 0..k {
            let (a, b) = (&v[i], &v[(i + 1) % k]);
            if &a.0 == level {
                hits.push(a.1.clone());
            }
            let (lo, hi) = if a.0 < b.0 { (&a.0, &b.0) } else { (&b.0, &a.0) };
            if a.0 != b.0 && lo < level && level < hi {
                hits.push(&a.1 + (level - &a.0) * (&b.1 - &a.1) / (&b.0 - &a.0));
            }
        }
        match (hits.iter().min(), hits.iter().max()) {
            (Some(l), Some(h)) => h - l,
            _ => Rat::zero(),
        }
    }
}

/// Newton polygon `hull(supp f)` of a planar function.
pub fn newton_polygon(f: &FiniteFn) -> Result<LatticePolygon> {
    if f.n() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: f.n(),
        });
    }
    if f.is_zero() {
        return Err(Error::ZeroFunction);
    }
    Polygon::hull(f.support().points().iter().map(|p| lp(p[0], p[1])))
}

pub fn polygon_of_points(a: &PointSet) -> Result<LatticePolygon> {
    Polygon::hull(a.points().iter().map(|p| lp(p[0], p[1])))
}

/// Smallest `l >= 0` with `A` inside a translate of `l P`, for a triangle
/// `P`. The affine map sending `P` to the standard triangle turns this into
/// `max(x + y) - min x - min y` over the image of `A`.
pub fn l_ratio(triangle: &RatPolygon, a: &[RatPoint]) -> Result<Rat> {
    if triangle.dim() != 2 || triangle.vertices().len() != 3 {
        return Err(Error::Degenerate("l_ratio needs a nondegenerate triangle"));
    }
    if a.is_empty() {
        return Err(Error::EmptyInput("l_ratio of an empty set"));
    }
    let v = triangle.vertices();
    let (p0, u, w) = (&v[0], v[1].sub(&v[0]), v[2].sub(&v[0]));
    let det = cross_vec(&u, &w);
    // barycentric-style coordinates (s, t) with p = p0 + s u + t w
    let coords: Vec<(Rat, Rat)> = a
        .iter()
        .map(|p| {
            let q = p.sub(p0);
            (cross_vec(&q, &w) / &det, cross_vec(&u, &q) / &det)
        })
        .collect();
    let max_sum = coords.iter().map(|(s, t)| s + t).max().unwrap();
    let min_s = coords.iter().map(|(s, _)| s.clone()).min().unwrap();
    let min_t = coords.iter().map(|(_, t)| t.clone()).min().unwrap();
    Ok(max_sum - min_s - min_t)
}

/// `l_{P,f}` for a planar function: [`l_ratio`] of its support.
pub fn l_ratio_fn(triangle: &RatPolygon, f: &FiniteFn) -> Result<Rat> {
    let pts: Vec<RatPoint> = f
        .support()
        .points()
        .iter()
        .map(|p| lp(p[0], p[1]).to_rat())
        .collect();
    l_ratio(triangle, &pts)
}

/// One representative per unimodular class of lattice polygons of dimension
/// one or two with doubled area at most `max_double_area`. Segments of
/// lattice length `1..=max(1, max_double_area)` are included.
///
/// Completeness: removing a vertex `v` of a polygon `P` leaves
/// `Q = hull(P ∩ Z^2 \ {v})` of smaller area with `P = hull(Q ∪ {v})`, so
/// every polygon is reached from a segment by repeatedly adding one lattice
/// point. The search runs level by level and canonicalizes each result.
pub fn enumerate_polygons(max_double_area: u64) -> Vec<LatticePolygon> {
    let m = max_double_area as i64;
    let mut out: Vec<LatticePolygon> = (1..=m.max(1))
        .map(|g| Polygon::hull([lp(0, 0), lp(g, 0)]).unwrap())
        .collect();
    let mut seen: HashSet<LatticePolygon> = HashSet::new();
    let mut frontier: Vec<LatticePolygon> = Vec::new();
    for g in 1..=m {
        for h in 1..=m / g {
            for x in 0..h {
                let t = Polygon::hull([lp(0, 0), lp(g, 0), lp(x, h)])
                    .unwrap()
                    .unimodular_canonical();
                if seen.insert(t.clone()) {
                    frontier.push(t);
                }
            }
        }
    }
    let mut queue: VecDeque<LatticePolygon> = frontier.into_iter().collect();
    while !queue.is_empty() {
        let batch: Vec<LatticePolygon> = queue.drain(..).collect();
        let grown: Vec<LatticePolygon> = batch
            .par_iter()
            .flat_map_iter(|q| one_point_extensions(q, m))
            .collect();
        let mut fresh: BTreeSet<LatticePolygon> = BTreeSet::new();
        for p in grown {
            if !seen.contains(&p) {
                fresh.insert(p);
            }
        }
        for p in fresh {
            seen.insert(p.clone());
            queue.push_back(p);
        }
    }
    let mut polys: Vec<LatticePolygon> = seen.into_iter().collect();
    polys.sort_by(|a, b| {
        (a.double_area(), a.vertices.len(), &a.vertices).cmp(&(
            b.double_area(),
            b.vertices.len(),
            &b.vertices,
        ))
    });
    out.extend(polys);
    out
}

/// Canonical forms of `hull(Q ∪ {v})` over lattice points `v` outside `Q`
/// with doubled area at most `m`.
fn one_point_extensions(q: &LatticePolygon, m: i64) -> Vec<LatticePolygon> {
    let budget = m - q.double_area();
    if budget <= 0 {
        return Vec::new();
    }
    let v = &q.vertices;
    let k = v.len();
    // Each visible edge adds |cross| to the doubled area, so every edge line
    // may be crossed by at most `budget`: -cross_i(p) <= budget.
    let lines: Vec<(i128, i128, i128)> = (0..k)
        .map(|i| {
            let (a, b) = (&v[i], &v[(i + 1) % k]);
            // cross_i(p) = (b-a) x (p-a) = A px + B py - C
            let (dx, dy) = ((b.x - a.x) as i128, (b.y - a.y) as i128);
            let (aa, bb) = (-dy, dx);
            let c = aa * a.x as i128 + bb * a.y as i128;
            (aa, bb, c)
        })
        .collect();
    // Region: A px + B py >= C - budget for all edges. Bound it by the
    // pairwise intersections of its boundary lines that satisfy all
    // constraints.
    let (mut xlo, mut xhi, mut ylo, mut yhi) = (i128::MAX, i128::MIN, i128::MAX, i128::MIN);
    for i in 0..k {
        for j in i + 1..k {
            let (a1, b1, c1) = lines[i];
            let (a2, b2, c2) = lines[j];
            let (c1, c2) = (c1 - budget as i128, c2 - budget as i128);
            let det = a1 * b2 - a2 * b1;
            if det == 0 {
                continue;
            }
            let xn = c1 * b2 - c2 * b1;
            let yn = a1 * c2 - a2 * c1;
            // feasibility of (xn/det, yn/det): A xn + B yn >= (C - budget) det
            let feasible = lines.iter().all(|&(a, b, c)| {
                let lhs = a * xn + b * yn;
                let rhs = (c - budget as i128) * det;
                if det > 0 {
                    lhs >= rhs
                } else {
                    lhs <= rhs
                }
            });
            if feasible {
                xlo = xlo.min(floor_div(xn, det));
                xhi = xhi.max(ceil_div(xn, det));
                ylo = ylo.min(floor_div(yn, det));
                yhi = yhi.max(ceil_div(yn, det));
            }
        }
    }
    let mut out = Vec::new();
    for x in xlo..=xhi {
        for y in ylo..=yhi {
            let p = lp(x as i64, y as i64);
            let added: i128 = lines
                .iter()
                .map(|&(a, b, c)| (c - a * x - b * y).max(0))
                .sum();
            if added > 0 && added <= budget as i128 {
                let mut pts = v.clone();
                pts.push(p);
                out.push(Polygon::hull(pts).unwrap().unimodular_canonical());
            }
        }
    }
    out
}

/// Point list of a lattice polygon in the JSON form `[[x,y],...]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolygonJson {
    pub vertices: Vec<[i64; 2]>,
}

impl From<&LatticePolygon> for PolygonJson {
    fn from(p: &LatticePolygon) -> Self {
        Self {
            vertices: p.vertices.iter().map(|v| [v.x, v.y]).collect(),
        }
    }
}

/// Sorts lattice points in `(y, x)` order.
pub fn sort_points(pts: &mut [LatticePoint]) {
    pts.sort_by(|a, b| point_cmp(&[a.x, a.y], &[b.x, b.y]));
}
