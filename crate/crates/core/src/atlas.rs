//! Large irreducible functions on lattice polygons.
//!
//! For a polygon `P` the witness is a function supported on `P ∩ Z^2` whose
//! vanishing order at the all-ones point is the largest possible, namely the
//! top degree `m` of the graded-lex staircase. The decision procedure below
//! settles irreducibility from Minkowski decompositions of `P` whenever the
//! space of such functions is one-dimensional.

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{enumerate_polygons, lp, newton_polygon, LatticePolygon};
use crate::linalg::{kernel_basis, Rat, RatMatrix};
use crate::order::{Exponent, MonomialOrder};
use crate::staircase::{compute_e, moment_row, sm, vanishing_order, FiniteFn, PointSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub polygon: LatticePolygon,
    pub f: FiniteFn,
    /// Vanishing order of `f`, the top staircase degree of `P ∩ Z^2`.
    pub m: u64,
    /// Dimension of the space of functions on `P ∩ Z^2` vanishing to
    /// order at least `m`.
    pub space_dim: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Irreducible,
    Reducible,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    /// For reducible verdicts: `Q1 + Q2 = P` with `s(Q1) + s(Q2) = m`.
    pub decomposition: Option<(LatticePolygon, LatticePolygon)>,
    pub s_values: Option<(u64, u64)>,
    pub reason: Option<String>,
}

impl Verdict {
    fn irreducible() -> Self {
        Self {
            status: Status::Irreducible,
            decomposition: None,
            s_values: None,
            reason: None,
        }
    }

    fn inconclusive(reason: &str) -> Self {
        Self {
            status: Status::Inconclusive,
            decomposition: None,
            s_values: None,
            reason: Some(reason.to_string()),
        }
    }

    fn reducible(q1: LatticePolygon, q2: LatticePolygon, s1: u64, s2: u64) -> Self {
        Self {
            status: Status::Reducible,
            decomposition: Some((q1, q2)),
            s_values: Some((s1, s2)),
            reason: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtlasRow {
    pub polygon: LatticePolygon,
    pub m: u64,
    pub double_area: i64,
    pub witness: FiniteFn,
    pub space_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InconclusiveRow {
    pub polygon: LatticePolygon,
    pub m: u64,
    pub double_area: i64,
    pub space_dim: usize,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AtlasResult {
    pub rows: Vec<AtlasRow>,
    pub inconclusive: Vec<InconclusiveRow>,
    pub classes_scanned: usize,
}

fn deglex() -> MonomialOrder {
    MonomialOrder::deglex(2)
}

/// Top staircase degree of the lattice points of `q`.
pub fn polygon_s_value(q: &LatticePolygon) -> Result<u64> {
    let stairs = compute_e(&q.point_set(), &deglex())?;
    Ok(stairs.max_degree().expect("nonempty"))
}

/// Witness of maximal vanishing order on `P ∩ Z^2`.
///
/// The order-`m` space is the kernel of the pairings with the staircase
/// monomials of degree below `m`; every other monomial of smaller degree
/// reduces to those on `A`. When the space has dimension above one, the
/// chosen element has full Newton polygon whenever any element does. The
/// result is scaled so that its last value in
/// `(y, x)` point order is 1.
pub fn max_order_witness(p: &LatticePolygon) -> Result<Witness> {
    let a = p.point_set();
    if a.len() < 2 {
        return Err(Error::InvalidInput(
            "polygon needs at least two lattice points".into(),
        ));
    }
    let stairs = compute_e(&a, &deglex())?;
    let m = stairs.max_degree().expect("nonempty");
    let lower: Vec<&Exponent> = stairs.elements().iter().filter(|e| e.degree() < m).collect();
    let rows: Vec<Vec<Rat>> = lower.iter().map(|e| moment_row(&a, e)).collect();
    let kernel = kernel_basis(&RatMatrix::from_rows(rows)?);
    let space_dim = kernel.len();
    // A vertex of P survives in a generic element iff some basis vector is
    // nonzero there; then weights (1, t, t^2, ...) hit it for all but
    // finitely many t.
    let vertex_idx: Vec<usize> = p
        .vertices()
        .iter()
        .map(|v| a.points().iter().position(|q| q[0] == v.x && q[1] == v.y).expect("vertex is a lattice point"))
        .collect();
    let reachable = vertex_idx
        .iter()
        .all(|&i| kernel.iter().any(|k| !k[i].is_zero()));
    let mut t: i64 = 1;
    let f = loop {
        let mut v = vec![Rat::zero(); a.len()];
        let mut w = Rat::one();
        for k in &kernel {
            for (slot, x) in v.iter_mut().zip(k) {
                *slot += x * &w;
            }
            w *= Rat::from_integer(t.into());
        }
        if !reachable || vertex_idx.iter().all(|&i| !v[i].is_zero()) {
            break to_fn(&a, &v).normalize_last();
        }
        t += 1;
    };
    Ok(Witness {
        polygon: p.clone(),
        f,
        m,
        space_dim,
    })
}

fn to_fn(a: &PointSet, v: &[Rat]) -> FiniteFn {
    FiniteFn::from_terms(
        a.n(),
        a.points()
            .iter()
            .zip(v)
            .filter(|(_, c)| !c.is_zero())
            .map(|(p, c)| (p.clone(), c.clone())),
    )
    .expect("arity matches")
}

/// `m^2 > 2 vol(NP(f))`.
pub fn is_large(w: &Witness) -> Result<bool> {
    let np = newton_polygon(&w.f)?;
    Ok((w.m as i128) * (w.m as i128) > np.double_area() as i128)
}

/// Exact irreducibility decision for a maximal witness.
///
/// A factorization `f = g * h` splits `NP(f)` as `NP(g) + NP(h)` with orders
/// adding up to `m`, so some decomposition has `s(Q1) + s(Q2) >= m`.
/// Conversely, when the order-`m` space is one-dimensional, maximal witnesses
/// on `Q1` and `Q2` convolve to a nonzero element of it, hence to a multiple
/// of `f`.
///
/// With a larger space and `m^2 > 2 vol(P)`, an irreducible `f` would be
/// coprime to any non-proportional `g` in the space, and the relatively prime
/// inequality would give `m^2 <= 2 vol(P, NP(g)) <= 2 vol(P)`. So `f` factors
/// and some decomposition reaches `m`; it is reported as the certificate.
/// Only the remaining cases are inconclusive.
pub fn decide_irreducible(w: &Witness) -> Result<Verdict> {
    let p = &w.polygon;
    if p.dim() == 1 {
        let g = p.boundary_count() / 2;
        if g == 1 {
            return Ok(Verdict::irreducible());
        }
        let (a, b) = (&p.vertices()[0], &p.vertices()[1]);
        let step = lp((b.x - a.x) / g, (b.y - a.y) / g);
        let q1 = LatticePolygon::hull([a.clone(), a.add(&step)])?;
        let q2 = LatticePolygon::hull([lp(0, 0), step.scale(&(g - 1))])?;
        return Ok(Verdict::reducible(q1, q2, 1, g as u64 - 1));
    }
    if newton_polygon(&w.f)? != *p {
        return Ok(Verdict::inconclusive("Newton polygon of f is smaller than P"));
    }
    let decomps = p.minkowski_decompositions();
    if decomps.is_empty() {
        return Ok(Verdict::irreducible());
    }
    let large = (w.m as i128) * (w.m as i128) > p.double_area() as i128;
    if w.space_dim > 1 && !large {
        return Ok(Verdict::inconclusive(
            "decomposable polygon, order space of dimension above one, not large",
        ));
    }
    for (q1, q2) in decomps {
        let s1 = polygon_s_value(&q1)?;
        let s2 = polygon_s_value(&q2)?;
        if s1 + s2 >= w.m {
            let mut v = Verdict::reducible(q1, q2, s1, s2);
            if w.space_dim > 1 {
                v.reason = Some("large with an order space of dimension above one".into());
            }
            return Ok(v);
        }
    }
    if w.space_dim > 1 {
        return Ok(Verdict::inconclusive(
            "order space of dimension above one but no decomposition reaches m",
        ));
    }
    Ok(Verdict::irreducible())
}

/// Irreducibility verdict for an arbitrary planar function, via the
/// decision procedure on its Newton polygon. Functions below the maximal
/// order of their Newton polygon are outside its scope.
pub fn certify_irreducible(f: &FiniteFn) -> Result<Verdict> {
    let np = newton_polygon(f)?;
    if np.dim() == 0 {
        return Ok(Verdict::inconclusive("a single monomial is a unit"));
    }
    let best = max_order_witness(&np)?;
    let order = vanishing_order(f)?;
    if order < best.m {
        return Ok(Verdict::inconclusive(
            "f is not of maximal vanishing order on its Newton polygon",
        ));
    }
    decide_irreducible(&Witness {
        polygon: np,
        f: f.clone(),
        m: order,
        space_dim: best.space_dim,
    })
}

enum Outcome {
    Keep(AtlasRow),
    Unsure(InconclusiveRow),
    Drop,
}

fn classify(p: &LatticePolygon) -> Result<Outcome> {
    let w = max_order_witness(p)?;
    let dbl = p.double_area();
    // A smaller Newton polygon here means no order-m function spans P.
    if (w.m as i128) * (w.m as i128) <= dbl as i128 || newton_polygon(&w.f)? != *p {
        return Ok(Outcome::Drop);
    }
    let verdict = decide_irreducible(&w)?;
    Ok(match verdict.status {
        Status::Irreducible => Outcome::Keep(AtlasRow {
            polygon: p.clone(),
            m: w.m,
            double_area: dbl,
            witness: w.f,
            space_dim: w.space_dim,
        }),
        Status::Inconclusive => Outcome::Unsure(InconclusiveRow {
            polygon: p.clone(),
            m: w.m,
            double_area: dbl,
            space_dim: w.space_dim,
            reason: verdict.reason.unwrap_or_default(),
        }),
        _ => Outcome::Drop,
    })
}

fn row_key(p: &LatticePolygon, m: u64, dbl: i64) -> (i64, u64, Vec<(i64, i64)>) {
    (dbl, m, p.to_pairs())
}

/// Every unimodular class with doubled area at most `max_double_area` that
/// carries a large irreducible witness with full Newton polygon. Rows are
/// sorted by doubled area, then order, then canonical vertices.
pub fn atlas_search(max_double_area: u64) -> Result<AtlasResult> {
    let classes = enumerate_polygons(max_double_area);
    let outcomes: Vec<Result<Outcome>> = classes.par_iter().map(classify).collect();
    let mut result = AtlasResult {
        classes_scanned: classes.len(),
        ..Default::default()
    };
    for o in outcomes {
        match o? {
            Outcome::Keep(r) => result.rows.push(r),
            Outcome::Unsure(u) => result.inconclusive.push(u),
            Outcome::Drop => {}
        }
    }
    result
        .rows
        .sort_by_key(|a| row_key(&a.polygon, a.m, a.double_area));
    result
        .inconclusive
        .sort_by_key(|a| row_key(&a.polygon, a.m, a.double_area));
    Ok(result)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelPrimeCheck {
    pub lhs: u64,
    pub rhs: i64,
    pub holds: bool,
}

/// Evaluates `|sm(f1)| |sm(f2)| <= 2 vol(NP(f1), NP(f2))`. Coprimality is the
/// caller's responsibility.
pub fn check_rel_prime_inequality(f1: &FiniteFn, f2: &FiniteFn) -> Result<RelPrimeCheck> {
    let order = deglex();
    let lhs = sm(f1, &order)?.degree() * sm(f2, &order)?.degree();
    let rhs = newton_polygon(f1)?.mixed_volume_2x(&newton_polygon(f2)?);
    Ok(RelPrimeCheck {
        lhs,
        rhs,
        holds: (lhs as i128) <= rhs as i128,
    })
}

/// `hull{(0,0), (r,0), (-1,r+2)}`.
pub fn p_r(r: i64) -> LatticePolygon {
    LatticePolygon::from_pairs(&[(0, 0), (r, 0), (-1, r + 2)]).expect("nonempty")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Clause {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrReport {
    pub r: u64,
    pub clauses: Vec<Clause>,
}

impl PrReport {
    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|c| c.passed)
    }

    /// The report, or a verification error naming the first failed clause.
    pub fn into_result(self) -> Result<Self> {
        match self.clauses.iter().find(|c| !c.passed) {
            Some(c) => Err(Error::Verification(format!(
                "P_{}: {} ({})",
                self.r, c.name, c.detail
            ))),
            None => Ok(self),
        }
    }
}

/// Checks the triangle family `P_r`: staircase shape, witness order and
/// support, largeness, irreducibility, and equality in the relatively prime
/// inequality against `P_{r+1}`.
pub fn verify_pr(r: u64) -> Result<PrReport> {
    if r == 0 {
        return Err(Error::InvalidInput("r must be positive".into()));
    }
    let ri = r as i64;
    let p = p_r(ri);
    let mut clauses = Vec::new();
    let mut push = |name, passed, detail: String| clauses.push(Clause { name, passed, detail });

    let stairs = compute_e(&p.point_set(), &deglex())?;
    let mut expected: Vec<Exponent> = (0..=r as u32)
        .flat_map(|i| (0..=r as u32 - i).map(move |j| Exponent(vec![i, j])))
        .collect();
    expected.push(Exponent(vec![r as u32 + 1, 0]));
    deglex().sort(&mut expected);
    push(
        "staircase",
        stairs.elements() == expected.as_slice(),
        format!("|E| = {}", stairs.len()),
    );

    let w = max_order_witness(&p)?;
    push("order", w.m == r + 1, format!("m = {}", w.m));
    let corners = [vec![-1, ri + 2], vec![ri, 0], vec![0, 0]];
    let in_support = corners.iter().all(|c| !w.f.get(c).is_zero());
    push("corners in support", in_support, String::new());

    let dbl = p.double_area();
    push(
        "large",
        dbl == ri * (ri + 2) && is_large(&w)?,
        format!("m^2 = {}, 2vol = {}", w.m * w.m, dbl),
    );

    let verdict = decide_irreducible(&w)?;
    push(
        "irreducible",
        verdict.status == Status::Irreducible,
        format!("{:?}", verdict.status),
    );

    let next = max_order_witness(&p_r(ri + 1))?;
    let mixed = p.mixed_volume_2x(&p_r(ri + 1));
    let target = (ri + 2) * (ri + 1);
    let check = check_rel_prime_inequality(&w.f, &next.f)?;
    push(
        "equality with P_(r+1)",
        (w.m * next.m) as i64 == target && mixed == target && check.holds && check.lhs as i64 == check.rhs,
        format!("m_r m_(r+1) = {}, 2vol = {}", w.m * next.m, mixed),
    );
    Ok(PrReport { r, clauses })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat_int;

    fn poly(pts: &[(i64, i64)]) -> LatticePolygon {
        LatticePolygon::from_pairs(pts).unwrap()
    }

    #[test]
    fn unit_segment_witness() {
        let w = max_order_witness(&poly(&[(0, 0), (1, 0)])).unwrap();
        assert_eq!(w.m, 1);
        assert_eq!(w.space_dim, 1);
        assert_eq!(w.f, FiniteFn::from_int_terms(&[((0, 0), -1), ((1, 0), 1)]));
        assert!(is_large(&w).unwrap());
        assert_eq!(decide_irreducible(&w).unwrap().status, Status::Irreducible);
    }

    #[test]
    fn example_triangle_witness() {
        let p = poly(&[(0, 0), (4, 2), (2, 3)]);
        let w = max_order_witness(&p).unwrap();
        assert_eq!(w.m, 3);
        assert_eq!(w.space_dim, 1);
        assert_eq!(w.f.get(&[2, 3]), rat_int(1));
        assert_eq!(newton_polygon(&w.f).unwrap(), p);
        assert!(is_large(&w).unwrap());
        assert_eq!(decide_irreducible(&w).unwrap().status, Status::Irreducible);
    }

    #[test]
    fn long_segment_reducible() {
        let w = max_order_witness(&poly(&[(0, 0), (2, 0)])).unwrap();
        assert_eq!(w.m, 2);
        let v = decide_irreducible(&w).unwrap();
        assert_eq!(v.status, Status::Reducible);
        assert_eq!(v.s_values, Some((1, 1)));
    }

    #[test]
    fn largeness() {
        let w = max_order_witness(&poly(&[(0, 0), (2, 0), (0, 2)])).unwrap();
        assert_eq!(w.m, 2);
        assert!(!is_large(&w).unwrap());
        // boxes are large but reducible
        let w = max_order_witness(&poly(&[(0, 0), (2, 0), (2, 2), (0, 2)])).unwrap();
        assert_eq!(w.m, 4);
        assert!(is_large(&w).unwrap());
        assert_eq!(decide_irreducible(&w).unwrap().status, Status::Reducible);
    }

    #[test]
    fn unit_square_reducible() {
        let mut w = max_order_witness(&poly(&[(0, 0), (1, 0), (1, 1), (0, 1)])).unwrap();
        assert_eq!(w.m, 2);
        assert_eq!(w.space_dim, 1);
        w.polygon = newton_polygon(&w.f).unwrap();
        let v = decide_irreducible(&w).unwrap();
        assert_eq!(v.status, Status::Reducible);
    }

    #[test]
    fn atlas_small_bounds() {
        let three = atlas_search(3).unwrap();
        let got: Vec<(u64, i64)> = three.rows.iter().map(|r| (r.m, r.double_area)).collect();
        assert_eq!(got, vec![(1, 0), (2, 3)]);
        assert!(three.inconclusive.is_empty());
        let eight = atlas_search(8).unwrap();
        assert_eq!(eight.rows.len(), 4);
        let targets = [
            poly(&[(0, 0), (1, 0), (1, 1), (-4, 3)]).unimodular_canonical(),
            poly(&[(0, 0), (1, 0), (3, 8)]).unimodular_canonical(),
        ];
        for t in &targets {
            assert!(eight.rows.iter().any(|r| &r.polygon == t && r.m == 3));
        }
    }

    #[test]
    fn pr_small() {
        for r in 1..=3 {
            let rep = verify_pr(r).unwrap();
            assert!(rep.passed(), "{rep:?}");
        }
        assert!(verify_pr(0).is_err());
    }

    #[test]
    fn certify_examples() {
        let fig = max_order_witness(&poly(&[(0, 0), (4, 2), (2, 3)])).unwrap().f;
        assert_eq!(certify_irreducible(&fig.scale(&rat_int(-3))).unwrap().status, Status::Irreducible);
        let sq = FiniteFn::from_int_terms(&[((0, 0), 1), ((1, 0), -2), ((2, 0), 1)]);
        assert_eq!(certify_irreducible(&sq).unwrap().status, Status::Reducible);
        let low = FiniteFn::from_int_terms(&[((0, 0), 1), ((2, 0), -1)]);
        assert_eq!(certify_irreducible(&low).unwrap().status, Status::Inconclusive);
    }

    #[test]
    fn rel_prime_orthogonal_segments() {
        let f1 = FiniteFn::from_int_terms(&[((0, 0), -1), ((1, 0), 1)]);
        let f2 = FiniteFn::from_int_terms(&[((0, 0), -1), ((0, 1), 1)]);
        let c = check_rel_prime_inequality(&f1, &f2).unwrap();
        assert_eq!((c.lhs, c.rhs, c.holds), (1, 1, true));
    }
}
