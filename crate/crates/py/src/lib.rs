//! Python bindings. Rationals cross the boundary as `"num/den"` strings;
//! inputs may also be plain integers.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use staircase_core::atlas;
use staircase_core::checks::{run_suite, SuiteConfig};
use staircase_core::error::Error;
use staircase_core::geometry::{self, Point};
use staircase_core::limit::{self, RhoVariant};
use staircase_core::linalg::{format_rat, parse_rat, rat_int, Rat};
use staircase_core::order::{Exponent, MonomialOrder};
use staircase_core::staircase as sc;

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn order_of(spec: &str) -> PyResult<MonomialOrder> {
    spec.parse().map_err(err)
}

#[derive(FromPyObject)]
enum Num {
    Int(i64),
    Str(String),
}

impl Num {
    fn to_rat(&self) -> PyResult<Rat> {
        match self {
            Num::Int(i) => Ok(rat_int(*i)),
            Num::Str(s) => parse_rat(s).map_err(err),
        }
    }
}

fn opt_rat(r: &Option<Rat>) -> Option<String> {
    r.as_ref().map(format_rat)
}

/// Finite set of integer points.
#[pyclass(module = "staircase_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PointSet {
    inner: sc::PointSet,
}

#[pymethods]
impl PointSet {
    #[new]
    #[pyo3(signature = (points, n=None))]
    fn new(points: Vec<Vec<i64>>, n: Option<usize>) -> PyResult<Self> {
        let n = n
            .or_else(|| points.first().map(Vec::len))
            .ok_or_else(|| PyValueError::new_err("empty point set needs an explicit n"))?;
        Ok(Self {
            inner: sc::PointSet::new_distinct(n, points).map_err(err)?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn points(&self) -> Vec<Vec<i64>> {
        self.inner.points().to_vec()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("PointSet(n={}, len={})", self.inner.n(), self.inner.len())
    }

    /// Standard monomials under `order`.
    #[pyo3(signature = (order="deglex:x1<x2"))]
    fn staircase(&self, order: &str) -> PyResult<Staircase> {
        let order = order_of(order)?;
        Ok(Staircase {
            inner: sc::compute_e(&self.inner, &order).map_err(err)?,
        })
    }

    fn r_value(&self) -> PyResult<u64> {
        sc::r_value(&self.inner).map_err(err)
    }

    fn s_value(&self) -> PyResult<u64> {
        sc::s_value(&self.inner).map_err(err)
    }

    /// Function on the set whose smallest monomial is `X^e`.
    #[pyo3(signature = (e, order="deglex:x1<x2"))]
    fn witness(&self, e: Vec<u32>, order: &str) -> PyResult<FiniteFn> {
        let order = order_of(order)?;
        Ok(FiniteFn {
            inner: sc::witness(&self.inner, &order, &Exponent(e)).map_err(err)?,
        })
    }

    fn to_json(&self) -> String {
        serde_json_string(&sc::PointSetJson::from(&self.inner))
    }
}

fn serde_json_string<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

/// Standard monomials `E_A`, ascending in their order.
#[pyclass(module = "staircase_py", frozen, skip_from_py_object)]
struct Staircase {
    inner: sc::Staircase,
}

#[pymethods]
impl Staircase {
    #[getter]
    fn order(&self) -> String {
        self.inner.order.to_string()
    }

    #[getter]
    fn elements(&self) -> Vec<Vec<u32>> {
        self.inner.elements().iter().map(|e| e.0.clone()).collect()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __contains__(&self, e: Vec<u32>) -> bool {
        self.inner.contains(&Exponent(e))
    }

    fn max_degree(&self) -> Option<u64> {
        self.inner.max_degree()
    }

    fn min_missing_degree(&self) -> u64 {
        self.inner.min_missing_degree()
    }

    fn __repr__(&self) -> String {
        format!("Staircase(order={}, len={})", self.inner.order, self.inner.len())
    }
}

/// Finitely supported rational function on `Z^n`.
#[pyclass(module = "staircase_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct FiniteFn {
    inner: sc::FiniteFn,
}

#[pymethods]
impl FiniteFn {
    /// `terms` is a list of `(point, coefficient)` pairs.
    #[new]
    #[pyo3(signature = (terms, n=None))]
    fn new(terms: Vec<(Vec<i64>, Num)>, n: Option<usize>) -> PyResult<Self> {
        let n = n
            .or_else(|| terms.first().map(|t| t.0.len()))
            .ok_or_else(|| PyValueError::new_err("zero function needs an explicit n"))?;
        let terms = terms
            .into_iter()
            .map(|(p, c)| Ok((p, c.to_rat()?)))
            .collect::<PyResult<Vec<_>>>()?;
        Ok(Self {
            inner: sc::FiniteFn::from_terms(n, terms).map_err(err)?,
        })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let j: sc::FiniteFnJson =
            serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(Self {
            inner: sc::FiniteFn::from_json(&j).map_err(err)?,
        })
    }

    fn to_json(&self) -> String {
        serde_json_string(&self.inner.to_json())
    }

    fn terms(&self) -> Vec<(Vec<i64>, String)> {
        self.inner
            .terms()
            .into_iter()
            .map(|(p, c)| (p.clone(), format_rat(c)))
            .collect()
    }

    fn __getitem__(&self, p: Vec<i64>) -> String {
        format_rat(&self.inner.get(&p))
    }

    #[pyo3(signature = (order="deglex:x1<x2"))]
    fn sm(&self, order: &str) -> PyResult<Vec<u32>> {
        Ok(sc::sm(&self.inner, &order_of(order)?).map_err(err)?.0)
    }

    fn vanishing_order(&self) -> PyResult<u64> {
        sc::vanishing_order(&self.inner).map_err(err)
    }

    fn convolve(&self, other: &FiniteFn) -> PyResult<FiniteFn> {
        Ok(FiniteFn {
            inner: sc::convolve(&self.inner, &other.inner).map_err(err)?,
        })
    }

    fn newton_polygon(&self) -> PyResult<LatticePolygon> {
        Ok(LatticePolygon {
            inner: geometry::newton_polygon(&self.inner).map_err(err)?,
        })
    }

    /// `"irreducible"`, `"reducible"` or `"inconclusive"`.
    fn certify_irreducible(&self) -> PyResult<String> {
        let v = atlas::certify_irreducible(&self.inner).map_err(err)?;
        Ok(format!("{:?}", v.status).to_lowercase())
    }

    fn __repr__(&self) -> String {
        format!("FiniteFn({})", self.to_json())
    }
}

/// Convex hull of integer points.
#[pyclass(module = "staircase_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct LatticePolygon {
    inner: geometry::LatticePolygon,
}

#[pymethods]
impl LatticePolygon {
    #[new]
    fn new(points: Vec<(i64, i64)>) -> PyResult<Self> {
        Ok(Self {
            inner: geometry::LatticePolygon::from_pairs(&points).map_err(err)?,
        })
    }

    #[getter]
    fn vertices(&self) -> Vec<(i64, i64)> {
        self.inner.to_pairs()
    }

    #[getter]
    fn dim(&self) -> u8 {
        self.inner.dim()
    }

    fn double_area(&self) -> i64 {
        self.inner.double_area()
    }

    fn boundary_count(&self) -> i64 {
        self.inner.boundary_count()
    }

    fn lattice_points(&self) -> Vec<(i64, i64)> {
        self.inner.lattice_points().iter().map(|p| (p.x, p.y)).collect()
    }

    fn minkowski_sum(&self, other: &LatticePolygon) -> LatticePolygon {
        LatticePolygon {
            inner: self.inner.minkowski_sum(&other.inner),
        }
    }

    /// `area(P+Q) - area(P) - area(Q)`.
    fn mixed_volume_2x(&self, other: &LatticePolygon) -> i64 {
        self.inner.mixed_volume_2x(&other.inner)
    }

    fn canonical(&self) -> LatticePolygon {
        LatticePolygon {
            inner: self.inner.unimodular_canonical(),
        }
    }

    fn is_equivalent(&self, other: &LatticePolygon) -> bool {
        self.inner.is_equivalent(&other.inner)
    }

    fn s_value(&self) -> PyResult<u64> {
        atlas::polygon_s_value(&self.inner).map_err(err)
    }

    /// `(f, m, space_dim)` for a function of maximal vanishing order.
    fn max_order_witness(&self) -> PyResult<(FiniteFn, u64, usize)> {
        let w = atlas::max_order_witness(&self.inner).map_err(err)?;
        Ok((FiniteFn { inner: w.f }, w.m, w.space_dim))
    }

    fn to_rational(&self) -> Polygon {
        Polygon {
            inner: self.inner.to_rat(),
        }
    }

    fn __eq__(&self, other: &LatticePolygon) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("LatticePolygon({:?})", self.inner.to_pairs())
    }
}

/// Convex hull of rational points.
#[pyclass(module = "staircase_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct Polygon {
    inner: geometry::RatPolygon,
}

#[pymethods]
impl Polygon {
    #[new]
    fn new(points: Vec<(Num, Num)>) -> PyResult<Self> {
        let pts = points
            .iter()
            .map(|(x, y)| Ok(Point::new(x.to_rat()?, y.to_rat()?)))
            .collect::<PyResult<Vec<_>>>()?;
        Ok(Self {
            inner: geometry::RatPolygon::hull(pts).map_err(err)?,
        })
    }

    #[getter]
    fn vertices(&self) -> Vec<(String, String)> {
        self.inner
            .vertices()
            .iter()
            .map(|v| (format_rat(&v.x), format_rat(&v.y)))
            .collect()
    }

    fn double_area(&self) -> String {
        format_rat(&self.inner.double_area())
    }

    /// Brackets for the limit body at dilation `d`; `None` for an empty
    /// dilate. Unbounded upper bounds are `None`.
    fn bracket<'py>(&self, py: Python<'py>, d: Num) -> PyResult<Option<Bound<'py, PyDict>>> {
        let d = d.to_rat()?;
        let Some(b) = limit::bracket(&self.inner, &d).map_err(err)? else {
            return Ok(None);
        };
        let out = PyDict::new(py);
        out.set_item("d", format_rat(&d))?;
        out.set_item("points", b.report.point_count)?;
        out.set_item("r", b.report.r)?;
        out.set_item("s", b.report.s)?;
        out.set_item("v_lo", format_rat(&b.v_lo))?;
        out.set_item("v_hi", opt_rat(&b.v_hi))?;
        out.set_item("w_lo", format_rat(&b.w_lo))?;
        out.set_item("w_hi", opt_rat(&b.w_hi))?;
        out.set_item("a_poly", Polygon { inner: b.a_poly })?;
        out.set_item("b_poly", b.b_poly.map(|inner| Polygon { inner }))?;
        Ok(Some(out))
    }

    /// Exact limit body of a triangle from a certified witness:
    /// `(vertices, v, w)`.
    fn exact_body(&self, f: &FiniteFn) -> PyResult<(Polygon, String, String)> {
        let verdict = atlas::certify_irreducible(&f.inner).map_err(err)?;
        let sp = limit::triangle_sp_exact(&self.inner, &f.inner, &verdict).map_err(err)?;
        Ok((Polygon { inner: sp.polygon }, format_rat(&sp.v), format_rat(&sp.w)))
    }

    /// Exact limit body under lex with `x1 < x2`.
    fn lex_body(&self) -> PyResult<Polygon> {
        Ok(Polygon {
            inner: limit::lex_sp_2d(&self.inner).map_err(err)?,
        })
    }

    fn contains_polygon(&self, other: &Polygon) -> bool {
        self.inner.contains_polygon(&other.inner)
    }

    fn __repr__(&self) -> String {
        format!("Polygon({:?})", self.vertices())
    }
}

type AtlasRow = (Vec<(i64, i64)>, u64, i64);

/// Rows `(corners, sm, two_vol)` of the large-irreducible atlas, plus the
/// number of inconclusive classes.
#[pyfunction]
#[pyo3(signature = (max_2vol=15))]
fn atlas_rows(max_2vol: u64) -> PyResult<(Vec<AtlasRow>, usize)> {
    let res = atlas::atlas_search(max_2vol).map_err(err)?;
    let rows = res
        .rows
        .iter()
        .map(|r| (r.polygon.to_pairs(), r.m, r.double_area))
        .collect();
    Ok((rows, res.inconclusive.len()))
}

/// `(lo, hi)` bracketing the Seshadri constant of `P(a, b, c)`; `hi` is
/// `None` until some dilate gives an upper bound.
#[pyfunction]
#[pyo3(signature = (a, b, c, schedule=vec![1, 2, 4, 8], rho="forward"))]
fn seshadri(a: u64, b: u64, c: u64, schedule: Vec<u64>, rho: &str) -> PyResult<(String, Option<String>)> {
    let variant = match rho {
        "forward" => RhoVariant::Forward,
        "reverse" => RhoVariant::Reverse,
        _ => return Err(PyValueError::new_err("rho must be 'forward' or 'reverse'")),
    };
    let iv = limit::seshadri_bracket(a, b, c, &schedule, variant).map_err(err)?;
    Ok((format_rat(&iv.lo), opt_rat(&iv.hi)))
}

#[pyfunction]
fn p_r(r: i64) -> LatticePolygon {
    LatticePolygon {
        inner: atlas::p_r(r),
    }
}

/// True when every clause of the `P_r` verification holds.
#[pyfunction]
fn verify_pr(r: u64) -> PyResult<bool> {
    Ok(atlas::verify_pr(r).map_err(err)?.passed())
}

/// Runs the seeded property suites; returns `(passed, failed_check_names)`.
#[pyfunction]
#[pyo3(signature = (seed=0, cases=24))]
fn run_checks(seed: u64, cases: usize) -> (bool, Vec<String>) {
    let rep = run_suite(&SuiteConfig {
        seed,
        cases,
        tamper: None,
    });
    let failed = rep
        .checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| c.name.to_string())
        .collect();
    (rep.passed(), failed)
}

#[pymodule]
fn staircase_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PointSet>()?;
    m.add_class::<Staircase>()?;
    m.add_class::<FiniteFn>()?;
    m.add_class::<LatticePolygon>()?;
    m.add_class::<Polygon>()?;
    m.add_function(wrap_pyfunction!(atlas_rows, m)?)?;
    m.add_function(wrap_pyfunction!(seshadri, m)?)?;
    m.add_function(wrap_pyfunction!(p_r, m)?)?;
    m.add_function(wrap_pyfunction!(verify_pr, m)?)?;
    m.add_function(wrap_pyfunction!(run_checks, m)?)?;
    Ok(())
}
