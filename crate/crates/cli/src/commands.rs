use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use staircase_core::atlas::{self, AtlasResult, Status};
use staircase_core::checks::{run_suite, SuiteConfig, Tamper};
use staircase_core::error::Error;
use staircase_core::geometry::{Point, RatPoint, RatPolygon};
use staircase_core::limit::{
    bracket_from, dilate_staircase, lex_sp_2d, seshadri_bracket, triangle_sp_exact, RhoVariant,
    SPBracket, TriangleSP,
};
use staircase_core::linalg::{format_rat, rat_int, Rat};
use staircase_core::order::{MonomialOrder, OrderKind};
use staircase_core::staircase::{compute_e, compute_e_lex, FiniteFnJson, PointSetJson, Staircase};

use crate::cache::{self, Cache, Entry};
use crate::input;
use crate::svg::{window_of, Figure, Layer};
use crate::{Format, Opts, Rho};

pub struct Output {
    pub stdout: Vec<u8>,
    pub svg: Option<String>,
    pub code: u8,
    pub warnings: Vec<String>,
}

impl Output {
    fn ok(stdout: String, svg: Option<String>) -> Self {
        Self {
            stdout: stdout.into_bytes(),
            svg,
            code: 0,
            warnings: Vec::new(),
        }
    }
}

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn input(message: String) -> Self {
        Self { code: 2, message }
    }

    fn violation(message: String) -> Self {
        Self { code: 1, message }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::Verification(_)) { 1 } else { 2 };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

fn format_name(f: Format) -> &'static str {
    match f {
        Format::Text => "text",
        Format::Json => "json",
        Format::Csv => "csv",
        Format::Svg => "svg",
    }
}

/// Serves from the cache when possible; stores clean exit-0 results.
fn cached(
    opts: &Opts,
    fields: &[&str],
    compute: impl FnOnce() -> Result<Output, CliError>,
) -> Result<Output, CliError> {
    let cache = Cache::from_env(opts.no_cache);
    let strict = if opts.strict { "strict" } else { "lenient" };
    let mut all: Vec<&str> = fields.to_vec();
    all.push(strict);
    let key = cache::key(&all);
    let want_svg = opts.svg.is_some();
    if let Some(hit) = cache.get(&key, want_svg) {
        let svg = match hit.svg {
            Some(bytes) => String::from_utf8(bytes).ok(),
            None => None,
        };
        if !want_svg || svg.is_some() {
            return Ok(Output {
                stdout: hit.stdout,
                svg,
                code: 0,
                warnings: Vec::new(),
            });
        }
    }
    let out = compute()?;
    if out.code == 0 && out.warnings.is_empty() {
        cache.put(
            &key,
            &Entry {
                stdout: out.stdout.clone(),
                svg: out.svg.as_ref().map(|s| s.clone().into_bytes()),
            },
        );
    }
    Ok(out)
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string(v).expect("serializable");
    s.push('\n');
    s
}

fn rat_pair(p: &RatPoint) -> [String; 2] {
    [format_rat(&p.x), format_rat(&p.y)]
}

fn rat_vertices(p: &RatPolygon) -> Vec<[String; 2]> {
    p.vertices().iter().map(rat_pair).collect()
}

fn corners_rat(p: &RatPolygon) -> String {
    p.vertices()
        .iter()
        .map(|v| format!("({},{})", format_rat(&v.x), format_rat(&v.y)))
        .collect::<Vec<_>>()
        .join(",")
}

fn upper(r: &Option<Rat>) -> String {
    r.as_ref().map_or_else(|| "inf".to_string(), format_rat)
}

/// SVG routed either to stdout (`--format svg`) or to the `--svg` file.
fn finish(opts: &Opts, format: Format, body: String, svg: impl FnOnce() -> String) -> Output {
    if format == Format::Svg {
        let s = svg();
        let file = opts.svg.as_ref().map(|_| s.clone());
        Output::ok(s, file)
    } else if opts.svg.is_some() {
        Output::ok(body, Some(svg()))
    } else {
        Output::ok(body, None)
    }
}

// ---------------------------------------------------------------- staircase

#[derive(Serialize)]
struct StaircaseJson {
    n: usize,
    order: String,
    size: usize,
    r: u64,
    s: u64,
    staircase: Vec<Vec<u32>>,
}

fn staircase_for(a: &staircase_core::staircase::PointSet, order: &MonomialOrder) -> Result<Staircase, Error> {
    match order.kind {
        OrderKind::Lex => compute_e_lex(a, order),
        OrderKind::Deglex => compute_e(a, order),
    }
}

pub fn staircase(path: &Path, opts: &Opts) -> Result<Output, CliError> {
    let text = input::read_source(path)?;
    let a = input::point_set(&text)?;
    if a.is_empty() {
        return Err(CliError::input("point set is empty".into()));
    }
    let order = input::order(opts.order.as_deref(), a.n())?;
    let format = opts.format.unwrap_or(Format::Json);
    if (format == Format::Svg || opts.svg.is_some()) && a.n() != 2 {
        return Err(CliError::input("SVG output needs planar points".into()));
    }
    let canon = serde_json::to_string(&PointSetJson::from(&a)).expect("serializable");
    let order_s = order.to_string();
    cached(opts, &["staircase", &canon, &order_s, format_name(format)], || {
        let stairs = staircase_for(&a, &order)?;
        // r and s are read off any graded order.
        let graded = if order.kind == OrderKind::Deglex {
            stairs.clone()
        } else {
            compute_e(&a, &MonomialOrder::deglex(a.n()))?
        };
        let r = graded.min_missing_degree();
        let s = graded.max_degree().expect("nonempty");
        let elems: Vec<Vec<u32>> = stairs.elements().iter().map(|e| e.0.clone()).collect();
        let body = match format {
            Format::Json | Format::Svg => json(&StaircaseJson {
                n: a.n(),
                order: order_s.clone(),
                size: elems.len(),
                r,
                s,
                staircase: elems.clone(),
            }),
            Format::Csv => {
                let mut out = (1..=a.n()).map(|i| format!("e{i}")).collect::<Vec<_>>().join(";");
                out.push('\n');
                for e in &elems {
                    let row: Vec<String> = e.iter().map(|x| x.to_string()).collect();
                    let _ = writeln!(out, "{}", row.join(";"));
                }
                out
            }
            Format::Text => {
                let mut out = format!("order {order_s}\n|E| = {}\nr = {r}\ns = {s}\n", elems.len());
                for e in stairs.elements() {
                    let _ = writeln!(out, "{e}");
                }
                out
            }
        };
        Ok(finish(opts, format, body, || staircase_svg(&a, &stairs)))
    })
}

fn staircase_svg(a: &staircase_core::staircase::PointSet, stairs: &Staircase) -> String {
    let pts: Vec<RatPoint> = a
        .points()
        .iter()
        .map(|p| Point::new(rat_int(p[0]), rat_int(p[1])))
        .collect();
    let es: Vec<RatPoint> = stairs
        .elements()
        .iter()
        .map(|e| Point::new(rat_int(e.0[0] as i64), rat_int(e.0[1] as i64)))
        .collect();
    let mut fig = Figure::new(2, window_of(pts.iter().chain(es.iter())));
    if let Ok(h) = RatPolygon::hull(pts.iter().cloned()) {
        fig.polygon(0, Layer::Body, &h);
    }
    for p in &pts {
        fig.point(0, Layer::Points, p, 3.0);
    }
    if let Ok(h) = RatPolygon::hull(es.iter().cloned()) {
        fig.polygon(1, Layer::Region, &h);
    }
    for e in &es {
        fig.point(1, Layer::Points, e, 3.0);
    }
    fig.label(0, "A");
    fig.label(1, &format!("E_A ({})", stairs.order));
    fig.render()
}

// ---------------------------------------------------------------- spoly

#[derive(Serialize)]
struct SpolyRow {
    d: String,
    points: usize,
    r: Option<u64>,
    s: Option<u64>,
    v_lo: Option<String>,
    v_hi: Option<String>,
    w_lo: Option<String>,
    w_hi: Option<String>,
    a_poly: Option<Vec<[String; 2]>>,
    b_poly: Option<Vec<[String; 2]>>,
}

#[derive(Serialize)]
struct ExactJson {
    shape: String,
    vertices: Vec<[String; 2]>,
    e: Option<[String; 2]>,
    v: Option<String>,
    w: Option<String>,
}

#[derive(Serialize)]
struct WitnessJson {
    status: Status,
    reason: Option<String>,
}

#[derive(Serialize)]
struct SpolyJson {
    order: String,
    polygon: Vec<[String; 2]>,
    double_area: String,
    rows: Vec<SpolyRow>,
    witness: Option<WitnessJson>,
    exact: Option<ExactJson>,
}

struct Dilate {
    d: Rat,
    elements: Vec<RatPoint>,
    bracket: Option<SPBracket>,
}

fn spoly_row(dl: &Dilate) -> SpolyRow {
    match &dl.bracket {
        None => SpolyRow {
            d: format_rat(&dl.d),
            points: 0,
            r: None,
            s: None,
            v_lo: None,
            v_hi: None,
            w_lo: None,
            w_hi: None,
            a_poly: None,
            b_poly: None,
        },
        Some(b) => SpolyRow {
            d: format_rat(&dl.d),
            points: b.report.point_count,
            r: b.report.r,
            s: b.report.s,
            v_lo: Some(format_rat(&b.v_lo)),
            v_hi: Some(upper(&b.v_hi)),
            w_lo: Some(format_rat(&b.w_lo)),
            w_hi: Some(upper(&b.w_hi)),
            a_poly: Some(rat_vertices(&b.a_poly)),
            b_poly: b.b_poly.as_ref().map(rat_vertices),
        },
    }
}

/// Checks the computed brackets against a certified exact body.
fn consistent(dl: &Dilate, exact: &TriangleSP) -> Result<(), String> {
    let Some(b) = &dl.bracket else { return Ok(()) };
    let d = format_rat(&dl.d);
    if !exact.polygon.contains_polygon(&b.a_poly) {
        return Err(format!("d = {d}: A_poly is not inside the exact body"));
    }
    let v_ok = b.v_lo <= exact.v && b.v_hi.as_ref().is_none_or(|h| exact.v <= *h);
    let w_ok = b.w_lo <= exact.w && b.w_hi.as_ref().is_none_or(|h| exact.w <= *h);
    if !v_ok || !w_ok {
        return Err(format!("d = {d}: exact v or w outside the bracket"));
    }
    Ok(())
}

pub fn spoly(path: &Path, witness: Option<&Path>, opts: &Opts) -> Result<Output, CliError> {
    let text = input::read_source(path)?;
    let p = input::polygon(&text)?;
    if p.dim() != 2 {
        return Err(CliError::input("polygon must have positive area".into()));
    }
    let order = input::order(opts.order.as_deref(), 2)?;
    let format = opts.format.unwrap_or(Format::Text);
    let order_s = order.to_string();
    let canon = input::polygon_canonical(&p);
    if order.kind == OrderKind::Lex {
        if order.priority != [0, 1] {
            return Err(CliError::input(format!("{order_s} is not supported by spoly; use lex:x1<x2")));
        }
        return cached(opts, &["spoly-lex", &canon, &order_s, format_name(format)], || {
            spoly_lex(&p, &order_s, format, opts)
        });
    }
    let schedule = input::schedule(opts.d_schedule.as_deref())?;
    let witness_text = witness.map(input::read_source).transpose()?;
    let witness_fn = witness_text.as_deref().map(input::finite_fn).transpose()?;
    if witness_fn.as_ref().is_some_and(|f| f.n() != 2) {
        return Err(CliError::input("witness must be a planar function".into()));
    }
    let schedule_s: Vec<String> = schedule.iter().map(format_rat).collect();
    let schedule_s = schedule_s.join(",");
    let witness_canon = witness_fn
        .as_ref()
        .map(|f| serde_json::to_string(&f.to_json()).expect("serializable"))
        .unwrap_or_default();
    cached(
        opts,
        &["spoly", &canon, &order_s, &schedule_s, &witness_canon, format_name(format)],
        || {
            let mut dilates = Vec::with_capacity(schedule.len());
            for d in &schedule {
                let found = dilate_staircase(&p, d)?;
                let (elements, bracket) = match &found {
                    None => (Vec::new(), None),
                    Some(f) => (
                        f.1.elements()
                            .iter()
                            .map(|e| Point::new(rat_int(e.0[0] as i64) / d, rat_int(e.0[1] as i64) / d))
                            .collect(),
                        Some(bracket_from(&p, d, f)?),
                    ),
                };
                dilates.push(Dilate {
                    d: d.clone(),
                    elements,
                    bracket,
                });
            }

            let mut warnings = Vec::new();
            let mut code = 0;
            let mut verdict_json = None;
            let mut exact = None;
            if let Some(f) = &witness_fn {
                let verdict = atlas::certify_irreducible(f)?;
                match verdict.status {
                    Status::Irreducible => {
                        let sp = triangle_sp_exact(&p, f, &verdict)?;
                        for dl in &dilates {
                            consistent(dl, &sp).map_err(CliError::violation)?;
                        }
                        exact = Some(sp);
                    }
                    Status::Reducible => {
                        return Err(CliError::input("witness is reducible".into()));
                    }
                    Status::Inconclusive => {
                        let why = verdict.reason.clone().unwrap_or_default();
                        warnings.push(format!("warning: witness not certified irreducible: {why}"));
                        if opts.strict {
                            code = 3;
                        }
                    }
                }
                verdict_json = Some(WitnessJson {
                    status: verdict.status,
                    reason: verdict.reason.clone(),
                });
            }

            let body = match format {
                Format::Json | Format::Svg => json(&SpolyJson {
                    order: order_s.clone(),
                    polygon: rat_vertices(&p),
                    double_area: format_rat(&p.double_area()),
                    rows: dilates.iter().map(spoly_row).collect(),
                    witness: verdict_json,
                    exact: exact.as_ref().map(|sp| ExactJson {
                        shape: format!("{:?}", sp.shape).to_lowercase(),
                        vertices: rat_vertices(&sp.polygon),
                        e: Some(rat_pair(&sp.e)),
                        v: Some(format_rat(&sp.v)),
                        w: Some(format_rat(&sp.w)),
                    }),
                }),
                Format::Csv | Format::Text => {
                    let mut out = String::from("d;points;r;s;v_lo;v_hi;w_lo;w_hi\n");
                    for dl in &dilates {
                        let row = spoly_row(dl);
                        let o = |x: Option<String>| x.unwrap_or_default();
                        let u = |x: Option<u64>| x.map(|v| v.to_string()).unwrap_or_default();
                        let _ = writeln!(
                            out,
                            "{};{};{};{};{};{};{};{}",
                            row.d,
                            row.points,
                            u(row.r),
                            u(row.s),
                            o(row.v_lo),
                            o(row.v_hi),
                            o(row.w_lo),
                            o(row.w_hi)
                        );
                    }
                    if let Some(sp) = &exact {
                        let _ = writeln!(
                            out,
                            "# exact {}: {}; v = {}; w = {}",
                            format!("{:?}", sp.shape).to_lowercase(),
                            corners_rat(&sp.polygon),
                            format_rat(&sp.v),
                            format_rat(&sp.w)
                        );
                    }
                    out
                }
            };
            let mut out = finish(opts, format, body, || spoly_svg(&dilates, exact.as_ref().map(|s| &s.polygon)));
            out.code = code;
            out.warnings = warnings;
            Ok(out)
        },
    )
}

fn spoly_lex(p: &RatPolygon, order_s: &str, format: Format, opts: &Opts) -> Result<Output, CliError> {
    let body_poly = lex_sp_2d(p)?;
    let body = match format {
        Format::Json | Format::Svg => json(&SpolyJson {
            order: order_s.to_string(),
            polygon: rat_vertices(p),
            double_area: format_rat(&p.double_area()),
            rows: Vec::new(),
            witness: None,
            exact: Some(ExactJson {
                shape: "lex".into(),
                vertices: rat_vertices(&body_poly),
                e: None,
                v: None,
                w: None,
            }),
        }),
        Format::Csv | Format::Text => format!("# exact lex: {}\n", corners_rat(&body_poly)),
    };
    Ok(finish(opts, format, body, || {
        let mut fig = Figure::new(1, window_of(body_poly.vertices().iter().chain(p.vertices())));
        fig.polygon(0, Layer::Region, p);
        fig.polygon(0, Layer::Exact, &body_poly);
        fig.label(0, order_s);
        fig.render()
    }))
}

fn spoly_svg(dilates: &[Dilate], exact: Option<&RatPolygon>) -> String {
    let mut all: Vec<RatPoint> = Vec::new();
    for dl in dilates {
        if let Some(b) = &dl.bracket {
            all.extend(b.a_poly.vertices().iter().cloned());
            if let Some(bp) = &b.b_poly {
                all.extend(bp.vertices().iter().cloned());
            }
        }
    }
    if let Some(e) = exact {
        all.extend(e.vertices().iter().cloned());
    }
    let mut fig = Figure::new(dilates.len(), window_of(&all));
    for (i, dl) in dilates.iter().enumerate() {
        fig.label(i, &format!("d = {}", format_rat(&dl.d)));
        if let Some(b) = &dl.bracket {
            if let Some(bp) = &b.b_poly {
                fig.polygon(i, Layer::Region, bp);
            }
            fig.polygon(i, Layer::Body, &b.a_poly);
        }
        if let Some(e) = exact {
            fig.polygon(i, Layer::Exact, e);
        }
        let radius = (3.0 / dl.elements.len().max(1) as f64).sqrt().clamp(0.8, 3.0);
        for e in &dl.elements {
            fig.point(i, Layer::Points, e, radius);
        }
    }
    fig.render()
}

// ---------------------------------------------------------------- seshadri

#[derive(Serialize)]
struct SeshadriRowJson {
    d: u64,
    points: usize,
    w_lo: Option<String>,
    w_hi: Option<String>,
}

#[derive(Serialize)]
struct SeshadriJson {
    weights: [u64; 3],
    rho: RhoVariant,
    lo: String,
    hi: String,
    rows: Vec<SeshadriRowJson>,
}

pub fn seshadri(w: [u64; 3], rho: Rho, opts: &Opts) -> Result<Output, CliError> {
    let schedule = input::integer_schedule(opts.d_schedule.as_deref())?;
    let variant = match rho {
        Rho::Forward => RhoVariant::Forward,
        Rho::Reverse => RhoVariant::Reverse,
    };
    let format = opts.format.unwrap_or(Format::Text);
    if format == Format::Svg || opts.svg.is_some() {
        return Err(CliError::input("seshadri has no figure".into()));
    }
    let canon = format!("{} {} {} {:?}", w[0], w[1], w[2], variant);
    let sched: Vec<String> = schedule.iter().map(u64::to_string).collect();
    let sched = sched.join(",");
    cached(opts, &["seshadri", &canon, "", &sched, format_name(format)], || {
        let iv = seshadri_bracket(w[0], w[1], w[2], &schedule, variant)?;
        let lo = format_rat(&iv.lo);
        let hi = upper(&iv.hi);
        let rows: Vec<SeshadriRowJson> = iv
            .rows
            .iter()
            .map(|r| SeshadriRowJson {
                d: r.d,
                points: r.point_count,
                w_lo: r.w_lo.as_ref().map(format_rat),
                w_hi: r.w_lo.as_ref().map(|_| upper(&r.w_hi)),
            })
            .collect();
        let body = match format {
            Format::Json | Format::Svg => json(&SeshadriJson {
                weights: w,
                rho: variant,
                lo: lo.clone(),
                hi: hi.clone(),
                rows,
            }),
            Format::Csv => {
                let mut out = String::from("d;points;w_lo;w_hi\n");
                for r in rows {
                    let _ = writeln!(
                        out,
                        "{};{};{};{}",
                        r.d,
                        r.points,
                        r.w_lo.unwrap_or_default(),
                        r.w_hi.unwrap_or_default()
                    );
                }
                out
            }
            Format::Text => format!("[{lo}, {hi}]\n"),
        };
        let mut out = Output::ok(body, None);
        if iv.hi.is_none() {
            out.warnings.push("warning: no upper bound yet; extend the d schedule".into());
            if opts.strict {
                out.code = 3;
            }
        }
        Ok(out)
    })
}

// ---------------------------------------------------------------- atlas

#[derive(Serialize)]
struct AtlasRowJson {
    corners: Vec<[i64; 2]>,
    sm: u64,
    two_vol: i64,
    space_dim: usize,
    witness: FiniteFnJson,
}

#[derive(Serialize)]
struct InconclusiveJson {
    corners: Vec<[i64; 2]>,
    sm: u64,
    two_vol: i64,
    space_dim: usize,
    reason: String,
}

#[derive(Serialize)]
struct AtlasJson {
    max_2vol: u64,
    classes_scanned: usize,
    rows: Vec<AtlasRowJson>,
    inconclusive: Vec<InconclusiveJson>,
}

fn corners(pairs: &[(i64, i64)]) -> String {
    pairs
        .iter()
        .map(|(x, y)| format!("({x},{y})"))
        .collect::<Vec<_>>()
        .join(",")
}

pub fn atlas_csv(res: &AtlasResult) -> String {
    let mut out = String::from("corners;sm;two_vol\n");
    for r in &res.rows {
        let _ = writeln!(out, "{};{};{}", corners(&r.polygon.to_pairs()), r.m, r.double_area);
    }
    for u in &res.inconclusive {
        let _ = writeln!(
            out,
            "# inconclusive: {};{};{}; {}",
            corners(&u.polygon.to_pairs()),
            u.m,
            u.double_area,
            u.reason
        );
    }
    out
}

pub fn atlas(opts: &Opts) -> Result<Output, CliError> {
    let max = opts.max_2vol.unwrap_or(15);
    let format = opts.format.unwrap_or(Format::Csv);
    let bound = max.to_string();
    cached(opts, &["atlas", &bound, "deglex:x1<x2", format_name(format)], || {
        let res = atlas::atlas_search(max)?;
        let body = match format {
            Format::Csv | Format::Text => atlas_csv(&res),
            Format::Json | Format::Svg => {
                let pairs = |p: &staircase_core::geometry::LatticePolygon| -> Vec<[i64; 2]> {
                    p.to_pairs().into_iter().map(|(x, y)| [x, y]).collect()
                };
                json(&AtlasJson {
                    max_2vol: max,
                    classes_scanned: res.classes_scanned,
                    rows: res
                        .rows
                        .iter()
                        .map(|r| AtlasRowJson {
                            corners: pairs(&r.polygon),
                            sm: r.m,
                            two_vol: r.double_area,
                            space_dim: r.space_dim,
                            witness: r.witness.to_json(),
                        })
                        .collect(),
                    inconclusive: res
                        .inconclusive
                        .iter()
                        .map(|u| InconclusiveJson {
                            corners: pairs(&u.polygon),
                            sm: u.m,
                            two_vol: u.double_area,
                            space_dim: u.space_dim,
                            reason: u.reason.clone(),
                        })
                        .collect(),
                })
            }
        };
        let mut out = finish(opts, format, body, || atlas_svg(&res));
        if !res.inconclusive.is_empty() {
            out.warnings.push(format!("warning: {} inconclusive classes", res.inconclusive.len()));
            if opts.strict {
                out.code = 3;
            }
        }
        Ok(out)
    })
}

fn atlas_svg(res: &AtlasResult) -> String {
    let polys: Vec<RatPolygon> = res.rows.iter().map(|r| r.polygon.to_rat()).collect();
    let mut fig = Figure::new(polys.len(), window_of(polys.iter().flat_map(|p| p.vertices())));
    for (i, (row, p)) in res.rows.iter().zip(&polys).enumerate() {
        fig.polygon(i, Layer::Body, p);
        for q in row.polygon.lattice_points() {
            fig.point(i, Layer::Points, &Point::new(rat_int(q.x), rat_int(q.y)), 2.0);
        }
        fig.label(i, &format!("sm = {}, 2vol = {}", row.m, row.double_area));
    }
    fig.render()
}

// ---------------------------------------------------------------- verify-pr

#[derive(Serialize)]
struct ClauseJson {
    name: &'static str,
    passed: bool,
    detail: String,
}

#[derive(Serialize)]
struct PrJson {
    r: u64,
    passed: bool,
    clauses: Vec<ClauseJson>,
}

pub fn verify_pr(max_r: u64, opts: &Opts) -> Result<Output, CliError> {
    if max_r == 0 {
        return Err(CliError::input("R must be positive".into()));
    }
    let format = opts.format.unwrap_or(Format::Text);
    if format == Format::Svg || opts.svg.is_some() {
        return Err(CliError::input("verify-pr has no figure".into()));
    }
    let mut reports = Vec::new();
    for r in 1..=max_r {
        reports.push(atlas::verify_pr(r)?);
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    let body = match format {
        Format::Json | Format::Svg => json(
            &reports
                .iter()
                .map(|rep| PrJson {
                    r: rep.r,
                    passed: rep.passed(),
                    clauses: rep
                        .clauses
                        .iter()
                        .map(|c| ClauseJson {
                            name: c.name,
                            passed: c.passed,
                            detail: c.detail.clone(),
                        })
                        .collect(),
                })
                .collect::<Vec<_>>(),
        ),
        Format::Csv => {
            let mut out = String::from("r;clause;passed;detail\n");
            for rep in &reports {
                for c in &rep.clauses {
                    let _ = writeln!(out, "{};{};{};{}", rep.r, c.name, c.passed, c.detail);
                }
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for rep in &reports {
                for c in &rep.clauses {
                    let mark = if c.passed { "pass" } else { "FAIL" };
                    let detail = if c.detail.is_empty() {
                        String::new()
                    } else {
                        format!(" ({})", c.detail)
                    };
                    let _ = writeln!(out, "P_{} {}: {mark}{detail}", rep.r, c.name);
                }
            }
            let _ = writeln!(out, "{} of {} triangles verified", reports.len() - failed, reports.len());
            out
        }
    };
    let mut out = Output::ok(body, None);
    if failed > 0 {
        out.code = 1;
    }
    Ok(out)
}

// ---------------------------------------------------------------- check

pub fn check(cases: usize, tamper: bool, opts: &Opts) -> Result<Output, CliError> {
    if cases == 0 {
        return Err(CliError::input("--cases must be positive".into()));
    }
    let format = opts.format.unwrap_or(Format::Text);
    if format == Format::Svg || opts.svg.is_some() {
        return Err(CliError::input("check has no figure".into()));
    }
    let report = run_suite(&SuiteConfig {
        seed: opts.seed.unwrap_or(0),
        cases,
        tamper: tamper.then_some(Tamper::DropStaircaseElement),
    });
    let body = match format {
        Format::Json | Format::Svg => json(&report),
        Format::Csv => {
            let mut out = String::from("check;cases;passed;counterexample\n");
            for c in &report.checks {
                let _ = writeln!(
                    out,
                    "{};{};{};{}",
                    c.name,
                    c.cases,
                    c.passed,
                    c.counterexample.clone().unwrap_or_default()
                );
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for c in &report.checks {
                match &c.counterexample {
                    None => {
                        let _ = writeln!(out, "pass {} ({} cases)", c.name, c.cases);
                    }
                    Some(ce) => {
                        let _ = writeln!(out, "FAIL {}: {ce}", c.name);
                    }
                }
            }
            let ok = report.checks.iter().filter(|c| c.passed).count();
            let _ = writeln!(out, "seed {}: {ok}/{} checks passed", report.seed, report.checks.len());
            out
        }
    };
    let mut out = Output::ok(body, None);
    if !report.passed() {
        out.code = 1;
    }
    Ok(out)
}
