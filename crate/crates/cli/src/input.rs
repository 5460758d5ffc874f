//! Input parsing. Everything read from disk is turned into a canonical
//! string as well, which feeds the cache key.

use std::io::Read;
use std::path::Path;

use serde::Deserialize;
use staircase_core::geometry::{Point, RatPolygon};
use staircase_core::linalg::{format_rat, parse_rat, Rat};
use staircase_core::order::MonomialOrder;
use staircase_core::staircase::{FiniteFn, FiniteFnJson, PointSet, PointSetJson};

use crate::commands::CliError;

pub fn read_source(path: &Path) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::input(format!("cannot read stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))
}

pub fn point_set(text: &str) -> Result<PointSet, CliError> {
    let j: PointSetJson =
        serde_json::from_str(text).map_err(|e| CliError::input(format!("malformed point set: {e}")))?;
    PointSet::try_from(j).map_err(CliError::from)
}

pub fn finite_fn(text: &str) -> Result<FiniteFn, CliError> {
    let j: FiniteFnJson =
        serde_json::from_str(text).map_err(|e| CliError::input(format!("malformed function: {e}")))?;
    FiniteFn::from_json(&j).map_err(CliError::from)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Coord {
    Int(i64),
    Text(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PolygonJson {
    vertices: Vec<[Coord; 2]>,
}

fn coord(c: &Coord) -> Result<Rat, CliError> {
    match c {
        Coord::Int(i) => Ok(Rat::from_integer((*i).into())),
        Coord::Text(s) => parse_rat(s).map_err(CliError::from),
    }
}

pub fn polygon(text: &str) -> Result<RatPolygon, CliError> {
    let j: PolygonJson =
        serde_json::from_str(text).map_err(|e| CliError::input(format!("malformed polygon: {e}")))?;
    let pts = j
        .vertices
        .iter()
        .map(|[x, y]| Ok(Point::new(coord(x)?, coord(y)?)))
        .collect::<Result<Vec<_>, CliError>>()?;
    RatPolygon::hull(pts).map_err(CliError::from)
}

pub fn polygon_canonical(p: &RatPolygon) -> String {
    p.vertices()
        .iter()
        .map(|v| format!("{} {}", format_rat(&v.x), format_rat(&v.y)))
        .collect::<Vec<_>>()
        .join(";")
}

pub fn order(spec: Option<&str>, n: usize) -> Result<MonomialOrder, CliError> {
    match spec {
        None => Ok(MonomialOrder::deglex(n)),
        Some(s) => {
            let o: MonomialOrder = s.parse().map_err(CliError::from)?;
            if o.arity() != n {
                return Err(CliError::input(format!(
                    "order {s} has {} variables but the input has {n}",
                    o.arity()
                )));
            }
            Ok(o)
        }
    }
}

pub fn schedule(spec: Option<&str>) -> Result<Vec<Rat>, CliError> {
    let s = spec.unwrap_or("1,2,4,8");
    let mut out = Vec::new();
    for part in s.split(',').filter(|p| !p.trim().is_empty()) {
        let d = parse_rat(part).map_err(CliError::from)?;
        if d <= Rat::from_integer(0.into()) {
            return Err(CliError::input(format!("dilation factor {part} is not positive")));
        }
        out.push(d);
    }
    if out.is_empty() {
        return Err(CliError::input("empty d schedule".into()));
    }
    out.sort();
    out.dedup();
    Ok(out)
}

pub fn integer_schedule(spec: Option<&str>) -> Result<Vec<u64>, CliError> {
    schedule(spec)?
        .iter()
        .map(|d| {
            if d.is_integer() {
                d.to_integer()
                    .try_into()
                    .map_err(|_| CliError::input("dilation factor too large".into()))
            } else {
                Err(CliError::input(format!("{} is not an integer dilation", format_rat(d))))
            }
        })
        .collect()
}
