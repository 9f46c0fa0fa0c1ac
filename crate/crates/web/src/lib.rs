//! Browser bindings. Each export returns a JSON string or throws a message.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use qpos::generating::family_series;
use qpos::positivity::{
    circle_bound, for_each_circle_point, negative_indices, scan_series, t2_table, Parity,
    ScanReport,
};
use qpos::{Family, FamilyParams, SeriesKind};

/// Larger orders freeze the page for too long.
pub const MAX_ORDER: usize = 3000;
pub const MAX_CIRCLE: u64 = 400;

fn parse_family(s: &str) -> Result<Family, String> {
    match s {
        "C" | "c" => Ok(Family::C),
        "D" | "d" => Ok(Family::D),
        _ => Err(format!("unknown family {s:?}")),
    }
}

fn parse_parity(s: &str) -> Result<Parity, String> {
    match s {
        "even" => Ok(Parity::Even),
        "odd" => Ok(Parity::Odd),
        _ => Err(format!("unknown parity {s:?}")),
    }
}

fn checked(family: &str, k: u32, m: u32, order: usize) -> Result<(Family, FamilyParams), String> {
    if order > MAX_ORDER {
        return Err(format!("order is capped at {MAX_ORDER}"));
    }
    let p = FamilyParams::new(k, m).map_err(|e| e.to_string())?;
    Ok((parse_family(family)?, p))
}

fn to_json(v: &impl Serialize) -> Result<String, String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct Expansion {
    series: String,
    coefficients: Vec<String>,
    negative_indices: Vec<usize>,
}

pub fn expand_json(
    family: &str,
    k: u32,
    m: u32,
    order: usize,
    unsigned: bool,
) -> Result<String, String> {
    let (family, p) = checked(family, k, m, order)?;
    let s = family_series(SeriesKind::new(family, !unsigned), p, order);
    let tag = if unsigned { "unsigned " } else { "" };
    to_json(&Expansion {
        series: format!("{tag}{family:?}'({k},{m})"),
        coefficients: s.coeffs().iter().map(|c| c.to_string()).collect(),
        negative_indices: negative_indices(&s).negative_indices,
    })
}

#[derive(Serialize)]
struct Scan {
    series: String,
    #[serde(flatten)]
    report: ScanReport,
}

pub fn scan_json(family: &str, k: u32, m: u32, order: usize) -> Result<String, String> {
    let (family, p) = checked(family, k, m, order)?;
    let s = scan_series(family, p, order).map_err(|e| e.to_string())?;
    to_json(&Scan {
        series: format!("{family:?}'({k},{m})"),
        report: negative_indices(&s),
    })
}

#[derive(Serialize)]
struct Circle {
    n: u64,
    parity: Parity,
    radius_squared: u64,
    residue: u64,
    points: Vec<[u64; 2]>,
    count: u64,
    triangular_sum: u64,
    bound: f64,
}

pub fn lattice_json(n: u64, parity: &str) -> Result<String, String> {
    if n > MAX_CIRCLE {
        return Err(format!("N is capped at {MAX_CIRCLE}"));
    }
    let parity = parse_parity(parity)?;
    let (radius_squared, residue) = parity.circle(n);
    let mut points = Vec::new();
    for_each_circle_point(n, parity, |u, v| points.push([u, v]));
    let top = parity.top(n);
    let table = t2_table(top as usize);
    let triangular_sum = (0..=top / 2).map(|j| table[(top - 2 * j) as usize]).sum();
    to_json(&Circle {
        n,
        parity,
        radius_squared,
        residue,
        count: points.len() as u64,
        points,
        triangular_sum,
        bound: circle_bound(n),
    })
}

#[wasm_bindgen]
pub fn expand(
    family: &str,
    k: u32,
    m: u32,
    order: usize,
    unsigned: bool,
) -> Result<String, JsError> {
    expand_json(family, k, m, order, unsigned).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn scan(family: &str, k: u32, m: u32, order: usize) -> Result<String, JsError> {
    scan_json(family, k, m, order).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn lattice(n: u64, parity: &str) -> Result<String, JsError> {
    lattice_json(n, parity).map_err(|e| JsError::new(&e))
}
