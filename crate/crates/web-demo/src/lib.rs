//! Browser bindings: surface invariants, classification tables and the
//! root-of-unity weight sum, each taking plain strings and numbers from a form.

use std::fmt::Write as _;

use orbifold_vortex::cli::parse_bundle_spec;
use orbifold_vortex::{classification_report, OrbifoldSurface, ZetaSumResult};
use wasm_bindgen::prelude::*;

fn parse_surface(genus: u32, cone: &str) -> Result<OrbifoldSurface, String> {
    let cone = cone
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<u32>().map_err(|_| format!("malformed multiplicity '{t}'")))
        .collect::<Result<Vec<_>, _>>()?;
    OrbifoldSurface::new(genus, cone).map_err(|e| e.to_string())
}

pub fn surface_text(genus: u32, cone: &str) -> Result<String, String> {
    let s = parse_surface(genus, cone)?;
    let k = s.canonical_bundle();
    let mut out = String::new();
    let _ = writeln!(out, "surface     {s}");
    let _ = writeln!(out, "euler char  {}", s.euler_characteristic());
    let _ = writeln!(out, "K           {k}  c1 = {}", k.c1());
    match s.fundamental_line_bundle() {
        Ok(l0) => {
            let _ = writeln!(out, "L0          {l0}  c1 = {}", l0.c1());
        }
        Err(e) => {
            let _ = writeln!(out, "L0          none ({e})");
        }
    }
    Ok(out)
}

pub fn classification_text(
    genus: u32,
    cone: &str,
    det: &str,
    post_quotient: bool,
    json: bool,
) -> Result<String, String> {
    let s = parse_surface(genus, cone)?;
    let det = parse_bundle_spec(&s, det)?;
    let mut report = classification_report(&det).map_err(|e| e.to_string())?;
    if post_quotient {
        report = report.into_post_quotient();
    }
    Ok(if json { report.to_json() } else { report.to_table() })
}

pub fn zeta_text(a: i64, b: i64) -> Result<String, String> {
    let r = ZetaSumResult::evaluate(a, b).map_err(|e| e.to_string())?;
    Ok(format!(
        "sum_k zeta^(kb)/(1 - zeta^k) for a = {a}, b = {b}\nclosed form  {}\nnumeric      {:.12} {:+.3e} i\nerror        {:.3e}\n",
        r.closed_form,
        r.numeric.0,
        r.numeric.1,
        r.real_error().max(r.imaginary_error())
    ))
}

#[wasm_bindgen]
pub fn surface_invariants(genus: u32, cone: &str) -> Result<String, JsValue> {
    surface_text(genus, cone).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn classification(genus: u32, cone: &str, det: &str, post_quotient: bool, json: bool) -> Result<String, JsValue> {
    classification_text(genus, cone, det, post_quotient, json).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn zeta_sum(a: i32, b: i32) -> Result<String, JsValue> {
    zeta_text(a as i64, b as i64).map_err(|e| JsValue::from_str(&e))
}
