use serde::Deserialize;
use serde_json::{json, Value};
use torus_core::num::format_rational;
use torus_core::spectral::rational_part::{DEFAULT_HEIGHT, DEFAULT_TOLERANCE};
use torus_core::spectral::split::coefficient_strings;
use torus_core::spectral::{
    dominant_complement as split_complement, rational_part as numeric_rational_part,
    rational_part_of_dominant_complement, spectral_data_with_precision, SubspaceDescription,
};
use torus_core::wire::{parse_matrix, rational_strings, Scalar};

use super::{parse, parse_matrix_input, CliError, CmdResult, Options};

/// Exact bases as rational strings, numeric ones as decimals.
pub fn subspace_json(w: &SubspaceDescription) -> Value {
    let basis: Value = if w.exact {
        json!(w.basis.iter().map(|c| rational_strings(c)).collect::<Vec<_>>())
    } else {
        json!(w.basis_f64())
    };
    json!({
        "n": w.n,
        "dim": w.dim(),
        "exact": w.exact,
        "basis": basis,
        "g": w.g.as_ref().map(coefficient_strings),
    })
}

fn interval(iv: &(torus_core::Rational, torus_core::Rational)) -> Value {
    json!([format_rational(&iv.0), format_rational(&iv.1)])
}

pub fn data(input: &str, opts: &Options) -> CmdResult {
    let m = parse_matrix_input(input)?;
    let s = spectral_data_with_precision(&m, opts.precision)?;
    let eigenvalues: Vec<Value> = s
        .eigenvalues
        .iter()
        .map(|r| {
            json!({
                "re": format_rational(&r.re),
                "im": format_rational(&r.im),
                "radius": format_rational(&r.radius),
                "modulus": [format_rational(&r.modulus_lo), format_rational(&r.modulus_hi)],
                "approx": [r.approx().re, r.approx().im],
            })
        })
        .collect();
    let factors: Vec<Value> = s
        .factors
        .iter()
        .map(|f| json!({ "coeffs": coefficient_strings(&f.poly), "multiplicity": f.multiplicity, "tag": f.tag.to_string() }))
        .collect();
    Ok(json!({
        "char_poly": coefficient_strings(&s.char_poly),
        "sigma": s.sigma,
        "sigma_interval": interval(&s.sigma_interval),
        "sigma1": s.sigma1,
        "sigma1_interval": s.sigma1_interval.as_ref().map(interval),
        "eigenvalues": eigenvalues,
        "factors": factors,
        "g_below": coefficient_strings(&s.g_below()),
        "g_at": coefficient_strings(&s.g_at()),
        "g_mixed": coefficient_strings(&s.g_mixed()),
        "bits": s.roots.bits,
    }))
}

pub fn dominant_complement(input: &str, opts: &Options) -> CmdResult {
    let m = parse_matrix_input(input)?;
    let s = spectral_data_with_precision(&m, opts.precision)?;
    Ok(json!({
        "complement": subspace_json(&split_complement(&m, &s)?),
        "rational_part": subspace_json(&rational_part_of_dominant_complement(&m, &s)),
    }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RationalPartInput {
    #[serde(default)]
    basis: Option<Vec<Vec<f64>>>,
    #[serde(default)]
    matrix: Option<Vec<Vec<Scalar>>>,
    #[serde(default = "default_height")]
    height: u32,
    #[serde(default = "default_tolerance")]
    tolerance: f64,
}

fn default_height() -> u32 {
    DEFAULT_HEIGHT
}

fn default_tolerance() -> f64 {
    DEFAULT_TOLERANCE
}

const RATIONAL_PART_SCHEMA: &str =
    r#"{"basis": [[decimal]] (columns) or "matrix": [[int]], "height": int (default 25), "tolerance": decimal (default 1e-6)}"#;

pub fn rational_part(input: &str, opts: &Options) -> CmdResult {
    let req: RationalPartInput = parse(input, RATIONAL_PART_SCHEMA)?;
    match (req.basis, req.matrix) {
        (Some(b), None) => {
            let r = numeric_rational_part(&b, req.height, req.tolerance);
            Ok(json!({
                "subspace": subspace_json(&r.subspace),
                "height_used": r.height_used,
                "candidates": r.candidates,
            }))
        }
        (None, Some(m)) => {
            let m = parse_matrix(&m)?;
            let s = spectral_data_with_precision(&m, opts.precision)?;
            Ok(json!({ "subspace": subspace_json(&rational_part_of_dominant_complement(&m, &s)) }))
        }
        _ => Err(CliError::Usage(format!("give exactly one of basis or matrix\nexpected input: {RATIONAL_PART_SCHEMA}"))),
    }
}
