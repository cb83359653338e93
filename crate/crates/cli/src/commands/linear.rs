use serde::Deserialize;
use serde_json::json;
use torus_core::linalg::{char_poly, factor_over_integers, hermite_normal_form, smith_normal_form, IntPolynomial};
use torus_core::spectral::split::coefficient_strings;
use torus_core::wire::{int_strings, matrix_strings, parse_int_vec, parse_matrix, Scalar};

use super::{parse, parse_matrix_input, CmdResult};

pub fn snf(input: &str) -> CmdResult {
    let m = parse_matrix_input(input)?;
    let s = smith_normal_form(&m);
    Ok(json!({
        "u": matrix_strings(&s.u),
        "v": matrix_strings(&s.v),
        "d": matrix_strings(&s.d),
        "invariant_factors": int_strings(&s.invariant_factors),
        "elementary_divisors": int_strings(&s.elementary_divisors),
        "rank": s.rank(),
    }))
}

pub fn hnf(input: &str) -> CmdResult {
    let m = parse_matrix_input(input)?;
    let (h, u) = hermite_normal_form(&m);
    Ok(json!({ "h": matrix_strings(&h), "u": matrix_strings(&u) }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FactorInput {
    #[serde(default)]
    matrix: Option<Vec<Vec<Scalar>>>,
    /// Coefficients in ascending degree.
    #[serde(default)]
    poly: Option<Vec<Scalar>>,
}

const FACTOR_SCHEMA: &str = r#"{"matrix": [[int]]} or {"poly": [int, ...] (ascending degree)}"#;

pub fn factor(input: &str) -> CmdResult {
    let req: FactorInput = parse(input, FACTOR_SCHEMA)?;
    let p = match (req.matrix, req.poly) {
        (Some(m), None) => char_poly(&parse_matrix(&m)?)?,
        (None, Some(c)) => IntPolynomial::new(parse_int_vec(&c)?),
        _ => return Err(super::CliError::Usage(format!("give exactly one of matrix or poly\nexpected input: {FACTOR_SCHEMA}"))),
    };
    let f = factor_over_integers(&p)?;
    let factors: Vec<_> = f
        .factors
        .iter()
        .map(|(q, m)| json!({ "coeffs": coefficient_strings(q), "multiplicity": m }))
        .collect();
    Ok(json!({
        "poly": coefficient_strings(&p),
        "unit": f.unit.to_string(),
        "factors": factors,
    }))
}
