use serde::Deserialize;
use serde_json::{json, Value};
use torus_core::lab::{
    apply_endo, build_invariant_union, check_invariance, check_prop_irr_instance, sample_zero_set_inclusion,
    verify_invinv_conclusion, InvarianceVerdict, InvinvOutcome, PropIrrVerdict, DEFAULT_BUILD_BUDGET,
};
use torus_core::spectral::{dominant_complement, spectral_data_with_precision, SubspaceDescription};
use torus_core::torus::trig::coset_trig_poly;
use torus_core::wire::{
    parse_matrix, parse_point, parse_rational_vec, parse_trig_poly, point_strings, trig_poly_dto, CosetDto, Scalar,
    SubgroupDto, TrigTermDto, UnionDto,
};

use super::spectral::subspace_json;
use super::{parse, CliError, CmdResult, Options};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixUnion {
    matrix: Vec<Vec<Scalar>>,
    union: UnionDto,
}

const MATRIX_UNION_SCHEMA: &str =
    r#"{"matrix": [[int]], "union": {"n": int, "cosets": [{"subgroup": {"n", "dual"}, "translate": [rational]}]}}"#;

fn verdict_json(v: &InvarianceVerdict) -> Value {
    json!({
        "forward": v.forward,
        "forward_witness": v.forward_witness.as_ref().map(CosetDto::from),
        "backward": v.backward,
        "backward_witness": v.backward_witness.as_ref().map(CosetDto::from),
        "equal": v.equal,
    })
}

pub fn apply(input: &str) -> CmdResult {
    let req: MatrixUnion = parse(input, MATRIX_UNION_SCHEMA)?;
    let img = apply_endo(&parse_matrix(&req.matrix)?, &req.union.to_union()?)?;
    Ok(json!({ "union": UnionDto::from(&img) }))
}

pub fn check(input: &str) -> CmdResult {
    let req: MatrixUnion = parse(input, MATRIX_UNION_SCHEMA)?;
    Ok(verdict_json(&check_invariance(&parse_matrix(&req.matrix)?, &req.union.to_union()?)?))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BuildInput {
    matrix: Vec<Vec<Scalar>>,
    seeds: Vec<CosetDto>,
    #[serde(default = "default_budget")]
    budget: usize,
}

fn default_budget() -> usize {
    DEFAULT_BUILD_BUDGET
}

pub fn build(input: &str) -> CmdResult {
    let req: BuildInput = parse(
        input,
        r#"{"matrix": [[int]], "seeds": [{"subgroup", "translate"}], "budget": int (default 64)}"#,
    )?;
    let seeds = req.seeds.iter().map(CosetDto::to_coset).collect::<Result<Vec<_>, _>>()?;
    let b = build_invariant_union(&parse_matrix(&req.matrix)?, &seeds, req.budget)?;
    Ok(json!({ "union": UnionDto::from(&b.union), "verdict": verdict_json(&b.verdict) }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InvinvInput {
    matrix: Vec<Vec<Scalar>>,
    union: UnionDto,
    subgroup: SubgroupDto,
}

pub fn invinv(input: &str) -> CmdResult {
    let req: InvinvInput = parse(input, r#"{"matrix": [[int]], "union": {"n", "cosets"}, "subgroup": {"n", "dual"}}"#)?;
    let out = verify_invinv_conclusion(
        &parse_matrix(&req.matrix)?,
        &req.union.to_union()?,
        &req.subgroup.to_subgroup()?,
    )?;
    Ok(match &out {
        InvinvOutcome::Confirmed { subgroup, period, source } => json!({
            "confirmed": true,
            "subgroup": SubgroupDto::from(subgroup),
            "period": period,
            "source": source.to_string(),
        }),
        InvinvOutcome::Counterexample { subgroup, period, periodic, s_g } => json!({
            "confirmed": false,
            "subgroup": SubgroupDto::from(subgroup),
            "period": period,
            "periodic": periodic,
            "s_g": UnionDto::from(s_g),
        }),
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PropIrrInput {
    matrix: Vec<Vec<Scalar>>,
    /// Exact rational columns spanning `V`.
    #[serde(default)]
    subspace: Option<Vec<Vec<Scalar>>>,
    /// Use the dominant complement of `E` as `V`.
    #[serde(default)]
    dominant: bool,
    k: UnionDto,
    x: Vec<Scalar>,
}

const PROP_IRR_SCHEMA: &str = r#"{"matrix": [[int]], "subspace": [[rational]] (columns) or "dominant": true, "k": {"n", "cosets"}, "x": [rational]}"#;

pub fn prop_irr(input: &str, opts: &Options) -> CmdResult {
    let req: PropIrrInput = parse(input, PROP_IRR_SCHEMA)?;
    let e = parse_matrix(&req.matrix)?;
    let v = match (req.subspace, req.dominant) {
        (Some(cols), false) => SubspaceDescription {
            n: e.rows(),
            exact: true,
            basis: cols.iter().map(|c| parse_rational_vec(c)).collect::<Result<Vec<_>, _>>()?,
            g: None,
        },
        (None, true) => dominant_complement(&e, &spectral_data_with_precision(&e, opts.precision)?)?,
        _ => {
            return Err(CliError::Usage(format!(
                "give exactly one of subspace or dominant\nexpected input: {PROP_IRR_SCHEMA}"
            )))
        }
    };
    let r = check_prop_irr_instance(&e, &v, &req.k.to_union()?, &parse_point(&req.x)?)?;
    let verdict = match &r.verdict {
        PropIrrVerdict::PreconditionViolated(why) => json!({ "status": "precondition_violated", "reasons": why }),
        PropIrrVerdict::Holds { witness } => json!({ "status": "holds", "witness": point_strings(witness) }),
        PropIrrVerdict::Fails => json!({ "status": "fails" }),
    };
    Ok(json!({
        "verdict": verdict,
        "v": subspace_json(&v),
        "v_rat": SubgroupDto::from(&r.v_rat),
        "v_rat_exact": r.v_rat_exact,
        "note": r.note,
    }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ZerosInput {
    matrix: Vec<Vec<Scalar>>,
    #[serde(default)]
    poly: Option<Vec<TrigTermDto>>,
    #[serde(default)]
    coset: Option<CosetDto>,
    #[serde(default = "default_resolution")]
    resolution: usize,
    #[serde(default = "default_zero_tol")]
    tolerance: f64,
}

fn default_resolution() -> usize {
    128
}

fn default_zero_tol() -> f64 {
    1e-6
}

const ZEROS_SCHEMA: &str = r#"{"matrix": [[int]], "poly": [{"freq": [int], "re": rational, "im": rational, "phase": rational}] or "coset": {"subgroup", "translate"}, "resolution": int (default 128), "tolerance": decimal (default 1e-6)}"#;

pub fn sample_zeros(input: &str) -> CmdResult {
    let req: ZerosInput = parse(input, ZEROS_SCHEMA)?;
    let e = parse_matrix(&req.matrix)?;
    let h = match (req.poly, req.coset) {
        (Some(terms), None) => parse_trig_poly(&terms, Some(e.rows()))?,
        (None, Some(c)) => coset_trig_poly(&c.to_coset()?),
        _ => return Err(CliError::Usage(format!("give exactly one of poly or coset\nexpected input: {ZEROS_SCHEMA}"))),
    };
    let r = sample_zero_set_inclusion(&h, &e, req.resolution, req.tolerance)?;
    Ok(json!({
        "poly": trig_poly_dto(&h),
        "resolution": r.resolution,
        "tolerance": r.tolerance,
        "grid_points": r.grid_points,
        "candidates": r.candidates,
        "zero_samples": r.zero_samples,
        "violations": r.violations,
        "violation_rate": r.violation_rate,
        "sheets": r.sheets,
        "first_violation": r.first_violation,
    }))
}
