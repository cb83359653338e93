use serde::Deserialize;
use serde_json::json;
use torus_core::dynamics::endo::DEFAULT_TOLERANCE;
use torus_core::dynamics::orbit::DEFAULT_MAX_ITER;
use torus_core::dynamics::window::DEFAULT_RADIUS;
use torus_core::dynamics::{
    degree as endo_degree, fixed_points as endo_fixed_points, image_subgroup, orbit_subgroup, preimage_subgroup,
    subgroup_window_distance, validate_expanding_with,
};
use torus_core::num::{format_rational, to_f64};
use torus_core::spectral::split::coefficient_strings;
use torus_core::wire::{lattice_scalars, parse_matrix, point_strings, Scalar, SubgroupDto};

use super::subgroup::describe;
use super::{parse, parse_matrix_input, CmdResult, Options};

pub fn check(input: &str, opts: &Options) -> CmdResult {
    let m = parse_matrix_input(input)?;
    let e = validate_expanding_with(&m, opts.precision, DEFAULT_TOLERANCE)?;
    Ok(json!({
        "expanding": true,
        "degree": e.degree().to_string(),
        "margin": format_rational(e.margin()),
        "margin_f64": e.margin_f64(),
        "char_poly": coefficient_strings(e.char_poly()),
    }))
}

pub fn degree(input: &str) -> CmdResult {
    let m = parse_matrix_input(input)?;
    Ok(json!({ "degree": endo_degree(&m)?.to_string() }))
}

pub fn fixed_points(input: &str) -> CmdResult {
    let m = parse_matrix_input(input)?;
    let pts = endo_fixed_points(&m)?;
    let list: Vec<Vec<String>> = pts.iter().map(point_strings).collect();
    Ok(json!({ "count": list.len(), "points": list }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixSubgroup {
    matrix: Vec<Vec<Scalar>>,
    subgroup: SubgroupDto,
}

const MATRIX_SUBGROUP_SCHEMA: &str = r#"{"matrix": [[int]], "subgroup": {"n": int, "dual": [[int]]}}"#;

pub fn image(input: &str) -> CmdResult {
    let req: MatrixSubgroup = parse(input, MATRIX_SUBGROUP_SCHEMA)?;
    Ok(describe(&image_subgroup(&parse_matrix(&req.matrix)?, &req.subgroup.to_subgroup()?)?))
}

pub fn preimage(input: &str) -> CmdResult {
    let req: MatrixSubgroup = parse(input, MATRIX_SUBGROUP_SCHEMA)?;
    Ok(describe(&preimage_subgroup(&parse_matrix(&req.matrix)?, &req.subgroup.to_subgroup()?)?))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct OrbitInput {
    matrix: Vec<Vec<Scalar>>,
    subgroup: SubgroupDto,
    #[serde(default = "default_max_iter")]
    max_iter: usize,
    #[serde(default = "default_radius")]
    radius: u32,
}

fn default_max_iter() -> usize {
    DEFAULT_MAX_ITER
}

fn default_radius() -> u32 {
    DEFAULT_RADIUS
}

pub fn orbit(input: &str) -> CmdResult {
    let req: OrbitInput = parse(
        input,
        r#"{"matrix": [[int]], "subgroup": {"n", "dual"}, "max_iter": int (default 64), "radius": int (default 32)}"#,
    )?;
    let e = parse_matrix(&req.matrix)?;
    let r = orbit_subgroup(&e, &req.subgroup.to_subgroup()?, req.max_iter, req.radius)?;
    let period = r.period.as_ref().map(|p| {
        json!({
            "subgroup": SubgroupDto::from(&p.subgroup),
            "dim": p.subgroup.dim(),
            "period": p.period,
            "preperiod": p.preperiod,
            "source": p.source.to_string(),
        })
    });
    Ok(json!({
        "orbit": r.orbit.iter().map(SubgroupDto::from).collect::<Vec<_>>(),
        "period": period,
        "window_radius": r.window_radius,
        "window_limit": lattice_scalars(&r.window_limit),
        "approximate": r.approximate,
        "stabilization_index": r.stabilization_index,
        "containment_holds": r.containment_holds(),
    }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DistanceInput {
    a: SubgroupDto,
    b: SubgroupDto,
    #[serde(default = "default_radius")]
    max_radius: u32,
}

pub fn distance(input: &str) -> CmdResult {
    let req: DistanceInput = parse(input, r#"{"a": {"n", "dual"}, "b": {"n", "dual"}, "max_radius": int (default 32)}"#)?;
    let d = subgroup_window_distance(&req.a.to_subgroup()?, &req.b.to_subgroup()?, req.max_radius)?;
    Ok(json!({ "distance": format_rational(&d), "distance_f64": to_f64(&d) }))
}
