use serde::Deserialize;
use serde_json::{json, Value};
use torus_core::asymptotic::limit::{DEFAULT_CLUSTER_TOL, DEFAULT_ITERS};
use torus_core::asymptotic::{
    asymptotic_distance, limit_direction as directions, limit_directions_with_subgroups, tangent_vector,
    verify_flat_bound, ManifoldPatch, Sampling, DEFAULT_THRESHOLD,
};
use torus_core::wire::{parse_matrix, parse_rational_vec, Scalar, SubgroupDto};
use torus_core::Rational;

use super::{parse, CmdResult};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PatchDto {
    #[serde(default = "default_params")]
    params: Vec<String>,
    components: Vec<String>,
    domain: Vec<[Scalar; 2]>,
}

fn default_params() -> Vec<String> {
    vec!["t".into()]
}

impl PatchDto {
    fn build(&self) -> Result<ManifoldPatch, torus_core::Error> {
        let names: Vec<&str> = self.params.iter().map(String::as_str).collect();
        let comps: Vec<&str> = self.components.iter().map(String::as_str).collect();
        let domain = self
            .domain
            .iter()
            .map(|[a, b]| Ok((a.to_rational()?, b.to_rational()?)))
            .collect::<Result<Vec<_>, torus_core::Error>>()?;
        ManifoldPatch::parse(&names, &comps, domain)
    }
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct SamplingDto {
    segment_points: Option<usize>,
    patch_points: Option<usize>,
    refine_iters: Option<usize>,
}

impl SamplingDto {
    fn build(&self) -> Sampling {
        let d = Sampling::default();
        Sampling {
            segment_points: self.segment_points.unwrap_or(d.segment_points),
            patch_points: self.patch_points.unwrap_or(d.patch_points),
            refine_iters: self.refine_iters.unwrap_or(d.refine_iters),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FlatInput {
    matrix: Vec<Vec<Scalar>>,
    patch: PatchDto,
    t0: Vec<Scalar>,
    /// Tangent vector in `R^n`; defaults to the Jacobian applied to `direction`.
    #[serde(default)]
    v: Option<Vec<f64>>,
    /// Parameter-space direction; defaults to the first parameter axis.
    #[serde(default)]
    direction: Option<Vec<f64>>,
    #[serde(default)]
    j: Option<usize>,
    #[serde(default)]
    j_max: Option<usize>,
    #[serde(default)]
    threshold: Option<f64>,
    #[serde(default)]
    sampling: SamplingDto,
    /// Also emit the series as CSV text.
    #[serde(default)]
    csv: bool,
}

const FLAT_SCHEMA: &str = r#"{"matrix": [[int]], "patch": {"params": ["t"], "components": ["(prefix expr)", ...], "domain": [["lo", "hi"]]}, "t0": [rational], "v": [decimal] (optional), "direction": [decimal] (optional), "j" | "j_max": int, "threshold": decimal (default 1e-3), "sampling": {"segment_points", "patch_points", "refine_iters"} (optional), "csv": bool (default false)}"#;

struct Prepared {
    e: torus_core::IntMatrix,
    patch: ManifoldPatch,
    t0: Vec<Rational>,
    v: Vec<f64>,
    sampling: Sampling,
}

fn prepare(req: &FlatInput) -> Result<Prepared, torus_core::Error> {
    let e = parse_matrix(&req.matrix)?;
    let patch = req.patch.build()?;
    let t0 = parse_rational_vec(&req.t0)?;
    let v = match &req.v {
        Some(v) => v.clone(),
        None => {
            let dir = req.direction.clone().unwrap_or_else(|| {
                let mut d = vec![0.0; patch.param_dim()];
                d[0] = 1.0;
                d
            });
            tangent_vector(&patch, &t0, &dir)?
        }
    };
    Ok(Prepared { e, patch, t0, v, sampling: req.sampling.build() })
}

pub fn distance(input: &str) -> CmdResult {
    let req: FlatInput = parse(input, FLAT_SCHEMA)?;
    let p = prepare(&req)?;
    let j = req.j.unwrap_or(0);
    let d = asymptotic_distance(&p.e, &p.patch, &p.t0, &p.v, j, &p.sampling)?;
    Ok(json!({ "j": j, "distance": d, "v": p.v }))
}

fn sampling_json(s: &Sampling) -> Value {
    json!({
        "segment_points": s.segment_points,
        "patch_points": s.patch_points,
        "refine_iters": s.refine_iters,
    })
}

pub fn verify(input: &str) -> CmdResult {
    let req: FlatInput = parse(input, FLAT_SCHEMA)?;
    let p = prepare(&req)?;
    let r = verify_flat_bound(
        &p.e,
        &p.patch,
        &p.t0,
        &p.v,
        req.j_max.unwrap_or(8),
        &p.sampling,
        req.threshold.unwrap_or(DEFAULT_THRESHOLD),
    )?;
    let records: Vec<Value> = r
        .records
        .iter()
        .map(|x| json!({ "j": x.j, "distance": x.distance, "bound_rhs": x.bound_rhs, "ratio": x.ratio }))
        .collect();
    let mut out = json!({
        "records": records,
        "alpha": r.alpha,
        "decayed": r.decayed,
        "threshold": r.threshold,
        "sampling": sampling_json(&r.sampling),
        "v": p.v,
        "v_in_dominant_complement": r.v_in_dominant_complement,
        "bound_decays": r.bound_decays,
        "dominated_2x": r.dominated(2.0),
    });
    if req.csv {
        let mut text = String::from("j,distance,bound_rhs,ratio\n");
        for x in &r.records {
            text.push_str(&format!("{},{:e},{:e},{:e}\n", x.j, x.distance, x.bound_rhs, x.ratio));
        }
        out["csv"] = json!(text);
    }
    Ok(out)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LimitInput {
    matrix: Vec<Vec<Scalar>>,
    v: Vec<f64>,
    #[serde(default = "default_iters")]
    iters: usize,
    #[serde(default = "default_cluster_tol")]
    cluster_tol: f64,
    #[serde(default)]
    subgroups: bool,
}

fn default_iters() -> usize {
    DEFAULT_ITERS
}

fn default_cluster_tol() -> f64 {
    DEFAULT_CLUSTER_TOL
}

pub fn limit_direction(input: &str) -> CmdResult {
    let req: LimitInput = parse(
        input,
        r#"{"matrix": [[int]], "v": [decimal], "iters": int (default 200), "cluster_tol": decimal (default 1e-6), "subgroups": bool (default false)}"#,
    )?;
    let e = parse_matrix(&req.matrix)?;
    if !req.subgroups {
        return Ok(json!({ "directions": directions(&e, &req.v, req.iters, req.cluster_tol)? }));
    }
    let ds = limit_directions_with_subgroups(&e, &req.v, req.iters, req.cluster_tol)?;
    let list: Vec<Value> = ds
        .iter()
        .map(|d| {
            json!({
                "direction": d.direction,
                "subgroup": d.subgroup.as_ref().map(SubgroupDto::from),
                "approximate": true,
            })
        })
        .collect();
    Ok(json!({ "directions": list }))
}
