use serde::Deserialize;
use serde_json::{json, Value};
use torus_core::torus::ClosedSubgroup;
use torus_core::wire::{int_strings, parse_int_vec, parse_point, parse_rational_vec, Scalar, SubgroupDto, UnionDto};

use super::{parse, CliError, CmdResult};

pub fn describe(g: &ClosedSubgroup) -> Value {
    json!({
        "subgroup": SubgroupDto::from(g),
        "dim": g.dim(),
        "connected": g.is_connected(),
        "torsion": int_strings(&g.torsion_orders()),
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Pair {
    a: SubgroupDto,
    b: SubgroupDto,
}

const PAIR_SCHEMA: &str = r#"{"a": {"n": int, "dual": [[int]]}, "b": {"n": int, "dual": [[int]]}}"#;

pub fn sum(input: &str) -> CmdResult {
    let p: Pair = parse(input, PAIR_SCHEMA)?;
    Ok(describe(&p.a.to_subgroup()?.sum(&p.b.to_subgroup()?)?))
}

pub fn intersect(input: &str) -> CmdResult {
    let p: Pair = parse(input, PAIR_SCHEMA)?;
    Ok(describe(&p.a.to_subgroup()?.intersect(&p.b.to_subgroup()?)?))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Single {
    subgroup: SubgroupDto,
}

const SINGLE_SCHEMA: &str = r#"{"subgroup": {"n": int, "dual": [[int]]}}"#;

pub fn complement(input: &str) -> CmdResult {
    let s: Single = parse(input, SINGLE_SCHEMA)?;
    Ok(describe(&s.subgroup.to_subgroup()?.complement()?))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ContainsInput {
    subgroup: SubgroupDto,
    #[serde(default)]
    other: Option<SubgroupDto>,
    #[serde(default)]
    point: Option<Vec<Scalar>>,
}

const CONTAINS_SCHEMA: &str =
    r#"{"subgroup": {"n", "dual"}, "other": {"n", "dual"} (optional), "point": [rational] (optional)}"#;

pub fn contains(input: &str) -> CmdResult {
    let req: ContainsInput = parse(input, CONTAINS_SCHEMA)?;
    let g = req.subgroup.to_subgroup()?;
    if req.other.is_none() && req.point.is_none() {
        return Err(CliError::Usage(format!("nothing to test\nexpected input: {CONTAINS_SCHEMA}")));
    }
    let mut out = serde_json::Map::new();
    if let Some(h) = req.other {
        out.insert("contains_subgroup".into(), json!(g.contains(&h.to_subgroup()?)?));
    }
    if let Some(p) = req.point {
        let x = parse_point(&p)?;
        x.check_dim(g.ambient_dim())?;
        out.insert("contains_point".into(), json!(g.contains_point(&x)));
    }
    Ok(Value::Object(out))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FromDual {
    n: usize,
    generators: Vec<Vec<Scalar>>,
}

pub fn from_dual(input: &str) -> CmdResult {
    let req: FromDual = parse(input, r#"{"n": int, "generators": [[int]]}"#)?;
    let gens = req.generators.iter().map(|g| parse_int_vec(g)).collect::<Result<Vec<_>, _>>()?;
    Ok(describe(&ClosedSubgroup::from_dual(req.n, &gens)?))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FromSubspace {
    n: usize,
    columns: Vec<Vec<Scalar>>,
}

pub fn from_subspace(input: &str) -> CmdResult {
    let req: FromSubspace = parse(input, r#"{"n": int, "columns": [[rational]]}"#)?;
    let cols = req.columns.iter().map(|c| parse_rational_vec(c)).collect::<Result<Vec<_>, _>>()?;
    Ok(describe(&ClosedSubgroup::from_rational_subspace(req.n, &cols)?))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InvariantSubset {
    union: UnionDto,
    subgroup: SubgroupDto,
}

pub fn invariant_subset(input: &str) -> CmdResult {
    let req: InvariantSubset =
        parse(input, r#"{"union": {"n", "cosets": [{"subgroup", "translate"}]}, "subgroup": {"n", "dual"}}"#)?;
    let s = req.union.to_union()?;
    let sub = s.invariant_subset(&req.subgroup.to_subgroup()?)?;
    Ok(json!({ "union": UnionDto::from(&sub) }))
}
