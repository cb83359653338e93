//! JSON representations. Integers and rationals travel as decimal strings;
//! inputs also accept plain JSON integers.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, Lattice};
use crate::num::{format_rational, parse_int, parse_rational, Rational};
use crate::torus::{ClosedSubgroup, Coset, CosetUnion, TorusPoint, TrigPoly, TrigTerm};

/// A number given either as a JSON integer or as a string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

impl Scalar {
    pub fn to_int(&self) -> Result<BigInt> {
        match self {
            Scalar::Int(v) => Ok(BigInt::from(*v)),
            Scalar::Text(s) => parse_int(s),
        }
    }

    pub fn to_rational(&self) -> Result<Rational> {
        match self {
            Scalar::Int(v) => Ok(Rational::from_integer(BigInt::from(*v))),
            Scalar::Text(s) => parse_rational(s),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Int(v) => write!(f, "{v}"),
            Scalar::Text(s) => f.write_str(s),
        }
    }
}

impl From<&BigInt> for Scalar {
    fn from(v: &BigInt) -> Self {
        Scalar::Text(v.to_string())
    }
}

impl From<&Rational> for Scalar {
    fn from(q: &Rational) -> Self {
        Scalar::Text(format_rational(q))
    }
}

pub fn int_strings(v: &[BigInt]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

pub fn rational_strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

pub fn matrix_strings(m: &IntMatrix) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| int_strings(r)).collect()
}

pub fn parse_matrix(rows: &[Vec<Scalar>]) -> Result<IntMatrix> {
    let rows = rows
        .iter()
        .map(|r| r.iter().map(Scalar::to_int).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    IntMatrix::from_rows(rows)
}

pub fn parse_int_vec(v: &[Scalar]) -> Result<Vec<BigInt>> {
    v.iter().map(Scalar::to_int).collect()
}

pub fn parse_rational_vec(v: &[Scalar]) -> Result<Vec<Rational>> {
    v.iter().map(Scalar::to_rational).collect()
}

pub fn parse_point(v: &[Scalar]) -> Result<TorusPoint> {
    Ok(TorusPoint::new(parse_rational_vec(v)?))
}

pub fn point_strings(p: &TorusPoint) -> Vec<String> {
    rational_strings(p.coords())
}

/// A closed subgroup by its dual lattice generators.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubgroupDto {
    pub n: usize,
    pub dual: Vec<Vec<Scalar>>,
}

impl SubgroupDto {
    pub fn to_subgroup(&self) -> Result<ClosedSubgroup> {
        let gens = self.dual.iter().map(|r| parse_int_vec(r)).collect::<Result<Vec<_>>>()?;
        ClosedSubgroup::from_dual(self.n, &gens)
    }
}

impl From<&ClosedSubgroup> for SubgroupDto {
    fn from(g: &ClosedSubgroup) -> Self {
        SubgroupDto { n: g.ambient_dim(), dual: lattice_scalars(g.dual()) }
    }
}

pub fn lattice_scalars(l: &Lattice) -> Vec<Vec<Scalar>> {
    l.basis().iter().map(|r| r.iter().map(Scalar::from).collect()).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CosetDto {
    pub subgroup: SubgroupDto,
    pub translate: Vec<Scalar>,
}

impl CosetDto {
    pub fn to_coset(&self) -> Result<Coset> {
        Coset::new(self.subgroup.to_subgroup()?, parse_point(&self.translate)?)
    }
}

impl From<&Coset> for CosetDto {
    fn from(c: &Coset) -> Self {
        CosetDto {
            subgroup: c.subgroup().into(),
            translate: c.translate().coords().iter().map(Scalar::from).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnionDto {
    pub n: usize,
    pub cosets: Vec<CosetDto>,
}

impl UnionDto {
    pub fn to_union(&self) -> Result<CosetUnion> {
        let cosets = self.cosets.iter().map(CosetDto::to_coset).collect::<Result<Vec<_>>>()?;
        CosetUnion::new(self.n, cosets)
    }
}

impl From<&CosetUnion> for UnionDto {
    fn from(s: &CosetUnion) -> Self {
        UnionDto { n: s.ambient_dim(), cosets: s.cosets().iter().map(CosetDto::from).collect() }
    }
}

/// `c · exp(2πi(l·x + phase))` with `c = re + i im`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrigTermDto {
    pub freq: Vec<Scalar>,
    pub re: Scalar,
    #[serde(default = "zero_scalar")]
    pub im: Scalar,
    #[serde(default = "zero_scalar")]
    pub phase: Scalar,
}

fn zero_scalar() -> Scalar {
    Scalar::Int(0)
}

pub fn parse_trig_poly(terms: &[TrigTermDto], n: Option<usize>) -> Result<TrigPoly> {
    let n = match (n, terms.first()) {
        (Some(n), _) => n,
        (None, Some(t)) => t.freq.len(),
        (None, None) => return Err(Error::Parse("empty polynomial needs an explicit dimension".into())),
    };
    let terms = terms
        .iter()
        .map(|t| {
            Ok(TrigTerm {
                freq: parse_int_vec(&t.freq)?,
                phase: t.phase.to_rational()?,
                re: t.re.to_rational()?,
                im: t.im.to_rational()?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    TrigPoly::new(n, terms)
}

pub fn trig_poly_dto(h: &TrigPoly) -> Vec<TrigTermDto> {
    h.terms()
        .iter()
        .map(|t| TrigTermDto {
            freq: t.freq.iter().map(Scalar::from).collect(),
            re: (&t.re).into(),
            im: (&t.im).into(),
            phase: (&t.phase).into(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn union_round_trip() {
        let s = CosetUnion::from_pairs(
            2,
            vec![
                (ClosedSubgroup::axis(2, 0), TorusPoint::from_fractions(&[(0, 1), (1, 3)])),
                (ClosedSubgroup::axis(2, 1), TorusPoint::zero(2)),
            ],
        )
        .unwrap();
        let json = serde_json::to_string(&UnionDto::from(&s)).unwrap();
        let back: UnionDto = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_union().unwrap(), s);
    }

    #[test]
    fn scalars_accept_numbers_and_strings() {
        let m: Vec<Vec<Scalar>> = serde_json::from_str(r#"[[2, "0"], [0, "3"]]"#).unwrap();
        assert_eq!(parse_matrix(&m).unwrap(), IntMatrix::diagonal(&[2, 3]));
        assert!(serde_json::from_str::<SubgroupDto>(r#"{"n": 2, "dual": [], "extra": 1}"#).is_err());
    }

    #[test]
    fn trig_poly_round_trip() {
        let h = crate::torus::coset_to_trig_poly(&ClosedSubgroup::axis(2, 1), &TorusPoint::from_fractions(&[(1, 3), (0, 1)]))
            .unwrap();
        let back = parse_trig_poly(&trig_poly_dto(&h), Some(2)).unwrap();
        assert_eq!(back, h);
    }
}
