use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::num::{frac, parse_rational, rat, Rational};

/// A point of `T^n = R^n / Z^n` with every coordinate reduced into `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusPoint {
    coords: Vec<Rational>,
}

impl TorusPoint {
    pub fn new(coords: Vec<Rational>) -> Self {
        Self { coords: coords.iter().map(frac).collect() }
    }

    pub fn zero(n: usize) -> Self {
        Self { coords: vec![rat(0, 1); n] }
    }

    pub fn from_fractions(v: &[(i64, i64)]) -> Self {
        Self::new(v.iter().map(|&(p, q)| rat(p, q)).collect())
    }

    pub fn parse(v: &[String]) -> Result<Self> {
        Ok(Self::new(v.iter().map(|s| parse_rational(s)).collect::<Result<_>>()?))
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn add(&self, other: &TorusPoint) -> TorusPoint {
        assert_eq!(self.dim(), other.dim());
        Self::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &TorusPoint) -> TorusPoint {
        assert_eq!(self.dim(), other.dim());
        Self::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> TorusPoint {
        Self::new(self.coords.iter().map(|a| -a).collect())
    }

    /// `x -> E x mod Z^n`
    pub fn apply(&self, e: &IntMatrix) -> TorusPoint {
        Self::new(e.mul_rat_vec(&self.coords))
    }

    pub fn check_dim(&self, n: usize) -> Result<()> {
        if self.dim() == n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: n, found: self.dim() })
        }
    }

    /// Least common denominator of the coordinates.
    pub fn order(&self) -> BigInt {
        crate::num::lcm_denominators(&self.coords)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coords.iter().map(crate::num::to_f64).collect()
    }
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "({})", c.join(", "))
    }
}
