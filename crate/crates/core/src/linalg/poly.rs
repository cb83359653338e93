use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{IntMatrix, RatMatrix};
use crate::error::Result;
use crate::num::{gcd_all, Rational};

/// Integer polynomial, coefficients in ascending degree, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// `x - r`
    pub fn linear(root: &BigInt) -> Self {
        Self::new(vec![-root, BigInt::one()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn constant(&self) -> BigInt {
        self.coeffs.first().cloned().unwrap_or_default()
    }

    pub fn content(&self) -> BigInt {
        gcd_all(&self.coeffs)
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        Self::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + Rational::from_integer(c.clone()))
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        use num_traits::ToPrimitive;
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::new(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..len)
                .map(|i| {
                    self.coeffs.get(i).cloned().unwrap_or_default()
                        + other.coeffs.get(i).cloned().unwrap_or_default()
                })
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Exact quotient over the integers when `other` divides `self`.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        let (q, r) = self.div_rem_rational(other);
        if !r.iter().all(Zero::is_zero) || !q.iter().all(|c| c.is_integer()) {
            return None;
        }
        Some(Self::new(q.into_iter().map(|c| c.to_integer()).collect()))
    }

    /// Division over the rationals; returns (quotient, remainder) coefficients.
    pub fn div_rem_rational(&self, other: &Self) -> (Vec<Rational>, Vec<Rational>) {
        assert!(!other.is_zero(), "division by zero polynomial");
        let mut r: Vec<Rational> = self.coeffs.iter().cloned().map(Rational::from_integer).collect();
        let d = other.degree();
        let lead = Rational::from_integer(other.leading());
        if self.coeffs.len() < other.coeffs.len() {
            return (Vec::new(), r);
        }
        let mut q = vec![Rational::zero(); self.coeffs.len() - d];
        for k in (0..q.len()).rev() {
            let c = &r[k + d] / &lead;
            if !c.is_zero() {
                for (j, b) in other.coeffs.iter().enumerate() {
                    let v = &c * Rational::from_integer(b.clone());
                    r[k + j] -= v;
                }
            }
            q[k] = c;
        }
        r.truncate(d);
        (q, r)
    }

    /// Primitive gcd over the rationals (content ignored), positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        while !b.is_zero() {
            let (_, r) = a.div_rem_rational(&b);
            let den = crate::num::lcm_denominators(&r);
            let r = Self::new(r.iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect());
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part()
    }

    pub fn eval_matrix(&self, e: &IntMatrix) -> IntMatrix {
        let n = e.rows();
        let mut acc = IntMatrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(e);
            for i in 0..n {
                acc[(i, i)] += c;
            }
        }
        acc
    }

    pub fn eval_rat_matrix(&self, e: &RatMatrix) -> RatMatrix {
        let n = e.rows();
        let mut acc = RatMatrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(e);
            for i in 0..n {
                acc[(i, i)] += Rational::from_integer(c.clone());
            }
        }
        acc
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let show_mag = !mag.is_one() || i == 0;
            match (i, show_mag) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "{mag}*x")?,
                (1, false) => write!(f, "x")?,
                (_, true) => write!(f, "{mag}*x^{i}")?,
                (_, false) => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// `det(x I - e)` by Faddeev-LeVerrier; every division is exact over the integers.
pub fn char_poly(e: &IntMatrix) -> Result<IntPolynomial> {
    let n = e.require_square()?;
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut m = IntMatrix::zeros(n, n);
    for k in 1..=n {
        // M_k = E M_{k-1} + c_{n-k+1} I
        let mut next = e.mul(&m);
        for i in 0..n {
            next[(i, i)] += &coeffs[n - k + 1];
        }
        let am = e.mul(&next);
        let trace: BigInt = (0..n).map(|i| am[(i, i)].clone()).sum();
        let (q, r) = trace.div_rem(&BigInt::from(k));
        debug_assert!(r.is_zero());
        coeffs[n - k] = -q;
        m = next;
    }
    Ok(IntPolynomial::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn char_poly_examples() {
        assert_eq!(char_poly(&IntMatrix::diagonal(&[2, 3])).unwrap(), IntPolynomial::from_i64(&[6, -5, 1]));
        assert_eq!(char_poly(&IntMatrix::identity(2)).unwrap(), IntPolynomial::from_i64(&[1, -2, 1]));
        assert_eq!(
            char_poly(&IntMatrix::from_i64(&[[2, 1], [1, 3]])).unwrap(),
            IntPolynomial::from_i64(&[5, -5, 1])
        );
        assert_eq!(
            char_poly(&IntMatrix::from_i64(&[[0, -1], [2, 0]])).unwrap(),
            IntPolynomial::from_i64(&[2, 0, 1])
        );
        assert!(char_poly(&IntMatrix::from_i64(&[[1, 2]])).is_err());
    }

    #[test]
    fn cayley_hamilton() {
        let e = IntMatrix::from_i64(&[[1, 2, 0], [3, -1, 4], [0, 5, 2]]);
        let p = char_poly(&e).unwrap();
        assert!(p.eval_matrix(&e).to_rows().iter().flatten().all(Zero::is_zero));
        assert_eq!(p.constant(), -e.det().unwrap());
    }

    #[test]
    fn gcd_and_division() {
        let a = IntPolynomial::from_i64(&[6, -5, 1]);
        let b = IntPolynomial::from_i64(&[-2, 1]);
        assert_eq!(a.div_exact(&b).unwrap(), IntPolynomial::from_i64(&[-3, 1]));
        assert_eq!(a.gcd(&a.derivative()), IntPolynomial::one());
        let sq = b.mul(&b).mul(&IntPolynomial::from_i64(&[1, 1]));
        assert_eq!(sq.gcd(&sq.derivative()), b);
        assert!(a.div_exact(&IntPolynomial::from_i64(&[0, 2])).is_none());
    }

    #[test]
    fn display() {
        assert_eq!(IntPolynomial::from_i64(&[6, -5, 1]).to_string(), "x^2 - 5*x + 6");
        assert_eq!(IntPolynomial::from_i64(&[2, 0, 1]).to_string(), "x^2 + 2");
    }
}
