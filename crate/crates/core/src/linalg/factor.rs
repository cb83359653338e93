//! Factorization of small-degree integer polynomials.
//!
//! Rational roots are peeled off first; what remains is split with
//! Kronecker's interpolation method, pruned by the congruence
//! `g(a) - g(b) ≡ 0 (mod a - b)` that every integer polynomial satisfies.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::IntPolynomial;
use crate::error::{Error, Result};
use crate::num::Rational;

pub const DEFAULT_DEGREE_BOUND: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    /// Signed content: `p = unit * prod(f_i^m_i)`.
    pub unit: BigInt,
    /// Primitive irreducible factors with positive leading coefficient and
    /// their multiplicities, sorted by degree then coefficients.
    pub factors: Vec<(IntPolynomial, usize)>,
}

impl Factorization {
    pub fn product(&self) -> IntPolynomial {
        self.factors
            .iter()
            .fold(IntPolynomial::new(vec![self.unit.clone()]), |acc, (f, m)| acc.mul(&f.pow(*m)))
    }
}

pub fn factor_over_integers(p: &IntPolynomial) -> Result<Factorization> {
    factor_with_bound(p, DEFAULT_DEGREE_BOUND)
}

pub fn factor_with_bound(p: &IntPolynomial, bound: usize) -> Result<Factorization> {
    if p.degree() > bound {
        return Err(Error::DegreeTooLarge { degree: p.degree(), bound });
    }
    if p.is_zero() {
        return Err(Error::Precondition("cannot factor the zero polynomial".into()));
    }
    let prim = p.primitive_part();
    let unit = if p.leading().is_negative() { -p.content() } else { p.content() };

    let mut irreducibles = Vec::new();
    let mut rest = prim;
    for root in rational_roots(&rest) {
        let lin = IntPolynomial::new(vec![-root.numer().clone(), root.denom().clone()]);
        while let Some(q) = rest.div_exact(&lin) {
            irreducibles.push(lin.clone());
            rest = q;
        }
    }
    split_kronecker(rest, &mut irreducibles);

    irreducibles.sort_by(|a, b| (a.degree(), a.coeffs()).cmp(&(b.degree(), b.coeffs())));
    let mut factors: Vec<(IntPolynomial, usize)> = Vec::new();
    for f in irreducibles {
        match factors.last_mut() {
            Some((g, m)) if *g == f => *m += 1,
            _ => factors.push((f, 1)),
        }
    }
    Ok(Factorization { unit, factors })
}

fn split_kronecker(f: IntPolynomial, out: &mut Vec<IntPolynomial>) {
    if f.degree() == 0 {
        return;
    }
    match find_factor(&f) {
        Some(g) => {
            let h = f.div_exact(&g).expect("found factor divides");
            split_kronecker(g, out);
            split_kronecker(h, out);
        }
        None => out.push(f.primitive_part()),
    }
}

/// Rational roots of a primitive polynomial, without multiplicity.
pub fn rational_roots(p: &IntPolynomial) -> Vec<Rational> {
    if p.degree() == 0 {
        return Vec::new();
    }
    let mut roots = Vec::new();
    let mut q = p.clone();
    if q.constant().is_zero() {
        roots.push(Rational::zero());
        while q.constant().is_zero() {
            q = IntPolynomial::new(q.coeffs()[1..].to_vec());
        }
    }
    if q.degree() == 0 {
        return roots;
    }
    let nums = divisors(&q.constant());
    let dens = divisors(&q.leading());
    for a in &nums {
        for b in &dens {
            for s in [BigInt::one(), -BigInt::one()] {
                let r = Rational::new(&s * a, b.clone());
                if !roots.contains(&r) && q.eval_rational(&r).is_zero() {
                    roots.push(r);
                }
            }
        }
    }
    roots.sort();
    roots
}

/// Positive divisors by trial division.
pub fn divisors(v: &BigInt) -> Vec<BigInt> {
    let v = v.abs();
    if v.is_zero() {
        return Vec::new();
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let root = v.sqrt();
    let mut d = BigInt::one();
    while d <= root {
        if v.is_multiple_of(&d) {
            let other = &v / &d;
            if other != d {
                large.push(other);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// A nontrivial factor of degree <= deg/2, or None when irreducible.
fn find_factor(f: &IntPolynomial) -> Option<IntPolynomial> {
    let n = f.degree();
    if n < 2 {
        return None;
    }
    // candidate evaluation points, preferring values with few divisors
    let mut points: Vec<(usize, BigInt, BigInt)> = (0..(2 * n as i64 + 6))
        .map(|i| if i % 2 == 0 { BigInt::from(i / 2) } else { BigInt::from(-(i + 1) / 2) })
        .filter_map(|a| {
            let v = f.eval(&a);
            if v.is_zero() {
                return None;
            }
            let count = divisor_count_estimate(&v);
            Some((count, a, v))
        })
        .collect();
    points.sort_by(|x, y| x.0.cmp(&y.0).then_with(|| x.1.abs().cmp(&y.1.abs())));

    for d in 1..=n / 2 {
        if points.len() < d + 1 {
            return None;
        }
        let chosen: Vec<(BigInt, Vec<BigInt>)> = points[..=d]
            .iter()
            .map(|(_, a, v)| (a.clone(), divisors(v)))
            .collect();
        let mut values = Vec::with_capacity(d + 1);
        if let Some(g) = search(f, d, &chosen, &mut values) {
            return Some(g);
        }
    }
    None
}

fn search(
    f: &IntPolynomial,
    d: usize,
    chosen: &[(BigInt, Vec<BigInt>)],
    values: &mut Vec<BigInt>,
) -> Option<IntPolynomial> {
    let k = values.len();
    if k == chosen.len() {
        return interpolate_candidate(f, d, chosen, values);
    }
    let (a, divs) = &chosen[k];
    let signs: &[i64] = if k == 0 { &[1] } else { &[1, -1] };
    for div in divs {
        for &s in signs {
            let v = div * s;
            let consistent = values
                .iter()
                .zip(chosen)
                .all(|(w, (b, _))| (&v - w).is_multiple_of(&(a - b)));
            if !consistent {
                continue;
            }
            values.push(v);
            if let Some(g) = search(f, d, chosen, values) {
                return Some(g);
            }
            values.pop();
        }
    }
    None
}

fn interpolate_candidate(
    f: &IntPolynomial,
    d: usize,
    chosen: &[(BigInt, Vec<BigInt>)],
    values: &[BigInt],
) -> Option<IntPolynomial> {
    // Lagrange interpolation over the rationals
    let mut coeffs = vec![Rational::zero(); d + 1];
    for (i, (ai, _)) in chosen.iter().enumerate() {
        let mut basis = vec![Rational::one()];
        let mut denom = Rational::one();
        for (j, (aj, _)) in chosen.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![Rational::zero(); basis.len() + 1];
            for (t, b) in basis.iter().enumerate() {
                next[t + 1] += b;
                next[t] -= b * Rational::from_integer(aj.clone());
            }
            basis = next;
            denom *= Rational::from_integer(ai - aj);
        }
        let scale = Rational::from_integer(values[i].clone()) / denom;
        for (c, b) in coeffs.iter_mut().zip(basis) {
            *c += b * &scale;
        }
    }
    if !coeffs.iter().all(|c| c.is_integer()) {
        return None;
    }
    let g = IntPolynomial::new(coeffs.into_iter().map(|c| c.to_integer()).collect());
    if g.degree() != d || g.degree() == 0 {
        return None;
    }
    if !f.leading().is_multiple_of(&g.leading()) || !f.constant().is_multiple_of(&g.constant()) {
        return None;
    }
    f.div_exact(&g).map(|_| g)
}

fn divisor_count_estimate(v: &BigInt) -> usize {
    // exact for values that fit comfortably; large values rank last
    match v.abs().to_u64() {
        Some(x) if x < 1 << 40 => {
            let mut count = 1;
            let mut x = x;
            let mut p = 2u64;
            while p * p <= x {
                let mut e = 0;
                while x % p == 0 {
                    x /= p;
                    e += 1;
                }
                count *= e + 1;
                p += 1;
            }
            if x > 1 {
                count *= 2;
            }
            count
        }
        _ => usize::MAX,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn splits_rational_roots() {
        let f = factor_over_integers(&p(&[6, -5, 1])).unwrap();
        assert_eq!(f.factors, vec![(p(&[-3, 1]), 1), (p(&[-2, 1]), 1)]);
        assert_eq!(f.product(), p(&[6, -5, 1]));
    }

    #[test]
    fn irreducible_quadratics() {
        for c in [[5, -5, 1], [2, 0, 1]] {
            let f = factor_over_integers(&p(&c)).unwrap();
            assert_eq!(f.factors, vec![(p(&c), 1)]);
        }
    }

    #[test]
    fn non_monic_and_content() {
        // -2 (2x - 1)(x^2 + 1)
        let g = p(&[-1, 2]).mul(&p(&[1, 0, 1])).scale(&BigInt::from(-2));
        let f = factor_over_integers(&g).unwrap();
        assert_eq!(f.unit, BigInt::from(-2));
        assert_eq!(f.product(), g);
        assert_eq!(f.factors.len(), 2);
    }

    #[test]
    fn quartic_without_rational_roots() {
        // x^4 + 4 = (x^2 + 2x + 2)(x^2 - 2x + 2)
        let f = factor_over_integers(&p(&[4, 0, 0, 0, 1])).unwrap();
        assert_eq!(f.factors, vec![(p(&[2, -2, 1]), 1), (p(&[2, 2, 1]), 1)]);
        // x^4 - 2 is irreducible
        let f = factor_over_integers(&p(&[-2, 0, 0, 0, 1])).unwrap();
        assert_eq!(f.factors.len(), 1);
    }

    #[test]
    fn repeated_factors_counted() {
        let g = p(&[-2, 1]).pow(3).mul(&p(&[1, 1, 1]).pow(2));
        let f = factor_over_integers(&g).unwrap();
        assert_eq!(f.factors, vec![(p(&[-2, 1]), 3), (p(&[1, 1, 1]), 2)]);
    }

    #[test]
    fn degree_bound_enforced() {
        let big = IntPolynomial::new(vec![BigInt::one(); 14]);
        assert!(matches!(factor_over_integers(&big), Err(Error::DegreeTooLarge { .. })));
    }

    #[test]
    fn divisor_listing() {
        let d: Vec<i64> = divisors(&BigInt::from(-12)).iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(d, vec![1, 2, 3, 4, 6, 12]);
    }
}
