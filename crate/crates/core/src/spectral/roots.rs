//! Certified roots of integer polynomials.
//!
//! Roots are located in double precision with the Aberth iteration, polished
//! by Newton steps in dyadic rationals, and enclosed in Weierstrass disks
//! `D(z_i, d |W_i|)` with `W_i = f(z_i) / (a_d Π_{j≠i} (z_i - z_j))`. When the
//! disks of a squarefree factor are pairwise disjoint each holds exactly one
//! root, so the modulus intervals derived from them are rigorous.
//!
//! Intervals of roots with equal modulus never separate, so overlapping
//! clusters are decided exactly: every `|λ|²` is a real root of the
//! polynomial whose roots are the products `λ_i λ_j (i ≤ j)`, and a Sturm
//! count showing a single such root in the cluster's range proves the moduli
//! coincide.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{Factorization, IntPolynomial};
use crate::num::{from_f64, lcm_denominators, round_dyadic, sqrt_lower, sqrt_upper, to_f64, Rational};

pub const PRECISION_LADDER: [u32; 3] = [64, 128, 256];

#[derive(Clone, Debug)]
pub struct CertifiedRoot {
    pub re: Rational,
    pub im: Rational,
    /// Upper bound on the distance from the center to the true root.
    pub radius: Rational,
    pub modulus_lo: Rational,
    pub modulus_hi: Rational,
    /// Index into the factorization the root belongs to.
    pub factor: usize,
}

impl CertifiedRoot {
    pub fn approx(&self) -> Complex64 {
        Complex64::new(to_f64(&self.re), to_f64(&self.im))
    }

    pub fn modulus(&self) -> f64 {
        to_f64(&((&self.modulus_lo + &self.modulus_hi) / Rational::from_integer(2.into())))
    }
}

/// Roots sharing one modulus, certified either by interval separation or by
/// the exact equality test.
#[derive(Clone, Debug)]
pub struct ModulusClass {
    pub members: Vec<usize>,
    pub lo: Rational,
    pub hi: Rational,
}

impl ModulusClass {
    pub fn modulus(&self) -> f64 {
        to_f64(&((&self.lo + &self.hi) / Rational::from_integer(2.into())))
    }
}

#[derive(Clone, Debug)]
pub struct RootData {
    pub factorization: Factorization,
    pub roots: Vec<CertifiedRoot>,
    /// Ascending by modulus.
    pub classes: Vec<ModulusClass>,
    pub bits: u32,
}

impl RootData {
    pub fn class_of(&self, root: usize) -> usize {
        self.classes.iter().position(|c| c.members.contains(&root)).expect("every root is classified")
    }

    pub fn min_modulus_lo(&self) -> Rational {
        self.classes.first().map(|c| c.lo.clone()).unwrap_or_else(Rational::zero)
    }
}

/// Ladder of precisions starting at `start` and reaching at least 256 bits.
pub fn ladder(start: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut b = start.max(32);
    let top = start.max(*PRECISION_LADDER.last().unwrap());
    while b < top {
        out.push(b);
        b *= 2;
    }
    out.push(top);
    out
}

/// Certifies at increasing precision until the roots are separated and
/// `done` accepts the result. Returns the last separated result if `done`
/// never accepts; fails only when separation is never achieved.
pub fn certify_until(
    fact: &Factorization,
    bits: &[u32],
    mut done: impl FnMut(&RootData) -> bool,
) -> Result<RootData> {
    let mut last = None;
    for &b in bits {
        if let Some(data) = certify_at(fact, b) {
            if done(&data) {
                return Ok(data);
            }
            last = Some(data);
        }
    }
    last.ok_or(Error::PrecisionExhausted { bits: *bits.last().unwrap_or(&0) })
}

pub fn certify_roots(fact: &Factorization) -> Result<RootData> {
    certify_until(fact, &PRECISION_LADDER, |_| true)
}

/// One attempt at `bits` of precision; `None` when disks or modulus
/// clusters cannot be resolved at this precision.
pub fn certify_at(fact: &Factorization, bits: u32) -> Option<RootData> {
    let mut roots = Vec::new();
    for (k, (f, _)) in fact.factors.iter().enumerate() {
        roots.extend(certify_factor(f, k, bits)?);
    }
    let classes = classify_moduli(fact, &roots, bits)?;
    Some(RootData { factorization: fact.clone(), roots, classes, bits })
}

#[derive(Clone, Debug)]
struct C {
    re: Rational,
    im: Rational,
}

impl C {
    fn sub(&self, o: &C) -> C {
        C { re: &self.re - &o.re, im: &self.im - &o.im }
    }
    fn mul(&self, o: &C) -> C {
        C { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }
    fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }
    fn div(&self, o: &C) -> C {
        let d = o.norm_sqr();
        C {
            re: (&self.re * &o.re + &self.im * &o.im) / &d,
            im: (&self.im * &o.re - &self.re * &o.im) / &d,
        }
    }
    fn round(&self, bits: u32) -> C {
        C { re: round_dyadic(&self.re, bits), im: round_dyadic(&self.im, bits) }
    }
}

fn eval_c(p: &IntPolynomial, z: &C) -> C {
    let mut acc = C { re: Rational::zero(), im: Rational::zero() };
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(z);
        acc.re += Rational::from_integer(c.clone());
    }
    acc
}

fn certify_factor(f: &IntPolynomial, factor: usize, bits: u32) -> Option<Vec<CertifiedRoot>> {
    let d = f.degree();
    if d == 1 {
        let r = Rational::new(-f.constant(), f.leading());
        let m = r.abs();
        return Some(vec![CertifiedRoot {
            re: r,
            im: Rational::zero(),
            radius: Rational::zero(),
            modulus_lo: m.clone(),
            modulus_hi: m,
            factor,
        }]);
    }
    let fd = f.derivative();
    let coeffs: Vec<f64> = f.coeffs().iter().map(|c| c.to_f64().unwrap_or(f64::MAX)).collect();
    let guesses = aberth(&coeffs);
    let step_tol = Rational::new(BigInt::one(), BigInt::one() << (bits.saturating_sub(8)));
    let mut z: Vec<C> = guesses
        .iter()
        .map(|g| C { re: from_f64(g.re), im: from_f64(g.im) }.round(bits))
        .collect();
    for zi in z.iter_mut() {
        for _ in 0..(2 * bits.ilog2() as usize + 8) {
            let dv = eval_c(&fd, zi);
            if dv.norm_sqr().is_zero() {
                break;
            }
            let step = eval_c(f, zi).div(&dv);
            *zi = zi.sub(&step).round(bits);
            if step.re.abs() < step_tol && step.im.abs() < step_tol {
                break;
            }
        }
    }

    let lead2 = Rational::from_integer(f.leading() * f.leading());
    let d2 = Rational::from_integer(BigInt::from(d * d));
    let mut radii = Vec::with_capacity(d);
    for i in 0..d {
        let mut prod = lead2.clone();
        for j in 0..d {
            if i != j {
                prod *= z[i].sub(&z[j]).norm_sqr();
            }
        }
        if prod.is_zero() {
            return None;
        }
        let r2 = &d2 * eval_c(f, &z[i]).norm_sqr() / prod;
        radii.push(sqrt_upper(&r2, bits + 16));
    }
    for i in 0..d {
        for j in (i + 1)..d {
            let gap = z[i].sub(&z[j]).norm_sqr();
            let reach = &radii[i] + &radii[j];
            if gap <= &reach * &reach {
                return None;
            }
        }
    }
    Some(
        z.into_iter()
            .zip(radii)
            .map(|(zi, r)| {
                let m2 = zi.norm_sqr();
                let lo = sqrt_lower(&m2, bits + 16) - &r;
                let hi = sqrt_upper(&m2, bits + 16) + &r;
                CertifiedRoot {
                    re: zi.re,
                    im: zi.im,
                    radius: r,
                    modulus_lo: if lo.is_negative() { Rational::zero() } else { lo },
                    modulus_hi: hi,
                    factor,
                }
            })
            .collect(),
    )
}

/// Simultaneous root approximation (Aberth-Ehrlich) in double precision.
pub fn aberth(coeffs: &[f64]) -> Vec<Complex64> {
    let d = coeffs.len() - 1;
    let lead = coeffs[d];
    let a: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
    // Fujiwara bound for the initial circle
    let bound = (0..d)
        .map(|k| {
            let v = a[k].abs();
            if k == 0 {
                (v / 2.0).powf(1.0 / d as f64)
            } else {
                v.powf(1.0 / (d - k) as f64)
            }
        })
        .fold(0.0_f64, f64::max)
        * 2.0;
    let radius = if bound > 0.0 { bound / 2.0 } else { 1.0 };
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(radius, std::f64::consts::TAU * k as f64 / d as f64 + 0.4))
        .collect();
    let eval = |x: Complex64| {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for c in a.iter().rev() {
            dp = dp * x + p;
            p = p * x + c;
        }
        (p, dp)
    };
    for _ in 0..500 {
        let mut moved = 0.0_f64;
        for k in 0..d {
            let (p, dp) = eval(z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..d).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                z[k] -= w;
                moved = moved.max(w.norm() / z[k].norm().max(1.0));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

fn classify_moduli(fact: &Factorization, roots: &[CertifiedRoot], bits: u32) -> Option<Vec<ModulusClass>> {
    let mut order: Vec<usize> = (0..roots.len()).collect();
    order.sort_by(|&a, &b| roots[a].modulus_lo.cmp(&roots[b].modulus_lo));
    let mut clusters: Vec<ModulusClass> = Vec::new();
    for i in order {
        let r = &roots[i];
        match clusters.last_mut() {
            Some(c) if r.modulus_lo <= c.hi => {
                c.members.push(i);
                if r.modulus_hi > c.hi {
                    c.hi = r.modulus_hi.clone();
                }
            }
            _ => clusters.push(ModulusClass {
                members: vec![i],
                lo: r.modulus_lo.clone(),
                hi: r.modulus_hi.clone(),
            }),
        }
    }
    if clusters.iter().all(|c| c.members.len() == 1) {
        return Some(clusters);
    }
    let radical = fact.factors.iter().fold(IntPolynomial::one(), |acc, (f, _)| acc.mul(f));
    let squares = squared_modulus_poly(&radical);
    for c in clusters.iter().filter(|c| c.members.len() > 1) {
        let lo = &c.lo * &c.lo - Rational::new(BigInt::one(), BigInt::one() << (2 * bits));
        let hi = &c.hi * &c.hi;
        if sturm_count(&squares, &lo, &hi) != 1 {
            return None;
        }
    }
    Some(clusters)
}

/// Squarefree integer polynomial whose roots are the products `λ_i λ_j`,
/// `i ≤ j`, over the roots of `p`. Contains every `|λ|²` as a real root.
pub fn squared_modulus_poly(p: &IntPolynomial) -> IntPolynomial {
    let d = p.degree();
    let big_d = d * (d + 1) / 2;
    let s = power_sums(p, 2 * big_d);
    let two = Rational::from_integer(2.into());
    let psum: Vec<Rational> = (0..=big_d)
        .map(|k| if k == 0 { Rational::zero() } else { (&s[k] * &s[k] + &s[2 * k]) / &two })
        .collect();
    // Newton identities: k e_k = Σ_{i=1..k} (-1)^{i-1} e_{k-i} P_i
    let mut e = vec![Rational::one()];
    for k in 1..=big_d {
        let mut acc = Rational::zero();
        for i in 1..=k {
            let term = &e[k - i] * &psum[i];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        e.push(acc / Rational::from_integer(BigInt::from(k)));
    }
    let mut coeffs = vec![Rational::zero(); big_d + 1];
    for (k, ek) in e.iter().enumerate() {
        coeffs[big_d - k] = if k % 2 == 0 { ek.clone() } else { -ek };
    }
    let q = rational_to_int(&coeffs);
    let g = q.gcd(&q.derivative());
    q.div_exact(&g).unwrap_or_else(|| {
        let (quot, _) = q.div_rem_rational(&g);
        rational_to_int(&quot)
    })
}

/// Power sums `s_0..=s_m` of the roots of `p`.
fn power_sums(p: &IntPolynomial, m: usize) -> Vec<Rational> {
    let d = p.degree();
    let lead = Rational::from_integer(p.leading());
    // monic coefficients a_{d-1}, ..., a_0 as c_k = coeff of x^{d-k}
    let c: Vec<Rational> = (0..=d)
        .map(|k| Rational::from_integer(p.coeffs()[d - k].clone()) / &lead)
        .collect();
    let mut s = vec![Rational::from_integer(BigInt::from(d))];
    for k in 1..=m {
        let mut acc = Rational::zero();
        for i in 1..k.min(d + 1) {
            acc -= &c[i] * &s[k - i];
        }
        if k <= d {
            acc -= Rational::from_integer(BigInt::from(k)) * &c[k];
        }
        s.push(acc);
    }
    s
}

fn rational_to_int(coeffs: &[Rational]) -> IntPolynomial {
    let den = lcm_denominators(coeffs);
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
        .collect();
    IntPolynomial::new(ints).primitive_part()
}

/// Number of distinct real roots in `(a, b]` of a squarefree polynomial.
pub fn sturm_count(p: &IntPolynomial, a: &Rational, b: &Rational) -> usize {
    if p.degree() == 0 {
        return 0;
    }
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        let (_, r) = chain[n - 2].div_rem_rational(&chain[n - 1]);
        if r.iter().all(Zero::is_zero) {
            break;
        }
        let den = lcm_denominators(&r);
        let ints: Vec<BigInt> = r.iter().map(|c| -(c * Rational::from_integer(den.clone())).to_integer()).collect();
        let rp = IntPolynomial::new(ints);
        let content = rp.content();
        chain.push(IntPolynomial::new(rp.coeffs().iter().map(|c| c / &content).collect()));
    }
    let variations = |x: &Rational| {
        let signs: Vec<i8> = chain
            .iter()
            .map(|q| {
                let v = q.eval_rational(x);
                if v.is_positive() {
                    1
                } else if v.is_negative() {
                    -1
                } else {
                    0
                }
            })
            .filter(|&s| s != 0)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    variations(a).saturating_sub(variations(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::factor_over_integers;
    use crate::num::rat;

    fn data(c: &[i64]) -> RootData {
        certify_roots(&factor_over_integers(&IntPolynomial::from_i64(c)).unwrap()).unwrap()
    }

    #[test]
    fn golden_ratio_moduli() {
        // x^2 - 5x + 5: roots (5 ± √5)/2
        let d = data(&[5, -5, 1]);
        assert_eq!(d.classes.len(), 2);
        let big = (5.0 + 5f64.sqrt()) / 2.0;
        let small = (5.0 - 5f64.sqrt()) / 2.0;
        assert!((d.classes[1].modulus() - big).abs() < 1e-15);
        assert!((d.classes[0].modulus() - small).abs() < 1e-15);
        for r in &d.roots {
            assert!(r.modulus_lo <= r.modulus_hi);
        }
    }

    #[test]
    fn conjugate_pair_shares_modulus() {
        // x^2 + 2: ±i√2
        let d = data(&[2, 0, 1]);
        assert_eq!(d.classes.len(), 1);
        assert_eq!(d.classes[0].members.len(), 2);
        assert!((d.classes[0].modulus() - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn real_roots_of_equal_modulus() {
        // (x - 2)(x + 2)(x - 3)
        let p = IntPolynomial::from_i64(&[-2, 1]).mul(&IntPolynomial::from_i64(&[2, 1])).mul(&IntPolynomial::from_i64(&[-3, 1]));
        let d = certify_roots(&factor_over_integers(&p).unwrap()).unwrap();
        assert_eq!(d.classes.len(), 2);
        assert_eq!(d.classes[0].members.len(), 2);
        assert_eq!(d.classes[1].lo, rat(3, 1));
    }

    #[test]
    fn x4_minus_2_has_four_roots_of_one_modulus() {
        let d = data(&[-2, 0, 0, 0, 1]);
        assert_eq!(d.classes.len(), 1);
        assert!((d.classes[0].modulus() - 2f64.powf(0.25)).abs() < 1e-15);
    }

    #[test]
    fn sturm_counts_real_roots() {
        let p = IntPolynomial::from_i64(&[-2, 0, 1]);
        assert_eq!(sturm_count(&p, &rat(-2, 1), &rat(2, 1)), 2);
        assert_eq!(sturm_count(&p, &rat(0, 1), &rat(2, 1)), 1);
        assert_eq!(sturm_count(&IntPolynomial::from_i64(&[1, 0, 1]), &rat(-5, 1), &rat(5, 1)), 0);
    }

    #[test]
    fn squared_modulus_poly_contains_norms() {
        // roots ±i√2 -> products -2, 2, -2 ; |λ|^2 = 2
        let q = squared_modulus_poly(&IntPolynomial::from_i64(&[2, 0, 1]));
        assert!(q.eval(&BigInt::from(2)).is_zero());
    }

    #[test]
    fn ladder_reaches_256() {
        assert_eq!(ladder(64), vec![64, 128, 256]);
        assert_eq!(ladder(512), vec![512]);
    }
}
