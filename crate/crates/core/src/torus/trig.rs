//! Trigonometric polynomials on the torus.
//!
//! A term is `c * exp(2πi (l·x + θ))` with rational `c = re + i im` and a
//! rational phase `θ`. Phases let the zero-set polynomial of a shifted coset
//! be written with rational data even when `exp(2πi l·y)` is irrational.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::num::{dot_int_rat, frac, Rational};
use crate::torus::coset::Coset;
use crate::torus::point::TorusPoint;
use crate::torus::subgroup::ClosedSubgroup;

pub const DEFAULT_PRECISION: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TrigTerm {
    pub freq: Vec<BigInt>,
    pub phase: Rational,
    pub re: Rational,
    pub im: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TrigPoly {
    n: usize,
    terms: Vec<TrigTerm>,
}

impl TrigPoly {
    /// Merges terms sharing frequency and phase and drops zero coefficients.
    pub fn new(n: usize, terms: Vec<TrigTerm>) -> Result<Self> {
        let mut merged: BTreeMap<(Vec<BigInt>, Rational), (Rational, Rational)> = BTreeMap::new();
        for t in terms {
            if t.freq.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: t.freq.len() });
            }
            let e = merged.entry((t.freq, frac(&t.phase))).or_default();
            e.0 += t.re;
            e.1 += t.im;
        }
        let terms = merged
            .into_iter()
            .filter(|(_, (re, im))| !(re.is_zero() && im.is_zero()))
            .map(|((freq, phase), (re, im))| TrigTerm { freq, phase, re, im })
            .collect();
        Ok(Self { n, terms })
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        Self::new(n, vec![TrigTerm { freq: vec![BigInt::zero(); n], phase: Rational::zero(), re: c, im: Rational::zero() }])
            .expect("dimension n")
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[TrigTerm] {
        &self.terms
    }

    /// Conjugate symmetry: the term at `(-l, -θ)` carries the conjugate coefficient.
    pub fn is_real(&self) -> bool {
        self.terms.iter().all(|t| {
            let freq: Vec<BigInt> = t.freq.iter().map(|v| -v).collect();
            let phase = frac(&-&t.phase);
            let im = -&t.im;
            self.terms
                .iter()
                .any(|s| s.freq == freq && s.phase == phase && s.re == t.re && s.im == im)
        })
    }

    /// Value at a rational point; phases are reduced exactly before the
    /// transcendental step. `bits <= 64` uses hardware doubles, larger
    /// values use `bits`-precision binary floating point.
    pub fn eval(&self, x: &TorusPoint, bits: usize) -> (f64, f64) {
        assert_eq!(x.dim(), self.n);
        let args: Vec<Rational> = self
            .terms
            .iter()
            .map(|t| frac(&(dot_int_rat(&t.freq, x.coords()) + &t.phase)))
            .collect();
        if bits <= DEFAULT_PRECISION {
            let mut re = 0.0;
            let mut im = 0.0;
            for (t, a) in self.terms.iter().zip(&args) {
                let (c, s) = cos_sin_turns_f64(crate::num::to_f64(a));
                let (cr, ci) = (crate::num::to_f64(&t.re), crate::num::to_f64(&t.im));
                re += cr * c - ci * s;
                im += cr * s + ci * c;
            }
            return (re, im);
        }
        eval_big(&self.terms, &args, bits)
    }

    /// Real part at a floating point, used by samplers.
    pub fn value_f64(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|t| {
                let (c, s) = cos_sin_turns_f64(self.arg_f64(t, x));
                crate::num::to_f64(&t.re) * c - crate::num::to_f64(&t.im) * s
            })
            .sum()
    }

    /// Gradient of the real part at a floating point.
    pub fn gradient_f64(&self, x: &[f64]) -> Vec<f64> {
        let mut g = vec![0.0; self.n];
        for t in &self.terms {
            let (c, s) = cos_sin_turns_f64(self.arg_f64(t, x));
            let d = -TAU * (crate::num::to_f64(&t.re) * s + crate::num::to_f64(&t.im) * c);
            for (gk, l) in g.iter_mut().zip(&t.freq) {
                *gk += d * l.to_f64().unwrap_or(0.0);
            }
        }
        g
    }

    fn arg_f64(&self, t: &TrigTerm, x: &[f64]) -> f64 {
        let lx: f64 = t.freq.iter().zip(x).map(|(l, xi)| l.to_f64().unwrap_or(0.0) * xi).sum();
        let a = lx + crate::num::to_f64(&t.phase);
        a - a.floor()
    }
}

/// `(cos 2πa, sin 2πa)` with exact values at quarter turns.
fn cos_sin_turns_f64(a: f64) -> (f64, f64) {
    let a = a - a.floor();
    match a {
        x if x == 0.0 => (1.0, 0.0),
        x if x == 0.25 => (0.0, 1.0),
        x if x == 0.5 => (-1.0, 0.0),
        x if x == 0.75 => (0.0, -1.0),
        _ => ((TAU * a).cos(), (TAU * a).sin()),
    }
}

fn big_from_int(v: &BigInt, p: usize, cc: &mut Consts) -> BigFloat {
    match v.to_i64() {
        Some(i) => BigFloat::from_i64(i, p),
        None => BigFloat::parse(&v.to_string(), Radix::Dec, p, RoundingMode::ToEven, cc),
    }
}

fn big_from_rat(q: &Rational, p: usize, cc: &mut Consts) -> BigFloat {
    let num = big_from_int(q.numer(), p, cc);
    let den = big_from_int(q.denom(), p, cc);
    num.div(&den, p, RoundingMode::ToEven)
}

pub(crate) fn big_to_f64(x: &BigFloat, cc: &mut Consts) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    x.format(Radix::Dec, RoundingMode::ToEven, cc)
        .ok()
        .and_then(|s| s.parse::<f64>().ok())
        .unwrap_or(f64::NAN)
}

fn eval_big(terms: &[TrigTerm], args: &[Rational], bits: usize) -> (f64, f64) {
    let p = bits.max(64);
    let rm = RoundingMode::ToEven;
    let mut cc = Consts::new().expect("constant cache");
    let two_pi = cc.pi(p, rm).mul(&BigFloat::from_i64(2, p), p, rm);
    let mut re = BigFloat::from_i64(0, p);
    let mut im = BigFloat::from_i64(0, p);
    for (t, a) in terms.iter().zip(args) {
        let theta = two_pi.mul(&big_from_rat(a, p, &mut cc), p, rm);
        let c = theta.cos(p, rm, &mut cc);
        let s = theta.sin(p, rm, &mut cc);
        let cr = big_from_rat(&t.re, p, &mut cc);
        let ci = big_from_rat(&t.im, p, &mut cc);
        re = re.add(&cr.mul(&c, p, rm).sub(&ci.mul(&s, p, rm), p, rm), p, rm);
        im = im.add(&cr.mul(&s, p, rm).add(&ci.mul(&c, p, rm), p, rm), p, rm);
    }
    (big_to_f64(&re, &mut cc), big_to_f64(&im, &mut cc))
}

/// `h(x) = Σ_j |χ_j(x) - χ_j(y)|²` over the dual generators of `G`,
/// expanded as `Σ_j (2 - e^{2πi(l_j·x - l_j·y)} - e^{-2πi(l_j·x - l_j·y)})`.
pub fn coset_to_trig_poly(g: &ClosedSubgroup, y: &TorusPoint) -> Result<TrigPoly> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let n = g.ambient_dim();
    y.check_dim(n)?;
    let minus_one = Rational::from_integer((-1).into());
    let mut terms = Vec::new();
    for l in g.dual().basis() {
        let ly = dot_int_rat(l, y.coords());
        terms.push(TrigTerm {
            freq: vec![BigInt::zero(); n],
            phase: Rational::zero(),
            re: Rational::from_integer(2.into()),
            im: Rational::zero(),
        });
        terms.push(TrigTerm { freq: l.clone(), phase: -&ly, re: minus_one.clone(), im: Rational::zero() });
        terms.push(TrigTerm {
            freq: l.iter().map(|v| -v).collect(),
            phase: ly,
            re: minus_one.clone(),
            im: Rational::zero(),
        });
    }
    TrigPoly::new(n, terms)
}

pub fn coset_trig_poly(c: &Coset) -> TrigPoly {
    coset_to_trig_poly(c.subgroup(), c.translate()).expect("cosets hold connected subgroups")
}
