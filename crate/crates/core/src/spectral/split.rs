//! Spectral radius, the dominant complement `V_σ^⊥` and its rational part.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::linalg::{char_poly, factor_over_integers, IntMatrix, IntPolynomial, RatMatrix};
use crate::num::{to_f64, Rational};
use crate::spectral::roots::{certify_until, ladder, CertifiedRoot, RootData};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FactorTag {
    AtSigma,
    BelowSigma,
    Mixed,
}

impl fmt::Display for FactorTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FactorTag::AtSigma => "at_sigma",
            FactorTag::BelowSigma => "below_sigma",
            FactorTag::Mixed => "mixed",
        })
    }
}

#[derive(Clone, Debug)]
pub struct TaggedFactor {
    pub poly: IntPolynomial,
    pub multiplicity: usize,
    pub tag: FactorTag,
}

#[derive(Clone, Debug)]
pub struct SpectralData {
    pub char_poly: IntPolynomial,
    pub sigma: f64,
    pub sigma_interval: (Rational, Rational),
    pub sigma1: Option<f64>,
    pub sigma1_interval: Option<(Rational, Rational)>,
    pub eigenvalues: Vec<CertifiedRoot>,
    pub factors: Vec<TaggedFactor>,
    pub roots: RootData,
}

impl SpectralData {
    fn product_of(&self, tag: FactorTag) -> IntPolynomial {
        self.factors
            .iter()
            .filter(|f| f.tag == tag)
            .fold(IntPolynomial::one(), |acc, f| acc.mul(&f.poly.pow(f.multiplicity)))
    }

    pub fn g_below(&self) -> IntPolynomial {
        self.product_of(FactorTag::BelowSigma)
    }

    pub fn g_at(&self) -> IntPolynomial {
        self.product_of(FactorTag::AtSigma)
    }

    pub fn g_mixed(&self) -> IntPolynomial {
        self.product_of(FactorTag::Mixed)
    }

    pub fn has_mixed(&self) -> bool {
        self.factors.iter().any(|f| f.tag == FactorTag::Mixed)
    }

    /// Whether root `i` has modulus σ.
    pub fn at_sigma(&self, i: usize) -> bool {
        self.roots.class_of(i) + 1 == self.roots.classes.len()
    }

    /// Dimension of `V_σ^⊥`: roots below σ counted with multiplicity.
    pub fn below_count(&self) -> usize {
        (0..self.eigenvalues.len())
            .filter(|&i| !self.at_sigma(i))
            .map(|i| self.factors[self.eigenvalues[i].factor].multiplicity)
            .sum()
    }
}

pub fn spectral_data(e: &IntMatrix) -> Result<SpectralData> {
    spectral_data_with_precision(e, 64)
}

pub fn spectral_data_with_precision(e: &IntMatrix, bits: u32) -> Result<SpectralData> {
    let cp = char_poly(e)?;
    let fact = factor_over_integers(&cp)?;
    let roots = certify_until(&fact, &ladder(bits), |_| true)?;
    Ok(from_roots(cp, roots))
}

pub fn from_roots(cp: IntPolynomial, roots: RootData) -> SpectralData {
    let top = roots.classes.last().expect("nonconstant characteristic polynomial");
    let sigma_interval = (top.lo.clone(), top.hi.clone());
    let sigma1_interval = roots
        .classes
        .len()
        .checked_sub(2)
        .map(|i| (roots.classes[i].lo.clone(), roots.classes[i].hi.clone()));
    let factors = roots
        .factorization
        .factors
        .iter()
        .enumerate()
        .map(|(k, (poly, m))| {
            let mut at = 0;
            let mut below = 0;
            for r in roots.roots.iter().enumerate().filter(|(_, r)| r.factor == k) {
                if top.members.contains(&r.0) {
                    at += 1;
                } else {
                    below += 1;
                }
            }
            let tag = match (at, below) {
                (_, 0) => FactorTag::AtSigma,
                (0, _) => FactorTag::BelowSigma,
                _ => FactorTag::Mixed,
            };
            TaggedFactor { poly: poly.clone(), multiplicity: *m, tag }
        })
        .collect();
    SpectralData {
        char_poly: cp,
        sigma: top.modulus(),
        sigma_interval,
        sigma1: roots.classes.len().checked_sub(2).map(|i| roots.classes[i].modulus()),
        sigma1_interval,
        eigenvalues: roots.roots.clone(),
        factors,
        roots,
    }
}

/// A subspace of `R^n` given by column vectors. Exact bases are rational;
/// numeric bases hold dyadic approximations.
#[derive(Clone, Debug)]
pub struct SubspaceDescription {
    pub n: usize,
    pub exact: bool,
    pub basis: Vec<Vec<Rational>>,
    /// The polynomial whose kernel at `E` defines the subspace, when known.
    pub g: Option<IntPolynomial>,
}

impl SubspaceDescription {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_f64(&self) -> Vec<Vec<f64>> {
        self.basis.iter().map(|c| c.iter().map(to_f64).collect()).collect()
    }

    /// Orthogonal projector `B (BᵀB)^{-1} Bᵀ`, exact in the basis entries.
    pub fn projector(&self) -> RatMatrix {
        if self.basis.is_empty() {
            return RatMatrix::zeros(self.n, self.n);
        }
        let b = RatMatrix::from_columns(self.n, &self.basis).expect("columns of length n");
        let bt = b.transpose();
        let gram = bt.mul(&b).inverse().expect("independent columns");
        b.mul(&gram).mul(&bt)
    }

    /// Frobenius distance between the projectors of two subspaces.
    pub fn projector_distance(&self, other: &SubspaceDescription) -> f64 {
        let d = self.projector().add(&other.projector().scale(&-Rational::one()));
        let mut sq = Rational::zero();
        for i in 0..self.n {
            for v in d.row(i) {
                sq += v * v;
            }
        }
        to_f64(&sq).sqrt()
    }

    /// `E W ⊆ W` in exact arithmetic.
    pub fn is_invariant(&self, e: &IntMatrix) -> bool {
        if self.basis.is_empty() {
            return true;
        }
        let k = self.basis.len();
        let b = RatMatrix::from_columns(self.n, &self.basis).expect("columns of length n");
        self.basis.iter().all(|c| {
            let mut cols = b.columns();
            cols.push(e.mul_rat_vec(c));
            RatMatrix::from_columns(self.n, &cols).expect("length n").rank() == k
        })
    }
}

fn kernel_of(e: &IntMatrix, g: IntPolynomial) -> SubspaceDescription {
    let n = e.rows();
    let m = g.eval_matrix(e).to_rational();
    SubspaceDescription { n, exact: true, basis: m.nullspace(), g: Some(g) }
}

/// `V_σ^⊥`. Exact when no irreducible factor straddles σ; otherwise a
/// numeric basis of the image of `Π_{|λ|=σ} (E - λ)^m`.
pub fn dominant_complement(e: &IntMatrix, data: &SpectralData) -> Result<SubspaceDescription> {
    if !data.has_mixed() {
        return Ok(kernel_of(e, data.g_below()));
    }
    numeric_dominant_complement(e, data)
}

/// `(V_σ^⊥)_rat`: the kernel of the product of factors lying entirely below σ.
pub fn rational_part_of_dominant_complement(e: &IntMatrix, data: &SpectralData) -> SubspaceDescription {
    kernel_of(e, data.g_below())
}

/// Numeric basis of `V_σ^⊥` from root approximations at 128 bits or more.
pub fn numeric_dominant_complement(e: &IntMatrix, data: &SpectralData) -> Result<SubspaceDescription> {
    let n = e.rows();
    let bits = data.roots.bits.max(128);
    let roots = if bits == data.roots.bits {
        data.roots.clone()
    } else {
        certify_until(&data.roots.factorization, &ladder(bits), |_| true)?
    };
    let fine = from_roots(data.char_poly.clone(), roots);
    // h_σ(x) = Π_{|λ| = σ} (x - λ)^m with complex rational coefficients
    let mut h_re = vec![Rational::one()];
    let mut h_im = vec![Rational::zero()];
    for (i, r) in fine.eigenvalues.iter().enumerate() {
        if !fine.at_sigma(i) {
            continue;
        }
        for _ in 0..fine.factors[r.factor].multiplicity {
            let mut re = vec![Rational::zero(); h_re.len() + 1];
            let mut im = vec![Rational::zero(); h_re.len() + 1];
            for k in 0..h_re.len() {
                re[k + 1] += &h_re[k];
                im[k + 1] += &h_im[k];
                re[k] -= &h_re[k] * &r.re - &h_im[k] * &r.im;
                im[k] -= &h_re[k] * &r.im + &h_im[k] * &r.re;
            }
            h_re = re;
            h_im = im;
        }
    }
    let er = e.to_rational();
    let mut acc = RatMatrix::zeros(n, n);
    for c in h_re.iter().rev() {
        acc = acc.mul(&er);
        for i in 0..n {
            acc[(i, i)] += c;
        }
    }
    let k = fine.below_count();
    let cols = pivot_columns(&acc, k);
    Ok(SubspaceDescription { n, exact: false, basis: cols, g: None })
}

/// `k` well-conditioned columns chosen by greedy Gram-Schmidt pivoting.
fn pivot_columns(m: &RatMatrix, k: usize) -> Vec<Vec<Rational>> {
    let cols = m.columns();
    let mut work: Vec<Vec<f64>> = cols.iter().map(|c| c.iter().map(to_f64).collect()).collect();
    let mut chosen = Vec::new();
    for _ in 0..k {
        let (best, _) = work
            .iter()
            .enumerate()
            .filter(|(i, _)| !chosen.contains(i))
            .map(|(i, c)| (i, c.iter().map(|x| x * x).sum::<f64>()))
            .fold((usize::MAX, -1.0), |a, b| if b.1 > a.1 { b } else { a });
        if best == usize::MAX {
            break;
        }
        chosen.push(best);
        let norm: f64 = work[best].iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            break;
        }
        let q: Vec<f64> = work[best].iter().map(|x| x / norm).collect();
        for c in work.iter_mut() {
            let d: f64 = c.iter().zip(&q).map(|(a, b)| a * b).sum();
            for (x, y) in c.iter_mut().zip(&q) {
                *x -= d * y;
            }
        }
    }
    chosen.sort_unstable();
    chosen.into_iter().map(|i| cols[i].clone()).collect()
}

/// Integer coefficient vector of a product of tagged factors, for reports.
pub fn coefficient_strings(p: &IntPolynomial) -> Vec<String> {
    p.coeffs().iter().map(BigInt::to_string).collect()
}

/// `g_below · g_at · g_mixed == char(E)`
pub fn partition_is_exact(data: &SpectralData) -> bool {
    data.g_below().mul(&data.g_at()).mul(&data.g_mixed()) == data.char_poly
}
