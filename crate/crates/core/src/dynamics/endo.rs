use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::linalg::{char_poly, factor_over_integers, IntMatrix, IntPolynomial};
use crate::num::{to_f64, Rational};
use crate::spectral::roots::{certify_until, ladder};
use crate::spectral::split::{from_roots, SpectralData};
use crate::torus::{ClosedSubgroup, Coset, TorusPoint};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// A square integer matrix all of whose eigenvalues certifiably exceed 1 in modulus.
#[derive(Clone, Debug)]
pub struct ExpandingEndo {
    matrix: IntMatrix,
    transpose: IntMatrix,
    degree: BigInt,
    spectral: SpectralData,
    margin: Rational,
}

impl ExpandingEndo {
    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// `|det E|`
    pub fn degree(&self) -> &BigInt {
        &self.degree
    }

    pub fn char_poly(&self) -> &IntPolynomial {
        &self.spectral.char_poly
    }

    pub fn spectral(&self) -> &SpectralData {
        &self.spectral
    }

    /// Certified `ε` with every eigenvalue modulus at least `1 + ε`.
    pub fn margin(&self) -> &Rational {
        &self.margin
    }

    pub fn margin_f64(&self) -> f64 {
        to_f64(&self.margin)
    }

    pub fn image(&self, g: &ClosedSubgroup) -> Result<ClosedSubgroup> {
        g.check_dim(self.dim())?;
        Ok(ClosedSubgroup::from_lattice(g.dual().preimage(&self.transpose)))
    }

    pub fn preimage(&self, g: &ClosedSubgroup) -> Result<ClosedSubgroup> {
        g.check_dim(self.dim())?;
        Ok(ClosedSubgroup::from_lattice(g.dual().image(&self.transpose)))
    }

    pub fn apply_point(&self, x: &TorusPoint) -> TorusPoint {
        x.apply(&self.matrix)
    }

    /// `E(G + y) = E(G) + E(y)`
    pub fn apply_coset(&self, c: &Coset) -> Result<Coset> {
        Coset::new(self.image(c.subgroup())?, self.apply_point(c.translate()))
    }

    /// `E^k(G)` by repeated application.
    pub fn image_pow(&self, g: &ClosedSubgroup, k: usize) -> Result<ClosedSubgroup> {
        let mut h = g.clone();
        for _ in 0..k {
            h = self.image(&h)?;
        }
        Ok(h)
    }
}

pub fn validate_expanding(m: &IntMatrix) -> Result<ExpandingEndo> {
    validate_expanding_with(m, 64, DEFAULT_TOLERANCE)
}

/// Accepts `m` when every certified eigenvalue modulus lower bound exceeds 1.
/// Rejects as soon as some modulus upper bound is at most `1 + tol`, or when
/// the ladder is exhausted without certifying the remaining roots.
pub fn validate_expanding_with(m: &IntMatrix, bits: u32, tol: f64) -> Result<ExpandingEndo> {
    m.require_square()?;
    let cp = char_poly(m)?;
    let fact = factor_over_integers(&cp)?;
    let one = Rational::from_integer(1.into());
    let cutoff = one.clone() + crate::num::from_f64(tol);
    let decided = |d: &crate::spectral::RootData| {
        d.roots.iter().all(|r| r.modulus_lo > one || r.modulus_hi <= cutoff)
    };
    let data = certify_until(&fact, &ladder(bits), decided)?;
    if let Some(bad) = data
        .roots
        .iter()
        .filter(|r| r.modulus_lo <= one)
        .min_by(|a, b| a.modulus_hi.cmp(&b.modulus_hi))
    {
        let z = bad.approx();
        return Err(Error::NotExpanding { re: z.re, im: z.im, modulus: bad.modulus() });
    }
    let margin = data.min_modulus_lo() - one;
    let spectral = from_roots(cp, data);
    Ok(ExpandingEndo {
        transpose: m.transpose(),
        degree: m.det()?.abs(),
        matrix: m.clone(),
        spectral,
        margin,
    })
}

/// `|det E|` without validation.
pub fn degree(m: &IntMatrix) -> Result<BigInt> {
    Ok(m.det()?.abs())
}

/// `(E(G))^⊥ = { l : Eᵀ l ∈ G^⊥ }`, for any square `E`.
pub fn image_subgroup(e: &IntMatrix, g: &ClosedSubgroup) -> Result<ClosedSubgroup> {
    g.check_dim(e.require_square()?)?;
    Ok(ClosedSubgroup::from_lattice(g.dual().preimage(&e.transpose())))
}

/// `(E^{-1}(G))^⊥ = Eᵀ(G^⊥)`
pub fn preimage_subgroup(e: &IntMatrix, g: &ClosedSubgroup) -> Result<ClosedSubgroup> {
    g.check_dim(e.require_square()?)?;
    Ok(ClosedSubgroup::from_lattice(g.dual().image(&e.transpose())))
}
