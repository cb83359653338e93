use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{smith_normal_form, IntMatrix};
use crate::num::Rational;
use crate::torus::TorusPoint;

/// Solutions of `E x = x` on `T^n`, sorted.
///
/// With `U (E - I) V = D`, `(E - I) x ∈ Z^n` iff `D V^{-1} x ∈ Z^n`, so the
/// fixed points are `x = V w` with `w_i ∈ {0, 1/s_i, ..., (s_i - 1)/s_i}`.
pub fn fixed_points(e: &IntMatrix) -> Result<Vec<TorusPoint>> {
    let n = e.require_square()?;
    let snf = smith_normal_form(&e.sub_identity());
    if snf.rank() < n {
        return Err(Error::Precondition("1 is an eigenvalue; the fixed set is not finite".into()));
    }
    let s: Vec<BigInt> = snf.invariant_factors.clone();
    let total: BigInt = s.iter().product();
    if total > BigInt::from(1_000_000) {
        return Err(Error::BudgetExceeded { what: "fixed point enumeration", budget: 1_000_000 });
    }
    let sizes: Vec<u64> = s.iter().map(|v| v.to_u64().expect("bounded above")).collect();
    let mut idx = vec![0u64; n];
    let mut out = Vec::with_capacity(total.to_usize().unwrap_or(0));
    loop {
        let w: Vec<Rational> = idx
            .iter()
            .zip(&s)
            .map(|(&a, si)| Rational::new(BigInt::from(a), si.clone()))
            .collect();
        out.push(TorusPoint::new(snf.v.mul_rat_vec(&w)));
        let mut k = 0;
        while k < n {
            idx[k] += 1;
            if idx[k] < sizes[k] {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == n {
            break;
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Oracle: every `k / N` grid point with `N = |det(E - I)|` that is fixed.
pub fn fixed_points_by_enumeration(e: &IntMatrix) -> Result<Vec<TorusPoint>> {
    let n = e.require_square()?;
    let a = e.sub_identity();
    let det = a.det()?;
    if det.is_zero() {
        return Err(Error::Precondition("1 is an eigenvalue; the fixed set is not finite".into()));
    }
    let big_n = det.magnitude().to_u64().filter(|&v| v.pow(n as u32) <= 5_000_000).ok_or(
        Error::BudgetExceeded { what: "fixed point oracle grid", budget: 5_000_000 },
    )?;
    let mut out = Vec::new();
    let mut idx = vec![0u64; n];
    loop {
        let p = TorusPoint::new(idx.iter().map(|&k| Rational::new(BigInt::from(k), BigInt::from(big_n))).collect());
        if p.apply(e) == p {
            out.push(p);
        }
        let mut k = 0;
        while k < n {
            idx[k] += 1;
            if idx[k] < big_n {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == n {
            break;
        }
    }
    out.sort();
    Ok(out)
}
