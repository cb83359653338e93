//! Finite windows `L ∩ B_R` of dual lattices, where `B_R` is the sup-norm
//! box of radius `R`. Two subgroups are close when their duals agree on a
//! large window.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::Result;
use crate::linalg::Lattice;
use crate::num::Rational;
use crate::torus::ClosedSubgroup;

pub const DEFAULT_RADIUS: u32 = 32;

fn sup_norm(v: &[BigInt]) -> BigInt {
    v.iter().map(Signed::abs).max().unwrap_or_default()
}

/// Calls `f` on every nonzero vector of `l` with sup-norm at most `r`.
///
/// The Hermite basis is echelon with positive pivots, so the coefficient of
/// row `i` is confined by the pivot coordinate once the earlier coefficients
/// are fixed. Coefficients are tried in the order `0, 1, -1, 2, -2, ...`.
/// Returning `false` from `f` stops the enumeration.
pub fn for_each_in_box(l: &Lattice, r: u32, mut f: impl FnMut(&[BigInt]) -> bool) {
    let basis = l.basis();
    if basis.is_empty() {
        return;
    }
    let n = l.ambient_dim();
    let pivots: Vec<usize> = basis.iter().map(|row| row.iter().position(|x| !x.is_zero()).unwrap()).collect();
    let mut v = vec![BigInt::zero(); n];
    let radius = BigInt::from(r);
    recurse(basis, &pivots, 0, &mut v, &radius, &mut f);
}

fn recurse(
    basis: &[Vec<BigInt>],
    pivots: &[usize],
    i: usize,
    v: &mut Vec<BigInt>,
    r: &BigInt,
    f: &mut impl FnMut(&[BigInt]) -> bool,
) -> bool {
    if i == basis.len() {
        if v.iter().all(Zero::is_zero) || &sup_norm(v) > r {
            return true;
        }
        return f(v);
    }
    let p = pivots[i];
    let h = &basis[i][p];
    // need |v[p] + c h| <= r
    let lo = Rational::new(-r - &v[p], h.clone()).ceil().to_integer();
    let hi = Rational::new(r - &v[p], h.clone()).floor().to_integer();
    if lo > hi {
        return true;
    }
    let mut cs: Vec<BigInt> = Vec::new();
    let zero = BigInt::zero();
    let start = if lo <= zero && zero <= hi { zero.clone() } else if lo > zero { lo.clone() } else { hi.clone() };
    cs.push(start.clone());
    let mut k = BigInt::from(1);
    loop {
        let up = &start + &k;
        let down = &start - &k;
        let mut any = false;
        if up <= hi {
            cs.push(up);
            any = true;
        }
        if down >= lo {
            cs.push(down);
            any = true;
        }
        if !any {
            break;
        }
        k += 1;
    }
    for c in cs {
        if !c.is_zero() {
            for (x, b) in v.iter_mut().zip(&basis[i]) {
                *x += &c * b;
            }
        }
        let go_on = recurse(basis, pivots, i + 1, v, r, f);
        if !c.is_zero() {
            for (x, b) in v.iter_mut().zip(&basis[i]) {
                *x -= &c * b;
            }
        }
        if !go_on {
            return false;
        }
    }
    true
}

/// All nonzero vectors of `l ∩ B_r`.
pub fn window(l: &Lattice, r: u32) -> Vec<Vec<BigInt>> {
    let mut out = Vec::new();
    for_each_in_box(l, r, |v| {
        out.push(v.to_vec());
        true
    });
    out.sort();
    out
}

/// The sublattice generated by `l ∩ B_r`; stops early once it equals `l`.
pub fn window_lattice(l: &Lattice, r: u32) -> Lattice {
    let n = l.ambient_dim();
    let radius = BigInt::from(r);
    if l.basis().iter().all(|row| sup_norm(row) <= radius) {
        return l.clone();
    }
    let mut gens = Lattice::zero(n);
    for_each_in_box(l, r, |v| {
        if !gens.contains(v) {
            gens = gens.sum(&Lattice::new(n, &[v.to_vec()]).expect("length n"));
        }
        gens != *l
    });
    gens
}

/// Smallest sup-norm of a vector in exactly one of the two lattices, if
/// any exists within radius `r`.
pub fn first_difference(a: &Lattice, b: &Lattice, r: u32) -> Option<u32> {
    let mut best: Option<BigInt> = None;
    for (x, y) in [(a, b), (b, a)] {
        for_each_in_box(x, r, |v| {
            if !y.contains(v) {
                let s = sup_norm(v);
                if best.as_ref().is_none_or(|b| &s < b) {
                    best = Some(s);
                }
            }
            true
        });
    }
    best.map(|s| s.to_string().parse().expect("bounded by r"))
}

/// `2^{-r*}` where `r*` is the largest radius up to `max_radius` on which the
/// dual windows agree; `2^{-(max_radius + 1)}` when they agree throughout.
pub fn subgroup_window_distance(g1: &ClosedSubgroup, g2: &ClosedSubgroup, max_radius: u32) -> Result<Rational> {
    g1.check_dim(g2.ambient_dim())?;
    let agree = match first_difference(g1.dual(), g2.dual(), max_radius) {
        Some(s) => s - 1,
        None => max_radius + 1,
    };
    Ok(Rational::new(BigInt::from(1), BigInt::from(1) << agree as usize))
}
