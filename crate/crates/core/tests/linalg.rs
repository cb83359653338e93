use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use torus_core::linalg::hermite::is_hermite;
use torus_core::linalg::{
    char_poly, elementary_divisors_by_minors, factor_over_integers, hermite_normal_form, smith_normal_form, IntMatrix,
    Lattice,
};

fn matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-bound..=bound, c), r)
            .prop_map(|rows| IntMatrix::from_i64(&rows))
    })
}

fn square(max_dim: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim).prop_flat_map(move |n| {
        proptest::collection::vec(proptest::collection::vec(-bound..=bound, n), n)
            .prop_map(|rows| IntMatrix::from_i64(&rows))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_form_is_exact(m in matrix(4, 10)) {
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
        prop_assert!(s.u.is_unimodular() && s.v.is_unimodular());
        for w in s.invariant_factors.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        for (i, f) in s.invariant_factors.iter().enumerate() {
            prop_assert_eq!(&s.d.row(i)[i], f);
            prop_assert!(f > &BigInt::zero());
        }
        prop_assert_eq!(s.elementary_divisors.clone(), elementary_divisors_by_minors(&m));
    }

    #[test]
    fn hermite_form_is_exact(m in matrix(4, 10)) {
        let (h, u) = hermite_normal_form(&m);
        prop_assert_eq!(u.mul(&m), h.clone());
        prop_assert!(u.is_unimodular());
        let nonzero: Vec<Vec<BigInt>> = h.to_rows().into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect();
        prop_assert!(is_hermite(&nonzero));
    }

    #[test]
    fn factorization_multiplies_back(m in square(4, 5)) {
        let cp = char_poly(&m).unwrap();
        let f = factor_over_integers(&cp).unwrap();
        prop_assert_eq!(f.product(), cp.clone());
        // Cayley-Hamilton
        prop_assert!(cp.eval_matrix(&m).to_rows().iter().flatten().all(Zero::is_zero));
    }

    #[test]
    fn lattice_operations_are_consistent(
        a in proptest::collection::vec(proptest::collection::vec(-6i64..=6, 3), 0..4),
        b in proptest::collection::vec(proptest::collection::vec(-6i64..=6, 3), 0..4),
    ) {
        let la = Lattice::from_i64(3, &a);
        let lb = Lattice::from_i64(3, &b);
        let meet = la.intersect(&lb);
        let join = la.sum(&lb);
        prop_assert!(meet.is_sublattice_of(&la) && meet.is_sublattice_of(&lb));
        prop_assert!(la.is_sublattice_of(&join) && lb.is_sublattice_of(&join));
        prop_assert!(la.is_sublattice_of(&la.saturate()));
        prop_assert!(la.saturate().is_saturated());
        prop_assert_eq!(la.saturate().rank(), la.rank());
    }
}

#[test]
fn canonical_snf_example() {
    let s = smith_normal_form(&IntMatrix::diagonal(&[2, 3]));
    assert_eq!(s.d, IntMatrix::diagonal(&[1, 6]));
    assert_eq!(s.elementary_divisors, vec![BigInt::one(), BigInt::from(6)]);
}
