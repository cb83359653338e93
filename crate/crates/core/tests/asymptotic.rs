use proptest::prelude::*;
use torus_core::asymptotic::{
    limit_direction, tangent_vector, tangent_vector_fd, verify_flat_bound, ManifoldPatch, Sampling, DEFAULT_THRESHOLD,
};
use torus_core::linalg::IntMatrix;
use torus_core::num::{rat, to_f64};
use torus_core::{Error, Rational};

fn component() -> impl Strategy<Value = String> {
    (-5i64..=5, -5i64..=5, 1i64..=4, -3i64..=3, 1i64..=3, 0usize..2).prop_map(|(a, b, c, d, k, var)| {
        let t = ["t1", "t2"][var];
        let u = ["t2", "t1"][var];
        format!("(+ (* {a}/{c} (pow {t} {k})) (* {b} (sin (* {d} pi {u}))) (cos (* {t} {u})) (* 1/2 {u}))")
    })
}

fn unit_interval() -> Vec<(Rational, Rational)> {
    vec![(rat(-1, 1), rat(1, 1)), (rat(-1, 1), rat(1, 1))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn symbolic_tangent_matches_finite_differences(
        comps in proptest::collection::vec(component(), 3),
        t in proptest::collection::vec((-9i64..=9, 10i64..=10), 2),
        dir in proptest::collection::vec(-2.0f64..2.0, 2),
    ) {
        let refs: Vec<&str> = comps.iter().map(String::as_str).collect();
        let patch = ManifoldPatch::parse(&["t1", "t2"], &refs, unit_interval()).unwrap();
        let t0: Vec<Rational> = t.iter().map(|&(a, b)| rat(a, b)).collect();
        let tf: Vec<f64> = t0.iter().map(to_f64).collect();
        match tangent_vector(&patch, &t0, &dir) {
            Ok(sym) => {
                let fd = tangent_vector_fd(&patch, &tf, &dir);
                let scale = sym.iter().map(|x| x * x).sum::<f64>().sqrt().max(1.0);
                for (a, b) in sym.iter().zip(&fd) {
                    prop_assert!((a - b).abs() <= 1e-6 * scale, "{a} vs {b}");
                }
            }
            Err(Error::RankDeficient) => {}
            Err(other) => return Err(TestCaseError::fail(other.to_string())),
        }
    }

    #[test]
    fn limit_directions_are_unit_vectors(
        v in proptest::collection::vec(-3.0f64..3.0, 3).prop_filter("nonzero", |v| v.iter().any(|x| x.abs() > 1e-3)),
        rows in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 3), 3),
    ) {
        let e = IntMatrix::from_i64(&rows);
        if let Ok(dirs) = limit_direction(&e, &v, 60, 1e-6) {
            for u in dirs {
                let norm = u.iter().map(|x| x * x).sum::<f64>().sqrt();
                prop_assert!((norm - 1.0).abs() < 1e-12);
            }
        }
    }
}

fn curve(c: &[&str]) -> ManifoldPatch {
    ManifoldPatch::curve(c, rat(-1, 1), rat(1, 1)).unwrap()
}

#[test]
fn diagonal_two_three_decays_for_non_eigen_tangent() {
    let e = IntMatrix::diagonal(&[2, 3]);
    let p = curve(&["t", "(+ (pow t 2) t)"]);
    let v = tangent_vector(&p, &[rat(0, 1)], &[1.0]).unwrap();
    assert_eq!(v, vec![1.0, 1.0]);
    let r = verify_flat_bound(&e, &p, &[rat(0, 1)], &v, 8, &Sampling::default(), DEFAULT_THRESHOLD).unwrap();
    assert_eq!(r.v_in_dominant_complement, Some(false));
    assert!(r.decayed, "{:?}", r.distances());
}

#[test]
fn conformal_case_decays() {
    let e = IntMatrix::diagonal(&[2, 2]);
    let p = curve(&["t", "(pow t 2)"]);
    let r = verify_flat_bound(&e, &p, &[rat(0, 1)], &[1.0, 0.0], 12, &Sampling::default(), DEFAULT_THRESHOLD).unwrap();
    for rec in &r.records {
        assert!((rec.bound_rhs - 0.5f64.powi(rec.j as i32)).abs() < 1e-12);
    }
    assert!(r.decayed);
}

#[test]
fn doubling_sampling_is_stable() {
    let e = IntMatrix::diagonal(&[3, 2]);
    let p = curve(&["t", "(pow t 2)"]);
    let base = Sampling::default();
    let a = verify_flat_bound(&e, &p, &[rat(0, 1)], &[1.0, 0.0], 8, &base, DEFAULT_THRESHOLD).unwrap();
    let b = verify_flat_bound(&e, &p, &[rat(0, 1)], &[1.0, 0.0], 8, &base.doubled(), DEFAULT_THRESHOLD).unwrap();
    for (x, y) in a.distances().iter().zip(b.distances()) {
        assert!((x - y).abs() <= 0.1 * x.max(y), "{x} vs {y}");
    }
}
