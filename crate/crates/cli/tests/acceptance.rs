//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::io::Write;
use std::process::{Command, Stdio};
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use torus_core::asymptotic::{verify_flat_bound, ManifoldPatch, Sampling, DEFAULT_THRESHOLD};
use torus_core::dynamics::orbit::LimitSource;
use torus_core::dynamics::{fixed_points, image_subgroup, orbit_subgroup, validate_expanding};
use torus_core::lab::{build_invariant_union, check_invariance, periodic_part, sample_zero_set_inclusion};
use torus_core::linalg::{smith_normal_form, IntMatrix};
use torus_core::num::rat;
use torus_core::spectral::{dominant_complement, rational_part_of_dominant_complement, spectral_data, FactorTag};
use torus_core::torus::{coset_to_trig_poly, ClosedSubgroup, Coset, CosetUnion, TorusPoint};
use torus_core::wire::SubgroupDto;
use torus_core::Error;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn random_rows(rng: &mut ChaCha8Rng, r: usize, c: usize, bound: i64) -> Vec<Vec<i64>> {
    (0..r).map(|_| (0..c).map(|_| rng.gen_range(-bound..=bound)).collect()).collect()
}

fn random_expanding(rng: &mut ChaCha8Rng, max_n: usize, bound: i64) -> IntMatrix {
    loop {
        let n = rng.gen_range(1..=max_n);
        let m = IntMatrix::from_i64(&random_rows(rng, n, n, bound));
        if validate_expanding(&m).is_ok() {
            return m;
        }
    }
}

fn random_connected(rng: &mut ChaCha8Rng, n: usize) -> ClosedSubgroup {
    let k = rng.gen_range(0..=n);
    ClosedSubgroup::from_dual_i64(n, &random_rows(rng, k, n, 2)).connected_component()
}

// ---- independent integer oracles ----

fn det_i128(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 1 {
        return m[0][0];
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i128>> =
                m[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect()).collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            s * m[0][j] * det_i128(&minor)
        })
        .sum()
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// `d_k` = gcd of all `k x k` minors, stopping at the first zero.
fn minor_gcds(m: &[Vec<i64>]) -> Vec<i128> {
    let (r, c) = (m.len(), m[0].len());
    let mut out = Vec::new();
    for k in 1..=r.min(c) {
        let mut g = 0;
        for rs in subsets(r, k) {
            for cs in subsets(c, k) {
                let sub: Vec<Vec<i128>> = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j] as i128).collect()).collect();
                g = gcd(g, det_i128(&sub));
            }
        }
        if g == 0 {
            break;
        }
        out.push(g);
    }
    out
}

/// Fixed points of `E` by scanning `Z^n / d` with `d = |det(E - I)|`.
fn fixed_points_oracle(rows: &[Vec<i64>]) -> BTreeSet<TorusPoint> {
    let n = rows.len();
    let a: Vec<Vec<i64>> =
        (0..n).map(|i| (0..n).map(|j| rows[i][j] - i64::from(i == j)).collect()).collect();
    let d = det_i128(&a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect::<Vec<_>>()).abs() as i64;
    let mut out = BTreeSet::new();
    let mut k = vec![0i64; n];
    loop {
        if a.iter().all(|r| r.iter().zip(&k).map(|(x, y)| x * y).sum::<i64>().rem_euclid(d) == 0) {
            out.insert(TorusPoint::from_fractions(&k.iter().map(|&x| (x, d)).collect::<Vec<_>>()));
        }
        let mut i = 0;
        while i < n {
            k[i] += 1;
            if k[i] < d {
                break;
            }
            k[i] = 0;
            i += 1;
        }
        if i == n {
            return out;
        }
    }
}

// ---- criteria ----

fn smith_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for case in 0..1000 {
        let (r, c) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let rows = random_rows(&mut rng, r, c, 10);
        let m = IntMatrix::from_i64(&rows);
        let s = smith_normal_form(&m);
        if s.u.mul(&m).mul(&s.v) != s.d || !s.u.is_unimodular() || !s.v.is_unimodular() {
            return outcome(false, format!("case {case}: UMV != D or non-unimodular"));
        }
        if s.invariant_factors.windows(2).any(|w| !(&w[1] % &w[0]).is_zero()) {
            return outcome(false, format!("case {case}: divisibility chain broken"));
        }
        let oracle: Vec<BigInt> = minor_gcds(&rows).into_iter().map(BigInt::from).collect();
        if s.elementary_divisors != oracle {
            return outcome(false, format!("case {case}: d_k {:?} vs minors {:?}", s.elementary_divisors, oracle));
        }
    }
    outcome(true, "1000 matrices")
}

fn duality_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for case in 0..500 {
        let n = rng.gen_range(1..=4);
        let k = rng.gen_range(0..=n);
        let g = ClosedSubgroup::from_dual_i64(n, &random_rows(&mut rng, k, n, 5));
        let json = serde_json::to_string(&SubgroupDto::from(&g)).unwrap();
        let back: SubgroupDto = serde_json::from_str(&json).unwrap();
        if back.to_subgroup().unwrap() != g || ClosedSubgroup::from_lattice(g.dual().clone()) != g {
            return outcome(false, format!("case {case}: dual round trip"));
        }
        let c = g.connected_component();
        let h = c.complement().unwrap();
        if !c.intersect(&h).unwrap().is_trivial() || !c.sum(&h).unwrap().is_full() {
            return outcome(false, format!("case {case}: complement identities"));
        }
    }
    outcome(true, "500 subgroups; complements taken of identity components")
}

fn fixed_point_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut done = 0;
    while done < 100 {
        let n = rng.gen_range(1..=3);
        let rows = random_rows(&mut rng, n, n, if n == 3 { 3 } else { 5 });
        let e = IntMatrix::from_i64(&rows);
        if validate_expanding(&e).is_err() {
            continue;
        }
        done += 1;
        let pts = fixed_points(&e).unwrap();
        let det = e.sub_identity().det().unwrap().abs();
        if BigInt::from(pts.len()) != det {
            return outcome(false, format!("{rows:?}: {} points, |det(E-I)| = {det}", pts.len()));
        }
        if pts.iter().any(|p| &p.apply(&e) != p) {
            return outcome(false, format!("{rows:?}: a reported point is not fixed"));
        }
        if pts.into_iter().collect::<BTreeSet<_>>() != fixed_points_oracle(&rows) {
            return outcome(false, format!("{rows:?}: disagrees with enumeration"));
        }
    }
    outcome(true, "100 matrices, all cross-checked by enumeration")
}

fn orbit_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut cycles, mut tail, mut misses) = (0, 0, 0);
    for case in 0..100 {
        let e = random_expanding(&mut rng, 3, 3);
        let h = random_connected(&mut rng, e.rows());
        match orbit_subgroup(&e, &h, 64, 6) {
            Ok(r) => {
                let p = r.period.as_ref().unwrap();
                let mut g = p.subgroup.clone();
                for _ in 0..p.period {
                    g = image_subgroup(&e, &g).unwrap();
                }
                if g != p.subgroup || p.subgroup.dim() < h.dim() || !r.containment_holds() {
                    return outcome(false, format!("case {case}: periodic limit check failed"));
                }
                match p.source {
                    LimitSource::Cycle => cycles += 1,
                    LimitSource::TailSum => tail += 1,
                }
            }
            Err(Error::OrbitBudgetExceeded(r)) if r.approximate && r.containment_holds() => misses += 1,
            Err(other) => return outcome(false, format!("case {case}: {other}")),
        }
    }
    let rate = (cycles + tail) as f64 / 100.0;
    outcome(
        rate >= 0.8,
        format!("detected {:.0}% ({cycles} orbit cycles, {tail} via tail sum, {misses} budget misses)", rate * 100.0),
    )
}

fn invariance_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut built = 0;
    let mut attempts = 0;
    while built < 200 {
        attempts += 1;
        if attempts > 2000 {
            return outcome(false, format!("only {built} unions constructed"));
        }
        let e = random_expanding(&mut rng, 3, 3);
        let n = e.rows();
        let seeds: Vec<Coset> = (0..rng.gen_range(1..=3))
            .map(|_| {
                let g = random_connected(&mut rng, n);
                let y: Vec<(i64, i64)> = (0..n).map(|_| (rng.gen_range(0..6), rng.gen_range(1..7))).collect();
                Coset::new(g, TorusPoint::from_fractions(&y)).unwrap()
            })
            .collect();
        let Ok(b) = build_invariant_union(&e, &seeds, 64) else { continue };
        let Ok(s) = periodic_part(&e, &b.union, 64) else { continue };
        let v = check_invariance(&e, &s).unwrap();
        if !v.forward {
            continue;
        }
        built += 1;
        if !v.equal {
            return outcome(false, format!("S in E(S) but not equal for E = {:?}", e.to_rows()));
        }
    }
    outcome(true, "200 unions with S in E(S), all equal")
}

fn spectral_suite() -> Outcome {
    let close = |a: f64, b: f64| (a - b).abs() < 1e-12;
    let d = IntMatrix::diagonal(&[2, 3]);
    let s = spectral_data(&d).unwrap();
    let w = dominant_complement(&d, &s).unwrap();
    let ok1 = s.sigma == 3.0 && s.sigma1 == Some(2.0) && w.exact && w.basis_f64() == vec![vec![1.0, 0.0]];

    let sym = IntMatrix::from_i64(&[[3, 1], [1, 3]]);
    let s = spectral_data(&sym).unwrap();
    let w = dominant_complement(&sym, &s).unwrap();
    let b = w.basis_f64();
    let ok2 = s.sigma == 4.0 && s.sigma1 == Some(2.0) && w.exact && b.len() == 1 && b[0][0] == -b[0][1];

    let irr = IntMatrix::from_i64(&[[2, 1], [1, 3]]);
    let s = spectral_data(&irr).unwrap();
    let ok3 = close(s.sigma, (5.0 + 5f64.sqrt()) / 2.0)
        && s.sigma1.is_some_and(|x| close(x, (5.0 - 5f64.sqrt()) / 2.0))
        && s.factors.iter().all(|f| f.tag == FactorTag::Mixed)
        && !dominant_complement(&irr, &s).unwrap().exact
        && rational_part_of_dominant_complement(&irr, &s).dim() == 0;
    if !(ok1 && ok2 && ok3) {
        return outcome(false, format!("canonical: diag(2,3) {ok1}, [[3,1],[1,3]] {ok2}, [[2,1],[1,3]] {ok3}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..100 {
        let e = random_expanding(&mut rng, 3, 4);
        let s = spectral_data(&e).unwrap();
        if s.g_below().mul(&s.g_at()).mul(&s.g_mixed()) != s.char_poly {
            return outcome(false, format!("factor product mismatch for {:?}", e.to_rows()));
        }
    }
    outcome(true, "3 canonical matrices, 100 factor products")
}

fn asymptotic_suite() -> Outcome {
    let curve = |c: &[&str]| ManifoldPatch::curve(c, rat(-1, 1), rat(1, 1)).unwrap();
    let base = Sampling::default();
    let e = IntMatrix::diagonal(&[3, 2]);
    let p = curve(&["t", "(pow t 2)"]);
    let a = verify_flat_bound(&e, &p, &[rat(0, 1)], &[1.0, 0.0], 8, &base, DEFAULT_THRESHOLD).unwrap();
    let da = a.distances();
    let dominated = a.dominated(2.0);
    let tail_small = da[da.len() - 3..].iter().all(|&x| x < 1e-3);

    let b = verify_flat_bound(&e, &p, &[rat(0, 1)], &[1.0, 0.0], 8, &base.doubled(), DEFAULT_THRESHOLD).unwrap();
    let drift = da.iter().zip(b.distances()).map(|(x, y)| (x - y).abs() / x.max(y)).fold(0.0, f64::max);

    let e = IntMatrix::diagonal(&[5, 2]);
    let p = curve(&["(pow t 2)", "t"]);
    let c = verify_flat_bound(&e, &p, &[rat(0, 1)], &[0.0, 1.0], 8, &base, DEFAULT_THRESHOLD).unwrap();
    let dc = c.distances();
    let half = dc.len() / 2;
    let increases = dc[half..].windows(2).all(|w| w[1] > w[0]);

    outcome(
        dominated && tail_small && increases && drift < 0.1,
        format!(
            "diag(3,2): dominated {dominated}, last three < 1e-3 {tail_small} (d_8 = {:.2e}); \
             diag(5,2) increasing {increases}; doubling drift {:.1}%",
            da[da.len() - 1],
            drift * 100.0
        ),
    )
}

fn lab_suite() -> Outcome {
    let rot = IntMatrix::from_i64(&[[0, -1], [2, 0]]);
    let x1 = ClosedSubgroup::axis(2, 0);
    let x2 = ClosedSubgroup::axis(2, 1);
    let axes = CosetUnion::from_pairs(2, vec![(x1.clone(), TorusPoint::zero(2)), (x2.clone(), TorusPoint::zero(2))])
        .unwrap();
    let built = build_invariant_union(&rot, &[Coset::new(x1.clone(), TorusPoint::zero(2)).unwrap()], 64).unwrap();
    let orbit = orbit_subgroup(&rot, &x1, 64, 6).unwrap();
    let period = orbit.period.as_ref().unwrap();
    let construction = built.union == axes
        && built.verdict.equal
        && period.period == 2
        && period.subgroup == x1
        && image_subgroup(&rot, &x1).unwrap() == x2;

    let diag = IntMatrix::diagonal(&[2, 3]);
    let mut invariant_violations = 0;
    let mut invariant_zeros = 0;
    for (e, g) in [(&diag, &x1), (&diag, &x2), (&IntMatrix::diagonal(&[2, 2]), &ClosedSubgroup::from_dual_i64(2, &[[1, -1]]))] {
        let h = coset_to_trig_poly(g, &TorusPoint::zero(2)).unwrap();
        let r = sample_zero_set_inclusion(&h, e, 512, 1e-6).unwrap();
        invariant_violations += r.violations;
        invariant_zeros += r.zero_samples;
    }
    let shifted = coset_to_trig_poly(&x2, &TorusPoint::from_fractions(&[(1, 3), (0, 1)])).unwrap();
    let r = sample_zero_set_inclusion(&shifted, &diag, 512, 1e-6).unwrap();
    outcome(
        construction && invariant_zeros > 0 && invariant_violations == 0 && r.violation_rate > 0.0,
        format!(
            "period-2 axes {construction}; invariant cosets {invariant_violations} violations over {invariant_zeros} \
             zero samples; x1 = 1/3 line violation rate {:.3}",
            r.violation_rate
        ),
    )
}

const SUBGROUP: &str = r#"{"n": 2, "dual": [[1, 0]]}"#;

fn cli_matrix() -> Vec<(Vec<&'static str>, String)> {
    let m = r#"{"matrix": [[0, -1], [2, 0]]}"#.to_string();
    let patch = r#""patch": {"components": ["t", "(pow t 2)"], "domain": [["-1", "1"]]}, "t0": ["0"]"#;
    let small = r#""sampling": {"segment_points": 40, "patch_points": 2000}"#;
    let union = format!(r#"{{"n": 2, "cosets": [{{"subgroup": {SUBGROUP}, "translate": ["0", "0"]}}]}}"#);
    let axes = r#"{"n": 2, "cosets": [{"subgroup": {"n": 2, "dual": [[1, 0]]}, "translate": ["0", "0"]}, {"subgroup": {"n": 2, "dual": [[0, 1]]}, "translate": ["0", "0"]}]}"#;
    vec![
        (vec!["snf"], "[[2, 4, 4], [-6, 6, 12], [10, -4, -16]]".into()),
        (vec!["hnf"], "[[2, 4], [3, 7]]".into()),
        (vec!["factor"], r#"{"matrix": [[2, 1], [1, 3]]}"#.into()),
        (vec!["subgroup", "sum"], format!(r#"{{"a": {SUBGROUP}, "b": {{"n": 2, "dual": [[0, 1]]}}}}"#)),
        (vec!["subgroup", "intersect"], format!(r#"{{"a": {SUBGROUP}, "b": {{"n": 2, "dual": [[0, 2]]}}}}"#)),
        (vec!["subgroup", "complement"], r#"{"subgroup": {"n": 3, "dual": [[1, 2, 3]]}}"#.into()),
        (vec!["subgroup", "contains"], format!(r#"{{"subgroup": {SUBGROUP}, "point": ["0", "1/3"]}}"#)),
        (vec!["subgroup", "from-dual"], r#"{"n": 2, "generators": [[2, 4]]}"#.into()),
        (vec!["subgroup", "from-subspace"], r#"{"n": 3, "columns": [["1", "1/2", "0"]]}"#.into()),
        (vec!["subgroup", "invariant-subset"], format!(r#"{{"union": {axes}, "subgroup": {{"n": 2, "dual": [[0, 1]]}}}}"#)),
        (vec!["endo", "check"], m.clone()),
        (vec!["endo", "check"], "[[1, 1], [0, 2]]".into()),
        (vec!["endo", "degree"], m.clone()),
        (vec!["endo", "fixed-points"], "[[2, 1], [1, 3]]".into()),
        (vec!["endo", "image"], format!(r#"{{"matrix": [[0, -1], [2, 0]], "subgroup": {SUBGROUP}}}"#)),
        (vec!["endo", "preimage"], format!(r#"{{"matrix": [[2, 1], [1, 3]], "subgroup": {SUBGROUP}}}"#)),
        (vec!["endo", "orbit"], format!(r#"{{"matrix": [[0, -1], [2, 0]], "subgroup": {SUBGROUP}}}"#)),
        (vec!["endo", "distance"], r#"{"a": {"n": 2, "dual": [[0, 1]]}, "b": {"n": 2, "dual": [[0, 1], [5, 0]]}, "max_radius": 10}"#.into()),
        (vec!["spectral", "data"], "[[3, 1], [1, 3]]".into()),
        (vec!["spectral", "dominant-complement"], "[[2, 1], [1, 3]]".into()),
        (vec!["spectral", "rational-part"], r#"{"basis": [[1.0, 2.0000000001]]}"#.into()),
        (vec!["asym", "distance"], format!(r#"{{"matrix": [[3, 0], [0, 2]], {patch}, "j": 3, {small}}}"#)),
        (vec!["asym", "verify"], format!(r#"{{"matrix": [[3, 0], [0, 2]], {patch}, "j_max": 4, {small}}}"#)),
        (vec!["asym", "limit-direction"], r#"{"matrix": [[2, 0], [0, 3]], "v": [1, 1], "subgroups": true}"#.into()),
        (vec!["lab", "apply"], format!(r#"{{"matrix": [[0, -1], [2, 0]], "union": {union}}}"#)),
        (vec!["lab", "check"], format!(r#"{{"matrix": [[0, -1], [2, 0]], "union": {axes}}}"#)),
        (
            vec!["lab", "build"],
            format!(r#"{{"matrix": [[0, -1], [2, 0]], "seeds": [{{"subgroup": {SUBGROUP}, "translate": ["0", "0"]}}]}}"#),
        ),
        (vec!["lab", "invinv"], format!(r#"{{"matrix": [[2, 0], [0, 3]], "union": {axes}, "subgroup": {{"n": 2, "dual": [[0, 1]]}}}}"#)),
        (
            vec!["lab", "prop-irr"],
            format!(r#"{{"matrix": [[2, 0], [0, 3]], "dominant": true, "k": {union}, "x": ["0", "0"]}}"#),
        ),
        (
            vec!["lab", "sample-zeros"],
            format!(r#"{{"matrix": [[2, 0], [0, 3]], "coset": {{"subgroup": {SUBGROUP}, "translate": ["0", "0"]}}, "resolution": 64}}"#),
        ),
    ]
}

fn run_cli(args: &[&str], input: &str) -> (Option<i32>, Vec<u8>) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_torus"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .expect("spawn torus");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (out.status.code(), out.stdout)
}

fn cli_determinism() -> Outcome {
    let cases = cli_matrix();
    for (args, input) in &cases {
        let first = run_cli(args, input);
        if !matches!(first.0, Some(0 | 1)) || first.1.is_empty() {
            return outcome(false, format!("{args:?} exited with {:?}", first.0));
        }
        let mut threaded = vec!["--threads", "4"];
        threaded.extend(args);
        for again in [run_cli(args, input), run_cli(&threaded, input)] {
            if again != first {
                return outcome(false, format!("{args:?} output differs between runs"));
            }
        }
    }
    outcome(true, format!("{} invocations, each run 3 times", cases.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("Smith normal form", smith_suite),
        ("duality", duality_suite),
        ("fixed points", fixed_point_suite),
        ("orbits", orbit_suite),
        ("invariance", invariance_suite),
        ("spectral", spectral_suite),
        ("asymptotic", asymptotic_suite),
        ("lab", lab_suite),
        ("cli determinism", cli_determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let secs = start.elapsed().as_secs_f64();
        println!("criterion {}: {} {name} ({secs:.1} s): {}", i + 1, if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.pass);
    }
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}
