//! Property tests backed by independent oracles: characteristic-polynomial
//! root bisection for norms and radii, a hand-rolled two-sequence loop for
//! the engine reductions.

use gave_kit::linalg::{factorize, spectral_radius, two_norm, DenseMatrix, Vector};
use gave_kit::presets::{instantiate, MethodConfig, MethodSpec};
use gave_kit::problem::GaveProblem;
use gave_kit::solver::{solve_grms, solve_one_step, StopRule};
use proptest::prelude::*;

/// Coefficients of det(lambda I - U) for n <= 3, lowest degree first,
/// with the monic leading coefficient implied.
fn char_poly(u: &DenseMatrix) -> Vec<f64> {
    match u.rows() {
        1 => vec![-u.get(0, 0)],
        2 => {
            let tr = u.get(0, 0) + u.get(1, 1);
            let det = u.get(0, 0) * u.get(1, 1) - u.get(0, 1) * u.get(1, 0);
            vec![det, -tr]
        }
        3 => {
            let a = u;
            let tr = a.get(0, 0) + a.get(1, 1) + a.get(2, 2);
            let m01 = a.get(0, 0) * a.get(1, 1) - a.get(0, 1) * a.get(1, 0);
            let m02 = a.get(0, 0) * a.get(2, 2) - a.get(0, 2) * a.get(2, 0);
            let m12 = a.get(1, 1) * a.get(2, 2) - a.get(1, 2) * a.get(2, 1);
            let det = a.get(0, 0) * (a.get(1, 1) * a.get(2, 2) - a.get(1, 2) * a.get(2, 1))
                - a.get(0, 1) * (a.get(1, 0) * a.get(2, 2) - a.get(1, 2) * a.get(2, 0))
                + a.get(0, 2) * (a.get(1, 0) * a.get(2, 1) - a.get(1, 1) * a.get(2, 0));
            vec![-det, m01 + m02 + m12, -tr]
        }
        _ => panic!("oracle handles n <= 3 only"),
    }
}

fn eval_monic(coeffs: &[f64], x: f64) -> f64 {
    let mut acc = 1.0;
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Largest real root of a monic polynomial known to have one at or below
/// `hi`, by downward grid scan plus bisection.
fn largest_real_root(coeffs: &[f64], hi: f64) -> f64 {
    let lo_bound = -hi;
    let steps = 20_000;
    let h = (hi - lo_bound) / steps as f64;
    let mut right = hi;
    let mut p_right = eval_monic(coeffs, right);
    for k in 1..=steps {
        let left = hi - k as f64 * h;
        let p_left = eval_monic(coeffs, left);
        if (p_left <= 0.0 && p_right >= 0.0) || (p_left >= 0.0 && p_right <= 0.0) {
            let (mut a, mut b) = (left, right);
            let mut pa = p_left;
            for _ in 0..200 {
                let mid = 0.5 * (a + b);
                let pm = eval_monic(coeffs, mid);
                if (pm <= 0.0) == (pa <= 0.0) {
                    a = mid;
                    pa = pm;
                } else {
                    b = mid;
                }
            }
            return 0.5 * (a + b);
        }
        right = left;
        p_right = p_left;
    }
    // no sign change: fall back to the stationary maximum near hi
    hi
}

fn square(n: usize, data: Vec<f64>) -> DenseMatrix {
    DenseMatrix::from_vec(n, n, data).unwrap()
}

fn gram(u: &DenseMatrix) -> DenseMatrix {
    u.transpose().matmul(u).unwrap()
}

proptest! {
    /// two_norm(U)^2 is the dominant eigenvalue of U^T U (char-poly oracle).
    #[test]
    fn two_norm_matches_char_poly_oracle(
        (n, data) in (1usize..=3).prop_flat_map(|n| {
            (Just(n), prop::collection::vec(-1.0f64..1.0, n * n))
        })
    ) {
        let u = square(n, data);
        let g = gram(&u);
        let trace: f64 = (0..n).map(|i| g.get(i, i)).sum();
        let lambda = largest_real_root(&char_poly(&g), trace + 1.0);
        let sigma2 = two_norm(&u).powi(2);
        prop_assert!((sigma2 - lambda).abs() <= 1e-8 * (1.0 + lambda.abs()),
            "sigma^2 = {sigma2}, oracle = {lambda}");
    }

    /// Nonnegative spectral radius matches the char-poly oracle (the Perron
    /// root is the largest real root).
    #[test]
    fn nonnegative_radius_matches_char_poly_oracle(
        (n, data) in (1usize..=3).prop_flat_map(|n| {
            (Just(n), prop::collection::vec(0.0f64..1.0, n * n))
        })
    ) {
        let u = square(n, data);
        let max_row_sum = (0..n)
            .map(|i| u.row(i).iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0f64, f64::max);
        let oracle = largest_real_root(&char_poly(&u), max_row_sum + 1.0);
        let rho = spectral_radius(&u).unwrap();
        prop_assert!((rho - oracle).abs() <= 1e-8 * (1.0 + oracle.abs()),
            "rho = {rho}, oracle = {oracle}");
    }

    /// solve(factorize(M), M x) returns x for diagonally dominant M.
    #[test]
    fn lu_solve_roundtrip(
        (n, off, xs) in (1usize..=50).prop_flat_map(|n| {
            (
                Just(n),
                prop::collection::vec(-1.0f64..1.0, n * n),
                prop::collection::vec(-10.0f64..10.0, n),
            )
        })
    ) {
        let mut m = square(n, off);
        for i in 0..n {
            let row_sum: f64 = m.row(i).iter().map(|v| v.abs()).sum();
            m.set(i, i, row_sum + 1.0);
        }
        let x = Vector::from_vec(xs);
        let b = m.matvec(&x).unwrap();
        let got = factorize(&m).unwrap().solve(&b).unwrap();
        let err = got.sub(&x).norm2();
        prop_assert!(err <= 1e-9 * x.norm2().max(1.0), "err = {err}");
    }

    /// two_norm sits between any Rayleigh probe and the Frobenius norm.
    #[test]
    fn two_norm_bracketed_for_larger_matrices(
        (n, data, probe) in (1usize..=20).prop_flat_map(|n| {
            (
                Just(n),
                prop::collection::vec(-1.0f64..1.0, n * n),
                prop::collection::vec(-1.0f64..1.0, n),
            )
        })
    ) {
        let u = square(n, data);
        let sigma = two_norm(&u);
        let frob: f64 = (0..n)
            .flat_map(|i| u.row(i).iter().map(|v| v * v))
            .sum::<f64>()
            .sqrt();
        prop_assert!(sigma <= frob + 1e-10);
        let v = Vector::from_vec(probe);
        if v.norm2() > 0.0 {
            let rayleigh = u.matvec(&v).unwrap().norm2() / v.norm2();
            prop_assert!(rayleigh <= sigma + 1e-8 * (1.0 + sigma));
        }
    }

    /// The nonnegative spectral radius lies between the extreme row sums.
    #[test]
    fn nonnegative_radius_within_row_sum_bounds(
        (n, data) in (3usize..=8).prop_flat_map(|n| {
            (Just(n), prop::collection::vec(0.0f64..2.0, n * n))
        })
    ) {
        let u = square(n, data);
        let sums: Vec<f64> = (0..n).map(|i| u.row(i).iter().sum()).collect();
        let lo = sums.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = sums.iter().cloned().fold(0.0f64, f64::max);
        let rho = spectral_radius(&u).unwrap();
        prop_assert!(rho >= lo - 1e-8 * (1.0 + lo), "rho {rho} below {lo}");
        prop_assert!(rho <= hi + 1e-8 * (1.0 + hi), "rho {rho} above {hi}");
    }

    /// Matrix Market write/read round trips are bitwise exact.
    #[test]
    fn matrix_market_roundtrip(
        (rows, cols, data) in (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| {
            (Just(r), Just(c), prop::collection::vec(
                prop_oneof![3 => -1e3f64..1e3, 1 => Just(0.0)], r * c))
        })
    ) {
        let m = DenseMatrix::from_vec(rows, cols, data).unwrap();
        let mut buf = Vec::new();
        gave_kit::linalg::write_matrix(&mut buf, &m).unwrap();
        let back = gave_kit::linalg::read_matrix(&buf[..]).unwrap();
        prop_assert_eq!(back, m);
    }

    /// two_norm is submultiplicative on sampled pairs.
    #[test]
    fn two_norm_submultiplicative(
        (n, da, db) in (1usize..=6).prop_flat_map(|n| {
            (
                Just(n),
                prop::collection::vec(-2.0f64..2.0, n * n),
                prop::collection::vec(-2.0f64..2.0, n * n),
            )
        })
    ) {
        let a = square(n, da);
        let b = square(n, db);
        let prod = a.matmul(&b).unwrap();
        prop_assert!(two_norm(&prod) <= two_norm(&a) * two_norm(&b) + 1e-10);
    }
}

/// Direct transcription of the two-sequence relaxed-splitting update, kept
/// independent of the engine for the embedding-equivalence checks.
fn rms_direct(
    p: &GaveProblem,
    m: &DenseMatrix,
    tau: f64,
    x0: &Vector,
    y0: &Vector,
    sweeps: usize,
) -> Vec<Vector> {
    let lu = factorize(m).unwrap();
    let n_split = m.sub(p.a()).unwrap();
    let mut x = x0.clone();
    let mut y = y0.clone();
    let mut out = Vec::new();
    for _ in 0..sweeps {
        let mut rhs = n_split.matvec(&x).unwrap();
        rhs.axpy(1.0, &p.b().matvec(&y).unwrap());
        rhs.axpy(1.0, p.rhs());
        let x_new = lu.solve(&rhs).unwrap();
        let mut y_new = y.scale(1.0 - tau);
        y_new.axpy(tau, &x_new.abs());
        x = x_new;
        y = y_new;
        out.push(x.clone());
    }
    out
}

fn engine_iterates(p: &GaveProblem, cfg: &MethodConfig, x0: &Vector, y0: &Vector, sweeps: usize) -> Vec<Vector> {
    (1..=sweeps)
        .map(|k| {
            let stop = StopRule::new(1e-300, k).unwrap();
            match cfg {
                MethodConfig::Grms(c) => solve_grms(p, c, x0, y0, &stop).unwrap().x,
                MethodConfig::OneStep(c) => solve_one_step(p, c, x0, &stop).unwrap().x,
            }
        })
        .collect()
}

fn max_deviation(a: &[Vector], b: &[Vector]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.sub(y).norm2())
        .fold(0.0, f64::max)
}

#[test]
fn rms_embedding_matches_direct_loop() {
    let (p, _, rms) = gave_kit::problem::gen_example_4_1();
    let cfg = instantiate(&p, &MethodSpec::rms(rms.m.clone(), rms.tau)).unwrap();
    let x0 = Vector::from_slice(&[0.3, -0.7, 0.1, 0.9]);
    let y0 = Vector::from_slice(&[-0.2, 0.4, 0.0, 1.0]);
    let got = engine_iterates(&p, &cfg, &x0, &y0, 12);
    let want = rms_direct(&p, &rms.m, rms.tau, &x0, &y0, 12);
    assert!(max_deviation(&got, &want) < 1e-12);
}

#[test]
fn rms_with_unit_tau_matches_newton_splitting() {
    // tau = 1 and y0 = |x0| collapse the two-sequence iteration onto the
    // one-step Newton-type scheme with M1 = M, N1 = M - A
    let (p, _, rms) = gave_kit::problem::gen_example_4_1();
    let x0 = Vector::from_slice(&[0.5, -0.1, 0.2, -0.4]);
    let two_seq = rms_direct(&p, &rms.m, 1.0, &x0, &x0.abs(), 12);
    let cfg = instantiate(
        &p,
        &MethodSpec::new(gave_kit::presets::MethodName::Nms).with_matrix("M", rms.m.clone()),
    )
    .unwrap();
    let one = engine_iterates(&p, &cfg, &x0, &x0, 12);
    assert!(max_deviation(&two_seq, &one) < 1e-12);
}
