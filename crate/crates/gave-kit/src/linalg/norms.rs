//! Operator 2-norm and spectral radius.

use super::{DenseMatrix, Vector};
use crate::error::{Error, Result};

const REL_TOL: f64 = 1e-10;
const MAX_SWEEPS: usize = 100_000;

/// Operator 2-norm (largest singular value).
///
/// Power iteration on `U^T U`, relative tolerance 1e-10, capped at 1e5
/// sweeps; the Gram matrix is never formed (each sweep applies `U` then
/// `U^T`), and the linearly convergent Rayleigh sequence is Aitken
/// extrapolated so the returned value meets the tolerance even for
/// clustered spectra. The iteration runs from the deterministic all-ones
/// start and from a fixed integer-hash start, returning the larger
/// estimate: banded matrices with constant row sums have the ones vector as
/// an exact non-dominant eigenvector, which would trap a single ones-start
/// run below the true norm. Rayleigh estimates approach from below, so the
/// max is sound. Returns 0 for the zero matrix.
pub fn two_norm(u: &DenseMatrix) -> f64 {
    if u.max_abs() == 0.0 {
        return 0.0;
    }
    let n = u.cols();
    let from_ones = power_gram(u, Vector::ones(n));
    let from_hash = power_gram(u, hashed_start(n));
    match (from_ones, from_hash) {
        (Some(a), Some(b)) => a.max(b),
        (Some(a), None) => a,
        (None, Some(b)) => b,
        (None, None) => 0.0,
    }
}

/// Positive start vector with no affine or symmetric structure, identical on
/// every platform (pure integer arithmetic).
fn hashed_start(n: usize) -> Vector {
    let mut v = Vec::with_capacity(n);
    for i in 0..n {
        let mut z = (i as u64).wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^= z >> 31;
        v.push(0.5 + (z >> 11) as f64 / (1u64 << 53) as f64);
    }
    Vector::from_vec(v)
}

/// Aitken extrapolation step for a linearly convergent scalar sequence:
/// given the last three values, returns the accelerated estimate and the
/// size of the applied correction when the local ratio is a contraction.
fn aitken(prev2: f64, prev: f64, current: f64) -> Option<(f64, f64)> {
    let d1 = prev - prev2;
    let d2 = current - prev;
    if d2 == 0.0 {
        return Some((current, 0.0));
    }
    if d1 == 0.0 {
        return None;
    }
    let r = d2 / d1;
    if r > 0.0 && r < 1.0 {
        let corr = d2 * r / (1.0 - r);
        Some((current + corr, corr.abs()))
    } else {
        None
    }
}

/// One power-iteration run on the implicit Gram matrix. Returns `None` when
/// the start vector is annihilated on the first sweep.
fn power_gram(u: &DenseMatrix, start: Vector) -> Option<f64> {
    let mut z = start;
    let mut nz = z.norm2();
    let mut prev = f64::NAN;
    let mut prev2 = f64::NAN;
    let mut streak = 0usize;
    for sweep in 0..MAX_SWEEPS {
        z = z.scale(1.0 / nz);
        let w = u.matvec(&z).expect("dimension checked by caller");
        let nu = w.dot(&w); // z^T (U^T U) z for unit z
        if nu == 0.0 {
            return if sweep == 0 { None } else { Some(0.0) };
        }
        if !prev.is_nan() {
            // clustered spectra converge with ratio near 1, where the raw
            // stopping rule understates the remaining error; the
            // extrapolated estimate restores the stated tolerance. Three
            // consecutive hits are required so a transient sign change in
            // the differences cannot stop the sweep early.
            if !prev2.is_nan() {
                match aitken(prev2, prev, nu) {
                    Some((acc, corr)) if corr <= REL_TOL * nu => {
                        streak += 1;
                        if streak >= 3 {
                            return Some(acc.max(nu).sqrt());
                        }
                    }
                    _ => streak = 0,
                }
            }
            // machine-stagnation backstop for sequences the extrapolation
            // cannot model (sign-alternating noise at the ulp level)
            if (nu - prev).abs() <= 1e-15 * nu {
                return Some(nu.max(prev).sqrt());
            }
        }
        prev2 = prev;
        prev = nu;
        z = u.tr_matvec(&w).expect("dimension checked by caller");
        nz = z.norm2();
        if nz == 0.0 {
            // U^T annihilates Uz: the Rayleigh quotient is already exact
            return Some(nu.sqrt());
        }
    }
    Some(prev.sqrt())
}

/// Spectral radius.
///
/// 2x2 (and 1x1) input uses the closed-form eigenvalues; larger matrices must
/// be componentwise nonnegative and use power iteration on `I + U` (the shift
/// keeps the iteration convergent for periodic nonnegative matrices), with an
/// all-ones start, relative tolerance 1e-10 and a 1e5-sweep cap.
pub fn spectral_radius(u: &DenseMatrix) -> Result<f64> {
    if !u.is_square() {
        return Err(Error::NonSquare {
            rows: u.rows(),
            cols: u.cols(),
        });
    }
    let n = u.rows();
    if n == 1 {
        return Ok(u.get(0, 0).abs());
    }
    if n == 2 {
        return Ok(rho_2x2(
            u.get(0, 0),
            u.get(0, 1),
            u.get(1, 0),
            u.get(1, 1),
        ));
    }
    if let Some((row, col)) = u.first_negative() {
        return Err(Error::NegativeEntry { row, col });
    }
    if u.max_abs() == 0.0 {
        return Ok(0.0);
    }
    let mut z = Vector::ones(n);
    let mut prev = f64::NAN;
    let mut prev2 = f64::NAN;
    let mut streak = 0usize;
    for _ in 0..MAX_SWEEPS {
        let mut w = u.matvec(&z).expect("square");
        w.axpy(1.0, &z); // (I + U) z
        let lambda = w.norm2() / z.norm2();
        if !prev.is_nan() {
            if !prev2.is_nan() {
                match aitken(prev2, prev, lambda) {
                    Some((acc, corr)) if corr <= REL_TOL * lambda => {
                        streak += 1;
                        if streak >= 3 {
                            return Ok((acc - 1.0).max(0.0));
                        }
                    }
                    _ => streak = 0,
                }
            }
            if (lambda - prev).abs() <= 1e-15 * lambda {
                return Ok((lambda - 1.0).max(0.0));
            }
        }
        prev2 = prev;
        prev = lambda;
        z = w.scale(1.0 / w.norm2());
    }
    Err(Error::NoConvergence {
        iterations: MAX_SWEEPS,
    })
}

/// Closed-form spectral radius of `[[t11, t12], [t21, t22]]`.
pub fn rho_2x2(t11: f64, t12: f64, t21: f64, t22: f64) -> f64 {
    let tr = t11 + t22;
    let det = t11 * t22 - t12 * t21;
    let disc = tr * tr - 4.0 * det;
    if disc >= 0.0 {
        let s = disc.sqrt();
        ((tr + s).abs()).max((tr - s).abs()) / 2.0
    } else {
        // complex pair; det > tr^2/4 >= 0
        det.sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::factorize;

    #[test]
    fn identity_norms() {
        for n in [1, 2, 5] {
            assert!((two_norm(&DenseMatrix::identity(n)) - 1.0).abs() < 1e-12);
        }
        assert!((spectral_radius(&DenseMatrix::identity(2)).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_matrix() {
        assert_eq!(two_norm(&DenseMatrix::zeros(3, 3)), 0.0);
        assert_eq!(spectral_radius(&DenseMatrix::zeros(3, 3)).unwrap(), 0.0);
    }

    fn solve_product(a: &[[f64; 2]; 2], b: &[[f64; 2]; 2]) -> DenseMatrix {
        let am = DenseMatrix::from_rows(&[a[0].to_vec(), a[1].to_vec()]).unwrap();
        let bm = DenseMatrix::from_rows(&[b[0].to_vec(), b[1].to_vec()]).unwrap();
        factorize(&am).unwrap().solve_matrix(&bm).unwrap()
    }

    #[test]
    fn picard_remark_pair_one() {
        // A = [[-10,6],[2,-95]], B = [[7,-9],[8,1]]
        let w = solve_product(&[[-10.0, 6.0], [2.0, -95.0]], &[[7.0, -9.0], [8.0, 1.0]]);
        assert!((two_norm(&w) - 1.1841).abs() < 1e-3);
        assert!((spectral_radius(&w.abs()).unwrap() - 0.8659).abs() < 1e-3);
    }

    #[test]
    fn picard_remark_pair_two() {
        let w = solve_product(
            &[[12.0, -0.5], [-0.5, 12.0]],
            &[[7.0, -8.0], [-6.0, -4.0]],
        );
        assert!((two_norm(&w) - 0.8851).abs() < 1e-3);
        assert!((spectral_radius(&w.abs()).unwrap() - 1.0414).abs() < 1e-3);
    }

    #[test]
    fn periodic_nonnegative_matrix_converges() {
        // plain power iteration oscillates on this one; the I+U shift must not
        let mut u = DenseMatrix::zeros(3, 3);
        u.set(0, 1, 1.0);
        u.set(1, 0, 1.0);
        u.set(2, 2, 0.5);
        assert!((spectral_radius(&u).unwrap() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn negative_entry_rejected_above_2x2() {
        let mut u = DenseMatrix::identity(3);
        u.set(0, 1, -0.5);
        assert!(matches!(
            spectral_radius(&u),
            Err(Error::NegativeEntry { row: 0, col: 1 })
        ));
    }

    #[test]
    fn complex_pair_2x2() {
        // rotation-like matrix: eigenvalues +-i, radius 1
        let u = DenseMatrix::from_rows(&[vec![0.0, -1.0], vec![1.0, 0.0]]).unwrap();
        assert!((spectral_radius(&u).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn annihilated_start_vector_recovers() {
        // U annihilates the all-ones vector; the hash start must recover
        let u = DenseMatrix::from_rows(&[vec![1.0, -1.0], vec![0.0, 0.0]]).unwrap();
        assert!((two_norm(&u) - 2.0_f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn ones_as_exact_eigenvector_does_not_trap() {
        // constant row sums make the ones vector an exact eigenvector of M
        // (eigenvalue 8) while the dominant singular direction lies elsewhere
        let m = DenseMatrix::from_rows(&[
            vec![8.0, -1.5, 1.5, 0.0],
            vec![-1.5, 8.0, 0.0, 1.5],
            vec![1.5, 0.0, 8.0, -1.5],
            vec![0.0, 1.5, -1.5, 8.0],
        ])
        .unwrap();
        let w = factorize(&m)
            .unwrap()
            .solve_matrix(&DenseMatrix::scaled_identity(4, -0.125))
            .unwrap();
        // smallest eigenvalue of M is 5, so ||M^-1 * (-I/8)|| = 1/40
        assert!((two_norm(&w) - 0.025).abs() < 1e-10);
    }
}
