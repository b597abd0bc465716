//! GAVE instances, residual evaluation, and builtin problem generators.

use std::path::Path;

use crate::analysis::{MgsorParams, NsorParams, RmsParams};
use crate::error::{Error, Result};
use crate::linalg::{self, DenseMatrix, Vector};
use crate::solver::GrmsConfig;

/// Maximum relative residual a declared known solution may leave.
const KNOWN_SOLUTION_RTOL: f64 = 1e-10;

/// One generalized absolute value equation `A x - B |x| = b`.
#[derive(Debug, Clone)]
pub struct GaveProblem {
    a: DenseMatrix,
    b: DenseMatrix,
    rhs: Vector,
    known_solution: Option<Vector>,
}

/// Residual of a candidate solution, absolute and relative to `||b||`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualReport {
    /// `abs_res / ||b||` when `||b|| > 0`, else `abs_res`.
    pub res: f64,
    /// `||A x - B |x| - b||_2`.
    pub abs_res: f64,
}

impl GaveProblem {
    pub fn new(a: DenseMatrix, b: DenseMatrix, rhs: Vector) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::NonSquare {
                rows: a.rows(),
                cols: a.cols(),
            });
        }
        if b.rows() != a.rows() || b.cols() != a.cols() {
            return Err(Error::ShapeMismatch {
                expected_rows: a.rows(),
                expected_cols: a.cols(),
                rows: b.rows(),
                cols: b.cols(),
            });
        }
        if rhs.len() != a.rows() {
            return Err(Error::DimensionMismatch {
                expected: a.rows(),
                got: rhs.len(),
            });
        }
        Ok(Self {
            a,
            b,
            rhs,
            known_solution: None,
        })
    }

    /// As [`GaveProblem::new`], additionally recording `x_star` after checking
    /// that it satisfies the equation to within `1e-10 * max(1, ||b||)`.
    pub fn with_known_solution(
        a: DenseMatrix,
        b: DenseMatrix,
        rhs: Vector,
        x_star: Vector,
    ) -> Result<Self> {
        let mut p = Self::new(a, b, rhs)?;
        let rep = p.residual(&x_star)?;
        let scale = p.rhs.norm2().max(1.0);
        if rep.abs_res > KNOWN_SOLUTION_RTOL * scale {
            return Err(Error::InvalidParams(format!(
                "declared solution leaves residual {:.3e}",
                rep.abs_res
            )));
        }
        p.known_solution = Some(x_star);
        Ok(p)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    #[inline]
    pub fn a(&self) -> &DenseMatrix {
        &self.a
    }

    #[inline]
    pub fn b(&self) -> &DenseMatrix {
        &self.b
    }

    #[inline]
    pub fn rhs(&self) -> &Vector {
        &self.rhs
    }

    #[inline]
    pub fn known_solution(&self) -> Option<&Vector> {
        self.known_solution.as_ref()
    }

    /// Relative residual `||A x - B |x| - b|| / ||b||` at `x`.
    pub fn residual(&self, x: &Vector) -> Result<ResidualReport> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.len(),
            });
        }
        let mut r = self.a.matvec(x)?;
        let babs = self.b.matvec(&x.abs())?;
        r.axpy(-1.0, &babs);
        r.axpy(-1.0, &self.rhs);
        let abs_res = r.norm2();
        let nb = self.rhs.norm2();
        let res = if nb > 0.0 { abs_res / nb } else { abs_res };
        Ok(ResidualReport { res, abs_res })
    }
}

/// Symmetric banded m-by-m block: `diag` on the diagonal, `band[k]` at
/// offsets `k+1` on both sides.
fn banded_sym(m: usize, diag: f64, band: &[f64]) -> DenseMatrix {
    let mut s = DenseMatrix::zeros(m, m);
    for i in 0..m {
        s.set(i, i, diag);
    }
    for (off, &v) in band.iter().enumerate() {
        let off = off + 1;
        for i in 0..m.saturating_sub(off) {
            s.set(i, i + off, v);
            s.set(i + off, i, v);
        }
    }
    s
}

/// Symmetric block-banded matrix: `diag_block` on the block diagonal and
/// `off[k] * I` at block offsets `k+1` on both sides.
fn block_banded(blocks: usize, m: usize, diag_block: &DenseMatrix, off: &[f64]) -> DenseMatrix {
    let n = blocks * m;
    let mut g = DenseMatrix::zeros(n, n);
    for bi in 0..blocks {
        for i in 0..m {
            for j in 0..m {
                let v = diag_block.get(i, j);
                if v != 0.0 {
                    g.set(bi * m + i, bi * m + j, v);
                }
            }
        }
    }
    for (k, &v) in off.iter().enumerate() {
        let k = k + 1;
        for bi in 0..blocks.saturating_sub(k) {
            for i in 0..m {
                g.set(bi * m + i, (bi + k) * m + i, v);
                g.set((bi + k) * m + i, bi * m + i, v);
            }
        }
    }
    g
}

fn rhs_for_solution(a: &DenseMatrix, b: &DenseMatrix, x_star: &Vector) -> Vector {
    let mut rhs = a.matvec(x_star).expect("square");
    rhs.axpy(-1.0, &b.matvec(&x_star.abs()).expect("square"));
    rhs
}

/// The 4-by-4 GAVE used to compare against the relaxed splitting baseline,
/// together with its two-sequence config (theta = 0.66) and the baseline's
/// parameters (tau = 1.21).
pub fn gen_example_4_1() -> (GaveProblem, GrmsConfig, RmsParams) {
    let m = DenseMatrix::from_rows(&[
        vec![8.0, -1.5, 1.5, 0.0],
        vec![-1.5, 8.0, 0.0, 1.5],
        vec![1.5, 0.0, 8.0, -1.5],
        vec![0.0, 1.5, -1.5, 8.0],
    ])
    .expect("static shape");
    let n_split = DenseMatrix::scaled_identity(4, -1.0 / 8.0);
    let a = m.sub(&n_split).expect("same shape");
    let b = DenseMatrix::from_rows(&[
        vec![2.0, -1.5, 1.5, 0.0],
        vec![-1.5, 2.0, 0.0, 1.5],
        vec![1.5, 0.0, 2.0, -1.5],
        vec![0.0, 1.5, -1.5, 2.0],
    ])
    .expect("static shape");
    let x_star = Vector::repeating(4, &[-0.5, 0.0]);
    let rhs = rhs_for_solution(&a, &b, &x_star);
    let problem = GaveProblem::with_known_solution(a, b, rhs, x_star).expect("consistent rhs");
    let cfg = GrmsConfig::new(
        m.clone(),
        n_split,
        DenseMatrix::scaled_identity(4, 0.98),
        DenseMatrix::scaled_identity(4, 0.97),
        DenseMatrix::scaled_identity(4, -0.01),
        DenseMatrix::scaled_identity(4, 0.01),
        0.66,
    )
    .expect("valid splitting");
    (problem, cfg, RmsParams { m, tau: 1.21 })
}

/// The 4-by-4 AVE compared against the generalized SOR-like baseline
/// (alpha = 1.05, beta = 1.07).
pub fn gen_example_4_2() -> (GaveProblem, GrmsConfig, MgsorParams) {
    let m = DenseMatrix::from_rows(&[
        vec![24.0, -1.0, -1.0, 0.0],
        vec![-1.0, 24.0, 0.0, -1.0],
        vec![-1.0, 0.0, 24.0, -1.0],
        vec![0.0, -1.0, -1.0, 24.0],
    ])
    .expect("static shape");
    let n_split = DenseMatrix::scaled_identity(4, 0.25);
    let a = m.sub(&n_split).expect("same shape");
    let b = DenseMatrix::identity(4);
    let x_star = Vector::repeating(4, &[0.5, 0.0]);
    let rhs = rhs_for_solution(&a, &b, &x_star);
    let problem = GaveProblem::with_known_solution(a, b, rhs, x_star).expect("consistent rhs");
    let q = DenseMatrix::scaled_identity(4, 0.982);
    let cfg = GrmsConfig::new(
        m,
        n_split,
        q.clone(),
        DenseMatrix::scaled_identity(4, 0.981),
        DenseMatrix::scaled_identity(4, -0.001),
        DenseMatrix::scaled_identity(4, 0.01),
        1.0,
    )
    .expect("valid splitting");
    (
        problem,
        cfg,
        MgsorParams {
            q,
            alpha: 1.05,
            beta: 1.07,
        },
    )
}

/// The 4-by-4 AVE compared against the two-parameter SOR baseline
/// (omega = 1.1, sigma = 0.98).
pub fn gen_example_4_3() -> (GaveProblem, GrmsConfig, NsorParams) {
    let m = DenseMatrix::from_rows(&[
        vec![4.0, -0.5, 0.5, 0.0],
        vec![-0.5, 4.0, 0.0, 0.5],
        vec![0.5, 0.0, 4.0, -0.5],
        vec![0.0, 0.5, -0.5, 4.0],
    ])
    .expect("static shape");
    let n_split = DenseMatrix::scaled_identity(4, 0.1);
    let a = m.sub(&n_split).expect("same shape");
    let b = DenseMatrix::identity(4);
    let x_star = Vector::repeating(4, &[0.5, 0.0]);
    let rhs = rhs_for_solution(&a, &b, &x_star);
    let problem = GaveProblem::with_known_solution(a, b, rhs, x_star).expect("consistent rhs");
    let cfg = GrmsConfig::new(
        m,
        n_split,
        DenseMatrix::scaled_identity(4, 0.99),
        DenseMatrix::scaled_identity(4, 0.98),
        DenseMatrix::scaled_identity(4, -0.01),
        DenseMatrix::scaled_identity(4, 0.01),
        1.0,
    )
    .expect("valid splitting");
    (
        problem,
        cfg,
        NsorParams {
            omega: 1.1,
            sigma: 0.98,
        },
    )
}

fn check_block_sizes(m: usize, blocks: usize) -> Result<()> {
    if m < 8 || blocks < 9 {
        return Err(Error::InvalidSize(format!(
            "block-banded generators need m >= 8 and blocks >= 9, got m={m}, blocks={blocks}"
        )));
    }
    Ok(())
}

/// Block-banded GAVE family: `A` has 36-diagonal blocks with in-block band
/// (-1.5, -0.5, -1.5) plus 1/5 added to the diagonal, block band
/// (-1.5, -0.5, -1.5, -0.5); `B` has 3-diagonal blocks with band (-1, -1, -1)
/// and `-I` at block offsets 1..4. Known solution `(1/2, 1, 1/2, 1, ...)`.
pub fn gen_example_5_1(m: usize, blocks: usize) -> Result<GaveProblem> {
    check_block_sizes(m, blocks)?;
    let n = m * blocks;
    let s1 = banded_sym(m, 36.0, &[-1.5, -0.5, -1.5]);
    let mut a = block_banded(blocks, m, &s1, &[-1.5, -0.5, -1.5, -0.5]);
    for i in 0..n {
        let d = a.get(i, i);
        a.set(i, i, d + 0.2);
    }
    let s2 = banded_sym(m, 3.0, &[-1.0, -1.0, -1.0]);
    let b = block_banded(blocks, m, &s2, &[-1.0, -1.0, -1.0, -1.0]);
    let x_star = Vector::repeating(n, &[0.5, 1.0]);
    let rhs = rhs_for_solution(&a, &b, &x_star);
    GaveProblem::with_known_solution(a, b, rhs, x_star)
}

/// Same `A` as [`gen_example_5_1`]; `B` has 16-diagonal blocks with band
/// (-0.5, -0.5, -0.5, -0.5) and `-0.5 I` at block offsets 1..4. Known
/// solution `(-1/2, 1, -1/2, 1, ...)`.
pub fn gen_example_5_2(m: usize, blocks: usize) -> Result<GaveProblem> {
    check_block_sizes(m, blocks)?;
    let n = m * blocks;
    let s1 = banded_sym(m, 36.0, &[-1.5, -0.5, -1.5]);
    let mut a = block_banded(blocks, m, &s1, &[-1.5, -0.5, -1.5, -0.5]);
    for i in 0..n {
        let d = a.get(i, i);
        a.set(i, i, d + 0.2);
    }
    let s2 = banded_sym(m, 16.0, &[-0.5, -0.5, -0.5, -0.5]);
    let b = block_banded(blocks, m, &s2, &[-0.5, -0.5, -0.5, -0.5]);
    let x_star = Vector::repeating(n, &[-0.5, 1.0]);
    let rhs = rhs_for_solution(&a, &b, &x_star);
    GaveProblem::with_known_solution(a, b, rhs, x_star)
}

/// The two 2-by-2 pairs from the remark contrasting `||A^-1 B||` with
/// `rho(|A^-1 B|)`. The right-hand side is zero; the pairs exist for norm
/// reproduction only.
pub fn gen_picard_remark(which: u8) -> Result<GaveProblem> {
    let (a, b) = match which {
        1 => (
            DenseMatrix::from_rows(&[vec![-10.0, 6.0], vec![2.0, -95.0]]).expect("static"),
            DenseMatrix::from_rows(&[vec![7.0, -9.0], vec![8.0, 1.0]]).expect("static"),
        ),
        2 => (
            DenseMatrix::from_rows(&[vec![12.0, -0.5], vec![-0.5, 12.0]]).expect("static"),
            DenseMatrix::from_rows(&[vec![7.0, -8.0], vec![-6.0, -4.0]]).expect("static"),
        ),
        other => {
            return Err(Error::InvalidParams(format!(
                "picard-remark pair must be 1 or 2, got {other}"
            )))
        }
    };
    GaveProblem::new(a, b, Vector::zeros(2))
}

/// Load a problem from three Matrix Market files.
pub fn load_problem<P: AsRef<Path>>(path_a: P, path_b: P, path_rhs: P) -> Result<GaveProblem> {
    let a = linalg::read_matrix_file(path_a)?;
    let b = linalg::read_matrix_file(path_b)?;
    let rhs = linalg::read_vector_file(path_rhs)?;
    GaveProblem::new(a, b, rhs)
}

/// Write a problem to three Matrix Market files.
pub fn save_problem<P: AsRef<Path>>(
    p: &GaveProblem,
    path_a: P,
    path_b: P,
    path_rhs: P,
) -> Result<()> {
    linalg::write_matrix_file(path_a, p.a())?;
    linalg::write_matrix_file(path_b, p.b())?;
    linalg::write_vector_file(path_rhs, p.rhs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residual_examples() {
        // 1x1: 2*1 - |1| - 1 = 0
        let p = GaveProblem::new(
            DenseMatrix::from_vec(1, 1, vec![2.0]).unwrap(),
            DenseMatrix::from_vec(1, 1, vec![1.0]).unwrap(),
            Vector::from_slice(&[1.0]),
        )
        .unwrap();
        let rep = p.residual(&Vector::from_slice(&[1.0])).unwrap();
        assert_eq!(rep.res, 0.0);

        // x = 0 leaves exactly ||b|| / ||b|| = 1
        let (p41, _, _) = gen_example_4_1();
        let rep = p41.residual(&Vector::zeros(4)).unwrap();
        assert!((rep.res - 1.0).abs() < 1e-14);

        let err = p41.residual(&Vector::zeros(3));
        assert!(matches!(err, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn generators_satisfy_known_solution() {
        let (p, _, _) = gen_example_4_1();
        let x = p.known_solution().unwrap().clone();
        assert!(p.residual(&x).unwrap().res <= 1e-12);
        assert_eq!(p.dim(), 4);

        let (p, _, _) = gen_example_4_2();
        let x = p.known_solution().unwrap().clone();
        assert!(p.residual(&x).unwrap().res <= 1e-12);

        let (p, _, _) = gen_example_4_3();
        let x = p.known_solution().unwrap().clone();
        assert!(p.residual(&x).unwrap().res <= 1e-12);

        let p = gen_example_5_1(8, 9).unwrap();
        let x = p.known_solution().unwrap().clone();
        assert!(p.residual(&x).unwrap().res <= 1e-12);

        let p = gen_example_5_2(8, 9).unwrap();
        let x = p.known_solution().unwrap().clone();
        assert!(p.residual(&x).unwrap().res <= 1e-12);
    }

    #[test]
    fn example_5_1_entries() {
        let m = 8;
        let p = gen_example_5_1(m, 9).unwrap();
        assert_eq!(p.a().get(0, 0), 36.2);
        assert_eq!(p.b().get(0, m), -1.0);
        assert_eq!(p.a().get(0, 1), -1.5);
        assert_eq!(p.a().get(0, 2), -0.5);
        assert_eq!(p.a().get(0, 3), -1.5);
        assert_eq!(p.a().get(0, m), -1.5);
        assert_eq!(p.a().get(0, 2 * m), -0.5);
        assert_eq!(p.a().get(0, 3 * m), -1.5);
        assert_eq!(p.a().get(0, 4 * m), -0.5);
        assert_eq!(p.b().get(0, 0), 3.0);
        assert_eq!(p.b().get(0, 1), -1.0);
        assert_eq!(p.b().get(0, 3), -1.0);
        assert_eq!(p.b().get(0, 4), 0.0);
    }

    #[test]
    fn example_5_2_entries() {
        let p = gen_example_5_2(8, 9).unwrap();
        assert_eq!(p.b().get(0, 0), 16.0);
        assert_eq!(p.b().get(0, 4), -0.5);
        assert_eq!(p.b().get(0, 5), 0.0);
        assert_eq!(p.b().get(0, 8), -0.5);
    }

    #[test]
    fn block_generators_are_symmetric_and_diagonally_dominant() {
        for gen in [gen_example_5_1, gen_example_5_2] {
            let p = gen(8, 9).unwrap();
            let n = p.dim();
            for i in 0..n {
                for j in (i + 1)..n {
                    assert_eq!(p.a().get(i, j), p.a().get(j, i));
                    assert_eq!(p.b().get(i, j), p.b().get(j, i));
                }
            }
            for i in 0..n {
                let off: f64 = (0..n)
                    .filter(|&j| j != i)
                    .map(|j| p.a().get(i, j).abs())
                    .sum();
                assert!(p.a().get(i, i).abs() > off, "row {i} not dominant");
            }
        }
    }

    #[test]
    fn block_generators_bandwidth() {
        let (m, blocks) = (8, 9);
        let p = gen_example_5_1(m, blocks).unwrap();
        let bw = 4 * m + 3;
        let n = p.dim();
        for i in 0..n {
            for j in 0..n {
                if (i as isize - j as isize).unsigned_abs() > bw {
                    assert_eq!(p.a().get(i, j), 0.0);
                    assert_eq!(p.b().get(i, j), 0.0);
                }
            }
        }
    }

    #[test]
    fn twelve_block_display_corners() {
        // the 12-block instances spot-checked at their corner blocks
        let m = 8;
        let p = gen_example_5_1(m, 12).unwrap();
        let n = 12 * m;
        // bottom-right diagonal block ends in 36.2 / band -1.5
        assert_eq!(p.a().get(n - 1, n - 1), 36.2);
        assert_eq!(p.a().get(n - 1, n - 2), -1.5);
        // last block row reaches back exactly four block offsets
        assert_eq!(p.a().get(n - 1, n - 1 - m), -1.5);
        assert_eq!(p.a().get(n - 1, n - 1 - 2 * m), -0.5);
        assert_eq!(p.a().get(n - 1, n - 1 - 3 * m), -1.5);
        assert_eq!(p.a().get(n - 1, n - 1 - 4 * m), -0.5);
        assert_eq!(p.a().get(n - 1, n - 1 - 5 * m), 0.0);
        // top-right corner is outside every band
        assert_eq!(p.a().get(0, n - 1), 0.0);
        assert_eq!(p.b().get(0, n - 1), 0.0);
        assert_eq!(p.b().get(n - 1, n - 1 - 4 * m), -1.0);

        let p = gen_example_5_2(m, 12).unwrap();
        assert_eq!(p.b().get(n - 1, n - 1), 16.0);
        assert_eq!(p.b().get(n - 1, n - 1 - 4 * m), -0.5);
        assert_eq!(p.b().get(n - 1, n - 1 - 5 * m), 0.0);
    }

    #[test]
    fn undersized_blocks_rejected() {
        assert!(matches!(
            gen_example_5_1(7, 9),
            Err(Error::InvalidSize(_))
        ));
        assert!(matches!(
            gen_example_5_2(8, 8),
            Err(Error::InvalidSize(_))
        ));
    }

    #[test]
    fn picard_remark_pairs() {
        let p = gen_picard_remark(1).unwrap();
        assert_eq!(p.dim(), 2);
        assert_eq!(p.a().get(0, 0), -10.0);
        assert_eq!(p.a().get(1, 1), -95.0);
        assert!(p.known_solution().is_none());
        assert!(gen_picard_remark(3).is_err());
    }

    #[test]
    fn problem_file_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let (p, _, _) = gen_example_4_1();
        let pa = dir.path().join("A.mtx");
        let pb = dir.path().join("B.mtx");
        let pv = dir.path().join("b.mtx");
        save_problem(&p, &pa, &pb, &pv).unwrap();
        let back = load_problem(&pa, &pb, &pv).unwrap();
        assert_eq!(back.a(), p.a());
        assert_eq!(back.b(), p.b());
        assert_eq!(back.rhs(), p.rhs());
    }

    #[test]
    fn mismatched_dimensions_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let (p, _, _) = gen_example_4_1();
        let pa = dir.path().join("A.mtx");
        let pb = dir.path().join("B.mtx");
        let pv = dir.path().join("b.mtx");
        save_problem(&p, &pa, &pb, &pv).unwrap();
        // overwrite b with a wrong-length vector
        linalg::write_vector_file(&pv, &Vector::zeros(3)).unwrap();
        assert!(matches!(
            load_problem(&pa, &pb, &pv),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
