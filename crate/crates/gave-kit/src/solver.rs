//! The two iteration engines: the two-sequence relaxed splitting iteration
//! and the one-step (Newton-type) splitting iteration with optional momentum.

use crate::error::{Error, Result};
use crate::linalg::{factorize, DenseMatrix, Vector};
use crate::problem::GaveProblem;

/// Componentwise relative tolerance for the bind-time splitting identities.
const SPLIT_RTOL: f64 = 1e-12;

/// One two-sequence splitting instance: `A = M - N`, `Q = Q1 - Q2`, momentum
/// matrix `H`, and the scaled relaxation factor `theta`.
///
/// The iteration it drives is
///
/// ```text
/// x+ = M^-1 (N x + B Q y + b)
/// y+ = (1 - theta) y + theta Q1^-1 Q2 y + theta Q1^-1 |x+| + Q1^-1 H (x+ - x)
/// ```
#[derive(Debug, Clone)]
pub struct GrmsConfig {
    pub m: DenseMatrix,
    pub n: DenseMatrix,
    pub q: DenseMatrix,
    pub q1: DenseMatrix,
    pub q2: DenseMatrix,
    pub h: DenseMatrix,
    pub theta: f64,
}

/// One-step splitting instance driving
/// `x+ = M1^-1 (N1 x + B |x| + momentum (x - x_prev) + b)`.
///
/// The first sweep uses `x_prev = x0`, so the momentum contribution starts at
/// zero (the bootstrap used in the momentum-accelerated experiments).
#[derive(Debug, Clone)]
pub struct OneStepConfig {
    pub m1: DenseMatrix,
    pub n1: DenseMatrix,
    pub momentum: f64,
}

/// Stopping rule: relative-residual tolerance, sweep cap, and the residual
/// level at which a run is declared divergent.
#[derive(Debug, Clone, Copy)]
pub struct StopRule {
    pub tol: f64,
    pub max_iter: usize,
    pub divergence_cap: f64,
}

impl StopRule {
    pub fn new(tol: f64, max_iter: usize) -> Result<Self> {
        if tol <= 0.0 {
            return Err(Error::InvalidParams("tol must be positive".into()));
        }
        if max_iter == 0 {
            return Err(Error::InvalidParams("max_iter must be at least 1".into()));
        }
        Ok(Self {
            tol,
            max_iter,
            divergence_cap: 1e10,
        })
    }
}

impl Default for StopRule {
    /// The experimental stopping rule: `RES <= 1e-8` within 500 sweeps.
    fn default() -> Self {
        Self {
            tol: 1e-8,
            max_iter: 500,
            divergence_cap: 1e10,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Converged,
    MaxIterReached,
    Diverged,
}

impl std::fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SolveStatus::Converged => write!(f, "converged"),
            SolveStatus::MaxIterReached => write!(f, "max-iter"),
            SolveStatus::Diverged => write!(f, "diverged"),
        }
    }
}

/// Result of a solve: final iterate(s), per-sweep relative residuals, and for
/// two-sequence runs the per-sweep difference norms `(||e_x||, ||e_y||)`.
#[derive(Debug, Clone)]
pub struct IterationOutcome {
    pub status: SolveStatus,
    pub x: Vector,
    pub y: Option<Vector>,
    pub iterations: usize,
    pub res_history: Vec<f64>,
    pub error_trace: Option<Vec<(f64, f64)>>,
}

fn check_split(
    target: &DenseMatrix,
    left: &DenseMatrix,
    right: &DenseMatrix,
    what: &str,
) -> Result<()> {
    if left.rows() != target.rows()
        || left.cols() != target.cols()
        || right.rows() != target.rows()
        || right.cols() != target.cols()
    {
        return Err(Error::ShapeMismatch {
            expected_rows: target.rows(),
            expected_cols: target.cols(),
            rows: left.rows(),
            cols: left.cols(),
        });
    }
    for i in 0..target.rows() {
        for j in 0..target.cols() {
            let t = target.get(i, j);
            let diff = (left.get(i, j) - right.get(i, j)) - t;
            if diff.abs() > SPLIT_RTOL * t.abs().max(1.0) {
                return Err(Error::InvalidParams(format!(
                    "{what} violated at ({i},{j}): off by {diff:.3e}"
                )));
            }
        }
    }
    Ok(())
}

impl GrmsConfig {
    /// Builds a config, checking `Q = Q1 - Q2`, shape agreement, and
    /// `theta > 0`. The `A = M - N` identity is checked against a concrete
    /// problem by [`GrmsConfig::validate_for`].
    pub fn new(
        m: DenseMatrix,
        n: DenseMatrix,
        q: DenseMatrix,
        q1: DenseMatrix,
        q2: DenseMatrix,
        h: DenseMatrix,
        theta: f64,
    ) -> Result<Self> {
        if theta <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "theta must be positive, got {theta}"
            )));
        }
        if !m.is_square() {
            return Err(Error::NonSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        check_split(&q, &q1, &q2, "Q = Q1 - Q2")?;
        let cfg = Self {
            m,
            n,
            q,
            q1,
            q2,
            h,
            theta,
        };
        Ok(cfg)
    }

    /// Checks the bind-time identity `A = M - N` (componentwise, relative
    /// tolerance 1e-12) and dimension agreement with `p`.
    pub fn validate_for(&self, p: &GaveProblem) -> Result<()> {
        if self.m.rows() != p.dim() {
            return Err(Error::DimensionMismatch {
                expected: p.dim(),
                got: self.m.rows(),
            });
        }
        check_split(p.a(), &self.m, &self.n, "A = M - N")
    }
}

impl OneStepConfig {
    pub fn new(m1: DenseMatrix, n1: DenseMatrix, momentum: f64) -> Result<Self> {
        if !m1.is_square() {
            return Err(Error::NonSquare {
                rows: m1.rows(),
                cols: m1.cols(),
            });
        }
        Ok(Self { m1, n1, momentum })
    }

    pub fn validate_for(&self, p: &GaveProblem) -> Result<()> {
        if self.m1.rows() != p.dim() {
            return Err(Error::DimensionMismatch {
                expected: p.dim(),
                got: self.m1.rows(),
            });
        }
        check_split(p.a(), &self.m1, &self.n1, "A = M1 - N1")
    }
}

fn check_dim(p: &GaveProblem, v: &Vector) -> Result<()> {
    if v.len() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            got: v.len(),
        });
    }
    Ok(())
}

/// Run the two-sequence iteration. `M` and `Q1` are factored once before the
/// loop; the residual is evaluated after each completed `(x, y)` update and
/// the iteration count is the number of completed updates.
///
/// ```
/// use gave_kit::problem::gen_example_4_1;
/// use gave_kit::solver::{solve_grms, SolveStatus, StopRule};
/// use gave_kit::Vector;
///
/// let (p, cfg, _) = gen_example_4_1();
/// let zero = Vector::zeros(p.dim());
/// let out = solve_grms(&p, &cfg, &zero, &zero, &StopRule::default()).unwrap();
/// assert_eq!(out.status, SolveStatus::Converged);
/// assert!(p.residual(&out.x).unwrap().res <= 1e-8);
/// ```
pub fn solve_grms(
    p: &GaveProblem,
    cfg: &GrmsConfig,
    x0: &Vector,
    y0: &Vector,
    stop: &StopRule,
) -> Result<IterationOutcome> {
    cfg.validate_for(p)?;
    check_dim(p, x0)?;
    check_dim(p, y0)?;
    let lu_m = factorize(&cfg.m)?;
    let lu_q1 = factorize(&cfg.q1)?;
    let theta = cfg.theta;

    let mut x = x0.clone();
    let mut y = y0.clone();
    let mut res_history = Vec::new();
    let mut trace = Vec::new();
    let mut status = SolveStatus::MaxIterReached;
    let mut iterations = stop.max_iter;

    for k in 1..=stop.max_iter {
        // x+ = M^-1 (N x + B Q y + b)
        let qy = cfg.q.matvec(&y)?;
        let mut rhs = cfg.n.matvec(&x)?;
        rhs.axpy(1.0, &p.b().matvec(&qy)?);
        rhs.axpy(1.0, p.rhs());
        let x_new = lu_m.solve(&rhs)?;

        // y+ = (1 - theta) y + Q1^-1 (theta Q2 y + theta |x+| + H (x+ - x))
        let dx = x_new.sub(&x);
        let mut w = cfg.q2.matvec(&y)?.scale(theta);
        w.axpy(theta, &x_new.abs());
        w.axpy(1.0, &cfg.h.matvec(&dx)?);
        let mut y_new = y.scale(1.0 - theta);
        y_new.axpy(1.0, &lu_q1.solve(&w)?);

        trace.push((dx.norm2(), y_new.sub(&y).norm2()));
        x = x_new;
        y = y_new;

        let rep = p.residual(&x)?;
        res_history.push(rep.res);
        if rep.res <= stop.tol {
            status = SolveStatus::Converged;
            iterations = k;
            break;
        }
        if !rep.res.is_finite() || rep.res > stop.divergence_cap {
            status = SolveStatus::Diverged;
            iterations = k;
            break;
        }
    }

    Ok(IterationOutcome {
        status,
        x,
        y: Some(y),
        iterations,
        res_history,
        error_trace: Some(trace),
    })
}

/// Run the one-step iteration. With `momentum != 0` the first sweep uses
/// `x_prev = x0`, i.e. a zero momentum contribution.
pub fn solve_one_step(
    p: &GaveProblem,
    cfg: &OneStepConfig,
    x0: &Vector,
    stop: &StopRule,
) -> Result<IterationOutcome> {
    cfg.validate_for(p)?;
    check_dim(p, x0)?;
    let lu = factorize(&cfg.m1)?;

    let mut x = x0.clone();
    let mut x_prev = x0.clone();
    let mut res_history = Vec::new();
    let mut status = SolveStatus::MaxIterReached;
    let mut iterations = stop.max_iter;

    for k in 1..=stop.max_iter {
        let mut rhs = cfg.n1.matvec(&x)?;
        rhs.axpy(1.0, &p.b().matvec(&x.abs())?);
        if cfg.momentum != 0.0 {
            rhs.axpy(cfg.momentum, &x.sub(&x_prev));
        }
        rhs.axpy(1.0, p.rhs());
        let x_new = lu.solve(&rhs)?;
        x_prev = x;
        x = x_new;

        let rep = p.residual(&x)?;
        res_history.push(rep.res);
        if rep.res <= stop.tol {
            status = SolveStatus::Converged;
            iterations = k;
            break;
        }
        if !rep.res.is_finite() || rep.res > stop.divergence_cap {
            status = SolveStatus::Diverged;
            iterations = k;
            break;
        }
    }

    Ok(IterationOutcome {
        status,
        x,
        y: None,
        iterations,
        res_history,
        error_trace: None,
    })
}

/// Per-sweep `(||x_k - x_{k-1}||, ||y_k - y_{k-1}||)` pairs of a traced run.
pub fn record_error_trace(outcome: &IterationOutcome) -> Result<&[(f64, f64)]> {
    outcome
        .error_trace
        .as_deref()
        .ok_or(Error::TraceUnavailable)
}
