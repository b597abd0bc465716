//! Convergence constants, iteration-bound matrices, sufficient-condition
//! checks, and the comparison-theorem machinery.

use crate::error::{Error, Result};
use crate::linalg::{factorize, rho_2x2, two_norm, DenseMatrix};
use crate::presets::{MethodName, MethodSpec, EXPERIMENT_Q_SCALE};
use crate::problem::GaveProblem;
use crate::solver::GrmsConfig;

/// The five operator norms that drive the convergence analysis:
/// `a = ||M^-1 N||`, `c = ||M^-1 B Q||`, `d = ||Q1^-1 Q2||`,
/// `alpha = ||Q1^-1||`, `beta = ||Q1^-1 H||`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceConstants {
    pub a: f64,
    pub c: f64,
    pub d: f64,
    pub alpha: f64,
    pub beta: f64,
}

/// Which bound matrix a 2x2 iteration matrix represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TKind {
    Grms,
    Rms,
    Mgsor,
    Nsor,
}

/// A nonnegative 2x2 error-propagation bound with its spectral radius.
#[derive(Debug, Clone, Copy)]
pub struct IterationMatrix2x2 {
    /// Row-major entries `[t11, t12, t21, t22]`, all nonnegative.
    pub entries: [f64; 4],
    pub rho: f64,
    pub kind: TKind,
}

impl IterationMatrix2x2 {
    fn new(kind: TKind, entries: [f64; 4]) -> Self {
        debug_assert!(entries.iter().all(|&e| e >= 0.0));
        let rho = rho_2x2(entries[0], entries[1], entries[2], entries[3]);
        Self { entries, rho, kind }
    }

    pub fn as_dense(&self) -> DenseMatrix {
        DenseMatrix::from_vec(2, 2, self.entries.to_vec()).expect("static shape")
    }

    /// Apply the bound to an error pair: `T * (ex, ey)`.
    pub fn apply(&self, ex: f64, ey: f64) -> (f64, f64) {
        (
            self.entries[0] * ex + self.entries[1] * ey,
            self.entries[2] * ex + self.entries[3] * ey,
        )
    }
}

/// One recorded inequality of a condition check.
#[derive(Debug, Clone)]
pub struct InequalityRecord {
    pub id: String,
    /// Left-hand side of `lhs < rhs` (or `lhs <= rhs` when `strict` is false).
    pub lhs: f64,
    pub rhs: f64,
    pub strict: bool,
    pub satisfied: bool,
}

impl InequalityRecord {
    fn strict(id: &str, lhs: f64, rhs: f64) -> Self {
        Self {
            id: id.to_string(),
            lhs,
            rhs,
            strict: true,
            satisfied: lhs < rhs,
        }
    }

    fn non_strict(id: &str, lhs: f64, rhs: f64) -> Self {
        Self {
            id: id.to_string(),
            lhs,
            rhs,
            strict: false,
            satisfied: lhs <= rhs,
        }
    }
}

/// Outcome of a sufficient-condition check. `satisfied` holds exactly when
/// every recorded inequality does; both sides of each inequality are kept so
/// callers can apply their own margins.
#[derive(Debug, Clone)]
pub struct ConditionReport {
    pub which: String,
    pub satisfied: bool,
    pub inequalities: Vec<InequalityRecord>,
    pub theta_interval: Option<(f64, f64)>,
}

impl ConditionReport {
    fn from_inequalities(which: &str, inequalities: Vec<InequalityRecord>) -> Self {
        let satisfied = inequalities.iter().all(|r| r.satisfied);
        Self {
            which: which.to_string(),
            satisfied,
            inequalities,
            theta_interval: None,
        }
    }

    /// Flat `(id, lhs, rhs, satisfied)` rows for CSV/JSON emission.
    pub fn records(&self) -> Vec<(String, f64, f64, bool)> {
        self.inequalities
            .iter()
            .map(|r| (r.id.clone(), r.lhs, r.rhs, r.satisfied))
            .collect()
    }
}

fn norm_of_solve(lu: &crate::linalg::LuFactorization, rhs: &DenseMatrix) -> Result<f64> {
    Ok(two_norm(&lu.solve_matrix(rhs)?))
}

/// Compute the five convergence constants of a two-sequence config. The
/// matrix products are formed by LU solves against columns, never through an
/// explicit inverse of `M`.
pub fn constants(p: &GaveProblem, cfg: &GrmsConfig) -> Result<ConvergenceConstants> {
    cfg.validate_for(p)?;
    let lu_m = factorize(&cfg.m)?;
    let lu_q1 = factorize(&cfg.q1)?;
    let a = norm_of_solve(&lu_m, &cfg.n)?;
    let bq = p.b().matmul(&cfg.q)?;
    let c = norm_of_solve(&lu_m, &bq)?;
    let d = norm_of_solve(&lu_q1, &cfg.q2)?;
    let alpha = two_norm(&lu_q1.inverse());
    let beta = norm_of_solve(&lu_q1, &cfg.h)?;
    Ok(ConvergenceConstants {
        a,
        c,
        d,
        alpha,
        beta,
    })
}

/// The 2x2 error-propagation bound
/// `[[a, c], [a(theta alpha + beta) + beta, c(theta alpha + beta) + theta d + |1-theta|]]`.
pub fn build_t(k: &ConvergenceConstants, theta: f64) -> IterationMatrix2x2 {
    let g = theta * k.alpha + k.beta;
    IterationMatrix2x2::new(
        TKind::Grms,
        [
            k.a,
            k.c,
            k.a * g + k.beta,
            k.c * g + theta * k.d + (1.0 - theta).abs(),
        ],
    )
}

/// The two sufficient conditions of the main convergence theorem:
/// `|a|1-theta| + theta a d - c beta| < 1` and
/// `c (theta alpha + 2 beta) < (1 - a)(1 - |1-theta| - theta d)`.
pub fn check_theorem_3_1(k: &ConvergenceConstants, theta: f64) -> ConditionReport {
    let one_minus = (1.0 - theta).abs();
    let lhs1 = (k.a * one_minus + theta * k.a * k.d - k.c * k.beta).abs();
    let lhs2 = k.c * (theta * k.alpha + 2.0 * k.beta);
    let rhs2 = (1.0 - k.a) * (1.0 - one_minus - theta * k.d);
    ConditionReport::from_inequalities(
        "theorem-3.1",
        vec![
            InequalityRecord::strict("con1", lhs1, 1.0),
            InequalityRecord::strict("con2", lhs2, rhs2),
        ],
    )
}

/// The theta-interval corollary: under `a < 1`, `c beta < a d + 1`, and
/// `c (2 beta + alpha) < (1-a)(1-d)`, every theta in the returned open
/// interval satisfies the main theorem's conditions.
pub fn theta_interval_cor_3_1(k: &ConvergenceConstants) -> ConditionReport {
    let pre = vec![
        InequalityRecord::strict("pre1", k.a, 1.0),
        InequalityRecord::strict("pre2", k.c * k.beta, k.a * k.d + 1.0),
        InequalityRecord::strict(
            "pre3",
            k.c * (2.0 * k.beta + k.alpha),
            (1.0 - k.a) * (1.0 - k.d),
        ),
    ];
    let mut report = ConditionReport::from_inequalities("corollary-3.1", pre);
    if report.satisfied {
        let lo = 2.0 * k.c * k.beta / ((1.0 - k.a) * (1.0 - k.d) - k.c * k.alpha);
        let hi = (2.0 * (1.0 - k.a) - 2.0 * k.c * k.beta)
            / ((1.0 - k.a) * (1.0 + k.d) + k.c * k.alpha);
        report.theta_interval = Some((lo, hi));
    }
    report
}

/// Comparison parameters of the relaxed splitting baseline.
#[derive(Debug, Clone)]
pub struct RmsParams {
    pub m: DenseMatrix,
    pub tau: f64,
}

/// Comparison parameters of the generalized SOR-like baseline.
#[derive(Debug, Clone)]
pub struct MgsorParams {
    pub q: DenseMatrix,
    pub alpha: f64,
    pub beta: f64,
}

/// Comparison parameters of the two-parameter SOR baseline.
#[derive(Debug, Clone, Copy)]
pub struct NsorParams {
    pub omega: f64,
    pub sigma: f64,
}

/// Rival-method parameters for the comparison theorems.
#[derive(Debug, Clone)]
pub enum ComparisonParams {
    Rms(RmsParams),
    Mgsor(MgsorParams),
    Nsor(NsorParams),
}

/// Build the rival method's own 2x2 bound matrix on `p`.
pub fn build_comparison_matrix(
    params: &ComparisonParams,
    p: &GaveProblem,
) -> Result<IterationMatrix2x2> {
    match params {
        ComparisonParams::Rms(r) => {
            let lu = factorize(&r.m)?;
            let n_split = r.m.sub(p.a())?;
            let a = norm_of_solve(&lu, &n_split)?;
            let mb = norm_of_solve(&lu, p.b())?;
            Ok(IterationMatrix2x2::new(
                TKind::Rms,
                [
                    a,
                    mb,
                    r.tau * a,
                    (1.0 - r.tau).abs() + r.tau * mb,
                ],
            ))
        }
        ComparisonParams::Mgsor(g) => {
            let lu_a = factorize(p.a())?;
            let bq = p.b().matmul(&g.q)?;
            let abq = norm_of_solve(&lu_a, &bq)?;
            let qi = two_norm(&factorize(&g.q)?.inverse());
            let am1 = (1.0 - g.alpha).abs();
            Ok(IterationMatrix2x2::new(
                TKind::Mgsor,
                [
                    am1,
                    g.alpha * abq,
                    g.beta * am1 * qi,
                    g.alpha * g.beta * abq * qi + (1.0 - g.beta).abs(),
                ],
            ))
        }
        ComparisonParams::Nsor(s) => {
            let lu_a = factorize(p.a())?;
            let ab = norm_of_solve(&lu_a, p.b())?;
            let na = two_norm(p.a());
            let nb = two_norm(p.b());
            let om1 = (1.0 - s.omega).abs();
            let gain = s.omega * s.omega / s.sigma;
            let shifted = DenseMatrix::identity(p.dim()).sub(&p.b().scale(gain))?;
            Ok(IterationMatrix2x2::new(
                TKind::Nsor,
                [
                    om1,
                    s.omega * ab,
                    s.omega * om1 / s.sigma * (na + nb),
                    gain * ab * nb + two_norm(&shifted),
                ],
            ))
        }
    }
}

fn is_identity(m: &DenseMatrix) -> bool {
    m.is_square()
        && (0..m.rows()).all(|i| {
            (0..m.cols()).all(|j| m.get(i, j) == if i == j { 1.0 } else { 0.0 })
        })
}

/// Evaluate the convergence corollary attached to a named method.
///
/// When the problem's `B` is exactly the identity the AVE-specialized
/// corollary is used (the fixed point iteration's `nu = ||A^-1|| < 1` bound,
/// the SOR-like square-root bound, and the two-sided relaxation windows);
/// otherwise the general form. Methods without a dedicated corollary return
/// [`Error::UnsupportedMethod`].
pub fn check_named_condition(spec: &MethodSpec, p: &GaveProblem) -> Result<ConditionReport> {
    let ave = is_identity(p.b());
    let lu_a = || factorize(p.a());
    match spec.name {
        MethodName::Rms => {
            let m = spec
                .matrix_params
                .get("M")
                .ok_or_else(|| Error::InvalidParams("rms condition requires matrix `M`".into()))?;
            let tau = require(spec, "tau")?;
            let lu = factorize(m)?;
            let a = norm_of_solve(&lu, &m.sub(p.a())?)?;
            let mb = norm_of_solve(&lu, p.b())?;
            let t1 = (1.0 - tau).abs();
            Ok(ConditionReport::from_inequalities(
                "corollary-rms",
                vec![
                    InequalityRecord::strict("rms.cond1", t1 * a, 1.0),
                    InequalityRecord::strict("rms.cond2", tau * mb, (1.0 - a) * (1.0 - t1)),
                ],
            ))
        }
        MethodName::Nms => {
            let m = spec
                .matrix_params
                .get("M")
                .ok_or_else(|| Error::InvalidParams("nms condition requires matrix `M`".into()))?;
            let zeros = DenseMatrix::zeros(p.dim(), p.dim());
            let omega = spec.matrix_params.get("Omega").unwrap_or(&zeros);
            let m_total = m.add(omega)?;
            let lu = factorize(&m_total)?;
            let n_total = m_total.sub(p.a())?;
            let lhs = norm_of_solve(&lu, &n_total)? + norm_of_solve(&lu, p.b())?;
            Ok(ConditionReport::from_inequalities(
                "corollary-nms",
                vec![InequalityRecord::strict("nms.sum", lhs, 1.0)],
            ))
        }
        MethodName::Mn => {
            let omega = spec.matrix_params.get("Omega").cloned().unwrap_or_else(|| {
                let mut d = DenseMatrix::zeros(p.dim(), p.dim());
                for i in 0..p.dim() {
                    d.set(i, i, p.a().get(i, i));
                }
                d
            });
            let lu = factorize(&p.a().add(&omega)?)?;
            let lhs = norm_of_solve(&lu, &omega)? + norm_of_solve(&lu, p.b())?;
            Ok(ConditionReport::from_inequalities(
                "corollary-mn",
                vec![InequalityRecord::strict("mn.sum", lhs, 1.0)],
            ))
        }
        MethodName::Picard => {
            let lhs = norm_of_solve(&lu_a()?, p.b())?;
            Ok(ConditionReport::from_inequalities(
                "corollary-picard",
                vec![InequalityRecord::strict("picard.norm", lhs, 1.0)],
            ))
        }
        MethodName::Mgsor | MethodName::SorLike | MethodName::Mfpi | MethodName::Fpi => {
            named_relaxation_condition(spec, p, ave)
        }
        MethodName::Msor => {
            let alpha = require(spec, "alpha")?;
            let omega = require(spec, "omega")?;
            msor_condition(p, alpha, omega)
        }
        MethodName::Nsor => {
            let omega = require(spec, "omega")?;
            let sigma = require(spec, "sigma")?;
            nsor_condition(p, omega, sigma)
        }
        MethodName::FpiSs => {
            let alpha = require(spec, "alpha")?;
            let omega = require(spec, "omega")?;
            let shifted = DenseMatrix::scaled_identity(p.dim(), alpha).add(p.a())?;
            let lu = factorize(&shifted)?;
            let anti = DenseMatrix::scaled_identity(p.dim(), alpha).sub(p.a())?;
            let a_hat = norm_of_solve(&lu, &anti)?;
            let b_hat = 2.0 * norm_of_solve(&lu, p.b())?;
            Ok(ConditionReport::from_inequalities(
                "corollary-fpiss",
                vec![
                    InequalityRecord::strict("fpiss.sum", a_hat + b_hat, 1.0),
                    InequalityRecord::strict("fpiss.omega.lo", 0.0, omega),
                    InequalityRecord::strict(
                        "fpiss.omega.hi",
                        omega,
                        2.0 * (1.0 - a_hat) / (1.0 - a_hat + b_hat),
                    ),
                ],
            ))
        }
        other => Err(Error::UnsupportedMethod(other.as_str().to_string())),
    }
}

fn require(spec: &MethodSpec, key: &str) -> Result<f64> {
    spec.param(key).ok_or_else(|| {
        Error::InvalidParams(format!(
            "condition check for `{}` requires parameter `{key}`",
            spec.name
        ))
    })
}

fn named_relaxation_condition(
    spec: &MethodSpec,
    p: &GaveProblem,
    ave: bool,
) -> Result<ConditionReport> {
    let n = p.dim();
    let lu_a = factorize(p.a())?;
    match spec.name {
        MethodName::Fpi => {
            let tau = require(spec, "tau")?;
            if ave {
                // 0 < nu < 1 and 0 < tau < 2/(1+nu)
                let nu = two_norm(&lu_a.inverse());
                Ok(ConditionReport::from_inequalities(
                    "corollary-fpi",
                    vec![
                        InequalityRecord::strict("fpi.nu.lo", 0.0, nu),
                        InequalityRecord::strict("fpi.nu.hi", nu, 1.0),
                        InequalityRecord::strict("fpi.tau.lo", 0.0, tau),
                        InequalityRecord::strict("fpi.tau.hi", tau, 2.0 / (1.0 + nu)),
                    ],
                ))
            } else {
                let ab = norm_of_solve(&lu_a, p.b())?;
                Ok(ConditionReport::from_inequalities(
                    "corollary-fpi-gave",
                    vec![InequalityRecord::strict(
                        "fpi.norm",
                        ab,
                        (1.0 - tau).abs() / tau,
                    )],
                ))
            }
        }
        MethodName::SorLike => {
            let omega = require(spec, "omega")?;
            if ave {
                // 0 < nu < 1 and 0 < omega < (2 - 2 sqrt(nu)) / (1 - nu)
                let nu = two_norm(&lu_a.inverse());
                Ok(ConditionReport::from_inequalities(
                    "corollary-sor",
                    vec![
                        InequalityRecord::strict("sor.nu.lo", 0.0, nu),
                        InequalityRecord::strict("sor.nu.hi", nu, 1.0),
                        InequalityRecord::strict("sor.omega.lo", 0.0, omega),
                        InequalityRecord::strict(
                            "sor.omega.hi",
                            omega,
                            (2.0 - 2.0 * nu.sqrt()) / (1.0 - nu),
                        ),
                    ],
                ))
            } else {
                let ab = norm_of_solve(&lu_a, p.b())?;
                let bound = (1.0 - (1.0 - omega).abs()) / omega;
                Ok(ConditionReport::from_inequalities(
                    "corollary-sor-gave",
                    vec![
                        InequalityRecord::strict("sor.omega.lo", 0.0, omega),
                        InequalityRecord::strict("sor.omega.hi", omega, 2.0),
                        InequalityRecord::strict("sor.norm.lo", 0.0, ab),
                        InequalityRecord::strict("sor.norm.hi", ab, bound * bound),
                    ],
                ))
            }
        }
        MethodName::Mgsor => {
            let alpha = require(spec, "alpha")?;
            let beta = require(spec, "beta")?;
            let q = spec
                .matrix_params
                .get("Q")
                .cloned()
                .unwrap_or_else(|| DenseMatrix::scaled_identity(n, EXPERIMENT_Q_SCALE));
            let prod = norm_of_solve(&lu_a, &p.b().matmul(&q)?)? * two_norm(&factorize(&q)?.inverse());
            let a1 = (1.0 - alpha).abs();
            let b1 = (1.0 - beta).abs();
            Ok(ConditionReport::from_inequalities(
                "corollary-mgsor",
                vec![
                    InequalityRecord::strict("mgsor.relax", a1 * b1, 1.0),
                    InequalityRecord::strict(
                        "mgsor.product",
                        alpha * beta * prod,
                        (1.0 - a1) * (1.0 - b1),
                    ),
                ],
            ))
        }
        MethodName::Mfpi => {
            let tau = require(spec, "tau")?;
            let q = spec
                .matrix_params
                .get("Q")
                .cloned()
                .unwrap_or_else(|| DenseMatrix::scaled_identity(n, EXPERIMENT_Q_SCALE));
            let prod = norm_of_solve(&lu_a, &p.b().matmul(&q)?)? * two_norm(&factorize(&q)?.inverse());
            if ave {
                // 0 < ||A^-1 Q|| ||Q^-1|| < 1 and 0 < tau < 2/(1 + that)
                Ok(ConditionReport::from_inequalities(
                    "corollary-mfpi",
                    vec![
                        InequalityRecord::strict("mfpi.prod.lo", 0.0, prod),
                        InequalityRecord::strict("mfpi.prod.hi", prod, 1.0),
                        InequalityRecord::strict("mfpi.tau.lo", 0.0, tau),
                        InequalityRecord::strict("mfpi.tau.hi", tau, 2.0 / (1.0 + prod)),
                    ],
                ))
            } else {
                Ok(ConditionReport::from_inequalities(
                    "corollary-mfpi-gave",
                    vec![
                        InequalityRecord::strict("mfpi.prod.lo", 0.0, prod),
                        InequalityRecord::strict(
                            "mfpi.prod.hi",
                            prod,
                            (1.0 - (1.0 - tau).abs()) / tau,
                        ),
                    ],
                ))
            }
        }
        _ => unreachable!("caller dispatches only relaxation-family methods"),
    }
}

fn msor_condition(p: &GaveProblem, alpha: f64, omega: f64) -> Result<ConditionReport> {
    let lu_a = factorize(p.a())?;
    let ab = norm_of_solve(&lu_a, p.b())?;
    let na = two_norm(p.a());
    let nb = two_norm(p.b());
    let scaled = DenseMatrix::identity(p.dim()).sub(&p.b().scale(2.0 / (2.0 - omega)))?;
    let ns = two_norm(&scaled);
    let aw = (1.0 - alpha * omega).abs();
    let w1 = (1.0 - omega).abs();
    let gain = 2.0 * omega / (2.0 - omega).abs();
    let lhs1 = (aw * w1 + omega * aw * ns - gain * aw * ab * na).abs();
    let lhs2 = gain * ab * (omega * alpha * nb + 2.0 * aw * na);
    let rhs2 = (1.0 - aw) * (1.0 - w1 - omega * ns);
    Ok(ConditionReport::from_inequalities(
        "corollary-msor",
        vec![
            InequalityRecord::strict("msor.cond1", lhs1, 1.0),
            InequalityRecord::strict("msor.cond2", lhs2, rhs2),
        ],
    ))
}

fn nsor_condition(p: &GaveProblem, omega: f64, sigma: f64) -> Result<ConditionReport> {
    let lu_a = factorize(p.a())?;
    let ab = norm_of_solve(&lu_a, p.b())?;
    let na = two_norm(p.a());
    let nb = two_norm(p.b());
    let gain = omega * omega / sigma;
    let shifted = DenseMatrix::identity(p.dim()).sub(&p.b().scale(gain))?;
    let ns = two_norm(&shifted);
    let w1 = (1.0 - omega).abs();
    let lhs1 = (w1 * ns - gain * w1 * ab * na).abs();
    let lhs2 = gain * ab * (nb + w1 * na);
    let rhs2 = (1.0 - w1) * (1.0 - ns);
    Ok(ConditionReport::from_inequalities(
        "corollary-nsor",
        vec![
            InequalityRecord::strict("nsor.cond1", lhs1, 1.0),
            InequalityRecord::strict("nsor.cond2", lhs2, rhs2),
        ],
    ))
}

/// Irreducibility of a nonnegative matrix, certified by `(I+U)^(n-1) > 0`.
pub fn is_irreducible(u: &DenseMatrix) -> Result<bool> {
    if !u.is_square() {
        return Err(Error::NonSquare {
            rows: u.rows(),
            cols: u.cols(),
        });
    }
    if let Some((row, col)) = u.first_negative() {
        return Err(Error::NegativeEntry { row, col });
    }
    let n = u.rows();
    let shifted = DenseMatrix::identity(n).add(u)?;
    let mut power = DenseMatrix::identity(n);
    for _ in 0..n.saturating_sub(1) {
        power = power.matmul(&shifted)?;
    }
    Ok((0..n).all(|i| (0..n).all(|j| power.get(i, j) > 0.0)))
}

/// Verdict of the dominance comparison between two 2x2 bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DominanceVerdict {
    /// `0 <= small <= big` componentwise, `small != big`, and `small + big`
    /// irreducible, which forces `rho(small) < rho(big)`.
    StrictOrder,
    NotComparable,
}

/// Check the dominance hypotheses on a pair of bound matrices.
pub fn compare_dominance(
    small: &IterationMatrix2x2,
    big: &IterationMatrix2x2,
) -> Result<DominanceVerdict> {
    let s = small.as_dense();
    let b = big.as_dense();
    if let Some((row, col)) = s.first_negative().or_else(|| b.first_negative()) {
        return Err(Error::NegativeEntry { row, col });
    }
    if !s.leq(&b)? || s == b {
        return Ok(DominanceVerdict::NotComparable);
    }
    if !is_irreducible(&s.add(&b)?)? {
        return Ok(DominanceVerdict::NotComparable);
    }
    Ok(DominanceVerdict::StrictOrder)
}

/// Evaluate every displayed hypothesis of the comparison theorem matching
/// the rival method (relaxed splitting, generalized SOR-like, or
/// two-parameter SOR), including the theta window and the rival's own
/// convergence conditions, plus irreducibility of the bound matrix `T`.
pub fn check_comparison_hypotheses(
    p: &GaveProblem,
    cfg: &GrmsConfig,
    rival: &ComparisonParams,
) -> Result<ConditionReport> {
    let k = constants(p, cfg)?;
    let t = build_t(&k, cfg.theta);
    let t_irreducible = is_irreducible(&t.as_dense())?;
    let mut ineqs: Vec<InequalityRecord> = Vec::new();
    // encoded as an inequality row so it serializes with the rest
    ineqs.push(InequalityRecord::non_strict(
        "t.irreducible",
        if t_irreducible { 0.0 } else { 1.0 },
        0.0,
    ));

    let which;
    match rival {
        ComparisonParams::Rms(r) => {
            which = "theorem-4.1";
            let lu = factorize(&r.m)?;
            let a_rms = norm_of_solve(&lu, &r.m.sub(p.a())?)?;
            let mb = norm_of_solve(&lu, p.b())?;
            let tau = r.tau;
            let t1 = (1.0 - tau).abs();
            // adopted reading of the baseline's own convergence lemma
            ineqs.push(InequalityRecord::strict("rms.cond1", t1 * a_rms, 1.0));
            ineqs.push(InequalityRecord::strict(
                "rms.cond2",
                tau * mb,
                (1.0 - a_rms) * (1.0 - t1),
            ));
            ineqs.push(InequalityRecord::non_strict("q.norm", two_norm(&cfg.q), 1.0));
            ineqs.push(InequalityRecord::strict(
                "beta.c",
                k.beta * k.c,
                t1 + tau * mb + 1.0,
            ));
            ineqs.push(InequalityRecord::strict(
                "beta.a",
                k.beta * (k.a + 1.0),
                tau * k.a,
            ));
            ineqs.push(InequalityRecord::strict(
                "alpha.c.d",
                k.alpha * k.c + k.d,
                1.0,
            ));
            ineqs.push(InequalityRecord::strict(
                "slack",
                k.alpha * k.c * (tau * k.a - k.beta)
                    + k.a * k.alpha * (1.0 - t1 - tau * mb),
                (1.0 - k.d) * (tau * k.a - k.beta * (k.a + 1.0)),
            ));
            let lo = (1.0 + k.beta * k.c - (t1 + tau * mb)) / (1.0 - (k.alpha * k.c + k.d));
            let hi1 = (t1 + tau * mb + 1.0 - k.beta * k.c) / (1.0 + k.alpha * k.c + k.d);
            let hi2 = (tau * k.a - (k.a + 1.0) * k.beta) / (k.a * k.alpha);
            ineqs.push(InequalityRecord::strict("theta.lo", lo, cfg.theta));
            ineqs.push(InequalityRecord::strict("theta.hi", cfg.theta, hi1.min(hi2)));
        }
        ComparisonParams::Mgsor(g) => {
            which = "theorem-4.2";
            let t_rival = build_comparison_matrix(rival, p)?;
            let qi = two_norm(&factorize(&g.q)?.inverse());
            let lu_a = factorize(p.a())?;
            let abq = norm_of_solve(&lu_a, &p.b().matmul(&g.q)?)?;
            let a1 = (1.0 - g.alpha).abs();
            let b1 = (1.0 - g.beta).abs();
            // the rival's own convergence condition
            ineqs.push(InequalityRecord::strict("mgsor.relax", a1 * b1, 1.0));
            ineqs.push(InequalityRecord::strict(
                "mgsor.product",
                g.alpha * g.beta * abq * qi,
                (1.0 - a1) * (1.0 - b1),
            ));
            ineqs.push(InequalityRecord::strict("a.bound", k.a, a1));
            ineqs.push(InequalityRecord::strict("c.bound", k.c, g.alpha * abq));
            ineqs.push(InequalityRecord::strict(
                "alpha.c.d",
                k.alpha * k.c + k.d,
                1.0,
            ));
            let t22 = t_rival.entries[3];
            let t21 = t_rival.entries[2];
            ineqs.push(InequalityRecord::strict(
                "slack",
                k.beta * ((k.a + 1.0) * (1.0 - k.d) - k.alpha * k.c)
                    - t21 * (1.0 - k.alpha * k.c - k.d),
                k.a * k.alpha * (t22 - 1.0),
            ));
            let mu = (1.0 + k.beta * k.c - t22) / (1.0 - (k.alpha * k.c + k.d));
            let nu = (1.0 - k.beta * k.c + t22) / (1.0 + k.alpha * k.c + k.d);
            let delta = (t21 - (k.a + 1.0) * k.beta) / (k.a * k.alpha);
            ineqs.push(InequalityRecord::strict("theta.lo", mu, cfg.theta));
            ineqs.push(InequalityRecord::strict("theta.hi", cfg.theta, nu.min(delta)));
        }
        ComparisonParams::Nsor(s) => {
            which = "theorem-4.3";
            let t_rival = build_comparison_matrix(rival, p)?;
            let nsor_own = nsor_condition(p, s.omega, s.sigma)?;
            ineqs.extend(nsor_own.inequalities);
            let lu_a = factorize(p.a())?;
            let ab = norm_of_solve(&lu_a, p.b())?;
            ineqs.push(InequalityRecord::strict("a.bound", k.a, (1.0 - s.omega).abs()));
            ineqs.push(InequalityRecord::strict("c.bound", k.c, s.omega * ab));
            ineqs.push(InequalityRecord::strict(
                "alpha.c.d",
                k.alpha * k.c + k.d,
                1.0,
            ));
            let t21 = t_rival.entries[2];
            let t22 = t_rival.entries[3];
            ineqs.push(InequalityRecord::strict(
                "slack",
                t21 * (k.alpha * k.c + k.d - 1.0)
                    - k.beta * ((k.alpha + 1.0) * (k.d - 1.0) + k.alpha * k.c),
                k.a * k.alpha * (t22 - 1.0),
            ));
            let mu = (t22 - k.beta * k.c - 1.0) / (k.alpha * k.c + k.d - 1.0);
            let nu = (t22 - k.beta * k.c + 1.0) / (1.0 + k.alpha * k.c + k.d);
            let delta = (t21 - (k.a + 1.0) * k.beta) / (k.a * k.alpha);
            ineqs.push(InequalityRecord::strict("theta.lo", mu, cfg.theta));
            ineqs.push(InequalityRecord::strict("theta.hi", cfg.theta, nu.min(delta)));
        }
    }
    Ok(ConditionReport::from_inequalities(which, ineqs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::{gen_example_4_1, gen_example_4_2, gen_example_4_3, gen_picard_remark};

    const TOL: f64 = 5e-4;

    #[test]
    fn constants_of_example_4_1() {
        let (p, cfg, _) = gen_example_4_1();
        let k = constants(&p, &cfg).unwrap();
        assert!((k.a - 0.0250).abs() < TOL, "a = {}", k.a);
        assert!((k.c - 0.4455).abs() < TOL, "c = {}", k.c);
        // scalar splittings: d = 0.01/0.97, alpha = 1/0.97, beta = 0.01/0.97
        assert!((k.d - 0.01 / 0.97).abs() < 1e-10);
        assert!((k.alpha - 1.0 / 0.97).abs() < 1e-10);
        assert!((k.beta - 0.01 / 0.97).abs() < 1e-10);
    }

    #[test]
    fn degenerate_constants() {
        let (p, mut cfg, _) = gen_example_4_1();
        cfg.h = DenseMatrix::zeros(4, 4);
        let k = constants(&p, &cfg).unwrap();
        assert_eq!(k.beta, 0.0);

        let (p, mut cfg, _) = gen_example_4_1();
        cfg.q2 = DenseMatrix::zeros(4, 4);
        cfg.q1 = cfg.q.clone();
        let k = constants(&p, &cfg).unwrap();
        assert_eq!(k.d, 0.0);
    }

    #[test]
    fn t_matrices_of_the_examples() {
        let (p, cfg, _) = gen_example_4_1();
        let t = build_t(&constants(&p, &cfg).unwrap(), cfg.theta);
        let expect = [0.0250, 0.4455, 0.0276, 0.6545];
        for (got, want) in t.entries.iter().zip(expect) {
            assert!((got - want).abs() < TOL, "{got} vs {want}");
        }
        assert!((t.rho - 0.6734).abs() < TOL);

        let (p, cfg, _) = gen_example_4_2();
        let t = build_t(&constants(&p, &cfg).unwrap(), cfg.theta);
        assert!((t.rho - 0.0651).abs() < TOL);

        let (p, cfg, _) = gen_example_4_3();
        let t = build_t(&constants(&p, &cfg).unwrap(), cfg.theta);
        assert!((t.rho - 0.3914).abs() < TOL);
    }

    #[test]
    fn zero_constants_give_zero_t() {
        let k = ConvergenceConstants {
            a: 0.0,
            c: 0.0,
            d: 0.0,
            alpha: 1.0,
            beta: 0.0,
        };
        let t = build_t(&k, 1.0);
        assert_eq!(t.entries, [0.0; 4]);
        assert_eq!(t.rho, 0.0);
    }

    #[test]
    fn theorem_3_1_on_the_examples() {
        let (p, cfg, _) = gen_example_4_1();
        let rep = check_theorem_3_1(&constants(&p, &cfg).unwrap(), cfg.theta);
        assert!(rep.satisfied);

        // M = A, Q = Q1 = I, H = 0, theta = 1 reduces both conditions to c < 1
        let k = ConvergenceConstants {
            a: 0.0,
            c: 0.5,
            d: 0.0,
            alpha: 1.0,
            beta: 0.0,
        };
        assert!(check_theorem_3_1(&k, 1.0).satisfied);
        let k_bad = ConvergenceConstants { c: 1.5, ..k };
        assert!(!check_theorem_3_1(&k_bad, 1.0).satisfied);
    }

    #[test]
    fn theta_interval_examples() {
        // beta = 0 collapses the lower endpoint to zero
        let k = ConvergenceConstants {
            a: 0.3,
            c: 0.2,
            d: 0.1,
            alpha: 1.2,
            beta: 0.0,
        };
        let rep = theta_interval_cor_3_1(&k);
        assert!(rep.satisfied);
        let (lo, hi) = rep.theta_interval.unwrap();
        assert_eq!(lo, 0.0);
        let expect_hi = 2.0 * (1.0 - k.a) / ((1.0 - k.a) * (1.0 + k.d) + k.c * k.alpha);
        assert!((hi - expect_hi).abs() < 1e-14);

        // the second example's constants admit theta = 1
        let (p, cfg, _) = gen_example_4_2();
        let rep = theta_interval_cor_3_1(&constants(&p, &cfg).unwrap());
        let (lo, hi) = rep.theta_interval.unwrap();
        assert!(lo < 1.0 && 1.0 < hi, "interval ({lo}, {hi})");
    }

    #[test]
    fn theta_samples_inside_interval_satisfy_theorem() {
        let (p, cfg, _) = gen_example_4_2();
        let k = constants(&p, &cfg).unwrap();
        let (lo, hi) = theta_interval_cor_3_1(&k).theta_interval.unwrap();
        for i in 1..=20 {
            let theta = lo + (hi - lo) * i as f64 / 21.0;
            assert!(
                check_theorem_3_1(&k, theta).satisfied,
                "theta = {theta} fails inside ({lo}, {hi})"
            );
        }
    }

    #[test]
    fn picard_condition_on_remark_pairs() {
        let p1 = gen_picard_remark(1).unwrap();
        let rep = check_named_condition(&MethodSpec::picard(), &p1).unwrap();
        assert!(!rep.satisfied);
        assert!((rep.inequalities[0].lhs - 1.1841).abs() < 1e-3);

        let p2 = gen_picard_remark(2).unwrap();
        let rep = check_named_condition(&MethodSpec::picard(), &p2).unwrap();
        assert!(rep.satisfied);
        assert!((rep.inequalities[0].lhs - 0.8851).abs() < 1e-3);
    }

    #[test]
    fn fpi_condition_needs_contractive_inverse() {
        // ||A^-1|| = 2 >= 1: unsatisfied regardless of tau
        let a = DenseMatrix::from_diagonal(&[0.5, 0.5]);
        let p = GaveProblem::new(a, DenseMatrix::identity(2), crate::linalg::Vector::zeros(2))
            .unwrap();
        for tau in [0.1, 0.5, 1.0, 1.5] {
            let rep = check_named_condition(&MethodSpec::fpi(tau), &p).unwrap();
            assert!(!rep.satisfied, "tau = {tau}");
        }
    }

    #[test]
    fn unsupported_methods_have_no_condition() {
        let (p, _, _) = gen_example_4_1();
        assert!(matches!(
            check_named_condition(&MethodSpec::grms(1.0, 0.0), &p),
            Err(Error::UnsupportedMethod(_))
        ));
        assert!(matches!(
            check_named_condition(&MethodSpec::ssmn(), &p),
            Err(Error::UnsupportedMethod(_))
        ));
    }

    #[test]
    fn comparison_matrices_of_the_examples() {
        let (p, _, rms) = gen_example_4_1();
        let t = build_comparison_matrix(&ComparisonParams::Rms(rms), &p).unwrap();
        let expect = [0.0250, 0.4545, 0.0302, 0.7600];
        for (got, want) in t.entries.iter().zip(expect) {
            assert!((got - want).abs() < TOL, "{got} vs {want}");
        }
        assert!((t.rho - 0.7783).abs() < TOL);

        let (p, _, mg) = gen_example_4_2();
        let t = build_comparison_matrix(&ComparisonParams::Mgsor(mg), &p).unwrap();
        assert!((t.rho - 0.1480).abs() < TOL);

        let (p, _, ns) = gen_example_4_3();
        let t = build_comparison_matrix(&ComparisonParams::Nsor(ns), &p).unwrap();
        let expect = [0.1000, 0.3793, 0.6622, 0.6605];
        for (got, want) in t.entries.iter().zip(expect) {
            assert!((got - want).abs() < TOL, "{got} vs {want}");
        }
        assert!((t.rho - 0.9544).abs() < TOL);
    }

    #[test]
    fn irreducibility_checks() {
        let swap = DenseMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert!(is_irreducible(&swap).unwrap());
        assert!(!is_irreducible(&DenseMatrix::identity(2)).unwrap());

        let (p, cfg, _) = gen_example_4_1();
        let t = build_t(&constants(&p, &cfg).unwrap(), cfg.theta);
        assert!(is_irreducible(&t.as_dense()).unwrap());

        let mut neg = DenseMatrix::zeros(2, 2);
        neg.set(0, 1, -1.0);
        assert!(matches!(
            is_irreducible(&neg),
            Err(Error::NegativeEntry { .. })
        ));
    }

    #[test]
    fn dominance_on_example_4_1() {
        let (p, cfg, rms) = gen_example_4_1();
        let t = build_t(&constants(&p, &cfg).unwrap(), cfg.theta);
        let t_rms = build_comparison_matrix(&ComparisonParams::Rms(rms), &p).unwrap();
        assert!(t.as_dense().leq(&t_rms.as_dense()).unwrap());
        assert_eq!(
            compare_dominance(&t, &t_rms).unwrap(),
            DominanceVerdict::StrictOrder
        );
        assert!(t.rho < t_rms.rho);
        // equal matrices are not comparable (U != R is violated)
        assert_eq!(
            compare_dominance(&t, &t).unwrap(),
            DominanceVerdict::NotComparable
        );
    }

    #[test]
    fn dominance_orders_random_dominated_pairs() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(42);
        let mut ordered = 0usize;
        for _ in 0..1000 {
            // big nonnegative with positive off-diagonals, small dominated
            let big = [
                rng.gen_range(0.0..2.0),
                rng.gen_range(1e-6..2.0),
                rng.gen_range(1e-6..2.0),
                rng.gen_range(0.0..2.0),
            ];
            let small: Vec<f64> = big
                .iter()
                .map(|&v| v * rng.gen_range(0.0..0.999))
                .collect();
            let t_small = IterationMatrix2x2::new(
                TKind::Grms,
                [small[0], small[1], small[2], small[3]],
            );
            let t_big = IterationMatrix2x2::new(TKind::Grms, big);
            if compare_dominance(&t_small, &t_big).unwrap() == DominanceVerdict::StrictOrder {
                ordered += 1;
                assert!(
                    t_small.rho < t_big.rho,
                    "rho order violated: {} vs {}",
                    t_small.rho,
                    t_big.rho
                );
            }
        }
        assert!(ordered > 900, "only {ordered} pairs were strictly ordered");
    }

    #[test]
    fn named_conditions_on_a_contractive_problem() {
        // strongly dominant A with a small B satisfies every corollary at
        // mild relaxation parameters
        let a = DenseMatrix::from_diagonal(&[5.0, 6.0, 7.0]);
        let b = DenseMatrix::from_diagonal(&[0.4, 0.5, 0.3]);
        let p = GaveProblem::new(a.clone(), b, crate::linalg::Vector::zeros(3)).unwrap();

        let rms = MethodSpec::rms(a.clone(), 1.0);
        assert!(check_named_condition(&rms, &p).unwrap().satisfied);

        let nms = MethodSpec::new(crate::presets::MethodName::Nms).with_matrix("M", a.clone());
        assert!(check_named_condition(&nms, &p).unwrap().satisfied);

        let mn = MethodSpec::new(crate::presets::MethodName::Mn);
        assert!(check_named_condition(&mn, &p).unwrap().satisfied);

        let sor = MethodSpec::sor(0.9);
        assert!(check_named_condition(&sor, &p).unwrap().satisfied);

        let mgsor = MethodSpec::mgsor(1.0, 1.0, DenseMatrix::identity(3));
        assert!(check_named_condition(&mgsor, &p).unwrap().satisfied);

        let mfpi = MethodSpec::mfpi(0.9, DenseMatrix::identity(3));
        assert!(check_named_condition(&mfpi, &p).unwrap().satisfied);

        let msor = MethodSpec::msor(1.0, 0.9);
        assert!(check_named_condition(&msor, &p).unwrap().satisfied);

        let nsor = MethodSpec::nsor(1.0, 1.1);
        assert!(check_named_condition(&nsor, &p).unwrap().satisfied);

        let fpiss = MethodSpec::fpiss(5.0, 0.9);
        assert!(check_named_condition(&fpiss, &p).unwrap().satisfied);
    }

    #[test]
    fn comparison_hypotheses_hold_on_all_three_examples() {
        let (p, cfg, rms) = gen_example_4_1();
        let rep = check_comparison_hypotheses(&p, &cfg, &ComparisonParams::Rms(rms)).unwrap();
        assert!(rep.satisfied, "{:?}", rep.inequalities);

        let (p, cfg, mg) = gen_example_4_2();
        let rep = check_comparison_hypotheses(&p, &cfg, &ComparisonParams::Mgsor(mg)).unwrap();
        assert!(rep.satisfied, "{:?}", rep.inequalities);

        let (p, cfg, ns) = gen_example_4_3();
        let rep = check_comparison_hypotheses(&p, &cfg, &ComparisonParams::Nsor(ns)).unwrap();
        assert!(rep.satisfied, "{:?}", rep.inequalities);
    }
}
