//! Subcommand implementations.

pub mod analyze;
pub mod compare;
pub mod reproduce;
pub mod solve;
pub mod sweep;

use std::collections::BTreeMap;

use gave_kit::analysis::{
    build_t, check_named_condition, check_theorem_3_1, constants, ConditionReport,
};
use gave_kit::linalg::Vector;
use gave_kit::presets::{instantiate, MethodConfig, MethodName, MethodSpec};
use gave_kit::solver::{solve_grms, solve_one_step, GrmsConfig, IterationOutcome, StopRule};

use crate::methods::resolve_spec;
use crate::problems::ResolvedProblem;

/// A method bound to a problem: the engine config plus the method spec it
/// came from (kept for condition checks and display).
pub struct BoundMethod {
    pub name: MethodName,
    pub spec: Option<MethodSpec>,
    pub config: MethodConfig,
}

/// Resolve a method on a problem. A parameterless `grms` on a builtin that
/// carries its own two-sequence config uses that config; anything else goes
/// through the preset catalog.
pub fn bind_method(
    rp: &ResolvedProblem,
    name: MethodName,
    params: &BTreeMap<String, f64>,
) -> Result<BoundMethod, String> {
    if name == MethodName::Grms && params.is_empty() {
        if let Some(cfg) = &rp.grms {
            return Ok(BoundMethod {
                name,
                spec: None,
                config: MethodConfig::Grms(cfg.clone()),
            });
        }
    }
    let spec = resolve_spec(rp, name, params)?;
    let config = instantiate(&rp.problem, &spec).map_err(|e| e.to_string())?;
    Ok(BoundMethod {
        name,
        spec: Some(spec),
        config,
    })
}

/// Run a bound method; the y-sequence starts from the same vector as x.
pub fn run_bound(
    rp: &ResolvedProblem,
    bound: &BoundMethod,
    x0: &Vector,
    stop: &StopRule,
) -> Result<IterationOutcome, String> {
    match &bound.config {
        MethodConfig::Grms(cfg) => {
            solve_grms(&rp.problem, cfg, x0, x0, stop).map_err(|e| e.to_string())
        }
        MethodConfig::OneStep(cfg) => {
            solve_one_step(&rp.problem, cfg, x0, stop).map_err(|e| e.to_string())
        }
    }
}

/// The sufficient-condition report attached to a bound method: the main
/// theorem for two-sequence configs bound as `grms`, the method's own
/// corollary otherwise. `None` when no condition applies.
pub fn condition_report(rp: &ResolvedProblem, bound: &BoundMethod) -> Option<ConditionReport> {
    match (&bound.name, &bound.config) {
        (MethodName::Grms, MethodConfig::Grms(cfg)) => grms_report(rp, cfg),
        _ => {
            let spec = bound.spec.as_ref()?;
            check_named_condition(spec, &rp.problem).ok()
        }
    }
}

fn grms_report(rp: &ResolvedProblem, cfg: &GrmsConfig) -> Option<ConditionReport> {
    let k = constants(&rp.problem, cfg).ok()?;
    Some(check_theorem_3_1(&k, cfg.theta))
}

pub fn condition_summary(report: &Option<ConditionReport>) -> String {
    match report {
        Some(r) if r.satisfied => "satisfied".to_string(),
        Some(_) => "unsatisfied".to_string(),
        None => "n/a".to_string(),
    }
}

/// Spectral radius of the bound matrix associated with a bound method:
/// the generic 2x2 bound for two-sequence configs, the rival-specific bound
/// for the named comparison baselines.
pub fn method_rho(rp: &ResolvedProblem, bound: &BoundMethod) -> Option<f64> {
    match &bound.config {
        MethodConfig::Grms(cfg) => match bound.name {
            MethodName::Rms | MethodName::Mgsor | MethodName::Nsor => {
                let params = comparison_params_of(bound, rp.problem.dim())?;
                gave_kit::analysis::build_comparison_matrix(&params, &rp.problem)
                    .ok()
                    .map(|t| t.rho)
            }
            _ => {
                let k = constants(&rp.problem, cfg).ok()?;
                Some(build_t(&k, cfg.theta).rho)
            }
        },
        MethodConfig::OneStep(_) => None,
    }
}

/// Extract rival-method comparison parameters from a bound spec.
pub fn comparison_params_of(
    bound: &BoundMethod,
    n: usize,
) -> Option<gave_kit::analysis::ComparisonParams> {
    let spec = bound.spec.as_ref()?;
    match bound.name {
        MethodName::Rms => Some(gave_kit::analysis::ComparisonParams::Rms(
            gave_kit::analysis::RmsParams {
                m: spec.matrix_params.get("M")?.clone(),
                tau: spec.param("tau")?,
            },
        )),
        MethodName::Mgsor => Some(gave_kit::analysis::ComparisonParams::Mgsor(
            gave_kit::analysis::MgsorParams {
                q: spec.matrix_params.get("Q").cloned().unwrap_or_else(|| {
                    gave_kit::DenseMatrix::scaled_identity(
                        n,
                        gave_kit::presets::EXPERIMENT_Q_SCALE,
                    )
                }),
                alpha: spec.param("alpha")?,
                beta: spec.param("beta")?,
            },
        )),
        MethodName::Nsor => Some(gave_kit::analysis::ComparisonParams::Nsor(
            gave_kit::analysis::NsorParams {
                omega: spec.param("omega")?,
                sigma: spec.param("sigma")?,
            },
        )),
        _ => None,
    }
}
