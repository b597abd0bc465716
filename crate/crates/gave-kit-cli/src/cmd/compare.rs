//! `compare`: dominance-theorem check plus an iteration race.

use std::fs::File;
use std::io::Write;

use crate::cmd::{bind_method, comparison_params_of, run_bound};
use crate::methods::{parse_method, parse_params};
use crate::problems::resolve;
use gave_kit::analysis::{
    build_comparison_matrix, build_t, check_comparison_hypotheses, compare_dominance, constants,
    DominanceVerdict,
};
use gave_kit::presets::{MethodConfig, MethodName};
use gave_kit::solver::StopRule;

#[allow(clippy::too_many_arguments)]
pub fn run(
    problem: &str,
    method_a: &str,
    method_b: &str,
    params_a: Option<&str>,
    params_b: Option<&str>,
    tol: f64,
    max_iter: usize,
    out: Option<&str>,
) -> Result<(), String> {
    let rp = resolve(problem)?;
    let name_a = parse_method(method_a)?;
    let name_b = parse_method(method_b)?;
    let bound_a = bind_method(&rp, name_a, &parse_params(params_a)?)?;
    let bound_b = bind_method(&rp, name_b, &parse_params(params_b)?)?;

    println!(
        "compare {} vs {} on {}",
        name_a.as_str(),
        name_b.as_str(),
        rp.name
    );

    // theorem check only for (grms, rival) pairs with a dominance theorem
    let supported = name_a == MethodName::Grms
        && matches!(
            name_b,
            MethodName::Rms | MethodName::Mgsor | MethodName::Nsor
        );
    if supported {
        let cfg = match &bound_a.config {
            MethodConfig::Grms(c) => c,
            MethodConfig::OneStep(_) => unreachable!("grms binds to a two-sequence config"),
        };
        let rival = comparison_params_of(&bound_b, rp.problem.dim())
            .ok_or("rival parameters missing for the theorem check")?;
        let rep = check_comparison_hypotheses(&rp.problem, cfg, &rival)
            .map_err(|e| e.to_string())?;
        println!(
            "hypotheses {}: {}",
            rep.which,
            if rep.satisfied { "satisfied" } else { "unsatisfied" }
        );
        let k = constants(&rp.problem, cfg).map_err(|e| e.to_string())?;
        let t = build_t(&k, cfg.theta);
        let tr = build_comparison_matrix(&rival, &rp.problem).map_err(|e| e.to_string())?;
        let verdict = compare_dominance(&t, &tr).map_err(|e| e.to_string())?;
        println!(
            "rho: {:.4} vs {:.4}, dominance: {}",
            t.rho,
            tr.rho,
            match verdict {
                DominanceVerdict::StrictOrder => "strict-order",
                DominanceVerdict::NotComparable => "not-comparable",
            }
        );
    } else {
        println!("no dominance theorem for this pair; running the race only");
    }

    let stop = StopRule::new(tol, max_iter).map_err(|e| e.to_string())?;
    let x0 = rp.start_vector("paper-default")?;
    let out_a = run_bound(&rp, &bound_a, &x0, &stop)?;
    let out_b = run_bound(&rp, &bound_b, &x0, &stop)?;
    println!(
        "race at tol {tol:.1e}: {} {} in {} sweeps, {} {} in {} sweeps",
        name_a.as_str(),
        out_a.status,
        out_a.iterations,
        name_b.as_str(),
        out_b.status,
        out_b.iterations,
    );

    if let Some(path) = out {
        let mut f = File::create(path).map_err(|e| e.to_string())?;
        writeln!(f, "iteration,res_a,res_b").map_err(|e| e.to_string())?;
        let len = out_a.res_history.len().max(out_b.res_history.len());
        for k in 0..len {
            let a = out_a
                .res_history
                .get(k)
                .map(|v| v.to_string())
                .unwrap_or_default();
            let b = out_b
                .res_history
                .get(k)
                .map(|v| v.to_string())
                .unwrap_or_default();
            writeln!(f, "{},{a},{b}", k + 1).map_err(|e| e.to_string())?;
        }
    }
    Ok(())
}
