//! `analyze`: convergence constants, bound matrices, and condition verdicts,
//! emitted as flat records.

use crate::cmd::{bind_method, comparison_params_of};
use crate::methods::{parse_method, parse_params};
use crate::problems::resolve;
use crate::records::{write_records, ConditionRecord};
use crate::OutputFormat;
use gave_kit::analysis::{
    build_comparison_matrix, build_t, check_named_condition, check_theorem_3_1, constants,
    theta_interval_cor_3_1,
};
use gave_kit::presets::{MethodConfig, MethodName};

pub fn run(
    problem: &str,
    method: &str,
    params: Option<&str>,
    output: OutputFormat,
    out: Option<&str>,
) -> Result<(), String> {
    let rp = resolve(problem)?;
    let name = parse_method(method)?;
    let params = parse_params(params)?;
    let bound = bind_method(&rp, name, &params)?;
    let mut rows: Vec<ConditionRecord> = Vec::new();

    if let MethodConfig::Grms(cfg) = &bound.config {
        if name == MethodName::Grms {
            let k = constants(&rp.problem, cfg).map_err(|e| e.to_string())?;
            for (id, v) in [
                ("a", k.a),
                ("c", k.c),
                ("d", k.d),
                ("alpha", k.alpha),
                ("beta", k.beta),
                ("theta", cfg.theta),
            ] {
                rows.push(ConditionRecord::value("constants", id, v));
            }
            let t = build_t(&k, cfg.theta);
            for (id, v) in [
                ("t11", t.entries[0]),
                ("t12", t.entries[1]),
                ("t21", t.entries[2]),
                ("t22", t.entries[3]),
                ("rho", t.rho),
            ] {
                rows.push(ConditionRecord::value("t-matrix", id, v));
            }
            rows.extend(ConditionRecord::from_report(&check_theorem_3_1(
                &k, cfg.theta,
            )));
            let interval = theta_interval_cor_3_1(&k);
            rows.extend(ConditionRecord::from_report(&interval));
            if let Some((lo, hi)) = interval.theta_interval {
                rows.push(ConditionRecord::value("theta-interval", "lo", lo));
                rows.push(ConditionRecord::value("theta-interval", "hi", hi));
            }
        }
    }

    // rival-style bound matrix for the named comparison baselines
    if let Some(cp) = comparison_params_of(&bound, rp.problem.dim()) {
        let t = build_comparison_matrix(&cp, &rp.problem).map_err(|e| e.to_string())?;
        let which = format!("t-{}", name.as_str());
        for (id, v) in [
            ("t11", t.entries[0]),
            ("t12", t.entries[1]),
            ("t21", t.entries[2]),
            ("t22", t.entries[3]),
            ("rho", t.rho),
        ] {
            rows.push(ConditionRecord::value(&which, id, v));
        }
    }

    // the method's own sufficient condition, when one exists
    if name != MethodName::Grms {
        if let Some(spec) = &bound.spec {
            match check_named_condition(spec, &rp.problem) {
                Ok(rep) => rows.extend(ConditionRecord::from_report(&rep)),
                Err(gave_kit::Error::UnsupportedMethod(_)) => {}
                Err(e) => return Err(e.to_string()),
            }
        }
    }

    if rows.is_empty() {
        return Err(format!(
            "nothing to analyze for method `{}` (no condition or bound matrix applies)",
            name.as_str()
        ));
    }
    write_records(&rows, output, out)
}
