//! `solve`: run one method on one problem and emit a run record.

use std::time::Instant;

use crate::cmd::{bind_method, condition_report, condition_summary, run_bound};
use crate::methods::{parse_method, parse_params, params_string};
use crate::problems::resolve;
use crate::records::{write_records, write_trace, RunRecord};
use crate::RunFlags;
use gave_kit::solver::StopRule;

pub fn run(
    problem: &str,
    method: &str,
    params: Option<&str>,
    trace: Option<&str>,
    flags: &RunFlags,
) -> Result<(), String> {
    let rp = resolve(problem)?;
    let name = parse_method(method)?;
    let params = parse_params(params)?;
    let stop = StopRule::new(flags.tol, flags.max_iter).map_err(|e| e.to_string())?;
    let x0 = rp.start_vector(&flags.x0)?;

    let bound = bind_method(&rp, name, &params)?;
    let t0 = Instant::now();
    let outcome = run_bound(&rp, &bound, &x0, &stop)?;
    let wall_seconds = t0.elapsed().as_secs_f64();
    let report = condition_report(&rp, &bound);

    let record = RunRecord {
        method: name.as_str().to_string(),
        params: bound
            .spec
            .as_ref()
            .map(|s| params_string(&s.params))
            .unwrap_or_else(|| params_string(&params)),
        status: outcome.status.to_string(),
        iterations: outcome.iterations,
        res: *outcome.res_history.last().unwrap_or(&f64::NAN),
        wall_seconds,
        condition: condition_summary(&report),
    };
    write_records(&[record], flags.output, flags.out.as_deref())?;

    if let Some(path) = trace {
        write_trace(path, &outcome.res_history)?;
    }
    Ok(())
}
