//! `reproduce`: re-run a fixed benchmark target and diff the iteration
//! counts against the embedded reference values.

use serde::{Deserialize, Serialize};

use crate::problems::{parse_block_count, resolve};
use crate::records::{write_records, ConditionRecord};
use crate::OutputFormat;
use gave_kit::analysis::{
    build_comparison_matrix, build_t, check_comparison_hypotheses, constants,
};
use gave_kit::experiments::{run_cell, table1_rows, table2_rows, Expected, TableRow, TABLE_MS};
use gave_kit::linalg::{factorize, spectral_radius, two_norm, Vector};
use gave_kit::problem::{gen_example_5_1, gen_example_5_2, gen_picard_remark};
use gave_kit::solver::{solve_grms, SolveStatus, StopRule};

/// Dense storage guard: the largest block-banded instance the reproduction
/// path will materialize (n^2 doubles per matrix, several live at once).
const MAX_N: usize = 6000;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReproRecord {
    pub table: String,
    pub method: String,
    pub m: usize,
    pub params: String,
    pub status: String,
    pub iterations: usize,
    pub res: f64,
    /// Reference iteration count (or `diverged`).
    pub reference: String,
    /// `iterations - reference`, when both are counts.
    pub it_diff: Option<i64>,
}

fn params_display(row: &TableRow, col: usize) -> String {
    row.params[col]
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(";")
}

fn run_table(
    table: &str,
    rows: &[TableRow],
    gen: fn(usize, usize) -> gave_kit::Result<gave_kit::GaveProblem>,
    blocks_raw: &str,
) -> Result<Vec<ReproRecord>, String> {
    let stop = StopRule::default();
    let mut records = Vec::new();
    for (col, &m) in TABLE_MS.iter().enumerate() {
        let blocks = parse_block_count(blocks_raw, m)?;
        let n = m * blocks;
        if n > MAX_N {
            eprintln!(
                "skipping m = {m}: n = {n} exceeds the dense reproduction limit {MAX_N}"
            );
            continue;
        }
        let p = gen(m, blocks).map_err(|e| e.to_string())?;
        for row in rows {
            let out = run_cell(&p, row, col, &stop).map_err(|e| e.to_string())?;
            let (reference, it_diff) = match row.expected[col] {
                Expected::Iterations(want) => (
                    want.to_string(),
                    (out.status == SolveStatus::Converged)
                        .then(|| out.iterations as i64 - want as i64),
                ),
                Expected::Diverged => ("diverged".to_string(), None),
            };
            records.push(ReproRecord {
                table: table.to_string(),
                method: row.label.to_string(),
                m,
                params: params_display(row, col),
                status: out.status.to_string(),
                iterations: out.iterations,
                res: *out.res_history.last().unwrap_or(&f64::NAN),
                reference,
                it_diff,
            });
        }
    }
    Ok(records)
}

fn reproduce_example(target: &str) -> Result<Vec<ConditionRecord>, String> {
    let rp = resolve(target)?;
    let cfg = rp.grms.as_ref().expect("comparison examples carry a config");
    let rival = rp.rival.as_ref().expect("comparison examples carry a rival");
    let mut rows = Vec::new();

    let k = constants(&rp.problem, cfg).map_err(|e| e.to_string())?;
    let t = build_t(&k, cfg.theta);
    rows.push(ConditionRecord::value(target, "rho.t", t.rho));
    let tr = build_comparison_matrix(rival, &rp.problem).map_err(|e| e.to_string())?;
    rows.push(ConditionRecord::value(target, "rho.rival", tr.rho));
    let rep = check_comparison_hypotheses(&rp.problem, cfg, rival).map_err(|e| e.to_string())?;
    rows.extend(ConditionRecord::from_report(&rep));

    // iteration race at the figure tolerance
    let stop = StopRule::new(1e-9, 500).map_err(|e| e.to_string())?;
    let zero = Vector::zeros(rp.problem.dim());
    let ours = solve_grms(&rp.problem, cfg, &zero, &zero, &stop).map_err(|e| e.to_string())?;
    rows.push(ConditionRecord::value(
        target,
        "race.it",
        ours.iterations as f64,
    ));
    Ok(rows)
}

fn reproduce_picard_remark() -> Result<Vec<ConditionRecord>, String> {
    let mut rows = Vec::new();
    for which in [1u8, 2] {
        let p = gen_picard_remark(which).map_err(|e| e.to_string())?;
        let w = factorize(p.a())
            .map_err(|e| e.to_string())?
            .solve_matrix(p.b())
            .map_err(|e| e.to_string())?;
        let which_s = format!("picard-remark-{which}");
        rows.push(ConditionRecord::value(&which_s, "norm", two_norm(&w)));
        rows.push(ConditionRecord::value(
            &which_s,
            "rho.abs",
            spectral_radius(&w.abs()).map_err(|e| e.to_string())?,
        ));
        let rep = gave_kit::analysis::check_named_condition(
            &gave_kit::presets::MethodSpec::picard(),
            &p,
        )
        .map_err(|e| e.to_string())?;
        rows.extend(ConditionRecord::from_report(&rep).into_iter().map(|mut r| {
            r.which = which_s.clone();
            r
        }));
    }
    Ok(rows)
}

pub fn run(
    target: &str,
    blocks: &str,
    output: OutputFormat,
    out: Option<&str>,
) -> Result<(), String> {
    match target {
        "table1" => {
            let records = run_table("table1", &table1_rows(), gen_example_5_1, blocks)?;
            write_records(&records, output, out)
        }
        "table2" => {
            let records = run_table("table2", &table2_rows(), gen_example_5_2, blocks)?;
            write_records(&records, output, out)
        }
        "ex41" | "ex42" | "ex43" => {
            let rows = reproduce_example(target)?;
            write_records(&rows, output, out)
        }
        "picard-remark" => {
            let rows = reproduce_picard_remark()?;
            write_records(&rows, output, out)
        }
        other => Err(format!(
            "unknown target `{other}` (expected table1, table2, ex41, ex42, ex43, picard-remark)"
        )),
    }
}
