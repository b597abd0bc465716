//! `sweep`: full-factorial parameter sweep with per-cell analysis.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cmd::{bind_method, condition_report, condition_summary, method_rho, run_bound};
use crate::methods::{parse_method, params_string};
use crate::problems::resolve;
use crate::records::write_records;
use crate::RunFlags;
use gave_kit::solver::StopRule;

const MAX_CELLS: usize = 1_000_000;
const MAX_SWEPT: usize = 3;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepRecord {
    pub method: String,
    pub params: String,
    /// Spectral radius of the method's bound matrix, when defined.
    pub rho: Option<f64>,
    pub condition: String,
    pub status: String,
    pub iterations: usize,
    pub res: f64,
    pub wall_seconds: f64,
}

enum Axis {
    Fixed(f64),
    Grid { lo: f64, hi: f64, step: f64 },
}

fn parse_axes(s: &str) -> Result<Vec<(String, Vec<f64>)>, String> {
    let mut axes = Vec::new();
    let mut swept = 0usize;
    for kv in s.split(',').filter(|x| !x.is_empty()) {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| format!("expected key=value or key=lo:hi:step, got `{kv}`"))?;
        let axis = if v.contains(':') {
            let parts: Vec<&str> = v.split(':').collect();
            if parts.len() != 3 {
                return Err(format!("grid syntax is lo:hi:step, got `{v}`"));
            }
            let lo: f64 = parts[0].parse().map_err(|_| format!("bad lo in `{v}`"))?;
            let hi: f64 = parts[1].parse().map_err(|_| format!("bad hi in `{v}`"))?;
            let step: f64 = parts[2].parse().map_err(|_| format!("bad step in `{v}`"))?;
            if step <= 0.0 || hi < lo {
                return Err(format!("grid `{v}` must have step > 0 and hi >= lo"));
            }
            Axis::Grid { lo, hi, step }
        } else {
            Axis::Fixed(v.parse().map_err(|_| format!("bad value in `{kv}`"))?)
        };
        let values = match axis {
            Axis::Fixed(v) => vec![v],
            Axis::Grid { lo, hi, step } => {
                let count = ((hi - lo) / step + 0.5).floor() as usize + 1;
                (0..count).map(|i| lo + i as f64 * step).collect()
            }
        };
        if values.len() > 1 {
            swept += 1;
        }
        axes.push((k.to_string(), values));
    }
    if axes.is_empty() {
        return Err("sweep needs at least one parameter".into());
    }
    if swept > MAX_SWEPT {
        return Err(format!("at most {MAX_SWEPT} swept parameters are supported"));
    }
    Ok(axes)
}

fn thread_pool() -> Result<rayon::ThreadPool, String> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("GAVE_KIT_THREADS") {
        let n: usize = v
            .parse()
            .map_err(|_| format!("GAVE_KIT_THREADS must be a number, got `{v}`"))?;
        builder = builder.num_threads(n.max(1));
    }
    builder.build().map_err(|e| e.to_string())
}

pub fn run(problem: &str, method: &str, params: &str, flags: &RunFlags) -> Result<(), String> {
    let rp = resolve(problem)?;
    let name = parse_method(method)?;
    let axes = parse_axes(params)?;
    let cells: usize = axes.iter().map(|(_, v)| v.len()).product();
    if cells > MAX_CELLS {
        return Err(format!(
            "grid has {cells} cells, the limit is {MAX_CELLS}"
        ));
    }
    let stop = StopRule::new(flags.tol, flags.max_iter).map_err(|e| e.to_string())?;
    let x0 = rp.start_vector(&flags.x0)?;

    // cells in row-major grid order over the axes as given
    let mut assignments: Vec<BTreeMap<String, f64>> = Vec::with_capacity(cells);
    for idx in 0..cells {
        let mut rem = idx;
        let mut map = BTreeMap::new();
        for (k, values) in axes.iter().rev() {
            map.insert(k.clone(), values[rem % values.len()]);
            rem /= values.len();
        }
        assignments.push(map);
    }

    let pool = thread_pool()?;
    let results: Vec<(usize, Result<SweepRecord, String>)> = pool.install(|| {
        assignments
            .par_iter()
            .enumerate()
            .map(|(idx, cell)| {
                let record = (|| {
                    let bound = bind_method(&rp, name, cell)?;
                    let t0 = Instant::now();
                    let outcome = run_bound(&rp, &bound, &x0, &stop)?;
                    let wall = t0.elapsed().as_secs_f64();
                    let report = condition_report(&rp, &bound);
                    Ok(SweepRecord {
                        method: name.as_str().to_string(),
                        params: params_string(cell),
                        rho: method_rho(&rp, &bound),
                        condition: condition_summary(&report),
                        status: outcome.status.to_string(),
                        iterations: outcome.iterations,
                        res: *outcome.res_history.last().unwrap_or(&f64::NAN),
                        wall_seconds: wall,
                    })
                })();
                (idx, record)
            })
            .collect()
    });

    let mut indexed: Vec<(usize, SweepRecord)> = Vec::with_capacity(cells);
    for (idx, r) in results {
        indexed.push((idx, r.map_err(|e| format!("cell {idx}: {e}"))?));
    }
    indexed.sort_by_key(|(idx, _)| *idx);

    // converged rows first, ordered by iterations then residual; ties and
    // non-converged rows keep grid order
    let rank = |s: &str| match s {
        "converged" => 0,
        "max-iter" => 1,
        _ => 2,
    };
    let mut order: Vec<usize> = (0..indexed.len()).collect();
    order.sort_by(|&i, &j| {
        let (gi, a) = &indexed[i];
        let (gj, b) = &indexed[j];
        rank(&a.status)
            .cmp(&rank(&b.status))
            .then(a.iterations.cmp(&b.iterations))
            .then(a.res.partial_cmp(&b.res).unwrap_or(std::cmp::Ordering::Equal))
            .then(gi.cmp(gj))
    });
    let rows: Vec<SweepRecord> = order.into_iter().map(|i| indexed[i].1.clone()).collect();
    write_records(&rows, flags.output, flags.out.as_deref())
}
