//! Problem-spec grammar: builtin generators and Matrix Market files.

use gave_kit::analysis::{ComparisonParams, MgsorParams, NsorParams, RmsParams};
use gave_kit::linalg::{read_vector_file, Vector};
use gave_kit::problem::{
    gen_example_4_1, gen_example_4_2, gen_example_4_3, gen_example_5_1, gen_example_5_2,
    gen_picard_remark, load_problem, GaveProblem,
};
use gave_kit::solver::GrmsConfig;

/// A parsed `--problem` argument together with everything the builtin
/// carries: its own two-sequence config (the small comparison examples) and
/// the rival-method parameters it was published against.
pub struct ResolvedProblem {
    pub name: String,
    pub problem: GaveProblem,
    /// The problem's own two-sequence config, when the builtin defines one.
    pub grms: Option<GrmsConfig>,
    /// Rival parameters for the comparison examples.
    pub rival: Option<ComparisonParams>,
    /// Whether the benchmark start vector applies (block-banded families).
    pub benchmark_start: bool,
}

pub fn parse_block_count(s: &str, m: usize) -> Result<usize, String> {
    if s == "m" {
        Ok(m)
    } else {
        s.parse::<usize>()
            .map_err(|_| format!("blocks must be a number or `m`, got `{s}`"))
    }
}

fn parse_kv_args(args: &str) -> Result<Vec<(String, String)>, String> {
    args.split(',')
        .filter(|s| !s.is_empty())
        .map(|kv| {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| format!("expected key=value, got `{kv}`"))?;
            Ok((k.to_string(), v.to_string()))
        })
        .collect()
}

/// Parse the problem grammar and construct the instance.
pub fn resolve(spec: &str) -> Result<ResolvedProblem, String> {
    let (head, args) = match spec.split_once(':') {
        Some((h, a)) => (h, Some(a)),
        None => (spec, None),
    };
    match head {
        "ex41" => {
            let (problem, grms, rms) = gen_example_4_1();
            Ok(ResolvedProblem {
                name: spec.to_string(),
                problem,
                grms: Some(grms),
                rival: Some(ComparisonParams::Rms(rms)),
                benchmark_start: false,
            })
        }
        "ex42" => {
            let (problem, grms, mg) = gen_example_4_2();
            Ok(ResolvedProblem {
                name: spec.to_string(),
                problem,
                grms: Some(grms),
                rival: Some(ComparisonParams::Mgsor(mg)),
                benchmark_start: false,
            })
        }
        "ex43" => {
            let (problem, grms, ns) = gen_example_4_3();
            Ok(ResolvedProblem {
                name: spec.to_string(),
                problem,
                grms: Some(grms),
                rival: Some(ComparisonParams::Nsor(ns)),
                benchmark_start: false,
            })
        }
        "ex51" | "ex52" => {
            let args = args.ok_or_else(|| format!("{head} needs at least m=SIZE"))?;
            let mut m: Option<usize> = None;
            let mut blocks_raw = "12".to_string();
            for (k, v) in parse_kv_args(args)? {
                match k.as_str() {
                    "m" => {
                        m = Some(v.parse().map_err(|_| format!("bad m `{v}`"))?);
                    }
                    "blocks" => blocks_raw = v,
                    other => return Err(format!("unknown {head} argument `{other}`")),
                }
            }
            let m = m.ok_or_else(|| format!("{head} needs m=SIZE"))?;
            let blocks = parse_block_count(&blocks_raw, m)?;
            let problem = if head == "ex51" {
                gen_example_5_1(m, blocks)
            } else {
                gen_example_5_2(m, blocks)
            }
            .map_err(|e| e.to_string())?;
            Ok(ResolvedProblem {
                name: spec.to_string(),
                problem,
                grms: None,
                rival: None,
                benchmark_start: true,
            })
        }
        "picard-remark" => {
            let which: u8 = args
                .ok_or("picard-remark needs :1 or :2")?
                .parse()
                .map_err(|_| "picard-remark needs :1 or :2".to_string())?;
            let problem = gen_picard_remark(which).map_err(|e| e.to_string())?;
            Ok(ResolvedProblem {
                name: spec.to_string(),
                problem,
                grms: None,
                rival: None,
                benchmark_start: false,
            })
        }
        "files" => {
            let args = args.ok_or("files needs three paths: files:A,B,b")?;
            let paths: Vec<&str> = args.split(',').collect();
            if paths.len() != 3 {
                return Err("files needs exactly three paths: files:A,B,b".into());
            }
            let problem =
                load_problem(paths[0], paths[1], paths[2]).map_err(|e| e.to_string())?;
            Ok(ResolvedProblem {
                name: spec.to_string(),
                problem,
                grms: None,
                rival: None,
                benchmark_start: false,
            })
        }
        other => Err(format!(
            "unknown problem `{other}` (expected ex41, ex42, ex43, ex51:.., ex52:.., picard-remark:.., files:..)"
        )),
    }
}

impl ResolvedProblem {
    /// Default rival parameters for one of the named comparison methods.
    pub fn rival_rms(&self) -> Option<&RmsParams> {
        match &self.rival {
            Some(ComparisonParams::Rms(r)) => Some(r),
            _ => None,
        }
    }

    pub fn rival_mgsor(&self) -> Option<&MgsorParams> {
        match &self.rival {
            Some(ComparisonParams::Mgsor(g)) => Some(g),
            _ => None,
        }
    }

    pub fn rival_nsor(&self) -> Option<&NsorParams> {
        match &self.rival {
            Some(ComparisonParams::Nsor(s)) => Some(s),
            _ => None,
        }
    }

    /// Start vectors according to `--x0`.
    pub fn start_vector(&self, mode: &str) -> Result<Vector, String> {
        let n = self.problem.dim();
        match mode {
            "paper-default" => Ok(if self.benchmark_start {
                gave_kit::experiments::experiment_start(n)
            } else {
                Vector::zeros(n)
            }),
            "zeros" => Ok(Vector::zeros(n)),
            other => {
                let path = other
                    .strip_prefix("file:")
                    .ok_or_else(|| format!("unknown x0 mode `{other}`"))?;
                let v = read_vector_file(path).map_err(|e| e.to_string())?;
                if v.len() != n {
                    return Err(format!(
                        "x0 file has length {}, problem dimension is {n}",
                        v.len()
                    ));
                }
                Ok(v)
            }
        }
    }
}
