mod format;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hyperturan::entropy::{entropy_report, optimal_entropy_identity};
use hyperturan::extremal::{
    crossing_link_construction, degree_stability_check, doubled_part_link_construction,
    edge_bound_check, ex_search, gen_turan, l_intersect_lagrangian_survey, pattern_size_bound,
    symmetrize_decompose, vertex_extendability_check, SearchConfig, DEFAULT_EPS,
};
use hyperturan::families::{gen_t, is_free};
use hyperturan::hgfile::{parse_hg, parse_weights, write_hg};
use hyperturan::lagrangian::{maximize, MaximizeConfig, Mode};
use hyperturan::steiner::{fano, sts9};
use hyperturan::verify::{run_criterion, Suite, CRITERIA};
use hyperturan::{Error, RGraph, TrianglePattern};
use serde_json::{json, Value};

use format::{render, Format};

const EXIT_VIOLATED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_SCALE: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "hyperturan",
    version,
    about = "Triangle-free hypergraphs: Turán numbers, Lagrangians and entropy"
)]
struct Cli {
    /// Report encoding.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Worker threads; 0 uses all cores.
    #[arg(long, global = true, env = "HYPERTURAN_THREADS", default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a named hypergraph in .hg format.
    Gen(GenArgs),
    /// Scan a hypergraph for a forbidden triangle pattern.
    Check {
        file: PathBuf,
        #[arg(long, default_value = "tfam")]
        pattern: String,
        /// Exit with status 1 if a forbidden triple is found.
        #[arg(long)]
        expect_free: bool,
    },
    /// Maximize the Lagrangian over the simplex.
    Lagrangian {
        file: PathBuf,
        #[command(flatten)]
        opt: OptArgs,
    },
    /// Entropies of the ordered edge distribution for given weights.
    Entropy {
        file: PathBuf,
        /// One weight per line; omit to use a certified Lagrangian maximizer.
        weights: Option<PathBuf>,
        #[command(flatten)]
        opt: OptArgs,
    },
    /// Exhaustive extremal search.
    Extremal {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value = "tfam")]
        pattern: String,
        /// Randomized greedy lower bound beyond the complete-search guard.
        #[arg(long)]
        incomplete: bool,
        #[arg(long, default_value_t = 64)]
        restarts: usize,
        #[arg(long, default_value_t = SearchConfig::default().seed)]
        seed: u64,
        /// Directory receiving one .hg file per extremal graph.
        #[arg(long)]
        witnesses: Option<PathBuf>,
    },
    /// Symmetrization and the stability checks.
    Symmetrize {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_EPS)]
        eps: f64,
    },
    /// Run the acceptance battery.
    Verify {
        #[arg(long, value_enum, default_value = "quick")]
        suite: SuiteArg,
        /// Restrict to these criterion ids.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
    /// Largest Lagrangian among maximal L-intersecting r-graphs.
    Survey {
        #[arg(long)]
        r: usize,
        /// Allowed intersection sizes, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        l: Vec<usize>,
        #[arg(long)]
        n_max: usize,
        #[command(flatten)]
        opt: OptArgs,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct GenSource {
    /// Balanced complete r-partite graph: N R.
    #[arg(long, num_args = 2, value_names = ["N", "R"])]
    turan: Option<Vec<usize>>,
    /// Triangle member T_{r,i}: R I.
    #[arg(long, num_args = 2, value_names = ["R", "I"])]
    t: Option<Vec<usize>>,
    #[arg(long)]
    fano: bool,
    #[arg(long)]
    sts9: bool,
    /// Turán graph plus a vertex whose link doubles a part: M R.
    #[arg(long, num_args = 2, value_names = ["M", "R"])]
    doubled_link: Option<Vec<usize>>,
    /// Turán graph plus a vertex whose link crosses the parts: M R.
    #[arg(long, num_args = 2, value_names = ["M", "R"])]
    crossing_link: Option<Vec<usize>>,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[command(flatten)]
    source: GenSource,
    /// Blow up each vertex into this many copies, comma separated.
    #[arg(long, value_delimiter = ',')]
    blowup: Option<Vec<usize>>,
    /// Write to a file instead of standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct OptArgs {
    #[arg(long, value_enum, default_value = "exact")]
    mode: ModeArg,
    #[arg(long, default_value_t = MaximizeConfig::default().restarts)]
    restarts: usize,
    #[arg(long, default_value_t = MaximizeConfig::default().tol)]
    tol: f64,
    #[arg(long, default_value_t = MaximizeConfig::default().seed)]
    seed: u64,
}

impl OptArgs {
    fn config(&self) -> MaximizeConfig {
        MaximizeConfig {
            mode: match self.mode {
                ModeArg::Exact => Mode::Exact,
                ModeArg::Heuristic => Mode::Heuristic,
            },
            restarts: self.restarts,
            tol: self.tol,
            seed: self.seed,
            ..Default::default()
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Exact,
    Heuristic,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteArg {
    Quick,
    Paper,
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

struct Outcome {
    stdout: String,
    violated: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build()
    {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot start worker pool: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match pool.install(|| run(&cli)) {
        Ok(out) => {
            print!("{}", out.stdout);
            if out.violated {
                ExitCode::from(EXIT_VIOLATED)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::ScaleGuard(_) | Error::TooManyVertices { .. } => EXIT_SCALE,
                Error::Uncertified(_) => EXIT_VIOLATED,
                _ => EXIT_USAGE,
            })
        }
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<RGraph, Failure> {
    parse_hg(&read_text(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn record(command: &str, config: Value, result: Value, format: Format) -> String {
    render(
        &json!({ "command": command, "config": config, "result": result }),
        format,
    )
}

fn graph_summary(g: &RGraph) -> Value {
    json!({ "n": g.n(), "r": g.r(), "edges": g.len() })
}

fn pair(v: &[usize]) -> (usize, usize) {
    (v[0], v[1])
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let fmt = cli.format;
    let ok = |stdout: String| {
        Ok(Outcome {
            stdout,
            violated: false,
        })
    };
    match &cli.command {
        Command::Gen(args) => {
            let s = &args.source;
            let mut g = if let Some(v) = &s.turan {
                let (n, r) = pair(v);
                gen_turan(n, r)?
            } else if let Some(v) = &s.t {
                let (r, i) = pair(v);
                gen_t(r, i)?
            } else if s.fano {
                fano()
            } else if s.sts9 {
                sts9()
            } else if let Some(v) = &s.doubled_link {
                let (m, r) = pair(v);
                doubled_part_link_construction(m, r)?
            } else if let Some(v) = &s.crossing_link {
                let (m, r) = pair(v);
                crossing_link_construction(m, r)?
            } else {
                return Err(Failure::Usage("no generator selected".into()));
            };
            if let Some(sizes) = &args.blowup {
                g = g.blowup(sizes)?;
            }
            let text = write_hg(&g);
            match &args.output {
                Some(path) => {
                    fs::write(path, &text)
                        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                    ok(String::new())
                }
                None => ok(text),
            }
        }
        Command::Check {
            file,
            pattern,
            expect_free,
        } => {
            let g = read_graph(file)?;
            let p = TrianglePattern::parse(pattern, g.r())?;
            let scan = is_free(&g, &p)?;
            let violated = *expect_free && !scan.free;
            let result = json!({
                "graph": graph_summary(&g),
                "free": scan.free,
                "witness": scan.witness,
                "two_covered": g.is_2_covered(),
                "partial_steiner": g.is_partial_steiner(),
            });
            let config = json!({ "pattern": p.to_string(), "expect_free": expect_free });
            Ok(Outcome {
                stdout: record("check", config, result, fmt),
                violated,
            })
        }
        Command::Lagrangian { file, opt } => {
            let g = read_graph(file)?;
            let cfg = opt.config();
            let res = maximize(&g, &cfg)?;
            let mut result = to_value(&res);
            result["graph"] = graph_summary(&g);
            ok(record("lagrangian", to_value(&cfg), result, fmt))
        }
        Command::Entropy { file, weights, opt } => {
            let g = read_graph(file)?;
            let cfg = opt.config();
            let (x, identity) = match weights {
                Some(path) => {
                    let x = parse_weights(&read_text(path)?)
                        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                    (x, Value::Null)
                }
                None => {
                    let id = optimal_entropy_identity(&g, &cfg)?;
                    (id.maximizer.clone(), to_value(&id))
                }
            };
            if x.dim() != g.n() {
                return Err(Error::DimensionMismatch {
                    expected: g.n(),
                    got: x.dim(),
                }
                .into());
            }
            let rep = entropy_report(&g, &x)?;
            let result = json!({
                "graph": graph_summary(&g),
                "weights": x,
                "log_base": 2,
                "report": rep,
                "optimal_identity": identity,
            });
            ok(record("entropy", to_value(&cfg), result, fmt))
        }
        Command::Extremal {
            n,
            r,
            pattern,
            incomplete,
            restarts,
            seed,
            witnesses,
        } => {
            let p = TrianglePattern::parse(pattern, *r)?;
            let cfg = SearchConfig {
                incomplete: *incomplete,
                restarts: *restarts,
                seed: *seed,
            };
            let rep = ex_search(*n, *r, &p, &cfg)?;
            if let Some(dir) = witnesses {
                fs::create_dir_all(dir)
                    .map_err(|e| Failure::Usage(format!("{}: {e}", dir.display())))?;
                for (k, w) in rep.witnesses.iter().enumerate() {
                    let path = dir.join(format!("ex_{n}_{r}_{p}_{k}.hg").replace(':', "-"));
                    fs::write(&path, write_hg(w))
                        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                }
            }
            let mut config = to_value(&cfg);
            config["pattern"] = json!(p.to_string());
            ok(record("extremal", config, to_value(&rep), fmt))
        }
        Command::Symmetrize { file, eps } => {
            if !(*eps > 0.0 && *eps < 1.0) {
                return Err(Failure::Usage(format!(
                    "--eps must lie in (0, 1), got {eps}"
                )));
            }
            let g = read_graph(file)?;
            let sym = symmetrize_decompose(&g);
            let extend: Vec<Value> = (1..=g.n())
                .map(|v| vertex_extendability_check(&g, v, *eps).map(|e| to_value(&e)))
                .collect::<Result<_, _>>()?;
            let result = json!({
                "graph": graph_summary(&g),
                "symmetrization": sym,
                "pattern_size_bound": pattern_size_bound(g.r()),
                "edge_bound": edge_bound_check(&g)?,
                "degree_stability": degree_stability_check(&g, *eps)?,
                "vertex_extendability": extend,
            });
            ok(record("symmetrize", json!({ "eps": eps }), result, fmt))
        }
        Command::Verify { suite, only } => {
            let suite = match suite {
                SuiteArg::Quick => Suite::Quick,
                SuiteArg::Paper => Suite::Paper,
            };
            if let Some(bad) = only
                .iter()
                .find(|id| !CRITERIA.iter().any(|(c, _)| c == *id))
            {
                return Err(Failure::Usage(format!("unknown criterion {bad}")));
            }
            let mut table = String::new();
            let mut rows = Vec::new();
            let mut failed = 0;
            for &(id, _) in CRITERIA
                .iter()
                .filter(|(id, _)| only.is_empty() || only.contains(id))
            {
                let o = run_criterion(id, suite);
                failed += usize::from(!o.passed);
                table.push_str(&format!("{o}\n"));
                rows.push(o);
            }
            let stdout = match fmt {
                Format::Text => {
                    table.push_str(&format!(
                        "{} passed, {failed} failed\n",
                        rows.len() - failed
                    ));
                    table
                }
                Format::Json => record(
                    "verify",
                    json!({ "suite": suite }),
                    json!({ "criteria": rows, "failed": failed }),
                    fmt,
                ),
            };
            Ok(Outcome {
                stdout,
                violated: failed > 0,
            })
        }
        Command::Survey { r, l, n_max, opt } => {
            let cfg = opt.config();
            let rep = l_intersect_lagrangian_survey(*r, l, *n_max, &cfg)?;
            ok(record("survey", to_value(&cfg), to_value(&rep), fmt))
        }
    }
}
