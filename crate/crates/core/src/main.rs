use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use monomial_canon::bench::{
    bench, check_factor, random_factor, BenchOptions, CheckOutcome, Computation, Verdict,
};
use monomial_canon::stanley::format_decomposition;
use monomial_canon::{
    canonicalize, depth, parse_file, sdepth, type_wrt, verify_decomposition, DepthOptions, Error,
    Factor, FieldChoice, Limits, Ring,
};

const EXIT_USAGE: u8 = 1;
const EXIT_VIOLATION: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

/// Canonical forms, depth and Stanley depth of factors of monomial ideals.
#[derive(Parser, Debug)]
#[command(name = "mcanon", version)]
struct Cli {
    /// Print a single JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the canonical form and the type table.
    Canon { file: PathBuf },
    /// Print the type of the factor with respect to every variable.
    Type { file: PathBuf },
    /// Depth via multigraded Koszul homology.
    Depth {
        file: PathBuf,
        /// Compute on the input as given.
        #[arg(long)]
        no_canon: bool,
        /// `q` for the rationals, `p<prime>` for a prime field.
        #[arg(long, default_value = "q")]
        field: FieldChoice,
        #[arg(long)]
        parallel: bool,
        /// Write one JSON line per nonempty Koszul slice to stderr.
        #[arg(long)]
        trace: bool,
        #[arg(long, default_value_t = monomial_canon::grid::DEFAULT_BOX_CAP)]
        box_cap: u128,
    },
    /// Stanley depth with a decomposition certificate.
    Sdepth {
        file: PathBuf,
        #[arg(long)]
        no_canon: bool,
        /// Search nodes allowed per decision.
        #[arg(long, default_value_t = monomial_canon::limits::DEFAULT_NODE_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = monomial_canon::grid::DEFAULT_BOX_CAP)]
        box_cap: u128,
        /// Seconds before giving up.
        #[arg(long)]
        timeout: Option<f64>,
    },
    /// Check that depth and Stanley depth survive canonicalization and a
    /// random shift transform.
    Check {
        #[arg(required_unless_present = "random", conflicts_with = "random")]
        file: Option<PathBuf>,
        /// Random instances: at most N variables, exponents at most GMAX.
        #[arg(long, num_args = 4, value_names = ["N", "GMAX", "COUNT", "SEED"])]
        random: Option<Vec<u64>>,
        /// Seed for the shift transform when checking a file.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = monomial_canon::limits::DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// Time depth and Stanley depth on the input and on its canonical form.
    Bench {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        repeat: usize,
        /// Per-computation timeout in seconds.
        #[arg(long, default_value_t = 300.0)]
        timeout: f64,
        #[arg(long)]
        parallel: bool,
        /// Restrict to one computation.
        #[arg(long, value_parser = ["depth", "sdepth"])]
        only: Option<String>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            _ if e.is_resource() => EXIT_RESOURCE,
            Error::Violation(_) | Error::Internal(_) => EXIT_VIOLATION,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn load(path: &Path) -> Result<(Ring, Factor), Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_USAGE,
        message: format!("{}: {e}", path.display()),
    })?;
    let file = parse_file(&text).map_err(|e| Failure {
        code: EXIT_USAGE,
        message: format!("{}:{e}", path.display()),
    })?;
    let f = file.factor().map_err(|e| Failure {
        code: EXIT_USAGE,
        message: format!("{}: {e}", path.display()),
    })?;
    Ok((file.ring, f))
}

fn timeout_limits(base: Limits, secs: Option<f64>) -> Result<Limits, Failure> {
    match secs {
        None => Ok(base),
        Some(s) if s.is_finite() && s > 0.0 => Ok(base.with_timeout(Duration::from_secs_f64(s))),
        Some(s) => Err(Failure {
            code: EXIT_USAGE,
            message: format!("invalid timeout {s}"),
        }),
    }
}

fn type_table(ring: &Ring, f: &Factor) -> Result<Vec<(String, Vec<u32>)>, Failure> {
    (0..f.nvars())
        .map(|v| Ok((ring.names()[v].clone(), type_wrt(f, v)?.powers)))
        .collect()
}

fn fmt_type(powers: &[u32]) -> String {
    let inner: Vec<String> = powers.iter().map(u32::to_string).collect();
    format!("({})", inner.join(", "))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Canon { file } => {
            let (ring, f) = load(&file)?;
            let c = canonicalize(&f)?;
            let types = type_table(&ring, &f)?;
            if cli.json {
                let types: serde_json::Map<_, _> =
                    types.into_iter().map(|(k, v)| (k, json!(v))).collect();
                println!(
                    "{}",
                    json!({
                        "canonical": ring.factor_string(&c),
                        "file": ring.factor_file(&c),
                        "types": types,
                    })
                );
            } else {
                println!("{}", ring.factor_string(&c));
                print!("{}", ring.factor_file(&c));
                for (name, powers) in types {
                    println!("type {name}: {}", fmt_type(&powers));
                }
            }
        }
        Command::Type { file } => {
            let (ring, f) = load(&file)?;
            let types = type_table(&ring, &f)?;
            if cli.json {
                let types: serde_json::Map<_, _> =
                    types.into_iter().map(|(k, v)| (k, json!(v))).collect();
                println!("{}", json!({ "types": types }));
            } else {
                for (name, powers) in types {
                    println!("{name}: {}", fmt_type(&powers));
                }
            }
        }
        Command::Depth {
            file,
            no_canon,
            field,
            parallel,
            trace,
            box_cap,
        } => {
            let (ring, f) = load(&file)?;
            let target = if no_canon { f } else { canonicalize(&f)? };
            let opts = DepthOptions {
                field,
                parallel,
                trace,
                limits: Limits {
                    box_cap,
                    ..Limits::default()
                },
            };
            let report = depth(&target, &opts)?;
            for rec in &report.trace {
                eprintln!("{}", serde_json::to_string(rec).expect("serializable"));
            }
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "input": ring.factor_string(&target),
                        "canonicalized": !no_canon,
                        "field": field.to_string(),
                        "depth": report.depth,
                        "pd": report.pd,
                        "slices": report.slices,
                    })
                );
            } else {
                println!("depth = {}", report.depth);
                println!("pd = {}", report.pd);
            }
        }
        Command::Sdepth {
            file,
            no_canon,
            budget,
            box_cap,
            timeout,
        } => {
            let (ring, f) = load(&file)?;
            let target = if no_canon { f } else { canonicalize(&f)? };
            let limits = timeout_limits(
                Limits {
                    box_cap,
                    node_budget: budget,
                    deadline: None,
                },
                timeout,
            )?;
            let s = sdepth(&target, &limits)?;
            if !verify_decomposition(&target, &s.certificate, s.value) {
                return Err(Error::Internal("certificate failed verification".into()).into());
            }
            let text = format_decomposition(&ring, &s.certificate, &s.bound);
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "input": ring.factor_string(&target),
                        "canonicalized": !no_canon,
                        "sdepth": s.value,
                        "bound": s.bound,
                        "certificate": text.lines().collect::<Vec<_>>(),
                        "verified": true,
                    })
                );
            } else {
                println!("sdepth = {}", s.value);
                print!("{text}");
            }
        }
        Command::Check {
            file,
            random,
            seed,
            budget,
        } => {
            let opts = DepthOptions {
                limits: Limits {
                    node_budget: budget,
                    ..Limits::default()
                },
                ..Default::default()
            };
            let mut outcomes: Vec<(String, CheckOutcome)> = Vec::new();
            if let Some(args) = random {
                let (n, gmax, count, seed) = (args[0], args[1], args[2], args[3]);
                if n == 0 || n > 8 || gmax > 1000 {
                    return Err(Failure {
                        code: EXIT_USAGE,
                        message: "--random needs 1 ≤ N ≤ 8 and GMAX ≤ 1000".into(),
                    });
                }
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for k in 0..count {
                    let f = random_factor(&mut rng, n as usize, gmax as u32);
                    let ring = Ring::standard(f.nvars());
                    let label = format!("#{k} {}", ring.factor_string(&f));
                    outcomes.push((
                        ring.factor_string(&f),
                        check_factor(&mut rng, &label, &f, &opts),
                    ));
                }
            } else if let Some(path) = file {
                let (ring, f) = load(&path)?;
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let label = ring.factor_string(&f);
                outcomes.push((label.clone(), check_factor(&mut rng, &label, &f, &opts)));
            }
            let failed = outcomes
                .iter()
                .filter(|(_, o)| matches!(o.verdict, Verdict::Fail(_)))
                .count();
            let skipped = outcomes
                .iter()
                .filter(|(_, o)| matches!(o.verdict, Verdict::Skipped(_)))
                .count();
            if cli.json {
                let list: Vec<_> = outcomes.iter().map(|(_, o)| o).collect();
                println!(
                    "{}",
                    json!({
                        "outcomes": list,
                        "passed": outcomes.len() - failed - skipped,
                        "failed": failed,
                        "skipped": skipped,
                    })
                );
            } else {
                for (_, o) in &outcomes {
                    let values: Vec<String> = o
                        .values
                        .iter()
                        .map(|(n, v)| format!("{n}: depth {} sdepth {}", v.depth, v.sdepth))
                        .collect();
                    match &o.verdict {
                        Verdict::Pass => println!("PASS {} [{}]", o.label, values.join("; ")),
                        Verdict::Fail(why) => println!("FAIL {} ({why})", o.label),
                        Verdict::Skipped(why) => println!("SKIPPED {} ({why})", o.label),
                    }
                }
            }
            if failed > 0 {
                return Err(Failure {
                    code: EXIT_VIOLATION,
                    message: format!("{failed} invariance violation(s)"),
                });
            }
        }
        Command::Bench {
            file,
            repeat,
            timeout,
            parallel,
            only,
        } => {
            let (ring, f) = load(&file)?;
            if !(timeout.is_finite() && timeout > 0.0) {
                return Err(Failure {
                    code: EXIT_USAGE,
                    message: format!("invalid timeout {timeout}"),
                });
            }
            let computations = match only.as_deref() {
                Some("depth") => vec![Computation::Depth],
                Some("sdepth") => vec![Computation::Sdepth],
                _ => vec![Computation::Depth, Computation::Sdepth],
            };
            let opts = BenchOptions {
                computations,
                repeat: repeat.max(1),
                timeout: Duration::from_secs_f64(timeout),
                parallel,
                ..Default::default()
            };
            let report = bench(&ring.factor_string(&f), &f, &opts)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("serializable")
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
