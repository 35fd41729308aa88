//! `qmstab` — exact stability certificates for finitely generated
//! quadratic modules, from the command line.

mod examples;
mod report;
mod system_file;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use qmstab_core::{
    bounded_monomials, covering_check, rational::parse_rational, stability_verdict,
    suggest_z_vectors, tentacle_sample_check, term_order_total_stability, GeneratorSystem,
    Rational, SearchConfig, TentacleSpec, TermOrder, ZVector,
};

use report::{ConfigEcho, Payload, Report};
use system_file::{build_system, parse_system_file, Mode};

#[derive(Parser)]
#[command(
    name = "qmstab",
    version,
    about = "Decide stability of finitely generated quadratic modules with exactly verifiable certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Emit the report as JSON on stdout (default).
    #[arg(long, global = true)]
    json: bool,

    /// Emit a human-readable summary instead of JSON.
    #[arg(long, global = true, conflicts_with = "json")]
    text: bool,

    /// Include wall-clock timing in the report. Off by default so that
    /// identical inputs produce byte-identical reports.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Decide stability via a family of grading directions.
    Check(CheckArgs),
    /// Exact total-stability test under a term order.
    TermOrder(TermOrderArgs),
    /// Classify the monomials bounded on the tentacle union of the
    /// given directions.
    Bounded(BoundedArgs),
    /// Search a covering certificate for a target grading.
    Covering(CoveringArgs),
    /// Sample generators over a tentacle lattice and report negative
    /// values.
    TentacleSample(TentacleArgs),
    /// Enumerate primitive grading directions up to a sup-norm bound.
    SuggestZ(SuggestArgs),
    /// Run the bundled example systems against their expected verdicts.
    Examples(ExamplesArgs),
}

#[derive(Args)]
struct SearchFlags {
    /// Seed of the witness-search candidate stream.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest box scale: candidates range over [-2^k, 2^k]^n.
    #[arg(long = "max-scale", default_value_t = 12)]
    max_scale: u32,
    /// Candidates per scale.
    #[arg(long = "samples", default_value_t = 512)]
    samples: u32,
    /// Upper bound on candidate coordinate denominators.
    #[arg(long = "denom-bound", default_value_t = 256)]
    denom_bound: u32,
}

impl SearchFlags {
    fn to_config(&self) -> SearchConfig {
        SearchConfig {
            seed: self.seed,
            max_scale: self.max_scale,
            samples_per_scale: self.samples,
            denom_bound: self.denom_bound,
        }
    }

    fn echo(&self, config: &mut ConfigEcho) {
        config.seed = Some(self.seed);
        config.max_scale = Some(self.max_scale);
        config.samples_per_scale = Some(self.samples);
        config.denom_bound = Some(self.denom_bound);
    }
}

#[derive(Args)]
struct CheckArgs {
    /// System file (vars/gen directives).
    #[arg(long)]
    file: PathBuf,
    /// Grading direction, comma-separated integers; repeatable.
    #[arg(long = "z", value_name = "Z", required = true, allow_hyphen_values = true)]
    z: Vec<String>,
    /// Close the generators under square-free products first.
    #[arg(long)]
    preordering: bool,
    #[command(flatten)]
    search: SearchFlags,
}

#[derive(Args)]
struct TermOrderArgs {
    #[arg(long)]
    file: PathBuf,
    /// Term order spec, e.g. `deglex:x,y` or `lex:x,y`.
    #[arg(long)]
    order: String,
    /// Close the generators under square-free products first.
    #[arg(long)]
    preordering: bool,
}

#[derive(Args)]
struct BoundedArgs {
    #[arg(long = "z", value_name = "Z", required = true, allow_hyphen_values = true)]
    z: Vec<String>,
}

#[derive(Args)]
struct CoveringArgs {
    /// The grading to cover.
    #[arg(long, allow_hyphen_values = true)]
    target: String,
    /// Covering family; repeatable.
    #[arg(long = "z", value_name = "Z", required = true, allow_hyphen_values = true)]
    z: Vec<String>,
    /// Integer search bound for the certificate entries.
    #[arg(long, default_value_t = 16)]
    bound: u64,
}

#[derive(Args)]
struct TentacleArgs {
    #[arg(long)]
    file: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    z: String,
    /// Box intervals `lo..hi`, comma-separated per coordinate, e.g.
    /// `1..9/8,3/2..7/4`.
    #[arg(long = "box", allow_hyphen_values = true)]
    box_spec: String,
    /// Scaling factor >= 1; repeatable (default 1, 2, 4).
    #[arg(long = "lambda", value_name = "RATIONAL")]
    lambdas: Vec<String>,
    /// Lattice points per coordinate.
    #[arg(long, default_value_t = 3)]
    grid: u32,
}

#[derive(Args)]
struct SuggestArgs {
    /// Variable count (alternative to --file).
    #[arg(long, conflicts_with = "file")]
    n: Option<usize>,
    /// Take the variable count from a system file.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Sup-norm bound on the entries.
    #[arg(long, default_value_t = 2)]
    bound: i64,
}

#[derive(Args)]
struct ExamplesArgs {
    #[command(flatten)]
    search: SearchFlags,
}

fn parse_directions(specs: &[String]) -> Result<Vec<ZVector>, String> {
    specs
        .iter()
        .map(|s| ZVector::parse(s).map_err(|e| e.to_string()))
        .collect()
}

fn load_system(path: &PathBuf, preordering_flag: bool) -> Result<(GeneratorSystem, ConfigEcho), String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {}", path.display(), e))?;
    let file = parse_system_file(&text).map_err(|e| format!("{}: {}", path.display(), e))?;
    let sys = build_system(&file).map_err(|e| format!("{}: {}", path.display(), e))?;
    let preordering = preordering_flag || file.mode == Mode::Preordering;
    let sys = if preordering {
        sys.preordering_closure().map_err(|e| e.to_string())?
    } else {
        sys
    };
    let ctx = sys.ctx().clone();
    let echo = ConfigEcho {
        file: Some(path.display().to_string()),
        variables: Some(ctx.names().to_vec()),
        generators: Some(
            sys.generators()
                .iter()
                .map(|g| g.display(&ctx).to_string())
                .collect(),
        ),
        mode: Some(
            if preordering {
                Mode::Preordering
            } else {
                Mode::QuadraticModule
            }
            .as_str()
            .to_string(),
        ),
        ..ConfigEcho::default()
    };
    Ok((sys, echo))
}

fn parse_box(spec: &str) -> Result<Vec<(Rational, Rational)>, String> {
    spec.split(',')
        .map(|interval| {
            let (lo, hi) = interval
                .split_once("..")
                .ok_or_else(|| format!("interval `{interval}` must be `lo..hi`"))?;
            let lo = parse_rational(lo.trim()).map_err(|e| e.to_string())?;
            let hi = parse_rational(hi.trim()).map_err(|e| e.to_string())?;
            Ok((lo, hi))
        })
        .collect()
}

fn run(cli: &Cli) -> Result<Report, String> {
    match &cli.command {
        Command::Check(args) => {
            let (sys, mut config) = load_system(&args.file, args.preordering)?;
            let zs = parse_directions(&args.z)?;
            let cfg = args.search.to_config();
            config.z = Some(zs.clone());
            config.preordering = Some(args.preordering);
            args.search.echo(&mut config);
            let verdict = stability_verdict(&sys, &zs, &cfg).map_err(|e| e.to_string())?;
            Ok(Report::new("check", config, Payload::Verdict { verdict }))
        }
        Command::TermOrder(args) => {
            let (sys, mut config) = load_system(&args.file, args.preordering)?;
            let ord = TermOrder::parse_spec(&args.order, sys.ctx()).map_err(|e| e.to_string())?;
            config.order = Some(ord.spec_string(sys.ctx()));
            config.preordering = Some(args.preordering);
            let verdict = term_order_total_stability(&sys, &ord);
            Ok(Report::new("term-order", config, Payload::Verdict { verdict }))
        }
        Command::Bounded(args) => {
            let zs = parse_directions(&args.z)?;
            let config = ConfigEcho {
                z: Some(zs.clone()),
                ..ConfigEcho::default()
            };
            let outcome = bounded_monomials(&zs).map_err(|e| e.to_string())?;
            Ok(Report::new("bounded", config, Payload::Bounded { outcome }))
        }
        Command::Covering(args) => {
            let target = ZVector::parse(&args.target).map_err(|e| e.to_string())?;
            let zs = parse_directions(&args.z)?;
            let config = ConfigEcho {
                target: Some(target.clone()),
                z: Some(zs.clone()),
                bound: Some(args.bound),
                ..ConfigEcho::default()
            };
            let outcome = covering_check(&target, &zs, args.bound).map_err(|e| e.to_string())?;
            Ok(Report::new("covering", config, Payload::Covering { outcome }))
        }
        Command::TentacleSample(args) => {
            let (sys, mut config) = load_system(&args.file, false)?;
            let z = ZVector::parse(&args.z).map_err(|e| e.to_string())?;
            let intervals = parse_box(&args.box_spec)?;
            let lambdas: Vec<Rational> = if args.lambdas.is_empty() {
                [1, 2, 4]
                    .iter()
                    .map(|&n| Rational::from_integer(n.into()))
                    .collect()
            } else {
                args.lambdas
                    .iter()
                    .map(|s| parse_rational(s).map_err(|e| e.to_string()))
                    .collect::<Result<_, _>>()?
            };
            config.z = Some(vec![z.clone()]);
            config.box_spec = Some(args.box_spec.clone());
            config.lambdas = Some(lambdas.iter().map(|l| l.to_string()).collect());
            config.grid = Some(args.grid);
            let spec = TentacleSpec { z, intervals };
            let report = tentacle_sample_check(&sys, &spec, &lambdas, args.grid)
                .map_err(|e| e.to_string())?;
            Ok(Report::new(
                "tentacle-sample",
                config,
                Payload::TentacleSample { report },
            ))
        }
        Command::SuggestZ(args) => {
            let n = match (&args.n, &args.file) {
                (Some(n), _) => *n,
                (None, Some(path)) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| format!("cannot read {}: {}", path.display(), e))?;
                    parse_system_file(&text)
                        .map_err(|e| format!("{}: {}", path.display(), e))?
                        .variables
                        .len()
                }
                (None, None) => return Err("suggest-z needs --n or --file".to_string()),
            };
            if n == 0 {
                return Err("variable count must be at least 1".to_string());
            }
            let config = ConfigEcho {
                n: Some(n),
                bound: Some(args.bound.max(0) as u64),
                ..ConfigEcho::default()
            };
            let directions = suggest_z_vectors(n, args.bound).map_err(|e| e.to_string())?;
            Ok(Report::new(
                "suggest-z",
                config,
                Payload::SuggestZ { directions },
            ))
        }
        Command::Examples(args) => {
            let cfg = args.search.to_config();
            let mut config = ConfigEcho::default();
            args.search.echo(&mut config);
            let runs = examples::run_bundled(&cfg)?;
            let all_match = runs.iter().all(|r| r.matched);
            Ok(Report::new(
                "examples",
                config,
                Payload::Examples { runs, all_match },
            ))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli) {
        Ok(mut report) => {
            if cli.timing {
                report.timing_ms = Some(start.elapsed().as_millis() as u64);
            }
            if cli.text {
                print!("{}", report.to_text());
            } else {
                println!("{}", report.to_json());
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}
