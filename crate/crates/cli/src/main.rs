use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lgfrob::fixtures;
use lgfrob::frobenius::TraceStrategy;
use lgfrob::report::{
    cmd_report, cmd_validate, summary_table, ExitStatus, InputError, Outcome, ReportSettings, RunConfig,
};

#[derive(Parser)]
#[command(
    name = "lgfrob",
    version,
    about = "Exact Landau-Ginzburg Frobenius algebras of toric Calabi-Yau hypersurfaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fan validation, class group, polytope and Betti numbers.
    Validate(RunArgs),
    /// Full certificate report.
    Report(RunArgs),
    /// Print a built-in fixture as an input document.
    Fixture {
        /// Fixture name, or `list`.
        name: String,
    },
    /// Dimensions of R(f) in degrees aβ.
    Dims(RunArgs),
    /// Gram matrices of the trace pairing.
    Gram(RunArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Strategy {
    Generic,
    ProjectiveHessian,
}

#[derive(Args)]
struct RunArgs {
    /// Input document; `-` for stdin.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Built-in fixture instead of an input file.
    #[arg(long, conflicts_with = "input")]
    fixture: Option<String>,
    #[arg(long, value_enum)]
    strategy: Option<Strategy>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long, conflicts_with = "full")]
    max_degree_a: Option<usize>,
    /// Lift the default degree cap of large examples.
    #[arg(long)]
    full: bool,
    /// Disable the modular rank prefilter.
    #[arg(long)]
    no_prefilter: bool,
    /// Suppress the human summary on stderr.
    #[arg(long)]
    json_only: bool,
    /// Include per-stage wall-clock timings in the report.
    #[arg(long)]
    timings: bool,
}

impl RunArgs {
    fn config(&self) -> Result<RunConfig, InputError> {
        let mut cfg = if let Some(name) = &self.fixture {
            fixtures::by_name(name)
                .ok_or_else(|| InputError(format!("unknown fixture {name:?}")))?
                .to_config()
        } else {
            let text = match self.input.as_deref() {
                None => return Err(InputError("either --input or --fixture is required".into())),
                Some(p) if p.as_os_str() == "-" => {
                    let mut s = String::new();
                    std::io::stdin()
                        .read_to_string(&mut s)
                        .map_err(|e| InputError(format!("stdin: {e}")))?;
                    s
                }
                Some(p) => fs::read_to_string(p).map_err(|e| InputError(format!("{}: {e}", p.display())))?,
            };
            RunConfig::from_json(&text)?
        };
        let o = &mut cfg.options;
        if let Some(s) = self.strategy {
            o.trace_strategy = match s {
                Strategy::Generic => TraceStrategy::Generic,
                Strategy::ProjectiveHessian => TraceStrategy::ProjectiveHessian,
            };
        }
        if let Some(s) = self.seed {
            o.sample_seed = s;
        }
        if let Some(n) = self.samples {
            if n == 0 {
                return Err(InputError("--samples must be positive".into()));
            }
            o.sample_count = n;
        }
        if let Some(t) = self.threads {
            if t == 0 {
                return Err(InputError("--threads must be positive".into()));
            }
            o.threads = Some(t);
        }
        if self.full {
            o.max_degree_a = None;
        } else if self.max_degree_a.is_some() {
            o.max_degree_a = self.max_degree_a;
        }
        if self.no_prefilter {
            o.modular_prefilter = false;
        }
        Ok(cfg)
    }
}

fn fail_input(e: InputError) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(ExitStatus::Input.code() as u8)
}

fn run(
    args: &RunArgs,
    gram: bool,
    f: impl FnOnce(&RunConfig, ReportSettings) -> Result<Outcome, InputError>,
) -> ExitCode {
    let cfg = match args.config() {
        Ok(c) => c,
        Err(e) => return fail_input(e),
    };
    if let Some(t) = cfg.options.threads {
        // a second initialization only fails if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    let settings = ReportSettings {
        timings: args.timings,
        gram_entries: gram,
    };
    match f(&cfg, settings) {
        Ok(out) => {
            if !args.json_only {
                eprint!("{}", summary_table(&out.report));
            }
            println!("{}", out.report.to_json());
            ExitCode::from(out.status.code() as u8)
        }
        Err(e) => fail_input(e),
    }
}

fn print_value(v: serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(&v).expect("json"));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Validate(a) => run(&a, false, cmd_validate),
        Command::Report(a) => run(&a, false, cmd_report),
        Command::Dims(a) => {
            let cfg = match a.config() {
                Ok(c) => c,
                Err(e) => return fail_input(e),
            };
            match cmd_report(&cfg, ReportSettings::default()) {
                Ok(out) => {
                    let j = out.report.jacobian.as_ref();
                    print_value(serde_json::json!({
                        "name": out.report.name,
                        "dims": j.map(|j| &j.dims),
                        "hodge_row": j.and_then(|j| j.hodge_row.as_ref()),
                        "macaulay": j.and_then(|j| j.macaulay.as_ref()),
                    }));
                    ExitCode::from(out.status.code() as u8)
                }
                Err(e) => fail_input(e),
            }
        }
        Command::Gram(a) => {
            let cfg = match a.config() {
                Ok(c) => c,
                Err(e) => return fail_input(e),
            };
            match cmd_report(
                &cfg,
                ReportSettings {
                    timings: false,
                    gram_entries: true,
                },
            ) {
                Ok(out) => {
                    let alg = out.report.jacobian.as_ref().and_then(|j| j.algebra.as_ref());
                    print_value(serde_json::json!({
                        "name": out.report.name,
                        "unit_exponent": alg.map(|a| a.unit_exponent),
                        "gram": alg.map(|a| &a.gram),
                    }));
                    ExitCode::from(out.status.code() as u8)
                }
                Err(e) => fail_input(e),
            }
        }
        Command::Fixture { name } => {
            if name == "list" {
                for n in fixtures::NAMES {
                    println!("{n}");
                }
                return ExitCode::SUCCESS;
            }
            match fixtures::by_name(&name) {
                Some(fx) => {
                    println!("{}", fx.to_config().to_json());
                    ExitCode::SUCCESS
                }
                None => fail_input(InputError(format!("unknown fixture {name:?}"))),
            }
        }
    }
}
