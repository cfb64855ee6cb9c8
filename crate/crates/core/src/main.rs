use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use braid_entropy::appendix::{self, CheckStatus, TrigonModelConstants};
use braid_entropy::bounds::{BoundProfile, Thm61Variant};
use braid_entropy::harness::{self, NRule, OutputFormat, SweepSpec};
use braid_entropy::pf::DEFAULT_TOLERANCE;

/// Directory used to resolve relative output paths.
const OUT_DIR_VAR: &str = "BRAID_ENTROPY_OUT_DIR";

const EXIT_USAGE: u8 = 1;
const EXIT_VIOLATION: u8 = 2;
const EXIT_FAILURE: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "braid-entropy",
    version,
    about = "Entropy bounds and Thurston-construction dilatations for pure surface braids"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Table,
    Csv,
    Json,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Table => OutputFormat::Table,
            Format::Csv => OutputFormat::Csv,
            Format::Json => OutputFormat::Json,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Variant {
    Statement,
    Proof,
}

impl From<Variant> for Thm61Variant {
    fn from(v: Variant) -> Self {
        match v {
            Variant::Statement => Thm61Variant::Statement,
            Variant::Proof => Thm61Variant::Proof,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate every closed-form bound at (g, n).
    Bounds {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        /// Constant c_g for the parametric punctured-surface bounds.
        #[arg(long)]
        tsai_cg: Option<f64>,
    },
    /// Build the multicurve configuration at (g, n) and certify its dilatation.
    Construct {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        n: u32,
        /// Write the intersection graph in Graphviz format.
        #[arg(long, value_name = "FILE")]
        dot: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
    },
    /// Check lower bounds ≤ construction entropy ≤ upper bounds over a grid.
    Verify {
        #[arg(long)]
        g_min: Option<u32>,
        #[arg(long)]
        g_max: Option<u32>,
        /// Puncture range per genus, e.g. "2..2g+16".
        #[arg(long)]
        n_rule: Option<String>,
        /// Single genus; overrides --g-min/--g-max.
        #[arg(long)]
        g: Option<u32>,
        /// Single puncture count; overrides --n-rule.
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        tolerance: Option<f64>,
        /// Explicit-bound variant to certify; repeatable.
        #[arg(long, value_enum)]
        variant: Vec<Variant>,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        /// JSON file with the same keys as the flags; flags win.
        #[arg(long, value_name = "FILE")]
        config: Option<PathBuf>,
        /// Shift every upper bound by DELTA to test that violations are caught.
        #[arg(
            long,
            value_name = "DELTA",
            num_args = 0..=1,
            default_missing_value = "-10",
            allow_hyphen_values = true
        )]
        perturb_upper: Option<f64>,
        #[arg(long)]
        tsai_cg: Option<f64>,
    },
    /// Numeric checks of the hyperbolic-geometry inequalities.
    Appendix {
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        /// JSON file overriding the trigon-model constants.
        #[arg(long, value_name = "FILE")]
        constants: Option<PathBuf>,
        /// Write the constants in use as JSON.
        #[arg(long, value_name = "FILE")]
        write_constants: Option<PathBuf>,
        /// Largest genus in the ball-counting sweep.
        #[arg(long, default_value_t = 1_000_000)]
        max_genus: u64,
    },
}

#[derive(Deserialize, Default, Debug)]
#[serde(deny_unknown_fields)]
struct VerifyFile {
    g_min: Option<u32>,
    g_max: Option<u32>,
    n_rule: Option<String>,
    tolerance: Option<f64>,
    variant: Option<Vec<Thm61Variant>>,
    format: Option<OutputFormat>,
    perturb_upper: Option<f64>,
    tsai_cg: Option<f64>,
    out: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Violation(String),
    Computation(String),
}

fn resolve(path: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_VAR) {
        Some(dir) if path.is_relative() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

fn write_output(path: &Path, text: &str) -> Result<(), Failure> {
    let path = resolve(path);
    fs::write(&path, text)
        .map_err(|e| Failure::Computation(format!("cannot write {}: {e}", path.display())))
}

fn check_genus(g: u32) -> Result<(), Failure> {
    if g < 2 {
        Err(Failure::Usage("genus must be ≥ 2".into()))
    } else {
        Ok(())
    }
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Bounds {
            g,
            n,
            format,
            tsai_cg,
        } => {
            check_genus(g)?;
            if n < 1 {
                return Err(Failure::Usage("number of punctures must be ≥ 1".into()));
            }
            let profile =
                BoundProfile::evaluate(g, n, tsai_cg).map_err(|e| Failure::Usage(e.to_string()))?;
            Ok(harness::render_bounds(&profile, format.into()))
        }
        Command::Construct {
            g,
            n,
            dot,
            format,
            tolerance,
        } => {
            check_genus(g)?;
            if n == 1 {
                return Err(Failure::Usage(
                    "n = 1 is the point-pushing case with no multicurve configuration; \
                     run `bounds --g G --n 1` for its bounds"
                        .into(),
                ));
            }
            if n == 0 {
                return Err(Failure::Usage("number of punctures must be ≥ 2".into()));
            }
            if !(tolerance > 0.0) {
                return Err(Failure::Usage("tolerance must be positive".into()));
            }
            let (config, dil) =
                harness::construct(g, n, tolerance).map_err(Failure::Computation)?;
            if let Some(path) = dot {
                write_output(&path, &harness::to_dot(&config))?;
            }
            Ok(harness::render_construct(&config, &dil, format.into()))
        }
        Command::Verify {
            g_min,
            g_max,
            n_rule,
            g,
            n,
            tolerance,
            variant,
            format,
            out,
            config,
            perturb_upper,
            tsai_cg,
        } => {
            let file = match config {
                Some(path) => {
                    let text = fs::read_to_string(&path).map_err(|e| {
                        Failure::Usage(format!("cannot read {}: {e}", path.display()))
                    })?;
                    serde_json::from_str::<VerifyFile>(&text).map_err(|e| {
                        Failure::Usage(format!("invalid config {}: {e}", path.display()))
                    })?
                }
                None => VerifyFile::default(),
            };
            let mut spec = SweepSpec::default();
            if let Some(v) = g_min.or(file.g_min) {
                spec.g_min = v;
            }
            if let Some(v) = g_max.or(file.g_max) {
                spec.g_max = v;
            }
            if let Some(g) = g {
                spec.g_min = g;
                spec.g_max = g;
            }
            if let Some(rule) = n_rule.or(file.n_rule) {
                spec.n_rule = rule
                    .parse::<NRule>()
                    .map_err(|e| Failure::Usage(e.to_string()))?;
            }
            if let Some(n) = n {
                spec.n_rule = n
                    .to_string()
                    .parse()
                    .map_err(|e: harness::HarnessError| Failure::Usage(e.to_string()))?;
                if n < 1 {
                    return Err(Failure::Usage("number of punctures must be ≥ 1".into()));
                }
            }
            if let Some(t) = tolerance.or(file.tolerance) {
                spec.tolerance = t;
            }
            if !variant.is_empty() {
                spec.variants = variant.into_iter().map(Into::into).collect();
            } else if let Some(v) = file.variant {
                spec.variants = v.into_iter().collect::<BTreeSet<_>>();
            }
            if let Some(d) = perturb_upper.or(file.perturb_upper) {
                spec.perturb_upper = d;
            }
            spec.tsai_cg = tsai_cg.or(file.tsai_cg);
            let format = format
                .map(Into::into)
                .or(file.format)
                .unwrap_or(OutputFormat::Table);
            let out = out.or(file.out);

            let report = harness::run_sweep(&spec).map_err(|e| Failure::Usage(e.to_string()))?;
            let text = harness::render_report(&report, format);
            let text = match out {
                Some(path) => {
                    write_output(&path, &text)?;
                    String::new()
                }
                None => text,
            };
            if report.has_computation_failure() {
                eprint!("{text}");
                Err(Failure::Computation(format!(
                    "{} violations, including computation failures",
                    report.violations.len()
                )))
            } else if !report.passed() {
                eprint!("{text}");
                Err(Failure::Violation(format!(
                    "{} violations in {} grid points",
                    report.violations.len(),
                    report.grid_size
                )))
            } else {
                Ok(text)
            }
        }
        Command::Appendix {
            format,
            constants,
            write_constants,
            max_genus,
        } => {
            let constants = match constants {
                Some(path) => {
                    let text = fs::read_to_string(&path).map_err(|e| {
                        Failure::Usage(format!("cannot read {}: {e}", path.display()))
                    })?;
                    serde_json::from_str::<TrigonModelConstants>(&text).map_err(|e| {
                        Failure::Usage(format!("invalid constants {}: {e}", path.display()))
                    })?
                }
                None => TrigonModelConstants::default(),
            };
            if let Some(path) = write_constants {
                write_output(&path, &harness::to_json(&constants))?;
            }
            let checks = appendix::appendix_checks(&constants, max_genus)
                .map_err(|e| Failure::Usage(e.to_string()))?;
            let text = harness::render_appendix(&checks, format.into());
            if checks.iter().any(|c| c.status == CheckStatus::Fail) {
                eprint!("{text}");
                Err(Failure::Violation("appendix check failed".into()))
            } else {
                Ok(text)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Violation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_VIOLATION)
        }
        Err(Failure::Computation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_FAILURE)
        }
    }
}
