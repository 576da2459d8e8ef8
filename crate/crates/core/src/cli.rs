//! `rough-eval` command line.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::config::{parse_config, ConfigFile};
use crate::error::EvalError;
use crate::ism::{load_information_system, validate_config, EvaluationConfig, InformationSystem};
use crate::pipeline::{run_all, run_level, EvaluationReport};
use crate::proximity::{alpha_partition, build_proximity};
use crate::report;
use crate::roughset::{approximate, joint_partition, object_set};

#[derive(Debug, Parser)]
#[command(
    name = "rough-eval",
    version,
    about = "Multi-level performance evaluation with rough sets on fuzzy approximation spaces",
    arg_required_else_help = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct Common {
    /// Input table (`id,<attr>,...`).
    #[arg(long)]
    data: PathBuf,
    /// Evaluation config (TOML, version 1).
    #[arg(long)]
    config: PathBuf,
    /// Overrides the configured alpha.
    #[arg(long)]
    alpha: Option<f64>,
    /// Overrides the configured logarithm base.
    #[arg(long)]
    log_base: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the full evaluation.
    Evaluate {
        #[command(flatten)]
        common: Common,
        /// Only this level.
        #[arg(long)]
        level: Option<String>,
    },
    /// α-partition of one attribute.
    Partition {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        attr: String,
        /// Also print the proximity matrix at three decimals.
        #[arg(long)]
        dump_matrix: bool,
    },
    /// Ordered information system of one level.
    Grade {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        level: String,
    },
    /// Entropies, significance and weights of one level.
    Entropy {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        level: String,
    },
    /// Lower/upper approximation of a set of objects.
    Approx {
        #[command(flatten)]
        common: Common,
        /// Comma-separated attribute subset.
        #[arg(long, value_delimiter = ',', required = true)]
        attrs: Vec<String>,
        /// Comma-separated target object ids.
        #[arg(long, value_delimiter = ',', required = true)]
        target: Vec<String>,
    },
}

#[derive(Debug)]
enum Failure {
    Eval(EvalError),
    Io(String),
}

impl From<EvalError> for Failure {
    fn from(e: EvalError) -> Self {
        Failure::Eval(e)
    }
}

impl Failure {
    fn line(&self) -> String {
        let (kind, message) = match self {
            Failure::Eval(e) => (e.kind(), e.to_string()),
            Failure::Io(m) => ("Io", m.clone()),
        };
        json!({ "error": kind, "message": message }).to_string()
    }
}

struct Loaded {
    is: InformationSystem,
    config: EvaluationConfig,
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load(common: &Common) -> Result<Loaded, Failure> {
    let ConfigFile { mut config, attributes } = parse_config(&read(&common.config)?)?;
    if let Some(a) = common.alpha {
        config.alpha = a;
        for level in &mut config.levels {
            level.alpha = None;
        }
    }
    if let Some(b) = common.log_base {
        config.log_base = b;
    }
    let is = load_information_system(&read(&common.data)?, &attributes)?;
    validate_config(&config, &is)?;
    Ok(Loaded { is, config })
}

fn render_report(report: &EvaluationReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report::report_json(report)).expect("json values serialize");
            s.push('\n');
            s
        }
        Format::Csv => report::score_table_csv(report),
        Format::Table => report::report_text(report),
    }
}

fn dispatch(cli: Cli) -> Result<(String, Option<PathBuf>), Failure> {
    match cli.command {
        Command::Evaluate { common, level } => {
            let Loaded { is, config } = load(&common)?;
            let report = match level {
                Some(id) => EvaluationReport {
                    alpha: config.alpha,
                    log_base: config.log_base,
                    redundancy_epsilon: config.redundancy_epsilon,
                    objects: is.objects().to_vec(),
                    levels: vec![run_level(&is, &config, &id)?],
                },
                None => run_all(&is, &config)?,
            };
            Ok((render_report(&report, common.format), common.out))
        }
        Command::Partition {
            common,
            attr,
            dump_matrix,
        } => {
            let Loaded { is, config } = load(&common)?;
            let spec = is.attribute(&attr)?;
            let alpha = config
                .levels
                .iter()
                .find(|l| l.attributes.contains(&attr))
                .and_then(|l| l.alpha)
                .unwrap_or(config.alpha);
            let matrix = build_proximity(&is.column(&attr)?, spec)?;
            let partition = alpha_partition(&matrix, alpha);
            let body = match common.format {
                Format::Json => {
                    let mut v = json!({
                        "attribute": attr,
                        "alpha": alpha,
                        "partition": partition.to_ids(is.objects()),
                    });
                    if dump_matrix {
                        v["matrix"] = json!((0..matrix.size()).map(|i| matrix.row(i).to_vec()).collect::<Vec<_>>());
                    }
                    serde_json::to_string_pretty(&v).expect("json values serialize") + "\n"
                }
                _ => {
                    let mut s = String::new();
                    if dump_matrix {
                        s.push_str(&matrix.to_csv(is.objects()));
                        s.push('\n');
                    }
                    let _ = writeln!(s, "U/R({attr}, {alpha}) = {}", report::partition_text(&partition, is.objects()));
                    s
                }
            };
            Ok((body, common.out))
        }
        Command::Grade { common, level } => {
            let Loaded { is, config } = load(&common)?;
            let result = run_level(&is, &config, &level)?;
            let body = match common.format {
                Format::Json => {
                    let v = report::level_json(&result, is.objects());
                    serde_json::to_string_pretty(&json!({ "level": v["level"], "grade_scale": v["grade_scale"], "grades": v["grades"] }))
                        .expect("json values serialize")
                        + "\n"
                }
                _ => report::graded_table_text(&result),
            };
            Ok((body, common.out))
        }
        Command::Entropy { common, level } => {
            let Loaded { is, config } = load(&common)?;
            let result = run_level(&is, &config, &level)?;
            let body = match common.format {
                Format::Json => {
                    let v = report::level_json(&result, is.objects());
                    let keep = ["level", "alpha", "joint_partition", "entropy", "sgf", "redundant", "weights"];
                    let picked: serde_json::Map<String, serde_json::Value> =
                        keep.iter().map(|k| (k.to_string(), v[*k].clone())).collect();
                    serde_json::to_string_pretty(&picked).expect("json values serialize") + "\n"
                }
                _ => report::entropy_text(&result, is.objects()),
            };
            Ok((body, common.out))
        }
        Command::Approx { common, attrs, target } => {
            let Loaded { is, config } = load(&common)?;
            let mut parts = Vec::with_capacity(attrs.len());
            for name in &attrs {
                let m = build_proximity(&is.column(name)?, is.attribute(name)?)?;
                parts.push(alpha_partition(&m, config.alpha));
            }
            let joint = joint_partition(&parts)?;
            let ids: Vec<&str> = target.iter().map(String::as_str).collect();
            let x = object_set(is.objects(), &ids)?;
            let pair = approximate(&joint, &x)?;
            let name = |set: &crate::roughset::ObjectSet| -> Vec<String> {
                set.iter().map(|&i| is.objects()[i].clone()).collect()
            };
            let body = match common.format {
                Format::Json => {
                    serde_json::to_string_pretty(&json!({
                        "attributes": attrs,
                        "alpha": config.alpha,
                        "partition": joint.to_ids(is.objects()),
                        "lower": name(&pair.lower),
                        "upper": name(&pair.upper),
                        "discernible": pair.discernible,
                    }))
                    .expect("json values serialize")
                        + "\n"
                }
                _ => format!(
                    "partition: {}\nlower: {{{}}}\nupper: {{{}}}\ndiscernible: {}\n",
                    report::partition_text(&joint, is.objects()),
                    name(&pair.lower).join(","),
                    name(&pair.upper).join(","),
                    pair.discernible
                ),
            };
            Ok((body, common.out))
        }
    }
}

/// Runs the command line and returns the process exit status: 0 on
/// success, 1 on a validation or evaluation error (one JSON line on
/// `stderr`), 2 on a usage error.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match dispatch(cli) {
        Ok((body, None)) => {
            let _ = stdout.write_all(body.as_bytes());
            0
        }
        Ok((body, Some(path))) => match std::fs::write(&path, body) {
            Ok(()) => 0,
            Err(e) => {
                let _ = writeln!(stderr, "{}", Failure::Io(format!("{}: {e}", path.display())).line());
                1
            }
        },
        Err(f) => {
            let _ = writeln!(stderr, "{}", f.line());
            1
        }
    }
}
