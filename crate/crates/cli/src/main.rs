// SPDX-License-Identifier: Apache-2.0

//! `mtdecohere`: decoherence and collapse timescales from the command line.
//!
//! Exit codes: 0 success, 1 audit mismatch, 2 input error, 3 model domain
//! error.

mod report;
#[cfg(test)]
mod tests;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use decoherence_core::quantities::{AuditDocument, ConstantValues, ConstantsTable, UnitRegistry};
use decoherence_core::scenarios::{
    self, compare, preset, run_scenario, sweep, Scenario, ScenarioFile, SweepParam,
};
use serde::Serialize;

use report::Style;

/// Names a JSON file of physical constants that replaces the built-in table.
pub const CONSTANTS_ENV: &str = "MTDECOHERE_CONSTANTS";

#[derive(Parser)]
#[command(
    name = "mtdecohere",
    version,
    about = "Decoherence and collapse timescales for microtubule quantum states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Emit JSON instead of a text report.
    #[arg(long, global = true)]
    json: bool,
    /// Override the scenario's RNG seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Significant digits in text reports.
    #[arg(long, global = true, default_value_t = 4)]
    digits: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate every model on a scenario.
    Compute {
        /// Preset name or path to a scenario file.
        scenario: String,
        #[command(flatten)]
        common: Common,
    },
    /// Vary one parameter over a grid and write CSV.
    Sweep {
        scenario: String,
        /// Parameter to vary (e.g. temperature, gel_factor, n_tubulin, or T, a, s, p, N).
        #[arg(long)]
        param: String,
        /// Comma-separated grid values.
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
        /// Unit of the grid values; SI when omitted.
        #[arg(long)]
        unit: Option<String>,
        /// Output CSV path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Tabulate all model timescales with pairwise ratios.
    Compare {
        scenario: String,
        #[command(flatten)]
        common: Common,
    },
    /// Check formulas in an audit document for dimensional consistency.
    Audit {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// List shipped presets with field annotations.
    Presets {
        /// Print one preset as an editable scenario file.
        #[arg(long)]
        show: Option<String>,
        #[command(flatten)]
        common: Common,
    },
}

/// Failure carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

const EXIT_MISMATCH: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_DOMAIN: u8 = 3;

fn input(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.into(),
    }
}

#[derive(Debug, Serialize)]
struct RunManifest {
    command: String,
    source: String,
    outputs: Vec<String>,
    seed: Option<u64>,
    constants_version: String,
    timestamp: String,
}

impl RunManifest {
    fn new(
        command: &str,
        source: &str,
        seed: Option<u64>,
        constants: &ConstantsTable<f64>,
    ) -> Self {
        Self {
            command: command.to_string(),
            source: source.to_string(),
            outputs: Vec::new(),
            seed,
            constants_version: constants.version.clone(),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        }
    }

    /// `key=value` lines for CSV comment headers; seed and constants
    /// are written by the sweep table itself.
    fn csv_lines(&self) -> Vec<String> {
        vec![
            format!("command={}", self.command),
            format!("source={}", self.source),
            format!("outputs={}", self.outputs.join(";")),
            format!("timestamp={}", self.timestamp),
        ]
    }
}

struct Environment {
    constants: ConstantsTable<f64>,
    registry: UnitRegistry,
}

fn environment(constants: Option<&Path>) -> Result<Environment, Failure> {
    let values = match constants {
        Some(path) => {
            let text = read(path)?;
            serde_json::from_str::<ConstantValues>(&text)
                .map_err(|e| input(format!("{CONSTANTS_ENV}={}: {e}", path.display())))?
        }
        None => ConstantValues::codata2018(),
    };
    let constants =
        ConstantsTable::from_values(&values).map_err(|e| input(format!("{CONSTANTS_ENV}: {e}")))?;
    Ok(Environment {
        constants,
        registry: UnitRegistry::new(&values),
    })
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn load_scenario(source: &str, env: &Environment, seed: Option<u64>) -> Result<Scenario, Failure> {
    let file = match preset(source) {
        Some(p) => p.file,
        None => {
            let path = Path::new(source);
            if !path.exists() {
                return Err(input(format!(
                    "`{source}` is neither a preset ({}) nor an existing file",
                    scenarios::PRESET_NAMES.join(", ")
                )));
            }
            ScenarioFile::from_json_str(&read(path)?)
                .map_err(|e| input(format!("{source}: {e}")))?
        }
    };
    let mut scenario = file
        .to_scenario(&env.registry)
        .map_err(|e| input(format!("{source}: {e}")))?;
    if let Some(seed) = seed {
        scenario.seed = seed;
    }
    Ok(scenario)
}

/// Per-invocation state: the constants override and the collected stdout.
struct Context {
    constants: Option<PathBuf>,
    stdout: String,
}

impl Context {
    fn environment(&self) -> Result<Environment, Failure> {
        environment(self.constants.as_deref())
    }

    fn print(&mut self, text: &str) {
        self.stdout.push_str(text);
    }

    fn print_json(&mut self, value: &impl Serialize) {
        let text = serde_json::to_string_pretty(value).expect("reports serialize");
        self.stdout.push_str(&text);
        self.stdout.push('\n');
    }
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    manifest: &'a RunManifest,
    #[serde(flatten)]
    body: T,
}

fn cmd_compute(ctx: &mut Context, source: &str, common: &Common) -> Result<u8, Failure> {
    let env = ctx.environment()?;
    let scenario = load_scenario(source, &env, common.seed)?;
    let manifest = RunManifest::new("compute", source, Some(scenario.seed), &env.constants);
    let results = run_scenario(&scenario, &env.constants);
    #[derive(Serialize)]
    struct Body<'a> {
        label: &'a str,
        results: &'a [scenarios::ModelResult],
    }
    if common.json {
        ctx.print_json(&Envelope {
            manifest: &manifest,
            body: Body {
                label: &scenario.label,
                results: &results,
            },
        });
    } else {
        ctx.print(&report::compute(
            &manifest,
            &scenario,
            &results,
            Style::new(common.digits),
        ));
    }
    Ok(if results.iter().any(|r| r.error.is_some()) {
        EXIT_DOMAIN
    } else {
        0
    })
}

fn parse_grid(
    text: &str,
    unit: Option<&str>,
    param: SweepParam,
    env: &Environment,
) -> Result<Vec<f64>, Failure> {
    let factor = match unit {
        None => 1.0,
        Some(unit) => {
            let u = env
                .registry
                .parse(unit)
                .map_err(|e| input(format!("--unit: {e}")))?;
            if u.dim != param.dimension() {
                return Err(input(format!(
                    "--unit `{unit}` has dimension [{}], but `{}` needs [{}]",
                    u.dim,
                    param.name(),
                    param.dimension()
                )));
            }
            u.factor
        }
    };
    let values = text
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .map(|v| v * factor)
                .ok_or_else(|| input(format!("--grid: `{t}` is not a finite number")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if values.is_empty() {
        return Err(input("--grid is empty"));
    }
    Ok(values)
}

fn cmd_sweep(
    ctx: &mut Context,
    source: &str,
    param: &str,
    grid: &str,
    unit: Option<&str>,
    out: Option<&Path>,
    common: &Common,
) -> Result<u8, Failure> {
    let env = ctx.environment()?;
    let scenario = load_scenario(source, &env, common.seed)?;
    let param: SweepParam = param.parse().map_err(input)?;
    let values = parse_grid(grid, unit, param, &env)?;
    let table = sweep(&scenario, param, &values, &env.constants)
        .map_err(|e| input(format!("--grid: {e}")))?;
    let mut manifest = RunManifest::new("sweep", source, Some(scenario.seed), &env.constants);
    if let Some(out) = out {
        manifest.outputs.push(out.display().to_string());
    }
    if common.json {
        #[derive(Serialize)]
        struct Body<'a> {
            table: &'a scenarios::SweepTable,
        }
        let text = serde_json::to_string_pretty(&Envelope {
            manifest: &manifest,
            body: Body { table: &table },
        })
        .expect("tables serialize");
        emit(ctx, out, &format!("{text}\n"))?;
    } else {
        emit(ctx, out, &table.to_csv(&manifest.csv_lines()))?;
    }
    Ok(0)
}

fn emit(ctx: &mut Context, out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| input(format!("{}: {e}", path.display()))),
        None => {
            ctx.print(text);
            Ok(())
        }
    }
}

fn cmd_compare(ctx: &mut Context, source: &str, common: &Common) -> Result<u8, Failure> {
    let env = ctx.environment()?;
    let scenario = load_scenario(source, &env, common.seed)?;
    let manifest = RunManifest::new("compare", source, Some(scenario.seed), &env.constants);
    let table = compare(&scenario, &env.constants);
    if common.json {
        #[derive(Serialize)]
        struct Body<'a> {
            comparison: &'a scenarios::Comparison,
        }
        ctx.print_json(&Envelope {
            manifest: &manifest,
            body: Body { comparison: &table },
        });
    } else {
        ctx.print(&report::comparison(
            &manifest,
            &table,
            Style::new(common.digits),
        ));
    }
    Ok(if table.rows.iter().any(|r| r.error.is_some()) {
        EXIT_DOMAIN
    } else {
        0
    })
}

#[derive(Serialize)]
struct AuditRow {
    name: String,
    expr: String,
    consistent: bool,
    claimed: String,
    derived: Option<String>,
    verdict: String,
}

fn cmd_audit(ctx: &mut Context, path: &Path, common: &Common) -> Result<u8, Failure> {
    let env = ctx.environment()?;
    let source = path.display().to_string();
    let doc =
        AuditDocument::from_json_str(&read(path)?).map_err(|e| input(format!("{source}: {e}")))?;
    let verdicts = doc
        .audit(&env.registry)
        .map_err(|e| input(format!("{source}: {e}")))?;
    let rows: Vec<AuditRow> = verdicts
        .iter()
        .map(|v| AuditRow {
            name: v.name.clone(),
            expr: v.expr.clone(),
            consistent: v.report.is_consistent(),
            claimed: v.report.claimed.to_string(),
            derived: v.report.derived.map(|d| d.to_string()),
            verdict: v.report.to_string(),
        })
        .collect();
    let manifest = RunManifest::new("audit", &source, None, &env.constants);
    if common.json {
        #[derive(Serialize)]
        struct Body<'a> {
            verdicts: &'a [AuditRow],
        }
        ctx.print_json(&Envelope {
            manifest: &manifest,
            body: Body { verdicts: &rows },
        });
    } else {
        ctx.print(&report::audit(&manifest, &rows));
    }
    Ok(if rows.iter().all(|r| r.consistent) {
        0
    } else {
        EXIT_MISMATCH
    })
}

fn cmd_presets(ctx: &mut Context, show: Option<&str>, common: &Common) -> Result<u8, Failure> {
    if let Some(name) = show {
        let p = preset(name).ok_or_else(|| {
            input(format!(
                "unknown preset `{name}`; expected one of {}",
                scenarios::PRESET_NAMES.join(", ")
            ))
        })?;
        ctx.print(&format!("{}\n", p.file.to_json_pretty()));
        return Ok(0);
    }
    let presets = scenarios::all_presets();
    if common.json {
        ctx.print_json(&presets);
    } else {
        ctx.print(&report::presets(&presets));
    }
    Ok(0)
}

fn run(cli: Cli, ctx: &mut Context) -> Result<u8, Failure> {
    match &cli.command {
        Command::Compute { scenario, common } => cmd_compute(ctx, scenario, common),
        Command::Sweep {
            scenario,
            param,
            grid,
            unit,
            out,
            common,
        } => cmd_sweep(
            ctx,
            scenario,
            param,
            grid,
            unit.as_deref(),
            out.as_deref(),
            common,
        ),
        Command::Compare { scenario, common } => cmd_compare(ctx, scenario, common),
        Command::Audit { file, common } => cmd_audit(ctx, file, common),
        Command::Presets { show, common } => cmd_presets(ctx, show.as_deref(), common),
    }
}

/// Outcome of one invocation: exit code and the text for each stream.
struct Invocation {
    code: u8,
    stdout: String,
    stderr: String,
}

fn invoke<I, T>(args: I, constants: Option<PathBuf>) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let (code, stdout, stderr) = if e.use_stderr() {
                (EXIT_INPUT, String::new(), text)
            } else {
                (0, text, String::new())
            };
            return Invocation {
                code,
                stdout,
                stderr,
            };
        }
    };
    let mut ctx = Context {
        constants,
        stdout: String::new(),
    };
    let (code, stderr) = match run(cli, &mut ctx) {
        Ok(code) => (code, String::new()),
        Err(f) => (f.code, format!("mtdecohere: {}\n", f.message)),
    };
    Invocation {
        code,
        stdout: ctx.stdout,
        stderr,
    }
}

fn main() -> ExitCode {
    let constants = std::env::var_os(CONSTANTS_ENV).map(PathBuf::from);
    let result = invoke(std::env::args_os(), constants);
    let _ = std::io::stderr().write_all(result.stderr.as_bytes());
    let mut stdout = std::io::stdout().lock();
    match stdout
        .write_all(result.stdout.as_bytes())
        .and_then(|_| stdout.flush())
    {
        // A closed pipe (e.g. `| head`) is not an error.
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
            eprintln!("mtdecohere: stdout: {e}");
            ExitCode::from(EXIT_INPUT)
        }
        _ => ExitCode::from(result.code),
    }
}
