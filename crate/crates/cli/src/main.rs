//! `ecopol`: calibrate the benchmark, run policy scenarios and emit tables.
//!
//! Exit codes: 0 success, 1 tolerance failure, 2 config error, 3 solver error.

mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use ecopol_core::calibration::{calibrate, CalibrationMode, CalibrationOptions};
use ecopol_core::economy::CanonicalEconomy;
use ecopol_core::oracle::{calibrate_parametric, first_order_accuracy, ElasticityRule, SolverOptions};
use ecopol_core::policy::{
    builtin, resolve_scenario, run_sensitivity, table_cases, GammaOverride, Overrides, PolicySource, ScenarioSpec,
};
use ecopol_core::report::{
    calibration_records, diff_golden, golden, read_delimited, scenario_records, table_records, Record, GOLDENS,
};
use ecopol_core::shock::{Instrument, PolicyShock};

use config::{config_error, load_economy, ConfigError, Entry, Format, PrecisionConfig, RunConfig};
use output::{emit, write, Block, BLOCK_MARKER};

#[derive(Parser)]
#[command(name = "ecopol", version, about = "Environmental policy under an oligopolistic, price-discriminating energy sector")]
struct Cli {
    /// TOML run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Benchmark TOML; overrides the config. Defaults to the bundled 2019 benchmark.
    #[arg(long, global = true)]
    benchmark: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Decimal places as `PERCENT` or `PERCENT,MONEY`.
    #[arg(long, global = true, value_parser = parse_precision)]
    precision: Option<PrecisionConfig>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Calibrate the benchmark and report the derived parameters.
    Calibrate {
        #[arg(long, value_enum, default_value_t = ModeArg::Infer)]
        mode: ModeArg,
    },
    /// Solve one shock given in percent, e.g. `--shock t_Z=10 --shock t_ER=-5`.
    Solve {
        #[arg(long = "shock", value_parser = parse_shock_term, required = true)]
        shocks: Vec<(Instrument, f64)>,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        #[arg(long, default_value = "custom")]
        label: String,
    },
    /// Run named cases and tables, or the configured scenario list.
    Scenario {
        /// Case (`1.0`, `case-4.0`) or table (`table-D1`); repeatable.
        #[arg(long = "case")]
        cases: Vec<String>,
    },
    /// Re-run one case over a list of parameter values, in parallel.
    Sweep {
        #[arg(long = "case", default_value = "1.0")]
        case: String,
        #[arg(long, value_enum)]
        param: SweepParam,
        #[arg(long, value_delimiter = ',', required = true)]
        values: Vec<f64>,
    },
    /// Check the displacement map against the nonlinear economy.
    Oracle {
        /// Shock directions; the policy cases 1.0 to 4.0 by default.
        #[arg(long = "case")]
        cases: Vec<String>,
        /// Largest shock component at the coarse step.
        #[arg(long, default_value_t = 0.01)]
        step: f64,
        #[arg(long, value_enum, default_value_t = RuleArg::Constant)]
        rule: RuleArg,
        #[arg(long, value_enum, default_value_t = ModeArg::Infer)]
        mode: ModeArg,
    },
    /// Compare fresh runs, or an emitted file, with golden tables.
    Goldens {
        /// Bundled golden tables to check; all when absent.
        #[arg(long = "table")]
        tables: Vec<String>,
        /// Delimited output to check instead of a fresh run.
        #[arg(long, requires = "golden")]
        emitted: Option<PathBuf>,
        /// Delimited golden file to compare `--emitted` with.
        #[arg(long, requires = "emitted")]
        golden: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Infer,
    Monopoly,
    PerfectCompetition,
}

impl From<ModeArg> for CalibrationMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Infer => CalibrationMode::InferCompetition,
            ModeArg::Monopoly => CalibrationMode::ForceMonopoly,
            ModeArg::PerfectCompetition => CalibrationMode::ForcePerfectCompetition,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum RuleArg {
    Constant,
    SharePoint,
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepParam {
    /// Marginal cost as a share of the industrial price.
    GammaShare,
    /// Marginal cost level.
    Gamma,
    SigmaE,
    EpsEr,
}

fn parse_precision(s: &str) -> Result<PrecisionConfig, String> {
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}"));
    match s.split_once(',') {
        Some((p, m)) => Ok(PrecisionConfig { percent: parse(p)?, money: parse(m)? }),
        None => Ok(PrecisionConfig { percent: parse(s)?, ..PrecisionConfig::default() }),
    }
}

fn parse_shock_term(s: &str) -> Result<(Instrument, f64), String> {
    let (sym, v) = s.split_once('=').ok_or("expected SYMBOL=PERCENT")?;
    let i = Instrument::from_symbol(sym.trim()).ok_or_else(|| format!("unknown instrument `{sym}`"))?;
    let v: f64 = v.trim().parse().map_err(|e| format!("`{v}`: {e}"))?;
    Ok((i, v / 100.0))
}

/// Settings after merging flags over the config file.
struct Settings {
    config: RunConfig,
    economy: CanonicalEconomy,
    format: Format,
    precision: PrecisionConfig,
    out: Option<PathBuf>,
}

impl Settings {
    fn new(cli: &Cli) -> Result<Settings> {
        let config = match &cli.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::default(),
        };
        let economy = match &cli.benchmark {
            Some(p) => load_economy(Some(p))?,
            None => config.economy()?,
        };
        Ok(Settings {
            economy,
            format: cli.format.unwrap_or(config.format),
            precision: cli.precision.unwrap_or(config.precision),
            out: cli.out.clone().or_else(|| config.out.clone()),
            config,
        })
    }

    fn emit(&self, blocks: &[Block]) -> Result<()> {
        let text = emit(blocks, self.format, self.precision.into())?;
        write(&text, self.out.as_deref())
    }
}

fn scenario_block(economy: &CanonicalEconomy, specs: &[ScenarioSpec]) -> Result<Block> {
    let mut records = Vec::new();
    for (spec, r) in specs.iter().zip(run_sensitivity(economy, specs)) {
        let r = r.with_context(|| format!("scenario {}", spec.label))?;
        records.extend(scenario_records(&r));
    }
    Ok(Block { layout: "scenario".into(), records })
}

/// Runs entries in order. Consecutive single scenarios share one block.
fn run_entries(economy: &CanonicalEconomy, entries: &[Entry]) -> Result<Vec<Block>> {
    let mut blocks = Vec::new();
    let mut pending: Vec<ScenarioSpec> = Vec::new();
    for e in entries {
        match e {
            Entry::Case(spec) => pending.push(spec.clone()),
            Entry::Table(t) => {
                if !pending.is_empty() {
                    blocks.push(scenario_block(economy, &pending)?);
                    pending.clear();
                }
                let records = table_records(economy, t).with_context(|| format!("table {t}"))?;
                blocks.push(Block { layout: t.clone(), records });
            }
        }
    }
    if !pending.is_empty() {
        blocks.push(scenario_block(economy, &pending)?);
    }
    Ok(blocks)
}

fn cmd_calibrate(s: &Settings, mode: ModeArg) -> Result<u8> {
    let mode = CalibrationMode::from(mode);
    let p = calibrate(&s.economy, &CalibrationOptions::with_mode(mode)).context("calibration")?;
    let label = match mode {
        CalibrationMode::InferCompetition => "base",
        CalibrationMode::ForceMonopoly => "monopoly",
        CalibrationMode::ForcePerfectCompetition => "perfect-competition",
    };
    s.emit(&[Block { layout: "table-1".into(), records: calibration_records(&p, label) }])?;
    Ok(0)
}

fn cmd_solve(s: &Settings, shocks: &[(Instrument, f64)], mode: Option<ModeArg>, label: &str) -> Result<u8> {
    let mut shock = PolicyShock::ZERO;
    for (i, v) in shocks {
        shock.set(*i, shock.get(*i) + v);
    }
    let spec = ScenarioSpec {
        label: label.to_string(),
        source: PolicySource::Fixed(shock),
        overrides: Overrides { mode: mode.map(Into::into), ..Overrides::default() },
    };
    let r = resolve_scenario(&s.economy, &spec).with_context(|| format!("scenario {label}"))?;
    s.emit(&[Block { layout: "scenario".into(), records: scenario_records(&r) }])?;
    Ok(0)
}

fn cmd_scenario(s: &Settings, cases: &[String]) -> Result<u8> {
    let entries = if cases.is_empty() {
        s.config.entries()?
    } else {
        cases.iter().map(|c| Entry::parse(c)).collect::<Result<_>>()?
    };
    let blocks = run_entries(&s.economy, &entries)?;
    s.emit(&blocks)?;
    Ok(0)
}

fn cmd_sweep(s: &Settings, case: &str, param: SweepParam, values: &[f64]) -> Result<u8> {
    let base = builtin(case).map_err(|_| config_error(format!("unknown scenario `{case}`")))?;
    let specs: Vec<ScenarioSpec> = values
        .iter()
        .map(|&v| {
            let mut o = base.overrides;
            let name = match param {
                SweepParam::GammaShare => {
                    o.gamma = Some(GammaOverride::ShareOfIndustrialPrice(v));
                    "gamma_share"
                }
                SweepParam::Gamma => {
                    o.gamma = Some(GammaOverride::Level(v));
                    "gamma"
                }
                SweepParam::SigmaE => {
                    o.sigma_e = Some(v);
                    "sigma_E"
                }
                SweepParam::EpsEr => {
                    o.eps_er = Some(v);
                    "eps_ER"
                }
            };
            ScenarioSpec { label: format!("{}:{name}={v}", base.label), source: base.source.clone(), overrides: o }
        })
        .collect();
    s.emit(&[scenario_block(&s.economy, &specs)?])?;
    Ok(0)
}

fn cmd_oracle(s: &Settings, cases: &[String], step: f64, rule: RuleArg, mode: ModeArg) -> Result<u8> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(config_error(format!("step must be positive, got {step}")));
    }
    let cases: Vec<String> = if cases.is_empty() {
        table_cases("table-2").unwrap().iter().map(|c| c.to_string()).collect()
    } else {
        cases.to_vec()
    };
    let rule = match rule {
        RuleArg::Constant => ElasticityRule::Constant,
        RuleArg::SharePoint => ElasticityRule::SharePoint,
    };
    let p = calibrate(&s.economy, &CalibrationOptions::with_mode(mode.into())).context("calibration")?;
    let pe = calibrate_parametric(&p, rule).context("nonlinear economy")?;
    let mut text = String::new();
    if s.format != Format::Structured {
        text.push_str("case,component,hat,d_h,d_half,ratio,verdict\n");
    }
    let mut all_pass = true;
    for name in &cases {
        let spec = builtin(name).map_err(|_| config_error(format!("unknown scenario `{name}`")))?;
        let shock = resolve_scenario(&s.economy, &spec).with_context(|| format!("scenario {name}"))?.shock;
        let report = first_order_accuracy(&pe, &shock, step, &SolverOptions::default())
            .with_context(|| format!("oracle {name}"))?;
        for row in &report.rows {
            all_pass &= row.pass;
            let verdict = if row.pass { "PASS" } else { "FAIL" };
            if s.format == Format::Structured {
                let line = serde_json::json!({ "case": spec.label, "row": row, "verdict": verdict });
                text.push_str(&line.to_string());
            } else {
                text.push_str(&format!(
                    "{},{},{:e},{:e},{:e},{:e},{verdict}",
                    spec.label,
                    row.component.symbol(),
                    row.hat,
                    row.d_h,
                    row.d_half,
                    row.ratio
                ));
            }
            text.push('\n');
        }
    }
    write(&text, s.out.as_deref())?;
    Ok(if all_pass { 0 } else { 1 })
}

/// Reads delimited records, including multi-block output of this tool.
fn read_records(path: &std::path::Path) -> Result<Vec<Record>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| config_error(format!("cannot read {}: {e}", path.display())))?;
    let mut out = Vec::new();
    let mut chunk = String::new();
    let mut flush = |chunk: &mut String| -> Result<()> {
        if !chunk.trim().is_empty() {
            out.extend(read_delimited(chunk).with_context(|| path.display().to_string())?);
        }
        chunk.clear();
        Ok(())
    };
    for line in text.lines() {
        if line.starts_with(BLOCK_MARKER) {
            flush(&mut chunk)?;
        }
        chunk.push_str(line);
        chunk.push('\n');
    }
    flush(&mut chunk)?;
    Ok(out)
}

fn cmd_goldens(s: &Settings, tables: &[String], emitted: Option<&PathBuf>, gold: Option<&PathBuf>) -> Result<u8> {
    let mut pairs: Vec<(String, Vec<Record>, Vec<Record>)> = Vec::new();
    if let (Some(e), Some(g)) = (emitted, gold) {
        pairs.push((g.display().to_string(), read_records(e)?, read_records(g)?));
    } else {
        let names: Vec<String> = if tables.is_empty() {
            GOLDENS.iter().map(|(n, _)| n.to_string()).collect()
        } else {
            tables.to_vec()
        };
        for t in names {
            let g = golden(&t).map_err(|_| config_error(format!("no golden table `{t}`")))?;
            let e = table_records(&s.economy, &t).with_context(|| format!("table {t}"))?;
            pairs.push((t, e, g));
        }
    }
    let mut text = String::new();
    let mut failed = 0;
    for (name, e, g) in pairs {
        let report = diff_golden(&e, &g).map_err(|err| config_error(format!("{name}: {err}")))?;
        text.push_str(&format!(
            "{name}: {} cells compared, {} outside tolerance\n",
            report.compared,
            report.failures.len()
        ));
        for f in &report.failures {
            text.push_str(&format!(
                "  {:?} {} case {}: golden {} emitted {} tolerance {}\n",
                f.section, f.quantity, f.case, f.golden, f.emitted, f.tolerance
            ));
        }
        failed += report.failures.len();
    }
    write(&text, s.out.as_deref())?;
    Ok(if failed == 0 { 0 } else { 1 })
}

fn run(cli: &Cli) -> Result<u8> {
    let s = Settings::new(cli)?;
    match &cli.command {
        Command::Calibrate { mode } => cmd_calibrate(&s, *mode),
        Command::Solve { shocks, mode, label } => cmd_solve(&s, shocks, *mode, label),
        Command::Scenario { cases } => cmd_scenario(&s, cases),
        Command::Sweep { case, param, values } => cmd_sweep(&s, case, *param, values),
        Command::Oracle { cases, step, rule, mode } => cmd_oracle(&s, cases, *step, *rule, *mode),
        Command::Goldens { tables, emitted, golden } => cmd_goldens(&s, tables, emitted.as_ref(), golden.as_ref()),
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    use ecopol_core::Error as E;
    if e.downcast_ref::<ConfigError>().is_some() {
        return 2;
    }
    match e.downcast_ref::<E>() {
        Some(E::Parse(_) | E::InvalidBenchmark(_) | E::UnknownScenario(_) | E::IllPosedSpec(_) | E::ShapeMismatch(_)) => 2,
        Some(_) => 3,
        None => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
