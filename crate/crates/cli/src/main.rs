//! `qstirling`: cycle reports, figure-data sweeps, asymptotic comparisons,
//! optimization and the self-verification suite.
//!
//! Energies and frequencies are in units of the cold-bath temperature when
//! `--tc 1` (the default), matching the dimensionless figure axes.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand};
use qstirling::asymptotics::{Order, Regime as Limit};
use qstirling::cycle::{CycleParams, SweepAxis, SweepRange};
use qstirling::figures::Figure;
use qstirling::verify::VerifyOptions;
use qstirling::Medium;
use serde_json::{Map, Value};

use config::Config;
use output::{Format, Report};

#[derive(Debug, Parser)]
#[command(
    name = "qstirling",
    version,
    about = "Quantum Stirling engine with a squeezed hot bath"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Full stroke ledger and efficiencies of one cycle.
    Cycle {
        #[command(flatten)]
        physics: Physics,
        #[command(flatten)]
        io: Io,
    },
    /// One-dimensional sweep, or a figure preset.
    Sweep {
        #[command(flatten)]
        physics: Physics,
        #[command(flatten)]
        range: Range,
        #[command(flatten)]
        io: Io,
    },
    /// Two-dimensional grid, or a figure preset.
    Surface {
        #[command(flatten)]
        physics: Physics,
        #[command(flatten)]
        range: Range,
        /// Second axis.
        #[arg(long)]
        axis2: Option<SweepAxis>,
        #[arg(long)]
        from2: Option<f64>,
        #[arg(long)]
        to2: Option<f64>,
        #[arg(long)]
        steps2: Option<usize>,
        #[command(flatten)]
        io: Io,
    },
    /// Exact against asymptotic work along a regime sequence.
    Limits {
        #[command(flatten)]
        physics: Physics,
        /// `high` or `low`.
        #[arg(long)]
        regime: Option<Limit>,
        /// `first` or `second`.
        #[arg(long)]
        order: Option<Order>,
        /// First regime parameter (omega1/Tc for low, omega2/Th for high).
        #[arg(long)]
        from: Option<f64>,
        #[arg(long)]
        to: Option<f64>,
        #[arg(long)]
        steps: Option<usize>,
        #[command(flatten)]
        io: Io,
    },
    /// Maximize the total work over omega2.
    Optimize {
        #[command(flatten)]
        physics: Physics,
        /// Lower end of the omega2 search range (default omega1).
        #[arg(long)]
        lo: Option<f64>,
        /// Upper end of the omega2 search range (default 20 omega2).
        #[arg(long)]
        hi: Option<f64>,
        /// Also maximize this regime's expansion.
        #[arg(long)]
        regime: Option<Limit>,
        #[arg(long)]
        order: Option<Order>,
        #[command(flatten)]
        io: Io,
    },
    /// Run the closed-form against oracle check suite.
    Verify {
        /// Divides every threshold; below 1 loosens.
        #[arg(long)]
        tolerance_scale: Option<f64>,
        #[arg(long, hide = true)]
        inject_sign_error: bool,
        #[command(flatten)]
        io: Io,
    },
}

#[derive(Debug, Args)]
struct Physics {
    /// `tls` or `ho`.
    #[arg(long)]
    medium: Option<Medium>,
    #[arg(long)]
    omega1: Option<f64>,
    #[arg(long)]
    omega2: Option<f64>,
    /// Hot bath temperature.
    #[arg(long)]
    th: Option<f64>,
    /// Cold bath temperature.
    #[arg(long)]
    tc: Option<f64>,
    /// Hot bath squeeze parameter.
    #[arg(long)]
    r: Option<f64>,
    /// Hot bath squeeze phase.
    #[arg(long)]
    phi: Option<f64>,
}

#[derive(Debug, Args)]
struct Range {
    /// fig1 .. fig9; fixes every parameter.
    #[arg(long)]
    preset: Option<Figure>,
    /// `omega_ratio`, `temp_ratio` or `squeeze`.
    #[arg(long)]
    axis: Option<SweepAxis>,
    #[arg(long)]
    from: Option<f64>,
    #[arg(long)]
    to: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
}

#[derive(Debug, Args)]
struct Io {
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// `key = value` file mirroring the long flags.
    #[arg(long)]
    config: Option<PathBuf>,
}

struct Sink {
    format: Format,
    output: Option<PathBuf>,
}

fn resolve_io(io: Io, cfg: &mut Config, meta: &mut Map<String, Value>) -> Result<Sink> {
    let format = cfg.merge(io.format, "format")?.unwrap_or(Format::Text);
    let output = cfg.merge(io.output, "output")?;
    meta.insert("format".into(), format.as_str().into());
    meta.insert(
        "output".into(),
        output
            .as_ref()
            .map_or(Value::Null, |p| p.display().to_string().into()),
    );
    Ok(Sink { format, output })
}

fn resolve_physics(p: Physics, cfg: &mut Config) -> Result<CycleParams> {
    Ok(CycleParams {
        medium: cfg.merge(p.medium, "medium")?.unwrap_or(Medium::TwoLevel),
        omega1: cfg.merge(p.omega1, "omega1")?.unwrap_or(1.0),
        omega2: cfg.merge(p.omega2, "omega2")?.unwrap_or(5.0),
        t_hot: cfg.merge(p.th, "th")?.unwrap_or(2.0),
        t_cold: cfg.merge(p.tc, "tc")?.unwrap_or(1.0),
        squeeze_r: cfg.merge(p.r, "r")?.unwrap_or(0.0),
        squeeze_phi: cfg.merge(p.phi, "phi")?.unwrap_or(0.0),
    })
}

fn resolve_range(
    axis: Option<SweepAxis>,
    from: Option<f64>,
    to: Option<f64>,
    steps: Option<usize>,
    suffix: &str,
    cfg: &mut Config,
) -> Result<Option<(SweepAxis, SweepRange)>> {
    let axis = cfg.merge(axis, &format!("axis{suffix}"))?;
    let from = cfg.merge(from, &format!("from{suffix}"))?;
    let to = cfg.merge(to, &format!("to{suffix}"))?;
    let steps = cfg.merge(steps, &format!("steps{suffix}"))?;
    match (axis, from, to) {
        (None, None, None) if steps.is_none() => Ok(None),
        (Some(a), Some(f), Some(t)) => {
            let steps = steps.unwrap_or(if f == t { 1 } else { 21 });
            Ok(Some((a, SweepRange::new(f, t, steps)?)))
        }
        _ => bail!("--axis{suffix}, --from{suffix} and --to{suffix} must be given together"),
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let mut meta = Map::new();
    let (report, sink, ok) = match cli.command {
        Command::Cycle { physics, io } => {
            let mut cfg = Config::load(io.config.as_deref())?;
            let params = resolve_physics(physics, &mut cfg)?;
            let sink = resolve_io(io, &mut cfg, &mut meta)?;
            cfg.finish()?;
            meta.extend(commands::params_meta(&params));
            (commands::cycle(params, meta)?, sink, true)
        }
        Command::Sweep { physics, range, io } => {
            let mut cfg = Config::load(io.config.as_deref())?;
            let params = resolve_physics(physics, &mut cfg)?;
            let preset = cfg.merge(range.preset, "preset")?;
            let axis = resolve_range(range.axis, range.from, range.to, range.steps, "", &mut cfg)?;
            let sink = resolve_io(io, &mut cfg, &mut meta)?;
            cfg.finish()?;
            let report = match (preset, axis) {
                (Some(f), None) => commands::preset(f, meta, "sweep")?,
                (None, Some((a, r))) => {
                    meta.extend(commands::params_meta(&params));
                    commands::sweep(params, a, r, meta)?
                }
                (Some(_), Some(_)) => bail!("--preset cannot be combined with --axis"),
                (None, None) => bail!("sweep needs --preset or --axis/--from/--to"),
            };
            (report, sink, true)
        }
        Command::Surface {
            physics,
            range,
            axis2,
            from2,
            to2,
            steps2,
            io,
        } => {
            let mut cfg = Config::load(io.config.as_deref())?;
            let params = resolve_physics(physics, &mut cfg)?;
            let preset = cfg.merge(range.preset, "preset")?;
            let first = resolve_range(range.axis, range.from, range.to, range.steps, "", &mut cfg)?;
            let second = resolve_range(axis2, from2, to2, steps2, "2", &mut cfg)?;
            let sink = resolve_io(io, &mut cfg, &mut meta)?;
            cfg.finish()?;
            let report = match (preset, first, second) {
                (Some(f), None, None) => commands::preset(f, meta, "surface")?,
                (None, Some(a), Some(b)) => {
                    meta.extend(commands::params_meta(&params));
                    commands::surface(params, a, b, meta)?
                }
                (Some(_), _, _) => bail!("--preset cannot be combined with axis flags"),
                _ => bail!("surface needs --preset or both --axis.. and --axis2.. ranges"),
            };
            (report, sink, true)
        }
        Command::Limits {
            physics,
            regime,
            order,
            from,
            to,
            steps,
            io,
        } => {
            let mut cfg = Config::load(io.config.as_deref())?;
            let params = resolve_physics(physics, &mut cfg)?;
            let Some(limit) = cfg.merge(regime, "regime")? else {
                bail!("limits needs --regime high|low");
            };
            let order = cfg.merge(order, "order")?.unwrap_or(Order::Second);
            let (d_from, d_to) = match limit {
                Limit::LowT => (5.0, 80.0),
                Limit::HighT => (0.1, 0.01),
            };
            let from = cfg.merge(from, "from")?.unwrap_or(d_from);
            let to = cfg.merge(to, "to")?.unwrap_or(d_to);
            let steps = cfg
                .merge(steps, "steps")?
                .unwrap_or(if from == to { 1 } else { 5 });
            let sink = resolve_io(io, &mut cfg, &mut meta)?;
            cfg.finish()?;
            let ks = commands::geometric(from, to, steps)?;
            meta.extend(commands::params_meta(&params));
            (
                commands::limits(params, limit, order, &ks, meta)?,
                sink,
                true,
            )
        }
        Command::Optimize {
            physics,
            lo,
            hi,
            regime,
            order,
            io,
        } => {
            let mut cfg = Config::load(io.config.as_deref())?;
            let params = resolve_physics(physics, &mut cfg)?;
            let lo = cfg.merge(lo, "lo")?.unwrap_or(params.omega1);
            let hi = cfg.merge(hi, "hi")?.unwrap_or(20.0 * params.omega2);
            let regime = cfg.merge(regime, "regime")?;
            let order = cfg.merge(order, "order")?.unwrap_or(Order::Second);
            let sink = resolve_io(io, &mut cfg, &mut meta)?;
            cfg.finish()?;
            meta.extend(commands::params_meta(&params));
            let expansion = regime.map(|l| (l, order));
            (
                commands::optimize(params, lo, hi, expansion, meta)?,
                sink,
                true,
            )
        }
        Command::Verify {
            tolerance_scale,
            inject_sign_error,
            io,
        } => {
            let mut cfg = Config::load(io.config.as_deref())?;
            let scale = cfg
                .merge(tolerance_scale, "tolerance-scale")?
                .unwrap_or(1.0);
            if !(scale > 0.0 && scale.is_finite()) {
                bail!("--tolerance-scale must be positive and finite");
            }
            if inject_sign_error && !cfg!(debug_assertions) {
                bail!("fault injection is only available in debug builds");
            }
            let sink = resolve_io(io, &mut cfg, &mut meta)?;
            cfg.finish()?;
            let opts = VerifyOptions {
                tolerance_scale: scale,
                inject_sign_error,
            };
            let (report, ok) = commands::verify(opts, meta);
            (report, sink, ok)
        }
    };
    emit(&report, &sink)?;
    Ok(if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn emit(report: &Report, sink: &Sink) -> Result<()> {
    report.emit(sink.format, sink.output.as_deref())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
