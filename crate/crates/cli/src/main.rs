//! `pseudogas` — command-line front end for the semi-classical quantum gas
//! toolkit. Parses flags and an optional flat config file, dispatches to the
//! library, and emits deterministic CSV or JSON tables.

mod config;
mod run;
mod table;

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use pseudogas_core::lattice::QuantizationConvention;
use pseudogas_core::model::GasSpec;
use pseudogas_core::Statistics;

use config::ConfigMap;
use run::{CliError, LatticeMethod, LatticeRequest, PointOp, Request};
use table::OutputFormat;

#[derive(Parser)]
#[command(
    name = "pseudogas",
    version,
    about = "Semi-classical quantum gas toolkit: degeneracy parameter, fugacity, \
             pressure corrections, momentum-multiplet fractions, lattice oracles"
)]
struct Cli {
    /// Flat `key = value` config file; command-line flags override it
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Write the table to a file instead of standard output
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Output format: csv or json [default: csv]
    #[arg(long, global = true)]
    format: Option<String>,
    /// Significant digits in numeric output [default: 12]
    #[arg(long, global = true)]
    precision: Option<usize>,
    /// Seed for sampled computations [default: 0]
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reduced dimensionless state of a physical gas (SI inputs)
    Props(PropsArgs),
    /// Fugacity solving the occupancy equation at a given eta_sp
    Fugacity(FugacityArgs),
    /// First-order and exact pressure ratios at a given eta
    Pressure(PressureArgs),
    /// Equilibrium momentum-multiplet fraction x_j at a given eta
    Polymer(PolymerArgs),
    /// Spin-resolved pair concentration at a reduced momentum gap
    Spinpair(SpinpairArgs),
    /// Exact canonical statistics on a finite momentum lattice
    Lattice(LatticeArgs),
    /// Evaluate one operation over a parameter grid
    Sweep(SweepArgs),
}

#[derive(Args)]
struct PropsArgs {
    /// Particle number (continuous)
    #[arg(long)]
    n: Option<f64>,
    /// Volume, m³
    #[arg(long)]
    v: Option<f64>,
    /// Temperature, K
    #[arg(long)]
    t: Option<f64>,
    /// Particle mass, kg
    #[arg(long)]
    m: Option<f64>,
    /// Twice the spin quantum number [default: 0]
    #[arg(long)]
    spin_two: Option<u32>,
    /// bose, fermi or boltzmann
    #[arg(long)]
    stats: Option<String>,
}

#[derive(Args)]
struct FugacityArgs {
    /// Per-spin-state occupancy demand
    #[arg(long)]
    eta_sp: Option<f64>,
    /// bose, fermi or boltzmann
    #[arg(long)]
    stats: Option<String>,
    /// Also report mu/(kB T) = ln z
    #[arg(long)]
    with_mu: bool,
}

#[derive(Args)]
struct PressureArgs {
    /// Degeneracy control parameter
    #[arg(long)]
    eta: Option<f64>,
    /// Spin degeneracy g = 2s + 1
    #[arg(long)]
    ga: Option<u32>,
    /// bose, fermi or boltzmann
    #[arg(long)]
    stats: Option<String>,
}

#[derive(Args)]
struct PolymerArgs {
    /// Degeneracy control parameter
    #[arg(long)]
    eta: Option<f64>,
    /// Multiplet order j >= 2
    #[arg(long)]
    j: Option<u32>,
}

#[derive(Args)]
struct SpinpairArgs {
    /// Spin degeneracy g = 2s + 1
    #[arg(long)]
    ga: Option<u32>,
    /// bose, fermi or boltzmann
    #[arg(long)]
    stats: Option<String>,
    /// Zero-gap pair fraction x2
    #[arg(long)]
    x2: Option<f64>,
    /// Reduced momentum gap beta*dp^2/m [default: 0]
    #[arg(long)]
    gap: Option<f64>,
}

#[derive(Args)]
struct LatticeArgs {
    /// Box edge length, m
    #[arg(long)]
    box_l: Option<f64>,
    /// Particle mass, kg
    #[arg(long)]
    mass: Option<f64>,
    /// Temperature, K
    #[arg(long)]
    t: Option<f64>,
    /// Modes per axis run over [-n-max, n-max]
    #[arg(long)]
    n_max: Option<u32>,
    /// Momentum quantization: h or hbar [default: h]
    #[arg(long)]
    convention: Option<String>,
    /// Particle count
    #[arg(long)]
    n: Option<u32>,
    /// bose, fermi or boltzmann
    #[arg(long)]
    stats: Option<String>,
    /// recursion, enumerate or sample [default: recursion]
    #[arg(long)]
    method: Option<String>,
    /// Monte Carlo trials for --method sample [default: 10000]
    #[arg(long)]
    trials: Option<u32>,
    /// Multiplet order reported by temperature scans [default: 2]
    #[arg(long)]
    j: Option<u32>,
    /// Scan start temperature, K (with --t-to and --t-points)
    #[arg(long)]
    t_from: Option<f64>,
    /// Scan end temperature, K
    #[arg(long)]
    t_to: Option<f64>,
    /// Scan point count
    #[arg(long)]
    t_points: Option<usize>,
}

#[derive(Args)]
struct SweepArgs {
    /// Operation to sweep: polymer, fugacity, pressure or spinpair
    #[arg(long)]
    op: Option<String>,
    /// Axis to sweep; must be the operation's own axis
    #[arg(long)]
    axis: Option<String>,
    /// Grid start
    #[arg(long)]
    from: Option<f64>,
    /// Grid end
    #[arg(long)]
    to: Option<f64>,
    /// Grid point count
    #[arg(long)]
    points: Option<usize>,
    /// Log-spaced grid instead of linear
    #[arg(long)]
    log: bool,
    /// Multiplet order (polymer)
    #[arg(long)]
    j: Option<u32>,
    /// Spin degeneracy (pressure, spinpair)
    #[arg(long)]
    ga: Option<u32>,
    /// bose, fermi or boltzmann (fugacity, pressure, spinpair)
    #[arg(long)]
    stats: Option<String>,
    /// Zero-gap pair fraction (spinpair)
    #[arg(long)]
    x2: Option<f64>,
    /// Also report mu/(kB T) (fugacity)
    #[arg(long)]
    with_mu: bool,
}

struct Resolved {
    request: Request,
    format: OutputFormat,
    precision: usize,
    out: Option<PathBuf>,
}

fn required<T>(slot: Option<T>, key: &str) -> Result<T, CliError> {
    slot.ok_or_else(|| {
        CliError::invalid(format!(
            "missing required parameter --{key} (or config key `{key}`)"
        ))
    })
}

fn parse_statistics(raw: &str) -> Result<Statistics, CliError> {
    match raw.to_ascii_lowercase().as_str() {
        "bose" => Ok(Statistics::Bose),
        "fermi" => Ok(Statistics::Fermi),
        "boltzmann" => Ok(Statistics::Boltzmann),
        other => Err(CliError::invalid(format!(
            "unknown statistics `{other}` (expected bose, fermi or boltzmann)"
        ))),
    }
}

fn parse_convention(raw: &str) -> Result<QuantizationConvention, CliError> {
    match raw.to_ascii_lowercase().as_str() {
        "h" | "h_over_l" => Ok(QuantizationConvention::HOverL),
        "hbar" | "hbar_over_l" => Ok(QuantizationConvention::HbarOverL),
        other => Err(CliError::invalid(format!(
            "unknown convention `{other}` (expected h or hbar)"
        ))),
    }
}

fn parse_method(raw: &str) -> Result<LatticeMethod, CliError> {
    match raw.to_ascii_lowercase().as_str() {
        "recursion" => Ok(LatticeMethod::Recursion),
        "enumerate" => Ok(LatticeMethod::Enumerate),
        "sample" => Ok(LatticeMethod::Sample),
        other => Err(CliError::invalid(format!(
            "unknown method `{other}` (expected recursion, enumerate or sample)"
        ))),
    }
}

fn resolve(cli: Cli) -> Result<Resolved, CliError> {
    let mut config = match &cli.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|err| {
                CliError::invalid(format!("cannot read config {}: {err}", path.display()))
            })?;
            ConfigMap::parse(&text)?
        }
        None => ConfigMap::default(),
    };

    let mut format_raw = cli.format;
    config.fill("format", &mut format_raw)?;
    let format = match format_raw {
        Some(raw) => raw
            .parse::<OutputFormat>()
            .map_err(CliError::invalid)?,
        None => OutputFormat::Csv,
    };

    let mut precision = cli.precision;
    config.fill("precision", &mut precision)?;
    let precision = precision.unwrap_or(12);

    let mut seed = cli.seed;
    config.fill("seed", &mut seed)?;
    let seed = seed.unwrap_or(0);

    let mut out = cli.out;
    config.fill("out", &mut out)?;

    let request = match cli.command {
        Command::Props(mut args) => {
            config.fill("n", &mut args.n)?;
            config.fill("v", &mut args.v)?;
            config.fill("t", &mut args.t)?;
            config.fill("m", &mut args.m)?;
            config.fill("spin-two", &mut args.spin_two)?;
            config.fill("stats", &mut args.stats)?;
            Request::Props(GasSpec {
                count: required(args.n, "n")?,
                volume: required(args.v, "v")?,
                temperature: required(args.t, "t")?,
                mass: required(args.m, "m")?,
                spin_two_s: args.spin_two.unwrap_or(0),
                statistics: parse_statistics(&required(args.stats, "stats")?)?,
            })
        }
        Command::Fugacity(mut args) => {
            config.fill("eta-sp", &mut args.eta_sp)?;
            config.fill("stats", &mut args.stats)?;
            config.fill_flag("with-mu", &mut args.with_mu)?;
            Request::Point {
                op: PointOp::Fugacity {
                    statistics: parse_statistics(&required(args.stats, "stats")?)?,
                    with_mu: args.with_mu,
                },
                axis_value: required(args.eta_sp, "eta-sp")?,
            }
        }
        Command::Pressure(mut args) => {
            config.fill("eta", &mut args.eta)?;
            config.fill("ga", &mut args.ga)?;
            config.fill("stats", &mut args.stats)?;
            Request::Point {
                op: PointOp::Pressure {
                    spin_degeneracy: required(args.ga, "ga")?,
                    statistics: parse_statistics(&required(args.stats, "stats")?)?,
                },
                axis_value: required(args.eta, "eta")?,
            }
        }
        Command::Polymer(mut args) => {
            config.fill("eta", &mut args.eta)?;
            config.fill("j", &mut args.j)?;
            Request::Point {
                op: PointOp::Polymer {
                    order: required(args.j, "j")?,
                },
                axis_value: required(args.eta, "eta")?,
            }
        }
        Command::Spinpair(mut args) => {
            config.fill("ga", &mut args.ga)?;
            config.fill("stats", &mut args.stats)?;
            config.fill("x2", &mut args.x2)?;
            config.fill("gap", &mut args.gap)?;
            Request::Point {
                op: PointOp::Spinpair {
                    spin_degeneracy: required(args.ga, "ga")?,
                    statistics: parse_statistics(&required(args.stats, "stats")?)?,
                    fraction: required(args.x2, "x2")?,
                },
                axis_value: args.gap.unwrap_or(0.0),
            }
        }
        Command::Lattice(mut args) => {
            config.fill("box-l", &mut args.box_l)?;
            config.fill("mass", &mut args.mass)?;
            config.fill("t", &mut args.t)?;
            config.fill("n-max", &mut args.n_max)?;
            config.fill("convention", &mut args.convention)?;
            config.fill("n", &mut args.n)?;
            config.fill("stats", &mut args.stats)?;
            config.fill("method", &mut args.method)?;
            config.fill("trials", &mut args.trials)?;
            config.fill("j", &mut args.j)?;
            config.fill("t-from", &mut args.t_from)?;
            config.fill("t-to", &mut args.t_to)?;
            config.fill("t-points", &mut args.t_points)?;
            let scan = match (args.t_from, args.t_to, args.t_points) {
                (None, None, None) => None,
                (Some(from), Some(to), Some(points)) => Some((from, to, points)),
                _ => {
                    return Err(CliError::invalid(
                        "temperature scans need all of --t-from, --t-to, --t-points".to_string(),
                    ))
                }
            };
            Request::Lattice(LatticeRequest {
                box_length: required(args.box_l, "box-l")?,
                mass: required(args.mass, "mass")?,
                temperature: match scan {
                    // the scan provides its own temperatures
                    Some(_) => args.t.unwrap_or(1.0),
                    None => required(args.t, "t")?,
                },
                n_max: required(args.n_max, "n-max")?,
                convention: parse_convention(args.convention.as_deref().unwrap_or("h"))?,
                particle_count: required(args.n, "n")?,
                statistics: parse_statistics(&required(args.stats, "stats")?)?,
                method: parse_method(args.method.as_deref().unwrap_or("recursion"))?,
                trials: args.trials.unwrap_or(10_000),
                seed,
                multiplicity: args.j.unwrap_or(2),
                scan,
            })
        }
        Command::Sweep(mut args) => {
            config.fill("op", &mut args.op)?;
            config.fill("axis", &mut args.axis)?;
            config.fill("from", &mut args.from)?;
            config.fill("to", &mut args.to)?;
            config.fill("points", &mut args.points)?;
            config.fill_flag("log", &mut args.log)?;
            config.fill("j", &mut args.j)?;
            config.fill("ga", &mut args.ga)?;
            config.fill("stats", &mut args.stats)?;
            config.fill("x2", &mut args.x2)?;
            config.fill_flag("with-mu", &mut args.with_mu)?;

            let op_name = required(args.op, "op")?.to_ascii_lowercase();
            let op = match op_name.as_str() {
                "fugacity" => PointOp::Fugacity {
                    statistics: parse_statistics(&required(args.stats, "stats")?)?,
                    with_mu: args.with_mu,
                },
                "pressure" => PointOp::Pressure {
                    spin_degeneracy: required(args.ga, "ga")?,
                    statistics: parse_statistics(&required(args.stats, "stats")?)?,
                },
                "polymer" => PointOp::Polymer {
                    order: required(args.j, "j")?,
                },
                "spinpair" => PointOp::Spinpair {
                    spin_degeneracy: required(args.ga, "ga")?,
                    statistics: parse_statistics(&required(args.stats, "stats")?)?,
                    fraction: required(args.x2, "x2")?,
                },
                other => {
                    return Err(CliError::invalid(format!(
                        "unknown sweep op `{other}` (expected polymer, fugacity, pressure or spinpair)"
                    )))
                }
            };
            let axis = required(args.axis, "axis")?;
            let expected = op.axis_name();
            if axis.replace('-', "_") != expected {
                return Err(CliError::invalid(format!(
                    "op `{op_name}` sweeps axis `{expected}`, not `{axis}`"
                )));
            }
            Request::Sweep {
                op,
                from: required(args.from, "from")?,
                to: required(args.to, "to")?,
                points: required(args.points, "points")?,
                log: args.log,
            }
        }
    };

    config.reject_leftovers()?;
    Ok(Resolved {
        request,
        format,
        precision,
        out,
    })
}

fn run_cli(cli: Cli) -> Result<(), CliError> {
    let resolved = resolve(cli)?;
    let table = run::execute(resolved.request)?;
    let text = table.render(resolved.format, resolved.precision)?;
    match resolved.out {
        Some(path) => fs::write(&path, text)
            .map_err(|err| CliError::io(format!("cannot write {}: {err}", path.display())))?,
        None => {
            let stdout = std::io::stdout();
            let mut handle = stdout.lock();
            handle
                .write_all(text.as_bytes())
                .and_then(|_| handle.flush())
                .map_err(|err| CliError::io(format!("cannot write to stdout: {err}")))?;
        }
    }
    Ok(())
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run_cli(cli) {
        eprintln!("error: {}", err.message);
        std::process::exit(err.code);
    }
}
