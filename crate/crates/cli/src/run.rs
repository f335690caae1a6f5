//! Request execution: maps resolved subcommand parameters onto library
//! operations and assembles output tables. Sweep grid points evaluate
//! concurrently when PSEUDOGAS_THREADS asks for it; assembly is strictly
//! ordered by grid index, so worker count never changes a byte of output.

use pseudogas_core::lattice::{
    build_lattice, canonical_partition_recursion, enumerate_exact, multiplet_scaling_report,
    sample_boltzmann_coincidences, LatticeError, QuantizationConvention, ScalingMethod,
};
use pseudogas_core::model::{reduced_from_physical, GasSpec, ModelError};
use pseudogas_core::numeric::{linspace, logspace};
use pseudogas_core::pseudochem::{
    pair_fraction_at_dp, solve_dimer_fraction, solve_polymer_fraction, MomentumSplit,
    PairSpinContext, PseudochemError,
};
use pseudogas_core::statmech::{
    pressure_first_order, pressure_ratio_exact, solve_fugacity, StatmechError,
};
use pseudogas_core::Statistics;

use crate::table::Table;

pub const EXIT_IO: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NO_CONVERGENCE: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Debug, Clone)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn invalid(message: String) -> Self {
        Self {
            code: EXIT_INVALID,
            message,
        }
    }

    pub fn io(message: String) -> Self {
        Self {
            code: EXIT_IO,
            message,
        }
    }
}

impl From<ModelError> for CliError {
    fn from(err: ModelError) -> Self {
        Self::invalid(err.to_string())
    }
}

impl From<StatmechError> for CliError {
    fn from(err: StatmechError) -> Self {
        let code = match err {
            StatmechError::Domain(_) | StatmechError::OutOfSemiclassicalRange => EXIT_INVALID,
            StatmechError::NoConvergence | StatmechError::QuadratureFailure => EXIT_NO_CONVERGENCE,
        };
        Self {
            code,
            message: err.to_string(),
        }
    }
}

impl From<PseudochemError> for CliError {
    fn from(err: PseudochemError) -> Self {
        let code = match err {
            PseudochemError::NoConvergence => EXIT_NO_CONVERGENCE,
            _ => EXIT_INVALID,
        };
        Self {
            code,
            message: err.to_string(),
        }
    }
}

impl From<LatticeError> for CliError {
    fn from(err: LatticeError) -> Self {
        let code = match err {
            LatticeError::LatticeTooLarge | LatticeError::EnumerationTooLarge => EXIT_BUDGET,
            _ => EXIT_INVALID,
        };
        Self {
            code,
            message: err.to_string(),
        }
    }
}

/// A single-point operation keyed by one dimensionless axis value; the same
/// evaluator backs both the one-shot subcommands and sweep rows.
#[derive(Debug, Clone, Copy)]
pub enum PointOp {
    Fugacity {
        statistics: Statistics,
        with_mu: bool,
    },
    Pressure {
        spin_degeneracy: u32,
        statistics: Statistics,
    },
    Polymer {
        order: u32,
    },
    Spinpair {
        spin_degeneracy: u32,
        statistics: Statistics,
        fraction: f64,
    },
}

impl PointOp {
    pub fn axis_name(self) -> &'static str {
        match self {
            Self::Fugacity { .. } => "eta_sp",
            Self::Pressure { .. } | Self::Polymer { .. } => "eta",
            Self::Spinpair { .. } => "gap",
        }
    }

    pub fn column_names(self) -> Vec<String> {
        match self {
            Self::Fugacity { with_mu, .. } => {
                let mut names = vec!["z".to_string()];
                if with_mu {
                    names.push("mu_over_kbt".to_string());
                }
                names
            }
            Self::Pressure { .. } => vec![
                "pressure_ratio_first_order".to_string(),
                "pressure_ratio_exact".to_string(),
            ],
            Self::Polymer { order } => vec![format!("x_{order}")],
            Self::Spinpair { .. } => vec![
                "g_plus".to_string(),
                "g_minus".to_string(),
                "pair_fraction".to_string(),
            ],
        }
    }

    /// Parameter checks that do not depend on the axis value; run once
    /// before any grid evaluation.
    pub fn validate(self) -> Result<(), CliError> {
        match self {
            Self::Pressure {
                spin_degeneracy, ..
            }
            | Self::Spinpair {
                spin_degeneracy, ..
            } if spin_degeneracy == 0 => Err(CliError::invalid(
                "spin degeneracy must be >= 1".to_string(),
            )),
            _ => Ok(()),
        }
    }

    pub fn evaluate(self, axis_value: f64) -> Result<Vec<f64>, CliError> {
        match self {
            Self::Fugacity {
                statistics,
                with_mu,
            } => {
                let z = solve_fugacity(axis_value, statistics, 1e-14)?.value();
                let mut row = vec![z];
                if with_mu {
                    if z == 0.0 {
                        return Err(CliError::invalid(
                            "chemical potential is undefined at zero fugacity".to_string(),
                        ));
                    }
                    row.push(z.ln());
                }
                Ok(row)
            }
            Self::Pressure {
                spin_degeneracy,
                statistics,
            } => {
                if axis_value < 0.0 {
                    return Err(CliError::invalid("eta must be non-negative".to_string()));
                }
                let first = pressure_first_order(axis_value, spin_degeneracy, statistics);
                let eta_sp = axis_value / spin_degeneracy as f64;
                let z = solve_fugacity(eta_sp, statistics, 1e-14)?.value();
                let exact = pressure_ratio_exact(z, statistics)?;
                Ok(vec![first, exact])
            }
            Self::Polymer { order } => {
                let fraction = if order == 2 {
                    solve_dimer_fraction(axis_value)?.fraction
                } else {
                    solve_polymer_fraction(axis_value, order)?.fraction
                };
                Ok(vec![fraction])
            }
            Self::Spinpair {
                spin_degeneracy,
                statistics,
                fraction,
            } => {
                if axis_value < 0.0 {
                    return Err(CliError::invalid(
                        "momentum gap must be non-negative".to_string(),
                    ));
                }
                let ctx = PairSpinContext::new(spin_degeneracy, statistics);
                let split = MomentumSplit {
                    delta_p: axis_value.sqrt(),
                    beta: 1.0,
                    mass: 1.0,
                };
                let at_gap = pair_fraction_at_dp(fraction, &split, &ctx)?;
                Ok(vec![
                    ctx.symmetric_states as f64,
                    ctx.antisymmetric_states as f64,
                    at_gap,
                ])
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeMethod {
    Recursion,
    Enumerate,
    Sample,
}

#[derive(Debug, Clone)]
pub struct LatticeRequest {
    pub box_length: f64,
    pub mass: f64,
    pub temperature: f64,
    pub n_max: u32,
    pub convention: QuantizationConvention,
    pub particle_count: u32,
    pub statistics: Statistics,
    pub method: LatticeMethod,
    pub trials: u32,
    pub seed: u64,
    pub multiplicity: u32,
    /// (t_from, t_to, points): sweep the temperature instead of one point.
    pub scan: Option<(f64, f64, usize)>,
}

#[derive(Debug, Clone)]
pub enum Request {
    Props(GasSpec),
    Point {
        op: PointOp,
        axis_value: f64,
    },
    Lattice(LatticeRequest),
    Sweep {
        op: PointOp,
        from: f64,
        to: f64,
        points: usize,
        log: bool,
    },
}

pub fn execute(request: Request) -> Result<Table, CliError> {
    match request {
        Request::Props(spec) => run_props(spec),
        Request::Point { op, axis_value } => {
            op.validate()?;
            let row = op.evaluate(axis_value)?;
            let names: Vec<String> = op.column_names();
            let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
            Ok(Table::from_rows(
                op.axis_name(),
                vec![axis_value],
                &name_refs,
                vec![row],
            ))
        }
        Request::Lattice(request) => run_lattice(request),
        Request::Sweep {
            op,
            from,
            to,
            points,
            log,
        } => run_sweep(op, from, to, points, log),
    }
}

fn run_props(spec: GasSpec) -> Result<Table, CliError> {
    let reduced = reduced_from_physical(&spec)?;
    Ok(Table::from_rows(
        "temperature",
        vec![spec.temperature],
        &["eta", "eta_sp", "thermal_wavelength", "single_particle_z"],
        vec![vec![
            reduced.eta,
            reduced.eta_sp,
            reduced.thermal_wavelength,
            reduced.single_particle_z,
        ]],
    ))
}

fn validate_lattice_request(request: &LatticeRequest) -> Result<(), CliError> {
    if request.particle_count == 0 {
        return Err(CliError::invalid("particle count must be >= 1".to_string()));
    }
    match request.method {
        LatticeMethod::Recursion if request.scan.is_none() => {
            if request.particle_count > 12 {
                return Err(CliError::invalid(
                    "the recursion method supports up to 12 particles".to_string(),
                ));
            }
        }
        LatticeMethod::Sample => {
            if request.particle_count < 2 {
                return Err(CliError::invalid(
                    "sampling coincidences needs at least 2 particles".to_string(),
                ));
            }
            if request.trials < 100 {
                return Err(CliError::invalid(
                    "at least 100 trials are required".to_string(),
                ));
            }
        }
        _ => {}
    }
    Ok(())
}

fn run_lattice(request: LatticeRequest) -> Result<Table, CliError> {
    validate_lattice_request(&request)?;
    if let Some((from, to, points)) = request.scan {
        return run_lattice_scan(&request, from, to, points);
    }
    let lattice = build_lattice(
        request.box_length,
        request.mass,
        request.temperature,
        request.n_max,
        request.convention,
    )?;
    let z1 = lattice.single_particle_sum(1.0);
    let eta_effective = lattice.effective_eta(request.particle_count);
    let shared = vec![lattice.mode_count() as f64, z1, eta_effective];
    match request.method {
        LatticeMethod::Sample => {
            if request.statistics != Statistics::Boltzmann {
                return Err(CliError::invalid(
                    "sampling draws independent particles; use --stats boltzmann".to_string(),
                ));
            }
            let stats = sample_boltzmann_coincidences(
                &lattice,
                request.particle_count,
                request.trials,
                request.seed,
            );
            let mut row = shared;
            row.extend([stats.pair_fraction_mean, stats.pair_fraction_stderr]);
            Ok(Table::from_rows(
                "temperature",
                vec![request.temperature],
                &[
                    "mode_count",
                    "z1",
                    "eta_effective",
                    "pair_fraction_mean",
                    "pair_fraction_stderr",
                ],
                vec![row],
            ))
        }
        LatticeMethod::Recursion | LatticeMethod::Enumerate => {
            let result = match request.method {
                LatticeMethod::Recursion => canonical_partition_recursion(
                    &lattice,
                    request.particle_count,
                    request.statistics,
                ),
                _ => enumerate_exact(&lattice, request.particle_count, request.statistics)?,
            };
            let fraction = |j: u32| {
                result
                    .multiplet_fractions
                    .get(&j)
                    .copied()
                    .unwrap_or(0.0)
            };
            let mut row = shared;
            row.extend([result.partition_z, fraction(2), fraction(3)]);
            Ok(Table::from_rows(
                "temperature",
                vec![request.temperature],
                &[
                    "mode_count",
                    "z1",
                    "eta_effective",
                    "z_n",
                    "fraction_2",
                    "fraction_3",
                ],
                vec![row],
            ))
        }
    }
}

fn run_lattice_scan(
    request: &LatticeRequest,
    from: f64,
    to: f64,
    points: usize,
) -> Result<Table, CliError> {
    if !(from > 0.0 && to > 0.0) {
        return Err(CliError::invalid(
            "temperature scan endpoints must be positive".to_string(),
        ));
    }
    let temperatures = logspace(from, to, points);
    let mut lattices = Vec::with_capacity(points);
    for &t in &temperatures {
        lattices.push(build_lattice(
            request.box_length,
            request.mass,
            t,
            request.n_max,
            request.convention,
        )?);
    }
    let method = match request.method {
        LatticeMethod::Enumerate => ScalingMethod::Exact,
        LatticeMethod::Sample => ScalingMethod::Sampled {
            trials: request.trials,
            seed: request.seed,
        },
        LatticeMethod::Recursion => {
            return Err(CliError::invalid(
                "temperature scans support --method enumerate or sample".to_string(),
            ))
        }
    };
    let report = multiplet_scaling_report(
        &lattices,
        request.particle_count,
        request.statistics,
        request.multiplicity,
        method,
    )?;
    let fraction_name = format!("fraction_{}", request.multiplicity);
    let sampled = matches!(method, ScalingMethod::Sampled { .. });
    let mut names = vec!["eta_effective", fraction_name.as_str()];
    if sampled {
        names.push("stderr");
    }
    let rows = report
        .iter()
        .map(|point| {
            let mut row = vec![point.eta_effective, point.fraction];
            if sampled {
                row.push(point.stderr.unwrap_or(0.0));
            }
            row
        })
        .collect();
    Ok(Table::from_rows("temperature", temperatures, &names, rows))
}

fn worker_count() -> usize {
    std::env::var("PSEUDOGAS_THREADS")
        .ok()
        .and_then(|raw| raw.parse::<usize>().ok())
        .map(|n| n.clamp(1, 64))
        .unwrap_or(1)
}

fn run_sweep(op: PointOp, from: f64, to: f64, points: usize, log: bool) -> Result<Table, CliError> {
    if log && !(from > 0.0 && to > 0.0) {
        return Err(CliError::invalid(
            "log-spaced sweeps need positive endpoints".to_string(),
        ));
    }
    let axis = if log {
        logspace(from, to, points)
    } else {
        linspace(from, to, points)
    };

    let workers = worker_count().min(axis.len().max(1));
    let mut outcomes: Vec<Option<Result<Vec<f64>, CliError>>> = vec![None; axis.len()];
    if workers <= 1 {
        for (index, &value) in axis.iter().enumerate() {
            outcomes[index] = Some(op.evaluate(value));
        }
    } else {
        // Round-robin partition; results land by grid index, so the split
        // cannot affect output order or content.
        let partial: Vec<Vec<(usize, Result<Vec<f64>, CliError>)>> =
            std::thread::scope(|scope| {
                let axis = &axis;
                let handles: Vec<_> = (0..workers)
                    .map(|worker| {
                        scope.spawn(move || {
                            axis.iter()
                                .enumerate()
                                .skip(worker)
                                .step_by(workers)
                                .map(|(index, &value)| (index, op.evaluate(value)))
                                .collect()
                        })
                    })
                    .collect();
                handles.into_iter().map(|h| h.join().unwrap()).collect()
            });
        for chunk in partial {
            for (index, outcome) in chunk {
                outcomes[index] = Some(outcome);
            }
        }
    }

    let mut rows = Vec::with_capacity(axis.len());
    for outcome in outcomes {
        rows.push(outcome.expect("every grid index evaluated")?);
    }
    let names: Vec<String> = op.column_names();
    let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
    Ok(Table::from_rows(op.axis_name(), axis, &name_refs, rows))
}
