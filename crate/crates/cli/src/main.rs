//! Reproducible verification reports and convergence tables for the radial
//! power-law duality.
//!
//! Exit codes: 0 all checks pass, 1 a verification check failed, 2 usage or
//! domain error. Data rows go to stdout (CSV by default, `--format json`
//! for JSON lines); diagnostics and timings go to stderr.

mod report;

use clap::{Args, Parser, Subcommand, ValueEnum};
use radial_duality::limits::{analyze_sequence, ratio_hydrogen, ratio_oscillator, symmetric_ratio};
use radial_duality::model::{dual_problem, PhysicalConstants, RadialProblem};
use radial_duality::spectral::{solve_radial, SolverConfig};
use radial_duality::variational::{
    hydrogen_exact_energy, oscillator_alpha_star, oscillator_exact_energy,
    oscillator_mean_energy, oscillator_variational_min, quadrature_mean_energy_with_tol,
    TrialFunction, QUADRATURE_REL_TOL,
};
use radial_duality::verify;
use radial_duality::{gamma, minimize};
use report::{fmt_float, Cell, OutputFormat, RunReport};
use std::f64::consts::FRAC_PI_2;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "radial-duality",
    version,
    about = "Power-law duality of the radial Schrödinger equation: dictionary, ratio tables, variational estimates, spectra and verification suites"
)]
struct Cli {
    /// Output format for data rows on stdout.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply the duality dictionary to one problem at a given energy.
    Map(MapArgs),
    /// Tabulate a ratio or product sequence with convergence diagnostics.
    Ratio(RatioArgs),
    /// Variational minimum vs. quadrature and exact ground energy.
    Variational(VariationalArgs),
    /// Numerical bound-state spectrum against the closed-form levels.
    Spectrum(SpectrumArgs),
    /// Run a verification suite; exit code 0 iff every check passes.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct MapArgs {
    /// Spatial dimension d of the source problem.
    #[arg(long)]
    d: u32,
    /// Angular momentum l of the source problem.
    #[arg(long)]
    l: f64,
    /// Potential exponent β of V(r) = K r^β.
    #[arg(long, allow_hyphen_values = true)]
    beta: f64,
    /// Potential coupling K.
    #[arg(long = "K", allow_hyphen_values = true)]
    coupling: f64,
    /// Bound-state energy E fed through the dictionary.
    #[arg(long = "E", allow_hyphen_values = true)]
    energy: f64,
    /// Unit system label; values are never rescaled.
    #[arg(long, default_value = "atomic")]
    units: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RatioSystem {
    Hydrogen,
    Oscillator,
    Symmetric,
    Wallis,
}

#[derive(Args)]
struct RatioArgs {
    /// Which sequence to tabulate.
    #[arg(long, value_enum)]
    system: RatioSystem,
    /// Comma-separated index list, e.g. `--n 1,2,3`.
    #[arg(long, value_delimiter = ',')]
    n: Option<Vec<u64>>,
    /// Doubling index range, e.g. `--range 2^4..2^20` or `16..1048576`.
    #[arg(long)]
    range: Option<String>,
    /// Source angular momentum (symmetric system only).
    #[arg(long)]
    l: Option<u64>,
    /// Dimension offset k = (D-2)/2 (symmetric system only).
    #[arg(long)]
    k: Option<u64>,
    /// Spatial dimension for the hydrogen ratio.
    #[arg(long, default_value_t = 3)]
    d: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariationalSystem {
    Hydrogen,
    Oscillator,
}

#[derive(Args)]
struct VariationalArgs {
    #[arg(long, value_enum)]
    system: VariationalSystem,
    /// Angular momentum l (hydrogen).
    #[arg(long)]
    l: Option<u32>,
    /// Dual angular momentum L (oscillator).
    #[arg(long = "L")]
    l_dual: Option<u32>,
    /// Spatial dimension (hydrogen).
    #[arg(long, default_value_t = 3)]
    d: u32,
    /// Oscillator frequency ω.
    #[arg(long, default_value_t = 1.0)]
    omega: f64,
    /// Relative quadrature tolerance for the cross-check column.
    #[arg(long, default_value_t = QUADRATURE_REL_TOL)]
    precision: f64,
}

#[derive(Args)]
struct SpectrumArgs {
    #[arg(long, value_enum)]
    system: VariationalSystem,
    /// Angular momentum l (hydrogen).
    #[arg(long)]
    l: Option<u32>,
    /// Dual angular momentum L (oscillator).
    #[arg(long = "L")]
    l_dual: Option<u32>,
    /// Spatial dimension (hydrogen).
    #[arg(long, default_value_t = 3)]
    d: u32,
    /// Oscillator frequency ω.
    #[arg(long, default_value_t = 1.0)]
    omega: f64,
    /// Number of levels to resolve.
    #[arg(long, default_value_t = 3)]
    levels: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Identities,
    Spectra,
    Duality,
    All,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    suite: Suite,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    let outcome = match cli.command {
        Command::Map(args) => cmd_map(args, format),
        Command::Ratio(args) => cmd_ratio(args, format),
        Command::Variational(args) => cmd_variational(args, format),
        Command::Spectrum(args) => cmd_spectrum(args, format),
        Command::Verify(args) => cmd_verify(args, format),
    };
    match outcome {
        Ok(all_passed) => {
            if all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn cmd_map(args: MapArgs, format: OutputFormat) -> Result<bool, radial_duality::Error> {
    let potential = radial_duality::PowerLawPotential::new(args.coupling, args.beta)?;
    let prob = RadialProblem::new(args.d, args.l, potential, PhysicalConstants::ATOMIC)?;
    let dual = dual_problem(&prob, args.energy)?;

    let mut rep = RunReport::new(
        "map",
        vec![
            "D",
            "L",
            "dual_energy",
            "dual_coupling",
            "dual_exponent",
            "coord_exponent",
            "physical",
        ],
    );
    rep.param("d", args.d);
    rep.param("l", args.l);
    rep.param("beta", args.beta);
    rep.param("K", args.coupling);
    rep.param("E", args.energy);
    rep.param("units", &args.units);
    rep.push(vec![
        Cell::Float(dual.dual_dim),
        Cell::Float(dual.dual_ang_momentum),
        Cell::Float(dual.dual_energy),
        Cell::Float(dual.dual_potential.coupling()),
        Cell::Float(dual.dual_potential.exponent()),
        Cell::Float(dual.coord_exponent),
        Cell::Bool(dual.is_physical()),
    ]);
    rep.emit(format);
    Ok(true)
}

/// `2^a..2^b` or `a..b`: doubling indices from the start up to the end.
fn parse_range(spec: &str) -> Result<Vec<u64>, radial_duality::Error> {
    let bad = |s: &str| radial_duality::Error::Domain(format!("cannot parse range '{s}'"));
    let (lo, hi) = spec.split_once("..").ok_or_else(|| bad(spec))?;
    let parse_one = |s: &str| -> Result<u64, radial_duality::Error> {
        let s = s.trim();
        if let Some(exp) = s.strip_prefix("2^") {
            let e: u32 = exp.parse().map_err(|_| bad(spec))?;
            if e >= 63 {
                return Err(bad(spec));
            }
            Ok(1u64 << e)
        } else {
            s.parse().map_err(|_| bad(spec))
        }
    };
    let lo = parse_one(lo)?;
    let hi = parse_one(hi)?;
    if lo == 0 || hi < lo {
        return Err(bad(spec));
    }
    let mut out = Vec::new();
    let mut v = lo;
    while v <= hi {
        out.push(v);
        if v > hi / 2 {
            break;
        }
        v *= 2;
    }
    Ok(out)
}

fn cmd_ratio(args: RatioArgs, format: OutputFormat) -> Result<bool, radial_duality::Error> {
    let mut rep = RunReport::new(
        "ratio",
        match args.system {
            RatioSystem::Hydrogen => vec![
                "index",
                "value",
                "gap_to_limit",
                "extrapolated_limit",
                "bridge_deviation",
            ],
            _ => vec!["index", "value", "gap_to_limit", "extrapolated_limit"],
        },
    );
    rep.param("system", format!("{:?}", args.system).to_lowercase());

    if args.system == RatioSystem::Symmetric {
        let (l, k) = match (args.l, args.k) {
            (Some(l), Some(k)) => (l, k),
            _ => {
                return Err(radial_duality::Error::Domain(
                    "system=symmetric requires --l and --k".into(),
                ))
            }
        };
        if l > u32::MAX as u64 || k > u32::MAX as u64 {
            return Err(radial_duality::Error::Domain(
                "--l and --k must fit in 32 bits".into(),
            ));
        }
        rep.param("l", l);
        rep.param("k", k);
        let value = symmetric_ratio(l as u32, k as u32)?;
        rep.push(vec![
            Cell::Int((l + k) as i64),
            Cell::Float(value),
            Cell::Float(value - 1.0),
            Cell::Empty,
        ]);
        rep.emit(format);
        return Ok(true);
    }

    let indices: Vec<u64> = match (&args.n, &args.range) {
        (Some(list), None) => list.clone(),
        (None, Some(spec)) => parse_range(spec)?,
        _ => {
            return Err(radial_duality::Error::Domain(
                "provide exactly one of --n or --range".into(),
            ))
        }
    };
    if indices.is_empty() || indices.windows(2).any(|w| w[0] >= w[1]) {
        return Err(radial_duality::Error::Domain(
            "indices must be non-empty and strictly increasing".into(),
        ));
    }
    if *indices.last().unwrap() > u32::MAX as u64 {
        return Err(radial_duality::Error::Domain(format!(
            "indices must fit in 32 bits, got {}",
            indices.last().unwrap()
        )));
    }
    if args.system == RatioSystem::Wallis && indices[0] == 0 {
        return Err(radial_duality::Error::Domain(
            "wallis partial products start at n = 1".into(),
        ));
    }
    rep.param(
        "indices",
        indices
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(","),
    );
    if args.system == RatioSystem::Hydrogen {
        rep.param("d", args.d);
    }

    let eval: Box<dyn Fn(u64) -> f64> = match args.system {
        RatioSystem::Hydrogen => {
            let d = args.d;
            ratio_hydrogen(0, d)?; // surface the domain error before tabulating
            Box::new(move |n| ratio_hydrogen(n as u32, d).expect("d checked above"))
        }
        RatioSystem::Oscillator => Box::new(|n| ratio_oscillator(n as u32)),
        RatioSystem::Wallis => Box::new(|n| gamma::wallis_partial(n as u32)),
        RatioSystem::Symmetric => unreachable!("handled above"),
    };
    let limit = match args.system {
        RatioSystem::Wallis => FRAC_PI_2,
        _ => 1.0,
    };
    let extrapolated = if indices.len() >= 4 {
        Some(analyze_sequence(&eval, &indices)?.limit_estimate)
    } else {
        None
    };

    for &n in &indices {
        let value = eval(n);
        let mut row = vec![
            Cell::Int(n as i64),
            Cell::Float(value),
            Cell::Float(value - limit),
            extrapolated.map_or(Cell::Empty, Cell::Float),
        ];
        if args.system == RatioSystem::Hydrogen {
            // Finite-n bridge: ratio(n, 3) = (2/π) P_{n+1}; only d = 3 has it.
            if args.d == 3 {
                let bridge = 2.0 / std::f64::consts::PI * gamma::wallis_partial(n as u32 + 1);
                row.push(Cell::Float(((value - bridge) / bridge).abs()));
            } else {
                row.push(Cell::Empty);
            }
        }
        rep.push(row);
    }
    rep.emit(format);
    Ok(true)
}

fn cmd_variational(args: VariationalArgs, format: OutputFormat) -> Result<bool, radial_duality::Error> {
    let c = PhysicalConstants::ATOMIC;
    let mut rep = RunReport::new(
        "variational",
        vec![
            "system",
            "index",
            "dim",
            "exact_energy",
            "closed_min_energy",
            "ratio",
            "quadrature_energy",
            "quadrature_rel_dev",
            "scale_closed",
            "scale_numeric",
            "scale_rel_dev",
        ],
    );
    match args.system {
        VariationalSystem::Hydrogen => {
            let l = args.l.ok_or_else(|| {
                radial_duality::Error::Domain("system=hydrogen requires --l".into())
            })?;
            rep.param("l", l);
            rep.param("d", args.d);
            rep.param("precision", fmt_float(args.precision));
            let r = radial_duality::variational::hydrogen_variational_min(l, args.d, &c)?;
            let trial = TrialFunction::gaussian(r.optimal_scale, l)?;
            let prob = RadialProblem::hydrogen(args.d, l as f64, c)?;
            let quad_val = quadrature_mean_energy_with_tol(&trial, &prob, args.precision)?;
            rep.push(vec![
                Cell::Str("hydrogen".into()),
                Cell::Int(l as i64),
                Cell::Int(args.d as i64),
                Cell::Float(r.exact_ground_energy),
                Cell::Float(r.min_mean_energy),
                Cell::Float(r.ratio),
                Cell::Float(quad_val),
                Cell::Float(((quad_val - r.min_mean_energy) / r.min_mean_energy).abs()),
                Cell::Empty,
                Cell::Float(r.optimal_scale),
                Cell::Empty,
            ]);
        }
        VariationalSystem::Oscillator => {
            let l_dual = args.l_dual.ok_or_else(|| {
                radial_duality::Error::Domain("system=oscillator requires --L".into())
            })?;
            rep.param("L", l_dual);
            rep.param("omega", fmt_float(args.omega));
            rep.param("precision", fmt_float(args.precision));
            let r = oscillator_variational_min(l_dual, args.omega, &c)?;
            let coupling = c.mass() * args.omega * args.omega / 2.0;
            let trial = TrialFunction::quartic(r.optimal_scale, l_dual)?;
            let prob = RadialProblem::oscillator_d4(l_dual as f64, args.omega, c)?;
            let quad_val = quadrature_mean_energy_with_tol(&trial, &prob, args.precision)?;
            let a_star = oscillator_alpha_star(l_dual, coupling, &c)?;
            let (a_num, _) = minimize::golden_section(
                |a| oscillator_mean_energy(a, l_dual, coupling, &c).expect("bracket is positive"),
                a_star / 10.0,
                a_star * 10.0,
                1e-12,
                200,
            );
            rep.push(vec![
                Cell::Str("oscillator".into()),
                Cell::Int(l_dual as i64),
                Cell::Int(4),
                Cell::Float(r.exact_ground_energy),
                Cell::Float(r.min_mean_energy),
                Cell::Float(r.ratio),
                Cell::Float(quad_val),
                Cell::Float(((quad_val - r.min_mean_energy) / r.min_mean_energy).abs()),
                Cell::Float(a_star),
                Cell::Float(a_num),
                Cell::Float(((a_num - a_star) / a_star).abs()),
            ]);
        }
    }
    rep.emit(format);
    Ok(true)
}

fn cmd_spectrum(args: SpectrumArgs, format: OutputFormat) -> Result<bool, radial_duality::Error> {
    let c = PhysicalConstants::ATOMIC;
    let mut rep = RunReport::new(
        "spectrum",
        vec![
            "level",
            "energy",
            "exact_energy",
            "relative_error",
            "nodes",
        ],
    );
    let (prob, exact): (RadialProblem, Box<dyn Fn(u32) -> f64>) = match args.system {
        VariationalSystem::Hydrogen => {
            let l = args.l.ok_or_else(|| {
                radial_duality::Error::Domain("system=hydrogen requires --l".into())
            })?;
            rep.param("system", "hydrogen");
            rep.param("l", l);
            rep.param("d", args.d);
            let prob = RadialProblem::hydrogen(args.d, l as f64, c)?;
            let d = args.d;
            (
                prob,
                Box::new(move |n| hydrogen_exact_energy(n, l, d, &c).expect("validated")),
            )
        }
        VariationalSystem::Oscillator => {
            let l_dual = args.l_dual.ok_or_else(|| {
                radial_duality::Error::Domain("system=oscillator requires --L".into())
            })?;
            rep.param("system", "oscillator");
            rep.param("L", l_dual);
            rep.param("omega", fmt_float(args.omega));
            let omega = args.omega;
            let prob = RadialProblem::oscillator_d4(l_dual as f64, omega, c)?;
            (
                prob,
                Box::new(move |n| {
                    oscillator_exact_energy(2 * n, l_dual, omega, &c).expect("even index")
                }),
            )
        }
    };
    rep.param("levels", args.levels);
    // Domain checks for the exact-formula closures.
    if args.system == VariationalSystem::Hydrogen {
        hydrogen_exact_energy(0, args.l.unwrap_or(0), args.d, &c)?;
    } else {
        oscillator_exact_energy(0, args.l_dual.unwrap_or(0), args.omega, &c)?;
    }
    let cfg = SolverConfig::for_problem(&prob, args.levels)?;
    let states = solve_radial(&prob, &cfg)?;
    for (n, s) in states.iter().enumerate() {
        let want = exact(n as u32);
        rep.push(vec![
            Cell::Int(n as i64),
            Cell::Float(s.energy()),
            Cell::Float(want),
            Cell::Float(((s.energy() - want) / want).abs()),
            Cell::Int(s.node_count() as i64),
        ]);
    }
    rep.emit(format);
    Ok(true)
}

fn cmd_verify(args: VerifyArgs, format: OutputFormat) -> Result<bool, radial_duality::Error> {
    let checks = match args.suite {
        Suite::Identities => verify::identities_suite()?,
        Suite::Spectra => verify::spectra_suite()?,
        Suite::Duality => verify::duality_suite()?,
        Suite::All => verify::all_suites()?,
    };
    let mut rep = RunReport::new(
        "verify",
        vec!["suite", "check", "measured", "threshold", "passed", "detail"],
    );
    rep.param("suite", format!("{:?}", args.suite).to_lowercase());
    for check in &checks {
        eprintln!(
            "# {}/{}: {} in {:.1} ms",
            check.suite,
            check.name,
            if check.passed { "pass" } else { "FAIL" },
            check.runtime.as_secs_f64() * 1e3,
        );
        rep.push(vec![
            Cell::Str(check.suite.into()),
            Cell::Str(check.name.into()),
            Cell::Float(check.measured),
            Cell::Float(check.threshold),
            Cell::Bool(check.passed),
            Cell::Str(check.detail.clone()),
        ]);
    }
    rep.emit(format);
    Ok(checks.iter().all(|c| c.passed))
}
