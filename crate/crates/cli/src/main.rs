//! `rkp-convex`: exact identity checks, map property suites, sampled
//! convexity certificates and restricted three-body scans.
//!
//! Exit codes: 0 when every check passes, 1 when a violation was found, 2 on
//! usage, domain or I/O errors.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use rkp_convex::convexity_geom::{
    axis_value_at_case_boundary_f64, certify_convexity, f3_analysis, factor_identities,
    gradient_identity_residuals, verify_factorization, F3Trace,
};
use rkp_convex::kepler_maps::{
    angular_sign, energy_correspondence, ligon_schaaf_defect, symplecticity_defects,
};
use rkp_convex::pcr3bp::{control_csv, direct_lc_control, scan_csv, scan_grid, Primary};
use rkp_convex::report::{fmt17, ser_f64, to_csv, to_json};
use rkp_convex::sampling::DEFAULT_SEED;

#[derive(Debug, Parser)]
#[command(
    name = "rkp-convex",
    version,
    about = "Convexity checks for the rotating Kepler problem"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalOpts {
    /// Worker threads (default: available cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Write the report here instead of standard output
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Sample count (default depends on the command)
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    samples: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact and property-based verification suites
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Sampled convexity certificates
    #[command(subcommand)]
    Certify(CertifyCmd),
    /// Parameter scans
    #[command(subcommand)]
    Scan(ScanCmd),
    /// Negative controls
    #[command(subcommand)]
    Control(ControlCmd),
    /// Case analyses
    #[command(subcommand)]
    Analyze(AnalyzeCmd),
}

#[derive(Debug, Subcommand)]
enum VerifyCmd {
    /// Gradient, determinant factorization and factor identities, exactly
    Identity,
    /// Ligon-Schaaf, symplecticity and energy-correspondence suites
    Maps,
}

#[derive(Debug, Subcommand)]
enum CertifyCmd {
    /// Certificate for the bounded surface at one energy
    Rkp {
        #[arg(long, allow_hyphen_values = true)]
        energy: f64,
    },
}

#[derive(Debug, Subcommand)]
enum ScanCmd {
    /// Restricted three-body scan over mass ratios and energy fractions
    R3bp {
        #[arg(long, value_delimiter = ',', required = true)]
        mu: Vec<f64>,
        #[arg(long, value_delimiter = ',', required = true)]
        fractions: Vec<f64>,
        #[arg(long, value_enum, default_value_t = PrimaryArg::Heavy)]
        primary: PrimaryArg,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PrimaryArg {
    Heavy,
    Light,
}

#[derive(Debug, Subcommand)]
enum ControlCmd {
    /// Plain Levi-Civita chart of the rotating Kepler problem
    DirectLc {
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        energies: Vec<f64>,
    },
}

#[derive(Debug, Subcommand)]
enum AnalyzeCmd {
    /// Positivity cases of the third determinant factor
    F3 {
        /// `lo:hi:n` (inclusive, n points) or a comma-separated list
        #[arg(long, default_value = "0.01:0.99:100", allow_hyphen_values = true)]
        a_grid: String,
        #[arg(
            long,
            default_value = "-10:-1.500000001:100",
            allow_hyphen_values = true
        )]
        c_grid: String,
    },
}

/// A failed run: usage/domain/I-O problems exit 2.
struct Fatal(String);

impl<E: std::fmt::Display> From<E> for Fatal {
    fn from(e: E) -> Self {
        Fatal(e.to_string())
    }
}

/// The report text and whether every check passed.
struct Outcome {
    text: String,
    pass: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Fatal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<bool, Fatal> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cli.global.jobs {
        if j == 0 {
            return Err(Fatal("--jobs must be at least 1".into()));
        }
        pool = pool.num_threads(j);
    }
    let pool = pool.build()?;
    let outcome = pool.install(|| dispatch(cli))?;
    match &cli.global.out {
        Some(path) => std::fs::write(path, &outcome.text)
            .map_err(|e| Fatal(format!("{}: {e}", path.display())))?,
        None => std::io::stdout().write_all(outcome.text.as_bytes())?,
    }
    Ok(outcome.pass)
}

fn require_format(requested: Option<Format>, supported: &[Format]) -> Result<Format, Fatal> {
    match requested {
        None => Ok(supported[0]),
        Some(f) if supported.contains(&f) => Ok(f),
        Some(f) => Err(Fatal(
            format!("format {f:?} is not available for this command").to_lowercase(),
        )),
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome, Fatal> {
    let g = &cli.global;
    let samples = |default: u64| g.samples.unwrap_or(default) as usize;
    match &cli.command {
        Command::Verify(VerifyCmd::Identity) => {
            require_format(g.format, &[Format::Json])?;
            verify_identity()
        }
        Command::Verify(VerifyCmd::Maps) => {
            require_format(g.format, &[Format::Json])?;
            verify_maps(samples(10_000), g.seed)
        }
        Command::Certify(CertifyCmd::Rkp { energy }) => {
            require_format(g.format, &[Format::Json])?;
            let cert = certify_convexity(*energy, samples(20_000), g.seed)?;
            eprintln!(
                "c = {}: min_eig = {:e}, violations = {}",
                energy,
                cert.min_eig,
                cert.violations.len()
            );
            Ok(Outcome {
                text: to_json(&cert)?,
                pass: cert.pass,
            })
        }
        Command::Scan(ScanCmd::R3bp {
            mu,
            fractions,
            primary,
        }) => {
            require_format(g.format, &[Format::Csv])?;
            if let Some(m) = mu.iter().find(|m| !(**m > 0.0 && **m < 1.0)) {
                return Err(Fatal(format!("mass ratio {m} outside (0, 1)")));
            }
            if let Some(f) = fractions.iter().find(|f| !(**f > 0.0 && **f < 1.0)) {
                return Err(Fatal(format!("fraction {f} outside (0, 1)")));
            }
            let primary = match primary {
                PrimaryArg::Heavy => Primary::Heavy,
                PrimaryArg::Light => Primary::Light,
            };
            let rows = scan_grid(mu, fractions, samples(5_000), g.seed, primary);
            if let Some(e) = rows.iter().find_map(|r| r.error.as_ref()) {
                return Err(Fatal(e.clone()));
            }
            Ok(Outcome {
                text: scan_csv(&rows),
                pass: rows.iter().all(|r| r.pass),
            })
        }
        Command::Control(ControlCmd::DirectLc { energies }) => {
            require_format(g.format, &[Format::Csv])?;
            let rows = direct_lc_control(energies, samples(5_000), g.seed)?;
            for r in &rows {
                eprintln!(
                    "c = {}: direct chart {}, composed {}",
                    r.c,
                    if r.direct_convex {
                        "convex"
                    } else {
                        "not convex"
                    },
                    if r.composed_pass {
                        "convex"
                    } else {
                        "not convex"
                    }
                );
            }
            Ok(Outcome {
                text: control_csv(&rows),
                pass: rows.iter().all(|r| r.composed_pass),
            })
        }
        Command::Analyze(AnalyzeCmd::F3 { a_grid, c_grid }) => {
            require_format(g.format, &[Format::Csv])?;
            analyze_f3(&parse_grid(a_grid)?, &parse_grid(c_grid)?)
        }
    }
}

#[derive(Serialize)]
struct IdentityCheckReport {
    name: &'static str,
    holds: bool,
}

#[derive(Serialize)]
struct IdentityReport {
    sigma: i8,
    gradient_identity: bool,
    factorization: &'static str,
    factor_identities: Vec<IdentityCheckReport>,
    #[serde(serialize_with = "ser_f64")]
    axis_value_at_case_boundary: f64,
    pass: bool,
}

fn verify_identity() -> Result<Outcome, Fatal> {
    let gradient_identity = gradient_identity_residuals().iter().all(|r| r.is_zero());
    let outcome = verify_factorization();
    let checks: Vec<IdentityCheckReport> = factor_identities()
        .iter()
        .map(|c| IdentityCheckReport {
            name: c.name,
            holds: c.holds(),
        })
        .collect();
    let axis = axis_value_at_case_boundary_f64();
    let pass = gradient_identity && outcome.holds() && checks.iter().all(|c| c.holds) && axis > 0.0;
    eprintln!("factorization: {}", outcome.label());
    let report = IdentityReport {
        sigma: angular_sign().value(),
        gradient_identity,
        factorization: outcome.label(),
        factor_identities: checks,
        axis_value_at_case_boundary: axis,
        pass,
    };
    Ok(Outcome {
        text: to_json(&report)?,
        pass,
    })
}

/// Tolerances of the map suites.
const LS_TOL: f64 = 1e-9;
const SYMPLECTIC_TOL: f64 = 1e-6;
const SYMPLECTIC_STEP: f64 = 1e-6;
const ENERGY_TOL: f64 = 1e-9;
const ANTIPODE_TOL: f64 = 1e-12;

#[derive(Serialize)]
struct MapsReport {
    sigma: i8,
    samples: usize,
    seed: u64,
    #[serde(serialize_with = "ser_f64")]
    ligon_schaaf_defect: f64,
    #[serde(serialize_with = "ser_f64")]
    symplectic_ligon_schaaf: f64,
    #[serde(serialize_with = "ser_f64")]
    symplectic_levi_civita: f64,
    #[serde(serialize_with = "ser_f64")]
    symplectic_composed: f64,
    #[serde(serialize_with = "ser_f64")]
    energy_residual: f64,
    #[serde(serialize_with = "ser_f64")]
    antipodal_gap: f64,
    pass: bool,
}

fn verify_maps(samples: usize, seed: u64) -> Result<Outcome, Fatal> {
    let ls = ligon_schaaf_defect(samples, seed)?;
    let sym = symplecticity_defects(samples.min(1000), seed, SYMPLECTIC_STEP)?;
    let en = energy_correspondence(samples, seed)?;
    let pass = ls < LS_TOL
        && sym.max() < SYMPLECTIC_TOL
        && en.max_residual < ENERGY_TOL
        && en.max_antipodal_gap < ANTIPODE_TOL;
    let report = MapsReport {
        sigma: en.sigma,
        samples,
        seed,
        ligon_schaaf_defect: ls,
        symplectic_ligon_schaaf: sym.ligon_schaaf,
        symplectic_levi_civita: sym.levi_civita,
        symplectic_composed: sym.composed,
        energy_residual: en.max_residual,
        antipodal_gap: en.max_antipodal_gap,
        pass,
    };
    Ok(Outcome {
        text: to_json(&report)?,
        pass,
    })
}

/// `lo:hi:n` (inclusive linspace) or `x,y,z`.
fn parse_grid(spec: &str) -> Result<Vec<f64>, Fatal> {
    let bad = || Fatal(format!("malformed grid '{spec}'"));
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        [lo, hi, n] => {
            let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
            let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
            let n: usize = n.trim().parse().map_err(|_| bad())?;
            match n {
                0 => Err(bad()),
                1 => Ok(vec![lo]),
                _ => Ok((0..n)
                    .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
                    .collect()),
            }
        }
        [list] => list
            .split(',')
            .map(|x| x.trim().parse().map_err(|_| bad()))
            .collect(),
        _ => Err(bad()),
    }
}

fn analyze_f3(a_grid: &[f64], c_grid: &[f64]) -> Result<Outcome, Fatal> {
    let mut rows = Vec::with_capacity(a_grid.len() * c_grid.len());
    let mut pass = true;
    for &a in a_grid {
        for &c in c_grid {
            let t: F3Trace = f3_analysis(a, c)?;
            pass &= t.pass;
            let scale = 4.0 * a.powi(6);
            for chk in &t.checks {
                rows.push(vec![
                    fmt17(a),
                    fmt17(c),
                    chk.case.label().to_owned(),
                    fmt17(t.numerator),
                    fmt17(t.f3),
                    fmt17(chk.bound / scale),
                    (t.pass && chk.holds()).to_string(),
                ]);
            }
        }
    }
    Ok(Outcome {
        text: to_csv(
            &["a", "c", "case", "numerator", "f3", "f3_bound", "pass"],
            &rows,
        )?,
        pass,
    })
}
