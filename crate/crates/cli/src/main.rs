//! Command-line driver for the lattice pipeline: grading-matrix analysis,
//! the sifting operator, asymptotic K-polynomials, series expansion,
//! concavity checks, carries matrices, codimension asymptotics, and
//! convergence reports.
//!
//! Every invocation runs one job and writes one JSON (or aligned text)
//! document to standard output; logs go to standard error. Exit codes:
//! 0 success, 1 invalid input, 2 degenerate grading where the asymptotic
//! theory needs a non-degenerate one, 3 size-cap exceeded, 4 a verified
//! property fails.

mod io;

use clap::{Parser, Subcommand, ValueEnum};
use io::CliError;
use kapoly::carries::{build_carries, verify_stochastic, StochasticReport};
use kapoly::concavity::{is_log_concave, is_quasi_concave, ConcavityWitness};
use kapoly::intlat::{gale_blocks, is_totally_unimodular, GradingMatrix};
use kapoly::laurent::{series_expand, LaurentPoly};
use kapoly::polytope::is_degenerate;
use kapoly::veronese::{
    asymptotic_k_polynomial, codim_asymptotic, convergence_report, phi,
};
use kapoly::{Limits, Rat};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "kapoly", version, about = "Exact lattice-pipeline toolkit")]
struct Cli {
    /// Output rendering.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Cap on the number of Laurent terms any result may hold.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    term_cap: u128,
    /// Cap on the number of lattice points any box scan may visit.
    #[arg(long, global = true, default_value_t = 10_000_000)]
    box_cap: u128,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Report rank, lattice index, kernel basis, acyclicity functional,
    /// unimodularity, pivot-block determinant, and degeneracy.
    Analyze {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Compute the asymptotic K-polynomial and its coefficient sum.
    Kpoly {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Apply the sifting operator at stride r to a numerator.
    Phi {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        r: i64,
    },
    /// Expand F over the column semigroup up to a functional bound.
    Expand {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        poly: PathBuf,
        /// Bound on y·w for retained exponents w ("7" or "7/2").
        #[arg(long)]
        bound: String,
    },
    /// Check log-concavity and quasi-concavity of a polynomial (the
    /// asymptotic K-polynomial when --poly is not given).
    Concavity {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        poly: Option<PathBuf>,
    },
    /// Build the carries matrix at stride r and verify its stochastic
    /// structure (column sums, stationary vector, spectrum).
    Carries {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        r: i64,
        /// Second stride whose eigenspaces are compared for stability.
        #[arg(long)]
        compare_r: Option<i64>,
    },
    /// Evaluate a codimension expansion into its limit polynomial.
    Asymptotic {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        expansion: PathBuf,
    },
    /// Tabulate Φ_r for r up to a bound and report the observed growth
    /// order, limit, and stabilization stride.
    Convergence {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        r_max: i64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let limits = Limits {
        term_cap: cli.term_cap,
        box_cap: cli.box_cap,
        ..Limits::default()
    };
    let (body, mut code) = match run(&cli.command, &limits) {
        Ok(outcome) => outcome,
        Err(e) => {
            eprintln!("error: {}", e.detail);
            (e.body(), e.code)
        }
    };
    let payload = match cli.format {
        Format::Json => {
            let mut rendered =
                serde_json::to_string_pretty(&body).expect("serializable output");
            rendered.push('\n');
            rendered
        }
        Format::Text => io::render_text(&body),
    };
    // A reader that stops consuming (e.g. `kapoly ... | head`) closes the
    // pipe; that is not a job failure, so keep the computed exit code.
    if let Err(e) = write_stdout(&payload) {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("error: cannot write output: {e}");
            if code == 0 {
                code = 1;
            }
        }
    }
    ExitCode::from(u8::try_from(code).unwrap_or(1))
}

fn write_stdout(payload: &str) -> std::io::Result<()> {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    out.write_all(payload.as_bytes())?;
    out.flush()
}

/// Runs one job; Ok carries the output document and the exit code (0, or
/// 4 when a verification command found a failing property).
fn run(command: &Command, limits: &Limits) -> Result<(Value, i32), CliError> {
    match command {
        Command::Analyze { matrix } => analyze(matrix, limits),
        Command::Kpoly { matrix } => kpoly(matrix, limits),
        Command::Phi { matrix, poly, r } => run_phi(matrix, poly, *r, limits),
        Command::Expand { matrix, poly, bound } => expand(matrix, poly, bound, limits),
        Command::Concavity { matrix, poly } => concavity(matrix, poly.as_deref(), limits),
        Command::Carries { matrix, r, compare_r } => {
            carries(matrix, *r, *compare_r, limits)
        }
        Command::Asymptotic { matrix, expansion } => asymptotic(matrix, expansion, limits),
        Command::Convergence { matrix, poly, r_max } => {
            convergence(matrix, poly, *r_max, limits)
        }
    }
}

fn load_config(path: &std::path::Path) -> Result<GradingMatrix, CliError> {
    let rows = io::read_matrix(path)?;
    Ok(GradingMatrix::build(&rows)?)
}

fn require_stride(r: i64) -> Result<(), CliError> {
    if r < 1 {
        return Err(CliError::invalid(format!("stride must be at least 1, got {r}")));
    }
    Ok(())
}

fn analyze(matrix: &PathBuf, limits: &Limits) -> Result<(Value, i32), CliError> {
    let config = load_config(matrix)?;
    let blocks = gale_blocks(&config, limits)?;
    let witness = is_degenerate(&config, limits)?;
    let body = json!({
        "d": config.d(),
        "n": config.n(),
        "rank": config.d(),
        "latticeIndex": config.lattice_index().to_string(),
        "kernelBasis": config.kernel_lattice_i64(),
        "positiveFunctional": config
            .positive_functional()
            .iter()
            .map(io::rat_value)
            .collect::<Vec<_>>(),
        "totallyUnimodular": is_totally_unimodular(&config, limits)?,
        "pivotBlockDeterminant": blocks.h_det.to_string(),
        "degenerate": witness.is_some(),
        "degeneracyWitness": witness,
    });
    Ok((body, 0))
}

fn kpoly(matrix: &PathBuf, limits: &Limits) -> Result<(Value, i32), CliError> {
    let config = load_config(matrix)?;
    let k = asymptotic_k_polynomial(&config, limits)?;
    let body = json!({
        "codim": k.codim,
        "kPoly": io::poly_value(&k.k_poly),
        "latticeIndex": k.lattice_index.to_string(),
        "sum": io::rat_str(&k.coefficient_sum),
    });
    Ok((body, 0))
}

fn run_phi(
    matrix: &PathBuf,
    poly: &PathBuf,
    r: i64,
    limits: &Limits,
) -> Result<(Value, i32), CliError> {
    require_stride(r)?;
    let config = load_config(matrix)?;
    let f = io::read_poly(poly, config.d())?;
    let sifted = phi(&config, &f, r, limits)?;
    Ok((io::poly_value(&sifted), 0))
}

fn expand(
    matrix: &PathBuf,
    poly: &PathBuf,
    bound: &str,
    limits: &Limits,
) -> Result<(Value, i32), CliError> {
    let config = load_config(matrix)?;
    let f = io::read_poly(poly, config.d())?;
    let bound = io::parse_rat_flag(bound)?;
    let series = series_expand(&f, &config, &bound, limits)?;
    let body = json!({
        "bound": io::rat_value(&series.bound),
        "functional": series.functional.iter().map(io::rat_value).collect::<Vec<_>>(),
        "terms": series
            .coefficients
            .iter()
            .map(|(e, c)| {
                json!({
                    "exp": e.clone(),
                    "num": io::int_value(c.numer()),
                    "den": io::int_value(c.denom()),
                })
            })
            .collect::<Vec<_>>(),
    });
    Ok((body, 0))
}

fn witness_value(w: &ConcavityWitness) -> Value {
    match w {
        ConcavityWitness::Segment { left, right, point, weight, lhs, rhs } => json!({
            "kind": "segment",
            "left": left,
            "right": right,
            "point": point,
            "weight": [weight.0, weight.1],
            "lhs": io::int_value(lhs),
            "rhs": io::int_value(rhs),
        }),
        ConcavityWitness::Superlevel { level, point, value } => json!({
            "kind": "superlevel",
            "level": io::rat_value(level),
            "point": point,
            "value": io::rat_value(value),
        }),
    }
}

fn concavity(
    matrix: &PathBuf,
    poly: Option<&std::path::Path>,
    limits: &Limits,
) -> Result<(Value, i32), CliError> {
    let config = load_config(matrix)?;
    let f = match poly {
        Some(path) => io::read_poly(path, config.d())?,
        None => asymptotic_k_polynomial(&config, limits)?.k_poly,
    };
    let log = is_log_concave(&f);
    let quasi = is_quasi_concave(&f);
    let body = json!({
        "poly": io::poly_value(&f),
        "logConcave": log.holds,
        "logWitness": log.witness.as_ref().map(witness_value),
        "quasiConcave": quasi.holds,
        "quasiWitness": quasi.witness.as_ref().map(witness_value),
    });
    let code = if log.holds && quasi.holds { 0 } else { 4 };
    Ok((body, code))
}

fn report_value(report: &StochasticReport) -> Value {
    json!({
        "columnSumsOk": report.column_sums_ok,
        "badColumns": report
            .bad_columns
            .iter()
            .map(|(j, s)| json!({ "column": j, "sum": io::rat_value(s) }))
            .collect::<Vec<_>>(),
        "stationaryOk": report.stationary_ok,
        "stationaryResidual": report
            .stationary_residual
            .iter()
            .map(io::rat_value)
            .collect::<Vec<_>>(),
        "spectrumOk": report.spectrum_ok,
        "charpolyValues": report
            .charpoly_values
            .iter()
            .map(|(i, v)| json!({ "power": i, "value": io::rat_value(v) }))
            .collect::<Vec<_>>(),
        "nullspaceDims": report
            .nullspace_dims
            .iter()
            .map(|(i, d)| json!({ "power": i, "dim": d }))
            .collect::<Vec<_>>(),
        "eigenspacesStable": report.eigenspaces_stable,
    })
}

fn carries(
    matrix: &PathBuf,
    r: i64,
    compare_r: Option<i64>,
    limits: &Limits,
) -> Result<(Value, i32), CliError> {
    require_stride(r)?;
    let config = load_config(matrix)?;
    let k = asymptotic_k_polynomial(&config, limits)?;
    let c = build_carries(&config, r, limits)?;
    let other = match compare_r {
        Some(r2) => {
            require_stride(r2)?;
            Some(build_carries(&config, r2, limits)?)
        }
        None => None,
    };
    let report = verify_stochastic(&c, &k, other.as_ref());
    let size = c.index.len();
    let entries: Vec<Value> = (0..size)
        .map(|i| {
            Value::Array(
                (0..size).map(|j| io::rat_value(c.entries.at(i, j))).collect(),
            )
        })
        .collect();
    let ok = report.column_sums_ok
        && report.stationary_ok
        && report.spectrum_ok
        && report.eigenspaces_stable != Some(false);
    let body = json!({
        "r": c.r,
        "index": c.index,
        "entries": entries,
        "report": report_value(&report),
    });
    Ok((body, if ok { 0 } else { 4 }))
}

fn asymptotic(
    matrix: &PathBuf,
    expansion: &PathBuf,
    limits: &Limits,
) -> Result<(Value, i32), CliError> {
    let config = load_config(matrix)?;
    let (codim, terms) = io::read_expansion(expansion, config.n())?;
    let limit = codim_asymptotic(&config, codim, &terms, limits)?;
    let growth = config.n() - codim - config.d();
    let body = json!({
        "codim": codim,
        "growthOrder": growth,
        "limit": io::poly_value(&limit),
    });
    Ok((body, 0))
}

fn poly_option(f: &Option<LaurentPoly<Rat>>) -> Value {
    match f {
        Some(p) => io::poly_value(p),
        None => Value::Null,
    }
}

fn convergence(
    matrix: &PathBuf,
    poly: &PathBuf,
    r_max: i64,
    limits: &Limits,
) -> Result<(Value, i32), CliError> {
    require_stride(r_max)?;
    let config = load_config(matrix)?;
    let f = io::read_poly(poly, config.d())?;
    let report = convergence_report(&config, &f, r_max, limits)?;
    let body = json!({
        "latticeIndex": report.lattice_index,
        "growthBound": report.growth_bound,
        "strides": report.strides,
        "observedGrowth": report.observed_growth,
        "observedLimit": poly_option(&report.observed_limit),
        "differenceNorms": report
            .difference_norms
            .iter()
            .map(io::rat_value)
            .collect::<Vec<_>>(),
        "empiricalR0": report.empirical_r0,
        "r0Caveat": report.r0_caveat,
        "oscillation": report.oscillation,
        "offStride": report
            .off_stride
            .iter()
            .map(|class| {
                json!({
                    "residue": class.residue,
                    "strides": class.strides,
                    "limit": poly_option(&class.limit),
                })
            })
            .collect::<Vec<_>>(),
    });
    Ok((body, 0))
}
