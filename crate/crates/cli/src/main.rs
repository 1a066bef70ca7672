use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use neps_pst::gf2::{construct_basis, rank_gf2};
use neps_pst::graphs::{connected_components, neps_adjacency};
use neps_pst::io::{complex_magnitude_csv, complex_matrix_json, real_matrix_csv, real_matrix_json};
use neps_pst::pst::{self, CheckOptions, DEFAULT_TOL};
use neps_pst::spectral::{symmetry_residual, unitarity_residual};
use neps_pst::{Basis, MethodRegistry, Time};

/// Default ceiling on n for anything that touches 3^n-sized state.
const DEFAULT_MAX_N: usize = 8;
/// Ceiling with --allow-large.
const LARGE_MAX_N: usize = 12;
/// The verify suite builds several dense 3^n × 3^n matrices.
const VERIFY_MAX_N: usize = 5;

const EXIT_OK: u8 = 0;
const EXIT_INPUT: u8 = 1;
const EXIT_PREMISE: u8 = 2;
const EXIT_NUMERIC: u8 = 3;

#[derive(Parser)]
#[command(
    name = "neps-pst",
    version,
    about = "Perfect state transfer on NEPS products of P3"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the sufficient condition and measure every predicted PST pair
    Analyze {
        #[arg(long)]
        omega: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// Extra time to probe, as tau:K or a decimal
        #[arg(long)]
        time: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Allow numeric checks up to n = 12
        #[arg(long)]
        allow_large: bool,
    },
    /// Write a connected basis with PST at tau_k (n rows of weight k, k odd, k < n)
    ConstructBasis {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write the transition matrix H(t) as JSON, or magnitudes as CSV for a .csv path
    Transition {
        #[arg(long)]
        omega: PathBuf,
        #[arg(long)]
        time: String,
        #[arg(long)]
        out: PathBuf,
        /// One of: product, spectral, series
        #[arg(long, default_value = "product")]
        method: String,
        #[arg(long)]
        allow_large: bool,
    },
    /// Cross-check the three transition routes and the structural predictions
    Verify {
        #[arg(long)]
        omega: PathBuf,
        /// Additional times to compare at (tau:K or decimal); repeatable
        #[arg(long)]
        time: Vec<String>,
    },
    /// Count connected components and compare with the GF(2) rank
    Components {
        #[arg(long)]
        omega: PathBuf,
        /// Also export the adjacency matrix (.csv for CSV, JSON otherwise)
        #[arg(long)]
        adjacency_out: Option<PathBuf>,
        #[arg(long)]
        allow_large: bool,
    },
    /// Classify every basis for small n and flag PST the sufficient condition misses
    Scan {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        max_m: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read_basis(path: &Path) -> Result<Basis> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Basis::from_json(&text).with_context(|| format!("invalid basis in {}", path.display()))
}

fn check_out(path: &Path) -> Result<()> {
    let parent = path.parent().filter(|p| !p.as_os_str().is_empty());
    if let Some(dir) = parent {
        if !dir.is_dir() {
            bail!("output directory {} does not exist", dir.display());
        }
    }
    Ok(())
}

fn write(path: &Path, mut text: String) -> Result<()> {
    if !text.ends_with('\n') {
        text.push('\n');
    }
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// Prints to stdout; a closed pipe (e.g. `| head`) ends output quietly.
fn emit(line: &str) -> Result<()> {
    match writeln!(io::stdout().lock(), "{line}") {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn is_csv(path: &Path) -> bool {
    path.extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"))
}

fn cap(allow_large: bool) -> usize {
    if allow_large {
        LARGE_MAX_N
    } else {
        DEFAULT_MAX_N
    }
}

fn parse_time(s: &str) -> Result<Time> {
    s.parse::<Time>().map_err(Into::into)
}

fn analyze(
    omega: &Path,
    tol: f64,
    time: Option<&str>,
    out: Option<&Path>,
    allow_large: bool,
) -> Result<u8> {
    let basis = read_basis(omega)?;
    let probe_time = time.map(parse_time).transpose()?;
    if let Some(out) = out {
        check_out(out)?;
    }
    if tol.is_nan() || tol <= 0.0 {
        bail!("--tol must be positive");
    }
    let numeric = basis.n() <= cap(allow_large);
    if !numeric {
        eprintln!(
            "n = {} exceeds the numeric cap {}; reporting structural predictions only",
            basis.n(),
            cap(allow_large)
        );
    }
    let report = pst::sufficient_condition(
        &basis,
        &CheckOptions {
            tol,
            numeric,
            probe_time,
        },
    )?;
    let json = report.to_json();
    match out {
        Some(path) => {
            write(path, json)?;
            println!(
                "wrote {}: rank {}, connected {}, parity {}, k = {}, {} PST claims",
                path.display(),
                report.rank,
                report.connected,
                report.parity,
                report.k,
                report.pst_claims().count()
            );
        }
        None => emit(&json)?,
    }
    Ok(if !report.premises_hold() {
        EXIT_PREMISE
    } else if !report.claims_verified() {
        EXIT_NUMERIC
    } else {
        EXIT_OK
    })
}

fn construct(n: usize, k: usize, out: &Path) -> Result<u8> {
    check_out(out)?;
    let basis = construct_basis(n, k).with_context(|| {
        "usage: construct-basis --n N --k K with N >= 2, K odd and K < N".to_string()
    })?;
    write(out, basis.to_json())?;
    println!(
        "wrote {}: {} rows, every row of weight {}, GF(2) rank {}",
        out.display(),
        basis.len(),
        k,
        rank_gf2(&basis)
    );
    Ok(EXIT_OK)
}

fn transition(omega: &Path, time: &str, out: &Path, method: &str, allow_large: bool) -> Result<u8> {
    let basis = read_basis(omega)?;
    let time = parse_time(time)?;
    check_out(out)?;
    let registry = MethodRegistry::with_defaults();
    let Some(method) = registry.get(method) else {
        bail!(
            "unknown method {method:?}; available: {}",
            registry.names().join(", ")
        );
    };
    if basis.n() > cap(allow_large) {
        bail!(
            "n = {} exceeds the cap {} (use --allow-large for up to {LARGE_MAX_N})",
            basis.n(),
            cap(allow_large)
        );
    }
    let h = method.transition(&basis, time)?;
    let text = if is_csv(out) {
        complex_magnitude_csv(&h)
    } else {
        complex_matrix_json(&h)
    };
    write(out, text)?;
    println!(
        "wrote {} ({}x{}, method {})",
        out.display(),
        h.nrows(),
        h.ncols(),
        method.name()
    );
    println!("unitarity residual {:e}", unitarity_residual(&h));
    println!("symmetry residual {:e}", symmetry_residual(&h));
    Ok(EXIT_OK)
}

fn verify(omega: &Path, times: &[String]) -> Result<u8> {
    let basis = read_basis(omega)?;
    let times = times
        .iter()
        .map(|t| parse_time(t))
        .collect::<Result<Vec<_>>>()?;
    if basis.n() > VERIFY_MAX_N {
        bail!("verify builds dense 3^n matrices and supports n <= {VERIFY_MAX_N}");
    }
    let times = if times.is_empty() {
        vec![Time::Real(0.7)]
    } else {
        times
    };
    let lines = pst::verify_basis(&basis, &times)?;
    let mut failed = 0;
    for l in &lines {
        println!(
            "{} {}: residual {:e} (tol {:e})",
            if l.pass { "PASS" } else { "FAIL" },
            l.name,
            l.residual,
            l.tol
        );
        failed += usize::from(!l.pass);
    }
    println!("{} checks, {} failed", lines.len(), failed);
    Ok(if failed == 0 { EXIT_OK } else { EXIT_NUMERIC })
}

fn components(omega: &Path, adjacency_out: Option<&Path>, allow_large: bool) -> Result<u8> {
    let basis = read_basis(omega)?;
    if let Some(out) = adjacency_out {
        check_out(out)?;
    }
    if basis.n() > cap(allow_large) {
        bail!("n = {} exceeds the cap {}", basis.n(), cap(allow_large));
    }
    let adj = neps_adjacency(&basis)?;
    let comps = connected_components(&adj)?;
    let rank = rank_gf2(&basis);
    let sizes: Vec<String> = comps.sizes().iter().map(ToString::to_string).collect();
    println!("vertices {}", adj.nrows());
    println!("components {}", comps.count);
    println!("sizes {}", sizes.join(" "));
    println!("rank {} of n = {}", rank, basis.n());
    println!(
        "rank criterion {}",
        if (comps.count == 1) == (rank == basis.n()) {
            "agrees"
        } else {
            "DISAGREES"
        }
    );
    if let Some(out) = adjacency_out {
        let text = if is_csv(out) {
            real_matrix_csv(&adj)
        } else {
            real_matrix_json(&adj)
        };
        write(out, text)?;
    }
    Ok(EXIT_OK)
}

fn scan(n: usize, max_m: Option<usize>, tol: f64, out: Option<&Path>) -> Result<u8> {
    if let Some(out) = out {
        check_out(out)?;
    }
    let rows = pst::scan(n, max_m, tol)?;
    emit(&format!(
        "{:<40} {:>2} {:>4} {:>5} {:>8} {:>2} {:>8} {:>5} {:>6}",
        "rows", "m", "rank", "conn", "parity", "k", "premises", "pairs", "missed"
    ))?;
    for r in &rows {
        emit(&format!(
            "{:<40} {:>2} {:>4} {:>5} {:>8} {:>2} {:>8} {:>5} {:>6}",
            r.rows.join(","),
            r.m,
            r.rank,
            r.connected,
            r.parity.to_string(),
            r.k,
            r.premises_hold,
            r.pst_pairs.len(),
            r.missed
        ))?;
    }
    let missed = rows.iter().filter(|r| r.missed).count();
    println!(
        "{} bases, {} connected PST cases outside the sufficient condition",
        rows.len(),
        missed
    );
    if let Some(out) = out {
        let value = serde_json::to_value(&rows)?;
        write(out, serde_json::to_string_pretty(&value)?)?;
    }
    Ok(EXIT_OK)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Analyze {
            omega,
            tol,
            time,
            out,
            allow_large,
        } => analyze(&omega, tol, time.as_deref(), out.as_deref(), allow_large),
        Command::ConstructBasis { n, k, out } => construct(n, k, &out),
        Command::Transition {
            omega,
            time,
            out,
            method,
            allow_large,
        } => transition(&omega, &time, &out, &method, allow_large),
        Command::Verify { omega, time } => verify(&omega, &time),
        Command::Components {
            omega,
            adjacency_out,
            allow_large,
        } => components(&omega, adjacency_out.as_deref(), allow_large),
        Command::Scan { n, max_m, tol, out } => scan(n, max_m, tol, out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
