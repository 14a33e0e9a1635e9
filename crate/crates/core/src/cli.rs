//! Command-line front end.
//!
//! Every subcommand writes one CSV report (to `--out` or stdout) and, when
//! asked, a JSON summary. Exit codes: 0 success, 1 usage or input error,
//! 2 a check failed.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::decay::{band_decay_report, corollary_decay_check, BandSymbol, DecayReport, RegularSymbol};
use crate::error::Error;
use crate::hankel::HankelInverse;
use crate::predictor::{inverse_outer_coeffs, lemma1_limit, lemma1_rate, levinson};
use crate::spectra::{det_equation_roots, grid_localize, min_eigen_sweep, toeplitz_eigen, CRIT_TOL};
use crate::symbol::{wiener_hopf_factor_with, FactorOptions, RootLocation, TrigSymbol};
use crate::toeplitz::{dense_invert, ToeplitzMatrix};
use crate::{fmt_complex, fmt_real};

#[derive(Debug, Parser)]
#[command(name = "toeplitz-spectra", version, about = "Toeplitz inverses, spectra and predictors")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalArgs,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Symbol as JSON, or @path to a JSON file.
    #[arg(long, global = true)]
    pub symbol: Option<String>,
    #[arg(long = "N", global = true)]
    pub n: Option<usize>,
    #[arg(long = "N-sweep", global = true, value_delimiter = ',')]
    pub n_sweep: Option<Vec<usize>>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long = "json-summary", global = true)]
    pub json_summary: Option<PathBuf>,
    #[arg(long = "check-oracle", global = true)]
    pub check_oracle: bool,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Tolerance for oracle comparisons.
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tol: f64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Wiener–Hopf factorization: scale and roots.
    Factor,
    /// Eigenvalues with their grid locations.
    Eigen,
    /// Entries of the inverse from the Hankel formula.
    Invert {
        #[arg(long, value_parser = parse_pair, conflicts_with_all = ["column", "full"])]
        entry: Option<(usize, usize)>,
        #[arg(long, conflicts_with = "full")]
        column: Option<usize>,
        #[arg(long)]
        full: bool,
    },
    /// Off-diagonal decay of the inverse.
    Decay {
        /// Target decay base ρ > 1 for a regular symbol; omit for band symbols.
        #[arg(long)]
        rho: Option<f64>,
    },
    /// Predictor polynomial coefficients.
    Predictor {
        #[arg(long = "M")]
        m: usize,
        #[arg(long, value_delimiter = ',')]
        lemma1: Option<Vec<usize>>,
    },
}

fn parse_pair(s: &str) -> std::result::Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected k,l")?;
    let p = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    Ok((p(a)?, p(b)?))
}

/// Failure of a run, mapped to an exit code.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Check(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

struct Report {
    csv: String,
    summary: Value,
    pass: bool,
}

fn init_logging() {
    let level = match std::env::var("TOEPLITZ_SPECTRA_LOG").as_deref() {
        Ok("debug") => log::LevelFilter::Debug,
        Ok("info") => log::LevelFilter::Info,
        _ => log::LevelFilter::Off,
    };
    let _ = env_logger::Builder::new().filter_level(level).format_timestamp(None).try_init();
}

/// Parses `argv` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    init_logging();
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(Failure::Check(diag)) => {
            eprintln!("{}", serde_json::to_string_pretty(&diag).unwrap_or_default());
            2
        }
    }
}

fn execute(cli: &Cli) -> Result<(), Failure> {
    let g = &cli.global;
    if !(g.tol > 0.0) {
        return Err(Failure::Usage("--tol must be positive".into()));
    }
    let text = g.symbol.as_deref().ok_or_else(|| Failure::Usage("--symbol is required".into()))?;
    let sym = load_symbol(text)?;
    let opts = FactorOptions { seed: g.seed, ..FactorOptions::default() };
    let report = match &cli.command {
        Command::Factor => factor(&sym, &opts, g)?,
        Command::Eigen => eigen(&sym, g)?,
        Command::Invert { entry, column, full } => invert(&sym, &opts, g, *entry, *column, *full)?,
        Command::Decay { rho } => decay(&sym, g, *rho)?,
        Command::Predictor { m, lemma1 } => predictor(&sym, *m, lemma1.as_deref())?,
    };
    let mut summary = report.summary;
    summary["pass"] = json!(report.pass);
    match &g.out {
        Some(p) => std::fs::write(p, &report.csv).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?,
        None => print!("{}", report.csv),
    }
    if let Some(p) = &g.json_summary {
        let body = serde_json::to_string_pretty(&summary).expect("summary serializes");
        std::fs::write(p, body + "\n").map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
    }
    if report.pass {
        Ok(())
    } else {
        Err(Failure::Check(summary))
    }
}

fn load_symbol(text: &str) -> Result<TrigSymbol, Failure> {
    let body = match text.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))?,
        None => text.to_string(),
    };
    Ok(TrigSymbol::from_json(&body)?)
}

fn require_n(g: &GlobalArgs) -> Result<usize, Failure> {
    match g.n {
        Some(n) if n >= 1 => Ok(n),
        Some(_) => Err(Failure::Usage("--N must be at least 1".into())),
        None => Err(Failure::Usage("--N is required".into())),
    }
}

fn sizes(g: &GlobalArgs) -> Result<Vec<usize>, Failure> {
    match (&g.n_sweep, g.n) {
        (Some(v), _) if !v.is_empty() && v.iter().all(|&n| n >= 1) => Ok(v.clone()),
        (Some(_), _) => Err(Failure::Usage("--N-sweep needs sizes ≥ 1".into())),
        (None, _) => Ok(vec![require_n(g)?]),
    }
}

fn factor(sym: &TrigSymbol, opts: &FactorOptions, g: &GlobalArgs) -> Result<Report, Failure> {
    let f = wiener_hopf_factor_with(sym, opts)?;
    let mut csv = String::from("kind,index,re,im,multiplicity\n");
    let s = f.scale();
    let u = f.unit();
    let _ = writeln!(csv, "scale,0,{},{},1", fmt_real(s.re), fmt_real(s.im));
    let _ = writeln!(csv, "unit,0,{},{},1", fmt_real(u.re), fmt_real(u.im));
    if let Some(roots) = f.root_set() {
        for (i, r) in roots.roots.iter().enumerate() {
            let kind = match r.location {
                RootLocation::Inside => "inside",
                RootLocation::Outside => "outside",
            };
            let _ = writeln!(csv, "{kind},{i},{},{},{}", fmt_real(r.value.re), fmt_real(r.value.im), r.multiplicity);
        }
    }
    let err = f.reconstruction_error(sym, 1024);
    let pass = !g.check_oracle || err <= g.tol * sym.sup_norm(1024).max(1.0);
    Ok(Report {
        csv,
        summary: json!({ "command": "factor", "n0": f.n0(), "rho": f.rho(), "reconstruction_error": err }),
        pass,
    })
}

fn eigen(sym: &TrigSymbol, g: &GlobalArgs) -> Result<Report, Failure> {
    let ns = sizes(g)?;
    let mut csv = String::from("N,j,lambda,k,theta,grid_value,residual\n");
    let mut rows = Vec::new();
    let mut pass = true;
    for &n in &ns {
        let eig = toeplitz_eigen(sym, n)?;
        let locs = grid_localize(sym, n, &eig)?;
        let mut worst_shift = 0.0f64;
        let mut worst_residual = 0.0f64;
        let mut shared = 0;
        for (j, (lam, loc)) in eig.values.iter().zip(&locs).enumerate() {
            let grid = sym.eval(loc.k as f64 * std::f64::consts::PI / (n + 2) as f64);
            let residual = if loc.degenerate { 0.0 } else { (sym.eval(loc.antecedent) - lam).abs() };
            worst_shift = worst_shift.max(loc.theta_shift.abs());
            shared += usize::from(loc.shared);
            worst_residual = worst_residual.max(residual);
            let _ = writeln!(
                csv,
                "{n},{},{},{},{},{},{}",
                j + 1,
                fmt_real(*lam),
                loc.k,
                fmt_real(loc.theta_shift),
                fmt_real(grid),
                fmt_real(residual)
            );
        }
        let mut row = json!({ "N": n, "max_abs_theta": worst_shift, "max_residual": worst_residual, "shared_slots": shared });
        pass &= worst_shift < 1.0 && shared == 0;
        if g.check_oracle {
            let agree = determinant_agreement(sym, n, &eig.values)?;
            pass &= agree.map_or(true, |d| d <= 1e-5);
            row["determinant_agreement"] = json!(agree);
        }
        rows.push(row);
    }
    let mut summary = json!({ "command": "eigen", "sizes": rows });
    if ns.len() > 1 && sym.degree() > 0 {
        if let Ok(sweep) = min_eigen_sweep(sym, &ns) {
            summary["min_eigen_converging"] = json!(sweep.converging);
        }
    }
    Ok(Report { csv, summary, pass })
}

/// Largest distance from an eigenvalue outside the guard bands to the nearest determinant
/// root; `None` when the symbol is outside the determinant pipeline's scope.
fn determinant_agreement(sym: &TrigSymbol, n: usize, values: &[f64]) -> Result<Option<f64>, Failure> {
    if !sym.is_even() || sym.is_sampled() || sym.degree() == 0 {
        return Ok(None);
    }
    let (lo, hi) = sym.grid_range(4096);
    let det = match det_equation_roots(sym, n, (lo - 0.5, hi + 0.5), 4000) {
        Ok(d) => d,
        Err(_) => return Ok(None),
    };
    let skip = |l: f64| det.excluded.iter().any(|&(a, b)| l >= a - CRIT_TOL && l <= b + CRIT_TOL);
    let worst = values
        .iter()
        .filter(|&&l| !skip(l))
        .map(|&l| det.roots.iter().map(|r| (r - l).abs()).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max);
    Ok(Some(worst))
}

fn invert(
    sym: &TrigSymbol,
    opts: &FactorOptions,
    g: &GlobalArgs,
    entry: Option<(usize, usize)>,
    column: Option<usize>,
    full: bool,
) -> Result<Report, Failure> {
    let n = require_n(g)?;
    let f = wiener_hopf_factor_with(sym, opts)?;
    let inv = HankelInverse::new(&f, n)?;
    let mut cells: Vec<(usize, usize, crate::Complex64)> = Vec::new();
    let check = |k: usize| {
        if k > n {
            Err(Failure::Usage(format!("index {k} exceeds N = {n}")))
        } else {
            Ok(())
        }
    };
    match (entry, column) {
        (Some((k, l)), _) => {
            check(k)?;
            check(l)?;
            cells.push((k, l, inv.entry(k, l)));
        }
        (None, Some(l)) => {
            check(l)?;
            cells.extend(inv.column(l)?.into_iter().enumerate().map(|(k, v)| (k, l, v)));
        }
        (None, None) => {
            let _ = full;
            let m = inv.full()?;
            for k in 0..=n {
                for l in 0..=n {
                    cells.push((k, l, m[(k, l)]));
                }
            }
        }
    }
    let mut csv = String::from("k,l,value\n");
    for (k, l, v) in &cells {
        let _ = writeln!(csv, "{k},{l},{}", if v.im == 0.0 { fmt_real(v.re) } else { fmt_complex(*v) });
    }
    let mut summary = json!({ "command": "invert", "N": n, "n0": f.n0(), "hankel_norm": inv.product().norm });
    let mut pass = true;
    if g.check_oracle {
        let dense = dense_invert(&ToeplitzMatrix::build(sym, n))?;
        let err = cells.iter().map(|(k, l, v)| (v - dense[(*k, *l)]).norm()).fold(0.0, f64::max);
        summary["oracle_error"] = json!(err);
        pass = err <= g.tol;
    }
    Ok(Report { csv, summary, pass })
}

fn decay_summary(r: &DecayReport) -> Value {
    json!({
        "command": "decay",
        "N": r.n,
        "window": [r.window.0, r.window.1],
        "dropped": r.dropped,
        "slope": r.slope,
        "target": r.target,
        "C": r.constant,
        "exact_band": r.exact_band,
        "oracle_error": r.oracle_error,
        "approx_degree": r.approx_degree,
    })
}

fn decay(sym: &TrigSymbol, g: &GlobalArgs, rho: Option<f64>) -> Result<Report, Failure> {
    let n = require_n(g)?;
    let r = match rho {
        Some(rho) => {
            if !(rho > 1.0) {
                return Err(Failure::Usage("--rho must exceed 1".into()));
            }
            let reg = RegularSymbol::from_symbol(sym.clone(), (1.0 / rho, rho))?;
            corollary_decay_check(&reg, n, rho)?
        }
        None => band_decay_report(&BandSymbol::new(sym.clone())?, n)?,
    };
    let mut csv = String::from("d,M\n");
    for (d, m) in r.offsets.iter().enumerate() {
        let _ = writeln!(csv, "{d},{}", fmt_real(*m));
    }
    let mut pass = r.pass;
    if g.check_oracle {
        if let Some(e) = r.oracle_error {
            pass &= e <= g.tol;
        }
    }
    Ok(Report { csv, summary: decay_summary(&r), pass })
}

fn predictor(sym: &TrigSymbol, m: usize, lemma1: Option<&[usize]>) -> Result<Report, Failure> {
    let p = levinson(sym, m)?;
    let b = inverse_outer_coeffs(sym, m + 1)?;
    let mut csv = String::from("u,beta,limit,err\n");
    for (u, beta) in p.coeffs.iter().enumerate() {
        let lim = lemma1_limit(&b, u);
        let _ = writeln!(csv, "{u},{},{},{}", fmt_complex(*beta), fmt_complex(lim), fmt_real((beta - lim).norm()));
    }
    let mut summary = json!({
        "command": "predictor",
        "M": m,
        "error_variance": p.error_variance,
    });
    let mut pass = true;
    if let Some(ns) = lemma1 {
        if ns.is_empty() {
            return Err(Failure::Usage("--lemma1 needs at least one size".into()));
        }
        let len = ns.iter().copied().max().unwrap_or(0) + 1;
        let b = inverse_outer_coeffs(sym, len)?;
        let rep = lemma1_rate(sym, &b, ns)?;
        pass = rep.monotone;
        summary["lemma1"] = json!({
            "rows": rep.rows.iter().map(|(n, e)| json!({ "N": n, "err": e })).collect::<Vec<_>>(),
            "slope": rep.slope,
            "monotone": rep.monotone,
        });
    }
    Ok(Report { csv, summary, pass })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_parsing() {
        assert_eq!(parse_pair("3, 4"), Ok((3, 4)));
        assert!(parse_pair("3").is_err());
    }

    #[test]
    fn missing_n_is_usage_error() {
        let code = run(["toeplitz-spectra", "decay", "--symbol", r#"{"cosine":[1.25,-1]}"#]);
        assert_eq!(code, 1);
    }

    #[test]
    fn malformed_symbol_is_usage_error() {
        let code = run(["toeplitz-spectra", "factor", "--symbol", "{\"cosine\": [1,"]);
        assert_eq!(code, 1);
    }
}
