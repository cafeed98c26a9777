//! Batch front-end for `sl2harm`: evaluation, table export and verification
//! suites with JSON reports.

pub mod config;
pub mod suites;

use std::fs;
use std::io::Write;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sl2harm::adjunction::{plancherel_density, Parity};
use sl2harm::intertwiners::{c_function, CFunctionTable};
use sl2harm::models::MuGrid;
use sl2harm::{group_norm, xi_value, GroupElement, QuadratureScheme, Side, C64};

use config::{Overrides, RawConfig, SuiteConfig};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("config: {0}")]
    Config(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Core(#[from] sl2harm::Error),
}

impl CliError {
    /// Process exit status: 2 for usage and configuration errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Config(_) => 2,
            CliError::Io(_) | CliError::Core(_) => 3,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "sl2harm", version, about = "Harmonic analysis on SL(2,R): evaluation, tables and verification")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate an object at given parameters and print CSV rows.
    Eval(EvalArgs),
    /// Run a verification suite and write a JSON report.
    Verify(VerifyArgs),
    /// Export a table as CSV.
    Table(TableArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Object {
    Xi,
    CFunction,
    Plancherel,
    Norm,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SideArg {
    Plus,
    Minus,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Self {
        match s {
            SideArg::Plus => Side::Upper,
            SideArg::Minus => Side::Lower,
        }
    }
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    pub object: Object,
    /// Comma-separated `t` values for `xi`.
    #[arg(long)]
    pub t: Option<String>,
    #[arg(long, value_enum, default_value = "plus")]
    pub side: SideArg,
    /// Comma-separated K-types for `c-function`.
    #[arg(long, allow_hyphen_values = true)]
    pub j: Option<String>,
    /// Comma-separated real spectral parameters.
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<String>,
    /// `even` or `odd` for `plancherel`.
    #[arg(long, default_value = "even")]
    pub parity: String,
    /// Matrix entries `a,b,c,d` for `norm`.
    #[arg(long, allow_hyphen_values = true)]
    pub g: Option<String>,
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// group-core, frobenius, intertwiner, wave-packet, second-adjoint or all.
    pub suite: String,
    #[arg(long)]
    pub config: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub tolerance_scale: Option<f64>,
    #[arg(long)]
    pub out: Option<String>,
    /// Reduced quadrature and Fourier grids.
    #[arg(long)]
    pub coarse: bool,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// `c-table` or `plancherel-table`.
    pub name: String,
    /// Parity for `plancherel-table`.
    pub parity: Option<String>,
    #[arg(long, default_value_t = 4)]
    pub jmax: usize,
    #[arg(long, default_value_t = 5.0)]
    pub mu_max: f64,
    #[arg(long, default_value_t = 0.5)]
    pub dmu: f64,
    #[arg(long, value_enum, default_value = "plus")]
    pub side: SideArg,
    #[arg(long)]
    pub out: Option<String>,
}

fn list<T: FromStr>(flag: &str, v: &Option<String>) -> Result<Vec<T>, CliError> {
    let v = v.as_deref().ok_or_else(|| CliError::Usage(format!("--{flag} is required")))?;
    let items: Result<Vec<T>, _> = v.split(',').map(|s| s.trim().parse()).collect();
    match items {
        Ok(xs) if !xs.is_empty() => Ok(xs),
        _ => Err(CliError::Usage(format!("--{flag}: cannot parse {v:?}"))),
    }
}

fn emit(out: &Option<String>, bytes: &[u8], stdout: &mut dyn Write) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, bytes)?,
        None => stdout.write_all(bytes)?,
    }
    Ok(())
}

fn csv_bytes(header: &[&str], rows: &[Vec<String>]) -> Result<Vec<u8>, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| CliError::Io(std::io::Error::other(e.to_string()));
    w.write_record(header).map_err(err)?;
    for r in rows {
        w.write_record(r).map_err(err)?;
    }
    w.into_inner().map_err(|e| CliError::Io(std::io::Error::other(e.to_string())))
}

fn parity(s: &str) -> Result<Parity, CliError> {
    Parity::from_str(s).map_err(|e| CliError::Usage(e.to_string()))
}

pub fn cmd_eval(a: &EvalArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let scheme = QuadratureScheme::default();
    let (header, rows): (Vec<&str>, Vec<Vec<String>>) = match a.object {
        Object::Xi => (
            vec!["t", "xi"],
            list::<f64>("t", &a.t)?
                .into_iter()
                .map(|t| vec![t.to_string(), xi_value(&GroupElement::a(t), &scheme).to_string()])
                .collect(),
        ),
        Object::CFunction => {
            let side = Side::from(a.side);
            let tag = match side {
                Side::Upper => "plus",
                Side::Lower => "minus",
            };
            let mut rows = Vec::new();
            for j in list::<i32>("j", &a.j)? {
                for mu in list::<f64>("mu", &a.mu)? {
                    let (re, im, pole) = match c_function(side, j, C64::from(mu)) {
                        Ok(c) => (c.re.to_string(), c.im.to_string(), "0"),
                        Err(sl2harm::Error::CFunctionPole { .. }) => ("nan".into(), "nan".into(), "1"),
                        Err(e) => return Err(e.into()),
                    };
                    rows.push(vec![tag.to_string(), j.to_string(), mu.to_string(), re, im, pole.into()]);
                }
            }
            (vec!["side", "j", "mu", "re", "im", "pole"], rows)
        }
        Object::Plancherel => {
            let p = parity(&a.parity)?;
            (
                vec!["parity", "mu", "density"],
                list::<f64>("mu", &a.mu)?
                    .into_iter()
                    .map(|mu| vec![p.as_str().to_string(), mu.to_string(), plancherel_density(p, mu).to_string()])
                    .collect(),
            )
        }
        Object::Norm => {
            let e = list::<f64>("g", &a.g)?;
            let e: [f64; 4] = e
                .try_into()
                .map_err(|_| CliError::Usage("--g takes four entries a,b,c,d".into()))?;
            let g = GroupElement::new(e).map_err(|e| CliError::Usage(e.to_string()))?;
            (vec!["norm"], vec![vec![group_norm(&g).to_string()]])
        }
    };
    emit(&a.out, &csv_bytes(&header, &rows)?, stdout)
}

pub fn cmd_table(a: &TableArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    if !(a.dmu > 0.0 && a.mu_max > 0.0 && a.mu_max.is_finite()) {
        return Err(CliError::Usage("the mu grid is empty: need --dmu > 0 and --mu-max > 0".into()));
    }
    let bytes = match a.name.as_str() {
        "c-table" => {
            let grid = MuGrid::new(a.dmu, a.mu_max)?;
            let mut buf = Vec::new();
            CFunctionTable::build(Side::from(a.side), a.jmax, grid)?.write_csv(&mut buf)?;
            buf
        }
        "plancherel-table" => {
            let p = parity(a.parity.as_deref().unwrap_or("even"))?;
            let n = (a.mu_max / a.dmu).round() as usize;
            let rows: Vec<Vec<String>> = (0..=n)
                .map(|k| {
                    let mu = k as f64 * a.dmu;
                    vec![mu.to_string(), plancherel_density(p, mu).to_string()]
                })
                .collect();
            csv_bytes(&["mu", "density"], &rows)?
        }
        other => return Err(CliError::Usage(format!("unknown table {other:?}"))),
    };
    emit(&a.out, &bytes, stdout)
}

/// Runs a suite; returns whether every check passed.
pub fn cmd_verify(a: &VerifyArgs, stdout: &mut dyn Write) -> Result<bool, CliError> {
    let raw = match &a.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| CliError::Config(format!("{path}: {e}")))?;
            RawConfig::parse(&text)?
        }
        None => RawConfig::default(),
    };
    let flags = Overrides {
        seed: a.seed,
        tolerance_scale: a.tolerance_scale,
        out: a.out.clone(),
        coarse: a.coarse,
    };
    let cfg = SuiteConfig::resolve(&raw, &flags)?;
    let (report, pass) = suites::run_suite(&a.suite, &cfg)?;
    emit(&cfg.out, suites::render(&report).as_bytes(), stdout)?;
    Ok(pass)
}

/// Dispatches a parsed command and returns the process exit status.
pub fn run(cli: &Cli, stdout: &mut dyn Write) -> Result<i32, CliError> {
    match &cli.command {
        Command::Eval(a) => cmd_eval(a, stdout).map(|_| 0),
        Command::Table(a) => cmd_table(a, stdout).map(|_| 0),
        Command::Verify(a) => cmd_verify(a, stdout).map(|pass| if pass { 0 } else { 1 }),
    }
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;

    fn run_args(args: &[&str]) -> (Result<i32, CliError>, String) {
        let cli = Cli::try_parse_from(std::iter::once("sl2harm").chain(args.iter().copied())).unwrap();
        let mut out = Vec::new();
        let r = run(&cli, &mut out);
        (r, String::from_utf8(out).unwrap())
    }

    #[test]
    fn norm_of_a_diagonal_element() {
        let (r, out) = run_args(&["eval", "norm", "--g", "2,0,0,0.5"]);
        assert_eq!(r.unwrap(), 0);
        assert_eq!(out, "norm\n2\n");
    }

    #[test]
    fn odd_c_function_at_zero() {
        let (_, out) = run_args(&["eval", "c-function", "--side", "plus", "--j", "1", "--mu", "0"]);
        let row: Vec<&str> = out.lines().nth(1).unwrap().split(',').collect();
        assert!((row[3].parse::<f64>().unwrap() - PI).abs() < 1e-10);
        assert_eq!(row[5], "0");
    }

    #[test]
    fn malformed_parameters_are_usage_errors() {
        let (r, _) = run_args(&["eval", "norm", "--g", "1,2,3"]);
        assert_eq!(r.unwrap_err().exit_code(), 2);
        let (r, _) = run_args(&["eval", "xi", "--t", "a,b"]);
        assert_eq!(r.unwrap_err().exit_code(), 2);
        let (r, _) = run_args(&["table", "c-table", "--mu-max", "0"]);
        assert_eq!(r.unwrap_err().exit_code(), 2);
    }
}
