//! The `huabell` command line: argument parsing and the five subcommands.
//!
//! Every subcommand produces a [`RunReport`]; exit codes are 0 on success,
//! 1 for invalid input, 2 for numerical failures, 3 when a verification suite fails.

mod io;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::kernel::{
    bellman_counterexample_replay, build_hua_bellman, counterexample_search, CounterexampleRecord, SearchConfig,
    COUNTEREXAMPLE_TOL, PSD_REL_TOL,
};
use crate::matrix::{as_contraction, ComplexMatrix, Contraction, HermitianMatrix, C64, DEFAULT_MARGIN};
use crate::metric::{delta_p_sq, diagonal_cayley_klein_sq, hua_distance_sq, s_divergence};
use crate::perm::{alpha_permanent, exponent_admissible, macmahon_closed_form, macmahon_partial_sums, per_via_immanants};
use crate::verify::{run_suite, Suite, VerifyConfig};
use crate::Field;

pub use io::{read_matrix_files, write_matrix_file, MatrixFile, RunReport, Runtime};

pub const TOOL: &str = "huabell";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Direct,
    Immanant,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Replay,
    Search,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MetricKind {
    Hua,
    Sdiv,
    Deltap,
}

#[derive(Debug, Parser)]
#[command(name = TOOL, version, about = "Alpha-permanents, Hua-Bellman kernels and log-determinant distances")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Worker threads; defaults to all cores.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// α-permanent of one square matrix, optionally with the series `det(I - XA)^{-α}`.
    Perm {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        alpha: C64,
        #[arg(long, value_enum, default_value_t = Method::Direct)]
        method: Method,
        /// Truncation order for the series; requires --weights.
        #[arg(long, requires = "weights")]
        order: Option<usize>,
        /// Comma-separated complex diagonal of X.
        #[arg(long, value_delimiter = ',', value_parser = parse_complex, allow_hyphen_values = true)]
        weights: Option<Vec<C64>>,
    },
    /// Gram matrix `[det(I - A_i^*A_j)^{-α}]` of the input contractions and its definiteness.
    Kernel {
        #[arg(long, required = true)]
        input: Vec<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, value_enum, default_value_t = Field::Complex)]
        field: Field,
        /// Relative eigenvalue tolerance, scaled by the trace.
        #[arg(long, default_value_t = PSD_REL_TOL)]
        tol: f64,
    },
    /// Replay the six-matrix instance or search for more.
    Counterexample {
        #[arg(long, value_enum, default_value_t = Mode::Replay)]
        mode: Mode,
        #[arg(long, default_value_t = 8)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, default_value_t = 10)]
        bound: i64,
        #[arg(long, default_value_t = 0.5)]
        norm: f64,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = COUNTEREXAMPLE_TOL)]
        tol: f64,
    },
    /// Distance between two matrices.
    Distance {
        #[arg(long, num_args = 1, required = true)]
        input: Vec<PathBuf>,
        #[arg(long, value_enum, default_value_t = MetricKind::Hua)]
        metric: MetricKind,
        #[arg(long)]
        p: Option<f64>,
    },
    /// Seeded property suites.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: u64,
        /// Extra exponent for the pd suite, asserted only where admissible.
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<f64>,
        #[arg(long, value_enum, default_value_t = Field::Complex)]
        field: Field,
    },
}

/// Parses `a`, `bi`, `a+bi` or `a-bi` (`j` also accepted).
pub fn parse_complex(text: &str) -> std::result::Result<C64, String> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("cannot parse `{text}` as a complex number");
    let Some(body) = s.strip_suffix(['i', 'j']) else {
        return s.parse::<f64>().map(|re| C64::new(re, 0.0)).map_err(|_| bad());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len()).rev().find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        other => other,
    };
    let re = re.parse::<f64>().map_err(|_| bad())?;
    let im = im.parse::<f64>().map_err(|_| bad())?;
    Ok(C64::new(re, im))
}

fn pair(z: C64) -> Value {
    json!([z.re, z.im])
}

fn load_matrices(paths: &[PathBuf]) -> Result<Vec<(String, ComplexMatrix)>> {
    let mut out = Vec::new();
    for path in paths {
        for (k, file) in read_matrix_files(path)?.into_iter().enumerate() {
            let label = file.name.clone().unwrap_or_else(|| format!("{}#{k}", path.display()));
            out.push((label, file.to_matrix()?));
        }
    }
    Ok(out)
}

fn contraction(label: &str, m: ComplexMatrix) -> Result<Contraction> {
    as_contraction(m, DEFAULT_MARGIN).map_err(|e| Error::validation(format!("{label}: {e}")))
}

fn paths_value(paths: &[PathBuf]) -> Value {
    json!(paths.iter().map(|p| p.display().to_string()).collect::<Vec<_>>())
}

fn record_value(record: &CounterexampleRecord) -> Value {
    json!({
        "alpha": record.alpha,
        "min_eigenvalue": record.min_eigenvalue,
        "tolerance": record.tolerance,
        "seed": record.origin.map(|o| o.seed),
        "trial": record.origin.map(|o| o.trial),
        "matrices": record.matrices.iter().map(|m| MatrixFile::from_matrix(m, None)).collect::<Vec<_>>(),
    })
}

/// A report plus the process exit code it implies.
pub struct Outcome {
    pub report: RunReport,
    pub exit_code: i32,
    /// Printed to standard error when the exit code is nonzero.
    pub message: Option<String>,
}

struct Body {
    command: &'static str,
    parameters: BTreeMap<String, Value>,
    seed: Option<u64>,
    results: Value,
    failure: Option<Error>,
}

fn params(pairs: impl IntoIterator<Item = (&'static str, Value)>) -> BTreeMap<String, Value> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

/// Runs one parsed command line.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    let start = Instant::now();
    let workers = cli.output.workers;
    let body = crate::parallel::with_workers(workers, || run_command(&cli.command, workers))??;
    let report = RunReport {
        tool: TOOL.to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        command: body.command.to_string(),
        parameters: body.parameters,
        seed: body.seed,
        results: body.results,
        runtime: Runtime {
            workers: workers.unwrap_or_else(rayon::current_num_threads),
            wall_time_seconds: start.elapsed().as_secs_f64(),
        },
    };
    let (exit_code, message) = match body.failure {
        Some(e) => (e.exit_code(), Some(e.to_string())),
        None => (0, None),
    };
    Ok(Outcome { report, exit_code, message })
}

/// Parses `args`, runs the command and writes the report; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let outcome = execute(&cli).and_then(|o| {
        o.report.write(cli.output.format, cli.output.output.as_deref())?;
        Ok(o)
    });
    match outcome {
        Ok(o) => {
            if let Some(msg) = o.message {
                eprintln!("{TOOL}: {msg}");
            }
            o.exit_code
        }
        Err(e) => {
            eprintln!("{TOOL}: {e}");
            e.exit_code()
        }
    }
}

fn run_command(command: &Command, workers: Option<usize>) -> Result<Body> {
    match command {
        Command::Perm { input, alpha, method, order, weights } => cmd_perm(input, *alpha, *method, *order, weights.as_deref()),
        Command::Kernel { input, alpha, field, tol } => cmd_kernel(input, *alpha, *field, *tol),
        Command::Counterexample { mode, m, n, alpha, bound, norm, trials, seed, tol } => {
            let mut cfg = SearchConfig::new(*m, *n, *alpha, *trials, *seed);
            cfg.entry_bound = *bound;
            cfg.target_norm = *norm;
            cfg.tolerance = *tol;
            cfg.workers = workers;
            cmd_counterexample(*mode, &cfg)
        }
        Command::Distance { input, metric, p } => cmd_distance(input, *metric, *p),
        Command::Verify { suite, seed, count, alpha, field } => {
            let mut cfg = VerifyConfig::new(*seed, *count);
            cfg.workers = workers;
            cfg.alpha = *alpha;
            cfg.field = *field;
            cmd_verify(*suite, &cfg)
        }
    }
}

fn cmd_perm(input: &Path, alpha: C64, method: Method, order: Option<usize>, weights: Option<&[C64]>) -> Result<Body> {
    let matrices = load_matrices(&[input.to_path_buf()])?;
    let [(_, a)] = <[_; 1]>::try_from(matrices).map_err(|_| Error::validation("perm expects exactly one matrix"))?;
    a.require_square("perm input")?;

    let mut results = serde_json::Map::new();
    let direct = matches!(method, Method::Direct | Method::Both).then(|| alpha_permanent(&a, alpha)).transpose()?;
    let via = matches!(method, Method::Immanant | Method::Both).then(|| per_via_immanants(&a, alpha)).transpose()?;
    let value = direct.or(via).expect("at least one method runs");
    results.insert("value".into(), pair(value));
    if let (Some(d), Some(v)) = (direct, via) {
        results.insert("immanant_value".into(), pair(v));
        results.insert("residual".into(), json!((d - v).norm() / d.norm().max(v.norm()).max(f64::MIN_POSITIVE)));
    }
    let mut parameters = params([
        ("input", json!(input.display().to_string())),
        ("alpha", pair(alpha)),
        ("method", json!(format!("{method:?}").to_lowercase())),
    ]);
    if let (Some(order), Some(x)) = (order, weights) {
        let sums = macmahon_partial_sums(&a, x, alpha, order)?;
        let exact = macmahon_closed_form(&a, x, alpha)?;
        results.insert(
            "series".into(),
            json!({
                "closed_form": pair(exact),
                "partial_sums": sums.iter().map(|&s| pair(s)).collect::<Vec<_>>(),
                "errors": sums.iter().map(|s| (s - exact).norm()).collect::<Vec<_>>(),
            }),
        );
        parameters.insert("order".into(), json!(order));
        parameters.insert("weights".into(), json!(x.iter().map(|&z| pair(z)).collect::<Vec<_>>()));
    }
    Ok(Body { command: "perm", parameters, seed: None, results: Value::Object(results), failure: None })
}

fn cmd_kernel(inputs: &[PathBuf], alpha: f64, field: Field, tol: f64) -> Result<Body> {
    let loaded = load_matrices(inputs)?;
    let matrices = loaded.into_iter().map(|(label, m)| contraction(&label, m)).collect::<Result<Vec<_>>>()?;
    let h = build_hua_bellman(&matrices, alpha, field)?;
    let report = h.pd_check(tol)?;
    let n = matrices[0].order();
    let results = json!({
        "size": h.size(),
        "order": n,
        "entries": MatrixFile::from_matrix(h.gram(), Some("H_alpha".into())),
        "min_eigenvalue": report.min_eigenvalue,
        "tolerance": report.tolerance,
        "verdict": report.verdict,
        "fingerprint": report.fingerprint,
        "admissible": exponent_admissible(alpha, n, field),
    });
    let parameters = params([
        ("input", paths_value(inputs)),
        ("alpha", json!(alpha)),
        ("field", json!(field)),
        ("tol", json!(tol)),
    ]);
    Ok(Body { command: "kernel", parameters, seed: None, results, failure: None })
}

fn cmd_counterexample(mode: Mode, cfg: &SearchConfig) -> Result<Body> {
    match mode {
        Mode::Replay => {
            let record = bellman_counterexample_replay()?;
            Ok(Body {
                command: "counterexample",
                parameters: params([("mode", json!("replay"))]),
                seed: None,
                results: json!({ "records": [record_value(&record)] }),
                failure: None,
            })
        }
        Mode::Search => {
            let outcome = counterexample_search(cfg)?;
            let results = json!({
                "records": outcome.records.iter().map(record_value).collect::<Vec<_>>(),
                "summary": {
                    "trials": cfg.trials,
                    "violations": outcome.records.len(),
                    "min_eigenvalue": outcome.min(),
                    "median_eigenvalue": outcome.median(),
                },
            });
            let parameters = params([
                ("mode", json!("search")),
                ("m", json!(cfg.count)),
                ("n", json!(cfg.n)),
                ("alpha", json!(cfg.alpha)),
                ("bound", json!(cfg.entry_bound)),
                ("norm", json!(cfg.target_norm)),
                ("trials", json!(cfg.trials)),
                ("tol", json!(cfg.tolerance)),
            ]);
            Ok(Body { command: "counterexample", parameters, seed: Some(cfg.seed), results, failure: None })
        }
    }
}

fn is_diagonal(m: &ComplexMatrix) -> bool {
    (0..m.nrows()).all(|i| (0..m.ncols()).all(|j| i == j || m[(i, j)] == C64::new(0.0, 0.0)))
}

fn cmd_distance(inputs: &[PathBuf], metric: MetricKind, p: Option<f64>) -> Result<Body> {
    let loaded = load_matrices(inputs)?;
    let [(la, a), (lb, b)] =
        <[_; 2]>::try_from(loaded).map_err(|_| Error::validation("distance expects exactly two matrices"))?;
    let mut results = serde_json::Map::new();
    let value = match metric {
        MetricKind::Hua => {
            let (ca, cb) = (contraction(&la, a.clone())?, contraction(&lb, b.clone())?);
            let value = hua_distance_sq(&ca, &cb)?;
            if is_diagonal(&a) && is_diagonal(&b) {
                let (x, y): (Vec<C64>, Vec<C64>) = (0..a.nrows()).map(|k| (a[(k, k)], b[(k, k)])).unzip();
                results.insert("cayley_klein_squared".into(), json!(diagonal_cayley_klein_sq(&x, &y)?));
            }
            value
        }
        MetricKind::Sdiv => {
            let herm = |label: &str, m: ComplexMatrix| {
                HermitianMatrix::new(m).map_err(|e| Error::validation(format!("{label}: {e}")))
            };
            s_divergence(&herm(&la, a)?, &herm(&lb, b)?).map_err(|e| match e {
                Error::Validation(msg) => Error::Validation(format!("Hermitian positive definite input required: {msg}")),
                other => other,
            })?
        }
        MetricKind::Deltap => {
            let p = p.ok_or_else(|| Error::validation("--p is required for deltap"))?;
            delta_p_sq(&a, &b, p)?
        }
    };
    results.insert("squared".into(), json!(value.squared));
    results.insert("value".into(), json!(value.value));
    let mut parameters = params([
        ("input", paths_value(inputs)),
        ("metric", json!(format!("{metric:?}").to_lowercase())),
    ]);
    if let Some(p) = p {
        parameters.insert("p".into(), json!(p));
    }
    Ok(Body { command: "distance", parameters, seed: None, results: Value::Object(results), failure: None })
}

fn cmd_verify(suite: Suite, cfg: &VerifyConfig) -> Result<Body> {
    let reports = run_suite(suite, cfg)?;
    let failed: Vec<String> = reports.iter().filter(|r| !r.passed).map(|r| r.suite.to_string()).collect();
    let failure = (!failed.is_empty()).then(|| Error::Verification(failed.join(", ")));
    let mut parameters = params([("suite", json!(suite)), ("count", json!(cfg.count))]);
    if let Some(alpha) = cfg.alpha {
        parameters.insert("alpha".into(), json!(alpha));
        parameters.insert("field".into(), json!(cfg.field));
    }
    Ok(Body {
        command: "verify",
        parameters,
        seed: Some(cfg.seed),
        results: json!({ "passed": failed.is_empty(), "suites": reports }),
        failure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_parser() {
        let ok = |s: &str, re: f64, im: f64| assert_eq!(parse_complex(s).unwrap(), C64::new(re, im), "{s}");
        ok("3", 3.0, 0.0);
        ok("-1.5", -1.5, 0.0);
        ok("0.5+1i", 0.5, 1.0);
        ok("2-3i", 2.0, -3.0);
        ok("i", 0.0, 1.0);
        ok("-i", 0.0, -1.0);
        ok("2.5j", 0.0, 2.5);
        ok("1e-3+2e-1i", 1e-3, 0.2);
        ok("-1e+2-4.5e-1i", -100.0, -0.45);
        ok(" 1 + 2i ", 1.0, 2.0);
        for bad in ["", "abc", "1+2", "1+i+i", "--1i"] {
            assert!(parse_complex(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn replay_report_is_reproducible() {
        let cli = Cli::try_parse_from([TOOL, "counterexample", "--mode", "replay"]).unwrap();
        let a = execute(&cli).unwrap();
        let b = execute(&cli).unwrap();
        assert_eq!(a.exit_code, 0);
        assert_eq!(a.report.reproducible_json(), b.report.reproducible_json());
        let lambda = a.report.results["records"][0]["min_eigenvalue"].as_f64().unwrap();
        assert!((lambda + 1.2066e-3).abs() <= 1e-7);
    }
}
