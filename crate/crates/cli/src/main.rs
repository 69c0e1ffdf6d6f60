//! `fockseries`: correlators, q-traces and tau functions on demand, and the
//! exact verification suites.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 usage or domain error,
//! 3 a result does not fit the requested window.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fockseries::correlators::{Correlators, GMethod, Method};
use fockseries::toda::{self, TauRequest};
use fockseries::traces::{self, TraceOp, TraceRequest};
use fockseries::verify::{self, Suite};
use fockseries::{Error, Partition, Series, VarSpec, Window};
use serde_json::json;

#[derive(Parser, Debug)]
#[command(
    name = "fockseries",
    version,
    about = "Exact series calculus on the Fock space of partitions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// key=value file supplying defaults for any flag; flags win.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Accepted and ignored: every computation is deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// F• and G for a pair of partitions.
    Npoint(NpointArgs),
    /// q-trace of a product of ε0 or 𝔊 factors.
    Trace(TraceArgs),
    /// The tau function τ(x, t, s, m).
    Tau(TauArgs),
    /// Run verification suites; exit 0 iff every identity holds.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TraceMethod {
    /// Σ_λ q^|λ| Π eigenvalues.
    Direct,
    /// Determinant formula (ε0) or the trace theorem (𝔊).
    Formula,
}

#[derive(Args, Debug)]
struct NpointArgs {
    #[arg(long)]
    lambda: Option<String>,
    #[arg(long)]
    mu: Option<String>,
    /// Number of points N.
    #[arg(long)]
    points: Option<usize>,
    #[arg(long)]
    z_order: Option<u32>,
    /// Pole order kept for F•; at least N.
    #[arg(long)]
    z_pole: Option<u32>,
}

#[derive(Args, Debug)]
struct TraceArgs {
    /// Comma-separated factors, each `chern` or `epsilon0`; a single kind is
    /// repeated `--points` times.
    #[arg(long)]
    factors: Option<String>,
    #[arg(long)]
    points: Option<usize>,
    #[arg(long)]
    q_order: Option<u32>,
    #[arg(long)]
    z_order: Option<u32>,
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long, value_enum)]
    method: Option<TraceMethod>,
}

#[derive(Args, Debug)]
struct TauArgs {
    #[arg(long, allow_negative_numbers = true)]
    m: Option<i64>,
    #[arg(long = "K")]
    k: Option<u32>,
    #[arg(long)]
    total_degree: Option<u32>,
    #[arg(long)]
    n_max: Option<usize>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    suite: Option<String>,
    #[arg(long)]
    max_n: Option<usize>,
}

enum Failure {
    Usage(String),
    Core(Error),
    Verify(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Out = Result<String, Failure>;

/// Flag values from the `--config` file.
#[derive(Default)]
struct Config(BTreeMap<String, String>);

impl Config {
    fn load(path: Option<&PathBuf>) -> Result<Config, Failure> {
        let Some(path) = path else {
            return Ok(Config::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        let table: toml::Table = toml::from_str(&text)
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        let mut out = BTreeMap::new();
        for (k, v) in table {
            let s = match v {
                toml::Value::String(s) => s,
                toml::Value::Integer(i) => i.to_string(),
                toml::Value::Array(a) => a
                    .iter()
                    .map(|x| x.to_string().trim_matches('"').to_string())
                    .collect::<Vec<_>>()
                    .join(","),
                other => other.to_string(),
            };
            out.insert(k.replace('_', "-"), s);
        }
        Ok(Config(out))
    }

    /// `flag`, else the config entry `key`, else `default`.
    fn get<T: std::str::FromStr>(
        &self,
        flag: Option<T>,
        key: &str,
        default: Option<T>,
    ) -> Result<T, Failure> {
        if let Some(v) = flag {
            return Ok(v);
        }
        if let Some(s) = self.0.get(key) {
            return s
                .parse()
                .map_err(|_| Failure::Usage(format!("config: invalid value {s:?} for {key}")));
        }
        default.ok_or_else(|| Failure::Usage(format!("missing --{key}")))
    }
}

fn positive<T: PartialOrd + Default + std::fmt::Display>(v: T, key: &str) -> Result<T, Failure> {
    if v <= T::default() {
        return Err(Failure::Usage(format!("--{key} must be positive, got {v}")));
    }
    Ok(v)
}

fn partition(s: &str, key: &str) -> Result<Partition, Failure> {
    s.parse()
        .map_err(|e: Error| Failure::Usage(format!("--{key}: {e}")))
}

fn point_names(n: usize) -> Vec<String> {
    if n == 1 {
        vec!["z".into()]
    } else {
        (1..=n).map(|i| format!("z{i}")).collect()
    }
}

fn csv(s: &Series) -> String {
    let mut out = String::from("exponent_vector,value\n");
    for (e, c) in s.terms() {
        let e: Vec<String> = e.iter().map(|x| x.to_string()).collect();
        out.push_str(&format!("{},{c}\n", e.join("|")));
    }
    out
}

fn series_json(s: &Series) -> serde_json::Value {
    serde_json::to_value(s).expect("series serialize")
}

fn render(format: Format, json: serde_json::Value, table: &Series) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(&json).expect("json") + "\n",
        Format::Csv => csv(table),
    }
}

fn npoint(a: &NpointArgs, cfg: &Config, format: Format) -> Out {
    let lambda = partition(&cfg.get(a.lambda.clone(), "lambda", None)?, "lambda")?;
    let mu = partition(&cfg.get(a.mu.clone(), "mu", None)?, "mu")?;
    let n = positive(cfg.get(a.points, "points", Some(1))?, "points")?;
    let order = positive(cfg.get(a.z_order, "z-order", Some(8))?, "z-order")?;
    let pole = positive(cfg.get(a.z_pole, "z-pole", Some(n as u32))?, "z-pole")?;
    let names = point_names(n);
    let vars: Vec<&str> = names.iter().map(String::as_str).collect();
    let w = Window::new(
        vars.iter()
            .map(|v| VarSpec::laurent(*v, pole, order))
            .collect(),
    )?;
    let c = Correlators::new(&w, &vars)?;
    let f = c.f_bullet(&lambda, &mu, &vars, Method::Diagonal)?;
    let g = c.g_npoint(&lambda, &mu, &vars, GMethod::Direct)?;
    let j = json!({
        "lambda": lambda.parts(),
        "mu": mu.parts(),
        "points": n,
        "F": series_json(&f),
        "G": series_json(&g),
    });
    Ok(render(format, j, &g))
}

fn trace(a: &TraceArgs, cfg: &Config, format: Format) -> Out {
    let spec = cfg.get(a.factors.clone(), "factors", Some("chern".into()))?;
    let kinds = spec
        .split(',')
        .map(|s| match s.trim() {
            "chern" => Ok(TraceOp::Chern),
            "epsilon0" => Ok(TraceOp::Epsilon0),
            other => Err(Failure::Usage(format!(
                "--factors: unknown factor {other:?}"
            ))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    let n = match (a.points.or(cfg.get(None, "points", None).ok()), kinds.len()) {
        (Some(p), 1) => positive(p, "points")?,
        (Some(p), k) if p != k => {
            return Err(Failure::Usage(format!("--points {p} but {k} factors")))
        }
        (_, k) => k,
    };
    let kinds: Vec<TraceOp> = if kinds.len() == 1 {
        vec![kinds[0]; n]
    } else {
        kinds
    };
    let q_order = positive(cfg.get(a.q_order, "q-order", Some(4))?, "q-order")?;
    let z_order = positive(cfg.get(a.z_order, "z-order", Some(4))?, "z-order")?;
    let n_max = positive(cfg.get(a.n_max, "n-max", Some(q_order as usize))?, "n-max")?;
    let method = match a.method {
        Some(m) => m,
        None => match cfg.0.get("method").map(String::as_str) {
            None | Some("direct") => TraceMethod::Direct,
            Some("formula") => TraceMethod::Formula,
            Some(other) => return Err(Failure::Usage(format!("config: unknown method {other:?}"))),
        },
    };
    let names = point_names(n);
    let mut vars: Vec<VarSpec> = names
        .iter()
        .zip(&kinds)
        .map(|(v, k)| VarSpec::laurent(v.clone(), u32::from(*k == TraceOp::Epsilon0), z_order))
        .collect();
    vars.push(VarSpec::taylor("q", q_order));
    let w: Arc<Window> = Window::new(vars)?;
    let req = TraceRequest {
        factors: names
            .iter()
            .cloned()
            .zip(&kinds)
            .map(|(v, k)| (*k, v))
            .collect(),
        q: "q".into(),
        n_max,
    };
    let zs: Vec<&str> = names.iter().map(String::as_str).collect();
    let s = match method {
        TraceMethod::Direct => traces::q_trace(&req, &w)?,
        TraceMethod::Formula if kinds.iter().all(|k| *k == TraceOp::Epsilon0) => {
            traces::bloch_okounkov_rhs(&zs, "q", &w)?
        }
        TraceMethod::Formula if kinds.iter().all(|k| *k == TraceOp::Chern) => {
            traces::trace_theorem_rhs(&zs, "q", &w)?
        }
        TraceMethod::Formula => {
            return Err(Failure::Usage(
                "--method formula needs factors of one kind".into(),
            ))
        }
    };
    Ok(render(format, series_json(&s), &s))
}

fn tau(a: &TauArgs, cfg: &Config, format: Format) -> Out {
    let m = cfg.get(a.m, "m", Some(0))?;
    let k = positive(cfg.get(a.k, "K", Some(1))?, "K")?;
    let d = positive(
        cfg.get(a.total_degree, "total-degree", Some(2))?,
        "total-degree",
    )?;
    let n_max = positive(cfg.get(a.n_max, "n-max", Some(d as usize))?, "n-max")?;
    let s = toda::tau(&TauRequest {
        m,
        k,
        total_degree: d,
        n_max,
    })?;
    Ok(render(format, series_json(&s), &s))
}

fn run_verify(a: &VerifyArgs, cfg: &Config, format: Format) -> Out {
    let suite: Suite = cfg
        .get(a.suite.clone(), "suite", Some("all".into()))?
        .parse()
        .map_err(|e: Error| Failure::Usage(e.to_string()))?;
    let max_n = positive(cfg.get(a.max_n, "max-n", Some(6))?, "max-n")?;
    let checks = verify::run_suite(suite, max_n);
    let ok = checks.iter().all(|c| c.passed());
    let text = match format {
        Format::Json => {
            let rows: Vec<_> = checks
                .iter()
                .map(|c| {
                    json!({
                        "module": c.module,
                        "identity": c.identity,
                        "pass": c.passed(),
                        "mismatch": c.failure.as_ref().map(|m| json!({"at": m.at, "left": m.left, "right": m.right})),
                        "error": c.error,
                    })
                })
                .collect();
            serde_json::to_string_pretty(&rows).expect("json") + "\n"
        }
        Format::Csv => {
            let mut out = String::from("module,identity,pass\n");
            for c in &checks {
                out.push_str(&format!(
                    "{},\"{}\",{}\n",
                    c.module,
                    c.identity.replace('"', "\"\""),
                    c.passed()
                ));
            }
            out
        }
    };
    if ok {
        Ok(text)
    } else {
        let failed: Vec<String> = checks
            .iter()
            .filter(|c| !c.passed())
            .map(|c| c.to_string())
            .collect();
        print!("{text}");
        Err(Failure::Verify(failed.join("\n")))
    }
}

fn run(cli: &Cli) -> Out {
    let cfg = Config::load(cli.config.as_ref())?;
    let format = match cli.format {
        Some(f) => f,
        None => match cfg.0.get("format").map(String::as_str) {
            None | Some("json") => Format::Json,
            Some("csv") => Format::Csv,
            Some(other) => return Err(Failure::Usage(format!("config: unknown format {other:?}"))),
        },
    };
    match &cli.command {
        Command::Npoint(a) => npoint(a, &cfg, format),
        Command::Trace(a) => trace(a, &cfg, format),
        Command::Tau(a) => tau(a, &cfg, format),
        Command::Verify(a) => run_verify(a, &cfg, format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Verify(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Core(e)) => {
            let kind = match &e {
                Error::Window(_) => "window",
                Error::Domain(_) => "domain",
                Error::Parse(_) => "parse",
                Error::Structural(_) => "structural",
                Error::Division(_) => "division",
                Error::Normalization(_) => "normalization",
            };
            eprintln!("{}", json!({ "error": kind, "message": e.to_string() }));
            match e {
                Error::Window(_) => ExitCode::from(3),
                Error::Domain(_) | Error::Parse(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
