//! Command-line front end for reslab.
//!
//! [`run`] parses arguments, dispatches to the core library, and returns the
//! exit code together with everything that would be written to stdout and
//! stderr, so the binary and the tests share one code path. Expensive
//! results are memoized in a [`cache::Cache`].

pub mod cache;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use reslab_core::asymptotics::{self, explore_csv};
use reslab_core::{
    calculus, invariants, oracle, Arrangement, ContainmentEngine, ContainmentFact, ContainmentMatrix,
    FactLedger, Fraction, GammaCertificate, Limits, MonomialIdeal,
};

use crate::cache::{cache_key, Cache};

pub const DEFAULT_CACHE: &str = ".reslab-cache.jsonl";
pub const CACHE_ENV: &str = "RESLAB_CACHE";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] reslab_core::Error),
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("invalid JSON in {path}: {source}")]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_resource_guard() => 3,
            _ => 2,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Pairs,
    Points,
}

#[derive(Debug, Parser)]
#[command(
    name = "reslab",
    version,
    about = "Exact symbolic-power and resurgence toolkit"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    /// Cache file (default ./.reslab-cache.jsonl, or $RESLAB_CACHE).
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Disable the result cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Maximum generator pairs expanded in one ideal operation.
    #[arg(long, global = true)]
    guard: Option<u64>,
}

#[derive(Debug, Clone, Args)]
pub struct ArrangementArgs {
    /// Built-in family.
    #[arg(long, value_enum)]
    family: Option<Family>,
    /// Number of lines for `--family pairs`.
    #[arg(long)]
    s: Option<usize>,
    /// Projective dimension for `--family pairs`.
    #[arg(long = "N")]
    big_n: Option<usize>,
    /// Number of points for `--family points`.
    #[arg(long)]
    n: Option<usize>,
    /// Arrangement JSON file.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Minimal generators of a symbolic power.
    Symbolic {
        #[command(flatten)]
        arr: ArrangementArgs,
        #[arg(long)]
        m: u64,
    },
    /// Decide whether I^(m) lies in I^r.
    Containment {
        #[command(flatten)]
        arr: ArrangementArgs,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        r: u64,
    },
    /// Initial degree of one symbolic power, or a table up to --max-m.
    Alpha {
        #[command(flatten)]
        arr: ArrangementArgs,
        #[arg(long)]
        m: Option<u64>,
        #[arg(long)]
        max_m: Option<u64>,
    },
    /// Exact Waldschmidt constant with certificate, and optional window.
    Gamma {
        #[command(flatten)]
        arr: ArrangementArgs,
        #[arg(long)]
        max_m: Option<u64>,
    },
    /// Certified window for the asymptotic resurgence.
    Resurgence {
        #[command(flatten)]
        arr: ArrangementArgs,
    },
    /// Check I^(cm) = (I^(c))^m for m <= M and I^(c) inside I^b.
    Evidence {
        #[command(flatten)]
        arr: ArrangementArgs,
        #[arg(long)]
        c: u64,
        #[arg(long)]
        b: u64,
        #[arg(long)]
        max_m: u64,
    },
    /// Derive containments from a fact ledger.
    Derive {
        #[arg(long)]
        ledger: PathBuf,
        #[arg(long, conflicts_with = "bound", required_unless_present = "bound")]
        m: Option<u64>,
        #[arg(long)]
        bound: bool,
    },
    /// Closed-form calculators.
    Asymptotics {
        #[command(subcommand)]
        command: AsymptoticsCommand,
    },
    /// Containment matrix over 1 <= m <= max-m, 1 <= r <= max-r.
    Sweep {
        #[command(flatten)]
        arr: ArrangementArgs,
        #[arg(long, default_value_t = 5)]
        max_m: u64,
        #[arg(long)]
        max_r: Option<u64>,
    },
    /// Cross-check a symbolic power against brute-force enumeration.
    Oracle {
        #[command(flatten)]
        arr: ArrangementArgs,
        #[arg(long)]
        m: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum HilbertKind {
    /// Power of a point in P^N: needs --N --m --t.
    Point,
    /// Generic lines in P^N: needs --N --s --t.
    Lines,
    /// Power of a line in P^3: needs --m --t.
    Line,
    /// Expected symbolic-power dimension for disjoint lines in P^3: --s --m --t.
    Expected,
}

#[derive(Debug, Subcommand)]
enum AsymptoticsCommand {
    Hilbert {
        #[arg(long, value_enum)]
        kind: HilbertKind,
        #[arg(long = "N")]
        big_n: Option<u64>,
        #[arg(long)]
        s: Option<u64>,
        #[arg(long)]
        m: Option<u64>,
        #[arg(long)]
        t: u64,
    },
    /// Bracket the largest root of t^3 - 3st + 2s.
    G {
        #[arg(long)]
        s: u64,
        /// Bisection tolerance as a rational, default 2^-30.
        #[arg(long)]
        tol: Option<String>,
    },
    /// Parameters of the s = C(t+N, N)/(t+1) line family.
    Family {
        #[arg(long = "N")]
        big_n: u64,
        #[arg(long)]
        t: u64,
    },
    /// Conjectural initial-degree table against the cubic root.
    Explore {
        #[arg(long)]
        s: u64,
        #[arg(long)]
        max_m: u64,
        #[arg(long)]
        slack: Option<String>,
    },
}

/// Exit code and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Rendered {
    Json(Value),
    Csv(String),
}

struct Context {
    format: Format,
    limits: Limits,
    cache: Option<Cache>,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let mut stderr = String::new();
    let cache = if cli.no_cache {
        None
    } else {
        let path = cli
            .cache
            .clone()
            .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE));
        match Cache::open(&path) {
            Ok(c) => Some(c),
            Err(e) => {
                stderr.push_str(&format!("warning: cache disabled: {e}\n"));
                None
            }
        }
    };
    let mut ctx = Context {
        format: cli.format,
        limits: cli.guard.map(Limits::new).unwrap_or_default(),
        cache,
    };
    let result = dispatch(&mut ctx, cli.command, &mut stderr);
    if let Some(c) = &ctx.cache {
        if c.hits() + c.misses() > 0 {
            stderr.push_str(&format!("cache: {} hits, {} misses\n", c.hits(), c.misses()));
        }
    }
    match result {
        Ok(out) => {
            let stdout = match out {
                Rendered::Json(v) => format!("{v}\n"),
                Rendered::Csv(s) => s,
            };
            Outcome {
                code: 0,
                stdout,
                stderr,
            }
        }
        Err(e) => {
            stderr.push_str(&format!("error: {e}\n"));
            Outcome {
                code: e.exit_code(),
                stdout: String::new(),
                stderr,
            }
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn build_arrangement(args: &ArrangementArgs) -> CliResult<Arrangement> {
    if let Some(path) = &args.config {
        if args.family.is_some() {
            return Err(usage("use either --config or --family, not both"));
        }
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?;
        return serde_json::from_str(&text).map_err(|source| CliError::Json {
            path: path.clone(),
            source,
        });
    }
    match args.family {
        Some(Family::Pairs) => {
            let s = args.s.ok_or_else(|| usage("--family pairs needs --s"))?;
            let big_n = args.big_n.ok_or_else(|| usage("--family pairs needs --N"))?;
            Ok(Arrangement::pair_lines(s, big_n)?)
        }
        Some(Family::Points) => {
            let n = args.n.ok_or_else(|| usage("--family points needs --n"))?;
            Ok(Arrangement::coordinate_points(n)?)
        }
        None => Err(usage(
            "an arrangement is required: --family pairs|points or --config",
        )),
    }
}

impl Context {
    /// Look `(arrangement, op, args)` up in the cache, computing and
    /// storing it on a miss.
    fn cached<T, F>(
        &mut self,
        arrangement: &Arrangement,
        op: &str,
        args: Value,
        stderr: &mut String,
        compute: F,
    ) -> CliResult<T>
    where
        T: Serialize + DeserializeOwned,
        F: FnOnce(&mut Self) -> CliResult<T>,
    {
        let Some(cache) = self.cache.as_mut() else {
            return compute(self);
        };
        let key = cache_key(&arrangement.canonical_json(), op, &args);
        if let Some(rec) = cache.get(&key) {
            match serde_json::from_value(rec.value) {
                Ok(v) => return Ok(v),
                Err(e) => log::warn!("ignoring unreadable cached {op}: {e}"),
            }
        }
        let value = compute(self)?;
        if let Some(cache) = self.cache.as_mut() {
            let stored =
                serde_json::to_value(&value).map_err(|e| reslab_core::Error::Inconsistent(e.to_string()))?;
            if let Err(e) = cache.put(key, stored) {
                stderr.push_str(&format!("warning: cache write failed: {e}\n"));
            }
        }
        Ok(value)
    }
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("output types serialize")
}

fn dispatch(ctx: &mut Context, command: Command, stderr: &mut String) -> CliResult<Rendered> {
    let value = match command {
        Command::Symbolic { arr, m } => {
            let a = build_arrangement(&arr)?;
            let limits = ctx.limits;
            let ideal: MonomialIdeal = ctx.cached(&a, "symbolic_power", json!({ "m": m }), stderr, |_| {
                Ok(a.symbolic_power(m, &limits)?)
            })?;
            if ctx.format == Format::Csv {
                let mut out = String::from("generator\n");
                for g in ideal.generators() {
                    out.push_str(&format!("{g}\n"));
                }
                return Ok(Rendered::Csv(out));
            }
            json!({
                "m": m,
                "num_vars": ideal.num_vars(),
                "count": ideal.len(),
                "generators": to_json(&ideal)["generators"],
                "text": ideal.to_string(),
            })
        }
        Command::Containment { arr, m, r } => {
            let a = build_arrangement(&arr)?;
            let fact = containment(ctx, &a, m, r, &mut None, stderr)?;
            to_json(&fact)
        }
        Command::Alpha { arr, m, max_m } => {
            let a = build_arrangement(&arr)?;
            match (m, max_m) {
                (Some(m), None) => {
                    let table = alpha_table(ctx, &a, m..=m, stderr)?;
                    json!({ "m": m, "alpha": table[0].1 })
                }
                (None, Some(max_m)) => {
                    let table = alpha_table(ctx, &a, 1..=max_m, stderr)?;
                    Value::Array(
                        table
                            .iter()
                            .map(|(m, al)| json!({ "m": m, "alpha": al }))
                            .collect(),
                    )
                }
                _ => return Err(usage("alpha needs exactly one of --m or --max-m")),
            }
        }
        Command::Gamma { arr, max_m } => {
            let a = build_arrangement(&arr)?;
            let cert: GammaCertificate = ctx.cached(&a, "gamma_exact", json!({}), stderr, |_| {
                Ok(invariants::gamma_exact(&a)?)
            })?;
            let mut out = json!({
                "num": cert.value.numer().to_string(),
                "den": cert.value.denom().to_string(),
                "value": cert.value,
                "certificate": cert,
            });
            if let Some(max_m) = max_m {
                if max_m == 0 {
                    return Err(usage("--max-m must be at least 1"));
                }
                let table = alpha_table(ctx, &a, 1..=max_m, stderr)?;
                let alphas: Vec<u64> = table.iter().map(|&(_, al)| al).collect();
                let window = invariants::gamma_window_from_table(&alphas, a.properties().h as u64)?;
                out["window"] = to_json(&window);
            }
            out
        }
        Command::Resurgence { arr } => {
            let a = build_arrangement(&arr)?;
            let limits = ctx.limits;
            let report: invariants::ResurgenceReport =
                ctx.cached(&a, "resurgence_window", json!({}), stderr, |_| {
                    Ok(invariants::resurgence_window(&a, &limits)?)
                })?;
            json!({
                "lo": report.window.lo,
                "hi": report.window.hi,
                "lo_rule": report.window.lo_provenance,
                "hi_rule": report.window.hi_provenance,
                "alpha": report.alpha,
                "omega": report.omega,
                "h": report.h,
                "gamma": {
                    "num": report.gamma.value.numer().to_string(),
                    "den": report.gamma.value.denom().to_string(),
                    "certificate": report.gamma,
                },
            })
        }
        Command::Evidence { arr, c, b, max_m } => {
            let a = build_arrangement(&arr)?;
            let limits = ctx.limits;
            let report: invariants::EvidenceReport = ctx.cached(
                &a,
                "noetherian_evidence",
                json!({ "c": c, "b": b, "max_m": max_m }),
                stderr,
                |_| Ok(invariants::noetherian_evidence(&a, c, b, max_m, &limits)?),
            )?;
            to_json(&report)
        }
        Command::Derive { ledger, m, bound } => {
            let text = std::fs::read_to_string(&ledger).map_err(|source| CliError::Io {
                path: ledger.clone(),
                source,
            })?;
            let ledger: FactLedger = serde_json::from_str(&text).map_err(|source| CliError::Json {
                path: ledger.clone(),
                source,
            })?;
            if bound {
                let b = calculus::asymptotic_bound(&ledger)?;
                json!({ "bound": b, "status": "conditional", "hypotheses": ledger })
            } else {
                let m = m.ok_or_else(|| usage("derive needs --m or --bound"))?;
                to_json(&calculus::derive_fact(&ledger, m)?)
            }
        }
        Command::Asymptotics { command } => return asymptotics_command(ctx, command),
        Command::Sweep { arr, max_m, max_r } => {
            let a = build_arrangement(&arr)?;
            let max_r = max_r.unwrap_or(max_m);
            if max_m == 0 || max_r == 0 {
                return Err(usage("--max-m and --max-r must be at least 1"));
            }
            let mut engine = None;
            let mut facts = Vec::new();
            for m in 1..=max_m {
                let row = (1..=max_r)
                    .map(|r| containment(ctx, &a, m, r, &mut engine, stderr))
                    .collect::<CliResult<Vec<_>>>()?;
                facts.push(row);
            }
            let matrix = ContainmentMatrix { max_m, max_r, facts };
            if ctx.format == Format::Csv {
                let mut w = csv::Writer::from_writer(Vec::new());
                let mut header = vec!["m".to_string()];
                header.extend((1..=max_r).map(|r| r.to_string()));
                write_csv(&mut w, &header)?;
                for (m, row) in matrix.facts.iter().enumerate() {
                    let mut cells = vec![(m + 1).to_string()];
                    cells.extend(row.iter().map(|f| f.status.as_str().to_string()));
                    write_csv(&mut w, &cells)?;
                }
                return Ok(Rendered::Csv(finish_csv(w)?));
            }
            let mut out = to_json(&matrix);
            out["h"] = json!(a.properties().h);
            out
        }
        Command::Oracle { arr, m } => {
            let a = build_arrangement(&arr)?;
            let direct = a.symbolic_power(m, &ctx.limits)?;
            let brute = oracle::minimal_generators(&a, m)?;
            json!({
                "m": m,
                "agree": direct.generators() == brute.as_slice(),
                "count": direct.len(),
                "oracle_count": brute.len(),
            })
        }
    };
    render(ctx.format, value)
}

fn containment(
    ctx: &mut Context,
    a: &Arrangement,
    m: u64,
    r: u64,
    engine: &mut Option<ContainmentEngine>,
    stderr: &mut String,
) -> CliResult<ContainmentFact> {
    ctx.cached(a, "containment", json!({ "m": m, "r": r }), stderr, |ctx| {
        if engine.is_none() {
            *engine = Some(ContainmentEngine::new(a, ctx.limits)?);
        }
        Ok(engine.as_mut().expect("engine set above").check(m, r)?)
    })
}

fn alpha_table(
    ctx: &mut Context,
    a: &Arrangement,
    range: std::ops::RangeInclusive<u64>,
    stderr: &mut String,
) -> CliResult<Vec<(u64, u64)>> {
    if *range.start() == 0 {
        return Err(usage("m must be at least 1"));
    }
    let mut solver: Option<invariants::AlphaSolver> = None;
    range
        .map(|m| {
            let alpha = ctx.cached(a, "alpha_symbolic", json!({ "m": m }), stderr, |_| {
                if solver.is_none() {
                    solver = Some(invariants::AlphaSolver::new(a)?);
                }
                Ok(solver.as_ref().expect("solver set above").alpha(m))
            })?;
            Ok((m, alpha))
        })
        .collect()
}

fn parse_fraction(text: &str, flag: &str) -> CliResult<Fraction> {
    text.parse()
        .map_err(|_| usage(format!("{flag} expects a rational like 1/1000, got {text:?}")))
}

fn asymptotics_command(ctx: &mut Context, command: AsymptoticsCommand) -> CliResult<Rendered> {
    let need = |v: Option<u64>, flag: &str| v.ok_or_else(|| usage(format!("this kind needs {flag}")));
    let value = match command {
        AsymptoticsCommand::Hilbert { kind, big_n, s, m, t } => {
            let (name, value) = match kind {
                HilbertKind::Point => (
                    "point",
                    asymptotics::point_power_hilbert(need(big_n, "--N")?, need(m, "--m")?, t)?,
                ),
                HilbertKind::Lines => (
                    "lines",
                    asymptotics::generic_lines_hilbert(need(big_n, "--N")?, need(s, "--s")?, t)?,
                ),
                HilbertKind::Line => ("line", asymptotics::line_power_hilbert_p3(need(m, "--m")?, t)?),
                HilbertKind::Expected => (
                    "expected",
                    asymptotics::expected_symbolic_dim(need(s, "--s")?, need(m, "--m")?, t)?,
                ),
            };
            json!({ "kind": name, "N": big_n, "s": s, "m": m, "t": t, "value": value })
        }
        AsymptoticsCommand::G { s, tol } => {
            let tol = match tol {
                Some(t) => parse_fraction(&t, "--tol")?,
                None => asymptotics::default_tolerance(),
            };
            to_json(&asymptotics::largest_root_g(s, &tol)?)
        }
        AsymptoticsCommand::Family { big_n, t } => to_json(&asymptotics::line_family(big_n, t)?),
        AsymptoticsCommand::Explore { s, max_m, slack } => {
            let slack = match slack {
                Some(t) => parse_fraction(&t, "--slack")?,
                None => Fraction::zero(),
            };
            let rows = asymptotics::conjecture_explore(s, max_m, &slack)?;
            if ctx.format == Format::Csv {
                return Ok(Rendered::Csv(explore_csv(&rows)));
            }
            json!({ "alpha_hat_is_conjectural": true, "rows": rows })
        }
    };
    render(ctx.format, value)
}

fn render(format: Format, value: Value) -> CliResult<Rendered> {
    match format {
        Format::Json => Ok(Rendered::Json(value)),
        Format::Csv => Ok(Rendered::Csv(value_to_csv(&value)?)),
    }
}

fn csv_error(e: impl std::fmt::Display) -> CliError {
    CliError::Core(reslab_core::Error::Inconsistent(format!("CSV output: {e}")))
}

fn write_csv(w: &mut csv::Writer<Vec<u8>>, cells: &[String]) -> CliResult<()> {
    w.write_record(cells).map_err(csv_error)
}

fn finish_csv(w: csv::Writer<Vec<u8>>) -> CliResult<String> {
    let bytes = w.into_inner().map_err(csv_error)?;
    String::from_utf8(bytes).map_err(csv_error)
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// Objects become one row; arrays of objects become one row each. Nested
/// values are written as compact JSON.
fn value_to_csv(value: &Value) -> CliResult<String> {
    let rows: Vec<&serde_json::Map<String, Value>> = match value {
        Value::Object(map) => vec![map],
        Value::Array(items) => items.iter().filter_map(Value::as_object).collect(),
        _ => Vec::new(),
    };
    let mut w = csv::Writer::from_writer(Vec::new());
    if let Some(first) = rows.first() {
        let header: Vec<String> = first.keys().cloned().collect();
        write_csv(&mut w, &header)?;
        for row in &rows {
            let cells: Vec<String> = header
                .iter()
                .map(|k| cell(row.get(k).unwrap_or(&Value::Null)))
                .collect();
            write_csv(&mut w, &cells)?;
        }
    } else {
        write_csv(&mut w, &["value".to_string()])?;
        write_csv(&mut w, &[cell(value)])?;
    }
    finish_csv(w)
}
