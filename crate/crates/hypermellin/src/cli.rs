//! Command-line front end: argument parsing, run configuration and tabular output.
//!
//! Every subcommand produces a [`Table`], written as CSV (header row,
//! complex values split into `_re`/`_im` columns, 17 significant digits) or
//! as JSON records. Usage errors exit with 2, numerical failures with 1
//! after writing a single error row.

use crate::bounds::{self, DecayVariant, ScanKind};
use crate::error::Error;
use crate::gweight::{GWeight, GWeightSpec};
use crate::invfactorial::ifs_eval;
use crate::norlund::g_explicit;
use crate::quadrature::QuadOptions;
use crate::regularization::{choose_n, decomposed_eval};
use crate::representations::{Kind, ReprRequest};
use crate::rpdf::{self, Membership, RpdfKind, SchoenbergMeasure};
use crate::series::{hyp, series_eval_auto, EvalResult, HypSpec, ParamVec};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

/// Environment variable overriding the quadrature panel budget.
pub const BUDGET_ENV: &str = "HYPERMELLIN_BUDGET";

// ---------------------------------------------------------------------------
// value parsing

/// Complex number written as `re`, `imj`, or `re+imj` (`i` also accepted).
pub fn parse_complex(s: &str) -> Result<C64, String> {
    let t = s.trim();
    let bad = || format!("cannot parse '{s}' as a complex number");
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix(['j', 'i']) else {
        return t.parse::<f64>().map(|x| C64::new(x, 0.0)).map_err(|_| bad());
    };
    // split at the last sign that is not leading and not an exponent sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len()).rev().find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let imag = |x: &str| -> Result<f64, String> {
        match x {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => x.parse::<f64>().map_err(|_| bad()),
        }
    };
    match split {
        Some(i) => Ok(C64::new(body[..i].parse::<f64>().map_err(|_| bad())?, imag(&body[i..])?)),
        None => Ok(C64::new(0.0, imag(body)?)),
    }
}

/// Comma-separated list of complex numbers.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CxList(pub Vec<C64>);

impl FromStr for CxList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.trim().is_empty() {
            return Ok(CxList(Vec::new()));
        }
        s.split(',').map(parse_complex).collect::<Result<_, _>>().map(CxList)
    }
}

impl CxList {
    fn params(&self) -> ParamVec {
        ParamVec::new(self.0.clone())
    }

    fn real(&self, what: &str) -> Result<Vec<f64>, Usage> {
        self.0
            .iter()
            .map(|z| if z.im == 0.0 { Ok(z.re) } else { Err(Usage(format!("{what} must be real"))) })
            .collect()
    }
}

/// Closed interval `lo,hi`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Range(pub f64, pub f64);

impl FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(',').collect();
        match parts.as_slice() {
            [lo, hi] => {
                let lo: f64 = lo.trim().parse().map_err(|_| format!("bad range '{s}'"))?;
                let hi: f64 = hi.trim().parse().map_err(|_| format!("bad range '{s}'"))?;
                if lo < hi {
                    Ok(Range(lo, hi))
                } else {
                    Err(format!("range '{s}' must satisfy lo < hi"))
                }
            }
            _ => Err(format!("range '{s}' must be lo,hi")),
        }
    }
}

// ---------------------------------------------------------------------------
// configuration

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Settings shared by all subcommands.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub tol_abs: f64,
    pub tol_rel: f64,
    pub budget: usize,
    /// Nørlund truncation order.
    pub norlund_n: usize,
    pub format: Format,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        let q = QuadOptions::default();
        Self { tol_abs: q.tol_abs, tol_rel: q.tol_rel, budget: q.budget, norlund_n: 20, format: Format::Csv, seed: 0 }
    }
}

impl RunConfig {
    /// Applies `key=value` lines; `#` starts a comment.
    pub fn apply_str(&mut self, text: &str) -> Result<(), String> {
        for (no, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| format!("config line {}: expected key=value", no + 1))?;
            self.set(k.trim(), v.trim()).map_err(|e| format!("config line {}: {e}", no + 1))?;
        }
        Ok(())
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        let num = |v: &str| v.parse::<f64>().map_err(|_| format!("bad number '{v}' for {key}"));
        let int = |v: &str| v.parse::<u64>().map_err(|_| format!("bad integer '{v}' for {key}"));
        match key {
            "tol" => {
                self.tol_abs = num(value)?;
                self.tol_rel = self.tol_abs;
            }
            "tol_abs" => self.tol_abs = num(value)?,
            "tol_rel" => self.tol_rel = num(value)?,
            "budget" => self.budget = int(value)? as usize,
            "N" | "norlund_n" => self.norlund_n = int(value)? as usize,
            "seed" => self.seed = int(value)?,
            "format" => {
                self.format = Format::from_str(value, true).map_err(|_| format!("format must be csv or json, got '{value}'"))?
            }
            other => return Err(format!("unknown config key '{other}'")),
        }
        Ok(())
    }

    fn validate(&self) -> Result<(), String> {
        if !(self.tol_abs > 0.0 && self.tol_rel > 0.0) {
            return Err("tolerances must be positive".into());
        }
        if self.budget == 0 {
            return Err("budget must be positive".into());
        }
        Ok(())
    }

    pub fn quad(&self) -> QuadOptions {
        QuadOptions { tol_abs: self.tol_abs, tol_rel: self.tol_rel, budget: self.budget }
    }
}

// ---------------------------------------------------------------------------
// arguments

#[derive(Debug, Parser)]
#[command(name = "hypermellin", version, about = "Generalized hypergeometric functions via Meijer G weights")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Quadrature tolerance (absolute and relative).
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Write rows here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// key=value configuration file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate by the series or an integral representation.
    Eval(EvalArgs),
    /// Evaluate through the regularized decomposition.
    RegEval(RegEvalArgs),
    /// Tabulate the G weight on (0,1), or its Nørlund coefficients with --N.
    Weight(WeightArgs),
    /// Inverse factorial series for p+1Fp(m, a; b; -w).
    Ifs(IfsArgs),
    /// Two-sided and decay bounds on a grid.
    Bounds(BoundsArgs),
    /// Zero-free scans.
    Zeros(ZerosArgs),
    /// Radial positive definiteness verdicts and Schoenberg densities.
    Rpdf(RpdfArgs),
    /// Cross-method consistency suite.
    Xcheck(XcheckArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EvalKind {
    Series,
    Stieltjes,
    Laplace,
    Cosine,
    Sine,
    BesselKernel,
}

#[derive(Debug, Args)]
pub struct Params {
    #[arg(long, allow_hyphen_values = true, default_value = "")]
    pub a: CxList,
    #[arg(long, allow_hyphen_values = true, default_value = "")]
    pub b: CxList,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long, value_enum)]
    pub kind: EvalKind,
    /// Stieltjes exponent sigma, required for that kind.
    #[arg(long, allow_hyphen_values = true)]
    pub sigma: Option<CxList>,
    #[command(flatten)]
    pub params: Params,
    /// One or more arguments; representations evaluate F(-z).
    #[arg(long, allow_hyphen_values = true)]
    pub z: CxList,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RegKind {
    Stieltjes,
    Laplace,
    Cosine,
}

#[derive(Debug, Args)]
pub struct RegEvalArgs {
    #[arg(long, value_enum)]
    pub kind: RegKind,
    #[arg(long, allow_hyphen_values = true)]
    pub sigma: Option<CxList>,
    #[command(flatten)]
    pub params: Params,
    #[arg(long, allow_hyphen_values = true)]
    pub z: CxList,
    /// Regularization order; the minimal admissible one by default.
    #[arg(long)]
    pub n: Option<usize>,
    /// Pick the order that also makes the remainder weight nonnegative.
    #[arg(long)]
    pub want_nonneg: bool,
}

#[derive(Debug, Args)]
pub struct WeightArgs {
    #[command(flatten)]
    pub params: Params,
    /// Number of interior points x = i/(grid+1).
    #[arg(long, default_value_t = 9)]
    pub grid: usize,
    /// Print Nørlund coefficients g_0..g_N instead; a bare --N uses the configured order.
    #[arg(long = "N", num_args = 0..=1)]
    pub norlund: Option<Option<usize>>,
}

#[derive(Debug, Args)]
pub struct IfsArgs {
    #[command(flatten)]
    pub params: Params,
    #[arg(long, default_value_t = 1)]
    pub m: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub w: CxList,
    /// Maximum number of terms.
    #[arg(long = "N", default_value_t = 500)]
    pub terms: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BoundKind {
    Kummer,
    Gauss,
    BesselUnit,
    Unit,
    LandauNu,
    LandauX,
    SmallX,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long, value_enum)]
    pub kind: BoundKind,
    #[arg(long, allow_hyphen_values = true)]
    pub sigma: Option<f64>,
    #[command(flatten)]
    pub params: Params,
    /// Regularization order for kummer and gauss.
    #[arg(long)]
    pub n: Option<usize>,
    /// Kernel index for the decay bounds.
    #[arg(long, default_value_t = 0)]
    pub j: usize,
    /// Explicit points.
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<CxList>,
    #[arg(long, allow_hyphen_values = true)]
    pub range: Option<Range>,
    #[arg(long, default_value_t = 49)]
    pub grid: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ZeroKind {
    KummerHalfplane,
    BesselNozero,
    BesselPm1,
    Winding,
}

#[derive(Debug, Args)]
pub struct ZerosArgs {
    #[arg(long, value_enum)]
    pub kind: ZeroKind,
    #[command(flatten)]
    pub params: Params,
    /// Real interval for scans; for winding, the half-width R of the box [-R,0]x[-R,R].
    #[arg(long, allow_hyphen_values = true)]
    pub range: Range,
    #[arg(long, default_value_t = 400)]
    pub grid: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RpdfArgKind {
    Gauss,
    Kummer,
    Bessel,
}

#[derive(Debug, Args)]
pub struct RpdfArgs {
    #[arg(long, value_enum)]
    pub kind: RpdfArgKind,
    #[arg(long)]
    pub sigma: Option<f64>,
    #[command(flatten)]
    pub params: Params,
    /// Dimension.
    #[arg(long)]
    pub n: usize,
    /// Also tabulate the Schoenberg density at t = 2i/(grid+1).
    #[arg(long)]
    pub grid: Option<usize>,
}

#[derive(Debug, Args)]
pub struct XcheckArgs {
    #[arg(long)]
    pub seed: Option<u64>,
    /// Random cases per kind.
    #[arg(long, default_value_t = 6)]
    pub cases: usize,
}

// ---------------------------------------------------------------------------
// tables

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Bool(bool),
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Num(x) if x.is_finite() => write!(f, "{x:.16e}"),
            Cell::Num(x) => write!(f, "{x}"),
            Cell::Int(i) => write!(f, "{i}"),
            Cell::Text(s) => f.write_str(s),
            Cell::Bool(b) => write!(f, "{b}"),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<bool> for Cell {
    fn from(x: bool) -> Self {
        Cell::Bool(x)
    }
}

impl From<&str> for Cell {
    fn from(x: &str) -> Self {
        Cell::Text(x.to_string())
    }
}

impl From<String> for Cell {
    fn from(x: String) -> Self {
        Cell::Text(x)
    }
}

/// Rows with a fixed header.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

/// Builds one row; complex values take two columns.
#[derive(Default)]
struct Row {
    names: Vec<String>,
    cells: Vec<Cell>,
}

impl Row {
    fn put(mut self, name: &str, cell: impl Into<Cell>) -> Self {
        self.names.push(name.to_string());
        self.cells.push(cell.into());
        self
    }

    fn cx(self, name: &str, z: C64) -> Self {
        self.put(&format!("{name}_re"), z.re).put(&format!("{name}_im"), z.im)
    }
}

impl Table {
    fn push(&mut self, row: Row) {
        if self.header.is_empty() {
            self.header = row.names;
        }
        debug_assert_eq!(self.header.len(), row.cells.len());
        self.rows.push(row.cells);
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
        match format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&self.header)?;
                for row in &self.rows {
                    w.write_record(row.iter().map(|c| c.to_string()))?;
                }
                w.flush()
            }
            Format::Json => {
                let records: Vec<serde_json::Value> = self
                    .rows
                    .iter()
                    .map(|row| {
                        let obj = self.header.iter().zip(row).map(|(k, c)| (k.clone(), cell_json(c))).collect();
                        serde_json::Value::Object(obj)
                    })
                    .collect();
                serde_json::to_writer_pretty(&mut *out, &records)?;
                writeln!(out)
            }
        }
    }
}

fn cell_json(c: &Cell) -> serde_json::Value {
    match c {
        Cell::Num(x) => serde_json::Number::from_f64(*x).map(serde_json::Value::Number).unwrap_or(serde_json::Value::Null),
        Cell::Int(i) => (*i).into(),
        Cell::Text(s) => s.clone().into(),
        Cell::Bool(b) => (*b).into(),
    }
}

/// Table holding the machine-readable error row.
pub fn error_table(e: &Error) -> Table {
    let mut t = Table::default();
    t.push(Row::default().put("status", "error").put("code", e.code()).put("message", e.to_string()));
    t
}

// ---------------------------------------------------------------------------
// running

/// A usage problem detected after argument parsing.
#[derive(Debug)]
pub struct Usage(pub String);

enum Failure {
    Usage(String),
    Numeric(Error, Table),
}

impl From<Usage> for Failure {
    fn from(u: Usage) -> Self {
        Failure::Usage(u.0)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Numeric(e, Table::default())
    }
}

type Outcome = Result<Table, Failure>;

/// Entry point for the binary: parses `args`, writes to stdout or `--out`,
/// and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    run_with(args, &mut lock, &mut std::io::stderr())
}

/// Same as [`run`] with explicit output streams.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let cfg = match build_config(&cli) {
        Ok(c) => c,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return 2;
        }
    };
    let (table, code) = match execute(&cli.command, &cfg) {
        Ok(t) => (t, 0),
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            return 2;
        }
        Err(Failure::Numeric(e, partial)) => {
            log::debug!("{e:?}");
            let _ = writeln!(err, "error: {e}");
            // a failed suite keeps its rows; anything else reports the error alone
            (if partial.rows.is_empty() { error_table(&e) } else { partial }, 1)
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::File::create(path).and_then(|mut f| table.write(cfg.format, &mut f)),
        None => table.write(cfg.format, out),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: cannot write output: {e}");
        return 1;
    }
    code
}

/// Defaults, then the config file, then the environment, then flags.
fn build_config(cli: &Cli) -> Result<RunConfig, String> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        cfg.apply_str(&text)?;
    }
    if let Ok(v) = std::env::var(BUDGET_ENV) {
        cfg.set("budget", v.trim()).map_err(|e| format!("{BUDGET_ENV}: {e}"))?;
    }
    if let Some(t) = cli.tol {
        cfg.tol_abs = t;
        cfg.tol_rel = t;
    }
    if let Some(f) = cli.format {
        cfg.format = f;
    }
    if let Command::Xcheck(XcheckArgs { seed: Some(s), .. }) = &cli.command {
        cfg.seed = *s;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn execute(cmd: &Command, cfg: &RunConfig) -> Outcome {
    match cmd {
        Command::Eval(a) => eval_cmd(a, cfg),
        Command::RegEval(a) => reg_eval_cmd(a, cfg),
        Command::Weight(a) => weight_cmd(a, cfg),
        Command::Ifs(a) => ifs_cmd(a, cfg),
        Command::Bounds(a) => bounds_cmd(a),
        Command::Zeros(a) => zeros_cmd(a),
        Command::Rpdf(a) => rpdf_cmd(a),
        Command::Xcheck(a) => xcheck_cmd(a, cfg),
    }
}

fn single_sigma(s: &Option<CxList>) -> Result<Option<C64>, Usage> {
    match s {
        None => Ok(None),
        Some(l) if l.0.len() == 1 => Ok(Some(l.0[0])),
        Some(_) => Err(Usage("--sigma takes one value".into())),
    }
}

fn nonempty(l: &CxList, flag: &str) -> Result<(), Usage> {
    if l.0.is_empty() {
        Err(Usage(format!("{flag} needs at least one value")))
    } else {
        Ok(())
    }
}

fn result_row(kind: &str, z: C64, r: &EvalResult) -> Row {
    Row::default()
        .put("kind", kind)
        .cx("z", z)
        .cx("value", r.value)
        .put("abs_err", r.abs_error_estimate)
        .put("method", r.method.to_string())
}

fn eval_cmd(args: &EvalArgs, cfg: &RunConfig) -> Outcome {
    nonempty(&args.z, "--z")?;
    let sigma = single_sigma(&args.sigma)?;
    let (a, b) = (args.params.a.params(), args.params.b.params());
    let mut t = Table::default();
    for &z in &args.z.0 {
        let (name, r) = match args.kind {
            EvalKind::Series => {
                let mut num = a.clone();
                if let Some(s) = sigma {
                    num = ParamVec::new(vec![s]).concat(&num);
                }
                ("series", series_eval_auto(&HypSpec::new(num, b.clone())?, z, 1e-15)?)
            }
            k => {
                let kind = match k {
                    EvalKind::Stieltjes => Kind::Stieltjes,
                    EvalKind::Laplace => Kind::Laplace,
                    EvalKind::Cosine => Kind::Cosine,
                    EvalKind::Sine => Kind::Sine,
                    _ => Kind::BesselKernel,
                };
                let req = ReprRequest { kind, sigma, a: a.clone(), b: b.clone(), z };
                req.validate().map_err(|e| Failure::Usage(e.to_string()))?;
                let name = match kind {
                    Kind::Stieltjes => "stieltjes",
                    Kind::Laplace => "laplace",
                    Kind::Cosine => "cosine",
                    Kind::Sine => "sine",
                    Kind::BesselKernel => "bessel-kernel",
                };
                (name, req.eval(&cfg.quad())?)
            }
        };
        t.push(result_row(name, z, &r));
    }
    Ok(t)
}

fn reg_eval_cmd(args: &RegEvalArgs, cfg: &RunConfig) -> Outcome {
    nonempty(&args.z, "--z")?;
    let sigma = single_sigma(&args.sigma)?;
    let kind = match args.kind {
        RegKind::Stieltjes => Kind::Stieltjes,
        RegKind::Laplace => Kind::Laplace,
        RegKind::Cosine => Kind::Cosine,
    };
    if kind == Kind::Stieltjes && sigma.is_none() {
        return Err(Failure::Usage("stieltjes needs --sigma".into()));
    }
    let (a, b) = (args.params.a.params(), args.params.b.params());
    let n = match args.n {
        Some(n) => n,
        None => choose_n(&a, &b, kind, args.want_nonneg)?.n,
    };
    let mut t = Table::default();
    for &z in &args.z.0 {
        let r = decomposed_eval(kind, sigma, &a, &b, z, Some(n), &cfg.quad())?;
        t.push(result_row(&kind.to_string(), z, &r).put("n", n));
    }
    Ok(t)
}

fn weight_cmd(args: &WeightArgs, cfg: &RunConfig) -> Outcome {
    let (a, b) = (args.params.a.params(), args.params.b.params());
    let mut t = Table::default();
    if let Some(n) = args.norlund {
        let n_max = n.unwrap_or(cfg.norlund_n);
        let table = g_explicit(&a, &b, 0, n_max)?;
        for (n, g) in table.g.iter().enumerate() {
            t.push(Row::default().put("n", n).cx("g", *g).put("k", table.k));
        }
        return Ok(t);
    }
    if args.grid == 0 {
        return Err(Failure::Usage("--grid must be positive".into()));
    }
    let w = GWeight::new(&GWeightSpec::new(a, b)?)?;
    for i in 1..=args.grid {
        let x = i as f64 / (args.grid + 1) as f64;
        let v = w.eval(x)?;
        t.push(Row::default().put("x", x).cx("g", v.value).put("abs_err", v.err).put("route", v.route.to_string()));
    }
    Ok(t)
}

fn ifs_cmd(args: &IfsArgs, cfg: &RunConfig) -> Outcome {
    nonempty(&args.w, "--w")?;
    let (a, b) = (args.params.a.params(), args.params.b.params());
    let mut t = Table::default();
    for &w in &args.w.0 {
        let r = ifs_eval(&a, &b, args.m, w, args.terms, cfg.tol_abs)?;
        t.push(Row::default().cx("w", w).cx("value", r.value).put("tail_estimate", r.tail_estimate).put("terms", r.terms));
    }
    Ok(t)
}

fn points(z: &Option<CxList>, range: &Option<Range>, grid: usize) -> Result<Vec<f64>, Usage> {
    match (z, range) {
        (Some(l), None) => l.real("--z"),
        (None, Some(Range(lo, hi))) => {
            if grid == 0 {
                return Err(Usage("--grid must be positive".into()));
            }
            Ok((0..=grid).map(|i| lo + (hi - lo) * i as f64 / grid as f64).collect())
        }
        _ => Err(Usage("give exactly one of --z and --range".into())),
    }
}

fn bounds_cmd(args: &BoundsArgs) -> Outcome {
    let a = args.params.a.real("--a")?;
    let b = args.params.b.real("--b")?;
    let xs = points(&args.z, &args.range, args.grid)?;
    let mut t = Table::default();
    match args.kind {
        BoundKind::Kummer | BoundKind::Gauss => {
            let gauss = args.kind == BoundKind::Gauss;
            let sigma = if gauss { Some(args.sigma.ok_or_else(|| Usage("gauss bounds need --sigma".into()))?) } else { None };
            let n = match args.n {
                Some(n) => n,
                None => (0..=crate::regularization::MAX_N)
                    .find(|&n| bounds_try(sigma, &a, &b, n))
                    .ok_or(Error::NoncomputableN(crate::regularization::MAX_N))?,
            };
            for &x in &xs {
                let r = match sigma {
                    Some(s) => bounds::luke_bounds_gauss(s, &a, &b, x, n)?,
                    None => bounds::luke_bounds_kummer(&a, &b, x, n)?,
                };
                t.push(
                    Row::default()
                        .put("x", x)
                        .put("lower", r.lower)
                        .put("value", r.value)
                        .put("upper", r.upper)
                        .put("alpha", r.alpha as usize)
                        .put("n", n)
                        .put("bracketed", r.brackets(1e-12)),
                );
            }
        }
        BoundKind::BesselUnit => {
            for &x in &xs {
                let (f, margin) = bounds::bessel_unit_bound(&a, &b, x)?;
                t.push(Row::default().put("x", x).put("abs_value", f).put("margin", margin));
            }
        }
        k => {
            let variant = match k {
                BoundKind::Unit => DecayVariant::Unit,
                BoundKind::LandauNu => DecayVariant::LandauNu,
                BoundKind::LandauX => DecayVariant::LandauX,
                _ => DecayVariant::SmallX,
            };
            for &x in &xs {
                let bound = bounds::bessel_decay_bound(&a, &b, args.j, x, variant)?;
                let f = bounds::eval_real(&a, &b, -x)?.abs();
                t.push(Row::default().put("x", x).put("abs_value", f).put("bound", bound).put("holds", f <= bound));
            }
        }
    }
    Ok(t)
}

/// Whether the regularization order n satisfies the bound hypotheses.
fn bounds_try(sigma: Option<f64>, a: &[f64], b: &[f64], n: usize) -> bool {
    let r = match sigma {
        Some(s) => bounds::luke_bounds_gauss(s, a, b, 0.0, n),
        None => bounds::luke_bounds_kummer(a, b, 0.0, n),
    };
    !matches!(r, Err(Error::HypothesisFailed(_)))
}

fn zeros_cmd(args: &ZerosArgs) -> Outcome {
    let a = args.params.a.real("--a")?;
    let b = args.params.b.real("--b")?;
    let Range(lo, hi) = args.range;
    let mut t = Table::default();
    let kind = match args.kind {
        ZeroKind::KummerHalfplane => ScanKind::KummerHalfplane,
        ZeroKind::BesselNozero => ScanKind::BesselNozero,
        ZeroKind::BesselPm1 => ScanKind::BesselPm1,
        ZeroKind::Winding => {
            let r = lo.abs().max(hi.abs());
            let count = bounds::winding_count(&a, &b, r, args.grid.max(8))?;
            t.push(Row::default().put("kind", "winding").put("radius", r).put("zeros", count as usize));
            return Ok(t);
        }
    };
    let r = bounds::zero_free_scan(kind, &a, &b, lo, hi, args.grid)?;
    let name = match kind {
        ScanKind::KummerHalfplane => "kummer-halfplane",
        ScanKind::BesselNozero => "bessel-nozero",
        ScanKind::BesselPm1 => "bessel-pm1",
    };
    t.push(
        Row::default()
            .put("kind", name)
            .put("points", r.points)
            .put("sign_changes", r.sign_changes)
            .put("min_abs", r.min_abs)
            .put("min_value", r.min_value)
            .put("max_value", r.max_value),
    );
    Ok(t)
}

fn rpdf_cmd(args: &RpdfArgs) -> Outcome {
    let a = args.params.a.real("--a")?;
    let b = args.params.b.real("--b")?;
    let kind = match args.kind {
        RpdfArgKind::Gauss => RpdfKind::Gauss,
        RpdfArgKind::Kummer => RpdfKind::Kummer,
        RpdfArgKind::Bessel => RpdfKind::Bessel,
    };
    let v = rpdf::membership(kind, args.sigma, &a, &b, args.n)?;
    let method = v.certificates.first().map(|c| format!("{:?}", c.method)).unwrap_or_else(|| "none".into());
    let mut t = Table::default();
    match args.grid {
        None => t.push(
            Row::default().put("n", v.n).put("status", v.status.to_string()).put("evidence", v.evidence).put("certificate", method),
        ),
        Some(grid) => {
            if kind != RpdfKind::Bessel || !matches!(v.status, Membership::InPhiN | Membership::BoundaryPhiN) {
                return Err(Failure::Numeric(Error::HypothesisFailed(format!("no Schoenberg density: {}", v.status)), Table::default()));
            }
            let m = SchoenbergMeasure::new(&a, &b, args.n)?;
            for i in 1..=grid {
                let x = 2.0 * i as f64 / (grid + 1) as f64;
                t.push(Row::default().put("t", x).put("density", m.density(x)?).put("atom_at_2", m.atom).put("status", v.status.to_string()));
            }
        }
    }
    Ok(t)
}

// ---------------------------------------------------------------------------
// cross-method suite

/// Relative discrepancy allowed by `xcheck` for a quadrature tolerance `tol`.
pub fn xcheck_threshold(cfg: &RunConfig) -> f64 {
    (100.0 * cfg.tol_rel).max(1e-12)
}

fn xcheck_cmd(args: &XcheckArgs, cfg: &RunConfig) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let threshold = xcheck_threshold(cfg);
    let opts = cfg.quad();
    let mut t = Table::default();
    let mut worst: Option<Error> = None;
    let mut record = |t: &mut Table, case: usize, label: &str, z: C64, got: crate::error::Result<C64>, reference: C64| {
        let (value, rel, pass) = match got {
            Ok(v) => {
                let rel = (v - reference).norm() / reference.norm().max(1e-300);
                (v, rel, rel <= threshold)
            }
            Err(e) => {
                log::warn!("case {case} {label}: {e}");
                (C64::new(f64::NAN, f64::NAN), f64::INFINITY, false)
            }
        };
        if !pass && worst.is_none() {
            worst = Some(Error::EvaluationFailed(format!("case {case} {label}: relative error {rel:e} above {threshold:e}")));
        }
        t.push(
            Row::default()
                .put("case", case)
                .put("method", label)
                .cx("z", z)
                .cx("value", value)
                .cx("reference", reference)
                .put("rel_err", rel)
                .put("pass", pass),
        );
    };
    let mut case = 0;
    for _ in 0..args.cases {
        let p = rng.gen_range(1..=3usize);
        let a: Vec<f64> = (0..p).map(|_| rng.gen_range(0.2..2.5)).collect();
        let b: Vec<f64> = a.iter().map(|&x| x + rng.gen_range(0.1..1.5)).collect();
        let sigma = rng.gen_range(0.3..2.0);
        let (pa, pb) = (ParamVec::real(&a), ParamVec::real(&b));
        let c = |x: f64| C64::new(x, 0.0);

        let z = c(rng.gen_range(0.05..0.9));
        let mut num = vec![c(sigma)];
        num.extend(pa.iter());
        let reference = hyp(&num, pb.as_slice(), -z)?;
        record(&mut t, case, "stieltjes", z, ReprRequest { kind: Kind::Stieltjes, sigma: Some(c(sigma)), a: pa.clone(), b: pb.clone(), z }.eval(&opts).map(|r| r.value), reference);

        let z = c(rng.gen_range(-3.0..6.0));
        let reference = hyp(pa.as_slice(), pb.as_slice(), -z)?;
        record(&mut t, case, "laplace", z, ReprRequest { kind: Kind::Laplace, sigma: None, a: pa.clone(), b: pb.clone(), z }.eval(&opts).map(|r| r.value), reference);

        // cosine: drop one numerator entry
        let ac = ParamVec::real(&a[..p - 1]);
        let z = c(rng.gen_range(0.0..8.0));
        let reference = hyp(ac.as_slice(), pb.as_slice(), -z)?;
        record(&mut t, case, "cosine", z, ReprRequest { kind: Kind::Cosine, sigma: None, a: ac, b: pb.clone(), z }.eval(&opts).map(|r| r.value), reference);

        // decomposition with a negative numerator entry
        let mut an = a.clone();
        an[0] = -rng.gen_range(0.1..1.4);
        if (an[0] - an[0].round()).abs() < 0.05 {
            an[0] += 0.1;
        }
        let pn = ParamVec::real(&an);
        let z = c(rng.gen_range(0.0..3.0));
        let reference = hyp(pn.as_slice(), pb.as_slice(), -z)?;
        record(&mut t, case, "decomposition", z, decomposed_eval(Kind::Laplace, None, &pn, &pb, z, None, &opts).map(|r| r.value), reference);
        case += 1;
    }
    match worst {
        Some(e) => Err(Failure::Numeric(e, t)),
        None => Ok(t),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut full = vec!["hypermellin"];
        full.extend_from_slice(args);
        let code = run_with(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn complex_tokens() {
        assert_eq!(parse_complex("1.5").unwrap(), C64::new(1.5, 0.0));
        assert_eq!(parse_complex("2+0.5j").unwrap(), C64::new(2.0, 0.5));
        assert_eq!(parse_complex("-1e-3-2j").unwrap(), C64::new(-1e-3, -2.0));
        assert_eq!(parse_complex("3j").unwrap(), C64::new(0.0, 3.0));
        assert_eq!(parse_complex("-j").unwrap(), C64::new(0.0, -1.0));
        assert_eq!(parse_complex("1e+2+1e-2i").unwrap(), C64::new(100.0, 0.01));
        assert!(parse_complex("x").is_err());
        assert!(parse_complex("").is_err());
    }

    #[test]
    fn config_file() {
        let mut c = RunConfig::default();
        c.apply_str("# comment\ntol = 1e-9\nbudget=100\nN=7\nformat=json\n").unwrap();
        assert_eq!((c.tol_abs, c.budget, c.norlund_n, c.format), (1e-9, 100, 7, Format::Json));
        assert!(c.apply_str("nonsense").is_err());
        assert!(c.apply_str("colour=red").is_err());
    }

    #[test]
    fn weight_rows() {
        let (code, out, _) = run_capture(&["weight", "--a", "1", "--b", "2", "--grid", "5"]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "x,g_re,g_im,abs_err,route");
        assert_eq!(lines.len(), 6);
        for l in &lines[1..] {
            let f: Vec<f64> = l.split(',').take(2).map(|s| s.parse().unwrap()).collect();
            assert!((f[0] - f[1]).abs() < 1e-14);
        }
    }

    #[test]
    fn usage_and_numeric_errors() {
        assert_eq!(run_capture(&["frobnicate"]).0, 2);
        assert_eq!(run_capture(&["eval", "--kind", "laplace", "--a", "1,x", "--b", "2", "--z", "1"]).0, 2);
        assert_eq!(run_capture(&["eval", "--kind", "laplace", "--a", "1", "--b", "2,3", "--z", "1"]).0, 2);
        let (code, out, _) = run_capture(&["ifs", "--a", "1", "--b", "2", "--w", "-1"]);
        assert_eq!(code, 1);
        assert!(out.starts_with("status,code,message\nerror,convergence_domain,"), "{out}");
    }

    #[test]
    fn json_output() {
        let (code, out, _) = run_capture(&["--format", "json", "eval", "--kind", "series", "--a", "1", "--b", "2", "--z", "0"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v[0]["value_re"], 1.0);
    }
}
