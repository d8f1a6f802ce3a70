//! Command-line front end: `gen`, `det`, `charpoly`, `spectrum`, `verify`
//! and `bench`.
//!
//! Exit codes: 0 on success, 1 when a verification report fails, 2 on any
//! usage error.

use std::fmt::Display;
use std::io::Write;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bench::{self, BenchConfig, Method};
use crate::closed_forms::{rational_values, spectrum, Spectrum};
use crate::exact_arith::{parse_rational, MultiPoly, Rational, Ring};
use crate::families::{Family, Instance, Sign};
use crate::io::{write_csv_rows, write_matrix_market, MatrixMarketValue};
use crate::tridiag::{ScaledFloat, Tridiagonal};
use crate::verify::{
    self, numeric_residual, numeric_tolerance, verify_rational, Job, VerificationReport,
};
use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "sk-spectra", version, about = "Sylvester-Kac type matrices: construction, closed-form spectra, exact certification")]
pub struct CliConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a family member as a matrix.
    Gen(MatrixArgs),
    /// Determinant by the continuant recurrence and by the closed form.
    Det(MatrixArgs),
    /// Characteristic polynomial det(λI − M), both ways.
    Charpoly(MatrixArgs),
    /// Closed-form eigenvalues, one per row.
    Spectrum(MatrixArgs),
    /// Certify the closed forms over a range of n.
    Verify(VerifyArgs),
    /// Time the determinant methods over an n schedule.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Matrixmarket,
    Csv,
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Symbolic,
    Rational,
    Numeric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SignArg {
    Plus,
    Minus,
}

impl From<SignArg> for Sign {
    fn from(s: SignArg) -> Sign {
        match s {
            SignArg::Plus => Sign::Plus,
            SignArg::Minus => Sign::Minus,
        }
    }
}

#[derive(Debug, Args)]
pub struct MatrixArgs {
    /// clement, j, m, m_plus, m_minus (or mpm with --sign)
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub n: usize,
    /// Comma-separated parameter values: z0,z1 | x,y,u,v | a,b,r
    #[arg(long, allow_hyphen_values = true)]
    pub params: Option<String>,
    #[arg(long, value_enum)]
    pub sign: Option<SignArg>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    #[arg(long, value_enum, default_value = "rational")]
    pub mode: ModeArg,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// A family name, or `all`
    #[arg(long, default_value = "all")]
    pub family: String,
    #[arg(long, value_enum)]
    pub sign: Option<SignArg>,
    /// Verify a single n
    #[arg(long, conflicts_with_all = ["n_min", "n_max"])]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub n_min: usize,
    #[arg(long, default_value_t = 30)]
    pub n_max: usize,
    #[arg(long, value_enum, default_value = "symbolic")]
    pub mode: ModeArg,
    #[arg(long, allow_hyphen_values = true)]
    pub params: Option<String>,
    /// Random parameter draws per (family, n) in rational and numeric modes
    #[arg(long, default_value_t = 100)]
    pub draws: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Also check that the charpoly vanishes at each closed-form eigenvalue
    #[arg(long)]
    pub roots: bool,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, default_value = "j")]
    pub family: String,
    #[arg(long, value_enum)]
    pub sign: Option<SignArg>,
    #[arg(long, allow_hyphen_values = true)]
    pub params: Option<String>,
    /// Comma-separated list of n
    #[arg(long, default_value = "1000,10000,100000,1000000")]
    pub n_schedule: String,
    #[arg(long, default_value_t = 5)]
    pub repetitions: usize,
    /// Comma-separated subset of closed_form_det, continuant_det, cofactor_dense
    #[arg(long)]
    pub methods: Option<String>,
    /// Minimum duration of one timed sample, in milliseconds
    #[arg(long, default_value_t = 2.0)]
    pub min_sample_ms: f64,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

/// Resolves a family name; `mpm` takes its sign from `--sign`.
fn resolve_family(name: &str, sign: Option<SignArg>) -> Result<Family, Error> {
    match (name.to_ascii_lowercase().as_str(), sign) {
        ("mpm" | "m_pm" | "m±", s) => Ok(match s.map(Sign::from).unwrap_or(Sign::Plus) {
            Sign::Plus => Family::MPlus,
            Sign::Minus => Family::MMinus,
        }),
        (_, s) => {
            let f: Family = name.parse()?;
            match (f.sign(), s) {
                (Some(own), Some(s)) if own != Sign::from(s) => Err(Error::Usage(format!(
                    "--sign {s:?} contradicts family {f}"
                ))),
                (None, Some(_)) => Err(Error::Usage(format!("family {f} takes no sign"))),
                _ => Ok(f),
            }
        }
    }
}

fn resolve_families(name: &str, sign: Option<SignArg>) -> Result<Vec<Family>, Error> {
    match (name.to_ascii_lowercase().as_str(), sign) {
        ("all", None) => Ok(Family::ALL.to_vec()),
        ("all", Some(_)) => Err(Error::Usage("--sign cannot be combined with --family all".into())),
        ("mpm" | "m_pm" | "m±", None) => Ok(vec![Family::MPlus, Family::MMinus]),
        _ => Ok(vec![resolve_family(name, sign)?]),
    }
}

fn split_params(raw: Option<&str>) -> Vec<&str> {
    raw.map(|s| s.split(',').map(str::trim).filter(|s| !s.is_empty()).collect())
        .unwrap_or_default()
}

fn rational_params(raw: Option<&str>) -> Result<Vec<Rational>, Error> {
    split_params(raw).into_iter().map(parse_rational).collect()
}

fn float_params(raw: Option<&str>) -> Result<Vec<f64>, Error> {
    split_params(raw)
        .into_iter()
        .map(|s| {
            let s = s.replace('\u{2212}', "-");
            match s.parse::<f64>() {
                Ok(v) => Ok(v),
                Err(_) if s.contains('/') => parse_rational(&s).map(|q| f64::from_rational(&q)),
                Err(_) => Err(Error::Parse(format!("not a number: {s:?}"))),
            }
        })
        .collect()
}

/// Parses, runs and returns the exit code. Diagnostics go to `err`.
pub fn run_from_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match CliConfig::try_parse_from(args) {
        Ok(config) => run_with(&config, out, err),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            code
        }
    }
}

/// Runs with diagnostics on stderr.
pub fn run(config: &CliConfig, out: &mut dyn Write) -> i32 {
    run_with(config, out, &mut std::io::stderr())
}

pub fn run_with(config: &CliConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match &config.command {
        Command::Gen(a) => matrix_command(a, out, Op::Gen),
        Command::Det(a) => matrix_command(a, out, Op::Det),
        Command::Charpoly(a) => matrix_command(a, out, Op::Charpoly),
        Command::Spectrum(a) => matrix_command(a, out, Op::Spectrum),
        Command::Verify(a) => verify_command(a, out),
        Command::Bench(a) => bench_command(a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

#[derive(Clone, Copy)]
enum Op {
    Gen,
    Det,
    Charpoly,
    Spectrum,
}

fn matrix_command(a: &MatrixArgs, out: &mut dyn Write, op: Op) -> Result<i32, Error> {
    let family = resolve_family(&a.family, a.sign)?;
    match a.mode {
        ModeArg::Symbolic => {
            let inst = Instance::symbolic(family, a.n);
            emit(&inst, a.format, op, out, &Exact)
        }
        ModeArg::Rational => {
            let values = rational_params(a.params.as_deref())?;
            let inst = Instance::from_values(family, a.n, &values)?;
            emit(&inst, a.format, op, out, &ExactRational)
        }
        ModeArg::Numeric => {
            let values = float_params(a.params.as_deref())?;
            let inst = Instance::from_values(family, a.n, &values)?;
            emit(&inst, a.format, op, out, &Numeric)
        }
    }?;
    Ok(EXIT_OK)
}

/// Mode-specific rendering of determinants, charpolys and spectra.
trait Render<R> {
    fn det_rows(&self, m: &Tridiagonal<R>, s: &Spectrum<R>) -> (Vec<(String, String)>, bool);
    fn charpoly_rows(&self, m: &Tridiagonal<R>, s: &Spectrum<R>) -> (Vec<Vec<String>>, Value);
    fn spectrum_rows(&self, s: &Spectrum<R>) -> Vec<Vec<String>>;
}

struct Exact;
struct Numeric;

impl<R: Ring + Display + Into<MultiPoly>> Render<R> for Exact {
    fn det_rows(&self, m: &Tridiagonal<R>, s: &Spectrum<R>) -> (Vec<(String, String)>, bool) {
        let cont = m.det();
        let closed = s.det_closed();
        let equal = closed.radical_part.is_zero() && closed.rational_part == cont;
        (
            vec![
                ("continuant".into(), cont.to_string()),
                ("closed_form".into(), closed.to_string()),
            ],
            equal,
        )
    }

    fn charpoly_rows(&self, m: &Tridiagonal<R>, s: &Spectrum<R>) -> (Vec<Vec<String>>, Value) {
        let lhs = m.charpoly();
        let rhs = s.charpoly_closed();
        let rows = vec![
            vec!["continuant".into(), lhs.to_string()],
            vec!["closed_form".into(), rhs.to_string()],
        ];
        let v = json!({ "continuant": lhs.to_string(), "closed_form": rhs.to_string(), "equal": lhs == rhs });
        (rows, v)
    }

    fn spectrum_rows(&self, s: &Spectrum<R>) -> Vec<Vec<String>> {
        s.eigenvalues.iter().map(|e| vec![e.to_string()]).collect()
    }
}

/// Rationals get their own spectrum rendering: exact values, ascending,
/// whenever the discriminant is a perfect square.
struct ExactRational;

impl Render<Rational> for ExactRational {
    fn det_rows(&self, m: &Tridiagonal<Rational>, s: &Spectrum<Rational>) -> (Vec<(String, String)>, bool) {
        Render::<Rational>::det_rows(&Exact, m, s)
    }
    fn charpoly_rows(&self, m: &Tridiagonal<Rational>, s: &Spectrum<Rational>) -> (Vec<Vec<String>>, Value) {
        Render::<Rational>::charpoly_rows(&Exact, m, s)
    }
    fn spectrum_rows(&self, s: &Spectrum<Rational>) -> Vec<Vec<String>> {
        match rational_values(s) {
            Some(mut vals) => {
                vals.sort();
                vals.into_iter().map(|v| vec![v.to_string()]).collect()
            }
            None => Render::<Rational>::spectrum_rows(&Exact, s),
        }
    }
}

fn scaled_to_string(s: ScaledFloat) -> String {
    let v = s.to_f64();
    if v.is_finite() && (v != 0.0 || s.mantissa == 0.0) {
        format!("{v}")
    } else {
        format!("{}*2^{}", s.mantissa, s.exponent)
    }
}

impl Render<f64> for Numeric {
    fn det_rows(&self, m: &Tridiagonal<f64>, s: &Spectrum<f64>) -> (Vec<(String, String)>, bool) {
        let cont = m.det_scaled();
        let closed = s.det_scaled();
        let equal = cont.relative_error(closed) <= numeric_tolerance(m.n());
        (
            vec![
                ("continuant".into(), scaled_to_string(cont)),
                ("closed_form".into(), scaled_to_string(closed)),
            ],
            equal,
        )
    }

    fn charpoly_rows(&self, m: &Tridiagonal<f64>, s: &Spectrum<f64>) -> (Vec<Vec<String>>, Value) {
        let lhs = m.charpoly_coeffs();
        let rhs = s.charpoly_coeffs();
        let rows = lhs
            .iter()
            .zip(&rhs)
            .enumerate()
            .map(|(i, (a, b))| vec![i.to_string(), a.to_string(), b.to_string()])
            .collect();
        (rows, json!({ "continuant": lhs, "closed_form": rhs }))
    }

    fn spectrum_rows(&self, s: &Spectrum<f64>) -> Vec<Vec<String>> {
        let vals = s.sorted_values();
        let complex = vals.iter().any(|z| z.im != 0.0);
        vals.iter()
            .map(|z| {
                if complex {
                    vec![z.re.to_string(), z.im.to_string()]
                } else {
                    vec![z.re.to_string()]
                }
            })
            .collect()
    }
}

fn emit<R, V>(inst: &Instance<R>, format: Format, op: Op, out: &mut dyn Write, renderer: &V) -> Result<(), Error>
where
    R: Ring + Display + MatrixMarketValue,
    V: Render<R>,
{
    let m = inst.matrix();
    let header = json!({ "family": inst.family(), "n": inst.n() });
    match op {
        Op::Gen => match format {
            Format::Matrixmarket => write_matrix_market(out, &m)?,
            Format::Csv => {
                let rows: Vec<Vec<String>> = m
                    .to_dense()
                    .iter()
                    .map(|r| r.iter().map(ToString::to_string).collect())
                    .collect();
                write_csv_rows(out, &rows)?;
            }
            Format::Json => {
                let strs = |v: &[R]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
                let mut v = header;
                v["diag"] = json!(strs(m.diag()));
                v["superdiag"] = json!(strs(m.superdiag()));
                v["subdiag"] = json!(strs(m.subdiag()));
                writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json"))?;
            }
            Format::Text => {
                for row in m.to_dense() {
                    let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
                    writeln!(out, "{}", cells.join("\t"))?;
                }
            }
        },
        Op::Det => {
            let s = spectrum(inst);
            let (rows, equal) = renderer.det_rows(&m, &s);
            match format {
                Format::Json => {
                    let mut v = header;
                    for (k, val) in &rows {
                        v[k.as_str()] = json!(val);
                    }
                    v["equal"] = json!(equal);
                    writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json"))?;
                }
                Format::Csv => {
                    let mut table = vec![vec!["method".to_string(), "value".to_string()]];
                    table.extend(rows.into_iter().map(|(k, v)| vec![k, v]));
                    write_csv_rows(out, &table)?;
                }
                Format::Text => {
                    for (k, v) in rows {
                        writeln!(out, "{k}: {v}")?;
                    }
                    writeln!(out, "equal: {equal}")?;
                }
                Format::Matrixmarket => return Err(not_for("det", format)),
            }
        }
        Op::Charpoly => {
            let s = spectrum(inst);
            let (rows, value) = renderer.charpoly_rows(&m, &s);
            match format {
                Format::Json => {
                    let mut v = header;
                    if let Value::Object(map) = value {
                        for (k, val) in map {
                            v[k] = val;
                        }
                    }
                    writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json"))?;
                }
                Format::Csv => write_csv_rows(out, &rows)?,
                Format::Text => {
                    for r in rows {
                        writeln!(out, "{}", r.join(": "))?;
                    }
                }
                Format::Matrixmarket => return Err(not_for("charpoly", format)),
            }
        }
        Op::Spectrum => {
            let s = spectrum(inst);
            let rows = renderer.spectrum_rows(&s);
            match format {
                Format::Csv => write_csv_rows(out, &rows)?,
                Format::Text => {
                    for r in rows {
                        writeln!(out, "{}", r.join(" "))?;
                    }
                }
                Format::Json => {
                    let mut v = header;
                    v["center"] = json!(s.center.to_string());
                    v["discriminant"] = json!(s.step_discriminant.to_string());
                    v["eigenvalues"] = json!(rows);
                    writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json"))?;
                }
                Format::Matrixmarket => return Err(not_for("spectrum", format)),
            }
        }
    }
    Ok(())
}

fn not_for(cmd: &str, format: Format) -> Error {
    Error::Usage(format!("{cmd} does not support --format {format:?}").to_lowercase())
}

fn verify_command(a: &VerifyArgs, out: &mut dyn Write) -> Result<i32, Error> {
    let families = resolve_families(&a.family, a.sign)?;
    let ns: Vec<usize> = match a.n {
        Some(n) => vec![n],
        None if a.n_min <= a.n_max => (a.n_min..=a.n_max).collect(),
        None => return Err(Error::Usage(format!("--n-min {} exceeds --n-max {}", a.n_min, a.n_max))),
    };
    let threads = verify::thread_cap();
    let reports: Vec<VerificationReport> = match a.mode {
        ModeArg::Symbolic => {
            let mut jobs = verify::charpoly_jobs(&families);
            if a.family.eq_ignore_ascii_case("all") {
                jobs.push(Job::Substitutions);
            }
            if a.roots {
                jobs.extend(families.iter().map(|&f| Job::Roots(f)));
            }
            verify::run_suite(&jobs, ns, threads)
        }
        ModeArg::Rational if a.params.is_some() => {
            let values = rational_params(a.params.as_deref())?;
            let mut reports = Vec::new();
            for &n in &ns {
                for &f in &families {
                    reports.push(verify_rational(&Instance::from_values(f, n, &values)?));
                }
            }
            reports
        }
        ModeArg::Rational => {
            let jobs: Vec<Job> = families
                .iter()
                .map(|&family| Job::RandomRational {
                    family,
                    draws: a.draws,
                    seed: a.seed,
                })
                .collect();
            verify::run_suite(&jobs, ns, threads)
        }
        ModeArg::Numeric if a.params.is_some() => {
            let values = float_params(a.params.as_deref())?;
            let mut reports = Vec::new();
            for &n in &ns {
                for &f in &families {
                    let started = Instant::now();
                    let r = numeric_residual(f, n, &values, a.seed)?;
                    reports.push(r.to_verification(started.elapsed().as_secs_f64() * 1e3));
                }
            }
            reports
        }
        ModeArg::Numeric => {
            let jobs: Vec<Job> = families
                .iter()
                .map(|&family| Job::Numeric {
                    family,
                    draws: a.draws,
                    seed: a.seed,
                })
                .collect();
            verify::run_suite(&jobs, ns, threads)
        }
    };

    match a.format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&reports).expect("json"))?,
        Format::Csv => {
            let mut rows = vec![["family", "n", "mode", "check", "passed", "witness", "elapsed_ms"]
                .map(String::from)
                .to_vec()];
            for r in &reports {
                rows.push(vec![
                    r.family.to_string(),
                    r.n.to_string(),
                    enum_name(&r.mode),
                    enum_name(&r.check),
                    r.passed.to_string(),
                    r.witness.clone().unwrap_or_default(),
                    format!("{:.3}", r.elapsed_ms),
                ]);
            }
            write_csv_rows(out, &rows)?;
        }
        Format::Text => {
            for r in &reports {
                writeln!(
                    out,
                    "{} {:<8} n={:<3} {} {} {:.1}ms{}",
                    if r.passed { "PASS" } else { "FAIL" },
                    r.family,
                    r.n,
                    enum_name(&r.mode),
                    enum_name(&r.check),
                    r.elapsed_ms,
                    r.witness.as_ref().map(|w| format!(" [{w}]")).unwrap_or_default()
                )?;
            }
            let failed = reports.iter().filter(|r| !r.passed).count();
            writeln!(out, "{} reports, {failed} failed", reports.len())?;
        }
        Format::Matrixmarket => return Err(not_for("verify", a.format)),
    }
    Ok(if reports.iter().all(|r| r.passed) {
        EXIT_OK
    } else {
        EXIT_FAILED
    })
}

fn enum_name<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_value(v)
        .ok()
        .and_then(|v| v.as_str().map(String::from))
        .unwrap_or_default()
}

fn bench_command(a: &BenchArgs, out: &mut dyn Write) -> Result<i32, Error> {
    let family = resolve_family(&a.family, a.sign)?;
    let params = match a.params.as_deref() {
        Some(p) => float_params(Some(p))?,
        None => bench::default_params(family),
    };
    let ns = a
        .n_schedule
        .split(',')
        .map(|s| {
            s.trim()
                .replace('_', "")
                .parse::<f64>()
                .ok()
                .filter(|v| *v >= 0.0 && v.fract() == 0.0)
                .map(|v| v as usize)
                .ok_or_else(|| Error::Parse(format!("bad n in schedule: {s:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut config = BenchConfig::new(family, params, ns);
    config.repetitions = a.repetitions;
    config.min_sample = Duration::from_secs_f64(a.min_sample_ms.max(0.0) / 1e3);
    config.methods = match a.methods.as_deref() {
        Some(list) => list
            .split(',')
            .map(|s| s.trim().parse::<Method>())
            .collect::<Result<_, _>>()?,
        None => {
            let mut m = vec![Method::ClosedFormDet, Method::ContinuantDet];
            if config.ns.iter().all(|&n| n < bench::MAX_COFACTOR_ORDER) {
                m.push(Method::CofactorDense);
            }
            m
        }
    };
    let report = bench::run_bench(&config)?;
    match a.format {
        Format::Csv => write!(out, "{}", report.to_csv())?,
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("json"))?,
        Format::Text => {
            writeln!(
                out,
                "cross-check n=5: closed {} continuant {} cofactor {} (max rel diff {:e})",
                report.cross_check.closed_form,
                report.cross_check.continuant,
                report.cross_check.cofactor,
                report.cross_check.max_relative_difference
            )?;
            for r in &report.rows {
                writeln!(out, "{:>10} {:<16} {:>14.0} ns", r.n, r.method, r.nanoseconds)?;
            }
        }
        Format::Matrixmarket => return Err(not_for("bench", a.format)),
    }
    Ok(EXIT_OK)
}

