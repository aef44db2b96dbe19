//! Argument parsing and output rendering for the `chebroot` binary.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Map, Value};

use chebroot::dyck::{
    dyck_count, dyck_enumerate, f_d, g_d, sym_dyck_count, sym_dyck_enumerate, FMode, GMode, SeriesApprox,
    SeriesFamily,
};
use chebroot::numeric::{precision_for_digits, to_decimal};
use chebroot::nthroot::{pth_root_trace, PthRootProblem};
use chebroot::sqrt::{
    convergence_order_estimate, halley, householder, newton, HalleyForm, HouseholderForm, IterationTrace,
    NewtonForm, RootValue, SqrtProblem,
};
use chebroot::suite::{run_suites, Suite};
use chebroot::{BigFloat, BitGuard, Error, ExactRational};

/// Working precision for trace errors and order estimates, unless `--digits`
/// asks for more.
const TRACE_PRECISION: usize = 512;

#[derive(Debug, Parser)]
#[command(name = "chebroot", version, about = "Exact square and pth root iterations and their closed forms")]
pub struct RunConfig {
    #[arg(long, value_enum, default_value_t = Format::Plain, global = true)]
    pub format: Format,
    /// Cap on the bit size of any intermediate numerator or denominator.
    #[arg(long, global = true)]
    pub guard_bits: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct RootArgs {
    #[arg(long, value_parser = rational)]
    pub x: ExactRational,
    /// Seed; defaults to the nearest integer root of x.
    #[arg(long, value_parser = rational)]
    pub r: Option<ExactRational>,
    /// Householder order; the iteration converges with order d + 1.
    #[arg(long, default_value_t = 1)]
    pub d: u32,
    #[arg(long, default_value_t = 4)]
    pub n: u32,
    /// Fractional digits of the decimal rendering.
    #[arg(long, default_value_t = 30)]
    pub digits: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The n-th iterate for √x.
    Sqrt {
        #[command(flatten)]
        root: RootArgs,
        /// Iterate, sum, ratio, secondkind, algorithm1 (d = 1); product,
        /// algorithm (d = 2); cheb, monomial, producteven, factoredodd,
        /// recursiveodd, binomial, algorithm4 (any d).
        #[arg(long, default_value = "iterate")]
        form: String,
    },
    /// The n-th iterate for the p-th root of x.
    Nthroot {
        #[command(flatten)]
        root: RootArgs,
        #[arg(long)]
        p: u32,
    },
    /// Runs the identity registry and cross-form suites.
    Verify {
        /// `all` or a comma-separated list of identities, sqrt-forms,
        /// monomial, nthroot, dyck, series.
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Coefficients and partial sums of the f or g power series.
    Series {
        #[arg(long)]
        family: String,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        terms: u64,
        #[arg(long, value_parser = rational)]
        x: ExactRational,
        #[arg(long, default_value_t = 30)]
        digits: usize,
    },
    /// Height-bounded Dyck path counts.
    Dyck {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        h: u64,
        #[arg(long)]
        sym: bool,
        /// List the paths instead of counting them.
        #[arg(long)]
        enumerate: bool,
    },
    /// Every iterate with its error and the empirical convergence order.
    Trace {
        #[command(flatten)]
        root: RootArgs,
        /// Trace the p-th root iteration instead of the square root.
        #[arg(long)]
        p: Option<u32>,
    },
}

fn rational(s: &str) -> Result<ExactRational, String> {
    s.parse::<ExactRational>().map_err(|e| e.to_string())
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Domain(_) => 1,
        Error::Usage(_) => 2,
        Error::Resource(_) => 3,
        Error::Internal(_) => 4,
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match execute(&cfg) {
        Ok((report, code)) => {
            let _ = out.write_all(report.as_bytes());
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn guard(cfg: &RunConfig) -> BitGuard {
    cfg.guard_bits.map(BitGuard::new).unwrap_or_default()
}

/// Output text and exit code.
fn execute(cfg: &RunConfig) -> chebroot::Result<(String, i32)> {
    let report = match &cfg.command {
        Command::Sqrt { root, form } => sqrt_report(root, form, guard(cfg))?,
        Command::Nthroot { root, p } => nthroot_report(root, *p, guard(cfg))?,
        Command::Trace { root, p } => trace_report(root, *p, guard(cfg))?,
        Command::Series { family, d, terms, x, digits } => series_report(family.parse()?, *d, *terms, x, *digits)?,
        Command::Dyck { n, h, sym, enumerate } => dyck_report(*n, *h, *sym, *enumerate)?,
        Command::Verify { suite } => return verify(cfg.format, &Suite::parse_list(suite)?),
    };
    Ok((report.render(cfg.format), 0))
}

/// One computed value with its parameters and an optional table of rows.
#[derive(Debug, Serialize)]
struct Report {
    method: String,
    params: Map<String, Value>,
    value_fraction: String,
    value_decimal: String,
    trace: Vec<Map<String, Value>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    order: Option<Map<String, Value>>,
    /// Column order for plain and csv rendering of `trace`.
    #[serde(skip)]
    columns: Vec<&'static str>,
}

impl Report {
    fn new(method: String, params: Vec<(&str, String)>, value: &ExactRational, digits: usize) -> Self {
        Report {
            method,
            params: params.into_iter().map(|(k, v)| (k.to_string(), Value::String(v))).collect(),
            value_fraction: value.to_string(),
            value_decimal: to_decimal(value, digits),
            trace: Vec::new(),
            order: None,
            columns: Vec::new(),
        }
    }

    fn push_row(&mut self, row: Vec<(&'static str, String)>) {
        if self.columns.is_empty() {
            self.columns = row.iter().map(|(k, _)| *k).collect();
        }
        self.trace.push(row.into_iter().map(|(k, v)| (k.to_string(), Value::String(v))).collect());
    }

    fn cell(row: &Map<String, Value>, key: &str) -> String {
        row.get(key).and_then(Value::as_str).unwrap_or_default().to_string()
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("serializable");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut s = String::new();
                if self.trace.is_empty() {
                    s.push_str("method,value_fraction,value_decimal\n");
                    s.push_str(&format!("{},{},{}\n", self.method, self.value_fraction, self.value_decimal));
                } else {
                    s.push_str(&self.columns.join(","));
                    s.push('\n');
                    for row in &self.trace {
                        let cells: Vec<String> = self.columns.iter().map(|c| Self::cell(row, c)).collect();
                        s.push_str(&cells.join(","));
                        s.push('\n');
                    }
                }
                s
            }
            Format::Plain => {
                let mut s = format!("method: {}\n", self.method);
                for (k, v) in &self.params {
                    s.push_str(&format!("{k}: {}\n", v.as_str().unwrap_or_default()));
                }
                s.push_str(&format!("fraction: {}\n", self.value_fraction));
                s.push_str(&format!("decimal: {}\n", self.value_decimal));
                if !self.trace.is_empty() {
                    s.push_str(&self.columns.join("\t"));
                    s.push('\n');
                    for row in &self.trace {
                        let cells: Vec<String> = self.columns.iter().map(|c| Self::cell(row, c)).collect();
                        s.push_str(&cells.join("\t"));
                        s.push('\n');
                    }
                }
                if let Some(order) = &self.order {
                    for (k, v) in order {
                        s.push_str(&format!("order {k}: {}\n", v.as_str().unwrap_or_default()));
                    }
                }
                s
            }
        }
    }
}

fn sqrt_problem(root: &RootArgs, guard: BitGuard) -> chebroot::Result<SqrtProblem> {
    let prob = match &root.r {
        Some(r) => SqrtProblem::new(root.x.clone(), r.clone())?,
        None => SqrtProblem::with_default_seed(root.x.clone())?,
    };
    Ok(prob.with_guard(guard))
}

fn root_params(root: &RootArgs, r: &ExactRational) -> Vec<(&'static str, String)> {
    vec![
        ("x", root.x.to_string()),
        ("r", r.to_string()),
        ("d", root.d.to_string()),
        ("n", root.n.to_string()),
        ("digits", root.digits.to_string()),
    ]
}

/// Float values from the cosine-product forms are reported through their
/// exact binary expansion.
fn value_of(v: RootValue) -> ExactRational {
    match v {
        RootValue::Exact(q) => q,
        RootValue::Float(f) => f.to_rational(),
    }
}

fn sqrt_report(root: &RootArgs, form: &str, guard: BitGuard) -> chebroot::Result<Report> {
    let prob = sqrt_problem(root, guard)?;
    let (d, n) = (root.d, root.n);
    let precision = precision_for_digits(root.digits) + 64;
    let (label, value) = match (d, form.parse::<NewtonForm>(), form.parse::<HalleyForm>()) {
        (1, Ok(f), _) => {
            let f = match f {
                NewtonForm::Monomial { .. } => NewtonForm::Monomial { precision },
                other => other,
            };
            let name = match f {
                NewtonForm::Monomial { .. } => "Monomial".to_string(),
                other => format!("{other:?}"),
            };
            (format!("newton/{name}"), value_of(newton(&prob, n, f)?))
        }
        (2, _, Ok(f)) => (format!("halley/{f:?}"), halley(&prob, n, f)?),
        _ => {
            let f = match form.parse::<HouseholderForm>()? {
                HouseholderForm::Monomial { .. } => HouseholderForm::Monomial { precision },
                other => other,
            };
            (format!("householder/{}", f.name()), value_of(householder(&prob, d, n, f)?))
        }
    };
    Ok(Report::new(label, root_params(root, prob.r()), &value, root.digits))
}

fn pth_problem(root: &RootArgs, p: u32, guard: BitGuard) -> chebroot::Result<PthRootProblem> {
    let prob = match &root.r {
        Some(r) => PthRootProblem::new(root.x.clone(), p, r.clone(), root.d)?,
        None => PthRootProblem::with_default_seed(root.x.clone(), p, root.d)?,
    };
    Ok(prob.with_guard(guard))
}

fn nthroot_report(root: &RootArgs, p: u32, guard: BitGuard) -> chebroot::Result<Report> {
    let prob = pth_problem(root, p, guard)?;
    let trace = pth_root_trace(&prob, root.n)?;
    let value = trace.values.last().expect("seeded").clone();
    let mut params = root_params(root, prob.r());
    params.insert(1, ("p", p.to_string()));
    Ok(Report::new("pth-root/Iterate".into(), params, &value, root.digits))
}

fn trace_report(root: &RootArgs, p: Option<u32>, guard: BitGuard) -> chebroot::Result<Report> {
    let precision = TRACE_PRECISION.max(precision_for_digits(root.digits) + 64);
    let (trace, reference, mut params) = match p {
        None => {
            let prob = sqrt_problem(root, guard)?;
            let trace = IterationTrace::sqrt(&prob, root.d, root.n)?;
            (trace, prob.reference_root(precision), root_params(root, prob.r()))
        }
        Some(p) => {
            let prob = pth_problem(root, p, guard)?;
            let mut params = root_params(root, prob.r());
            params.insert(1, ("p", p.to_string()));
            (pth_root_trace(&prob, root.n)?, prob.reference_root(precision), params)
        }
    };
    params.push(("precision_bits", precision.to_string()));
    let trace = trace.with_errors(&reference);
    let last = trace.values.last().expect("seeded").clone();
    let mut report = Report::new(trace.method.to_string(), params, &last, root.digits);
    let errors = trace.errors.as_deref().unwrap_or_default();
    for (i, (v, e)) in trace.values.iter().zip(errors).enumerate() {
        report.push_row(vec![
            ("i", i.to_string()),
            ("value_fraction", v.to_string()),
            ("value_decimal", to_decimal(v, root.digits)),
            ("error", e.to_sci_string(6)),
        ]);
    }
    let mut order = Map::new();
    match convergence_order_estimate(&trace, &reference) {
        Ok(est) => {
            order.insert("estimate".into(), json!(to_decimal(&est.estimate.to_rational(), 4)));
            order.insert("pair".into(), json!(format!("{},{}", est.pair.0, est.pair.1)));
            let early = est.early_exact.map_or("none".to_string(), |i| i.to_string());
            order.insert("early_exact".into(), json!(early));
        }
        Err(e) => {
            order.insert("estimate".into(), json!("unavailable"));
            order.insert("reason".into(), json!(e.to_string()));
        }
    }
    report.order = Some(order);
    Ok(report)
}

fn series_report(family: SeriesFamily, d: u32, terms: u64, x: &ExactRational, digits: usize) -> chebroot::Result<Report> {
    if terms == 0 {
        return Err(Error::Usage("--terms must be at least 1".into()));
    }
    let exact = match family {
        SeriesFamily::F => f_d(d, x, FMode::Exact)?,
        SeriesFamily::G => g_d(d, x, GMode::Exact)?,
    }
    .into_exact()
    .ok_or_else(|| Error::Internal("exact mode returned a float".into()))?;
    let one = ExactRational::one();
    let convergent = match family {
        SeriesFamily::F => x.abs() > one,
        SeriesFamily::G => *x > one,
    };
    let params = vec![
        ("family", family.to_string()),
        ("d", d.to_string()),
        ("terms", terms.to_string()),
        ("x", x.to_string()),
        ("digits", digits.to_string()),
    ];
    let mut report = Report::new(format!("series-{family}"), params, &exact, digits);
    let full = SeriesApprox::new(family, d, terms - 1)?;
    let inv = x.recip()?;
    let mut partial = ExactRational::zero();
    for (i, c) in full.coefficients.iter().enumerate() {
        let power = match family {
            SeriesFamily::F => 2 * i as u32 + 2,
            SeriesFamily::G => i as u32 + 1,
        };
        partial = partial + c * inv.pow(power);
        let err = &exact - &partial;
        let bound = if convergent {
            SeriesApprox::new(family, d, i as u64)?.tail_bound(x)?.to_string()
        } else {
            "n/a".into()
        };
        report.push_row(vec![
            ("k", i.to_string()),
            ("power", format!("-{power}")),
            ("coefficient", c.to_string()),
            ("partial_sum", to_decimal(&partial, digits)),
            ("error", BigFloat::from_rational(&err, 128).to_sci_string(6)),
            ("tail_bound", bound),
        ]);
    }
    Ok(report)
}

fn dyck_report(n: u64, h: u64, sym: bool, enumerate: bool) -> chebroot::Result<Report> {
    let count = if sym { sym_dyck_count(n as i64, h)? } else { dyck_count(n, h) };
    let count = ExactRational::from_integer(BigInt::from(count));
    let params = vec![("n", n.to_string()), ("h", h.to_string()), ("sym", sym.to_string())];
    let method = if sym { "sym-dyck-count" } else { "dyck-count" };
    let mut report = Report::new(method.into(), params, &count, 0);
    if enumerate {
        let paths = if sym { sym_dyck_enumerate(n, h)? } else { dyck_enumerate(n, h)? };
        for (i, p) in paths.iter().enumerate() {
            report.push_row(vec![("i", i.to_string()), ("path", p.to_string())]);
        }
    }
    Ok(report)
}

fn verify(format: Format, suites: &[Suite]) -> chebroot::Result<(String, i32)> {
    let results = run_suites(suites);
    let failed = results.iter().filter(|r| !r.passed()).count();
    let status = |r: &chebroot::suite::CheckResult| match &r.outcome {
        Ok(true) => "PASS".to_string(),
        Ok(false) => "FAIL".to_string(),
        Err(e) => format!("FAIL ({e})"),
    };
    let mut s = String::new();
    match format {
        Format::Json => {
            let rows: Vec<Value> = results
                .iter()
                .map(|r| json!({"suite": r.suite.name(), "check": r.label, "status": status(r)}))
                .collect();
            let names: Vec<&str> = suites.iter().map(|s| s.name()).collect();
            let doc = json!({
                "method": "verify",
                "params": {"suite": names.join(",")},
                "passed": (results.len() - failed).to_string(),
                "failed": failed.to_string(),
                "results": rows,
            });
            s = serde_json::to_string_pretty(&doc).expect("serializable");
            s.push('\n');
        }
        Format::Csv => {
            s.push_str("suite,check,status\n");
            for r in &results {
                s.push_str(&format!("{},\"{}\",{}\n", r.suite, r.label, status(r)));
            }
        }
        Format::Plain => {
            for r in &results {
                s.push_str(&format!("{} {} {}\n", status(r), r.suite, r.label));
            }
            s.push_str(&format!("{} passed, {failed} failed\n", results.len() - failed));
        }
    }
    Ok((s, i32::from(failed > 0)))
}
