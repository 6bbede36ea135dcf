use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::{Signed, ToPrimitive};
use qmock_core::moonshine::{decompose_bounded, decompose_distinct};
use qmock_core::mock::h_series;
use qmock_core::uplane::{column_extract, column_support, generating_function, h_k_series, z0_reduce, Inputs, InvariantRecord, Route};
use qmock_core::verify::{self, Suite};
use qmock_core::{Error, Series, Q};
use serde_json::json;

use crate::json::{format_rational, series_to_json, MoonshineReport};
use crate::{registry, table};

pub const DEFAULT_ORDER: i64 = 64;
pub const ORDER_ENV: &str = "QMOCK_ORDER";

pub const EXIT_OK: u8 = 0;
pub const EXIT_MISMATCH: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Via {
    Qplus,
    H,
    Both,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    All,
    #[value(name = "paper-table")]
    Published,
    Kernel,
    Jacobi,
    Genus,
    Moonshine,
    Routes,
}

/// Exact q-expansions, u-plane invariants and moonshine decompositions
#[derive(Parser, Debug)]
#[command(name = "qmock", version, about, long_about = None)]
pub struct Args {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the q-expansion of a named series
    Coeffs {
        #[arg(long)]
        series: String,
        /// Precision in powers of q (default 64, or $QMOCK_ORDER)
        #[arg(long)]
        order: Option<i64>,
    },
    /// Compute one invariant Phi_{m,2n}
    Invariant {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = Via::Both)]
        via: Via,
    },
    /// All invariants with m + n <= max, along every route
    Table {
        #[arg(long)]
        max: u32,
    },
    /// D_{m,2n} as a combination of the coefficients H_k
    Column {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        /// Largest H_k to report (default: the last one that can contribute)
        #[arg(long)]
        kmax: Option<u32>,
    },
    /// Run verification suites
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
    },
    /// Decompose A_n into dimensions of M24 representations
    Moonshine {
        #[arg(long)]
        n: u32,
        /// Also search for a decomposition into distinct representations
        #[arg(long)]
        distinct: bool,
        /// Largest multiplicity in the bounded count
        #[arg(long, default_value_t = 1)]
        cap: u64,
        #[arg(long, default_value_t = 10)]
        max_witnesses: usize,
    },
    /// Write Hcal_k as a polynomial in Z0hat
    ReduceZ0 {
        #[arg(long)]
        k: u32,
        /// Precision in powers of q (default 64, or $QMOCK_ORDER)
        #[arg(long)]
        order: Option<i64>,
    },
}

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::RouteMismatch { .. } => Failure::Mismatch(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<crate::FormatError> for Failure {
    fn from(e: crate::FormatError) -> Self {
        Failure::Usage(e.to_string())
    }
}

struct Output {
    text: String,
    code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: EXIT_OK }
    }
}

fn resolve_order(flag: Option<i64>, env: Option<&str>) -> Result<i64, Failure> {
    let order = match (flag, env) {
        (Some(o), _) => o,
        (None, Some(v)) => v.trim().parse().map_err(|_| Failure::Usage(format!("{ORDER_ENV} must be an integer, got {v:?}")))?,
        (None, None) => DEFAULT_ORDER,
    };
    if order <= 0 {
        return Err(Failure::Usage(format!("order must be positive, got {order}")));
    }
    Ok(order)
}

fn not_supported(what: &str, format: Format) -> Failure {
    Failure::Usage(format!("{what} has no {format:?} output").to_lowercase())
}

fn coeffs(series: &str, order: i64, format: Format) -> Result<Output, Failure> {
    let s = registry::build(series, order * Q)
        .ok_or_else(|| Failure::Usage(format!("unknown series {series:?}; known: {}", registry::NAMES.join(", "))))??;
    let text = match format {
        Format::Json => series_to_json(&s) + "\n",
        Format::Plain => format!("{s}\n"),
        Format::Csv => series_csv(&s),
    };
    Ok(Output::ok(text))
}

fn series_csv(s: &Series) -> String {
    let mut out = String::from("exponent,re,im\n");
    for (e, c) in s.terms() {
        let e = qmock_core::Rational::new(e.into(), Q.into());
        let _ = writeln!(out, "{},{},{}", format_rational(&e), format_rational(&c.re), format_rational(&c.im));
    }
    out
}

fn records_output(records: &[InvariantRecord], format: Format) -> Result<String, Failure> {
    Ok(match format {
        Format::Csv => table::write_csv(records)?,
        Format::Json => {
            let rows: Vec<_> = records
                .iter()
                .map(|r| json!({"m": r.m, "n": r.n, "value": format_rational(&r.value), "route": r.route.label()}))
                .collect();
            serde_json::Value::Array(rows).to_string() + "\n"
        }
        Format::Plain => records
            .iter()
            .map(|r| format!("Phi({},{}) = {} [{}]\n", r.m, r.n, format_rational(&r.value), r.route.label()))
            .collect(),
    })
}

fn invariant(m: u32, n: u32, via: Via, format: Format) -> Result<Output, Failure> {
    let routes: &[Route] = match via {
        Via::Qplus => &[Route::QplusTau8],
        Via::H => &[Route::HOver12],
        Via::Both => &[Route::QplusTau8, Route::HOver12],
    };
    let inputs = Inputs::new(m + n)?;
    let records = routes
        .iter()
        .map(|&route| Ok(InvariantRecord { m, n, value: inputs.phi(m, n, route)?, route }))
        .collect::<Result<Vec<_>, Error>>()?;
    let agree = records.windows(2).all(|w| w[0].value == w[1].value);
    let text = records_output(&records, format)?;
    Ok(Output { text, code: if agree { EXIT_OK } else { EXIT_MISMATCH } })
}

fn column(m: u32, n: u32, kmax: Option<u32>, format: Format) -> Result<Output, Failure> {
    let coefficients = column_extract(m, n, kmax.unwrap_or_else(|| column_support(m, n)))?;
    let text = match format {
        Format::Json => {
            let values: Vec<String> = coefficients.iter().map(format_rational).collect();
            json!({"m": m, "n": n, "coefficients": values}).to_string() + "\n"
        }
        Format::Csv => {
            let mut out = String::from("k,coeff_num,coeff_den\n");
            for (k, c) in coefficients.iter().enumerate() {
                let _ = writeln!(out, "{k},{},{}", c.numer(), c.denom());
            }
            out
        }
        Format::Plain => {
            let mut out = format!("D({m},{n}) =");
            let mut first = true;
            for (k, c) in coefficients.iter().enumerate().rev().filter(|(_, c)| !num_traits::Zero::is_zero(*c)) {
                let sign = if c.is_negative() { "-" } else { "+" };
                if first {
                    out.push_str(if c.is_negative() { " -" } else { " " });
                } else {
                    let _ = write!(out, " {sign} ");
                }
                first = false;
                let _ = write!(out, "{} H_{k}", format_rational(&c.abs()));
            }
            if first {
                out.push_str(" 0");
            }
            out + "\n"
        }
    };
    Ok(Output::ok(text))
}

fn verify(suite: SuiteArg, format: Format) -> Result<Output, Failure> {
    let checks = match suite {
        SuiteArg::All => verify::run_all(),
        other => {
            let name = match other {
                SuiteArg::Published => "paper-table",
                SuiteArg::Kernel => "kernel",
                SuiteArg::Jacobi => "jacobi",
                SuiteArg::Genus => "genus",
                SuiteArg::Moonshine => "moonshine",
                _ => "routes",
            };
            verify::run(Suite::from_name(name).expect("suite names agree"))
        }
    };
    let failed = checks.iter().filter(|c| !c.passed).count();
    let text = match format {
        Format::Json => {
            let rows: Vec<_> = checks
                .iter()
                .map(|c| json!({"suite": c.suite.name(), "name": c.name, "passed": c.passed, "detail": c.detail}))
                .collect();
            serde_json::Value::Array(rows).to_string() + "\n"
        }
        Format::Plain => {
            let mut out = String::new();
            for c in &checks {
                let tag = if c.passed { "PASS" } else { "FAIL" };
                let _ = writeln!(out, "[{tag}] {}: {} ({})", c.suite.name(), c.name, c.detail);
            }
            let _ = writeln!(out, "{} of {} checks passed", checks.len() - failed, checks.len());
            out
        }
        Format::Csv => return Err(not_supported("verify", format)),
    };
    Ok(Output { text, code: if failed == 0 { EXIT_OK } else { EXIT_MISMATCH } })
}

fn moonshine(n: u32, distinct: bool, cap: u64, max_witnesses: usize, format: Format) -> Result<Output, Failure> {
    if n == 0 {
        return Err(Failure::Usage("A_n is defined for n >= 1".into()));
    }
    let h = h_series(Q * (n as i64 + 1))?;
    let a = h.a_n(n)?;
    let target = a
        .to_integer()
        .to_u64()
        .filter(|_| a.is_integer())
        .ok_or_else(|| Failure::Usage(format!("A_{n} = {a} is not a nonnegative integer")))?;
    let witness = if distinct { decompose_distinct(target) } else { None };
    let bounded = decompose_bounded(target, cap, max_witnesses);
    let report = MoonshineReport::new(target, witness.as_ref(), &bounded);
    let text = match format {
        Format::Json => report.to_json() + "\n",
        Format::Plain => {
            let mut out = format!("A_{n} = {target}\n");
            if distinct {
                match &report.distinct_witness {
                    Some(parts) => {
                        let parts: Vec<String> = parts.iter().map(u64::to_string).collect();
                        let _ = writeln!(out, "distinct: {}", parts.join(" + "));
                    }
                    None => out.push_str("distinct: none\n"),
                }
            }
            let _ = writeln!(out, "decompositions with multiplicities <= {cap}: {}", report.bounded_count);
            for w in &bounded.witnesses {
                let parts: Vec<String> = w.parts().iter().map(u64::to_string).collect();
                let _ = writeln!(out, "  {}", if parts.is_empty() { "0".into() } else { parts.join(" + ") });
            }
            out
        }
        Format::Csv => return Err(not_supported("moonshine", format)),
    };
    Ok(Output::ok(text))
}

fn reduce_z0(k: u32, order: i64, format: Format) -> Result<Output, Failure> {
    let hk = h_k_series(k, order * Q)?;
    let poly = z0_reduce(&hk, k + 1)?;
    let values: Vec<String> = poly.coefficients.iter().map(format_rational).collect();
    let text = match format {
        Format::Json => json!({"k": k, "order": order, "coefficients": values}).to_string() + "\n",
        Format::Csv => {
            let mut out = String::from("degree,coeff_num,coeff_den\n");
            for (d, c) in poly.coefficients.iter().enumerate() {
                let _ = writeln!(out, "{d},{},{}", c.numer(), c.denom());
            }
            out
        }
        Format::Plain => {
            let terms: Vec<String> = values.iter().enumerate().map(|(d, c)| format!("({c}) Z0hat^{d}")).collect();
            format!("Hcal_{k} = {}\n", terms.join(" + "))
        }
    };
    Ok(Output::ok(text))
}

fn dispatch(args: Args, env_order: Option<&str>) -> Result<Output, Failure> {
    let format = args.format;
    match args.command {
        Command::Coeffs { series, order } => coeffs(&series, resolve_order(order, env_order)?, format),
        Command::Invariant { m, n, via } => invariant(m, n, via, format),
        Command::Table { max } => {
            let gf = generating_function(max)?;
            match format {
                Format::Plain => {
                    let text = records_output(&gf.records, format)? + &gf.format_z() + "\n";
                    Ok(Output::ok(text))
                }
                _ => Ok(Output::ok(records_output(&gf.records, format)?)),
            }
        }
        Command::Column { m, n, kmax } => column(m, n, kmax, format),
        Command::Verify { suite } => verify(suite, format),
        Command::Moonshine { n, distinct, cap, max_witnesses } => moonshine(n, distinct, cap, max_witnesses, format),
        Command::ReduceZ0 { k, order } => reduce_z0(k, resolve_order(order, env_order)?, format),
    }
}

/// Runs the command line `argv` (program name first) and returns the exit
/// code. `env_order` stands in for `$QMOCK_ORDER`.
pub fn run<I, T>(argv: I, env_order: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match dispatch(args, env_order) {
        Ok(o) => {
            let _ = out.write_all(o.text.as_bytes());
            o.code
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Mismatch(msg)) => {
            let _ = writeln!(err, "mismatch: {msg}");
            EXIT_MISMATCH
        }
    }
}
