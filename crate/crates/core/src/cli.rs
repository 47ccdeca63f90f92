//! Command-line front end: coefficient tables, verification suites,
//! moments and point evaluation.
//!
//! Exit status: 0 success, 1 verification failure, 2 usage or parameter
//! error, 3 quasi-definiteness failure.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::catalog::{closed_form_ttr, make_system, CatalogId, Family, Forms};
use crate::error::{Error, Result};
use crate::numerics::{format_f64, Field, Mode, Rational, Scalar};
use crate::ttr::{band_entries, theorem_ttr, ttr_from_gram, MatrixId};
use crate::verify::{run_suite, Fault, SuiteOptions, VerifyReport};

pub const SCHEMA: &str = "ortho2d/1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_QUASI: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "ortho2d", version, about = "Three-term relations of bivariate orthogonal polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Emit the six relation matrices for every degree up to --max-n.
    Tables(TablesArgs),
    /// Run the verification suite; exit status 0 iff every check passes.
    Verify(VerifyArgs),
    /// Emit the moments <w, x^h y^k> for h + k <= --max-order.
    Moments(MomentsArgs),
    /// Evaluate P_{n,m} at a point.
    Eval(EvalArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exact,
    Float,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Source {
    /// Generic construction from univariate recurrences.
    Theorem,
    /// The moment functional (Gram blocks).
    Gram,
    /// The published closed forms.
    Printed,
    /// The published closed forms with known errata applied.
    Corrected,
}

#[derive(Debug, Clone, Args)]
struct FamilyArgs {
    /// disk, biangle, simplex, square, laguerre-jacobi or bessel-laguerre.
    #[arg(long)]
    family: String,
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    delta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    g: Option<String>,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
}

#[derive(Debug, Clone, Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
struct TablesArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long)]
    max_n: usize,
    #[arg(long, value_enum, default_value = "theorem")]
    source: Source,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
struct VerifyArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long)]
    max_n: usize,
    /// Random evaluation points per relation in float mode.
    #[arg(long, default_value_t = 100)]
    points: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Test hook: corrupt one entry, given as n,MATRIX,row,col.
    #[arg(long, hide = true)]
    inject_fault: Option<String>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
struct MomentsArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long)]
    max_order: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
struct EvalArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    #[arg(long, allow_hyphen_values = true)]
    x: String,
    #[arg(long, allow_hyphen_values = true)]
    y: String,
    #[command(flatten)]
    output: OutputArgs,
}

/// Outcome of a command before it is written out.
struct Output {
    json: Value,
    csv: Vec<Vec<String>>,
    passed: bool,
}

fn exit_code(err: &Error) -> i32 {
    if err.is_quasi_definite() {
        EXIT_QUASI
    } else if matches!(err, Error::Inconsistent(_)) {
        EXIT_VERIFY
    } else {
        EXIT_USAGE
    }
}

impl FamilyArgs {
    fn family(&self) -> Result<Family> {
        self.family.parse()
    }

    fn mode(&self, default: Mode) -> Mode {
        match self.mode {
            Some(ModeArg::Exact) => Mode::Exact,
            Some(ModeArg::Float) => Mode::Float,
            None => default,
        }
    }

    fn given(&self) -> [(&'static str, &Option<String>); 6] {
        [
            ("mu", &self.mu),
            ("alpha", &self.alpha),
            ("beta", &self.beta),
            ("gamma", &self.gamma),
            ("delta", &self.delta),
            ("g", &self.g),
        ]
    }

    /// Parameter texts in positional order, rejecting missing and
    /// foreign parameters.
    fn texts(&self) -> Result<Vec<(&'static str, String)>> {
        let family = self.family()?;
        let names = family.param_names();
        for (name, value) in self.given() {
            if value.is_some() && !names.contains(&name) {
                return Err(Error::Domain(format!("--{name} is not a parameter of {family}")));
            }
        }
        names
            .iter()
            .map(|&name| {
                let value = self.given().iter().find(|(k, _)| *k == name).and_then(|(_, v)| (*v).clone());
                value
                    .map(|v| (name, v))
                    .ok_or_else(|| Error::Domain(format!("{family} needs --{name}")))
            })
            .collect()
    }

    fn id<F: Field>(&self) -> Result<CatalogId<F>> {
        let values = self
            .texts()?
            .into_iter()
            .map(|(_, t)| Scalar::parse(&t, F::MODE).and_then(|s| F::try_from_scalar(&s)))
            .collect::<Result<Vec<F>>>()?;
        CatalogId::new(self.family()?, &values)
    }
}

fn value_text<F: Field>(v: &F) -> String {
    match v.to_scalar() {
        Scalar::Exact(r) => r.to_string(),
        Scalar::Float(f) => format_f64(f),
    }
}

fn header<F: Field>(command: &str, id: &CatalogId<F>) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    m.insert("command".into(), json!(command));
    m.insert("family".into(), json!(id.family().name()));
    let params: Map<String, Value> = id
        .params()
        .into_iter()
        .map(|(k, v)| (k.to_string(), json!(value_text(&v))))
        .collect();
    m.insert("params".into(), Value::Object(params));
    m.insert("mode".into(), json!(F::MODE.as_str()));
    m
}

fn tables<F: Field>(args: &TablesArgs) -> Result<Output> {
    let id = args.family.id::<F>()?;
    let sys = make_system(&id, args.max_n)?;
    let mut degrees = Vec::new();
    let mut rows = vec![["n", "m", "matrix", "entry", "row", "col", "value"]
        .iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()];
    for n in 0..=args.max_n {
        let set = match args.source {
            Source::Theorem => theorem_ttr(&sys, n)?,
            Source::Gram => ttr_from_gram(&sys, n)?,
            Source::Printed => closed_form_ttr(&id, n, Forms::Printed)?,
            Source::Corrected => closed_form_ttr(&id, n, Forms::Corrected)?,
        };
        let mut matrices = Map::new();
        for mid in MatrixId::ALL {
            let (r, c) = mid.shape(n);
            let band: Vec<Value> = band_entries(n)
                .into_iter()
                .filter(|e| e.matrix == mid)
                .map(|e| {
                    let v = value_text(&set.entry(&e));
                    rows.push(vec![
                        n.to_string(),
                        e.row.to_string(),
                        mid.name().to_string(),
                        e.name.to_string(),
                        e.row.to_string(),
                        e.col.to_string(),
                        v.clone(),
                    ]);
                    json!({"entry": e.name, "m": e.row, "row": e.row, "col": e.col, "value": v})
                })
                .collect();
            matrices.insert(mid.name().into(), json!({"shape": [r, c], "band": band}));
        }
        degrees.push(json!({"n": n, "matrices": matrices}));
    }
    let mut out = header("tables", &id);
    out.insert("max_n".into(), json!(args.max_n));
    out.insert(
        "source".into(),
        json!(args.source.to_possible_value().expect("value").get_name()),
    );
    out.insert("degrees".into(), Value::Array(degrees));
    Ok(Output {
        json: Value::Object(out),
        csv: rows,
        passed: true,
    })
}

fn parse_fault(text: &str) -> Result<Fault> {
    let bad = || Error::Parse(text.to_string());
    let parts: Vec<_> = text.split(',').map(str::trim).collect();
    let [n, matrix, row, col] = parts[..] else {
        return Err(bad());
    };
    let matrix = MatrixId::ALL
        .into_iter()
        .find(|m| m.name().eq_ignore_ascii_case(matrix))
        .ok_or_else(bad)?;
    Ok(Fault {
        n: n.parse().map_err(|_| bad())?,
        matrix,
        row: row.parse().map_err(|_| bad())?,
        col: col.parse().map_err(|_| bad())?,
    })
}

fn report_json<F: Field>(id: &CatalogId<F>, report: &VerifyReport) -> Value {
    let mut out = header("verify", id);
    out.insert("max_n".into(), json!(report.max_degree));
    out.insert("passed".into(), json!(report.passed()));
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|c| {
            json!({
                "name": c.name,
                "status": if c.passed { "pass" } else { "fail" },
                "witness": c.witness,
                "detail": c.detail,
            })
        })
        .collect();
    out.insert("checks".into(), Value::Array(checks));
    Value::Object(out)
}

fn verify<F: Field>(args: &VerifyArgs) -> Result<Output> {
    let id = args.family.id::<F>()?;
    let options = SuiteOptions {
        fault: args.inject_fault.as_deref().map(parse_fault).transpose()?,
        float_points: args.points,
        seed: args.seed,
    };
    let report = run_suite(&id, args.max_n, &options)?;
    let mut rows = vec![vec![
        "check".to_string(),
        "status".into(),
        "witness".into(),
        "detail".into(),
    ]];
    for c in &report.checks {
        rows.push(vec![
            c.name.clone(),
            if c.passed { "pass" } else { "fail" }.into(),
            c.witness.clone().unwrap_or_default(),
            c.detail.clone().unwrap_or_default(),
        ]);
    }
    Ok(Output {
        json: report_json(&id, &report),
        csv: rows,
        passed: report.passed(),
    })
}

fn moments<F: Field>(args: &MomentsArgs) -> Result<Output> {
    let id = args.family.id::<F>()?;
    let sys = make_system(&id, args.max_order / 2 + 1)?;
    let mut list = Vec::new();
    let mut rows = vec![vec!["h".to_string(), "k".into(), "value".into()]];
    for total in 0..=args.max_order {
        for h in (0..=total).rev() {
            let k = total - h;
            let v = value_text(&sys.w_moment(h, k)?);
            rows.push(vec![h.to_string(), k.to_string(), v.clone()]);
            list.push(json!({"h": h, "k": k, "value": v}));
        }
    }
    let mut out = header("moments", &id);
    out.insert("max_order".into(), json!(args.max_order));
    out.insert("moments".into(), Value::Array(list));
    Ok(Output {
        json: Value::Object(out),
        csv: rows,
        passed: true,
    })
}

fn eval<F: Field>(args: &EvalArgs) -> Result<Output> {
    if args.m > args.n {
        return Err(Error::Range(format!("m = {} exceeds n = {}", args.m, args.n)));
    }
    let id = args.family.id::<F>()?;
    let sys = make_system(&id, args.n)?;
    let x = F::try_from_scalar(&Scalar::parse(&args.x, F::MODE)?)?;
    let y = F::try_from_scalar(&Scalar::parse(&args.y, F::MODE)?)?;
    let v = value_text(&sys.expand_p(args.n, args.m)?.eval(&x, &y));
    let mut out = header("eval", &id);
    for (k, val) in [("n", json!(args.n)), ("m", json!(args.m))] {
        out.insert(k.into(), val);
    }
    out.insert("x".into(), json!(value_text(&x)));
    out.insert("y".into(), json!(value_text(&y)));
    out.insert("value".into(), json!(v));
    let rows = vec![
        vec!["n".to_string(), "m".into(), "x".into(), "y".into(), "value".into()],
        vec![
            args.n.to_string(),
            args.m.to_string(),
            value_text(&x),
            value_text(&y),
            v,
        ],
    ];
    Ok(Output {
        json: Value::Object(out),
        csv: rows,
        passed: true,
    })
}

fn looks_decimal(text: &str) -> bool {
    !text.contains('/') && text.contains(['.', 'e', 'E'])
}

fn dispatch(command: &Command) -> Result<(Output, &OutputArgs)> {
    macro_rules! by_mode {
        ($f:ident, $args:expr, $default:expr) => {
            match $args.family.mode($default) {
                Mode::Exact => $f::<Rational>($args),
                Mode::Float => $f::<f64>($args),
            }
        };
    }
    Ok(match command {
        Command::Tables(a) => (by_mode!(tables, a, Mode::Exact)?, &a.output),
        Command::Verify(a) => (by_mode!(verify, a, Mode::Exact)?, &a.output),
        Command::Moments(a) => (by_mode!(moments, a, Mode::Exact)?, &a.output),
        Command::Eval(a) => {
            let default = if looks_decimal(&a.x) || looks_decimal(&a.y) {
                Mode::Float
            } else {
                Mode::Exact
            };
            (by_mode!(eval, a, default)?, &a.output)
        }
    })
}

fn render(out: &Output, format: Format) -> std::result::Result<String, String> {
    match format {
        Format::Json => serde_json::to_string_pretty(&out.json)
            .map(|s| s + "\n")
            .map_err(|e| e.to_string()),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for row in &out.csv {
                w.write_record(row).map_err(|e| e.to_string())?;
            }
            let bytes = w.into_inner().map_err(|e| e.to_string())?;
            String::from_utf8(bytes).map_err(|e| e.to_string())
        }
    }
}

/// Runs the command line `args` (including the program name), writing
/// results to `stdout` and diagnostics to `stderr`; returns the exit
/// status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let (out, target) = match dispatch(&cli.command) {
        Ok(v) => v,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return exit_code(&e);
        }
    };
    let text = match render(&out, target.format) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let written = match &target.output {
        Some(path) => fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display())),
        None => stdout.write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e}");
        return EXIT_USAGE;
    }
    if out.passed {
        EXIT_OK
    } else {
        if let Some(checks) = out.json.get("checks").and_then(Value::as_array) {
            for c in checks.iter().filter(|c| c["status"] == "fail") {
                let _ = writeln!(
                    stderr,
                    "FAIL {}: {}",
                    c["name"].as_str().unwrap_or(""),
                    c["witness"].as_str().unwrap_or("")
                );
            }
        }
        EXIT_VERIFY
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["ortho2d"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn disk_tables() {
        let (code, out, _) = call(&["tables", "--family", "disk", "--mu", "1/2", "--max-n", "1"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["schema"], SCHEMA);
        let a1 = &v["degrees"][1]["matrices"]["A1"]["band"];
        assert_eq!(a1[0]["value"], "3/5");
        assert_eq!(a1[1]["value"], "2/5");
    }

    #[test]
    fn parameter_errors_exit_two() {
        assert_eq!(call(&["tables", "--family", "disk", "--max-n", "1"]).0, EXIT_USAGE);
        assert_eq!(
            call(&["tables", "--family", "disk", "--mu", "1/2", "--beta", "1", "--max-n", "1"]).0,
            EXIT_USAGE
        );
        assert_eq!(call(&["tables", "--family", "disk", "--mu", "x", "--max-n", "1"]).0, EXIT_USAGE);
        assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(
            call(&["tables", "--family", "bessel-laguerre", "--g", "0", "--gamma", "1", "--max-n", "1"]).0,
            EXIT_USAGE
        );
    }

    #[test]
    fn quasi_definiteness_exits_three() {
        let (code, _, err) = call(&[
            "tables", "--family", "bessel-laguerre", "--g", "-1", "--gamma", "1", "--max-n", "3",
        ]);
        assert_eq!(code, EXIT_QUASI, "{err}");
        assert!(err.contains("n = "), "{err}");
    }

    #[test]
    fn eval_points() {
        let (code, out, _) = call(&[
            "eval", "--family", "disk", "--mu", "1/2", "--n", "1", "--m", "1", "--x", "0.3", "--y", "0.4",
        ]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        let val: f64 = v["value"].as_str().unwrap().parse().unwrap();
        assert!((val - 0.4).abs() < 1e-15);
        assert_eq!(v["mode"], "float");
    }

    #[test]
    fn fault_hook_fails_with_witness() {
        let (code, _, err) = call(&[
            "verify", "--family", "square", "--alpha", "0", "--beta", "0", "--gamma", "0", "--delta", "0",
            "--max-n", "2", "--inject-fault", "1,B2,0,0",
        ]);
        assert_eq!(code, EXIT_VERIFY);
        assert!(err.contains("FAIL relation y n=1"), "{err}");
    }
}
