//! The `ybe` command line: build, verify, twist, baxterize and serialize
//! R-matrices. Exit codes: 0 all requested checks passed, 1 a check failed,
//! 2 invalid input.

use std::io::{Read, Write};
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Map, Value};

use crate::algebra::{mat_algebra, Algebra};
use crate::arith::{parse_scalar, BigRat, RatQ};
use crate::baxterize::{baxterize, spectral_ybe, SpectralTensor2};
use crate::bd::{assemble_bd_r_with, check_bd, classical_limit, cremmer_gervais, BdModel};
use crate::checkers::{
    hecke_constant, is_cybe, is_hecke, is_unitary, is_ybe, ybe_spot_check, CheckReport, Identity,
};
use crate::error::{Error, Result};
use crate::io::{
    is_spectral_json, report_to_json, scalar_to_json, spectral_from_json, spectral_to_json, tensor2_from_json,
    tensor2_to_json, BdSpec,
};
use crate::linalg::{unit_vec, Vector};
use crate::solutions::{dj_closed, triangular_q, twist, TwistF};
use crate::tensor::Tensor2;
use crate::triples::{mat_index, permutation_element, validate_triple};

#[derive(Parser, Debug)]
#[command(name = "ybe", about = "Exact Yang-Baxter R-matrix construction and verification")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Plain,
    Latex,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Standard Drinfeld-Jimbo matrix over Mat_n.
    Dj {
        #[arg(long)]
        n: usize,
    },
    /// Cremmer-Gervais matrix lambda*1x1 + (pi x pi)(Q).
    Cg {
        #[arg(long)]
        n: usize,
        /// Scalar string; defaults to q/(q - q^-1).
        #[arg(long)]
        lambda: Option<String>,
    },
    /// Run the BD pipeline on a spec file.
    Bd {
        #[arg(long)]
        spec: PathBuf,
        /// Also emit the doubled-algebra R and check YBE there.
        #[arg(long)]
        big: bool,
        /// Emit validation and YBE certificates.
        #[arg(long)]
        verify: bool,
    },
    /// Run checks on a tensor read from a file or `-` for stdin.
    Verify(VerifyArgs),
    /// Spectral-parameter solution zR - uR21^-1 of a Hecke R.
    Baxterize {
        #[arg(long)]
        input: String,
        #[arg(long)]
        check: bool,
    },
    /// F R F21^-1 for a diagonal twist F.
    Twist {
        #[arg(long)]
        input: String,
        /// Tensor JSON, or {"f": matrix of scalar strings} for diagonal F.
        #[arg(long)]
        f: String,
        /// Canonical element to preserve; defaults to sum_{i<j} e^i_j x e^j_i.
        #[arg(long)]
        q: Option<String>,
    },
    /// Classical r-matrix at q = 1 and its cYBE report.
    Limit {
        #[arg(long)]
        input: String,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    input: String,
    #[arg(long)]
    ybe: bool,
    #[arg(long)]
    hecke: bool,
    /// `auto` for the permutation element, or a tensor JSON path.
    #[arg(long, default_value = "auto")]
    sigma: String,
    /// Hecke constant; found automatically when omitted.
    #[arg(long)]
    c: Option<String>,
    #[arg(long)]
    unitary: bool,
    #[arg(long)]
    cybe_limit: bool,
    /// Number of random rational points for a YBE spot check.
    #[arg(long, default_value_t = 0)]
    spot: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

enum Emitted {
    Two(Tensor2),
    Spectral(SpectralTensor2),
    Scalar(RatQ),
}

#[derive(Default)]
struct Output {
    items: Vec<(String, Emitted)>,
    reports: Vec<CheckReport>,
}

impl Output {
    fn tensor(mut self, name: &str, t: Tensor2) -> Self {
        self.items.push((name.into(), Emitted::Two(t)));
        self
    }

    fn passed(&self) -> bool {
        self.reports.iter().all(|r| r.passed)
    }
}

/// Invalid input (exit 2) versus a failed mathematical check (exit 1).
fn error_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_)
        | Error::ShapeError(_)
        | Error::InvalidBd(_)
        | Error::InvalidTriple(_)
        | Error::InvalidAlgebra(_)
        | Error::TooSmall(_)
        | Error::BadTwistData(_)
        | Error::AlgebraMismatch
        | Error::DegenerateForm => 2,
        _ => 1,
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdin = std::io::stdin();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdin.lock(), &mut stdout.lock(), &mut stderr.lock())
}

/// [`run`] with explicit streams.
pub fn run_with<I, T>(argv: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    match execute(&cli.command, stdin) {
        Ok(output) => {
            let text = render(&output, cli.format);
            let _ = writeln!(out, "{text}");
            if output.passed() {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            error_code(&e)
        }
    }
}

fn read_source(src: &str, stdin: &mut dyn Read) -> Result<Value> {
    let text = if src == "-" {
        let mut s = String::new();
        stdin
            .read_to_string(&mut s)
            .map_err(|e| Error::Parse(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(src).map_err(|e| Error::Parse(format!("{src}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{src}: {e}")))
}

/// Accepts a bare tensor document or one of this tool's output objects.
fn unwrap_result(v: Value) -> Value {
    match v.get("result") {
        Some(inner) if v.get("terms").is_none() => inner.clone(),
        _ => v,
    }
}

fn read_tensor(src: &str, stdin: &mut dyn Read) -> Result<Tensor2> {
    tensor2_from_json(&unwrap_result(read_source(src, stdin)?))
}

fn default_lambda() -> RatQ {
    RatQ::q().mul_ref(&RatQ::inv_omega())
}

fn execute(cmd: &Command, stdin: &mut dyn Read) -> Result<Output> {
    match cmd {
        Command::Dj { n } => Ok(Output::default().tensor("result", dj_closed(*n)?)),
        Command::Cg { n, lambda } => {
            let lam = match lambda {
                Some(s) => parse_scalar(s)?,
                None => default_lambda(),
            };
            Ok(Output::default().tensor("result", cremmer_gervais(*n, &lam)?))
        }
        Command::Bd { spec, big, verify } => run_bd(spec, *big, *verify, stdin),
        Command::Verify(args) => run_verify(args, stdin),
        Command::Baxterize { input, check } => {
            let r = read_tensor(input, stdin)?;
            let rf = baxterize(&r)?;
            let mut out = Output::default();
            if *check {
                out.reports.push(spectral_ybe(&rf)?);
            }
            out.items.push(("result".into(), Emitted::Spectral(rf)));
            Ok(out)
        }
        Command::Twist { input, f, q } => run_twist(input, f, q.as_deref(), stdin),
        Command::Limit { input } => {
            let r = read_tensor(input, stdin)?;
            let mut out = Output::default();
            match classical_limit(&r) {
                Ok(cl) => {
                    out.reports.push(is_cybe(&cl));
                    Ok(out.tensor("result", cl))
                }
                Err(e @ (Error::NoClassicalLimit | Error::EvaluationPole(_))) => {
                    out.reports.push(CheckReport::structural(Identity::Cybe, vec![e.to_string()]));
                    Ok(out)
                }
                Err(e) => Err(e),
            }
        }
    }
}

fn run_bd(spec: &std::path::Path, big: bool, verify: bool, stdin: &mut dyn Read) -> Result<Output> {
    let spec = BdSpec::from_json(&read_source(&spec.to_string_lossy(), stdin)?)?;
    let bd = spec.triple();
    let bd_report = check_bd(&bd);
    if !bd_report.passed {
        return Err(Error::InvalidBd(match crate::bd::validate_bd(&bd) {
            Err(Error::InvalidBd(v)) => v,
            _ => Vec::new(),
        }));
    }
    let params = spec.params()?;
    let assembled = assemble_bd_r_with(&bd, &params, big)?;
    let mut out = Output::default().tensor("result", assembled.r_proj);
    if verify {
        out.reports.push(bd_report);
        out.reports.push(validate_triple(BdModel::build(&bd)?.triple()));
        out.reports.push(assembled.proj_ybe);
    }
    if big {
        out = out.tensor("r_big", assembled.r_big);
        out.reports.extend(assembled.big_ybe);
    }
    Ok(out)
}

fn run_verify(args: &VerifyArgs, stdin: &mut dyn Read) -> Result<Output> {
    let doc = unwrap_result(read_source(&args.input, stdin)?);
    let mut out = Output::default();
    if is_spectral_json(&doc) {
        out.reports.push(spectral_ybe(&spectral_from_json(&doc)?)?);
        return Ok(out);
    }
    let r = tensor2_from_json(&doc)?;
    let any = args.hecke || args.unitary || args.cybe_limit || args.spot > 0;
    if args.ybe || !any {
        out.reports.push(is_ybe(&r));
    }
    if args.hecke {
        let sigma = if args.sigma == "auto" {
            permutation_element(r.algebra())?
        } else {
            read_tensor(&args.sigma, stdin)?.with_algebra(r.algebra().clone())?
        };
        match &args.c {
            Some(c) => out.reports.push(is_hecke(&r, &sigma, &parse_scalar(c)?)?),
            None => match hecke_constant(&r, &sigma)? {
                Some(c) => {
                    out.reports.push(is_hecke(&r, &sigma, &c)?);
                    out.items.push(("hecke_constant".into(), Emitted::Scalar(c)));
                }
                None => out.reports.push(CheckReport::structural(
                    Identity::Hecke,
                    vec!["S21 S - sigma S is not a multiple of 1x1".into()],
                )),
            },
        }
    }
    if args.unitary {
        out.reports.push(is_unitary(&r));
    }
    if args.cybe_limit {
        match classical_limit(&r) {
            Ok(cl) => {
                out.reports.push(is_cybe(&cl));
                out = out.tensor("classical_r", cl);
            }
            Err(e @ (Error::NoClassicalLimit | Error::EvaluationPole(_))) => {
                out.reports.push(CheckReport::structural(Identity::Cybe, vec![e.to_string()]));
            }
            Err(e) => return Err(e),
        }
    }
    if args.spot > 0 {
        let mut rng = StdRng::seed_from_u64(args.seed);
        let mut failures = Vec::new();
        for _ in 0..args.spot {
            let q0 = BigRat::new(rng.gen_range(2..50).into(), rng.gen_range(1..50).into());
            match ybe_spot_check(&r, &q0) {
                Ok(true) => {}
                Ok(false) => failures.push(format!("YBE fails at q = {q0}")),
                Err(e) => failures.push(format!("q = {q0}: {e}")),
            }
        }
        out.reports.push(CheckReport::structural(Identity::Ybe, failures));
    }
    Ok(out)
}

fn diagonal_units(alg: &Algebra) -> Result<Vec<Vector>> {
    let n = (1..=alg.dim()).find(|k| k * k == alg.dim()).unwrap_or(0);
    if n == 0 || alg.name() != format!("mat:{n}") {
        return Err(Error::ShapeError("twists are supported over Mat_n".into()));
    }
    Ok((1..=n).map(|i| unit_vec(n * n, mat_index(n, i, i))).collect())
}

fn run_twist(input: &str, f: &str, q: Option<&str>, stdin: &mut dyn Read) -> Result<Output> {
    let r = read_tensor(input, stdin)?;
    let alg = r.algebra().clone();
    let diag = diagonal_units(&alg)?;
    let fdoc = read_source(f, stdin)?;
    let tf = match fdoc.get("f").and_then(Value::as_array) {
        Some(rows) => {
            let m = rows
                .iter()
                .map(|row| {
                    row.as_array()
                        .ok_or_else(|| Error::Parse("twist matrix rows must be arrays".into()))?
                        .iter()
                        .map(crate::io::scalar_from_json)
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            TwistF::diagonal(&alg, &m)?
        }
        None => TwistF::new(tensor2_from_json(&unwrap_result(fdoc))?.with_algebra(alg.clone())?, &diag)?,
    };
    let q = match q {
        Some(src) => read_tensor(src, stdin)?.with_algebra(alg.clone())?,
        None => triangular_q(&alg, diag.len())?,
    };
    let mut out = Output::default();
    match twist(&r, &tf, &q) {
        Ok(t) => {
            out.reports.push(is_ybe(&t));
            Ok(out.tensor("result", t))
        }
        Err(Error::TwistIncompatible) => {
            out.reports.push(CheckReport::structural(
                Identity::Ybe,
                vec![Error::TwistIncompatible.to_string()],
            ));
            Ok(out)
        }
        Err(e) => Err(e),
    }
}

fn render(out: &Output, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(&render_json(out)).expect("serializable"),
        Format::Plain | Format::Latex => render_text(out, format == Format::Latex),
    }
}

fn render_json(out: &Output) -> Value {
    let item_json = |e: &Emitted| match e {
        Emitted::Two(t) => tensor2_to_json(t),
        Emitted::Spectral(t) => spectral_to_json(t),
        Emitted::Scalar(c) => scalar_to_json(c),
    };
    if out.reports.is_empty() && out.items.len() == 1 {
        return item_json(&out.items[0].1);
    }
    let mut m = Map::new();
    for (name, e) in &out.items {
        m.insert(name.clone(), item_json(e));
    }
    m.insert(
        "reports".into(),
        Value::Array(out.reports.iter().map(report_to_json).collect()),
    );
    m.insert("passed".into(), json!(out.passed()));
    Value::Object(m)
}

fn latex_label(l: &str) -> String {
    let (prefix, rest) = match l.split_once(':') {
        Some((p, r)) if p.starts_with('s') && r.contains(':') => (format!("{p}\\,"), r),
        _ => (String::new(), l),
    };
    match rest.strip_prefix("m:").and_then(|ij| ij.split_once(',')) {
        Some((i, j)) => format!("{prefix}e^{{{i}}}_{{{j}}}"),
        None => format!("{prefix}\\mathrm{{{}}}", rest.replace('_', "\\_")),
    }
}

fn coeff_text(c: &RatQ, latex: bool) -> String {
    let s = c.render(latex);
    if latex && (s.contains(" + ") || s.contains(" - ")) {
        format!("({s})")
    } else {
        s
    }
}

fn tensor_text(t: &Tensor2, latex: bool) -> String {
    let alg = t.algebra();
    if t.is_zero() {
        return "0".into();
    }
    let lines: Vec<String> = t
        .terms()
        .iter()
        .map(|((i, j), c)| {
            if latex {
                format!(
                    "{}\\, {}\\otimes {}",
                    coeff_text(c, true),
                    latex_label(alg.label(*i)),
                    latex_label(alg.label(*j))
                )
            } else {
                format!("{}  {} (x) {}", c.render(false), alg.label(*i), alg.label(*j))
            }
        })
        .collect();
    if latex {
        lines.join("\n + ")
    } else {
        let mut text = lines.join("\n");
        if let Some(m) = operator_text(t) {
            text.push_str("\n\n");
            text.push_str(&m);
        }
        text
    }
}

/// The `n²×n²` operator of a tensor over `Mat_n` on `V⊗V`, rows and
/// columns ordered `(i,k)` lexicographically.
fn operator_text(t: &Tensor2) -> Option<String> {
    let alg = t.algebra();
    let n = (1..=alg.dim()).find(|k| k * k == alg.dim())?;
    if alg.name() != format!("mat:{n}") {
        return None;
    }
    let mat = Arc::new(mat_algebra(n).ok()?);
    if **alg != *mat {
        return None;
    }
    let mut cells = vec![vec!["0".to_string(); n * n]; n * n];
    for ((a, b), c) in t.terms() {
        let (i, j) = (a / n, a % n);
        let (k, l) = (b / n, b % n);
        cells[i * n + k][j * n + l] = c.render(false);
    }
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    Some(
        cells
            .iter()
            .map(|row| {
                row.iter()
                    .map(|c| format!("{c:>width$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
            })
            .collect::<Vec<_>>()
            .join("\n"),
    )
}

fn spectral_text(t: &SpectralTensor2, latex: bool) -> String {
    let alg = t.algebra();
    let lines: Vec<String> = t
        .terms()
        .iter()
        .map(|((i, j), p)| {
            if latex {
                let poly: Vec<String> = p
                    .terms()
                    .iter()
                    .map(|(e, c)| {
                        let mono: String = e
                            .iter()
                            .zip(t.params())
                            .filter(|(k, _)| **k > 0)
                            .map(|(k, v)| if *k == 1 { v.clone() } else { format!("{v}^{{{k}}}") })
                            .collect();
                        format!("{}{mono}", coeff_text(c, true))
                    })
                    .collect();
                format!(
                    "({})\\, {}\\otimes {}",
                    poly.join(" + "),
                    latex_label(alg.label(*i)),
                    latex_label(alg.label(*j))
                )
            } else {
                format!("{p:?}  {} (x) {}", alg.label(*i), alg.label(*j))
            }
        })
        .collect();
    lines.join(if latex { "\n + " } else { "\n" })
}

fn report_text(r: &CheckReport) -> String {
    let mut s = format!(
        "{}: {} ({} residual terms)",
        r.identity,
        if r.passed { "PASS" } else { "FAIL" },
        r.residual_len()
    );
    for f in &r.failures {
        s.push_str(&format!("\n  - {f}"));
    }
    s
}

fn render_text(out: &Output, latex: bool) -> String {
    let mut parts = Vec::new();
    let single = out.items.len() == 1 && out.reports.is_empty();
    for (name, e) in &out.items {
        let body = match e {
            Emitted::Two(t) => tensor_text(t, latex),
            Emitted::Spectral(t) => spectral_text(t, latex),
            Emitted::Scalar(c) => c.render(latex),
        };
        parts.push(if single { body } else { format!("[{name}]\n{body}") });
    }
    if !out.reports.is_empty() {
        parts.push(out.reports.iter().map(report_text).collect::<Vec<_>>().join("\n"));
    }
    parts.join("\n\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str], input: &str) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("ybe").chain(args.iter().copied());
        let code = run_with(argv, &mut input.as_bytes(), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn dj_plain_shows_operator() {
        let (code, out, _) = call(&["dj", "--n", "2", "--format", "plain"], "");
        assert_eq!(code, 0);
        assert!(out.contains("q^1  m:1,1 (x) m:1,1"));
        assert!(out.contains("q^1+-1*q^-1  m:1,2 (x) m:2,1"));
    }

    #[test]
    fn dj_json_pipes_into_verify() {
        let (_, json, _) = call(&["dj", "--n", "3"], "");
        let (code, out, _) = call(&["verify", "--input", "-", "--ybe"], &json);
        assert_eq!(code, 0, "{out}");
        // R itself is Hecke only after dividing by omega
        let (code, _, _) = call(&["verify", "--input", "-", "--hecke"], &json);
        assert_eq!(code, 1);
        let (_, json, _) = call(&["cg", "--n", "3"], "");
        let (code, out, _) = call(&["verify", "--input", "-", "--ybe", "--hecke"], &json);
        assert_eq!(code, 0, "{out}");
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["passed"], true);
        assert_eq!(v["hecke_constant"], "(q^2)/(q^4+-2*q^2+1)");
    }

    #[test]
    fn perturbed_input_fails() {
        let (_, json, _) = call(&["dj", "--n", "2"], "");
        let mut v: Value = serde_json::from_str(&json).unwrap();
        v["terms"]
            .as_array_mut()
            .unwrap()
            .push(json!({"i": "m:1,2", "j": "m:1,1", "c": "1"}));
        let (code, _, _) = call(&["verify", "--input", "-"], &v.to_string());
        assert_eq!(code, 1);
        let (code, _, err) = call(&["verify", "--input", "-"], "{");
        assert_eq!(code, 2, "{err}");
    }

    #[test]
    fn cg_and_latex() {
        let (code, out, _) = call(&["cg", "--n", "3", "--format", "latex"], "");
        assert_eq!(code, 0);
        assert!(out.contains("e^{2}_{3}\\otimes e^{2}_{1}"));
        let (code, _, _) = call(&["cg", "--n", "2"], "");
        assert_eq!(code, 2);
    }
}
