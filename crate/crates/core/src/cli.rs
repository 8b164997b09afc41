//! Command-line front end. `run` is pure apart from reading input files and
//! the `K3GLUE_DIGITS` variable, so it is driven directly by tests.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::json;

use crate::arith::fmt_rat;
use crate::certify::{assemble_k3, build_l1, build_twisted_lattice, certify, table1};
use crate::error::{Error, Result};
use crate::gluing::{extend_isometry, find_glue_map, glue, GlueMethod};
use crate::lattice::io::LatticeDocument;
use crate::lattice::{Isometry, Lattice};
use crate::poly::IntPoly;
use crate::salem::{cross_validate, trace_set};

/// Default number of significant digits for embedding values.
pub const DEFAULT_DIGITS: u32 = 5;
pub const DIGITS_ENV: &str = "K3GLUE_DIGITS";

#[derive(Parser, Debug)]
#[command(name = "k3glue", version, about = "Exact lattice gluing and isometry certification")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Human)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Which {
    L1,
    L2,
    K3,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the rank-22 lattice and isometry and check every claim.
    CertifyK3 {
        #[arg(long)]
        digits: Option<u32>,
    },
    /// Invariants, glue group and torsion forms of a lattice file.
    LatticeInfo { file: PathBuf },
    /// Glue two lattice files along an anti-isometry of their glue groups.
    Glue {
        file1: PathBuf,
        file2: PathBuf,
        /// Write the glued lattice here instead of standard output.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Twist a lattice by A(t), coefficients ascending and comma separated.
    Twist {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Signs and values of a/Ψ'(ζ + ζ^-1) at the real embeddings.
    Table1 {
        #[arg(long)]
        digits: Option<u32>,
    },
    /// Trace values up to a bound.
    TraceSet {
        #[arg(long)]
        max: u64,
    },
    /// Compare the closed-form trace set with the square condition and witnesses.
    CrossValidate {
        #[arg(long)]
        max: u64,
    },
    /// Exact Gram matrix (with isometry) as a lattice file.
    Gram {
        #[arg(long, value_enum, ignore_case = true)]
        which: Which,
    },
}

/// Exit code and the text for standard output and standard error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: 0, stdout, stderr: String::new() }
    }

    fn with_code(code: i32, stdout: String) -> Self {
        Outcome { code, stdout, stderr: String::new() }
    }
}

/// 2 for malformed input, 1 for a failed mathematical check.
fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_)
        | Error::NotSquare { .. }
        | Error::NotSymmetric
        | Error::Singular
        | Error::DimensionMismatch(_)
        | Error::InvalidArgument(_)
        | Error::NotAnIsometry(_) => 2,
        _ => 1,
    }
}

fn fail(e: Error) -> Outcome {
    Outcome { code: exit_code(&e), stdout: String::new(), stderr: format!("error: {e}\n") }
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn digits_from_env(flag: Option<u32>, env: Option<&str>) -> Result<u32> {
    let d = match (flag, env) {
        (Some(d), _) => d,
        (None, Some(s)) => s
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("{DIGITS_ENV}='{s}' is not a positive integer")))?,
        (None, None) => DEFAULT_DIGITS,
    };
    if d == 0 || d > 60 {
        return Err(Error::InvalidArgument(format!("digits must be between 1 and 60, got {d}")));
    }
    Ok(d)
}

fn load(path: &Path) -> Result<(Lattice, Option<Isometry>)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
    LatticeDocument::parse(&text)?.load()
}

fn write_or_return(doc: String, output: Option<&Path>) -> Result<String> {
    match output {
        Some(p) => {
            std::fs::write(p, &doc).map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", p.display())))?;
            Ok(String::new())
        }
        None => Ok(doc),
    }
}

fn parse_poly(s: &str) -> Result<IntPoly> {
    let coeffs = s
        .split(',')
        .map(|c| c.trim().parse::<BigInt>().map_err(|_| Error::Parse(format!("'{c}' is not an integer coefficient"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(IntPoly::new(coeffs))
}

/// Parse `argv` (including the program name) and execute.
pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let env = std::env::var(DIGITS_ENV).ok();
    run_with_env(argv, env.as_deref())
}

/// As `run`, with the digits variable supplied explicitly.
pub fn run_with_env<I, S>(argv: I, digits_env: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 { Outcome::ok(text) } else { Outcome { code, stdout: String::new(), stderr: text } };
        }
    };
    let json = cli.format == Format::Json;
    let result = match cli.command {
        Command::CertifyK3 { digits } => digits_from_env(digits, digits_env).map(|d| cmd_certify(d, json)),
        Command::LatticeInfo { file } => cmd_lattice_info(&file, json).map(Outcome::ok),
        Command::Glue { file1, file2, output } => cmd_glue(&file1, &file2, output.as_deref(), json),
        Command::Twist { file, poly, output } => cmd_twist(&file, &poly, output.as_deref()).map(Outcome::ok),
        Command::Table1 { digits } => digits_from_env(digits, digits_env).and_then(|d| cmd_table1(d, json)).map(Outcome::ok),
        Command::TraceSet { max } => cmd_trace_set(max, json).map(Outcome::ok),
        Command::CrossValidate { max } => cmd_cross_validate(max, json),
        Command::Gram { which } => cmd_gram(which).map(Outcome::ok),
    };
    result.unwrap_or_else(fail)
}

fn cmd_certify(digits: u32, json: bool) -> Outcome {
    let report = certify(digits);
    let text = if json { report.to_json() } else { report.to_table() };
    Outcome::with_code(if report.verdict { 0 } else { 1 }, text)
}

fn cmd_lattice_info(path: &Path, json: bool) -> Result<String> {
    let (lattice, iso) = load(path)?;
    let inv = lattice.invariants()?;
    let group = lattice.glue_group();
    let orders: Vec<String> = group.orders().iter().map(|o| o.to_string()).collect();
    let parts: Vec<_> = group
        .sylow_decomposition()
        .iter()
        .map(|c| json!({"prime": c.prime.to_string(), "orders": c.orders.iter().map(|o| o.to_string()).collect::<Vec<_>>()}))
        .collect();
    let bilinear: Vec<Vec<String>> =
        group.bilinear_table().iter().map(|r| r.iter().map(|v| fmt_rat(v.value())).collect()).collect();
    let quadratic: Option<Vec<String>> = (group.is_even() && !group.is_trivial()).then(|| {
        group.lifts().iter().map(|x| fmt_rat(group.quadratic_lift(x).expect("even").value())).collect()
    });
    let isometry = iso.as_ref().map(|t| {
        json!({
            "charpoly": t.charpoly().coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "glue_action_identity": t.induced_glue_action().is_identity(),
        })
    });
    if json {
        return Ok(to_json(&json!({
            "invariants": inv,
            "glue_group": {"orders": orders, "sylow": parts, "bilinear": bilinear, "quadratic": quadratic},
            "isometry": isometry,
        })));
    }
    let mut s = String::new();
    let _ = writeln!(s, "rank        {}", inv.rank);
    let _ = writeln!(s, "det         {}", inv.det);
    let _ = writeln!(s, "signature   ({}, {})", inv.signature.0, inv.signature.1);
    let _ = writeln!(s, "even        {}", inv.even);
    let _ = writeln!(s, "unimodular  {}", inv.unimodular);
    let shape = if orders.is_empty() { "0".to_string() } else { orders.iter().map(|o| format!("Z/{o}")).collect::<Vec<_>>().join(" + ") };
    let _ = writeln!(s, "glue group  {shape}");
    for c in group.sylow_decomposition() {
        let o: Vec<String> = c.orders.iter().map(|o| format!("Z/{o}")).collect();
        let _ = writeln!(s, "  {}-part: {}", c.prime, o.join(" + "));
    }
    if !bilinear.is_empty() {
        let _ = writeln!(s, "torsion bilinear form (mod 1)");
        for r in &bilinear {
            let _ = writeln!(s, "  {}", r.join("  "));
        }
    }
    if let Some(q) = quadratic {
        let _ = writeln!(s, "torsion quadratic form on generators (mod 2)");
        let _ = writeln!(s, "  {}", q.join("  "));
    }
    if let Some(t) = iso {
        let _ = writeln!(s, "isometry charpoly  {}", t.charpoly());
    }
    Ok(s)
}

fn cmd_glue(p1: &Path, p2: &Path, output: Option<&Path>, json: bool) -> Result<Outcome> {
    let (l1, i1) = load(p1)?;
    let (l2, i2) = load(p2)?;
    let (t1, t2) = (i1.unwrap_or_else(|| Isometry::identity(&l1)), i2.unwrap_or_else(|| Isometry::identity(&l2)));
    let gamma = find_glue_map(&t1.induced_glue_action(), &t2.induced_glue_action())?;
    let result = glue(&l1, &l2, &gamma)?;
    let t = extend_isometry(&result, &t1, &t2)?;
    let doc = LatticeDocument::from_lattice(&result.ambient, Some(&t)).to_text();
    let mut out = write_or_return(doc, output)?;
    if output.is_some() {
        let methods: Vec<_> = gamma
            .primes
            .iter()
            .map(|p| json!({"prime": p.prime.to_string(), "method": p.method}))
            .collect();
        out = if json {
            to_json(&json!({"index": result.index.to_string(), "glue": methods}))
        } else {
            let mut s = format!("index {}\n", result.index);
            for p in &gamma.primes {
                let m = match &p.method {
                    GlueMethod::Scalar { c } => format!("scalar {c}"),
                    GlueMethod::Eigenline { lambda, scale } => format!("eigenline λ = {lambda}, scale {scale}"),
                    GlueMethod::Search => "search".into(),
                };
                let _ = writeln!(s, "  {}: {m}", p.prime);
            }
            s
        };
    }
    Ok(Outcome::ok(out))
}

fn cmd_twist(path: &Path, poly: &str, output: Option<&Path>) -> Result<String> {
    let a = parse_poly(poly)?;
    let (_, iso) = load(path)?;
    let t = iso.ok_or_else(|| Error::InvalidArgument("twisting needs an isometry in the lattice file".into()))?;
    let twisted = t.twist(&a)?;
    let t2 = t.on(&twisted)?;
    write_or_return(LatticeDocument::from_lattice(&twisted, Some(&t2)).to_text(), output)
}

fn cmd_table1(digits: u32, json: bool) -> Result<String> {
    let table = table1(&build_twisted_lattice()?, digits)?;
    Ok(if json { to_json(&table) } else { table.to_table() })
}

fn cmd_trace_set(max: u64, json: bool) -> Result<String> {
    if max < 2 {
        return Err(Error::InvalidArgument("max must be at least 2".into()));
    }
    let set = trace_set(max);
    Ok(if json {
        to_json(&json!({"max": max, "values": set}))
    } else {
        set.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ") + "\n"
    })
}

fn cmd_cross_validate(max: u64, json: bool) -> Result<Outcome> {
    let verified = certify(DEFAULT_DIGITS).verdict;
    let report = cross_validate(max, verified)?;
    let code = if report.mismatches == 0 { 0 } else { 1 };
    if json {
        return Ok(Outcome::with_code(code, to_json(&report)));
    }
    let mut s = format!("rank-22 construction verified: {verified}\n");
    for r in report.rows.iter().filter(|r| r.closed_form || !r.admissible.is_empty() || !r.consistent) {
        let ls: Vec<String> = r.admissible.iter().map(|a| a.l.to_string()).collect();
        let _ = writeln!(
            s,
            "{:>5}  {:<5} {:<30} l ∈ {{{}}}{}{}",
            r.tau,
            if r.closed_form { "in" } else { "out" },
            r.status.to_string(),
            ls.join(","),
            r.witness.as_ref().map_or(String::new(), |w| format!("  [{w}]")),
            if r.consistent { "" } else { "  MISMATCH" },
        );
    }
    let _ = writeln!(s, "{} rows, {} mismatches", report.rows.len(), report.mismatches);
    Ok(Outcome::with_code(code, s))
}

fn cmd_gram(which: Which) -> Result<String> {
    let (l, t) = match which {
        Which::L1 => build_l1()?,
        Which::L2 => {
            let tl = build_twisted_lattice()?;
            (tl.lattice, tl.isometry)
        }
        Which::K3 => {
            let k3 = assemble_k3()?;
            (k3.gluing.ambient, k3.t)
        }
    };
    Ok(LatticeDocument::from_lattice(&l, Some(&t)).to_text())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digits_resolution() {
        assert_eq!(digits_from_env(None, None).unwrap(), 5);
        assert_eq!(digits_from_env(None, Some("7")).unwrap(), 7);
        assert_eq!(digits_from_env(Some(3), Some("7")).unwrap(), 3);
        assert!(digits_from_env(None, Some("x")).is_err());
        assert!(digits_from_env(Some(0), None).is_err());
    }

    #[test]
    fn poly_parsing() {
        assert_eq!(parse_poly("1, -3,1").unwrap(), IntPoly::from_i64(&[1, -3, 1]));
        assert!(parse_poly("1,x").is_err());
    }

    #[test]
    fn unknown_flag_is_an_input_error() {
        assert_eq!(run_with_env(["k3glue", "trace-set", "--max", "5", "--bogus"], None).code, 2);
    }
}
