//! Command-line driver. [`run`] parses arguments and returns the exit code
//! with the text destined for stdout and stderr, so it is testable without
//! spawning a process.
//!
//! Exit codes: 0 success, 1 usage, 2 mathematical falsification, 3 resource
//! cap, 4 input format.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::bm_model::BilinearForm;
use crate::cochar::{cocharacter_table, predicted_dim, table_tsv};
use crate::free_jordan::json::{polynomial_from_json, polynomial_to_json};
use crate::free_jordan::GradedPolynomial;
use crate::identities::{
    dim_pkn, pkn_cost, random_multidegree, random_odd_polynomial, straighten, verify_basis_identities, DEFAULT_CAP,
};
use crate::rational::{self, Rational};
use crate::tableaux::{hwv_generator, is_unitriangular_invariant, DoubleTableau, ExponentVector};
use crate::wqo::{finite_basis_from_stream, is_antichain, NatVector};
use crate::Error;

pub const CAP_ENV: &str = "JORDAN_SPECHT_CAP";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FALSIFIED: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_INPUT: i32 = 4;

const STRAIGHTEN_CERTIFICATE: &str = "evaluation: g - sum(c_i * T_i) vanishes on every basis substitution of B_m";

#[derive(Debug, Parser)]
#[command(name = "jordan-specht", version, about = "Graded identities of the Jordan superalgebra B_m")]
pub struct Cli {
    /// Seed for randomized runs.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest evaluation matrix (entries) to attempt; overrides JORDAN_SPECHT_CAP.
    #[arg(long, global = true)]
    pub cap: Option<u128>,
    /// Write the result to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the identity basis of B_m.
    VerifyBasis {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        m: u64,
        /// Comma-separated diagonal of the Gram matrix (default all ones).
        #[arg(long)]
        diag: Option<String>,
    },
    /// Compare computed and predicted dimensions of P_{k,n}(B_m).
    Dims {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        m: u64,
        #[arg(long)]
        max_total_degree: usize,
        #[arg(long)]
        diag: Option<String>,
    },
    /// Write an odd-variable polynomial in the doubly standard tableau basis.
    Straighten {
        /// Polynomial JSON file.
        #[arg(long, required_unless_present = "random", conflicts_with = "random")]
        input: Option<PathBuf>,
        /// Straighten this many seeded random polynomials instead.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        m: u64,
        #[arg(long)]
        diag: Option<String>,
    },
    /// Emit a highest weight vector generator.
    Hwv {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        m: u64,
        /// ExponentVector JSON file: {"deltas": [...], "ks": [...]}.
        #[arg(long)]
        exponents: PathBuf,
        #[arg(long)]
        check_invariance: bool,
    },
    /// Extract a finite basis from a stream of vectors (NDJSON).
    WqoBasis {
        #[arg(long)]
        input: PathBuf,
    },
    /// Print the predicted cocharacter table.
    Cochar {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        m: u64,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn fail(code: i32, stderr: impl Into<String>) -> Self {
        Outcome { code, stdout: String::new(), stderr: stderr.into() }
    }

    fn with_code(mut self, code: i32) -> Self {
        self.code = code;
        self
    }
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::ResourceCap { .. } => EXIT_CAP,
        Error::BasisViolated(_)
        | Error::CertificateFailed(_)
        | Error::LeadingTermMismatch(_)
        | Error::InvarianceFailed(_) => EXIT_FALSIFIED,
        Error::InvalidExponentVector(_) | Error::InvalidForm(_) => EXIT_USAGE,
        _ => EXIT_INPUT,
    }
}

fn from_error(e: Error) -> Outcome {
    Outcome::fail(error_code(&e), format!("error: {e}\n"))
}

/// Parses and runs one invocation.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome::ok(text),
                _ => Outcome::fail(EXIT_USAGE, text),
            };
        }
    };
    let cap = match resolve_cap(cli.cap) {
        Ok(c) => c,
        Err(msg) => return Outcome::fail(EXIT_USAGE, msg),
    };
    let out = dispatch(&cli, cap);
    match (&cli.output, out.code) {
        (Some(path), EXIT_OK | EXIT_FALSIFIED) => match std::fs::write(path, &out.stdout) {
            Ok(()) => Outcome { stdout: String::new(), ..out },
            Err(e) => Outcome::fail(EXIT_INPUT, format!("error: cannot write {}: {e}\n", path.display())),
        },
        _ => out,
    }
}

fn resolve_cap(flag: Option<u128>) -> Result<u128, String> {
    if let Some(c) = flag {
        return Ok(c);
    }
    match std::env::var(CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse::<u128>()
            .map_err(|_| format!("error: {CAP_ENV} must be a nonnegative integer, got {v:?}\n")),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

fn dispatch(cli: &Cli, cap: u128) -> Outcome {
    match &cli.command {
        Command::VerifyBasis { m, diag } => with_form(*m, diag, cmd_verify_basis),
        Command::Dims { m, max_total_degree, diag } => {
            with_form(*m, diag, |f| cmd_dims(&f, *max_total_degree, cap))
        }
        Command::Straighten { input, random, m, diag } => with_form(*m, diag, |f| match (input, random) {
            (Some(path), _) => cmd_straighten_file(path, &f),
            (None, Some(count)) => cmd_straighten_random(*count, cli.seed, &f),
            (None, None) => Outcome::fail(EXIT_USAGE, "error: --input or --random is required\n"),
        }),
        Command::Hwv { m, exponents, check_invariance } => cmd_hwv(*m as usize, exponents, *check_invariance),
        Command::WqoBasis { input } => cmd_wqo_basis(input),
        Command::Cochar { m, k, n } => {
            Outcome::ok(table_tsv(&cocharacter_table(*k, *n, *m as usize), *k, *n, *m as usize))
        }
    }
}

fn parse_diag(m: usize, diag: &Option<String>) -> Result<BilinearForm, String> {
    let Some(text) = diag else {
        return BilinearForm::identity(m).map_err(|e| e.to_string());
    };
    let entries: Vec<Rational> = text
        .split(',')
        .map(|s| rational::parse(s.trim()))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    if entries.len() != m {
        return Err(format!("--diag has {} entries but m = {m}", entries.len()));
    }
    BilinearForm::new(entries).map_err(|e| e.to_string())
}

fn with_form(m: u64, diag: &Option<String>, body: impl FnOnce(BilinearForm) -> Outcome) -> Outcome {
    match parse_diag(m as usize, diag) {
        Ok(f) => body(f),
        Err(e) => Outcome::fail(EXIT_USAGE, format!("error: {e}\n")),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

fn cmd_verify_basis(f: BilinearForm) -> Outcome {
    let reports = match verify_basis_identities(&f) {
        Ok(r) => r,
        Err(e) => return from_error(e),
    };
    let body = Value::Array(reports.iter().map(|r| r.to_json()).collect());
    let failed: Vec<&str> = reports.iter().filter(|r| !r.check.holds).map(|r| r.name.as_str()).collect();
    let out = Outcome::ok(pretty(&body));
    if failed.is_empty() {
        out
    } else {
        Outcome { stderr: format!("falsified: {}\n", failed.join(", ")), ..out }.with_code(EXIT_FALSIFIED)
    }
}

fn cmd_dims(f: &BilinearForm, bound: usize, cap: u128) -> Outcome {
    let m = f.dim();
    let cells: Vec<(usize, usize)> = (1..=bound).flat_map(|t| (0..=t).map(move |k| (k, t - k))).collect();
    // refuse before printing anything
    if let Some(needed) = cells.iter().map(|&(k, n)| pkn_cost(k, n, m)).max() {
        if needed > cap {
            return from_error(Error::ResourceCap { needed, cap });
        }
    }
    let mut s = String::from("k\tn\tm\tdim\tpredicted\tmatch\n");
    let mut all_match = true;
    for (k, n) in cells {
        let dim = match dim_pkn(k, n, f, cap) {
            Ok(d) => d,
            Err(e) => return from_error(e),
        };
        let predicted = predicted_dim(k, n, m);
        let ok = dim as u128 == predicted;
        all_match &= ok;
        s.push_str(&format!("{k}\t{n}\t{m}\t{dim}\t{predicted}\t{ok}\n"));
    }
    let out = Outcome::ok(s);
    if all_match {
        out
    } else {
        Outcome { stderr: "falsified: computed and predicted dimensions differ\n".into(), ..out }
            .with_code(EXIT_FALSIFIED)
    }
}

fn read_json(path: &PathBuf) -> Result<Value, Outcome> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Outcome::fail(EXIT_INPUT, format!("error: cannot read {}: {e}\n", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Outcome::fail(EXIT_INPUT, format!("error: {} is not valid JSON: {e}\n", path.display())))
}

fn straighten_json(g: &GradedPolynomial, f: &BilinearForm) -> Result<Value, Error> {
    let terms = straighten(g, f)?;
    Ok(json!({
        "terms": terms
            .iter()
            .map(|(c, t): &(Rational, DoubleTableau)| json!({"coeff": rational::format(c), "tableau": t.to_json()}))
            .collect::<Vec<_>>(),
        "certified": true,
        "certificate": STRAIGHTEN_CERTIFICATE,
    }))
}

fn cmd_straighten_file(path: &PathBuf, f: &BilinearForm) -> Outcome {
    let value = match read_json(path) {
        Ok(v) => v,
        Err(o) => return o,
    };
    let g = match polynomial_from_json(&value) {
        Ok(g) => g,
        Err(e) => return from_error(e),
    };
    match straighten_json(&g, f) {
        Ok(v) => Outcome::ok(pretty(&v)),
        Err(e) => from_error(e),
    }
}

fn cmd_straighten_random(count: usize, seed: u64, f: &BilinearForm) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut results = Vec::with_capacity(count);
    for _ in 0..count {
        let (g, _) = sample_for_straighten(&mut rng);
        match straighten_json(&g, f) {
            Ok(v) => results.push(json!({"input": polynomial_to_json(&g), "result": v})),
            Err(e) => return from_error(e),
        }
    }
    Outcome::ok(pretty(&json!({"seed": seed, "results": results})))
}

/// One seeded random odd-variable polynomial of total degree at most 6.
pub fn sample_for_straighten<R: rand::Rng>(rng: &mut R) -> (GradedPolynomial, BTreeMap<usize, usize>) {
    loop {
        let total = rng.gen_range(1..=6);
        let vars = rng.gen_range(1..=total.min(3));
        let d = random_multidegree(rng, total, vars);
        let terms = rng.gen_range(1..=4);
        let g = random_odd_polynomial(rng, &d, terms);
        if !g.is_zero() {
            return (g, d);
        }
    }
}

fn cmd_hwv(m: usize, path: &PathBuf, check: bool) -> Outcome {
    let value = match read_json(path) {
        Ok(v) => v,
        Err(o) => return o,
    };
    let e: ExponentVector = match serde_json::from_value(value) {
        Ok(e) => e,
        Err(err) => return Outcome::fail(EXIT_USAGE, format!("error: invalid exponent vector: {err}\n")),
    };
    if e.m() != m {
        return Outcome::fail(EXIT_USAGE, format!("error: exponent vector has m = {}, expected {m}\n", e.m()));
    }
    let g = match hwv_generator(&e) {
        Ok(g) => g,
        Err(err) => return from_error(err),
    };
    let invariant = if check {
        let f = BilinearForm::identity(m).expect("m >= 2");
        match is_unitriangular_invariant(&g, m, &f) {
            Ok(b) => Some(b),
            Err(err) => return from_error(err),
        }
    } else {
        None
    };
    let out = Outcome::ok(pretty(&json!({
        "exponents": e.to_json(),
        "polynomial": polynomial_to_json(&g),
        "invariant": invariant,
    })));
    if invariant == Some(false) {
        Outcome { stderr: "falsified: generator is not unitriangular invariant\n".into(), ..out }.with_code(EXIT_FALSIFIED)
    } else {
        out
    }
}

fn cmd_wqo_basis(path: &PathBuf) -> Outcome {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return Outcome::fail(EXIT_INPUT, format!("error: cannot read {}: {e}\n", path.display())),
    };
    let mut stream: Vec<NatVector> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let v: NatVector = match serde_json::from_str(line) {
            Ok(v) => v,
            Err(e) => return Outcome::fail(EXIT_INPUT, format!("error: line {}: {e}\n", i + 1)),
        };
        if let Some(first) = stream.first() {
            if first.len() != v.len() {
                return Outcome::fail(
                    EXIT_INPUT,
                    format!("error: line {}: length {} differs from {}\n", i + 1, v.len(), first.len()),
                );
            }
        }
        stream.push(v);
    }
    let basis = finite_basis_from_stream(stream);
    let antichain = is_antichain(&basis);
    let out = Outcome::ok(pretty(&json!({"basis": basis, "antichain": antichain})));
    if antichain {
        out
    } else {
        out.with_code(EXIT_FALSIFIED)
    }
}
