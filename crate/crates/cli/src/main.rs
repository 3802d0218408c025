mod document;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use ratpoints::formula::{natural_order, parse_formula, parse_polynomial, parse_polynomial_in};
use ratpoints::rational;
use ratpoints::sos::{certificate_bit_length, CertificateMismatch};
use ratpoints::{
    decide_rational_sos_with, find_rational_points, semialgebraic_solve, Budget, EngineConfig, Error, MultiPoly,
    RationalPoint, SOSCertificate, SOSDecision, SosOptions,
};

use document::{CertificateDocument, Stats, Status, Term};

const EXIT_NEGATIVE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_CONVEXITY: u8 = 4;
const EXIT_INTERNAL: u8 = 5;

#[derive(Parser)]
#[command(name = "ratpoints", version, about = "Rational points of convex semi-algebraic sets and rational sums of squares")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a polynomial is a sum of squares over Q.
    Sos {
        /// Infix polynomial, e.g. "x^4 + 2*x^2*y^2 + y^4".
        #[arg(allow_hyphen_values = true)]
        poly: String,
        /// Use the half Newton polytope as monomial basis (default).
        #[arg(long, overrides_with = "no_prune")]
        prune: bool,
        /// Use all monomials of degree at most deg/2.
        #[arg(long, overrides_with = "prune")]
        no_prune: bool,
        /// Skip the floating-point interior probe; search exactly only.
        #[arg(long)]
        no_probe: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Find a rational point in the set described by a formula file.
    Find {
        /// File holding one s-expression formula.
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Verify a certificate document against a polynomial, exactly.
    Check {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        /// JSON document as written by `sos --json`; `-` reads stdin.
        certificate: PathBuf,
    },
}

#[derive(Args)]
struct Common {
    /// Emit the JSON document on stdout.
    #[arg(long)]
    json: bool,
    /// Cell budget for the decomposition; overrides RATPOINT_BUDGET_CELLS.
    #[arg(long, value_name = "N")]
    budget_cells: Option<u64>,
    /// Run the decomposition on one thread.
    #[arg(long)]
    sequential: bool,
}

impl Common {
    fn engine(&self) -> Result<EngineConfig, Failure> {
        let mut budget = Budget::from_env().map_err(Failure::usage)?;
        if let Some(n) = self.budget_cells {
            budget.max_cells = n;
        }
        let mut cfg = EngineConfig { budget, ..EngineConfig::default() };
        if self.sequential {
            cfg.parallel = false;
        }
        Ok(cfg)
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(e: impl std::fmt::Display) -> Self {
        Failure { code: EXIT_USAGE, message: e.to_string() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::Shape(_) | Error::Dimension(_) | Error::UndefinedInput(_) => EXIT_USAGE,
            Error::BudgetExhausted(_) => EXIT_BUDGET,
            Error::ConvexitySuspect => EXIT_CONVEXITY,
            _ => EXIT_INTERNAL,
        };
        Failure { code, message: e.to_string() }
    }
}

fn point_strings(p: &RationalPoint) -> Vec<String> {
    p.coords().iter().map(rational::to_string).collect()
}

fn terms(c: &SOSCertificate, names: &[String]) -> Vec<Term> {
    c.terms
        .iter()
        .map(|(w, g)| Term { weight: rational::to_string(w), polynomial: g.fmt_with(names) })
        .collect()
}

fn run_sos(poly: &str, prune: bool, probe: bool, common: &Common) -> Result<CertificateDocument, Failure> {
    let start = Instant::now();
    let parsed = parse_polynomial(poly)?;
    let opts = SosOptions { prune, probe, engine: common.engine()? };
    let decision = decide_rational_sos_with(&parsed.poly, &opts)?;
    let mut doc = CertificateDocument {
        status: Status::NotSos,
        input: poly.to_string(),
        variables: parsed.vars.clone(),
        point: None,
        certificate: None,
        stats: Stats { max_bit_length: 0, elapsed_ms: 0 },
    };
    match decision {
        SOSDecision::NotSOSOverR => {}
        SOSDecision::SOSOverROnly { witness } => {
            eprintln!("Gram set is nonempty but has no rational point; real witness over roots of {}", witness.g);
            doc.status = Status::SosRealOnly;
        }
        SOSDecision::SOSOverQ { point, certificate } => {
            doc.status = Status::SosRational;
            doc.stats.max_bit_length = point.max_bit_length().max(certificate_bit_length(&certificate));
            doc.point = Some(point_strings(&point));
            doc.certificate = Some(terms(&certificate, &parsed.vars));
        }
    }
    doc.stats.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(doc)
}

fn run_find(file: &PathBuf, common: &Common) -> Result<CertificateDocument, Failure> {
    let start = Instant::now();
    let src = std::fs::read_to_string(file).map_err(|e| Failure::usage(format!("{}: {e}", file.display())))?;
    let phi = parse_formula(&src)?;
    let cfg = common.engine()?;
    let mut doc = CertificateDocument {
        status: Status::EmptySet,
        input: src.trim().to_string(),
        variables: phi.vars().to_vec(),
        point: None,
        certificate: None,
        stats: Stats { max_bit_length: 0, elapsed_ms: 0 },
    };
    let nonempty = semialgebraic_solve(&phi, &cfg)?.iter().any(|p| !p.flagged.is_empty());
    if nonempty {
        match find_rational_points(&phi, &cfg)? {
            Some(p) => {
                doc.status = Status::PointFound;
                doc.stats.max_bit_length = p.max_bit_length();
                doc.point = Some(point_strings(&p));
            }
            None => doc.status = Status::NoRationalPoint,
        }
    }
    doc.stats.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(doc)
}

fn run_check(poly: &str, certificate: &PathBuf) -> Result<(), Failure> {
    let text = if certificate.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(Failure::usage)?
    } else {
        std::fs::read_to_string(certificate).map_err(|e| Failure::usage(format!("{}: {e}", certificate.display())))?
    };
    let doc: CertificateDocument = serde_json::from_str(&text).map_err(|e| Failure::usage(format!("certificate: {e}")))?;
    let Some(cert_terms) = doc.certificate else {
        return Err(Failure::usage("document carries no certificate"));
    };
    // one ring for the polynomial and every term
    let mut names: Vec<String> = parse_polynomial(poly)?.vars;
    for t in &cert_terms {
        names.extend(parse_polynomial(&t.polynomial)?.vars);
    }
    names.sort();
    names.dedup();
    let names = natural_order(names);
    let f = parse_polynomial_in(poly, &names)?;
    let mut cert = SOSCertificate::default();
    for t in &cert_terms {
        let w = rational::parse(&t.weight).ok_or_else(|| Failure::usage(format!("bad weight '{}'", t.weight)))?;
        cert.terms.push((w, parse_polynomial_in(&t.polynomial, &names)?));
    }
    cert.check(&f).map_err(|e| {
        let message = match &e {
            CertificateMismatch::Coefficient { monomial, expected, found } => {
                let m = MultiPoly::from_terms(names.len(), [(monomial.0.clone(), rational::int(1))]);
                format!(
                    "mismatch at {}: polynomial has {}, certificate gives {}",
                    m.fmt_with(&names),
                    rational::to_string(expected),
                    rational::to_string(found)
                )
            }
            _ => e.to_string(),
        };
        Failure { code: EXIT_NEGATIVE, message }
    })
}

fn print_doc(doc: &CertificateDocument, json: bool) {
    if json {
        println!("{}", serde_json::to_string_pretty(doc).expect("document serializes"));
        return;
    }
    println!("{}", doc.status.as_str());
    if let Some(p) = &doc.point {
        let coords: Vec<String> = doc.variables.iter().zip(p).map(|(v, c)| format!("{v} = {c}")).collect();
        if doc.certificate.is_none() {
            println!("{}", coords.join(", "));
        }
    }
    for t in doc.certificate.iter().flatten() {
        println!("{} * ({})^2", t.weight, t.polynomial);
    }
}

fn exit_for(status: Status) -> u8 {
    match status {
        Status::SosRational | Status::PointFound => 0,
        _ => EXIT_NEGATIVE,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Sos { poly, prune: _, no_prune, no_probe, common } => {
            run_sos(poly, !no_prune, !no_probe, common).map(|d| (d, common.json))
        }
        Command::Find { file, common } => run_find(file, common).map(|d| (d, common.json)),
        Command::Check { poly, certificate } => {
            return match run_check(poly, certificate) {
                Ok(()) => {
                    println!("ok");
                    ExitCode::SUCCESS
                }
                Err(f) => {
                    eprintln!("{}", f.message);
                    ExitCode::from(f.code)
                }
            };
        }
    };
    match result {
        Ok((doc, json)) => {
            print_doc(&doc, json);
            ExitCode::from(exit_for(doc.status))
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
