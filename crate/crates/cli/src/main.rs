mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use twisted_dp::frobenius::{coeff_a, coeff_b, coeff_c};
use twisted_dp::json::{encode_coeffs, encode_matrix, encode_qpoly, encode_zpoly};
use twisted_dp::qcomb::QContext;
use twisted_dp::ring::RingDescriptor;
use twisted_dp::simpson::{run_default_suite, PhiContext};
use twisted_dp::twisted::TwistedAlgebra;
use twisted_dp::verify::{run_suite, SuiteParams, SUITES};
use twisted_dp::weyl::{center_basis, centralizer_basis, WeylElem};
use twisted_dp::Error;

use output::{cells, Format, Output};

#[derive(Parser)]
#[command(name = "twdp", version, about = "Tables and identity checks for twisted divided powers")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Gaussian binomials C(n,k)_q for n ≤ nmax.
    Qbinom {
        #[arg(long, default_value = "Zt", value_parser = parse_ring)]
        ring: RingDescriptor,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u16).range(0..=200))]
        nmax: u16,
    },
    /// The p-Frobenius coefficient tables A, B and C.
    FrobCoeffs {
        #[arg(long, value_parser = clap::value_parser!(u16).range(2..=16))]
        p: u16,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u16).range(0..=12))]
        nmax: u16,
    },
    /// Runs a named identity suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, value_parser = parse_ring)]
        ring: Option<RingDescriptor>,
        #[arg(long, value_parser = clap::value_parser!(u16).range(0..=64))]
        nmax: Option<u16>,
        #[arg(long, value_parser = clap::value_parser!(u16).range(0..=64))]
        degree: Option<u16>,
        #[arg(long, value_parser = clap::value_parser!(u16).range(2..=16))]
        p: Option<u16>,
    },
    /// Centralizer and center of A in the twisted Weyl algebra, in the box a + b ≤ degree.
    Center {
        #[arg(long, default_value = "CycF:3", value_parser = parse_ring)]
        ring: RingDescriptor,
        #[arg(long, value_parser = clap::value_parser!(u16).range(0..=24))]
        degree: Option<u16>,
    },
    /// Roundtrips Higgs fields through the twisted Simpson correspondence.
    Simpson {
        #[arg(long, default_value = "CycF:2", value_parser = parse_ring)]
        ring: RingDescriptor,
        #[arg(long, default_value = "default", value_parser = ["default"])]
        suite: String,
        /// Expected q-characteristic of the ring.
        #[arg(long)]
        p: Option<u32>,
    },
}

fn parse_ring(s: &str) -> Result<RingDescriptor, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Usage(String),
    Falsified(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Falsified(_) => Failure::Falsified(e.to_string()),
            Error::Precondition(_) | Error::BadDescriptor(..) => Failure::Usage(e.to_string()),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Qbinom { ring, nmax } => Ok((qbinom(ring, nmax as usize), true)),
        Command::FrobCoeffs { p, nmax } => frob_coeffs(p as usize, nmax as usize).map(|o| (o, true)),
        Command::Verify { ref suite, ring, nmax, degree, p } => {
            let params = SuiteParams {
                ring,
                nmax: nmax.map(usize::from),
                degree: degree.map(usize::from),
                p: p.map(usize::from),
                seed: cli.seed,
            };
            verify(suite, &params)
        }
        Command::Center { ring, degree } => center(ring, degree.map(usize::from)).map(|o| (o, true)),
        Command::Simpson { ring, p, .. } => simpson(ring, p, cli.seed),
    };
    let (out, ok) = match result {
        Ok(v) => v,
        Err(f) => {
            let (code, msg) = match f {
                Failure::Usage(m) => (2, m),
                Failure::Falsified(m) => (3, m),
                Failure::Runtime(m) => (1, m),
            };
            eprintln!("twdp: {msg}");
            return ExitCode::from(code);
        }
    };
    if let Err(e) = out.emit(cli.format, cli.out.as_deref()) {
        eprintln!("twdp: cannot write output: {e}");
        return ExitCode::from(1);
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(if matches!(cli.command, Command::Verify { .. }) { 3 } else { 1 })
    }
}

fn qbinom(ring: RingDescriptor, nmax: usize) -> Output {
    let qc = QContext::new(ring);
    let mut rows = Vec::new();
    let mut out = Output::new(Value::Null, &["n", "k", "coefficients"]);
    for n in 0..=nmax {
        for k in 0..=n {
            let c = qc.binom(n, k);
            let coeffs = encode_coeffs(&c);
            let mut r = vec![n.to_string(), k.to_string()];
            r.extend(cells(&coeffs));
            out.row(r);
            rows.push(json!({"n": n, "k": k, "coeffs": coeffs}));
        }
    }
    out.json = json!({"ring": ring.to_string(), "nmax": nmax, "rows": rows});
    out
}

fn frob_coeffs(p: usize, nmax: usize) -> Result<Output, Failure> {
    let mut out = Output::new(Value::Null, &["kind", "n", "i", "coefficients"]);
    let (mut a_rows, mut b_rows, mut c_rows) = (Vec::new(), Vec::new(), Vec::new());
    for n in 0..=nmax {
        for i in 0..=p * n {
            let a = encode_zpoly(&coeff_a(n, i, p));
            let b = encode_zpoly(&coeff_b(n, i, p)?);
            let c = coeff_c(n, i, p)?;
            let (num, den) = (encode_qpoly(&c.num), encode_qpoly(&c.den));
            for (kind, v) in [("A", &a), ("B", &b), ("C.num", &num), ("C.den", &den)] {
                let mut r = vec![kind.to_string(), n.to_string(), i.to_string()];
                r.extend(cells(v));
                out.row(r);
            }
            a_rows.push(json!({"n": n, "i": i, "coeffs": a}));
            b_rows.push(json!({"n": n, "i": i, "coeffs": b}));
            c_rows.push(json!({"n": n, "i": i, "num": num, "den": den}));
        }
    }
    out.json = json!({"p": p, "nmax": nmax, "A": a_rows, "B": b_rows, "C": c_rows});
    Ok(out)
}

fn verify(suite: &str, params: &SuiteParams) -> Result<(Output, bool), Failure> {
    if !SUITES.contains(&suite) {
        return Err(Failure::Usage(format!("unknown suite `{suite}`; known suites: {}", SUITES.join(", "))));
    }
    let rep = run_suite(suite, params)?;
    if rep.falsified {
        return Err(Failure::Falsified(format!("{suite}: {}", rep.failures.join("; "))));
    }
    let mut out = Output::new(rep.to_json(), &["suite", "cases", "failures", "failed cases"]);
    let mut r = vec![rep.suite.clone(), rep.cases.to_string(), rep.failures.len().to_string()];
    r.extend(rep.failures.iter().cloned());
    out.row(r);
    Ok((out, rep.passed()))
}

fn operator_json(op: &WeylElem) -> Value {
    Value::Array(op.monomials().iter().map(|(&(a, b), c)| json!([a, b, encode_coeffs(c)])).collect())
}

fn center(ring: RingDescriptor, degree: Option<usize>) -> Result<Output, Failure> {
    let alg = TwistedAlgebra::polynomial(ring);
    let degree = degree.unwrap_or(2 * ring.q_characteristic() as usize);
    let cent = centralizer_basis(&alg, degree)?;
    let z = if ring.q_characteristic() > 0 && ring.is_q_divisible() { Some(center_basis(&alg, degree)?) } else { None };
    let mut out = Output::new(
        json!({
            "ring": ring.to_string(),
            "degree": degree,
            "centralizer": cent.iter().map(operator_json).collect::<Vec<_>>(),
            "center": z.as_ref().map(|z| z.iter().map(operator_json).collect::<Vec<_>>()),
        }),
        &["kind", "index", "operator"],
    );
    for (i, op) in cent.iter().enumerate() {
        out.row(vec!["centralizer".into(), i.to_string(), op.to_string()]);
    }
    for (i, op) in z.iter().flatten().enumerate() {
        out.row(vec!["center".into(), i.to_string(), op.to_string()]);
    }
    Ok(out)
}

fn simpson(ring: RingDescriptor, p: Option<u32>, seed: u64) -> Result<(Output, bool), Failure> {
    if let Some(p) = p {
        if p != ring.q_characteristic() {
            return Err(Failure::Usage(format!("{ring} has q-characteristic {}, not {p}", ring.q_characteristic())));
        }
    }
    let ctx = PhiContext::new(&TwistedAlgebra::polynomial(ring))?;
    let reports = run_default_suite(&ctx, seed)?;
    let mut out = Output::new(Value::Null, &["case", "rank", "passed", "degree bound", "error"]);
    let mut cases = Vec::new();
    for r in &reports {
        out.row(vec![
            r.name.clone(),
            r.rank.to_string(),
            r.passed().to_string(),
            r.degree_bound.to_string(),
            r.error.clone().unwrap_or_default(),
        ]);
        cases.push(json!({
            "name": r.name,
            "rank": r.rank,
            "passed": r.passed(),
            "degree_bound": r.degree_bound,
            "input": encode_matrix(&r.input),
            "recovered": r.recovered.as_ref().map(|m| encode_matrix(m)),
            "witness": r.witness.as_ref().map(|m| encode_matrix(m)),
            "error": r.error,
        }));
    }
    let ok = reports.iter().all(|r| r.passed());
    let failures = reports.iter().filter(|r| !r.passed()).count();
    out.json = json!({"ring": ring.to_string(), "p": ctx.p(), "suite": "default", "seed": seed, "cases": cases, "failures": failures});
    Ok((out, ok))
}
