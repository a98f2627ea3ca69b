//! `ssred`: k-semisimplification of matrix groups from the command line.
//!
//! Every command prints one JSON report on stdout and exits with 0 (ok),
//! 1 (a checked property failed), 2 (invalid input) or 3 (resource bound).

mod repfile;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use ssred_core::exactalg::FieldSpec;
use ssred_core::gitoracle::{GroupTable, OracleLimits, MAX_GROUP_ORDER};
use ssred_core::matrep::{Representation, SeedOrder};
use ssred_core::ssred::{
    clifford_joint_ss, conjugacy_certificate, is_gcr_over_k, optimal_flag, semisimplify, NormalityEvidence,
};
use ssred_core::{Error, Result};

use repfile::RepFile;
use report::Status;

#[derive(Parser)]
#[command(name = "ssred", version, about = "Exact k-semisimplification of matrix groups")]
struct Cli {
    /// Largest |GL_n(F_q)| the brute-force oracle may enumerate.
    #[arg(long, global = true, default_value_t = MAX_GROUP_ORDER)]
    max_group_order: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Representation file (JSON).
    #[arg(long)]
    input: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Decide complete reducibility, optionally cross-checked by the oracle.
    Check {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        oracle: bool,
    },
    /// Semisimplify along a composition series.
    Ss {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the semisimplified representation here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Semisimplify twice and certify the results conjugate.
    Conjugacy {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Second file; defaults to the first.
        #[arg(long)]
        input_b: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        seed_b: u64,
    },
    /// Joint semisimplification of a normal pair H ◁ M.
    Clifford {
        #[arg(long)]
        m: PathBuf,
        #[arg(long)]
        h: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Optimal destabilizing flag.
    Optimal {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 4)]
        max_weight: i64,
    },
    /// Brute-force orbit closedness and accessible closed orbits.
    Oracle {
        #[command(flatten)]
        input: Input,
    },
}

struct Loaded {
    bytes: Vec<u8>,
    rep: Representation,
}

fn load(path: &Path) -> Result<Loaded> {
    let bytes = std::fs::read(path).map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    let text = std::str::from_utf8(&bytes).map_err(|_| Error::InvalidInput(format!("{} is not UTF-8", path.display())))?;
    let rep = RepFile::parse(text)?.to_representation()?;
    Ok(Loaded { bytes, rep })
}

fn limits(cli_order: u64) -> Result<OracleLimits> {
    Ok(OracleLimits::from_env()?.with_max_group_order(cli_order))
}

fn oracle_table(rep: &Representation, max_order: u64) -> Result<GroupTable> {
    match rep.field() {
        FieldSpec::Prime(q) => GroupTable::new(rep.n(), q, limits(max_order)?),
        FieldSpec::Rational => Err(Error::InvalidInput("the oracle needs a finite field".into())),
    }
}

/// Runs a command, returning its digest, status and result payload.
fn run(cli: &Cli) -> (&'static str, Option<String>, Result<(Status, Value)>) {
    match &cli.command {
        Command::Check { input, oracle } => {
            let mut digest = None;
            let out = (|| {
                let l = load(&input.input)?;
                digest = Some(report::digest(&[&l.bytes]));
                let cert = is_gcr_over_k(&l.rep)?;
                let gcr = cert.is_semisimple();
                let mut result = json!({"gcr": gcr, "certificate": report::semisimplicity(&cert)});
                let mut status = Status::Ok;
                if *oracle {
                    let table = oracle_table(&l.rep, cli.max_group_order)?;
                    let o = table.oracle_gcr(&l.rep)?;
                    result["oracle_gcr"] = json!(o);
                    result["agree"] = json!(o == gcr);
                    if o != gcr {
                        status = Status::Finding;
                    }
                }
                Ok((status, result))
            })();
            ("check", digest, out)
        }
        Command::Ss { input, seed, out } => {
            let mut digest = None;
            let res = (|| {
                let l = load(&input.input)?;
                digest = Some(report::digest(&[&l.bytes]));
                let ss = semisimplify(&l.rep, &SeedOrder::new(*seed))?;
                if let Some(path) = out {
                    let text = RepFile::from_representation(&ss.ss_representation()).to_canonical_string();
                    std::fs::write(path, text)
                        .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display())))?;
                }
                let mut result = report::ss_result(&ss);
                result["seed"] = json!(seed);
                Ok((Status::Ok, result))
            })();
            ("ss", digest, res)
        }
        Command::Conjugacy { input, seed, input_b, seed_b } => {
            let mut digest = None;
            let res = (|| {
                let a = load(&input.input)?;
                let b = match input_b {
                    Some(p) => load(p)?,
                    None => Loaded { bytes: a.bytes.clone(), rep: a.rep.clone() },
                };
                digest = Some(report::digest(&[&a.bytes, &b.bytes]));
                let lhs = semisimplify(&a.rep, &SeedOrder::new(*seed))?;
                let rhs = semisimplify(&b.rep, &SeedOrder::new(*seed_b))?;
                let result = |g: Value, verified: bool| {
                    json!({
                        "lhs": report::ss_result(&lhs),
                        "rhs": report::ss_result(&rhs),
                        "seeds": [seed, seed_b],
                        "g": g,
                        "verified": verified,
                    })
                };
                match conjugacy_certificate(&lhs, &rhs) {
                    Ok(cert) => Ok((Status::Ok, result(report::matrix(&cert.g), cert.verify()))),
                    Err(Error::NotConjugate) => Ok((Status::Finding, result(Value::Null, false))),
                    Err(e) => Err(e),
                }
            })();
            ("conjugacy", digest, res)
        }
        Command::Clifford { m, h, seed } => {
            let mut digest = None;
            let res = (|| {
                let lm = load(m)?;
                let lh = load(h)?;
                digest = Some(report::digest(&[&lm.bytes, &lh.bytes]));
                let j = clifford_joint_ss(&lm.rep, &lh.rep, &SeedOrder::new(*seed))?;
                let normality = match j.normality {
                    NormalityEvidence::Enumerated { m_order, h_order } => {
                        json!({"kind": "enumerated", "m_order": m_order, "h_order": h_order})
                    }
                    NormalityEvidence::AlgebraStable => json!({"kind": "algebra_stable", "trusted": true}),
                };
                Ok((
                    Status::Ok,
                    json!({
                        "normality": normality,
                        "m": report::ss_result(&j.m),
                        "h_limits": report::matrices(&j.h_limits),
                        "h_semisimple": j.h_certificate.is_semisimple(),
                        "h_certificate": report::semisimplicity(&j.h_certificate),
                    }),
                ))
            })();
            ("clifford", digest, res)
        }
        Command::Optimal { input, max_weight } => {
            let mut digest = None;
            let res = (|| {
                let l = load(&input.input)?;
                digest = Some(report::digest(&[&l.bytes]));
                let r = optimal_flag(&l.rep, *max_weight)?;
                let candidates: Vec<Value> = r
                    .per_flag_data
                    .iter()
                    .map(|d| {
                        json!({
                            "flag": report::flag(&d.flag),
                            "weights": d.weights,
                            "measure": report::fraction(&d.measure),
                            "basis_change": report::matrix(d.cocharacter.basis_change()),
                        })
                    })
                    .collect();
                Ok((
                    Status::Ok,
                    json!({
                        "measure": report::fraction(&r.measure),
                        "argmax_flags": r.argmax_flags.iter().map(report::flag).collect::<Vec<_>>(),
                        "candidates": candidates,
                        "search_bound": r.search_bound,
                        "lattice_exhaustive": r.lattice_exhaustive,
                        "levi_exhaustive": r.levi_exhaustive,
                    }),
                ))
            })();
            ("optimal", digest, res)
        }
        Command::Oracle { input } => {
            let mut digest = None;
            let res = (|| {
                let l = load(&input.input)?;
                digest = Some(report::digest(&[&l.bytes]));
                let table = oracle_table(&l.rep, cli.max_group_order)?;
                let tuple = l.rep.generic_tuple();
                let record = table.orbit_record(&tuple)?;
                let closed = table.accessible_closed_orbits(&tuple)?;
                let own = record.id();
                let unique = closed.len() == 1;
                Ok((
                    if unique { Status::Ok } else { Status::Finding },
                    json!({
                        "group_order": table.order(),
                        "orbit_size": record.members.len(),
                        "cochar_closed": record.is_cochar_closed,
                        "gcr": record.is_cochar_closed,
                        "preserved_flags": table.preserved_flags(&tuple)?.len(),
                        "accessible_orbits": record.accessible_from.len(),
                        "accessible_closed_orbits": closed.len(),
                        "own_orbit_is_accessible_closed": closed.contains(&own),
                        "rhmt_unique": unique,
                    }),
                ))
            })();
            ("oracle", digest, res)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, digest, outcome) = run(&cli);
    let (status, result) = match outcome {
        Ok(pair) => pair,
        Err(e) => {
            let status = Status::of_error(&e);
            (status, json!({"error": {"kind": report::error_kind(&e), "message": e.to_string()}}))
        }
    };
    let envelope = report::envelope(command, digest, status, result);
    println!("{}", serde_json::to_string_pretty(&envelope).expect("reports serialize"));
    ExitCode::from(status.code() as u8)
}
