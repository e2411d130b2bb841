//! Command-line front end. Every subcommand prints JSON-lines records (see
//! `ReportRecord`); diagnostics go to standard error. Exit codes: 0 on
//! success, 1 on usage errors, 2 on domain errors such as requesting the
//! root for an odd order.

use std::collections::BTreeMap;
use std::process::exit;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use dyadic_cone::harmonic::{harmonic_multiplier_space, solid_harmonic, ConeQuadric};
use dyadic_cone::holt::{h_at_minus2, h_mod, h_mod_big, sigma};
use dyadic_cone::legendre::divides_p2;
use dyadic_cone::lifting::{
    dyadic_root, exhaustive_verify, lift_step, stability_check, LiftStepRecord,
};
use dyadic_cone::{Error, Result};
use dyadic_cone_cli::{
    bit_cap, parse_biguint, parse_rational, residue_json, selftest, ReportRecord, Status,
    MAX_BITS_VAR,
};

#[derive(Parser)]
#[command(
    name = "dyadic-cone",
    version,
    about = "Exact 2-adic analysis of Legendre polynomial divisibility and harmonic cones"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact series term sigma_l^m(k)
    Sigma {
        #[arg(long)]
        l: u64,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        k: u64,
    },
    /// Exact transform value H_l^m(-2)
    Hval {
        #[arg(long)]
        l: u64,
        #[arg(long)]
        m: u64,
    },
    /// Transform value mod 2^bits; the degree may be arbitrarily large
    Hmod {
        /// Degree, any size (decimal)
        #[arg(long)]
        l: String,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        bits: u32,
    },
    /// Does 3x^2 - 1 divide the Legendre polynomial part?
    Divides {
        #[arg(long)]
        l: u64,
        #[arg(long)]
        m: u64,
    },
    /// 2-adic root of the degree family, lifted to a bit target
    Root {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        bits: u32,
    },
    /// One lifting step from a root mod 2^bits
    Lift {
        #[arg(long)]
        m: u64,
        /// Current root, reduced mod 2^bits (decimal)
        #[arg(long)]
        root: String,
        #[arg(long)]
        bits: u32,
    },
    /// Brute-force one lifting step over a window of degrees
    Scan {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        bits: u32,
        /// Number of degrees to scan, starting at m; must cover a full
        /// class mod 2^(bits+1)
        #[arg(long)]
        window: u64,
        /// Emit the per-degree value table as CSV instead of the JSON
        /// verdict
        #[arg(long)]
        csv: bool,
        /// Worker threads for the scan (default: all cores)
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Probe value congruence for degrees congruent mod 2^bits
    Stability {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        bits: u32,
        #[arg(long, default_value_t = 200)]
        pairs: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Harmonic multiplier space of x^2 + b y^2 - (b+1) z^2
    Multipliers {
        /// Cone parameter, integer or num/den rational, b >= 1
        #[arg(long)]
        b: String,
        #[arg(long, default_value_t = 12)]
        dmax: u32,
    },
    /// Cartesian solid harmonic, real and imaginary parts
    Solid {
        #[arg(long)]
        l: u64,
        #[arg(long)]
        m: u64,
    },
    /// Run the module invariant suite; nonzero exit on any failure
    Selftest,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                print!("{e}");
                exit(0);
            }
            _ => {
                eprint!("{e}");
                exit(1);
            }
        },
    };
    exit(dispatch(cli.command));
}

fn params<const N: usize>(kv: [(&str, String); N]) -> BTreeMap<String, String> {
    kv.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

/// Print a success record; exit code 0.
fn ok(command: &str, parameters: BTreeMap<String, String>, result: Value) -> i32 {
    ReportRecord::ok(command, parameters, result).print();
    0
}

/// Print a failure record and a diagnostic; exit code 2.
fn domain_error(command: &str, parameters: BTreeMap<String, String>, error: &Error) -> i32 {
    eprintln!("error: {error}");
    ReportRecord::failed(command, parameters, error).print();
    2
}

fn finish(command: &str, parameters: BTreeMap<String, String>, outcome: Result<Value>) -> i32 {
    match outcome {
        Ok(result) => ok(command, parameters, result),
        Err(e) => domain_error(command, parameters, &e),
    }
}

/// Enforce the environment bit cap; violations are usage errors (exit 1).
fn checked_bits(bits: u32) -> u32 {
    let cap = match bit_cap() {
        Ok(cap) => cap,
        Err(msg) => {
            eprintln!("error: {msg}");
            exit(1);
        }
    };
    if bits > cap {
        eprintln!("error: --bits {bits} exceeds the {MAX_BITS_VAR} cap of {cap}");
        exit(1);
    }
    bits
}

/// Malformed numeric flag values are usage errors (exit 1).
fn usage<T>(flag: &str, parsed: Result<T>) -> T {
    match parsed {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: invalid value for {flag}: {e}");
            exit(1);
        }
    }
}

fn configure_pool(jobs: Option<usize>) {
    if let Some(jobs) = jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .expect("worker pool is configured once, before any parallel work");
    }
}

fn step_json(step: &LiftStepRecord) -> Value {
    json!({
        "bits": step.bits,
        "root": step.root.to_string(),
        "representative": step.representative.to_string(),
        "residue": residue_json(&step.residue),
        "bit": step.bit,
        "parity_offset": step.parity_offset,
        "correction": step.correction,
        "new_root": step.new_root.to_string(),
    })
}

fn dispatch(command: Command) -> i32 {
    match command {
        Command::Sigma { l, m, k } => {
            let p = params([
                ("l", l.to_string()),
                ("m", m.to_string()),
                ("k", k.to_string()),
            ]);
            let outcome = sigma(l, m, k).map(|v| json!({ "value": v.to_string() }));
            finish("sigma", p, outcome)
        }
        Command::Hval { l, m } => {
            let p = params([("l", l.to_string()), ("m", m.to_string())]);
            let outcome = h_at_minus2(l, m).map(|h| {
                json!({ "value": h.value().to_string(), "vanishes": h.vanishes() })
            });
            finish("hval", p, outcome)
        }
        Command::Hmod { l, m, bits } => {
            let bits = checked_bits(bits);
            let p = params([
                ("l", l.clone()),
                ("m", m.to_string()),
                ("bits", bits.to_string()),
            ]);
            let degree = usage("--l", parse_biguint(&l));
            let outcome = h_mod_big(&degree, m, bits).map(|r| json!({ "residue": residue_json(&r) }));
            finish("hmod", p, outcome)
        }
        Command::Divides { l, m } => {
            let p = params([("l", l.to_string()), ("m", m.to_string())]);
            let outcome = divides_p2(l, m).map(|d| json!({ "divides": d }));
            finish("divides", p, outcome)
        }
        Command::Root { m, bits } => {
            let bits = checked_bits(bits);
            let p = params([("m", m.to_string()), ("bits", bits.to_string())]);
            let outcome = dyadic_root(m, bits).map(|approx| {
                json!({
                    "residue": residue_json(&approx.residue()),
                    "trace": approx.trace.iter().map(step_json).collect::<Vec<_>>(),
                })
            });
            finish("root", p, outcome)
        }
        Command::Lift { m, root, bits } => {
            let bits = checked_bits(bits);
            let p = params([
                ("m", m.to_string()),
                ("root", root.clone()),
                ("bits", bits.to_string()),
            ]);
            let start = usage("--root", parse_biguint(&root));
            let outcome = lift_step(m, &start, bits).map(|step| step_json(&step));
            finish("lift", p, outcome)
        }
        Command::Scan {
            m,
            bits,
            window,
            csv,
            jobs,
        } => {
            let bits = checked_bits(bits);
            configure_pool(jobs);
            let p = params([
                ("m", m.to_string()),
                ("bits", bits.to_string()),
                ("window", window.to_string()),
            ]);
            if csv {
                return match scan_csv(m, bits, window) {
                    Ok(()) => 0,
                    Err(e) => domain_error("scan", p, &e),
                };
            }
            let outcome = exhaustive_verify(m, bits, window).map(|report| {
                json!({
                    "m": report.m,
                    "bits": report.bits,
                    "start": report.start,
                    "window": report.window,
                    "coarse": report.coarse,
                    "solutions": report.solutions,
                    "predicted": report.predicted.to_string(),
                    "consistent": report.consistent,
                })
            });
            finish("scan", p, outcome)
        }
        Command::Stability {
            m,
            bits,
            pairs,
            seed,
        } => {
            let bits = checked_bits(bits);
            let p = params([
                ("m", m.to_string()),
                ("bits", bits.to_string()),
                ("pairs", pairs.to_string()),
                ("seed", seed.to_string()),
            ]);
            let outcome = stability_check(m, bits, pairs, seed).map(|report| {
                json!({
                    "m": report.m,
                    "bits": report.bits,
                    "pairs": report.pairs,
                    "seed": report.seed,
                    "holds": report.holds(),
                    "vacuous": report.vacuous(),
                    "failures": report.failures,
                })
            });
            finish("stability", p, outcome)
        }
        Command::Multipliers { b, dmax } => {
            let p = params([("b", b.clone()), ("dmax", dmax.to_string())]);
            let value = usage("--b", parse_rational(&b));
            let outcome = ConeQuadric::new(value).map(|q| {
                let space = harmonic_multiplier_space(&q, dmax);
                json!({
                    "b": q.b().to_string(),
                    "quadric": q.poly().to_string(),
                    "total_dim": space.total_dim(),
                    "components": space
                        .components
                        .iter()
                        .map(|c| json!({
                            "degree": c.degree,
                            "dim": c.basis.len(),
                            "basis": c.basis.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                        }))
                        .collect::<Vec<_>>(),
                })
            });
            finish("multipliers", p, outcome)
        }
        Command::Solid { l, m } => {
            let p = params([("l", l.to_string()), ("m", m.to_string())]);
            let outcome = solid_harmonic(l, m).map(|sh| {
                json!({
                    "l": sh.l,
                    "m": sh.m,
                    "real": sh.real.to_string(),
                    "imag": sh.imag.to_string(),
                })
            });
            finish("solid", p, outcome)
        }
        Command::Selftest => run_selftest(),
    }
}

/// The per-degree value table: one row per scanned degree, residues at the
/// requested modulus next to the exact rational value.
fn scan_csv(m: u64, bits: u32, window: u64) -> Result<()> {
    // Same domain as the JSON verdict: verify the window first, then print.
    let report = exhaustive_verify(m, bits, window)?;
    let rows = (report.start..report.start + report.window)
        .into_par_iter()
        .map(|l| {
            let residue = h_mod(l, m, bits)?;
            let exact = h_at_minus2(l, m)?;
            Ok((l, residue.value().to_string(), exact.value().to_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    println!("l,m,N,residue,exact_value");
    for (l, residue, exact) in rows {
        println!("{l},{m},{bits},{residue},{exact}");
    }
    Ok(())
}

fn run_selftest() -> i32 {
    let mut failures = 0;
    for (name, check) in selftest::checks() {
        let p = params([("check", name.to_string())]);
        match check() {
            Ok(()) => {
                ok("selftest", p, json!({ "ok": true }));
            }
            Err(msg) => {
                failures += 1;
                eprintln!("selftest {name}: {msg}");
                ReportRecord {
                    command: "selftest".to_string(),
                    parameters: p,
                    result: None,
                    status: Status::Error,
                    error: Some("CheckFailed".to_string()),
                }
                .print();
            }
        }
    }
    if failures == 0 {
        0
    } else {
        2
    }
}
