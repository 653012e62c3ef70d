//! Command-line surface for the local L-factor calculator.
//!
//! Exit codes: 0 success / all sweeps pass, 1 usage or parse error,
//! 2 sweep counterexamples found, 3 numeric tolerance failure.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use gjrs::lfactor::gj_lfactor;
use gjrs::numeric::{
    check_duplication, eval_atom, tate_integral, CFloat, QuadratureSpec, DUPLICATION_TOLERANCE,
    TATE_TOLERANCE,
};
use gjrs::params::Field;
use gjrs::parse::{parse, parse_block, parse_cq};
use gjrs::predicates::{pair_reducible, theta_certificate, PoleReport};
use gjrs::rational::{CQ, QQ};
use gjrs::report::{atom_entries, fmt_c64, fmt_f64, pole_entries, JsonReport, NumericReport};
use gjrs::sweeps::{run_sweep, Fault, GridSpec, SweepKind, SweepReport};

#[derive(Parser)]
#[command(
    name = "gjrs",
    version,
    about = "Exact local L-factors for general linear groups: standard and \
             Rankin-Selberg factors, pole predicates, theta-lift certificates, \
             and exhaustive grid verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Standard L-factor of a product expression
    Lfactor {
        /// Product expression, e.g. "chiR(0,-1/2) x chiR(1,0)"
        rep: String,
        #[arg(long)]
        json: bool,
    },
    /// Pole order of the standard L-factor at a rational point
    Pole {
        rep: String,
        /// Evaluation point, a rational like 1/2 or -3/2
        #[arg(long, allow_hyphen_values = true)]
        at: String,
        #[arg(long)]
        json: bool,
    },
    /// Contragredient of a product expression
    Dual { rep: String },
    /// Rankin-Selberg L-factor of two products over the same field
    Rs {
        rep1: String,
        rep2: String,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether the normalized induction of two blocks is reducible
    Reducible { block1: String, block2: String },
    /// Irreducibility certificate for the full theta lifts of a product
    #[command(name = "theta-check")]
    ThetaCheck {
        rep: String,
        #[arg(long)]
        json: bool,
    },
    /// Exhaustive verification over finite parameter grids
    Sweep {
        /// Which sweep: pat1, generic or tempered-rs
        kind: String,
        #[command(flatten)]
        grid: GridArgs,
        /// Inject a documented rule corruption (sweep self-test); the run
        /// is expected to FAIL
        #[arg(long)]
        mutate: Option<String>,
        /// Write the JSON report to this file
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print the JSON report to stdout
        #[arg(long)]
        json: bool,
        /// Omit wall-time fields so output is byte-stable
        #[arg(long)]
        no_timing: bool,
    },
    /// Floating-point self-checks
    Numeric {
        #[command(subcommand)]
        check: NumericCmd,
    },
}

#[derive(Subcommand)]
enum NumericCmd {
    /// Gamma duplication identity over deterministic sample points
    Duplication {
        #[arg(long, default_value_t = 20)]
        samples: usize,
        /// Maximum accepted relative error
        #[arg(long, default_value_t = DUPLICATION_TOLERANCE)]
        tolerance: f64,
        #[arg(long)]
        json: bool,
    },
    /// Rank-one zeta-integral quadrature against the closed form
    Tate {
        /// Sign exponent, 0 or 1
        #[arg(long)]
        m: i64,
        /// Evaluation point in the cq grammar, e.g. "3/2" or "1+1/2i"
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        /// Maximum accepted relative error
        #[arg(long, default_value_t = TATE_TOLERANCE)]
        tolerance: f64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct GridArgs {
    /// Grid field: real, complex, nonarch or all
    #[arg(long, default_value = "all")]
    field: String,
    /// Bound for |m| on complex characters and induced blocks
    #[arg(long, default_value_t = 3)]
    m_max: i64,
    /// Exponent denominator: continuous exponents run over k/exp-den
    #[arg(long, default_value_t = 2)]
    exp_den: i64,
    /// Exponent bound: |exponent| <= exp-max
    #[arg(long, default_value_t = 3)]
    exp_max: i64,
    /// Allowed orders of the finite-order unramified part
    #[arg(long, value_delimiter = ',', default_value = "1,2")]
    zeta_orders: Vec<u64>,
    /// Largest segment length
    #[arg(long, default_value_t = 4)]
    max_len: u32,
    /// Largest number of blocks per product (generic sweep)
    #[arg(long, default_value_t = 2)]
    max_blocks: u32,
    /// Include ramified segments in the grid
    #[arg(long)]
    include_ramified: bool,
    /// Opaque cuspidal degrees to include, comma separated
    #[arg(long, value_delimiter = ',')]
    opaque_degrees: Vec<u32>,
}

impl GridArgs {
    fn grids(&self) -> Result<Vec<GridSpec>, String> {
        let fields = match self.field.as_str() {
            "real" => vec![Field::Real],
            "complex" => vec![Field::Complex],
            "nonarch" => vec![Field::NonArch],
            "all" => vec![Field::Real, Field::Complex, Field::NonArch],
            other => {
                return Err(format!(
                    "unknown field {other:?} (expected real, complex, nonarch or all)"
                ))
            }
        };
        if self.exp_den < 1 {
            return Err("exp-den must be >= 1".to_string());
        }
        if self.exp_max < 0 {
            return Err("exp-max must be >= 0".to_string());
        }
        let span = self.exp_den * self.exp_max;
        let exponents: Vec<i64> = (-span..=span).collect();
        Ok(fields
            .into_iter()
            .map(|field| GridSpec {
                field,
                m_max: self.m_max,
                r_values: exponents
                    .iter()
                    .map(|&k| CQ::real(QQ::new(k, self.exp_den)))
                    .collect(),
                c_values: exponents
                    .iter()
                    .map(|&k| QQ::new(k, self.exp_den))
                    .collect(),
                zeta_orders: self.zeta_orders.clone(),
                max_len: self.max_len,
                max_blocks: self.max_blocks,
                include_ramified: self.include_ramified,
                opaque_degrees: self.opaque_degrees.clone(),
            })
            .collect())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind::*;
            let code = match e.kind() {
                DisplayHelp | DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Lfactor { rep, json } => {
            let rep = parse(&rep).map_err(|e| e.to_string())?;
            let lf = gj_lfactor(&rep);
            let degraded = rep.has_opaque();
            if json {
                let mut report = JsonReport::new("lfactor", vec![rep.to_string()]);
                report.lfactor = Some(atom_entries(&lf));
                report.poles = Some(pole_entries(&lf));
                if degraded {
                    report.flags.push("opaque-degraded".to_string());
                }
                print_json(&report)?;
            } else {
                println!("{lf}");
                if degraded {
                    println!("note: opaque-degraded (opaque blocks contribute the factor 1)");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Pole { rep, at, json } => {
            let rep = parse(&rep).map_err(|e| e.to_string())?;
            let s0 = QQ::from_str(&at).map_err(|e| format!("bad --at value: {e}"))?;
            let lf = gj_lfactor(&rep);
            let report = PoleReport::of(&lf, s0, rep.has_opaque());
            if json {
                let mut envelope = JsonReport::new("pole", vec![rep.to_string()]);
                envelope.poles = Some(pole_entries(&lf));
                envelope.pole_report = Some(report);
                if rep.has_opaque() {
                    envelope.flags.push("opaque-degraded".to_string());
                }
                print_json(&envelope)?;
            } else {
                println!("pole order {} at s = {}", report.order, report.s);
                for c in &report.contributors {
                    println!("  contributor: {} (x{})", c.atom, c.mult);
                }
                if report.opaque_degraded {
                    println!("note: opaque-degraded (opaque blocks contribute the factor 1)");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Dual { rep } => {
            let rep = parse(&rep).map_err(|e| e.to_string())?;
            println!("{}", rep.dual());
            Ok(ExitCode::SUCCESS)
        }
        Command::Rs { rep1, rep2, json } => {
            let r1 = parse(&rep1).map_err(|e| e.to_string())?;
            let r2 = parse(&rep2).map_err(|e| e.to_string())?;
            let rs = gjrs::tensor::rs_lfactor(&r1, &r2).map_err(|e| e.to_string())?;
            if json {
                let mut report = JsonReport::new("rs", vec![r1.to_string(), r2.to_string()]);
                report.lfactor = Some(atom_entries(&rs.lfactor));
                report.poles = Some(pole_entries(&rs.lfactor));
                if rs.opaque_degraded {
                    report.flags.push("opaque-degraded".to_string());
                }
                print_json(&report)?;
            } else {
                println!("{}", rs.lfactor);
                if rs.opaque_degraded {
                    println!("note: opaque-degraded (opaque pairs contribute the factor 1)");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Reducible { block1, block2 } => {
            let b1 = parse_block(&block1).map_err(|e| e.to_string())?;
            let b2 = parse_block(&block2).map_err(|e| e.to_string())?;
            let verdict = pair_reducible(&b1, &b2).map_err(|e| e.to_string())?;
            println!(
                "{}",
                if verdict.reducible {
                    "reducible"
                } else {
                    "irreducible"
                }
            );
            if verdict.opaque_degraded {
                println!("note: opaque-degraded (opaque blocks carry no Rankin-Selberg data)");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::ThetaCheck { rep, json } => {
            let rep = parse(&rep).map_err(|e| e.to_string())?;
            let cert = theta_certificate(&rep);
            if json {
                let mut report = JsonReport::new("theta-check", vec![rep.to_string()]);
                if cert.sigma_pole_at_half.opaque_degraded {
                    report.flags.push("opaque-degraded".to_string());
                }
                report.certificate = Some(cert);
                print_json(&report)?;
            } else {
                println!("certified: {}", cert.certified);
                println!(
                    "pole order at 1/2: sigma side {}, dual side {}",
                    cert.sigma_pole_at_half.order, cert.dual_pole_at_half.order
                );
                println!("reason: {}", cert.reason);
                if cert.sigma_pole_at_half.opaque_degraded {
                    println!("note: opaque-degraded (opaque blocks contribute the factor 1)");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Sweep {
            kind,
            grid,
            mutate,
            out,
            json,
            no_timing,
        } => {
            let kind = SweepKind::from_str(&kind)?;
            let fault = mutate.as_deref().map(Fault::from_str).transpose()?;
            let grids = grid.grids()?;
            let mut reports: Vec<SweepReport> =
                grids.iter().map(|g| run_sweep(kind, g, fault)).collect();
            if no_timing {
                reports = reports
                    .into_iter()
                    .map(SweepReport::without_timing)
                    .collect();
            }
            let all_pass = reports.iter().all(SweepReport::passed);

            for r in &reports {
                let timing = match r.wall_ms {
                    Some(ms) => format!(" ({ms} ms)"),
                    None => String::new(),
                };
                println!(
                    "{} {}: {}  cases={} checked={} degraded={} counterexamples={}{}",
                    r.kind,
                    r.grid.field,
                    if r.passed() { "PASS" } else { "FAIL" },
                    r.cases,
                    r.checked,
                    r.degraded_cases,
                    r.counterexamples.len(),
                    timing
                );
                for (i, ce) in r.counterexamples.iter().enumerate() {
                    if i == 10 {
                        println!("  ... and {} more", r.counterexamples.len() - 10);
                        break;
                    }
                    println!(
                        "  counterexample: {} -- {}",
                        ce.inputs.join(" , "),
                        ce.detail
                    );
                }
            }

            let mut envelope = JsonReport::new("sweep", vec![kind.to_string()]);
            if let Some(f) = fault {
                envelope.flags.push(format!("mutated:{f}"));
            }
            envelope.sweeps = Some(reports);
            if json {
                print_json(&envelope)?;
            }
            if let Some(path) = out {
                let body = serde_json::to_string_pretty(&envelope).map_err(|e| e.to_string())?;
                std::fs::write(&path, body + "\n")
                    .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            }
            Ok(if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            })
        }
        Command::Numeric { check } => match check {
            NumericCmd::Duplication {
                samples,
                tolerance,
                json,
            } => {
                let max_err = check_duplication(samples).map_err(|e| e.to_string())?;
                let pass = max_err <= tolerance;
                if json {
                    let mut report = JsonReport::new("numeric", vec!["duplication".to_string()]);
                    report.numeric = Some(NumericReport::Duplication {
                        samples,
                        max_rel_err: fmt_f64(max_err),
                        tolerance: fmt_f64(tolerance),
                        pass,
                    });
                    print_json(&report)?;
                } else {
                    println!(
                        "duplication over {samples} samples: max relative error {} \
                         (tolerance {}): {}",
                        fmt_f64(max_err),
                        fmt_f64(tolerance),
                        if pass { "PASS" } else { "FAIL" }
                    );
                }
                Ok(if pass {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(3)
                })
            }
            NumericCmd::Tate {
                m,
                s,
                tolerance,
                json,
            } => {
                let s_cq = parse_cq(&s).map_err(|e| format!("bad --s value: {e}"))?;
                let s_c: CFloat = s_cq.to_c64();
                let spec = QuadratureSpec::default();
                let quad = tate_integral(m, s_c, &spec).map_err(|e| e.to_string())?;
                let closed = eval_atom(&gjrs::lfactor::Atom::gamma_r(CQ::from_int(m)), s_c, None)
                    .map_err(|e| e.to_string())?;
                let rel_err = (quad - closed).norm() / closed.norm();
                let pass = rel_err <= tolerance;
                if json {
                    let mut report = JsonReport::new("numeric", vec!["tate".to_string()]);
                    report.numeric = Some(NumericReport::Tate {
                        m,
                        s: s_cq.to_string(),
                        quadrature: fmt_c64(quad),
                        closed_form: fmt_c64(closed),
                        rel_err: fmt_f64(rel_err),
                        tolerance: fmt_f64(tolerance),
                        pass,
                    });
                    print_json(&report)?;
                } else {
                    println!(
                        "tate m={m} s={s_cq}: quadrature {} closed form {} relative error {} \
                         (tolerance {}): {}",
                        fmt_c64(quad),
                        fmt_c64(closed),
                        fmt_f64(rel_err),
                        fmt_f64(tolerance),
                        if pass { "PASS" } else { "FAIL" }
                    );
                }
                Ok(if pass {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(3)
                })
            }
        },
    }
}

fn print_json(report: &JsonReport) -> Result<(), String> {
    let body = serde_json::to_string_pretty(report).map_err(|e| e.to_string())?;
    println!("{body}");
    Ok(())
}
