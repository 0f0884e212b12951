use clap::{Parser, Subcommand};
use cubicdisc::detrep::{theta_pencil, verify_pencil, weierstrass_pencil};
use cubicdisc::forms::{weierstrass_form, MatrixPencil, TernaryForm};
use cubicdisc::periods::{normalize_basis, periods_from_invariants};
use cubicdisc::pipeline::{cpx, discriminant_both_ways, selftest, torsion_representation};
use cubicdisc::reduce::{lambda_coeffs, to_weierstrass};
use cubicdisc::theta::{theta1_prime0, theta_constants};
use cubicdisc::tol::Tolerances;
use cubicdisc::{macaulay, C};
use serde_json::{json, Value};
use std::io::Read;

#[derive(Parser)]
#[command(name = "cubicdisc", about = "Discriminants and determinantal representations of plane cubics", version)]
struct Cli {
    /// end-to-end tolerance override
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// pretty-print JSON output
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Discriminant of a cubic from a TernaryForm JSON file (or `-`)
    Disc {
        /// also run the theta route and report the full comparison
        #[arg(long)]
        both: bool,
        input: String,
    },
    /// Reduction to Weierstrass form
    Reduce { input: String },
    /// Period lattice from invariants
    Periods {
        #[arg(long, value_parser = parse_c)]
        g2: C,
        #[arg(long, value_parser = parse_c)]
        g3: C,
    },
    /// Theta constants at a point of the upper half-plane
    Theta {
        #[arg(long, value_parser = parse_c)]
        tau: C,
    },
    /// Determinantal representations
    Detrep {
        #[command(subcommand)]
        kind: DetrepKind,
    },
    /// Seeded property-suite run; exit code 0 iff all suites pass
    Selftest {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
}

#[derive(Subcommand)]
enum DetrepKind {
    /// Pencil (2.2) at a point (t, d) with d^2 = 4t^3 - g2 t - g3
    Weierstrass {
        #[arg(long, value_parser = parse_c)]
        g2: C,
        #[arg(long, value_parser = parse_c)]
        g3: C,
        #[arg(long, value_parser = parse_c)]
        t: C,
        #[arg(long, value_parser = parse_c)]
        d: C,
    },
    /// Theta-constant pencil (2.5) for the lattice of (g2, g3)
    Theta {
        #[arg(long, value_parser = parse_c)]
        g2: C,
        #[arg(long, value_parser = parse_c)]
        g3: C,
    },
    /// 2-torsion-line pencil for a general cubic
    TorsionLine { input: String },
}

fn parse_c(s: &str) -> Result<C, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err("expected re,im".into());
    }
    let re: f64 = parts[0].trim().parse().map_err(|e| format!("{e}"))?;
    let im: f64 = parts[1].trim().parse().map_err(|e| format!("{e}"))?;
    Ok(C::new(re, im))
}

fn read_form(path: &str) -> Result<TernaryForm, String> {
    let text = if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| format!("stdin: {e}"))?;
        buf
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?
    };
    serde_json::from_str(&text).map_err(|e| format!("parse {path}: {e}"))
}

fn pencil_json(p: &MatrixPencil) -> Value {
    let mat = |m: &nalgebra::DMatrix<C>| -> Value {
        Value::Array(m.row_iter().flat_map(|r| r.iter().map(|c| cpx(*c)).collect::<Vec<_>>()).collect())
    };
    json!({ "dim": p.dim, "L": mat(&p.l), "M": mat(&p.m), "N": mat(&p.n) })
}

fn emit(v: &Value, pretty: bool) {
    let s = if pretty {
        serde_json::to_string_pretty(v).unwrap()
    } else {
        serde_json::to_string(v).unwrap()
    };
    println!("{s}");
}

fn run(cli: Cli) -> Result<i32, String> {
    let mut tols = Tolerances::default();
    if let Some(t) = cli.tol {
        tols = tols.with_end_to_end(t);
    }
    match cli.command {
        Command::Disc { both, input } => {
            let f = read_form(&input)?;
            if both {
                let r = discriminant_both_ways(&f, &tols).map_err(|e| e.to_string())?;
                emit(&r.to_json(), cli.pretty);
                Ok(if r.relative_gap <= tols.end_to_end { 0 } else { 1 })
            } else {
                let d = macaulay::discriminant(&f).map_err(|e| e.to_string())?;
                emit(&json!({ "delta": cpx(d) }), cli.pretty);
                Ok(0)
            }
        }
        Command::Reduce { input } => {
            let f = read_form(&input)?;
            let rd = to_weierstrass(&f).map_err(|e| e.to_string())?;
            let m: Vec<Value> = (0..3)
                .flat_map(|r| (0..3).map(move |c| (r, c)))
                .map(|(r, c)| cpx(rd.m.entries[(r, c)]))
                .collect();
            let lambda = lambda_coeffs(&rd)
                .map(|l| Value::Array(l.iter().map(|c| cpx(*c)).collect()))
                .unwrap_or(Value::Null);
            emit(
                &json!({
                    "M": m,
                    "g2": cpx(rd.g2),
                    "g3": cpx(rd.g3),
                    "lambda": lambda,
                    "detM": cpx(rd.det_m),
                }),
                cli.pretty,
            );
            Ok(0)
        }
        Command::Periods { g2, g3 } => {
            let ld = periods_from_invariants(g2, g3).map_err(|e| e.to_string())?;
            let ld = normalize_basis(&ld);
            emit(
                &json!({ "omega1": cpx(ld.omega1), "omega2": cpx(ld.omega2), "tau": cpx(ld.tau()) }),
                cli.pretty,
            );
            Ok(0)
        }
        Command::Theta { tau } => {
            let tc = theta_constants(tau).map_err(|e| e.to_string())?;
            let t1p = theta1_prime0(tau).map_err(|e| e.to_string())?;
            emit(
                &json!({ "a": cpx(tc.a), "b": cpx(tc.b), "c": cpx(tc.c), "theta1prime0": cpx(t1p) }),
                cli.pretty,
            );
            Ok(0)
        }
        Command::Detrep { kind } => {
            let (pencil, reference, extra) = match kind {
                DetrepKind::Weierstrass { g2, g3, t, d } => {
                    let p = weierstrass_pencil(g2, g3, t, d).map_err(|e| e.to_string())?;
                    (p, weierstrass_form(g2, g3), Value::Null)
                }
                DetrepKind::Theta { g2, g3 } => {
                    let ld = periods_from_invariants(g2, g3).map_err(|e| e.to_string())?;
                    let ld = normalize_basis(&ld);
                    let p = theta_pencil(&ld).map_err(|e| e.to_string())?;
                    let (h2, h3) =
                        cubicdisc::wp::invariants_from_lattice(&ld).map_err(|e| e.to_string())?;
                    (p, weierstrass_form(h2, h3), Value::Null)
                }
                DetrepKind::TorsionLine { input } => {
                    let f = read_form(&input)?;
                    let (psi, p, data, _, _) =
                        torsion_representation(&f).map_err(|e| e.to_string())?;
                    let extra = json!({
                        "beta": [cpx(data.beta[0]), cpx(data.beta[1]), cpx(data.beta[2])],
                        "alpha": cpx(data.alpha),
                        "gamma": cpx(data.gamma),
                        "lambda_scale": cpx(data.lambda_scale),
                    });
                    (p, psi, extra)
                }
            };
            let (lambda, residual) = verify_pencil(&pencil, &reference).map_err(|e| e.to_string())?;
            let mut out = pencil_json(&pencil);
            out["verification"] = json!({ "lambda": cpx(lambda), "residual": residual });
            if !extra.is_null() {
                out["torsion_line"] = extra;
            }
            emit(&out, cli.pretty);
            Ok(0)
        }
        Command::Selftest { seed, count } => {
            let report = selftest(seed, count);
            emit(&report.to_json(), cli.pretty);
            Ok(if report.all_pass { 0 } else { 1 })
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            std::process::exit(2);
        }
    }
}
