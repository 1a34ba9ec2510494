//! Command-line front end: validation, invariants, certificates, catalog
//! access, moduli checks and SVG rendering for plumbed configurations.

mod svg;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use zariski_core::acceptance;
use zariski_core::catalog;
use zariski_core::combinatorics::{is_stable, Combinatorics};
use zariski_core::configuration::Configuration;
use zariski_core::dual::{build_dpa, classify_c_leq_3, i_invariant_detail, CxClass};
use zariski_core::field::{FieldScalar, FieldSpec};
use zariski_core::io;
use zariski_core::moduli::{zariski_certificate, ModuliParams};
use zariski_core::{depth, verify_relation};

use svg::ChartSpec;

#[derive(Parser)]
#[command(
    name = "zariski",
    about = "Exact invariants of plumbed point configurations and their dual line arrangements",
    version
)]
struct Cli {
    /// Emit the machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the two defining conditions of a configuration file.
    Validate { file: PathBuf },
    /// Chamber weight with all four per-chamber sums.
    Weight { file: PathBuf },
    /// Maximal collinear subsets of the configuration.
    Comb { file: PathBuf },
    /// Automorphism group of the combinatorics.
    Aut { file: PathBuf },
    /// Whether every automorphism maps vertices to vertices.
    Stable { file: PathBuf },
    /// Emit the dual plumbed arrangement.
    Dual { file: PathBuf },
    /// Wiring invariant of the dual arrangement and the weight relation.
    Invariant { file: PathBuf },
    /// Compare two configurations: isomorphism, stability, weights, verdict.
    Pair { file1: PathBuf, file2: PathBuf },
    /// Quasi-projective depth of the dual-arrangement character.
    Depth { file: PathBuf },
    /// Membership and component of the 13-line moduli family.
    Moduli(ModuliArgs),
    /// Covering classification of the dual arrangement.
    Classify { file: PathBuf },
    /// Built-in configuration families.
    #[command(subcommand)]
    Catalog(CatalogCmd),
    /// Render the real picture as SVG.
    Plot(PlotArgs),
    /// Run the full verification suite.
    Selftest,
}

#[derive(Args)]
struct ModuliArgs {
    /// First parameter: "p/q" or "a,b" meaning a + b*sqrt(d).
    #[arg(long, allow_hyphen_values = true)]
    k1: String,
    /// Second parameter, same syntax.
    #[arg(long, allow_hyphen_values = true)]
    k2: String,
    /// Radicand for quadratic parameters.
    #[arg(long)]
    d: Option<u64>,
}

#[derive(Subcommand)]
enum CatalogCmd {
    /// Names, arities, line counts and expected weights.
    List,
    /// Write one configuration as canonical JSON.
    Emit {
        name: String,
        /// Sign parameters, each 1 or -1.
        #[arg(allow_negative_numbers = true)]
        params: Vec<i64>,
        /// Output path (stdout when omitted).
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct PlotArgs {
    file: PathBuf,
    /// Chart line: "vertex-pair:i,j" (default 1,2) or "line-index:k".
    #[arg(long)]
    chart: Option<String>,
    /// Output path for the SVG document.
    #[arg(short, long)]
    out: PathBuf,
    /// Draw the dual arrangement instead of the configuration.
    #[arg(long)]
    dual: bool,
}

/// Exit codes: 0 verdict computed, 1 validation failure, 2 usage error.
fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn load_config(path: &PathBuf) -> Result<Configuration> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    io::configuration_from_json(&text).map_err(|e| match e {
        io::IoError::Json(ref j) => {
            anyhow!(
                "{}: line {}, column {}: {j}",
                path.display(),
                j.line(),
                j.column()
            )
        }
        other => anyhow!("{}: {other}", path.display()),
    })
}

/// Require a valid configuration, reporting violations on exit code 1.
fn load_valid(path: &PathBuf) -> Result<Result<Configuration, String>> {
    let c = load_config(path)?;
    let report = c.validate();
    if report.is_valid() {
        Ok(Ok(c))
    } else {
        Ok(Err(report.to_string()))
    }
}

fn emit(cli: &Cli, human: &str, machine: Value) {
    if cli.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&machine).expect("serializable")
        );
    } else {
        println!("{human}");
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::Validate { file } => {
            let c = load_config(file)?;
            let report = c.validate();
            let violations: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
            let planar = report.is_valid() && c.is_planar();
            let human = if report.is_valid() {
                format!(
                    "valid ({} vertices, {} surrounding points, m = {}); planar: {}; uniform: {}",
                    c.t(),
                    c.n(),
                    c.modulus,
                    planar,
                    c.is_uniform()
                )
            } else {
                let mut s = String::from("INVALID:");
                for v in &violations {
                    s.push_str(&format!("\n  - {v}"));
                }
                s
            };
            emit(
                cli,
                &human,
                json!({
                    "command": "validate",
                    "valid": report.is_valid(),
                    "planar": planar,
                    "uniform": c.is_uniform(),
                    "violations": violations,
                }),
            );
            Ok(if report.is_valid() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Weight { file } => {
            let c = match load_valid(file)? {
                Ok(c) => c,
                Err(report) => return invalid(cli, &report),
            };
            let w = c.chamber_weight().map_err(|e| anyhow!("{e}"))?;
            let human = format!(
                "tau = {} (mod {}); chamber sums: [{}, {}, {}, {}]",
                w.value, w.modulus, w.sums[0], w.sums[1], w.sums[2], w.sums[3]
            );
            emit(
                cli,
                &human,
                json!({
                    "command": "weight",
                    "tau": w.value,
                    "m": w.modulus,
                    "chamber_sums": w.sums,
                }),
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Comb { file } => {
            let c = match load_valid(file)? {
                Ok(c) => c,
                Err(report) => return invalid(cli, &report),
            };
            let k = Combinatorics::of_configuration(&c).map_err(|e| anyhow!("{e}"))?;
            let mut human = format!("{} maximal sets over {} points:", k.sets.len(), k.size);
            for s in &k.sets {
                let names: Vec<&str> = s.iter().map(|&i| k.labels[i].as_str()).collect();
                human.push_str(&format!("\n  {{{}}}", names.join(", ")));
            }
            emit(
                cli,
                &human,
                json!({
                    "command": "comb",
                    "labels": k.labels,
                    "sets": k.sets,
                }),
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Aut { file } => {
            let c = match load_valid(file)? {
                Ok(c) => c,
                Err(report) => return invalid(cli, &report),
            };
            let k = Combinatorics::of_configuration(&c).map_err(|e| anyhow!("{e}"))?;
            let aut = k.automorphisms();
            let mut human = format!("automorphism group of order {}:", aut.len());
            for perm in &aut {
                let images: Vec<&str> = perm.iter().map(|&i| k.labels[i].as_str()).collect();
                human.push_str(&format!("\n  ({})", images.join(" ")));
            }
            emit(
                cli,
                &human,
                json!({
                    "command": "aut",
                    "order": aut.len(),
                    "automorphisms": aut,
                }),
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Stable { file } => {
            let c = match load_valid(file)? {
                Ok(c) => c,
                Err(report) => return invalid(cli, &report),
            };
            let stable = is_stable(&c).map_err(|e| anyhow!("{e}"))?;
            emit(
                cli,
                &format!("stable: {stable}"),
                json!({
                    "command": "stable",
                    "stable": stable,
                }),
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Dual { file } => {
            let c = match load_valid(file)? {
                Ok(c) => c,
                Err(report) => return invalid(cli, &report),
            };
            let a = build_dpa(&c).map_err(|e| anyhow!("{e}"))?;
            let text = io::arrangement_to_json(&a);
            println!("{text}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Invariant { file } => {
            let c = match load_valid(file)? {
                Ok(c) => c,
                Err(report) => return invalid(cli, &report),
            };
            let a = build_dpa(&c).map_err(|e| anyhow!("{e}"))?;
            let detail = i_invariant_detail(&a, 0).map_err(|e| anyhow!("{e}"))?;
            let rel = verify_relation(&c).map_err(|e| anyhow!("{e}"))?;
            let human = format!(
                "invariant exponent = {} (mod {}); tau = {}; relation holds: {}\nD1 = {:?}  D2 = {:?}  D3 = {:?}",
                detail.exponent, c.modulus, rel.tau, rel.holds,
                detail.wiring.d1, detail.wiring.d2, detail.wiring.d3
            );
            emit(
                cli,
                &human,
                json!({
                    "command": "invariant",
                    "exponent": detail.exponent,
                    "m": c.modulus,
                    "tau": rel.tau,
                    "relation_holds": rel.holds,
                    "d1": detail.wiring.d1,
                    "d2": detail.wiring.d2,
                    "d3": detail.wiring.d3,
                }),
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Pair { file1, file2 } => {
            let c1 = match load_valid(file1)? {
                Ok(c) => c,
                Err(report) => return invalid(cli, &report),
            };
            let c2 = match load_valid(file2)? {
                Ok(c) => c,
                Err(report) => return invalid(cli, &report),
            };
            let cert = zariski_certificate(&c1, &c2).map_err(|e| anyhow!("{e}"))?;
            let iso_text = match &cert.isomorphism {
                Some(p) => format!("{p:?}"),
                None => "none".into(),
            };
            let human = format!(
                "verdict: {}\n  isomorphism: {}\n  stable: {:?}\n  uniform: {:?}\n  tau: {} (mod {}) vs {} (mod {})",
                cert.verdict, iso_text, cert.stable, cert.uniform,
                cert.tau[0], cert.modulus[0], cert.tau[1], cert.modulus[1]
            );
            emit(
                cli,
                &human,
                json!({
                    "command": "pair",
                    "isomorphism": cert.isomorphism,
                    "stability": cert.stable,
                    "uniformity": cert.uniform,
                    "tau1": cert.tau[0],
                    "tau2": cert.tau[1],
                    "m1": cert.modulus[0],
                    "m2": cert.modulus[1],
                    "verdict": cert.verdict.to_string(),
                }),
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Depth { file } => {
            let c = match load_valid(file)? {
                Ok(c) => c,
                Err(report) => return invalid(cli, &report),
            };
            let r = depth(&c).map_err(|e| anyhow!("{e}"))?;
            let human = format!(
                "depth = {} (rank {}); l = {:?}, tau = {}, j = {}, matrix = {:?}",
                r.depth, r.rank, r.l, r.tau, r.j, r.matrix
            );
            let machine = serde_json::to_value(&r).expect("serializable");
            emit(
                cli,
                &human,
                json!({ "command": "depth", "report": machine }),
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Moduli(args) => {
            let spec = match args.d {
                None => FieldSpec::Rational,
                Some(d) => FieldSpec::quadratic(d).map_err(|e| anyhow!("{e}"))?,
            };
            let k1 = parse_scalar(&args.k1, spec)?;
            let k2 = parse_scalar(&args.k2, spec)?;
            let p = ModuliParams::new(k1, k2);
            let verdict = p.membership();
            let mut human = if verdict.accepted {
                format!("accepted; component {}", verdict.component.unwrap())
            } else {
                let mut s = String::from("rejected:");
                for v in &verdict.violations {
                    s.push_str(&format!("\n  - {}: {}", v.name, v.condition));
                }
                s
            };
            let characterizations = if verdict.accepted {
                let (a, b, c) = p.characterizations().map_err(|e| anyhow!("{e}"))?;
                human.push_str(&format!(
                    "\ncharacterizations: tangent conic {a}, six triple points on a conic {b}, three points aligned {c}"
                ));
                Some((a, b, c))
            } else {
                None
            };
            emit(
                cli,
                &human,
                json!({
                    "command": "moduli",
                    "accepted": verdict.accepted,
                    "component": verdict.component.map(|c| c.to_string()),
                    "violations": verdict.violations.iter().map(|v| json!({
                        "name": v.name, "condition": v.condition,
                    })).collect::<Vec<_>>(),
                    "characterizations": characterizations.map(|(a, b, c)| json!({
                        "tangent_conic": a,
                        "six_triple_points_conic": b,
                        "three_points_aligned": c,
                    })),
                }),
            );
            Ok(if verdict.accepted {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Classify { file } => {
            let c = match load_valid(file)? {
                Ok(c) => c,
                Err(report) => return invalid(cli, &report),
            };
            let a = build_dpa(&c).map_err(|e| anyhow!("{e}"))?;
            let r = classify_c_leq_3(&a.lines).map_err(|e| anyhow!("{e}"))?;
            let class = match r.class {
                CxClass::NotCLeq3 => "NotCLeq3",
                CxClass::CLeq3SimpleType => "CLeq3SimpleType",
                CxClass::CLeq3NonSimple => "CLeq3NonSimple",
            };
            let human = format!(
                "class: {class}; {} points of multiplicity >= 3; cover: {:?} carrying {:?}",
                r.multiple_points, r.cover, r.cover_counts
            );
            emit(
                cli,
                &human,
                json!({
                    "command": "classify",
                    "class": class,
                    "multiple_points": r.multiple_points,
                    "cover": r.cover,
                    "cover_counts": r.cover_counts,
                }),
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Catalog(CatalogCmd::List) => {
            let entries = catalog::entries();
            let mut human = String::from("name          arity  dual lines  expected weight");
            for e in &entries {
                human.push_str(&format!(
                    "\n{:<13} {:<6} {:<11} {}  ({})",
                    e.name, e.arity, e.dual_lines, e.tau_rule, e.description
                ));
            }
            emit(
                cli,
                &human,
                json!({
                    "command": "catalog list",
                    "entries": entries.iter().map(|e| json!({
                        "name": e.name,
                        "arity": e.arity,
                        "dual_lines": e.dual_lines,
                        "tau_rule": e.tau_rule,
                        "description": e.description,
                    })).collect::<Vec<_>>(),
                }),
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Catalog(CatalogCmd::Emit { name, params, out }) => {
            let c = catalog::get(name, params).map_err(|e| anyhow!("{e}"))?;
            let text = io::configuration_to_json(&c);
            match out {
                Some(path) => {
                    fs::write(path, &text)
                        .with_context(|| format!("writing {}", path.display()))?;
                    if !cli.json {
                        println!("wrote {}", path.display());
                    }
                }
                None => println!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Plot(args) => {
            let c = match load_valid(&args.file)? {
                Ok(c) => c,
                Err(report) => return invalid(cli, &report),
            };
            let doc = if args.dual {
                let chart = match &args.chart {
                    Some(s) => ChartSpec::parse(s)?,
                    None => ChartSpec::LineIndex(1),
                };
                let a = build_dpa(&c).map_err(|e| anyhow!("{e}"))?;
                svg::render_arrangement(&a, chart)?
            } else {
                let chart = match &args.chart {
                    Some(s) => ChartSpec::parse(s)?,
                    None => ChartSpec::default(),
                };
                svg::render_configuration(&c, chart)?
            };
            fs::write(&args.out, doc).with_context(|| format!("writing {}", args.out.display()))?;
            if !cli.json {
                println!("wrote {}", args.out.display());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Selftest => {
            // criteria are pure and reentrant; run them in parallel
            let outcomes: Vec<(usize, &'static str, Result<String, String>)> =
                std::thread::scope(|scope| {
                    let handles: Vec<_> = acceptance::criteria()
                        .into_iter()
                        .map(|(id, name, f)| scope.spawn(move || (id, name, f())))
                        .collect();
                    handles
                        .into_iter()
                        .map(|h| h.join().expect("criterion thread"))
                        .collect()
                });
            let mut all_passed = true;
            let mut rows = Vec::new();
            for (id, name, r) in outcomes {
                let passed = r.is_ok();
                all_passed &= passed;
                let details = match r {
                    Ok(d) | Err(d) => d,
                };
                if !cli.json {
                    println!(
                        "criterion {id:>2} [{}] {name}: {details}",
                        if passed { "PASS" } else { "FAIL" }
                    );
                }
                rows.push(json!({
                    "id": id,
                    "name": name,
                    "passed": passed,
                    "details": details,
                }));
            }
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "command": "selftest",
                        "passed": all_passed,
                        "criteria": rows,
                    }))
                    .expect("serializable")
                );
            } else {
                println!(
                    "{}",
                    if all_passed {
                        "ALL PASS"
                    } else {
                        "FAILURES PRESENT"
                    }
                );
            }
            Ok(if all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn invalid(cli: &Cli, report: &str) -> Result<ExitCode> {
    emit(
        cli,
        &format!("INVALID: {report}"),
        json!({
            "valid": false,
            "violations": report,
        }),
    );
    Ok(ExitCode::from(1))
}

/// Parse "p/q" or "a,b" (meaning a + b·√d) into the chosen field.
fn parse_scalar(s: &str, spec: FieldSpec) -> Result<FieldScalar> {
    use zariski_core::field::ScalarRepr;
    let repr = match s.split_once(',') {
        None => ScalarRepr::Rational(s.trim().to_string()),
        Some((a, b)) => {
            if spec == FieldSpec::Rational {
                bail!("two-part scalar {s:?} needs --d to pick the field");
            }
            ScalarRepr::Quadratic([a.trim().to_string(), b.trim().to_string()])
        }
    };
    FieldScalar::decode(spec, &repr).map_err(|e| anyhow!("{e}"))
}
