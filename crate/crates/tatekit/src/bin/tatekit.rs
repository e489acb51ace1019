//! Command-line front end: every subcommand parses its inputs, calls the
//! library, and prints a text or JSON report.
//!
//! Exit codes: 0 ok, 1 property violation, 2 usage error.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::path::Path;
use std::process::ExitCode;
use tatekit::basefield::FieldSpec;
use tatekit::geometry::{self, CuspModel, OpenProfile};
use tatekit::jsonio;
use tatekit::lattice::{MonomialLattice, MonomialSubspace};
use tatekit::liftings::{self, LiftingSpec, QMap};
use tatekit::operator::OperatorExpr;
use tatekit::plot;
use tatekit::series::TruncatedSeries;
use tatekit::suite::{self, RunConfig};

#[derive(Parser)]
#[command(name = "tatekit", version, about = "Exact calculus in iterated Laurent series fields")]
struct Cli {
    /// Output format for structured results.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Series arithmetic on JSON inputs.
    Series {
        #[command(subcommand)]
        cmd: SeriesCmd,
    },
    /// Lattice calculus on JSON subspace descriptions.
    Lattice {
        #[command(subcommand)]
        cmd: LatticeCmd,
    },
    /// Operators: evaluation, classification, decomposition, axiom suite.
    Op {
        #[command(subcommand)]
        cmd: OpCmd,
    },
    /// Systems of liftings and the Tate-morphism falsifier.
    Lifting {
        #[command(subcommand)]
        cmd: LiftingCmd,
    },
    /// Adelic staircases for the line and the smooth plane flag.
    Adele {
        #[command(subcommand)]
        cmd: AdeleCmd,
    },
    /// Hensel lifting of the coefficient field of an F_p[x]-completion.
    Hensel {
        #[arg(long)]
        p: u64,
        /// Dense coefficient list "c0,c1,...,1" of a monic irreducible.
        #[arg(long)]
        f: String,
        #[arg(long, default_value_t = 4)]
        prec: u32,
    },
    /// Worked demonstrations.
    Demo {
        #[command(subcommand)]
        cmd: DemoCmd,
    },
    /// Deterministic property suites.
    Suite {
        #[command(subcommand)]
        cmd: SuiteCmd,
    },
}

#[derive(Subcommand)]
enum SeriesCmd {
    Add { a: String, b: String },
    Mul { a: String, b: String },
    Inv {
        a: String,
        /// Per-axis precision cutoffs, comma separated.
        #[arg(long)]
        prec: String,
    },
    Val { a: String },
    Residue { a: String },
    Lift { a: String },
}

#[derive(Subcommand)]
enum LatticeCmd {
    Contains { a: String, b: String },
    Meet { a: String, b: String },
    Join { a: String, b: String },
    Sandwich { a: String },
    Quotient { a: String, b: String },
    Check { a: String },
    Plot {
        a: String,
        #[arg(long, default_value_t = -4, allow_hyphen_values = true)]
        lo: i64,
        #[arg(long, default_value_t = 4, allow_hyphen_values = true)]
        hi: i64,
        /// Emit SVG instead of the ASCII grid.
        #[arg(long)]
        svg: bool,
    },
}

#[derive(Subcommand)]
enum OpCmd {
    Apply { f: String, x: String },
    Classify {
        f: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value = "both")]
        route: String,
        #[arg(long, default_value_t = 8)]
        radius: i64,
    },
    Decompose {
        f: String,
        #[arg(long)]
        axis: usize,
        /// Optional input to verify the pointwise sum identity on.
        #[arg(long)]
        x: Option<String>,
    },
    Suite {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Subcommand)]
enum LiftingCmd {
    Lift {
        a: String,
        #[arg(long, default_value = "standard")]
        mode: String,
        #[arg(long, value_enum, default_value_t = QMap::NegIdentity)]
        q: QMap,
        #[arg(long, default_value_t = 10)]
        radius: i64,
    },
    Falsify {
        #[arg(long, value_enum, default_value_t = QMap::NegIdentity)]
        q: QMap,
        #[arg(long, default_value_t = 10)]
        radius: i64,
    },
}

#[derive(Subcommand)]
enum AdeleCmd {
    Line {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        f: String,
    },
    Plane,
}

#[derive(Subcommand)]
enum DemoCmd {
    /// The cusp lattice gap: semigroup <2,3> and realizability verdicts.
    Cusp,
    /// The open cover with V * V = K.
    Parshin {
        #[arg(long, default_value_t = -3, allow_hyphen_values = true)]
        lo: i64,
        #[arg(long, default_value_t = 3, allow_hyphen_values = true)]
        hi: i64,
    },
    /// The twisted-lifting falsifier with its staircase support plot.
    Yekutieli {
        #[arg(long, default_value_t = 5)]
        radius: i64,
    },
}

#[derive(Subcommand)]
enum SuiteCmd {
    Run {
        /// ring | lattice | cubical | agreement | transfer | liftings | geometry | all
        name: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        radius: Option<i64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
    }
}

fn read_json(arg: &str) -> Result<Value, String> {
    let text = if Path::new(arg).exists() {
        std::fs::read_to_string(arg).map_err(|e| format!("reading {}: {}", arg, e))?
    } else {
        arg.to_string()
    };
    serde_json::from_str(&text).map_err(|e| format!("parsing JSON: {}", e))
}

fn read_series(arg: &str) -> Result<TruncatedSeries, String> {
    jsonio::series_from_json(&read_json(arg)?).map_err(|e| e.to_string())
}

fn read_subspace(arg: &str) -> Result<MonomialSubspace, String> {
    serde_json::from_value(read_json(arg)?).map_err(|e| e.to_string())
}

fn read_lattice(arg: &str) -> Result<MonomialLattice, String> {
    MonomialLattice::new(read_subspace(arg)?).map_err(|e| e.to_string())
}

fn read_operator(arg: &str) -> Result<OperatorExpr, String> {
    jsonio::operator_from_json(&read_json(arg)?).map_err(|e| e.to_string())
}

fn parse_i64_list(text: &str) -> Result<Vec<i64>, String> {
    text.split(',')
        .map(|s| s.trim().parse::<i64>().map_err(|e| e.to_string()))
        .collect()
}

fn parse_u64_list(text: &str) -> Result<Vec<u64>, String> {
    text.split(',')
        .map(|s| s.trim().parse::<u64>().map_err(|e| e.to_string()))
        .collect()
}

fn emit_series(s: &TruncatedSeries, format: Format) {
    match format {
        Format::Text => println!("{}", s),
        Format::Json => println!("{}", jsonio::series_to_json(s)),
    }
}

fn emit_value(v: &Value, text: String, format: Format) {
    match format {
        Format::Text => println!("{}", text),
        Format::Json => println!("{}", v),
    }
}

fn env_seed() -> Option<u64> {
    std::env::var("TATEKIT_SEED").ok().and_then(|s| s.parse().ok())
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let format = cli.format;
    match cli.cmd {
        Cmd::Series { cmd } => {
            let out = match cmd {
                SeriesCmd::Add { a, b } => read_series(&a)?
                    .add(&read_series(&b)?)
                    .map_err(|e| e.to_string())?,
                SeriesCmd::Mul { a, b } => read_series(&a)?
                    .mul(&read_series(&b)?)
                    .map_err(|e| e.to_string())?,
                SeriesCmd::Inv { a, prec } => {
                    let prec = parse_i64_list(&prec)?;
                    read_series(&a)?.inv(&prec).map_err(|e| e.to_string())?
                }
                SeriesCmd::Val { a } => {
                    let v = read_series(&a)?.lex_valuation().map_err(|e| e.to_string())?;
                    emit_value(&json!({"valuation": v.0}), format!("{}", v), format);
                    return Ok(ExitCode::SUCCESS);
                }
                SeriesCmd::Residue { a } => {
                    read_series(&a)?.residue().map_err(|e| e.to_string())?
                }
                SeriesCmd::Lift { a } => read_series(&a)?.lift_std(),
            };
            emit_series(&out, format);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Lattice { cmd } => match cmd {
            LatticeCmd::Contains { a, b } => {
                let verdict = read_subspace(&a)?
                    .contains(&read_subspace(&b)?)
                    .map_err(|e| e.to_string())?;
                emit_value(&json!({"contains": verdict}), format!("{}", verdict), format);
                Ok(ExitCode::SUCCESS)
            }
            LatticeCmd::Meet { a, b } => {
                let m = read_lattice(&a)?.meet(&read_lattice(&b)?).map_err(|e| e.to_string())?;
                println!("{}", serde_json::to_string(m.subspace()).unwrap());
                Ok(ExitCode::SUCCESS)
            }
            LatticeCmd::Join { a, b } => {
                let j = read_lattice(&a)?.join(&read_lattice(&b)?).map_err(|e| e.to_string())?;
                println!("{}", serde_json::to_string(j.subspace()).unwrap());
                Ok(ExitCode::SUCCESS)
            }
            LatticeCmd::Sandwich { a } => {
                let (m, big) = read_lattice(&a)?.sandwich_standard();
                emit_value(
                    &json!({"m": m, "M": big}),
                    format!("standard({}) <= L <= standard({})", big, m),
                    format,
                );
                Ok(ExitCode::SUCCESS)
            }
            LatticeCmd::Quotient { a, b } => {
                let q = read_lattice(&a)?
                    .quotient(&read_lattice(&b)?)
                    .map_err(|e| e.to_string())?;
                match format {
                    Format::Json => println!("{}", serde_json::to_string(&q).unwrap()),
                    Format::Text => {
                        if q.is_empty() {
                            println!("trivial quotient");
                        }
                        for (j, slice) in &q {
                            println!("slice at outer exponent {}: {:?} / {:?}", j, slice.big, slice.small);
                        }
                    }
                }
                Ok(ExitCode::SUCCESS)
            }
            LatticeCmd::Check { a } => {
                let s = read_subspace(&a)?;
                match s.lattice_defect() {
                    None => {
                        emit_value(&json!({"lattice": true}), "lattice: yes".into(), format);
                        Ok(ExitCode::SUCCESS)
                    }
                    Some(d) => {
                        emit_value(
                            &json!({"lattice": false, "reason": format!("{}", d)}),
                            format!("lattice: no ({})", d),
                            format,
                        );
                        Ok(ExitCode::from(1))
                    }
                }
            }
            LatticeCmd::Plot { a, lo, hi, svg } => {
                let s = read_subspace(&a)?;
                if svg {
                    print!("{}", plot::svg_plot(&s, lo, hi).map_err(|e| e.to_string())?);
                } else {
                    print!("{}", plot::ascii_plot(&s, lo, hi));
                }
                Ok(ExitCode::SUCCESS)
            }
        },
        Cmd::Op { cmd } => match cmd {
            OpCmd::Apply { f, x } => {
                let y = read_operator(&f)?
                    .apply(&read_series(&x)?)
                    .map_err(|e| e.to_string())?;
                emit_series(&y, format);
                Ok(ExitCode::SUCCESS)
            }
            OpCmd::Classify { f, n, route, radius } => {
                let op = read_operator(&f)?;
                let mut out = serde_json::Map::new();
                let mut text = String::new();
                if route == "tate" || route == "both" {
                    let flags = op.classify_tate(n);
                    text.push_str(&format!("tate: {}\n", flags));
                    out.insert("tate".into(), serde_json::to_value(&flags).unwrap());
                }
                if route == "yek" || route == "both" {
                    let flags = op.classify_yekutieli(n, radius);
                    text.push_str(&format!("yekutieli (radius {}): {}\n", radius, flags));
                    out.insert("yekutieli".into(), serde_json::to_value(&flags).unwrap());
                }
                if out.is_empty() {
                    return Err(format!("unknown route '{}'", route));
                }
                emit_value(&Value::Object(out), text.trim_end().into(), format);
                Ok(ExitCode::SUCCESS)
            }
            OpCmd::Decompose { f, axis, x } => {
                let op = read_operator(&f)?;
                let (fp, fm) = op.decompose(axis);
                let mut obj = json!({
                    "plus": jsonio::operator_to_json(&fp),
                    "minus": jsonio::operator_to_json(&fm),
                });
                let mut text = format!(
                    "f = Proj({axis},0).f + CoProj({axis},0).f; plus part in I{axis}+, minus part in I{axis}-"
                );
                if let Some(x) = x {
                    let x = read_series(&x)?;
                    let sum = fp
                        .apply(&x)
                        .and_then(|a| Ok((a, fm.apply(&x)?)))
                        .and_then(|(a, b)| Ok((a.add(&b).map_err(tatekit::operator::OperatorError::Series)?, op.apply(&x)?)))
                        .map_err(|e| e.to_string())?;
                    let identical = sum.0.coeffs() == sum.1.coeffs();
                    obj["sum_identity"] = json!(identical);
                    text.push_str(&format!("; pointwise sum identity: {}", identical));
                    if !identical {
                        emit_value(&obj, text, format);
                        return Ok(ExitCode::from(1));
                    }
                }
                emit_value(&obj, text, format);
                Ok(ExitCode::SUCCESS)
            }
            OpCmd::Suite { n, seed } => {
                let cfg = RunConfig {
                    seed: seed.or_else(env_seed).unwrap_or(1),
                    ..RunConfig::default()
                };
                let report = suite::idempotent_suite(n, &cfg);
                match format {
                    Format::Text => print!("{}", report.render_text()),
                    Format::Json => println!("{}", serde_json::to_string(&report).unwrap()),
                }
                Ok(if report.passed() {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                })
            }
        },
        Cmd::Lifting { cmd } => match cmd {
            LiftingCmd::Lift { a, mode, q, radius } => {
                let spec = match mode.as_str() {
                    "standard" => LiftingSpec::Standard,
                    "twisted" => LiftingSpec::twisted_family_fixing_t1(q, radius),
                    other => return Err(format!("unknown mode '{}'", other)),
                };
                let lifted = spec
                    .lift(&read_series(&a)?)
                    .map_err(|e| e.to_string())?;
                emit_series(&lifted, format);
                Ok(ExitCode::SUCCESS)
            }
            LiftingCmd::Falsify { q, radius } => {
                let verdict = liftings::falsify_with_q(q, &FieldSpec::Rationals, radius)
                    .map_err(|e| e.to_string())?;
                let text = match &verdict {
                    liftings::FalsifyVerdict::MorphismPlausible { containing_lattice } => format!(
                        "MORPHISM_PLAUSIBLE: every tested image fits in the t1^-{} lattice",
                        containing_lattice
                    ),
                    liftings::FalsifyVerdict::NotATateMorphism { witnesses } => {
                        let mut t = String::from("NOT_A_TATE_MORPHISM:\n");
                        for w in witnesses {
                            t.push_str(&format!(
                                "  candidate m={}: generator b_{} maps to exponent ({}, {})\n",
                                w.candidate_m,
                                w.generator_index,
                                w.escaping_exponent.0,
                                w.escaping_exponent.1
                            ));
                        }
                        t.trim_end().into()
                    }
                };
                emit_value(&serde_json::to_value(&verdict).unwrap(), text, format);
                Ok(ExitCode::SUCCESS)
            }
        },
        Cmd::Adele { cmd } => match cmd {
            AdeleCmd::Line { p, f } => {
                let f = parse_u64_list(&f)?;
                let line = geometry::adele_line(p, &f).map_err(|e| e.to_string())?;
                emit_value(
                    &serde_json::to_value(&line).unwrap(),
                    format!("{}", line),
                    format,
                );
                Ok(ExitCode::SUCCESS)
            }
            AdeleCmd::Plane => {
                let plane = geometry::adele_plane_smooth(FieldSpec::Rationals);
                let mut text = String::from("staircase of ((0) > (y) > (x,y)) on A^2:\n");
                for (i, s) in plane.steps.iter().enumerate() {
                    text.push_str(&format!(
                        "  step {}: {}  >=  {}  ->>  {}\n",
                        i + 1,
                        s.field,
                        s.integers,
                        s.residue
                    ));
                }
                emit_value(&serde_json::to_value(&plane).unwrap(), text.trim_end().into(), format);
                Ok(ExitCode::SUCCESS)
            }
        },
        Cmd::Hensel { p, f, prec } => {
            let f = parse_u64_list(&f)?;
            let model = geometry::hensel_coefficient_field(p, &f, prec).map_err(|e| e.to_string())?;
            match format {
                Format::Json => println!("{}", serde_json::to_string(&model).unwrap()),
                Format::Text => {
                    println!(
                        "coefficient field of the completion of F_{}[x] at (f), precision pi^{}:",
                        p, prec
                    );
                    let series = model.embedding_series().map_err(|e| e.to_string())?;
                    println!("  a = {}   (series in pi over kappa)", series.pretty(&["pi"]));
                    println!("  newton error valuations: {:?}", model.error_valuations);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Demo { cmd } => match cmd {
            DemoCmd::Cusp => {
                let cusp = CuspModel::default();
                let gaps = cusp.gaps();
                let verdicts: Vec<(i64, geometry::CuspVerdict)> = (0..=4)
                    .map(|v| (v, cusp.realizability_of_valuation(v)))
                    .collect();
                match format {
                    Format::Json => println!(
                        "{}",
                        json!({
                            "semigroup": [2, 3],
                            "gaps": gaps,
                            "verdicts": verdicts
                                .iter()
                                .map(|(v, w)| json!({"v": v, "verdict": serde_json::to_value(w).unwrap()}))
                                .collect::<Vec<_>>(),
                        })
                    ),
                    Format::Text => {
                        println!("cusp s^2 = t^3, normalization t -> u^2, s -> u^3");
                        println!("value semigroup <2,3>, gaps {:?}", gaps);
                        for (v, w) in &verdicts {
                            println!("  u^{} k[[u]]: {:?}", v, w);
                        }
                        println!("the gap at u^1 is the lattice with no Beilinson origin");
                    }
                }
                Ok(ExitCode::SUCCESS)
            }
            DemoCmd::Parshin { lo, hi } => {
                let profile = OpenProfile::thinning();
                let cover = geometry::parshin_cover(&profile, (lo, lo), (hi, hi));
                match format {
                    Format::Json => println!("{}", serde_json::to_string(&cover).unwrap()),
                    Format::Text => {
                        println!("open V with thinning profile (FULL for a2 >= 0):");
                        print!("{}", plot::ascii_plot(&profile, lo.min(-4), hi.max(4)));
                        println!("factorizations V * V covering the box:");
                        for f in &cover {
                            println!(
                                "  t1^{} t2^{} = (t1^{} t2^{}) * (t1^{} t2^{})",
                                f.monomial.0,
                                f.monomial.1,
                                f.factor_in_full.0,
                                f.factor_in_full.1,
                                f.factor_compensating.0,
                                f.factor_compensating.1
                            );
                        }
                    }
                }
                Ok(ExitCode::SUCCESS)
            }
            DemoCmd::Yekutieli { radius } => {
                let verdict = liftings::falsify_with_q(QMap::NegIdentity, &FieldSpec::Rationals, radius)
                    .map_err(|e| e.to_string())?;
                match format {
                    Format::Json => println!("{}", serde_json::to_string(&verdict).unwrap()),
                    Format::Text => {
                        println!(
                            "twisted lifting b_i -> b_i + t1^(-i) t2 on the family b_i = t1^i:"
                        );
                        match &verdict {
                            liftings::FalsifyVerdict::NotATateMorphism { witnesses } => {
                                println!("NOT_A_TATE_MORPHISM: images escape every candidate lattice");
                                for w in witnesses.iter().take(5) {
                                    println!(
                                        "  m={}: b_{} image contains t1^{} t2^{}",
                                        w.candidate_m,
                                        w.generator_index,
                                        w.escaping_exponent.0,
                                        w.escaping_exponent.1
                                    );
                                }
                                // staircase of the image supports at t2-degree 1
                                let spec = LiftingSpec::twisted_family(QMap::NegIdentity, radius + 1);
                                let mut image_sum: Option<TruncatedSeries> = None;
                                for i in 0..=radius + 1 {
                                    let b = TruncatedSeries::polynomial(
                                        FieldSpec::Rationals,
                                        &[(vec![i], 1)],
                                    );
                                    if let Ok(l) = spec.lift(&b) {
                                        image_sum = Some(match image_sum {
                                            None => l,
                                            Some(prev) => prev.add(&l).unwrap_or(prev),
                                        });
                                    }
                                }
                                if let Some(s) = image_sum {
                                    println!("union of generator images (staircase at t2-row 1):");
                                    print!("{}", plot::ascii_plot(&s, -(radius + 1), radius + 1));
                                }
                            }
                            liftings::FalsifyVerdict::MorphismPlausible { containing_lattice } => {
                                println!("MORPHISM_PLAUSIBLE (m = {})", containing_lattice);
                            }
                        }
                    }
                }
                Ok(ExitCode::SUCCESS)
            }
        },
        Cmd::Suite { cmd } => match cmd {
            SuiteCmd::Run {
                name,
                seed,
                samples,
                radius,
            } => {
                let mut cfg = RunConfig::default();
                cfg.seed = seed.or_else(env_seed).unwrap_or(cfg.seed);
                if let Some(s) = samples {
                    cfg.samples = s;
                }
                if let Some(r) = radius {
                    cfg.radius = r;
                }
                let reports = match suite::run_suite(&name, &cfg) {
                    Ok(r) => r,
                    Err(e) => {
                        eprintln!("error: {}", e);
                        return Ok(ExitCode::from(2));
                    }
                };
                let all_passed = reports.iter().all(|r| r.passed());
                match format {
                    Format::Text => {
                        for r in &reports {
                            print!("{}", r.render_text());
                        }
                    }
                    Format::Json => println!("{}", serde_json::to_string(&reports).unwrap()),
                }
                Ok(if all_passed {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                })
            }
        },
    }
}
