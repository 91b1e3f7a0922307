//! Command-line front end: basis listings, expression evaluation,
//! endomorphism operations, duality checks, and the verification suites.
//! Results go to stdout, diagnostics to stderr; domain errors exit 1,
//! usage errors exit 2.

use clap::{Parser, Subcommand, ValueEnum};
use liecat::category::{
    component_decompose, coords, find_separating_point, point_from_coords, poly_map,
    projection_identity_holds, Morphism,
};
use liecat::error::{Error, Result};
use liecat::hall::{default_gen_names, BasisTable};
use liecat::text;
use liecat::verify::{self, SuiteConfig};
use liecat::{Endo, Field, LiePoly};
use serde_json::json;
use std::path::PathBuf;
use std::sync::Arc;

#[derive(Parser)]
#[command(name = "liecat", version, about = "Exact free Lie algebra computations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// List the basis words up to a degree, with bracketings and dimensions
    Basis {
        #[arg(long, default_value = "2")]
        gens: String,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
        #[arg(long, default_value = "q")]
        field: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Evaluate an expression to canonical form
    Eval {
        expr: String,
        /// Generator count or comma-separated names, e.g. `3` or `x,y,z`
        #[arg(long, default_value = "2")]
        gens: String,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
        #[arg(long, default_value = "q")]
        field: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Operate on endomorphisms given as generator maps
    Endo {
        #[command(subcommand)]
        action: EndoAction,
    },
    /// Morphism/point duality checks
    Duality {
        #[command(subcommand)]
        action: DualityAction,
    },
    /// Run verification suites (`all` or one suite by name)
    Verify {
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        cases: Option<usize>,
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long)]
        gens: Option<usize>,
        #[arg(long, default_value = "q")]
        field: String,
        /// Write the full JSON reports here
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Clone, clap::Args)]
struct EndoCommon {
    #[arg(long, default_value = "2")]
    gens: String,
    #[arg(long, default_value_t = 6)]
    max_degree: usize,
    #[arg(long, default_value = "q")]
    field: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand)]
enum EndoAction {
    /// Apply a generator map to an expression
    Apply {
        #[arg(long)]
        map: String,
        #[arg(long)]
        expr: String,
        #[command(flatten)]
        common: EndoCommon,
    },
    /// Compose two maps; the second is applied first
    Compose {
        #[arg(long)]
        map: String,
        #[arg(long)]
        map2: String,
        #[command(flatten)]
        common: EndoCommon,
    },
    /// Conjugate a map by the scalar automorphism x -> a*x
    Conjugate {
        #[arg(long)]
        map: String,
        #[arg(long)]
        a: String,
        #[command(flatten)]
        common: EndoCommon,
    },
}

#[derive(Subcommand)]
enum DualityAction {
    /// Verify the coordinate square and projection decomposition for one
    /// morphism at one point
    Check {
        #[arg(long, default_value_t = 2)]
        src_gens: usize,
        #[arg(long, default_value_t = 2)]
        tgt_gens: usize,
        /// Source-generator assignment over the target algebra
        #[arg(long)]
        map: String,
        /// Target-generator assignment over H = F(x,y)
        #[arg(long)]
        point: String,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
        #[arg(long, default_value = "q")]
        field: String,
    },
    /// Search for a point separating two distinct morphisms
    Separate {
        #[arg(long, default_value_t = 2)]
        src_gens: usize,
        #[arg(long, default_value_t = 2)]
        tgt_gens: usize,
        #[arg(long)]
        map: String,
        #[arg(long)]
        map2: String,
        #[arg(long, default_value_t = 4)]
        budget_degree: usize,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
        #[arg(long, default_value = "q")]
        field: String,
    },
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    }
}

fn parse_field(text: &str) -> Result<Field> {
    if text == "q" {
        return Ok(Field::Rational);
    }
    if let Some(d) = text.strip_prefix("q-sqrt:") {
        let d: i64 = d
            .parse()
            .map_err(|_| Error::ConfigInvalid(format!("bad field parameter `{d}`")))?;
        return Field::quad_ext(d);
    }
    Err(Error::ConfigInvalid(format!("unknown field `{text}`; use `q` or `q-sqrt:<d>`")))
}

/// `--gens` accepts a count or a comma-separated name list.
fn parse_gens(text: &str) -> Result<(usize, Option<Vec<String>>)> {
    if let Ok(n) = text.parse::<usize>() {
        return Ok((n, None));
    }
    let names: Vec<String> = text.split(',').map(|s| s.trim().to_string()).collect();
    if names.iter().any(String::is_empty) {
        return Err(Error::ConfigInvalid(format!("bad generator list `{text}`")));
    }
    Ok((names.len(), Some(names)))
}

fn table_for(gens: &str, max_degree: usize, field: &str) -> Result<Arc<BasisTable>> {
    let field = parse_field(field)?;
    let (n, names) = parse_gens(gens)?;
    BasisTable::generate(n, max_degree, field, names)
}

fn poly_json(p: &LiePoly) -> serde_json::Value {
    let ctx = p.ctx();
    let terms: Vec<_> = p
        .terms()
        .iter()
        .map(|(idx, coeff)| {
            let w = ctx.word(*idx);
            json!({
                "word": w.word.iter().map(|&l| ctx.gen_names()[l as usize].clone()).collect::<Vec<_>>(),
                "degree": w.degree,
                "bracketing": ctx.bracket_text(*idx),
                "coeff": coeff.canonical_text(),
            })
        })
        .collect();
    json!({ "expr": p.canonical_text(), "terms": terms })
}

fn endo_json(e: &Endo) -> serde_json::Value {
    let ctx = e.ctx();
    let map: serde_json::Map<String, serde_json::Value> = ctx
        .gen_names()
        .iter()
        .enumerate()
        .map(|(i, name)| (name.clone(), json!(e.image(i).canonical_text())))
        .collect();
    serde_json::Value::Object(map)
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Basis { gens, max_degree, field, format } => {
            let table = table_for(&gens, max_degree, &field)?;
            match format {
                Format::Text => {
                    for d in 1..=table.cap() {
                        println!("degree {d} (dimension {}):", table.dimension(d));
                        for i in table.degree_range(d) {
                            println!("  {}", table.bracket_text(i));
                        }
                    }
                }
                Format::Json => {
                    let words: Vec<_> = (0..table.words().len())
                        .map(|i| {
                            let w = table.word(i);
                            json!({
                                "word": w.word.iter().map(|&l| table.gen_names()[l as usize].clone()).collect::<Vec<_>>(),
                                "degree": w.degree,
                                "bracketing": table.bracket_text(i),
                            })
                        })
                        .collect();
                    let dims: Vec<_> = (1..=table.cap()).map(|d| table.dimension(d)).collect();
                    let out = json!({
                        "gens": table.gen_names(),
                        "max_degree": table.cap(),
                        "dimensions": dims,
                        "words": words,
                    });
                    println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
                }
            }
            Ok(0)
        }
        Command::Eval { expr, gens, max_degree, field, format } => {
            let table = table_for(&gens, max_degree, &field)?;
            let p = text::parse_poly(&expr, &table)?;
            match format {
                Format::Text => println!("{}", p.canonical_text()),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&poly_json(&p)).expect("serializable")
                ),
            }
            Ok(0)
        }
        Command::Endo { action } => run_endo(action),
        Command::Duality { action } => run_duality(action),
        Command::Verify { suite, seed, cases, max_degree, gens, field, report } => {
            let cfg = SuiteConfig {
                seed,
                cases,
                max_degree,
                n_gens: gens,
                field: parse_field(&field)?,
            };
            let results = if suite == "all" {
                verify::run_all(&cfg)
            } else {
                vec![(suite.clone(), verify::run_suite(&suite, &cfg))]
            };
            let mut all_pass = true;
            let mut reports = Vec::new();
            let mut summary = Vec::new();
            for (name, outcome) in results {
                match outcome {
                    Ok(r) => {
                        println!("{name}: {} ({} / {} cases)", r.verdict, r.passed, r.cases);
                        all_pass &= r.is_pass();
                        summary.push(json!({
                            "suite": name,
                            "verdict": r.verdict,
                            "passed": r.passed,
                            "failed": r.failed,
                        }));
                        reports.push(r);
                    }
                    Err(e) => {
                        eprintln!("{name}: error: {e}");
                        all_pass = false;
                        summary.push(json!({ "suite": name, "verdict": "ERROR", "error": e.to_string() }));
                    }
                }
            }
            let summary = json!({ "suites": summary, "all_pass": all_pass });
            println!("{}", serde_json::to_string(&summary).expect("serializable"));
            if let Some(path) = report {
                let body =
                    serde_json::to_string_pretty(&reports).expect("serializable reports");
                std::fs::write(&path, body).map_err(|e| {
                    Error::ConfigInvalid(format!("cannot write {}: {e}", path.display()))
                })?;
            }
            Ok(if all_pass { 0 } else { 1 })
        }
    }
}

fn run_endo(action: EndoAction) -> Result<i32> {
    match action {
        EndoAction::Apply { map, expr, common } => {
            let table = table_for(&common.gens, common.max_degree, &common.field)?;
            let images = text::parse_endo_map(&map, &table)?;
            let endo = Endo::new(table.clone(), images)?;
            let p = text::parse_poly(&expr, &table)?;
            let out = endo.apply(&p)?;
            emit_poly(&out, common.format);
            Ok(0)
        }
        EndoAction::Compose { map, map2, common } => {
            let table = table_for(&common.gens, common.max_degree, &common.field)?;
            let first = Endo::new(table.clone(), text::parse_endo_map(&map, &table)?)?;
            let second = Endo::new(table.clone(), text::parse_endo_map(&map2, &table)?)?;
            let out = first.compose(&second)?;
            emit_endo(&out, common.format);
            Ok(0)
        }
        EndoAction::Conjugate { map, a, common } => {
            let table = table_for(&common.gens, common.max_degree, &common.field)?;
            let endo = Endo::new(table.clone(), text::parse_endo_map(&map, &table)?)?;
            let a = text::parse_scalar(&a, table.field())?;
            let out = endo.conjugate_by_scalar(&a)?;
            emit_endo(&out, common.format);
            Ok(0)
        }
    }
}

fn emit_poly(p: &LiePoly, format: Format) {
    match format {
        Format::Text => println!("{}", p.canonical_text()),
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(&poly_json(p)).expect("serializable"))
        }
    }
}

fn emit_endo(e: &Endo, format: Format) {
    match format {
        Format::Text => println!("{}", text::format_endo_map(e.images(), e.ctx())),
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(&endo_json(e)).expect("serializable"))
        }
    }
}

fn run_duality(action: DualityAction) -> Result<i32> {
    match action {
        DualityAction::Check { src_gens, tgt_gens, map, point, max_degree, field } => {
            let field = parse_field(&field)?;
            let tgt = BasisTable::generate(tgt_gens, max_degree, field, None)?;
            let src_names = default_gen_names(src_gens);
            let images = text::parse_map(&map, &src_names, &tgt)?;
            let s = Morphism::new(tgt.clone(), images)?;

            // H = F(x,y), wide enough for the composite degrees
            let h_small = BasisTable::generate(2, max_degree, field, None)?;
            let point_images = text::parse_map(&point, tgt.gen_names(), &h_small)?;
            let comp_deg = s.images().iter().map(LiePoly::degree).max().unwrap_or(1).max(1);
            let pt_deg = point_images.iter().map(LiePoly::degree).max().unwrap_or(1).max(1);
            let h = BasisTable::generate(2, comp_deg * pt_deg.max(1), field, None)?;
            let tuple: Vec<LiePoly> = point_images
                .iter()
                .map(|p| p.lift_to(&h))
                .collect::<Result<Vec<_>>>()?;
            let nu = point_from_coords(tuple.clone(), &h)?;

            let square = poly_map(&s, &tuple, &h)? == coords(&s.pullback(&nu)?);
            let parts = component_decompose(&s, 2);
            let decomposition = projection_identity_holds(&s, &parts, &tuple, &h)?;
            let verdict = json!({
                "square": square,
                "decomposition": decomposition,
                "pullback": s
                    .pullback(&nu)?
                    .images()
                    .iter()
                    .map(LiePoly::canonical_text)
                    .collect::<Vec<_>>(),
            });
            println!("{}", serde_json::to_string_pretty(&verdict).expect("serializable"));
            Ok(if square && decomposition { 0 } else { 1 })
        }
        DualityAction::Separate {
            src_gens,
            tgt_gens,
            map,
            map2,
            budget_degree,
            max_degree,
            field,
        } => {
            let field = parse_field(&field)?;
            let tgt = BasisTable::generate(tgt_gens, max_degree, field, None)?;
            let src_names = default_gen_names(src_gens);
            let s1 = Morphism::new(tgt.clone(), text::parse_map(&map, &src_names, &tgt)?)?;
            let s2 = Morphism::new(tgt.clone(), text::parse_map(&map2, &src_names, &tgt)?)?;
            let comp_deg = s1
                .images()
                .iter()
                .chain(s2.images())
                .map(LiePoly::degree)
                .max()
                .unwrap_or(1)
                .max(1);
            let h = BasisTable::generate(2, comp_deg * budget_degree, field, None)?;
            match find_separating_point(&s1, &s2, &h, budget_degree)? {
                Some(w) => {
                    let witness: serde_json::Map<String, serde_json::Value> = tgt
                        .gen_names()
                        .iter()
                        .zip(w.images())
                        .map(|(name, img)| (name.clone(), json!(img.canonical_text())))
                        .collect();
                    let out = json!({ "separated": true, "witness": witness });
                    println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
                    Ok(0)
                }
                None => {
                    let out = json!({ "separated": false, "budget_degree": budget_degree });
                    println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
                    Ok(0)
                }
            }
        }
    }
}
