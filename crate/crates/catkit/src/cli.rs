//! The `catkit` command-line surface.
//!
//! Subcommands: `validate`, `gr`, `gamma`, `fiber`, `smash`,
//! `check adjunction`, `enumerate-hom`, `info`. Exit codes: 0 on success,
//! 1 when a law fails (the report goes to standard output, machine
//! readable with `--json`), 2 on usage or parse errors. All outputs are
//! deterministic functions of the inputs.

use crate::adjunction::{check_triangles_gr_delta, check_triangles_gr_gamma, enumerate_hom_bijection};
use crate::base::BaseKind;
use crate::error::Error;
use crate::fibers::{gamma_left, gamma_right, left_comma_fiber, right_comma_fiber, strict_fiber};
use crate::grothendieck::{grothendieck, grothendieck_lax};
use crate::io::{parse, serialize, Entity, SpecDocument};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "catkit",
    about = "construct and law-check finite enriched categories",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Load a document and re-run every law check.
    Validate(FileArgs),
    /// Glue a diagram into a graded category.
    Gr {
        file: PathBuf,
        /// Output document path.
        #[arg(short, long)]
        output: PathBuf,
        /// Glue a lax diagram (right-graded output).
        #[arg(long)]
        lax: bool,
        /// Which diagram entity to glue (default: first).
        #[arg(long)]
        diagram: Option<String>,
    },
    /// Assemble the comma-fiber diagram of a grading.
    Gamma {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Produce the right-fiber (lax) diagram instead.
        #[arg(long)]
        right: bool,
        /// Which grading entity to use (default: first).
        #[arg(long)]
        grading: Option<String>,
    },
    /// Extract a fiber of a grading over one index object.
    Fiber {
        file: PathBuf,
        /// Index object label.
        #[arg(long)]
        at: String,
        #[arg(long, value_enum)]
        kind: FiberKind,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        grading: Option<String>,
    },
    /// Print the comma-fiber component dimensions of a grading.
    Smash {
        file: PathBuf,
        #[arg(long)]
        grading: Option<String>,
    },
    /// Verify adjunction laws.
    Check {
        #[command(subcommand)]
        what: CheckCommand,
    },
    /// Exhaustively compare the two hom-categories of the diagonal
    /// adjunction (finset base).
    EnumerateHom {
        file: PathBuf,
        /// Bound on enumeration work (default: CATKIT_SIZE_CAP or 10000).
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long)]
        diagram: Option<String>,
        /// Target vcategory entity (default: first).
        #[arg(long)]
        target: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Summarize the entities of a document.
    Info { file: PathBuf },
}

#[derive(Args)]
struct FileArgs {
    file: PathBuf,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum CheckCommand {
    /// Triangle identities of an adjunction.
    Adjunction {
        file: PathBuf,
        #[arg(long, value_enum)]
        kind: AdjunctionKind,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum AdjunctionKind {
    GrGamma,
    GrDelta,
}

#[derive(Clone, Copy, ValueEnum)]
enum FiberKind {
    Strict,
    Left,
    Right,
}

struct CheckOutcome {
    entity: String,
    check: String,
    passed: bool,
    report: String,
}

fn print_outcomes(outcomes: &[CheckOutcome], json: bool) -> i32 {
    let all_passed = outcomes.iter().all(|o| o.passed);
    if json {
        let results: Vec<serde_json::Value> = outcomes
            .iter()
            .map(|o| {
                serde_json::json!({
                    "entity": o.entity,
                    "check": o.check,
                    "passed": o.passed,
                    "report": o.report,
                })
            })
            .collect();
        println!(
            "{}",
            serde_json::to_string_pretty(&serde_json::json!({
                "passed": all_passed,
                "results": results,
            }))
            .unwrap()
        );
    } else {
        for o in outcomes {
            let status = if o.passed { "pass" } else { "FAIL" };
            println!("{status}  {} [{}]: {}", o.entity, o.check, o.report);
        }
    }
    if all_passed {
        0
    } else {
        1
    }
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::LawViolation { .. } => 1,
        _ => 2,
    }
}

fn report_err(err: &Error, json: bool) -> i32 {
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&serde_json::json!({
                "passed": false,
                "error": err.to_string(),
            }))
            .unwrap()
        );
    } else if matches!(err, Error::LawViolation { .. }) {
        println!("{err}");
    } else {
        eprintln!("catkit: {err}");
    }
    exit_code_for(err)
}

fn load(path: &PathBuf) -> Result<SpecDocument, Error> {
    let text = std::fs::read_to_string(path)?;
    parse(&text)
}

fn first_oplax<'d>(
    doc: &'d SpecDocument,
    name: Option<&str>,
) -> Result<(&'d str, &'d crate::diagram::OplaxDiagram), Error> {
    for (n, e) in &doc.entities {
        if let Entity::Oplax { diagram, .. } = e {
            if name.is_none() || name == Some(n.as_str()) {
                return Ok((n, diagram));
            }
        }
    }
    Err(Error::UnresolvedReference(
        name.map(|n| format!("oplax diagram `{n}`"))
            .unwrap_or_else(|| "no oplax diagram in the document".into()),
    ))
}

fn first_lax<'d>(
    doc: &'d SpecDocument,
    name: Option<&str>,
) -> Result<(&'d str, &'d crate::diagram::LaxDiagram), Error> {
    for (n, e) in &doc.entities {
        if let Entity::Lax { diagram, .. } = e {
            if name.is_none() || name == Some(n.as_str()) {
                return Ok((n, diagram));
            }
        }
    }
    Err(Error::UnresolvedReference(
        name.map(|n| format!("lax diagram `{n}`"))
            .unwrap_or_else(|| "no lax diagram in the document".into()),
    ))
}

fn first_grading<'d>(
    doc: &'d SpecDocument,
    name: Option<&str>,
) -> Result<(&'d str, &'d str, &'d crate::comodule::GradedVCat), Error> {
    for (n, e) in &doc.entities {
        if let Entity::Grading { index, grading, .. } = e {
            if name.is_none() || name == Some(n.as_str()) {
                return Ok((n, index, grading));
            }
        }
    }
    Err(Error::UnresolvedReference(
        name.map(|n| format!("grading `{n}`"))
            .unwrap_or_else(|| "no grading in the document".into()),
    ))
}

fn first_category<'d>(
    doc: &'d SpecDocument,
    name: Option<&str>,
) -> Result<(&'d str, &'d crate::vcat::VCat), Error> {
    for (n, e) in &doc.entities {
        if let Entity::Category(c) = e {
            if name.is_none() || name == Some(n.as_str()) {
                return Ok((n, c));
            }
        }
    }
    Err(Error::UnresolvedReference(
        name.map(|n| format!("vcategory `{n}`"))
            .unwrap_or_else(|| "no vcategory in the document".into()),
    ))
}

/// Entry point used by the `catkit` binary; returns the process exit code.
pub fn dispatch(args: &[String]) -> i32 {
    let mut argv = vec!["catkit".to_string()];
    argv.extend(args.iter().cloned());
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own help/version output
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err((err, json)) => report_err(&err, json),
    }
}

fn run(cli: Cli) -> Result<i32, (Error, bool)> {
    match cli.command {
        Command::Validate(args) => {
            let doc = load(&args.file).map_err(|e| (e, args.json))?;
            // load already validates everything; report it entity by entity
            let outcomes: Vec<CheckOutcome> = doc
                .entities
                .iter()
                .map(|(n, e)| CheckOutcome {
                    entity: n.clone(),
                    check: entity_kind_name(e).into(),
                    passed: true,
                    report: "validated on load".into(),
                })
                .collect();
            Ok(print_outcomes(&outcomes, args.json))
        }
        Command::Gr {
            file,
            output,
            lax,
            diagram,
        } => {
            let doc = load(&file).map_err(|e| (e, false))?;
            let mut out = SpecDocument::new(doc.base);
            if lax {
                let (name, d) = first_lax(&doc, diagram.as_deref()).map_err(|e| (e, false))?;
                let gr = grothendieck_lax(d).map_err(|e| (e, false))?;
                let index_name = format!("{name}_index");
                out.push(index_name.clone(), Entity::Index(gr.graded.index.clone()));
                push_grading(&mut out, name, &index_name, gr.graded);
            } else {
                let (name, d) = first_oplax(&doc, diagram.as_deref()).map_err(|e| (e, false))?;
                let gr = grothendieck(d).map_err(|e| (e, false))?;
                let index_name = format!("{name}_index");
                out.push(index_name.clone(), Entity::Index(gr.graded.index.clone()));
                push_grading(&mut out, name, &index_name, gr.graded);
            }
            std::fs::write(&output, serialize(&out)).map_err(|e| (Error::Io(e), false))?;
            println!("wrote {}", output.display());
            Ok(0)
        }
        Command::Gamma {
            file,
            output,
            right,
            grading,
        } => {
            let doc = load(&file).map_err(|e| (e, false))?;
            let (name, _, g) = first_grading(&doc, grading.as_deref()).map_err(|e| (e, false))?;
            let mut out = SpecDocument::new(doc.base);
            if right {
                let d = gamma_right(g).map_err(|e| (e, false))?;
                let index_name = format!("{name}_index_op");
                out.push(index_name.clone(), Entity::Index(d.index.clone()));
                let on_objects: Vec<String> = d
                    .index
                    .objects
                    .iter()
                    .map(|o| format!("{name}_gamma_{o}"))
                    .collect();
                for (i, cname) in on_objects.iter().enumerate() {
                    out.push(cname.clone(), Entity::Category(d.on_obj[i].clone()));
                }
                out.push(
                    format!("{name}_gamma"),
                    Entity::Lax {
                        index: index_name,
                        on_objects,
                        diagram: d,
                    },
                );
            } else {
                let d = gamma_left(g).map_err(|e| (e, false))?;
                let index_name = format!("{name}_index");
                out.push(index_name.clone(), Entity::Index(d.index.clone()));
                let on_objects: Vec<String> = d
                    .index
                    .objects
                    .iter()
                    .map(|o| format!("{name}_gamma_{o}"))
                    .collect();
                for (i, cname) in on_objects.iter().enumerate() {
                    out.push(cname.clone(), Entity::Category(d.on_obj[i].clone()));
                }
                out.push(
                    format!("{name}_gamma"),
                    Entity::Oplax {
                        index: index_name,
                        on_objects,
                        diagram: d,
                    },
                );
            }
            std::fs::write(&output, serialize(&out)).map_err(|e| (Error::Io(e), false))?;
            println!("wrote {}", output.display());
            Ok(0)
        }
        Command::Fiber {
            file,
            at,
            kind,
            output,
            grading,
        } => {
            let doc = load(&file).map_err(|e| (e, false))?;
            let (name, _, g) = first_grading(&doc, grading.as_deref()).map_err(|e| (e, false))?;
            let i = g
                .index
                .object_index(&at)
                .ok_or_else(|| (Error::UnresolvedReference(format!("index object `{at}`")), false))?;
            let (fiber_cat, kind_name) = match kind {
                FiberKind::Strict => (strict_fiber(g, i).map_err(|e| (e, false))?.cat, "strict"),
                FiberKind::Left => (left_comma_fiber(g, i).map_err(|e| (e, false))?.cat, "left"),
                FiberKind::Right => (right_comma_fiber(g, i).map_err(|e| (e, false))?.cat, "right"),
            };
            println!(
                "{kind_name} fiber of {name} at {at}: {} objects",
                fiber_cat.n_objects()
            );
            for x in 0..fiber_cat.n_objects() {
                for y in 0..fiber_cat.n_objects() {
                    println!(
                        "  hom({}, {}): size {}",
                        fiber_cat.objects[x],
                        fiber_cat.objects[y],
                        fiber_cat.hom(x, y).size()
                    );
                }
            }
            if let Some(path) = output {
                let mut out = SpecDocument::new(doc.base);
                out.push(
                    format!("{name}_fiber_{at}_{kind_name}"),
                    Entity::Category(fiber_cat),
                );
                std::fs::write(&path, serialize(&out)).map_err(|e| (Error::Io(e), false))?;
                println!("wrote {}", path.display());
            }
            Ok(0)
        }
        Command::Smash { file, grading } => {
            let doc = load(&file).map_err(|e| (e, false))?;
            let (name, _, g) = first_grading(&doc, grading.as_deref()).map_err(|e| (e, false))?;
            for i in 0..g.index.n_objects() {
                let fiber = left_comma_fiber(g, i).map_err(|e| (e, false))?;
                println!(
                    "smash components of {name} over {}:",
                    g.index.objects[i]
                );
                for a in 0..fiber.cat.n_objects() {
                    for b in 0..fiber.cat.n_objects() {
                        println!(
                            "  {} -> {}: dim {}",
                            fiber.cat.objects[a],
                            fiber.cat.objects[b],
                            fiber.cat.hom(a, b).size()
                        );
                    }
                }
            }
            Ok(0)
        }
        Command::Check { what } => match what {
            CheckCommand::Adjunction { file, kind, json } => {
                let doc = load(&file).map_err(|e| (e, json))?;
                let mut outcomes = Vec::new();
                match kind {
                    AdjunctionKind::GrGamma => {
                        for (n, e) in &doc.entities {
                            match e {
                                Entity::Oplax { diagram, .. } => {
                                    let g = grothendieck(diagram).map_err(|e| (e, json))?.graded;
                                    let report = check_triangles_gr_gamma(diagram, &g)
                                        .map_err(|e| (e, json))?;
                                    outcomes.push(CheckOutcome {
                                        entity: n.clone(),
                                        check: "gr-gamma triangles".into(),
                                        passed: report.passed(),
                                        report: report.to_string(),
                                    });
                                }
                                Entity::Grading { grading, .. } => {
                                    let x = gamma_left(grading).map_err(|e| (e, json))?;
                                    let report = check_triangles_gr_gamma(&x, grading)
                                        .map_err(|e| (e, json))?;
                                    outcomes.push(CheckOutcome {
                                        entity: n.clone(),
                                        check: "gr-gamma triangles".into(),
                                        passed: report.passed(),
                                        report: report.to_string(),
                                    });
                                }
                                _ => {}
                            }
                        }
                    }
                    AdjunctionKind::GrDelta => {
                        for (n, e) in &doc.entities {
                            if let Entity::Oplax { diagram, .. } = e {
                                let a = match first_category(&doc, None) {
                                    Ok((_, a)) => a.clone(),
                                    Err(_) => grothendieck(diagram)
                                        .map_err(|e| (e, json))?
                                        .graded
                                        .cat,
                                };
                                let report =
                                    check_triangles_gr_delta(diagram, &a).map_err(|e| (e, json))?;
                                outcomes.push(CheckOutcome {
                                    entity: n.clone(),
                                    check: "gr-delta triangles".into(),
                                    passed: report.passed(),
                                    report: report.to_string(),
                                });
                            }
                        }
                    }
                }
                if outcomes.is_empty() {
                    return Err((
                        Error::UnresolvedReference(
                            "no entity in the document supports this check".into(),
                        ),
                        json,
                    ));
                }
                Ok(print_outcomes(&outcomes, json))
            }
        },
        Command::EnumerateHom {
            file,
            cap,
            diagram,
            target,
            json,
        } => {
            let doc = load(&file).map_err(|e| (e, json))?;
            if doc.base != BaseKind::FinSet {
                return Err((
                    Error::Unsupported("enumerate-hom needs the finset base".into()),
                    json,
                ));
            }
            let (xname, x) = first_oplax(&doc, diagram.as_deref()).map_err(|e| (e, json))?;
            let (aname, a) = first_category(&doc, target.as_deref()).map_err(|e| (e, json))?;
            let cap = cap.unwrap_or_else(crate::base::default_cap).max(10_000);
            let report = enumerate_hom_bijection(x, a, cap).map_err(|e| (e, json))?;
            let outcome = CheckOutcome {
                entity: format!("{xname} vs {aname}"),
                check: "gr-delta hom bijection".into(),
                passed: report.bijective,
                report: format!(
                    "functors {} / transformations {}; 2-cells {} / {}",
                    report.functor_count,
                    report.transf_count,
                    report.functor_2cells,
                    report.transf_2cells
                ),
            };
            Ok(print_outcomes(&[outcome], json))
        }
        Command::Info { file } => {
            let doc = load(&file).map_err(|e| (e, false))?;
            println!("base: {}", doc.base);
            for (n, e) in &doc.entities {
                println!("{n}: {}", entity_summary(e));
            }
            Ok(0)
        }
    }
}

fn entity_kind_name(e: &Entity) -> &'static str {
    match e {
        Entity::Index(_) => "index_category",
        Entity::Category(_) => "vcategory",
        Entity::Functor { .. } => "vfunctor",
        Entity::NatTrans { .. } => "vnat_trans",
        Entity::Oplax { .. } => "oplax diagram",
        Entity::Lax { .. } => "lax diagram",
        Entity::Grading { .. } => "grading",
        Entity::Cofibered { .. } => "cofibered_structure",
    }
}

fn entity_summary(e: &Entity) -> String {
    match e {
        Entity::Index(i) => format!(
            "index_category ({} objects, {} morphisms)",
            i.n_objects(),
            i.n_morphisms()
        ),
        Entity::Category(c) => format!("vcategory ({} objects)", c.n_objects()),
        Entity::Functor { dom, cod, .. } => format!("vfunctor {dom} -> {cod}"),
        Entity::NatTrans { dom, cod, .. } => format!("vnat_trans {dom} => {cod}"),
        Entity::Oplax { index, diagram, .. } => format!(
            "oplax diagram over {index}{}",
            if diagram.is_strict() { " (strict)" } else { "" }
        ),
        Entity::Lax { index, diagram, .. } => format!(
            "lax diagram over {index}{}",
            if diagram.is_strict() { " (strict)" } else { "" }
        ),
        Entity::Grading {
            category, index, ..
        } => format!("grading of {category} by {index}"),
        Entity::Cofibered { grading, structure } => format!(
            "{} structure on {grading}",
            match structure.kind {
                crate::fibers::StructureKind::Precofibered => "precofibered",
                crate::fibers::StructureKind::Prefibered => "prefibered",
            }
        ),
    }
}

fn push_grading(out: &mut SpecDocument, name: &str, index_name: &str, g: crate::comodule::GradedVCat) {
    let cat_name = format!("{name}_gr");
    out.push(cat_name.clone(), Entity::Category(g.cat.clone()));
    out.push(
        format!("{name}_mu"),
        Entity::Grading {
            category: cat_name,
            index: index_name.to_string(),
            grading: g,
        },
    );
}
