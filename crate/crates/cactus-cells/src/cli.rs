//! Command-line surface: enumeration, statistics, verification suites,
//! presentation export, and distance-algorithm evaluation.
//!
//! Every command produces a run report (echoed command, parameters, results,
//! checks). The process exits 0 when no check failed, 1 on check failures,
//! and 2 on malformed input.

use crate::cells::{
    build_complex, euler_characteristic, identity_zero_cell, two_skeleton, verify_closure_faces,
    CoverKind, OneCellKind, TwoCellKind,
};
use crate::curves::{parse_rational, tau_big, tau_big_a, tau_little, tau_std, theta_tau, MarkedCurve};
use crate::error::{Error, Result};
use crate::groups::{
    derive_presentation, extend_by_flip, presentations_equal, stated_presentation,
    GenSym, PresVariant, Word,
};
use crate::permutahedron::{face_lattice, phi, theta, PermPoint};
use crate::todd_coxeter::{todd_coxeter, TcStatus};
use crate::trees::{enumerate_a_stable, Tree, Variant};
use crate::verify::{self, Check, CheckStatus, VerifyOptions};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "cactus-cells", version, about = "Cell structures of real weighted moduli spaces and their cactus groups")]
struct Cli {
    /// Emit the full run report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0xCAC705)]
    seed: u64,
    /// Allow enumerations beyond n = 9.
    #[arg(long, global = true)]
    force: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumeration, compression and validation of a-stable trees.
    Trees {
        #[command(subcommand)]
        command: TreesCommand,
    },
    /// Tree computations on marked curves.
    Curve {
        #[command(subcommand)]
        command: CurveCommand,
    },
    /// Cell complexes: statistics, face counts and the labeled 2-skeleton.
    Cells {
        #[command(subcommand)]
        command: CellsCommand,
    },
    /// Permutahedron faces and the homeomorphism with the top cell.
    Perm {
        #[command(subcommand)]
        command: PermCommand,
    },
    /// Cactus group presentations, orders and soundness checks.
    Group {
        #[command(subcommand)]
        command: GroupCommand,
    },
    /// Run the full acceptance suite.
    VerifyAll {
        /// Largest n for the exhaustive checks.
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        #[arg(long)]
        max_cosets: Option<usize>,
        /// Test hook: corrupt one relator to exercise failure reporting.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

#[derive(Subcommand)]
enum TreesCommand {
    /// List all canonical a-stable trees for (n, a).
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        a: usize,
        #[arg(long, value_enum, default_value_t = CoverArg::Base)]
        cover: CoverArg,
        #[arg(long)]
        max_dim: Option<usize>,
    },
    /// Apply the compression map (or the relative one with --b).
    Compress {
        #[arg(long)]
        tree: String,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: Option<usize>,
    },
    /// Check the two a-stability conditions.
    Validate {
        #[arg(long)]
        tree: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        a: usize,
    },
}

#[derive(Subcommand)]
enum CurveCommand {
    /// Compute a tree of a curve given as JSON.
    Tree {
        #[arg(long)]
        curve: String,
        #[arg(long)]
        a: Option<usize>,
        #[arg(long, value_enum, default_value_t = WhichTree::Big)]
        which: WhichTree,
        /// Also print the edge coordinates of the refined cell.
        #[arg(long)]
        theta: bool,
    },
}

#[derive(Subcommand)]
enum CellsCommand {
    /// f-vector, Euler characteristic and cells by dimension.
    Stats {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        a: usize,
        #[arg(long, value_enum, default_value_t = CoverArg::Base)]
        cover: CoverArg,
        #[arg(long)]
        max_dim: Option<usize>,
    },
    /// Compare closure face counts with the polytope model.
    Faces {
        #[arg(long)]
        tree: String,
        #[arg(long)]
        a: usize,
    },
    /// Classified 1- and 2-cells at the base point of the double cover.
    Skeleton {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        a: usize,
    },
}

#[derive(Subcommand)]
enum PermCommand {
    /// Map a permutahedron point to its curve.
    Phi {
        #[arg(long)]
        n: usize,
        /// Comma-separated exact rationals, e.g. "3/2,3/2,3".
        #[arg(long)]
        point: String,
    },
    /// Map a curve in the closed top cell back to the permutahedron.
    Theta {
        #[arg(long)]
        curve: String,
    },
    /// Face lattice of the permutahedron.
    Faces {
        #[arg(long)]
        m: usize,
    },
}

#[derive(Subcommand)]
enum GroupCommand {
    /// Print a presentation of the weighted cactus group.
    Present {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        a: usize,
        #[arg(long, value_enum, default_value_t = VariantArg::Full)]
        variant: VariantArg,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Group order by coset enumeration over the trivial subgroup.
    Order {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        max_cosets: Option<usize>,
    },
    /// Soundness checks for one (n, a): relators, quotient images,
    /// generalized braid words, derived-vs-stated comparison.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        max_cosets: Option<usize>,
    },
    /// Index of a named subgroup by coset enumeration.
    Index {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        a: usize,
        /// Currently supported: "sigma", the adjacent generators.
        #[arg(long)]
        subgroup: String,
        #[arg(long)]
        max_cosets: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CoverArg {
    Base,
    Double,
}

impl From<CoverArg> for CoverKind {
    fn from(v: CoverArg) -> CoverKind {
        match v {
            CoverArg::Base => CoverKind::Base,
            CoverArg::Double => CoverKind::Double,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum WhichTree {
    Little,
    Big,
    BigA,
    Std,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Full,
    Oriented,
}

impl From<VariantArg> for PresVariant {
    fn from(v: VariantArg) -> PresVariant {
        match v {
            VariantArg::Full => PresVariant::Full,
            VariantArg::Oriented => PresVariant::Oriented,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Gap,
    Json,
}

#[derive(Serialize)]
struct RunReport {
    command: String,
    params: Value,
    results: Value,
    checks: Vec<Check>,
}

fn max_cosets_default(cli_value: Option<usize>) -> usize {
    cli_value
        .or_else(|| {
            std::env::var("CACTUS_CELLS_MAX_COSETS")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(1_000_000)
}

fn guard_size(n: usize, force: bool) -> Result<()> {
    if n > 9 && !force {
        return Err(Error::Domain(format!(
            "full enumeration at n={n} is factorial; pass --force to proceed"
        )));
    }
    Ok(())
}

/// Entry point; returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    let command_echo: Vec<String> = std::env::args().collect();
    match dispatch(&cli) {
        Ok((params, results, checks)) => {
            let failed = checks.iter().any(|c| !c.passed());
            let report = RunReport {
                command: command_echo.join(" "),
                params,
                results,
                checks,
            };
            if cli.json {
                println!("{}", serde_json::to_string(&report).expect("serializable"));
            } else {
                print_human(&report);
            }
            if failed {
                1
            } else {
                0
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn print_human(report: &RunReport) {
    match &report.results {
        Value::String(s) => println!("{s}"),
        other => println!("{}", serde_json::to_string_pretty(other).expect("serializable")),
    }
    for check in &report.checks {
        let status = match check.status {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Inconclusive => "inconclusive",
        };
        println!("[{status}] {}: {}", check.name, check.details);
    }
}

type CommandOutput = (Value, Value, Vec<Check>);

fn dispatch(cli: &Cli) -> Result<CommandOutput> {
    match &cli.command {
        Command::Trees { command } => trees_command(command, cli),
        Command::Curve { command } => curve_command(command),
        Command::Cells { command } => cells_command(command, cli),
        Command::Perm { command } => perm_command(command),
        Command::Group { command } => group_command(command),
        Command::VerifyAll {
            n_max,
            max_cosets,
            inject_fault,
        } => {
            guard_size(*n_max, cli.force)?;
            let opts = VerifyOptions {
                n_max: *n_max,
                seed: cli.seed,
                max_cosets: max_cosets_default(*max_cosets),
                inject_fault: *inject_fault,
            };
            let checks = verify::run_all(&opts);
            let summary = json!({
                "passed": checks.iter().filter(|c| c.status == CheckStatus::Pass).count(),
                "failed": checks.iter().filter(|c| c.status == CheckStatus::Fail).count(),
            });
            Ok((json!({"n_max": n_max, "seed": cli.seed}), summary, checks))
        }
    }
}

fn trees_command(cmd: &TreesCommand, cli: &Cli) -> Result<CommandOutput> {
    match cmd {
        TreesCommand::Enumerate { n, a, cover, max_dim } => {
            guard_size(*n, cli.force)?;
            let kind: CoverKind = (*cover).into();
            let trees = enumerate_a_stable(*n, *a, kind.variant(), *max_dim)?;
            let mut by_dim: std::collections::BTreeMap<usize, Vec<String>> = Default::default();
            for t in &trees {
                by_dim.entry(t.dim()).or_default().push(t.serialize());
            }
            let f_vector: Vec<usize> = by_dim.values().map(Vec::len).collect();
            Ok((
                json!({"n": n, "a": a, "max_dim": max_dim}),
                json!({"count": trees.len(), "f_vector": f_vector, "trees_by_dim": by_dim}),
                Vec::new(),
            ))
        }
        TreesCommand::Compress { tree, a, b } => {
            let t = Tree::parse(tree)?;
            let out = match b {
                Some(b) => t.compress_between(*a, *b)?,
                None => t.compress(*a)?,
            };
            Ok((
                json!({"tree": tree, "a": a, "b": b}),
                Value::String(out.serialize()),
                Vec::new(),
            ))
        }
        TreesCommand::Validate { tree, n, a } => {
            let t = Tree::parse(tree)?;
            let report = t.validate_a_stable(*n, *a)?;
            let check = Check {
                name: "a-stable".into(),
                status: if report.pass() {
                    CheckStatus::Pass
                } else {
                    CheckStatus::Fail
                },
                details: format!(
                    "{} oversized parts, {} light subtrees",
                    report.oversized_parts.len(),
                    report.light_subtrees.len()
                ),
            };
            Ok((
                json!({"tree": tree, "n": n, "a": a}),
                json!({
                    "oversized_parts": report.oversized_parts.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                    "light_subtrees": report.light_subtrees,
                }),
                vec![check],
            ))
        }
    }
}

fn curve_command(cmd: &CurveCommand) -> Result<CommandOutput> {
    match cmd {
        CurveCommand::Tree {
            curve,
            a,
            which,
            theta,
        } => {
            let c = MarkedCurve::from_json(curve)?;
            let tree = match which {
                WhichTree::Little => tau_little(&c)?,
                WhichTree::Big => tau_big(&c)?,
                WhichTree::BigA => {
                    let a = a.ok_or_else(|| {
                        Error::Domain("--which big-a requires --a".into())
                    })?;
                    tau_big_a(&c, a)?
                }
                WhichTree::Std => {
                    let a = a.unwrap_or(1);
                    tau_std(&c, a)?
                }
            };
            let mut results = json!({"tree": tree.serialize()});
            if *theta {
                let refined = tau_little(&c)?;
                let ratios = theta_tau(&c, &refined)?;
                let map: std::collections::BTreeMap<String, String> = ratios
                    .into_iter()
                    .map(|(k, v)| (k, v.to_string()))
                    .collect();
                results["theta"] = json!(map);
            }
            Ok((json!({"a": a}), results, Vec::new()))
        }
    }
}

fn cells_command(cmd: &CellsCommand, cli: &Cli) -> Result<CommandOutput> {
    match cmd {
        CellsCommand::Stats { n, a, cover, max_dim } => {
            guard_size(*n, cli.force)?;
            let cx = build_complex(*n, *a, (*cover).into(), *max_dim, false)?;
            let mut cells_by_dim: std::collections::BTreeMap<usize, Vec<String>> =
                Default::default();
            for cell in &cx.cells {
                cells_by_dim
                    .entry(cell.dim)
                    .or_default()
                    .push(cell.tree.serialize());
            }
            let euler = euler_characteristic(&cx).ok();
            Ok((
                json!({"n": n, "a": a, "max_dim": max_dim}),
                json!({"f_vector": cx.f_vector(), "euler": euler, "cells_by_dim": cells_by_dim}),
                Vec::new(),
            ))
        }
        CellsCommand::Faces { tree, a } => {
            let t = Tree::parse_as(tree, Variant::Stable)?.canonicalize();
            let n = t.ground_size();
            let report = verify_closure_faces(&t, n, *a)?;
            let check = Check {
                name: "closure-vs-polytope".into(),
                status: if report.matches {
                    CheckStatus::Pass
                } else {
                    CheckStatus::Fail
                },
                details: format!(
                    "closure {:?} vs polytope {:?}",
                    report.closure, report.expected
                ),
            };
            Ok((
                json!({"tree": tree, "a": a}),
                json!({"closure": report.closure, "expected": report.expected}),
                vec![check],
            ))
        }
        CellsCommand::Skeleton { n, a } => {
            guard_size(*n, cli.force)?;
            let cx = build_complex(*n, *a, CoverKind::Double, Some(2), true)?;
            let bp = identity_zero_cell(*n, CoverKind::Double);
            let sk = two_skeleton(&cx, &bp)?;
            let one_cells: Vec<Value> = sk
                .one_cells
                .iter()
                .map(|c| {
                    let kind = match c.kind {
                        OneCellKind::AdjacentPair { i } => json!({"type": 1, "i": i}),
                        OneCellKind::LongInterval { p, q } => json!({"type": 2, "p": p, "q": q}),
                    };
                    json!({
                        "tree": cx.cells[c.cell].tree.serialize(),
                        "kind": kind,
                        "label": c.label,
                    })
                })
                .collect();
            let two_cells: Vec<Value> = sk
                .two_cells
                .iter()
                .map(|c| {
                    let kind = match &c.kind {
                        TwoCellKind::Hexagon { i } => json!({"shape": "hexagon", "i": i}),
                        TwoCellKind::PairPair { i, j } => {
                            json!({"shape": "square-pair-pair", "i": i, "j": j})
                        }
                        TwoCellKind::IntervalPair { p, q, i, nested } => json!({
                            "shape": "square-interval-pair", "p": p, "q": q, "i": i, "nested": nested
                        }),
                        TwoCellKind::TwoIntervals { first, second, nested } => json!({
                            "shape": "square-two-intervals", "first": first, "second": second, "nested": nested
                        }),
                    };
                    json!({
                        "tree": cx.cells[c.cell].tree.serialize(),
                        "kind": kind,
                        "boundary_word": c.word,
                    })
                })
                .collect();
            Ok((
                json!({"n": n, "a": a}),
                json!({"one_cells": one_cells, "two_cells": two_cells}),
                Vec::new(),
            ))
        }
    }
}

fn perm_command(cmd: &PermCommand) -> Result<CommandOutput> {
    match cmd {
        PermCommand::Phi { n, point } => {
            let coords = point
                .split(',')
                .map(parse_rational)
                .collect::<Result<Vec<_>>>()?;
            if coords.len() + 1 != *n {
                return Err(Error::Domain(format!(
                    "a point of the ({}-1)-permutahedron needs {} coordinates, got {}",
                    n,
                    n - 1,
                    coords.len()
                )));
            }
            let p = PermPoint::from_coords(coords)?;
            let curve = phi(&p)?;
            Ok((
                json!({"n": n, "point": point}),
                serde_json::from_str(&curve.to_json()).expect("valid JSON"),
                Vec::new(),
            ))
        }
        PermCommand::Theta { curve } => {
            let c = MarkedCurve::from_json(curve)?;
            let p = theta(&c)?;
            let coords: Vec<String> = p.coords.iter().map(|v| v.to_string()).collect();
            Ok((json!({}), json!({"point": coords}), Vec::new()))
        }
        PermCommand::Faces { m } => {
            let faces = face_lattice(*m)?;
            let list: Vec<Value> = faces
                .iter()
                .map(|f| {
                    json!({
                        "composition": f.composition.to_string(),
                        "dim": f.dim,
                        "centroid": f.centroid.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let mut counts: std::collections::BTreeMap<usize, usize> = Default::default();
            for f in &faces {
                *counts.entry(f.dim).or_default() += 1;
            }
            Ok((
                json!({"m": m}),
                json!({"face_counts_by_dim": counts, "faces": list}),
                Vec::new(),
            ))
        }
    }
}

fn group_command(cmd: &GroupCommand) -> Result<CommandOutput> {
    match cmd {
        GroupCommand::Present {
            n,
            a,
            variant,
            format,
        } => {
            let p = stated_presentation(*n, *a, (*variant).into())?;
            let rendered = match format {
                FormatArg::Text => p.format_text(),
                FormatArg::Gap => p.format_gap(),
                FormatArg::Json => p.format_json(),
            };
            Ok((
                json!({"n": n, "a": a}),
                Value::String(rendered),
                Vec::new(),
            ))
        }
        GroupCommand::Order { n, a, max_cosets } => {
            let limit = max_cosets_default(*max_cosets);
            let p = stated_presentation(*n, *a, PresVariant::Full)?;
            let table = todd_coxeter(&p, &[], limit)?;
            let (status, order) = match table.status {
                TcStatus::Complete { index } => (CheckStatus::Pass, Some(index)),
                TcStatus::LimitExceeded => (CheckStatus::Inconclusive, None),
            };
            let check = Check {
                name: "order".into(),
                status,
                details: match order {
                    Some(o) => format!("group order {o}"),
                    None => format!("inconclusive at the {limit}-coset limit"),
                },
            };
            Ok((
                json!({"n": n, "a": a, "max_cosets": limit}),
                json!({"order": order}),
                vec![check],
            ))
        }
        GroupCommand::Verify { n, a, max_cosets } => {
            let limit = max_cosets_default(*max_cosets);
            let mut checks = vec![verify::relator_soundness(*n, false)];
            let cx = build_complex(*n, *a, CoverKind::Double, Some(2), true)?;
            let derived = derive_presentation(&cx)?;
            let stated = stated_presentation(*n, *a, PresVariant::Oriented)?;
            let derived_ok = presentations_equal(&derived, &stated);
            let extended_ok = presentations_equal(
                &extend_by_flip(&stated)?,
                &stated_presentation(*n, *a, PresVariant::Full)?,
            );
            checks.push(Check {
                name: "derived-vs-stated".into(),
                status: if derived_ok && extended_ok {
                    CheckStatus::Pass
                } else {
                    CheckStatus::Fail
                },
                details: format!("derived == stated: {derived_ok}; extension == full: {extended_ok}"),
            });
            if *a == n - 1 {
                checks.push(verify::finite_kernel_check(*n, limit));
            }
            Ok((json!({"n": n, "a": a}), json!({}), checks))
        }
        GroupCommand::Index {
            n,
            a,
            subgroup,
            max_cosets,
        } => {
            if subgroup != "sigma" {
                return Err(Error::Domain(format!(
                    "unknown subgroup {subgroup:?}; supported: sigma"
                )));
            }
            let limit = max_cosets_default(*max_cosets);
            let p = stated_presentation(*n, *a, PresVariant::Full)?;
            let gens: Vec<Word> = (1..*n).map(|i| Word(vec![GenSym::sigma(i)])).collect();
            let table = todd_coxeter(&p, &gens, limit)?;
            let index = table.index();
            let check = Check {
                name: "index".into(),
                status: if index.is_some() {
                    CheckStatus::Pass
                } else {
                    CheckStatus::Inconclusive
                },
                details: match index {
                    Some(i) => format!("index {i}"),
                    None => format!("inconclusive at the {limit}-coset limit"),
                },
            };
            Ok((
                json!({"n": n, "a": a, "subgroup": subgroup}),
                json!({"index": index}),
                vec![check],
            ))
        }
    }
}

