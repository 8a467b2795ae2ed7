//! Command-line front end: load or generate varieties, run the analyses,
//! emit text or JSON reports. Analysis "fail" verdicts are data (exit 0);
//! only genuine errors exit nonzero.

use std::fs;
use std::io::Read;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use prodiff::catalog;
use prodiff::osculate::{monge_quadrics, quadratic_generation_check};
use prodiff::rat::{parse_rat, Rat};
use prodiff::report::{analyze, random_point, render_json, render_text, AnalysisConfig};
use prodiff::variety::{adapt_at_point, ParamVariety, VarietySpec};

#[derive(Parser)]
#[command(name = "prodiff", version, about = "Exact projective differential invariants: osculating hypersurfaces, Monge systems, complete-intersection tests")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List or dump the built-in variety catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Full analysis: chart, fundamental forms, osculation table, syzygies,
    /// Monge verdict, CI verdict, thresholds.
    Analyze(AnalyzeArgs),
    /// Run only the Monge-for-quadrics pipeline.
    Monge(AnalyzeArgs),
    /// Run only the complete-intersection criterion.
    Ci(AnalyzeArgs),
    /// Build the graph variety of a quadric system and analyze it.
    FromQuadrics(FromQuadricsArgs),
}

#[derive(Subcommand)]
enum CatalogAction {
    /// Print the catalog names.
    List,
    /// Emit the variety spec file for a catalog entry.
    Dump { name: String },
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Catalog entry name.
    #[arg(long, conflicts_with = "spec")]
    variety: Option<String>,
    /// Variety spec file (JSON); `-` reads stdin.
    #[arg(long)]
    spec: Option<String>,
    /// Comma-separated rational parameter point, or `random`.
    #[arg(long)]
    point: Option<String>,
    /// Seed for `--point random` (echoed in the report).
    #[arg(long)]
    seed: Option<u64>,
    /// Largest hypersurface degree D analyzed.
    #[arg(long, default_value_t = 3)]
    max_degree: u32,
    /// Largest osculation order K (jet cap).
    #[arg(long, default_value_t = 7)]
    max_order: u32,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct FromQuadricsArgs {
    /// Quadric system spec file (JSON with fields n, quadrics); `-` = stdin.
    #[arg(long)]
    spec: String,
    #[arg(long)]
    point: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 3)]
    max_degree: u32,
    #[arg(long, default_value_t = 7)]
    max_order: u32,
    #[arg(long)]
    json: bool,
    /// Also run the quadratic-generation check up to D.
    #[arg(long)]
    check_generation: bool,
}

fn read_source(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(PathBuf::from(path)).with_context(|| format!("reading {path}"))
    }
}

fn load_variety(args: &AnalyzeArgs) -> Result<(ParamVariety, Option<Vec<Rat>>)> {
    match (&args.variety, &args.spec) {
        (Some(name), None) => {
            let e = catalog::catalog_get(name)
                .ok_or_else(|| anyhow!("unknown catalog entry `{name}`; try `prodiff catalog list`"))?;
            Ok((e.variety, Some(e.point)))
        }
        (None, Some(path)) => {
            let text = read_source(path)?;
            let spec: VarietySpec =
                serde_json::from_str(&text).context("parsing variety spec JSON")?;
            let (v, p) = spec.to_variety().map_err(|e| anyhow!("{e}"))?;
            Ok((v, p))
        }
        _ => bail!("select a variety with --variety <name> or --spec <file>"),
    }
}

fn resolve_point(
    v: &ParamVariety,
    arg: &Option<String>,
    seed: Option<u64>,
    default_point: Option<Vec<Rat>>,
) -> Result<(Vec<Rat>, Option<u64>)> {
    match arg.as_deref() {
        None => Ok((default_point.unwrap_or_else(|| vec![Rat::from_integer(0.into()); v.n]), None)),
        Some("random") => {
            let s = seed.unwrap_or(1);
            let p = random_point(v, s).map_err(|e| anyhow!("{e}"))?;
            Ok((p, Some(s)))
        }
        Some(text) => {
            let parts: Vec<&str> = text.split(',').collect();
            if parts.len() != v.n {
                bail!("point has {} coordinates, expected {}", parts.len(), v.n);
            }
            let p: Result<Vec<Rat>, _> = parts.iter().map(|s| parse_rat(s)).collect();
            Ok((p.map_err(|e| anyhow!("{e}"))?, None))
        }
    }
}

fn run_analyze(args: &AnalyzeArgs, only: Option<&str>) -> Result<()> {
    let (v, default_point) = load_variety(args)?;
    let (t0, seed) = resolve_point(&v, &args.point, args.seed, default_point)?;
    match only {
        Some("monge") => {
            let cap = args.max_order.max(5);
            let chart = adapt_at_point(&v, &t0, cap).map_err(|e| anyhow!("{e}"))?;
            let rep = monge_quadrics(&chart).map_err(|e| anyhow!("{e}"))?;
            if args.json {
                println!("{}", serde_json::to_string_pretty(&rep)?);
            } else {
                println!("variety {}  point [{}]", v.label, join_rats(&t0));
                println!("monge verdict: {:?}", rep.verdict);
                println!(
                    "  III dim {} | syzygies {} | stages {} {} {} | kernel dims {} {} {}",
                    rep.iii_dim,
                    rep.linear_syzygy_dim,
                    rep.stage3_solvable,
                    rep.stage4_solvable,
                    rep.stage5_solvable,
                    rep.dim_ker_ff3,
                    rep.dim_ker_ff4,
                    rep.dim_ker_ff5
                );
                for g in &rep.generators {
                    println!("  generator: {g}");
                }
            }
        }
        Some("ci") => {
            let rep = prodiff::variety::ci_verdict(&v, &t0, args.max_degree)
                .map_err(|e| anyhow!("{e}"))?;
            if args.json {
                println!("{}", serde_json::to_string_pretty(&rep)?);
            } else {
                println!(
                    "variety {}: complete intersection up to degree {}: {}",
                    v.label,
                    rep.degree_bound,
                    if rep.complete_intersection_up_to_bound { "YES" } else { "NO" }
                );
                for row in &rep.rows {
                    println!(
                        "  degree {}: dim I = {}, essential {}, injective {}{}",
                        row.degree,
                        row.dim_ideal,
                        row.dim_essential,
                        row.map_injective,
                        row.witness
                            .as_ref()
                            .map(|w| format!(", witness {w}"))
                            .unwrap_or_default()
                    );
                }
            }
        }
        _ => {
            let cfg = AnalysisConfig {
                max_degree: args.max_degree,
                max_order: args.max_order,
                run_monge: true,
                run_ci: true,
                seed,
            };
            let rep = analyze(&v, &t0, &cfg).map_err(|e| anyhow!("{e}"))?;
            if args.json {
                println!("{}", render_json(&rep));
            } else {
                print!("{}", render_text(&rep));
            }
        }
    }
    Ok(())
}

fn join_rats(t0: &[Rat]) -> String {
    t0.iter()
        .map(prodiff::rat::fmt_rat)
        .collect::<Vec<_>>()
        .join(", ")
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    match &cli.command {
        Command::Catalog { action } => match action {
            CatalogAction::List => {
                for name in catalog::catalog_names() {
                    let e = catalog::catalog_get(name).unwrap();
                    println!(
                        "{:14} n = {:2}  a = {:2}  ambient P^{}",
                        name,
                        e.variety.n,
                        e.variety.a,
                        e.variety.n + e.variety.a
                    );
                }
            }
            CatalogAction::Dump { name } => {
                let e = catalog::catalog_get(name)
                    .ok_or_else(|| anyhow!("unknown catalog entry `{name}`"))?;
                let spec = VarietySpec::from_variety(&e.variety, Some(&e.point));
                println!("{}", serde_json::to_string_pretty(&spec)?);
            }
        },
        Command::Analyze(args) => run_analyze(args, None)?,
        Command::Monge(args) => run_analyze(args, Some("monge"))?,
        Command::Ci(args) => run_analyze(args, Some("ci"))?,
        Command::FromQuadrics(args) => {
            let text = read_source(&args.spec)?;
            let spec: prodiff::quadsys::QuadricSystemSpec =
                serde_json::from_str(&text).context("parsing quadric system spec JSON")?;
            let sys = spec.to_system().map_err(|e| anyhow!("{e}"))?;
            let label = spec.label.clone().unwrap_or_else(|| "from-quadrics".into());
            let v = prodiff::quadsys::variety_from_quadrics(&sys, &label);
            let a_args = AnalyzeArgs {
                variety: None,
                spec: None,
                point: args.point.clone(),
                seed: args.seed,
                max_degree: args.max_degree,
                max_order: args.max_order,
                json: args.json,
            };
            let (t0, seed) = resolve_point(&v, &a_args.point, a_args.seed, None)?;
            let cfg = AnalysisConfig {
                max_degree: args.max_degree,
                max_order: args.max_order,
                run_monge: true,
                run_ci: true,
                seed,
            };
            let rep = analyze(&v, &t0, &cfg).map_err(|e| anyhow!("{e}"))?;
            if args.json {
                let mut value = serde_json::to_value(&rep)?;
                let emitted = VarietySpec::from_variety(&v, Some(&t0));
                value["variety_spec"] = serde_json::to_value(&emitted)?;
                if args.check_generation {
                    let qg = quadratic_generation_check(&v, &t0, args.max_degree)
                        .map_err(|e| anyhow!("{e}"))?;
                    value["quadratic_generation"] = serde_json::to_value(&qg)?;
                }
                println!("{}", serde_json::to_string_pretty(&value)?);
            } else {
                println!("built variety:");
                let emitted = VarietySpec::from_variety(&v, Some(&t0));
                println!("{}", serde_json::to_string_pretty(&emitted)?);
                println!();
                print!("{}", render_text(&rep));
                if args.check_generation {
                    let qg = quadratic_generation_check(&v, &t0, args.max_degree)
                        .map_err(|e| anyhow!("{e}"))?;
                    println!();
                    println!(
                        "quadratic generation up to degree {}: {}",
                        qg.degree_bound,
                        if qg.generated_up_to_bound { "YES" } else { "NO" }
                    );
                    for row in &qg.rows {
                        println!(
                            "  degree {}: dim I = {}, from quadrics {}, excess {}{}",
                            row.degree,
                            row.dim_ideal,
                            row.dim_from_quadrics,
                            row.excess,
                            row.new_relations_among_ii
                                .map(|d| format!(" (new relations among II: {d})"))
                                .unwrap_or_default()
                        );
                    }
                }
            }
        }
    }
    Ok(())
}
