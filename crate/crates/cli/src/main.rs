//! Command-line front end: generate lattices, analyze line usage, verify
//! the built-in suites, render configurations to SVG.
//!
//! Exit codes: 0 success, 1 verification finding, 2 invalid input or
//! infrastructure failure.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use gcnlab_core::conjecture::{analyze_line, verify_set};
use gcnlab_core::gc::GcAnalysis;
use gcnlab_core::geom::{rat_from_str, Line, Point, Rat};
use gcnlab_core::io;
use gcnlab_core::lattices::{
    carnicer_gasca, chung_yao, construct_x_star, construct_y_star, fixtures, m_modification,
    principal_pencils, FamilyTag, LatticeBlueprint, XStarParams, YStarParams,
};
use gcnlab_core::nodeset::NodeSet;
use gcnlab_core::suites::run_suite;
use gcnlab_core::svg::render_svg;
use num_bigint::BigInt;
use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

#[derive(Parser)]
#[command(name = "gcnlab", about = "Exact line-usage analysis for GC_n node sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a node-set family and write it with its blueprint annex
    Generate(GenerateArgs),
    /// Analyze one line or every node-line of a set
    Analyze(AnalyzeArgs),
    /// Run a named verification suite over the built-in fixtures
    Verify(VerifyArgs),
    /// Render a node set to a static SVG figure
    Render(RenderArgs),
}

#[derive(Args)]
struct GenerateArgs {
    /// chung-yao | carnicer-gasca | principal | gpl | y-star | x-star | modify
    family: String,
    /// Degree n (chung-yao, carnicer-gasca, principal, gpl)
    #[arg(long)]
    degree: Option<usize>,
    /// Number of modification pairs (modify)
    #[arg(long, default_value_t = 1)]
    m: usize,
    /// Base node-set file (modify)
    #[arg(long)]
    base: Option<PathBuf>,
    /// Blueprint annex of the base set (modify; defaults to <base>.annex.json)
    #[arg(long)]
    blueprint: Option<PathBuf>,
    /// Explicit construction parameters (y-star, x-star, modify)
    #[arg(long)]
    params: Option<PathBuf>,
    /// Rotates the bounded default-parameter search
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output node-set file
    #[arg(short, long)]
    out: PathBuf,
    /// Blueprint annex output (defaults to <out>.annex.json)
    #[arg(long)]
    annex: Option<PathBuf>,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Node-set file
    set_file: PathBuf,
    /// Analyze a single line "a,b,c" instead of the whole set
    #[arg(long)]
    line: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// corpus | theorem32 | prop33 | prop41 | sigma2
    suite: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct RenderArgs {
    /// Node-set file; its first annotated line is drawn dashed
    set_file: PathBuf,
    /// Output SVG path
    out: PathBuf,
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("GCNLAB_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Generate(args) => cmd_generate(args).map(|()| true),
        Command::Analyze(args) => cmd_analyze(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Render(args) => cmd_render(args).map(|()| true),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn parse_line_arg(s: &str) -> Result<Line> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        bail!("line must be given as \"a,b,c\"");
    }
    let coeffs: Vec<BigInt> = parts
        .iter()
        .map(|p| BigInt::from_str(p).map_err(|_| anyhow!("bad integer coefficient {p:?}")))
        .collect::<Result<_>>()?;
    Ok(Line::from_bigints(
        coeffs[0].clone(),
        coeffs[1].clone(),
        coeffs[2].clone(),
    )?)
}

fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    Ok(serde_json::from_str(&text)?)
}

fn load_set(path: &Path) -> Result<(NodeSet, Vec<Line>)> {
    let doc = read_json(path)?;
    Ok(io::node_set_from_json(&doc)?)
}

fn json_line(v: &Value, what: &str) -> Result<Line> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == 3)
        .ok_or_else(|| anyhow!("{what} must be an [a, b, c] triple"))?;
    let coeffs: Vec<BigInt> = arr
        .iter()
        .map(|c| {
            c.as_str()
                .ok_or_else(|| anyhow!("{what}: coefficients must be strings"))
                .and_then(|s| BigInt::from_str(s).map_err(|_| anyhow!("{what}: bad integer {s:?}")))
        })
        .collect::<Result<_>>()?;
    Ok(Line::from_bigints(
        coeffs[0].clone(),
        coeffs[1].clone(),
        coeffs[2].clone(),
    )?)
}

fn json_rat(v: &Value, what: &str) -> Result<Rat> {
    let s = v
        .as_str()
        .ok_or_else(|| anyhow!("{what} must be a rational string"))?;
    Ok(rat_from_str(s)?)
}

fn json_point(v: &Value, what: &str) -> Result<Point> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| anyhow!("{what} must be an [x, y] pair"))?;
    Ok(Point::new(
        json_rat(&arr[0], what)?,
        json_rat(&arr[1], what)?,
    ))
}

fn json_direction(v: &Value, what: &str) -> Result<(Rat, Rat)> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| anyhow!("{what} must be a [dx, dy] pair"))?;
    Ok((json_rat(&arr[0], what)?, json_rat(&arr[1], what)?))
}

fn field<'a>(doc: &'a Value, key: &str) -> Result<&'a Value> {
    doc.get(key).ok_or_else(|| anyhow!("missing field {key:?}"))
}

fn need_degree(args: &GenerateArgs) -> Result<usize> {
    args.degree
        .ok_or_else(|| anyhow!("family {:?} requires --degree", args.family))
}

fn cmd_generate(args: GenerateArgs) -> Result<()> {
    let (set, lines, bp): (NodeSet, Vec<Line>, LatticeBlueprint) = match args.family.as_str() {
        "chung-yao" => {
            let (set, bp) = fixtures::cy_fixture(need_degree(&args)?);
            (set, Vec::new(), bp)
        }
        "carnicer-gasca" => {
            let (set, bp) = fixtures::cg_fixture(need_degree(&args)?);
            (set, Vec::new(), bp)
        }
        "principal" => {
            let n = need_degree(&args)?;
            let set = NodeSet::pl(n);
            let mut bp = LatticeBlueprint {
                family: FamilyTag::Principal,
                construction_lines: Vec::new(),
                free_nodes: Vec::new(),
                outside_nodes: Vec::new(),
                o_lines: Vec::new(),
                special_nodes: Vec::new(),
                distinguished_line: None,
                modification_count: 0,
            };
            bp.o_lines = principal_pencils(n).pencils.into_iter().flatten().collect();
            (set, Vec::new(), bp)
        }
        "gpl" => {
            let (set, _, bp) = fixtures::affine_gpl_fixture(need_degree(&args)?);
            (set, Vec::new(), bp)
        }
        "y-star" => {
            let (set, ell, bp) = match &args.params {
                Some(path) => {
                    let doc = read_json(path)?;
                    let o_lines_v = field(&doc, "o_lines")?
                        .as_array()
                        .filter(|a| a.len() == 3)
                        .ok_or_else(|| anyhow!("o_lines must hold 3 lines"))?;
                    let params = YStarParams {
                        o_lines: [
                            json_line(&o_lines_v[0], "o_lines[0]")?,
                            json_line(&o_lines_v[1], "o_lines[1]")?,
                            json_line(&o_lines_v[2], "o_lines[2]")?,
                        ],
                        lambda1: json_line(field(&doc, "lambda1")?, "lambda1")?,
                        lambda2: json_line(field(&doc, "lambda2")?, "lambda2")?,
                        lambda3_direction: json_direction(
                            field(&doc, "lambda3_direction")?,
                            "lambda3_direction",
                        )?,
                    };
                    construct_y_star(&params)?
                }
                None => fixtures::y_star_fixture_seeded(args.seed),
            };
            (set, vec![ell], bp)
        }
        "x-star" => {
            let (set, ell, bp) = match &args.params {
                Some(path) => {
                    let doc = read_json(path)?;
                    let params = XStarParams {
                        lambda1: json_line(field(&doc, "lambda1")?, "lambda1")?,
                        lambda2: json_line(field(&doc, "lambda2")?, "lambda2")?,
                        lambda3: json_line(field(&doc, "lambda3")?, "lambda3")?,
                        o2: json_point(field(&doc, "o2")?, "o2")?,
                        oo1_direction: json_direction(
                            field(&doc, "oo1_direction")?,
                            "oo1_direction",
                        )?,
                        oo3_direction: json_direction(
                            field(&doc, "oo3_direction")?,
                            "oo3_direction",
                        )?,
                        a22: json_point(field(&doc, "a22")?, "a22")?,
                        lambda4_direction: json_direction(
                            field(&doc, "lambda4_direction")?,
                            "lambda4_direction",
                        )?,
                    };
                    construct_x_star(&params)?
                }
                None => fixtures::x_star_fixture_seeded(args.seed),
            };
            (set, vec![ell], bp)
        }
        "modify" => {
            let base_path = args
                .base
                .as_ref()
                .ok_or_else(|| anyhow!("modify requires --base"))?;
            let bp_path = args
                .blueprint
                .clone()
                .unwrap_or_else(|| annex_path(base_path));
            let (base_set, _) = load_set(base_path)?;
            let base_bp = io::blueprint_from_json(&read_json(&bp_path)?)?;
            let base_ell = base_bp
                .distinguished_line
                .clone()
                .ok_or_else(|| anyhow!("base blueprint has no distinguished line"))?;
            let (set, ell, bp) = match &args.params {
                Some(path) => {
                    let doc = read_json(path)?;
                    let pairs_v = field(&doc, "pairs")?
                        .as_array()
                        .ok_or_else(|| anyhow!("pairs must be an array"))?;
                    let mut pairs = Vec::new();
                    for (i, pv) in pairs_v.iter().enumerate() {
                        let pair = pv
                            .as_array()
                            .filter(|a| a.len() == 2)
                            .ok_or_else(|| anyhow!("pairs[{i}] must hold two lines"))?;
                        pairs.push((
                            json_line(&pair[0], "pair line")?,
                            json_line(&pair[1], "pair line")?,
                        ));
                    }
                    m_modification(&base_set, &base_bp, &pairs)?
                }
                None => fixtures::modification_search(
                    &(base_set, base_ell, base_bp),
                    args.m,
                    args.seed,
                ),
            };
            (set, vec![ell], bp)
        }
        "custom" => {
            // escape hatch: assemble a raw Chung-Yao or Carnicer-Gasca
            // lattice from explicit lines/free nodes
            let doc = read_json(
                args.params
                    .as_ref()
                    .ok_or_else(|| anyhow!("custom requires --params"))?,
            )?;
            let lines: Vec<Line> = field(&doc, "lines")?
                .as_array()
                .ok_or_else(|| anyhow!("lines must be an array"))?
                .iter()
                .map(|v| json_line(v, "line"))
                .collect::<Result<_>>()?;
            match doc.get("free_nodes") {
                Some(fv) => {
                    let free: Vec<Point> = fv
                        .as_array()
                        .ok_or_else(|| anyhow!("free_nodes must be an array"))?
                        .iter()
                        .map(|v| json_point(v, "free node"))
                        .collect::<Result<_>>()?;
                    let (set, bp) = carnicer_gasca(&lines, &free)?;
                    (set, Vec::new(), bp)
                }
                None => {
                    let (set, bp) = chung_yao(&lines)?;
                    (set, Vec::new(), bp)
                }
            }
        }
        other => bail!("unknown family {other:?}"),
    };
    std::fs::write(&args.out, io::node_set_to_string(&set, &lines))
        .with_context(|| format!("writing {}", args.out.display()))?;
    let annex = args.annex.clone().unwrap_or_else(|| annex_path(&args.out));
    std::fs::write(
        &annex,
        serde_json::to_string_pretty(&io::blueprint_to_json(&bp))?,
    )
    .with_context(|| format!("writing {}", annex.display()))?;
    println!(
        "wrote {} ({} nodes, degree {}) and {}",
        args.out.display(),
        set.len(),
        set.degree(),
        annex.display()
    );
    Ok(())
}

fn annex_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_os_string();
    s.push(".annex.json");
    PathBuf::from(s)
}

fn cmd_analyze(args: AnalyzeArgs) -> Result<bool> {
    let (set, _) = load_set(&args.set_file)?;
    let an = GcAnalysis::new(set)?;
    match &args.line {
        Some(spec) => {
            let l = parse_line_arg(spec)?;
            let report = analyze_line(&an, &l)?;
            match args.format {
                Format::Text => print!("{}", io::line_report_to_text(&report)),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&io::line_report_to_json(&report))?
                ),
            }
            Ok(report.passes())
        }
        None => {
            let report = verify_set(&an)?;
            match args.format {
                Format::Text => print!("{}", io::set_report_to_text(&report)),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&io::set_report_to_json(&report))?
                ),
            }
            Ok(report.all_pass)
        }
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<bool> {
    let report = run_suite(&args.suite)
        .ok_or_else(|| anyhow!("unknown suite {:?} (try corpus, theorem32, prop33, prop41, sigma2)", args.suite))?;
    match args.format {
        Format::Text => {
            for c in &report.checks {
                println!(
                    "[{}] {}: {}",
                    if c.pass { "pass" } else { "FAIL" },
                    c.label,
                    c.detail
                );
            }
            println!(
                "suite {}: {}",
                report.name,
                if report.all_pass() { "all pass" } else { "FINDINGS" }
            );
        }
        Format::Json => {
            let checks: Vec<Value> = report
                .checks
                .iter()
                .map(|c| {
                    serde_json::json!({
                        "label": c.label,
                        "pass": c.pass,
                        "detail": c.detail,
                    })
                })
                .collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&serde_json::json!({
                    "suite": report.name,
                    "checks": checks,
                    "all_pass": report.all_pass(),
                }))?
            );
        }
    }
    Ok(report.all_pass())
}

fn cmd_render(args: RenderArgs) -> Result<()> {
    let (set, lines) = load_set(&args.set_file)?;
    let svg = render_svg(&set, lines.first());
    std::fs::write(&args.out, svg)
        .with_context(|| format!("writing {}", args.out.display()))?;
    println!("wrote {}", args.out.display());
    Ok(())
}
