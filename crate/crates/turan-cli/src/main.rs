//! Command-line front end for the turan-core toolkit.
//!
//! One binary, eight subcommands: construct / verify / search / density-table
//! cover the combinatorial side; smooth-eval / grad-check / kkt-check /
//! symmetry-check cover the smoothed-objective side. Results go to stdout as
//! a human-readable summary or, with --json, as a single JSON document with a
//! stable schema; diagnostics go to stderr.
//!
//! Exit codes: 0 success, 1 usage or internal error, 2 property violated
//! (verify only), 3 budget exhausted or search incomplete.

use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use turan_core::smoothing::{
    grad_check, grad_n, grad_r_with_cap, kkt_from_gradients, objective_n, objective_r_with_cap,
    random_relaxed_system, symmetry_report, EdgeSystem, FormulaVariant, KktReport, PairClass,
    SmoothingParams, SymmetryReport, SystemFamily, R_VERTEX_CAP,
};
use turan_core::{
    build_turan, density_limit, density_table, exec, is_turan_property_with, max_kfree, BuildMode,
    KSubset, ScanOptions, TripleFamily, TuranError, DEFAULT_NODE_BUDGET,
};

const EXIT_OK: u8 = 0;
const EXIT_ERROR: u8 = 1;
const EXIT_VIOLATED: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(
    name = "turan",
    version,
    about = "Hypergraph Turán toolkit: extremal construction, exhaustive \
             verification, exact search, and smoothed-objective numerics"
)]
struct Cli {
    /// Worker threads for the data-parallel scans; 1 forces the sequential
    /// lane, larger values size the global pool. Default: one per CPU.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    threads: Option<u64>,

    /// Emit a single JSON document instead of the human summary.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the cyclic-partition hypergraph T(n, k) and report its counts.
    Construct(ConstructArgs),
    /// Exhaustively decide the (3,k) property for a hypergraph file.
    Verify(VerifyArgs),
    /// Exact branch-and-bound maximum of property-satisfying families.
    Search(SearchArgs),
    /// Tabulate T's edge density against its limit across vertex counts.
    DensityTable(DensityTableArgs),
    /// Evaluate the smoothed objectives N and R on a hypergraph file.
    SmoothEval(SmoothEvalArgs),
    /// Compare analytic gradients against central finite differences.
    GradCheck(GradCheckArgs),
    /// Fit the stationarity multiplier lambda and report the residual.
    KktCheck(KktCheckArgs),
    /// Check gradient symmetry under the construction's automorphisms.
    SymmetryCheck(SymmetryCheckArgs),
}

#[derive(Args)]
struct ConstructArgs {
    /// Number of vertices.
    #[arg(long)]
    n: usize,
    /// Forbidden-clique size k (every k-set must miss a triple).
    #[arg(long)]
    k: usize,
    /// Allow part sizes differing by one when (k-1) does not divide n
    /// (experimental; the optimality discussion covers equal parts only).
    #[arg(long)]
    balanced: bool,
    /// Write T to this file in the hypergraph text format.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the complement family to this file.
    #[arg(long)]
    complement: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Hypergraph text file to check.
    #[arg(long = "in")]
    input: PathBuf,
    /// Subset size k.
    #[arg(long)]
    k: usize,
    /// Stop at the first violating k-set instead of scanning all of them.
    #[arg(long)]
    witness_only: bool,
}

#[derive(Args)]
struct SearchArgs {
    /// Number of vertices.
    #[arg(long)]
    n: usize,
    /// Subset size k.
    #[arg(long)]
    k: usize,
    /// Node budget; the search stops with a lower bound when it runs out.
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
    /// Write the maximum witness family to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DensityTableArgs {
    /// Subset size k.
    #[arg(long)]
    k: usize,
    /// Comma-separated vertex counts, each divisible by k-1.
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<usize>,
}

#[derive(Args)]
struct SmoothEvalArgs {
    /// Hypergraph text file providing the edge system.
    #[arg(long = "in")]
    input: PathBuf,
    /// Subset size k.
    #[arg(long)]
    k: usize,
    /// Smoothing width sigma.
    #[arg(long)]
    sigma: f64,
    /// Threshold offset epsilon in (0, 1).
    #[arg(long, default_value_t = SmoothingParams::DEFAULT_EPSILON)]
    eps: f64,
    /// Parenthesization of R's inner term: a or b.
    #[arg(long, default_value_t = FormulaVariant::A, value_parser = parse_variant)]
    formula_variant: FormulaVariant,
    /// Largest n admitted to the k-subset sums of R.
    #[arg(long, default_value_t = R_VERTEX_CAP)]
    max_n: usize,
}

#[derive(Args)]
struct GradCheckArgs {
    /// Check the canonical system of this hypergraph file instead of
    /// random systems.
    #[arg(long = "in", conflicts_with_all = ["n", "m", "seed", "systems"])]
    input: Option<PathBuf>,
    /// Vertices of each random system.
    #[arg(long, default_value_t = 5)]
    n: usize,
    /// Subset size k.
    #[arg(long, default_value_t = 4)]
    k: usize,
    /// Edge vectors per random system.
    #[arg(long, default_value_t = 6)]
    m: usize,
    /// Seed of the first random system.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// How many random systems to check (seeds seed, seed+1, ...).
    #[arg(long, default_value_t = 1)]
    systems: u64,
    /// Central-difference step.
    #[arg(long, default_value_t = 1e-4)]
    h: f64,
    /// Smoothing width sigma.
    #[arg(long, default_value_t = 0.5)]
    sigma: f64,
    /// Threshold offset epsilon in (0, 1).
    #[arg(long, default_value_t = SmoothingParams::DEFAULT_EPSILON)]
    eps: f64,
    /// Parenthesization of R's inner term: a or b.
    #[arg(long, default_value_t = FormulaVariant::A, value_parser = parse_variant)]
    formula_variant: FormulaVariant,
}

#[derive(Args)]
struct KktCheckArgs {
    /// Hypergraph text file providing the edge system.
    #[arg(long = "in")]
    input: PathBuf,
    /// Subset size k.
    #[arg(long)]
    k: usize,
    /// Smoothing width sigma.
    #[arg(long, default_value_t = 0.5)]
    sigma: f64,
    /// Threshold offset epsilon in (0, 1).
    #[arg(long, default_value_t = SmoothingParams::DEFAULT_EPSILON)]
    eps: f64,
    /// Parenthesization of R's inner term: a or b.
    #[arg(long, default_value_t = FormulaVariant::A, value_parser = parse_variant)]
    formula_variant: FormulaVariant,
    /// Largest n admitted to the k-subset sums of R.
    #[arg(long, default_value_t = R_VERTEX_CAP)]
    max_n: usize,
}

#[derive(Args)]
struct SymmetryCheckArgs {
    /// Number of vertices; (k-1) must divide n.
    #[arg(long)]
    n: usize,
    /// Subset size k.
    #[arg(long)]
    k: usize,
    /// Which family's canonical system to differentiate: t or tbar.
    #[arg(long, default_value_t = SystemFamily::T, value_parser = parse_family)]
    family: SystemFamily,
    /// Smoothing width sigma.
    #[arg(long, default_value_t = 0.5)]
    sigma: f64,
    /// Threshold offset epsilon in (0, 1).
    #[arg(long, default_value_t = SmoothingParams::DEFAULT_EPSILON)]
    eps: f64,
    /// Parenthesization of R's inner term: a or b.
    #[arg(long, default_value_t = FormulaVariant::A, value_parser = parse_variant)]
    formula_variant: FormulaVariant,
}

fn parse_variant(s: &str) -> Result<FormulaVariant, TuranError> {
    s.parse()
}

fn parse_family(s: &str) -> Result<SystemFamily, TuranError> {
    s.parse()
}

fn main() -> ExitCode {
    // Rust starts with SIGPIPE ignored, so printing into a closed pipe
    // (`turan ... --json | head`) would panic; restore the default so the
    // process exits quietly like any other filter.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }

    // clap's default error exit code is 2, which this tool reserves for
    // property violations; usage errors must exit 1 with one stderr line.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            if matches!(
                err.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            ) {
                let _ = err.print();
                return ExitCode::SUCCESS;
            }
            let msg = err.to_string();
            let line = msg
                .lines()
                .find(|l| !l.trim().is_empty())
                .unwrap_or("invalid usage")
                .trim_start_matches("error: ");
            eprintln!("turan: {line} (run 'turan --help' for usage)");
            return ExitCode::from(EXIT_ERROR);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("turan: {err:#}");
            let budget = err
                .downcast_ref::<TuranError>()
                .is_some_and(|e| matches!(e, TuranError::BudgetExceeded { .. }));
            ExitCode::from(if budget { EXIT_BUDGET } else { EXIT_ERROR })
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    configure_threads(cli.threads)?;
    let json = cli.json;
    match cli.command {
        Command::Construct(args) => cmd_construct(args, json),
        Command::Verify(args) => cmd_verify(args, json),
        Command::Search(args) => cmd_search(args, json),
        Command::DensityTable(args) => cmd_density_table(args, json),
        Command::SmoothEval(args) => cmd_smooth_eval(args, json),
        Command::GradCheck(args) => cmd_grad_check(args, json),
        Command::KktCheck(args) => cmd_kkt_check(args, json),
        Command::SymmetryCheck(args) => cmd_symmetry_check(args, json),
    }
}

fn configure_threads(threads: Option<u64>) -> Result<()> {
    match threads {
        None => {}
        Some(1) => exec::force_sequential(true),
        Some(_t) => {
            #[cfg(feature = "parallel")]
            rayon::ThreadPoolBuilder::new()
                .num_threads(_t as usize)
                .build_global()
                .context("failed to size the worker pool")?;
        }
    }
    Ok(())
}

fn read_family(path: &Path) -> Result<TripleFamily> {
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    TripleFamily::read_text(BufReader::new(file))
        .with_context(|| format!("malformed hypergraph file {}", path.display()))
}

fn write_family(f: &TripleFamily, path: &Path) -> Result<()> {
    let file = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
    f.write_text(BufWriter::new(file))
        .with_context(|| format!("cannot write {}", path.display()))
}

fn emit<T: Serialize>(doc: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(doc)?);
    Ok(())
}

#[derive(Serialize)]
struct ConstructDoc {
    n: usize,
    k: usize,
    m: usize,
    mode: String,
    experimental: bool,
    part_sizes: Vec<usize>,
    #[serde(rename = "edges_T")]
    edges_t: usize,
    #[serde(rename = "edges_Tbar")]
    edges_tbar: usize,
    #[serde(rename = "density_T")]
    density_t: f64,
    density_limit: f64,
    density_limit_exact: String,
    out: Option<String>,
    complement_out: Option<String>,
}

fn cmd_construct(args: ConstructArgs, json: bool) -> Result<u8> {
    let mode = if args.balanced {
        BuildMode::Balanced
    } else {
        BuildMode::Strict
    };
    let inst = build_turan(args.n, args.k, mode)?;
    if let Some(path) = &args.out {
        write_family(inst.t(), path)?;
    }
    if let Some(path) = &args.complement {
        write_family(inst.tbar(), path)?;
    }
    let limit = density_limit(args.k);
    let total = inst.t().triple_capacity();
    let doc = ConstructDoc {
        n: args.n,
        k: args.k,
        m: inst.m(),
        mode: inst.mode().to_string(),
        experimental: inst.is_experimental(),
        part_sizes: inst.part_sizes().to_vec(),
        edges_t: inst.t().edge_count(),
        edges_tbar: inst.tbar().edge_count(),
        density_t: inst.t().edge_count() as f64 / total as f64,
        density_limit: *limit.numer() as f64 / *limit.denom() as f64,
        density_limit_exact: limit.to_string(),
        out: args.out.as_ref().map(|p| p.display().to_string()),
        complement_out: args.complement.as_ref().map(|p| p.display().to_string()),
    };
    if json {
        emit(&doc)?;
    } else {
        println!(
            "T({}, {}): {} parts {:?} ({}{})",
            doc.n,
            doc.k,
            doc.part_sizes.len(),
            doc.part_sizes,
            doc.mode,
            if doc.experimental {
                ", experimental"
            } else {
                ""
            }
        );
        println!(
            "|T| = {}, |complement| = {}, C(n,3) = {}",
            doc.edges_t, doc.edges_tbar, total
        );
        println!(
            "density(T) = {:.6}, limit = {:.6} ({})",
            doc.density_t, doc.density_limit, doc.density_limit_exact
        );
        if let Some(out) = &doc.out {
            println!("wrote T to {out}");
        }
        if let Some(out) = &doc.complement_out {
            println!("wrote complement to {out}");
        }
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct VerifyDoc {
    holds: bool,
    witness: Option<KSubset>,
    max_inside: usize,
    subsets_scanned: u64,
    elapsed_ms: u64,
}

fn cmd_verify(args: VerifyArgs, json: bool) -> Result<u8> {
    let family = read_family(&args.input)?;
    let opts = ScanOptions {
        witness_only: args.witness_only,
        ..ScanOptions::default()
    };
    let start = Instant::now();
    let report = is_turan_property_with(&family, args.k, opts)?;
    let elapsed_ms = start.elapsed().as_millis() as u64;
    let doc = VerifyDoc {
        holds: report.holds,
        witness: report.witness,
        max_inside: report.max_inside,
        subsets_scanned: report.subsets_scanned,
        elapsed_ms,
    };
    if json {
        emit(&doc)?;
    } else if doc.holds {
        println!(
            "property holds for k = {}: max inside-count {} (scanned {} subsets in {} ms)",
            args.k, doc.max_inside, doc.subsets_scanned, doc.elapsed_ms
        );
    } else {
        println!(
            "property VIOLATED for k = {}: subset {:?} holds {} triples",
            args.k,
            doc.witness.as_ref().map(KSubset::vertices).unwrap_or(&[]),
            doc.max_inside
        );
    }
    Ok(if doc.holds { EXIT_OK } else { EXIT_VIOLATED })
}

#[derive(Serialize)]
struct SearchDoc {
    n: usize,
    k: usize,
    max_edges: usize,
    witness_file: Option<String>,
    nodes_explored: u64,
    complete: bool,
}

fn cmd_search(args: SearchArgs, json: bool) -> Result<u8> {
    let result = max_kfree(args.n, args.k, args.budget)?;
    if let Some(path) = &args.out {
        write_family(&result.witness, path)?;
    }
    let doc = SearchDoc {
        n: args.n,
        k: args.k,
        max_edges: result.max_edges,
        witness_file: args.out.as_ref().map(|p| p.display().to_string()),
        nodes_explored: result.nodes_explored,
        complete: result.complete,
    };
    if json {
        emit(&doc)?;
    } else {
        println!(
            "largest property-satisfying family on n = {}, k = {}: {} of {} triples",
            doc.n,
            doc.k,
            doc.max_edges,
            result.witness.triple_capacity()
        );
        println!(
            "nodes explored: {}{}",
            doc.nodes_explored,
            if doc.complete {
                ""
            } else {
                " (budget exhausted; value is a lower bound)"
            }
        );
        if let Some(out) = &doc.witness_file {
            println!("wrote witness to {out}");
        }
    }
    Ok(if doc.complete { EXIT_OK } else { EXIT_BUDGET })
}

#[derive(Serialize)]
struct DensityRowDoc {
    n: usize,
    #[serde(rename = "edges_T")]
    edges_t: u64,
    total_triples: u64,
    #[serde(rename = "density_T")]
    density_t: f64,
    gap: f64,
}

#[derive(Serialize)]
struct DensityTableDoc {
    k: usize,
    limit: f64,
    limit_exact: String,
    rows: Vec<DensityRowDoc>,
}

fn cmd_density_table(args: DensityTableArgs, json: bool) -> Result<u8> {
    let rows = density_table(args.k, &args.n)?;
    let limit = density_limit(args.k);
    let doc = DensityTableDoc {
        k: args.k,
        limit: *limit.numer() as f64 / *limit.denom() as f64,
        limit_exact: limit.to_string(),
        rows: rows
            .iter()
            .map(|r| DensityRowDoc {
                n: r.n,
                edges_t: r.edges_t,
                total_triples: r.total_triples,
                density_t: r.density_t,
                gap: r.gap,
            })
            .collect(),
    };
    if json {
        emit(&doc)?;
    } else {
        println!(
            "k = {}, density limit {} = {:.6}",
            doc.k, doc.limit_exact, doc.limit
        );
        println!(
            "{:>8} {:>12} {:>12} {:>10} {:>11}",
            "n", "|T|", "C(n,3)", "density", "gap"
        );
        for r in &doc.rows {
            println!(
                "{:>8} {:>12} {:>12} {:>10.6} {:>11.6}",
                r.n, r.edges_t, r.total_triples, r.density_t, r.gap
            );
        }
    }
    Ok(EXIT_OK)
}

fn regime(eps: f64) -> &'static str {
    if eps < 0.5 {
        "edge_terms_saturate_to_zero"
    } else if eps > 0.5 {
        "edge_terms_saturate_to_one"
    } else {
        "boundary_at_half"
    }
}

#[derive(Serialize)]
struct SmoothEvalDoc {
    n: usize,
    k: usize,
    edges: usize,
    sigma: f64,
    eps: f64,
    variant: String,
    #[serde(rename = "N")]
    obj_n: f64,
    #[serde(rename = "R")]
    obj_r: f64,
    #[serde(rename = "M_half")]
    m_half: f64,
    regime: String,
}

fn cmd_smooth_eval(args: SmoothEvalArgs, json: bool) -> Result<u8> {
    let family = read_family(&args.input)?;
    let sys = EdgeSystem::canonical_from_family(&family, args.k)?;
    let p = SmoothingParams::new(args.sigma, args.eps)?;
    let obj_n = objective_n(&sys, &p);
    let obj_r = objective_r_with_cap(&sys, &p, args.formula_variant, args.max_n)?;
    let doc = SmoothEvalDoc {
        n: sys.n(),
        k: sys.k(),
        edges: sys.m(),
        sigma: args.sigma,
        eps: args.eps,
        variant: args.formula_variant.to_string(),
        obj_n,
        obj_r,
        m_half: sys.m() as f64 / 2.0,
        regime: regime(args.eps).to_string(),
    };
    if json {
        emit(&doc)?;
    } else {
        println!(
            "system: n = {}, k = {}, M = {} edges from {}",
            doc.n,
            doc.k,
            doc.edges,
            args.input.display()
        );
        println!(
            "sigma = {}, eps = {} ({}), variant {}",
            doc.sigma, doc.eps, doc.regime, doc.variant
        );
        println!("N = {}", doc.obj_n);
        println!("R = {}", doc.obj_r);
        println!("M/2 = {}", doc.m_half);
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct GradCheckDoc {
    source: String,
    systems: u64,
    n: usize,
    k: usize,
    m: usize,
    h: f64,
    sigma: f64,
    eps: f64,
    variant: String,
    #[serde(rename = "max_rel_err_N")]
    max_rel_err_n: f64,
    #[serde(rename = "max_rel_err_R")]
    max_rel_err_r: f64,
    #[serde(rename = "max_abs_diff_N")]
    max_abs_diff_n: f64,
    #[serde(rename = "max_abs_diff_R")]
    max_abs_diff_r: f64,
}

fn cmd_grad_check(args: GradCheckArgs, json: bool) -> Result<u8> {
    let p = SmoothingParams::new(args.sigma, args.eps)?;
    let systems: Vec<EdgeSystem> = match &args.input {
        Some(path) => {
            let family = read_family(path)?;
            vec![EdgeSystem::canonical_from_family(&family, args.k)?]
        }
        None => (0..args.systems)
            .map(|i| random_relaxed_system(args.n, args.k, args.m, args.seed + i))
            .collect::<Result<_, _>>()?,
    };
    let (source, n, m) = match &args.input {
        Some(path) => (path.display().to_string(), systems[0].n(), systems[0].m()),
        None => ("random".to_string(), args.n, args.m),
    };
    let mut doc = GradCheckDoc {
        source,
        systems: systems.len() as u64,
        n,
        k: args.k,
        m,
        h: args.h,
        sigma: args.sigma,
        eps: args.eps,
        variant: args.formula_variant.to_string(),
        max_rel_err_n: 0.0,
        max_rel_err_r: 0.0,
        max_abs_diff_n: 0.0,
        max_abs_diff_r: 0.0,
    };
    for sys in &systems {
        let report = grad_check(sys, &p, args.formula_variant, args.h)?;
        doc.max_rel_err_n = doc.max_rel_err_n.max(report.rel_err_n);
        doc.max_rel_err_r = doc.max_rel_err_r.max(report.rel_err_r);
        doc.max_abs_diff_n = doc.max_abs_diff_n.max(report.max_abs_diff_n);
        doc.max_abs_diff_r = doc.max_abs_diff_r.max(report.max_abs_diff_r);
    }
    if json {
        emit(&doc)?;
    } else {
        println!(
            "checked {} system(s) from {} (n = {}, k = {}, M = {}), h = {}, sigma = {}, eps = {}, variant {}",
            doc.systems, doc.source, doc.n, doc.k, doc.m, doc.h, doc.sigma, doc.eps, doc.variant
        );
        println!(
            "max rel err: grad_N {:.3e}, grad_R {:.3e}",
            doc.max_rel_err_n, doc.max_rel_err_r
        );
        println!(
            "max abs diff: grad_N {:.3e}, grad_R {:.3e}",
            doc.max_abs_diff_n, doc.max_abs_diff_r
        );
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct KktDoc {
    n: usize,
    k: usize,
    m: usize,
    sigma: f64,
    eps: f64,
    variant: String,
    #[serde(flatten)]
    report: KktReport,
}

fn cmd_kkt_check(args: KktCheckArgs, json: bool) -> Result<u8> {
    let family = read_family(&args.input)?;
    let sys = EdgeSystem::canonical_from_family(&family, args.k)?;
    let p = SmoothingParams::new(args.sigma, args.eps)?;
    let gn = grad_n(&sys, &p);
    let gr = grad_r_with_cap(&sys, &p, args.formula_variant, args.max_n)?;
    let report = kkt_from_gradients(&gn, &gr)?;
    let doc = KktDoc {
        n: sys.n(),
        k: sys.k(),
        m: sys.m(),
        sigma: args.sigma,
        eps: args.eps,
        variant: args.formula_variant.to_string(),
        report,
    };
    if json {
        emit(&doc)?;
    } else {
        println!(
            "stationarity fit at {} (n = {}, k = {}, M = {}, sigma = {}, eps = {}, variant {})",
            args.input.display(),
            doc.n,
            doc.k,
            doc.m,
            doc.sigma,
            doc.eps,
            doc.variant
        );
        println!(
            "lambda* = {}, residual |grad_N - lambda* grad_R| = {:.6e}",
            doc.report.lambda_star, doc.report.residual_norm
        );
        println!(
            "|grad_N| = {:.6e}, |grad_R| = {:.6e}",
            doc.report.grad_n_norm, doc.report.grad_r_norm
        );
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct ClassDoc {
    pairs: usize,
    #[serde(rename = "max_diff_N")]
    max_diff_n: f64,
    #[serde(rename = "max_diff_R")]
    max_diff_r: f64,
}

#[derive(Serialize)]
struct ZeroClaimDoc {
    rows: usize,
    #[serde(rename = "max_grad_N")]
    max_grad_n: f64,
    #[serde(rename = "max_grad_R")]
    max_grad_r: f64,
    /// Whether every same-part coordinate's derivatives vanish to 1e-9;
    /// null when the family has no single-part edges to test.
    pass: Option<bool>,
}

#[derive(Serialize)]
struct SymmetryDoc {
    n: usize,
    k: usize,
    family: String,
    sigma: f64,
    eps: f64,
    variant: String,
    coords: usize,
    orbit_count: usize,
    #[serde(rename = "max_orbit_spread_N")]
    max_orbit_spread_n: f64,
    #[serde(rename = "max_orbit_spread_R")]
    max_orbit_spread_r: f64,
    within_part: ClassDoc,
    cyclic_rotation: ClassDoc,
    zero_claim: ZeroClaimDoc,
}

const ZERO_CLAIM_TOL: f64 = 1e-9;

fn class_doc(report: &SymmetryReport, class: PairClass) -> ClassDoc {
    let mut doc = ClassDoc {
        pairs: 0,
        max_diff_n: 0.0,
        max_diff_r: 0.0,
    };
    for pair in report.pairs.iter().filter(|p| p.class == class) {
        doc.pairs += 1;
        doc.max_diff_n = doc.max_diff_n.max(pair.diff_n.abs());
        doc.max_diff_r = doc.max_diff_r.max(pair.diff_r.abs());
    }
    doc
}

fn cmd_symmetry_check(args: SymmetryCheckArgs, json: bool) -> Result<u8> {
    let inst = build_turan(args.n, args.k, BuildMode::Strict)?;
    let p = SmoothingParams::new(args.sigma, args.eps)?;
    let report = symmetry_report(&inst, &p, args.family, args.formula_variant)?;
    let zero_claim = ZeroClaimDoc {
        rows: report.zero_claims.len(),
        max_grad_n: report.max_zero_claim_n,
        max_grad_r: report.max_zero_claim_r,
        pass: (!report.zero_claims.is_empty()).then_some(
            report.max_zero_claim_n <= ZERO_CLAIM_TOL && report.max_zero_claim_r <= ZERO_CLAIM_TOL,
        ),
    };
    let doc = SymmetryDoc {
        n: args.n,
        k: args.k,
        family: args.family.to_string(),
        sigma: args.sigma,
        eps: args.eps,
        variant: args.formula_variant.to_string(),
        coords: report.coords,
        orbit_count: report.orbit_count,
        max_orbit_spread_n: report.max_orbit_spread_n,
        max_orbit_spread_r: report.max_orbit_spread_r,
        within_part: class_doc(&report, PairClass::WithinPart),
        cyclic_rotation: class_doc(&report, PairClass::CyclicRotation),
        zero_claim,
    };
    if json {
        emit(&doc)?;
    } else {
        println!(
            "T({}, {}) {}-system, sigma = {}, eps = {}, variant {}",
            doc.n, doc.k, doc.family, doc.sigma, doc.eps, doc.variant
        );
        println!(
            "{} coordinates in {} automorphism orbits",
            doc.coords, doc.orbit_count
        );
        println!(
            "max orbit spread: grad_N {:.3e}, grad_R {:.3e}",
            doc.max_orbit_spread_n, doc.max_orbit_spread_r
        );
        for (name, class) in [
            ("within-part pairs", &doc.within_part),
            ("cyclic-rotation pairs", &doc.cyclic_rotation),
        ] {
            println!(
                "{name} ({}): max diff grad_N {:.3e}, grad_R {:.3e}",
                class.pairs, class.max_diff_n, class.max_diff_r
            );
        }
        match doc.zero_claim.pass {
            None => println!("zero claim: no single-part edges in this family"),
            Some(pass) => println!(
                "zero claim over {} coordinates: max |grad_N| = {:.3e}, max |grad_R| = {:.3e} -> {} (tolerance {:e})",
                doc.zero_claim.rows,
                doc.zero_claim.max_grad_n,
                doc.zero_claim.max_grad_r,
                if pass { "holds" } else { "FAILS" },
                ZERO_CLAIM_TOL
            ),
        }
    }
    Ok(EXIT_OK)
}
