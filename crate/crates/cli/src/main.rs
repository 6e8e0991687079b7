use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use log::{info, warn};

use miser_core::io::bench::{run_suite, suite, write_bench_csv, write_width_csv};
use miser_core::io::{emit_svg, gen_instance, verify_solution, GenParams, InstanceFile, Items, Kind, SolutionFile, WeightSpec};
use miser_core::oracle::{exact_mwis_pruned, exact_mwis_with, OracleBudget};
use miser_core::rect::{build_good_grid, solve_rect_with, GridOutcome, RectConfig};
use miser_core::seg::hitting::build_hitting_grid;
use miser_core::seg::{solve_exact_with, solve_seg_pas_with, SegConfig};
use miser_core::{Grid, Solution, SolveError};

/// Size-bounded independent sets of rectangles and segments.
#[derive(Parser, Debug)]
#[command(name = "miser", version, about)]
struct Cli {
    /// Worker threads for the solvers (default: one per core).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Write a seeded random instance.
    Gen(GenArgs),
    /// Approximate a rectangle instance within a factor 1 - eps.
    SolveRect(SolveRectArgs),
    /// Solve a segment instance exactly, or within 1 - eps with --eps.
    SolveSeg(SolveSegArgs),
    /// Exhaustive search, for reference values.
    Exact(ExactArgs),
    /// Check a solution file against its instance.
    Verify(VerifyArgs),
    /// Run a benchmark suite and write CSV.
    Bench(BenchArgs),
    /// Render an instance as SVG.
    Plot(PlotArgs),
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long)]
    kind: Kind,
    #[arg(short = 'n', long)]
    n: usize,
    #[arg(long, default_value_t = 100)]
    coord_max: i64,
    /// `range=LO,HI` or `classes=A,B,...`
    #[arg(long, default_value = "range=1,20")]
    weights: WeightSpec,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Defaults to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SolveRectArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(short = 'k')]
    k: usize,
    #[arg(long, default_value_t = 0.5)]
    eps: f64,
    /// Largest number of type guesses one branch may enumerate.
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Args, Debug)]
struct SolveSegArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(short = 'k')]
    k: usize,
    /// Round weights first; without it the answer is exact.
    #[arg(long)]
    eps: Option<f64>,
    /// Largest grid family one branch may build.
    #[arg(long)]
    budget: Option<usize>,
}

#[derive(Args, Debug)]
struct ExactArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(short = 'k')]
    k: usize,
    /// Largest number of subsets to enumerate.
    #[arg(long)]
    budget: Option<u128>,
    /// Branch and bound instead of plain enumeration; ignores --budget.
    #[arg(long)]
    pruned: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long)]
    solution: PathBuf,
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[arg(long, default_value = "desk")]
    suite: String,
    /// Defaults to stdout.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Also write the widths of the reduced rectangle instances.
    #[arg(long)]
    widths: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct PlotArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    solution: Option<PathBuf>,
    /// Overlay the grid built for this k.
    #[arg(long)]
    grid_k: Option<usize>,
    /// Accuracy for the rectangle grid.
    #[arg(long, default_value_t = 0.5)]
    eps: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Failure modes mapped to exit codes: 1 for bad input or a failed check,
/// 2 when a budget cut the search short.
enum Outcome {
    Done,
    Partial,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("MISER_LOG", "warn")).init();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            warn!("thread pool: {e}");
        }
    }
    match run(cli.cmd) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::Partial) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            let budget = e.chain().any(|c| matches!(c.downcast_ref::<SolveError>(), Some(SolveError::BudgetExceeded { .. })));
            ExitCode::from(if budget { 2 } else { 1 })
        }
    }
}

fn run(cmd: Cmd) -> anyhow::Result<Outcome> {
    match cmd {
        Cmd::Gen(a) => {
            let inst = gen_instance(&GenParams { kind: a.kind, n: a.n, coord_max: a.coord_max, weights: a.weights, seed: a.seed });
            emit(a.out.as_deref(), &inst.to_json())?;
            Ok(Outcome::Done)
        }
        Cmd::SolveRect(a) => {
            let inst = InstanceFile::read(&a.input)?;
            let Items::Rect(rects) = &inst.items else { bail!("{}: solve-rect needs a rect instance", a.input.display()) };
            let mut cfg = RectConfig::default();
            if let Some(b) = a.budget {
                cfg.guess_cap = b;
            }
            let t = Instant::now();
            let rep = solve_rect_with(rects, a.k, a.eps, &cfg)?;
            info!("{:?}", rep.stats);
            let partial = rep.stats.aborted_branches > 0;
            if partial {
                warn!("{} branches hit the guess budget; the guarantee no longer holds", rep.stats.aborted_branches);
            }
            finish(&inst, &a.input, a.out.as_deref(), "rect-pas", a.k, Some(a.eps), &rep.solution, t, partial)
        }
        Cmd::SolveSeg(a) => {
            let inst = InstanceFile::read(&a.input)?;
            let Items::Seg(segs) = &inst.items else { bail!("{}: solve-seg needs a seg instance", a.input.display()) };
            let mut cfg = SegConfig::default();
            if let Some(b) = a.budget {
                cfg.family_cap = b;
            }
            let t = Instant::now();
            let (rep, algo) = match a.eps {
                Some(eps) => (solve_seg_pas_with(segs, a.k, eps, &cfg)?, "seg-pas"),
                None => (solve_exact_with(segs, a.k, &cfg)?, "seg-exact"),
            };
            info!("{:?}", rep.stats);
            let partial = rep.stats.aborted_branches > 0;
            if partial {
                warn!("{} branches hit the grid budget; the guarantee no longer holds", rep.stats.aborted_branches);
            }
            finish(&inst, &a.input, a.out.as_deref(), algo, a.k, a.eps, &rep.solution, t, partial)
        }
        Cmd::Exact(a) => {
            let inst = InstanceFile::read(&a.input)?;
            let t = Instant::now();
            let budget = a.budget.map(|max_subsets| OracleBudget { max_subsets }).unwrap_or_default();
            let sol = match (&inst.items, a.pruned) {
                (Items::Rect(v), false) => exact_mwis_with(v, a.k, budget)?,
                (Items::Seg(v), false) => exact_mwis_with(v, a.k, budget)?,
                (Items::Rect(v), true) => exact_mwis_pruned(v, a.k),
                (Items::Seg(v), true) => exact_mwis_pruned(v, a.k),
            };
            let algo = if a.pruned { "oracle-pruned" } else { "oracle" };
            finish(&inst, &a.input, a.out.as_deref(), algo, a.k, None, &sol, t, false)
        }
        Cmd::Verify(a) => {
            let inst = InstanceFile::read(&a.instance)?;
            let sol = SolutionFile::read(&a.solution)?;
            let issues = verify_solution(&inst, &sol);
            if issues.is_empty() {
                println!("ok: {} items, weight {}", sol.items.len(), sol.weight);
                return Ok(Outcome::Done);
            }
            for i in &issues {
                eprintln!("{i}");
            }
            bail!("{} problem(s) in {}", issues.len(), a.solution.display())
        }
        Cmd::Bench(a) => {
            let Some(spec) = suite(&a.suite) else { bail!("unknown suite `{}` (try `desk` or `smoke`)", a.suite) };
            let rep = run_suite(&spec)?;
            let mut buf = Vec::new();
            write_bench_csv(&rep.rows, &mut buf)?;
            emit(a.csv.as_deref(), std::str::from_utf8(&buf)?)?;
            if let Some(p) = &a.widths {
                let f = File::create(p).with_context(|| p.display().to_string())?;
                write_width_csv(&rep.widths, f)?;
            }
            if rep.aborted > 0 {
                warn!("{} runs hit a budget", rep.aborted);
                return Ok(Outcome::Partial);
            }
            Ok(Outcome::Done)
        }
        Cmd::Plot(a) => {
            let inst = InstanceFile::read(&a.input)?;
            let sol = a.solution.as_deref().map(SolutionFile::read).transpose()?;
            let grid = a.grid_k.and_then(|k| plot_grid(&inst, k, a.eps));
            let sol = sol.map(|s| Solution { items: s.items, weight: s.weight, branch: s.branch });
            emit(a.out.as_deref(), &emit_svg(&inst, grid.as_ref(), sol.as_ref()))?;
            Ok(Outcome::Done)
        }
    }
}

fn plot_grid(inst: &InstanceFile, k: usize, eps: f64) -> Option<Grid> {
    match &inst.items {
        Items::Rect(v) => match build_good_grid(v, k, eps) {
            GridOutcome::Grid(g) => Some(g),
            GridOutcome::Fallback(_) => {
                warn!("no small good grid for k={k}; plotting without one");
                None
            }
        },
        Items::Seg(v) => {
            let g = build_hitting_grid(v, k);
            if g.is_none() {
                warn!("no hitting grid with k={k} lines; plotting without one");
            }
            g
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn finish(
    inst: &InstanceFile,
    input: &Path,
    out: Option<&Path>,
    algo: &str,
    k: usize,
    eps: Option<f64>,
    sol: &Solution,
    started: Instant,
    partial: bool,
) -> anyhow::Result<Outcome> {
    let millis = started.elapsed().as_secs_f64() * 1e3;
    let file = SolutionFile::new(inst, &input.display().to_string(), algo, k, eps, sol, millis);
    emit(out, &file.to_json())?;
    Ok(if partial { Outcome::Partial } else { Outcome::Done })
}

fn emit(path: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| p.display().to_string()),
        None => io::stdout().lock().write_all(text.as_bytes()).context("stdout"),
    }
}
