//! Benchmark suites: every solver on seeded instances, scored against the
//! oracle, plus the widths of the reduced constraint instances.

use std::io::Write;
use std::time::Instant;

use serde::Serialize;

use crate::error::SolveError;
use crate::oracle::exact_mwis;
use crate::rect::{layer_count, solve_rect_with, RectConfig};
use crate::seg::{solve_exact_with, solve_seg_pas_with, SegConfig};

use super::format::{InstanceFile, Items, Kind};
use super::gen::{gen_instance, GenParams, WeightSpec};

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteSpec {
    pub name: &'static str,
    pub instances: usize,
    pub n: usize,
    pub ks: Vec<usize>,
    pub epss: Vec<f64>,
    pub seed: u64,
}

/// `desk`: 10 rectangle and 10 segment instances of 12 items, `k` up to 3.
/// `smoke`: a handful of tiny instances for quick checks.
pub fn suite(name: &str) -> Option<SuiteSpec> {
    match name {
        "desk" => Some(SuiteSpec { name: "desk", instances: 10, n: 12, ks: vec![1, 2, 3], epss: vec![0.3, 0.5], seed: 2024 }),
        "smoke" => Some(SuiteSpec { name: "smoke", instances: 2, n: 6, ks: vec![1, 2], epss: vec![0.5], seed: 1 }),
        _ => None,
    }
}

pub fn suite_instances(spec: &SuiteSpec) -> Vec<(String, InstanceFile)> {
    let mut out = Vec::new();
    for i in 0..spec.instances {
        let seed = spec.seed + i as u64;
        let rect = GenParams { kind: Kind::Rect, n: spec.n, coord_max: 100, weights: WeightSpec::Range(1, 20), seed };
        out.push((format!("{}-rect-{i:02}", spec.name), gen_instance(&rect)));
    }
    for i in 0..spec.instances {
        let seed = spec.seed + 1000 + i as u64;
        let weights = if i % 2 == 0 { WeightSpec::Classes(vec![1.0, 2.0, 3.0, 5.0]) } else { WeightSpec::Range(1, 50) };
        let seg = GenParams { kind: Kind::Seg, n: spec.n, coord_max: 60, weights, seed };
        out.push((format!("{}-seg-{i:02}", spec.name), gen_instance(&seg)));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub instance: String,
    pub algo: String,
    pub k: usize,
    pub eps: Option<f64>,
    pub weight: f64,
    pub opt: Option<f64>,
    pub ratio: Option<f64>,
    pub millis: f64,
}

/// How many reduced instances of one rectangle run had a given min-fill
/// width, next to the number of layers kept between deletions.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WidthRow {
    pub instance: String,
    pub k: usize,
    pub eps: f64,
    pub layers: usize,
    pub width: usize,
    pub count: usize,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    pub widths: Vec<WidthRow>,
    /// Runs that hit a budget and returned a partial answer.
    pub aborted: usize,
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed().as_secs_f64() * 1e3)
}

fn row(instance: &str, algo: &str, k: usize, eps: Option<f64>, weight: f64, opt: Option<f64>, millis: f64) -> BenchRow {
    let ratio = opt.map(|o| if o > 0.0 { weight / o } else { 1.0 });
    BenchRow { instance: instance.to_string(), algo: algo.to_string(), k, eps, weight, opt, ratio, millis }
}

pub fn run_suite(spec: &SuiteSpec) -> Result<BenchReport, SolveError> {
    run_instances(&suite_instances(spec), &spec.ks, &spec.epss)
}

pub fn run_instances(instances: &[(String, InstanceFile)], ks: &[usize], epss: &[f64]) -> Result<BenchReport, SolveError> {
    let mut rep = BenchReport::default();
    for (name, inst) in instances {
        for &k in ks {
            let opt = match &inst.items {
                Items::Rect(v) => exact_mwis(v, k),
                Items::Seg(v) => exact_mwis(v, k),
            };
            let opt = match opt {
                Ok(s) => Some(s.weight),
                Err(SolveError::BudgetExceeded { .. }) => None,
                Err(e) => return Err(e),
            };
            match &inst.items {
                Items::Rect(v) => {
                    for &eps in epss {
                        let (r, ms) = timed(|| solve_rect_with(v, k, eps, &RectConfig::default()));
                        let r = r?;
                        rep.aborted += r.stats.aborted_branches.min(1);
                        rep.rows.push(row(name, "rect-pas", k, Some(eps), r.solution.weight, opt, ms));
                        for (&width, &count) in &r.stats.widths {
                            let layers = layer_count(eps / 2.0);
                            rep.widths.push(WidthRow { instance: name.clone(), k, eps, layers, width, count });
                        }
                    }
                }
                Items::Seg(v) => {
                    let (r, ms) = timed(|| solve_exact_with(v, k, &SegConfig::default()));
                    let r = r?;
                    rep.aborted += r.stats.aborted_branches.min(1);
                    rep.rows.push(row(name, "seg-exact", k, None, r.solution.weight, opt, ms));
                    for &eps in epss {
                        let (r, ms) = timed(|| solve_seg_pas_with(v, k, eps, &SegConfig::default()));
                        let r = r?;
                        rep.aborted += r.stats.aborted_branches.min(1);
                        rep.rows.push(row(name, "seg-pas", k, Some(eps), r.solution.weight, opt, ms));
                    }
                }
            }
        }
    }
    Ok(rep)
}

fn write_rows<T: Serialize>(rows: &[T], header: &[&str], out: impl Write) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(header)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub const BENCH_COLUMNS: [&str; 8] = ["instance", "algo", "k", "eps", "weight", "opt", "ratio", "millis"];
pub const WIDTH_COLUMNS: [&str; 6] = ["instance", "k", "eps", "layers", "width", "count"];

pub fn write_bench_csv(rows: &[BenchRow], out: impl Write) -> csv::Result<()> {
    write_rows(rows, &BENCH_COLUMNS, out)
}

pub fn write_width_csv(rows: &[WidthRow], out: impl Write) -> csv::Result<()> {
    write_rows(rows, &WIDTH_COLUMNS, out)
}
