//! Independent sets of at most `k` axis-parallel segments.
//!
//! [`solve_exact`] is optimal and runs in time exponential in `k` and the
//! number of distinct weights. [`solve_seg_pas`] rounds weights down to a
//! geometric scale first and loses at most an `eps` share of the optimum.

pub mod branch;
pub mod hitting;
pub mod nice;

use std::cmp::Ordering;
use std::collections::BTreeMap;

use log::{debug, warn};
use rayon::prelude::*;

use crate::error::SolveError;
use crate::geom::{verify_independent, Seg, Solution};

pub use branch::{grid_family, greedy_chain, reduce_ugliness};
pub use hitting::{build_hitting_grid, min_point_cover};
pub use nice::{realized_seg_types, solve_nice, SegCsp};

/// Weight scale. Class `i` stands for `values[i]`; values are descending.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightClasses {
    values: Vec<f64>,
}

impl WeightClasses {
    /// One class per distinct weight.
    pub fn from_weights(weights: impl IntoIterator<Item = f64>) -> Self {
        let mut values: Vec<f64> = weights.into_iter().collect();
        values.sort_by(|a, b| b.total_cmp(a));
        values.dedup();
        WeightClasses { values }
    }

    /// `top * (1 - eps)^i` for `i = 0..=⌈log_{1-eps}(eps/k)⌉`.
    pub fn geometric(top: f64, eps: f64, k: usize) -> Self {
        let steps = ((eps / k as f64).ln() / (1.0 - eps).ln() - 1e-9).ceil().max(0.0) as i32;
        WeightClasses { values: (0..=steps).map(|i| top * (1.0 - eps).powi(i)).collect() }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Index of the largest class value not exceeding `w`.
    pub fn class_of(&self, w: f64) -> Option<usize> {
        self.values.iter().position(|&v| v <= w)
    }
}

/// Order by weight, ties by id.
pub fn weight_cmp(a: &Seg, b: &Seg) -> Ordering {
    a.weight.total_cmp(&b.weight).then(a.id.cmp(&b.id))
}

pub fn weight_order(segs: &[Seg]) -> Vec<Seg> {
    let mut out = segs.to_vec();
    out.sort_by(weight_cmp);
    out
}

/// Drops segments heavier than `rmax` or of weight at most
/// `eps * w(rmax) / k`, then rounds each survivor down to its class value.
pub fn round_weights(segs: &[Seg], rmax: &Seg, eps: f64, k: usize) -> (Vec<Seg>, WeightClasses) {
    let classes = WeightClasses::geometric(rmax.weight, eps, k);
    let floor = eps * rmax.weight / k as f64;
    let rounded = segs
        .iter()
        .filter(|s| s.id == rmax.id || (s.weight > floor && s.weight <= rmax.weight))
        .filter_map(|s| classes.class_of(s.weight).map(|c| s.with_weight(classes.values[c])))
        .collect();
    (rounded, classes)
}

#[derive(Clone, Debug)]
pub struct SegConfig {
    /// Grids allowed in one branch's family before the branch aborts.
    pub family_cap: usize,
}

impl Default for SegConfig {
    fn default() -> Self {
        SegConfig { family_cap: 1_000_000 }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SegStats {
    pub rmin_branches: usize,
    /// Branches with no small hitting grid.
    pub rejected_branches: usize,
    pub aborted_branches: usize,
    pub grids: usize,
    pub type_guesses: u64,
}

impl SegStats {
    fn merge(mut self, o: SegStats) -> SegStats {
        self.rmin_branches += o.rmin_branches;
        self.rejected_branches += o.rejected_branches;
        self.aborted_branches += o.aborted_branches;
        self.grids += o.grids;
        self.type_guesses += o.type_guesses;
        self
    }
}

#[derive(Clone, Debug)]
pub struct SegReport {
    pub solution: Solution,
    pub stats: SegStats,
}

fn check_k(k: usize) -> Result<(), SolveError> {
    if k == 0 {
        return Err(SolveError::InvalidParameter("k must be at least 1".into()));
    }
    Ok(())
}

pub fn solve_exact(segs: &[Seg], k: usize) -> Result<Solution, SolveError> {
    solve_exact_with(segs, k, &SegConfig::default()).map(|r| r.solution)
}

/// Optimum of at most `k` pairwise disjoint segments, scored with the
/// segments' own weights.
pub fn solve_exact_with(segs: &[Seg], k: usize, cfg: &SegConfig) -> Result<SegReport, SolveError> {
    check_k(k)?;
    let classes = WeightClasses::from_weights(segs.iter().map(|s| s.weight));
    let order = weight_order(segs);
    let results: Vec<Result<(Solution, SegStats), SolveError>> =
        (0..order.len()).into_par_iter().map(|i| rmin_branch(&order[i..], &classes, k, cfg)).collect();
    let mut best = Solution::empty("empty");
    let mut stats = SegStats::default();
    for r in results {
        let (sol, st) = r?;
        best = best.best(sol);
        stats = stats.merge(st);
    }
    Ok(SegReport { solution: best, stats })
}

/// `rest[0]` is the guessed lightest member of the optimum; `rest` holds it
/// and everything after it in weight order.
fn rmin_branch(rest: &[Seg], classes: &WeightClasses, k: usize, cfg: &SegConfig) -> Result<(Solution, SegStats), SolveError> {
    let rmin = rest[0].id;
    let mut stats = SegStats { rmin_branches: 1, ..Default::default() };
    let Some(base) = build_hitting_grid(rest, k) else {
        stats.rejected_branches = 1;
        return Ok((Solution::empty(format!("rmin={rmin}/rejected")), stats));
    };
    let base = base.enclose(rest);
    let family = match grid_family(rest, classes, k, &base, cfg.family_cap) {
        Ok(f) => f,
        Err(SolveError::BudgetExceeded { count, cap, .. }) => {
            warn!("rmin={rmin}: grid family reached {count} grids (cap {cap}), abandoning this branch");
            stats.aborted_branches = 1;
            return Ok((Solution::empty(format!("rmin={rmin}/aborted")), stats));
        }
        Err(e) => return Err(e),
    };
    stats.grids = family.len();
    let solved: Vec<(Solution, u64)> =
        family.par_iter().map(|g| nice::solve_nice_counted(rest, classes, k, g)).collect();
    let mut best = Solution::empty(format!("rmin={rmin}/empty"));
    for (i, (mut sol, guesses)) in solved.into_iter().enumerate() {
        stats.type_guesses += guesses;
        sol.branch = format!("rmin={rmin}/grid={i}/{}", sol.branch);
        let picked: Vec<Seg> = sol.resolve(rest).expect("solution ids come from the branch").into_iter().copied().collect();
        if !verify_independent(&picked) || picked.len() > k {
            return Err(SolveError::NotIndependent(sol.branch));
        }
        best = best.best(sol);
    }
    debug!("rmin={rmin}: {} grids, best {}", family.len(), best.weight);
    Ok((best, stats))
}

pub fn solve_seg_pas(segs: &[Seg], k: usize, eps: f64) -> Result<Solution, SolveError> {
    solve_seg_pas_with(segs, k, eps, &SegConfig::default()).map(|r| r.solution)
}

/// Rounds weights for every guess of the heaviest optimum member, solves the
/// rounded instance exactly with half the budget and rescores with the
/// original weights.
pub fn solve_seg_pas_with(segs: &[Seg], k: usize, eps: f64, cfg: &SegConfig) -> Result<SegReport, SolveError> {
    check_k(k)?;
    if !(eps > 0.0 && eps < 1.0) {
        return Err(SolveError::InvalidParameter(format!("eps must lie in (0, 1), got {eps}")));
    }
    let half = eps / 2.0;
    let by_id: BTreeMap<u32, Seg> = segs.iter().map(|s| (s.id, *s)).collect();
    let mut order: Vec<&Seg> = segs.iter().collect();
    order.sort_by_key(|s| s.id);
    let results: Vec<Result<(Solution, SegStats), SolveError>> = order
        .par_iter()
        .map(|rmax| {
            let (rounded, _) = round_weights(segs, rmax, half, k);
            let rep = solve_exact_with(&rounded, k, cfg)?;
            let picked: Vec<Seg> = rep.solution.items.iter().map(|id| by_id[id]).collect();
            Ok((Solution::from_items(&picked, format!("rmax={}/{}", rmax.id, rep.solution.branch)), rep.stats))
        })
        .collect();
    let mut best = Solution::empty("empty");
    let mut stats = SegStats::default();
    for r in results {
        let (sol, st) = r?;
        best = best.best(sol);
        stats = stats.merge(st);
    }
    Ok(SegReport { solution: best, stats })
}
