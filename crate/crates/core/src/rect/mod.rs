//! `(1 - eps)`-approximation for weighted independent sets of rectangles.
//!
//! For every guess of the heaviest rectangle of an optimum solution the
//! instance is cut to a weight band, a small grid that stabs every remaining
//! rectangle is built (or a heavy independent set is returned outright), the
//! types of the optimum's rectangles are guessed, and each guess becomes a
//! constraint instance solved after layered deletion.
//!
//! The output is always an independent set; it can hold more than `k`
//! rectangles only when it comes from the grid construction.

pub mod baker;

use std::collections::BTreeMap;

use log::{debug, warn};
use rayon::prelude::*;

use crate::ctype::{enumerate_type_guesses, realized_types, CombType, TypeGuess};
use crate::error::SolveError;
use crate::geom::{rects_intersect, verify_independent, Rect, Solution};
use crate::grid::Grid;
use crate::vcsp::{Revenue, VcspInstance};

pub use baker::{baker_split, layer_count, solve_layered, BakerComponent, BakerVariant, LayeredSolve};

#[derive(Clone, Debug)]
pub struct RectConfig {
    /// Type guesses allowed per heaviest-rectangle branch before it aborts.
    pub guess_cap: u64,
}

impl Default for RectConfig {
    fn default() -> Self {
        RectConfig { guess_cap: 10_000_000 }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct RectStats {
    pub rmax_branches: usize,
    pub fallback_branches: usize,
    pub type_guesses: u64,
    pub aborted_branches: usize,
    /// Histogram of min-fill widths over all reduced instances.
    pub widths: BTreeMap<usize, usize>,
}

impl RectStats {
    fn merge(mut self, other: RectStats) -> RectStats {
        self.rmax_branches += other.rmax_branches;
        self.fallback_branches += other.fallback_branches;
        self.type_guesses += other.type_guesses;
        self.aborted_branches += other.aborted_branches;
        for (w, c) in other.widths {
            *self.widths.entry(w).or_default() += c;
        }
        self
    }
}

#[derive(Clone, Debug)]
pub struct RectReport {
    pub solution: Solution,
    pub stats: RectStats,
}

/// Keeps rectangles with `eps * w(rmax) / k < w <= w(rmax)`.
pub fn preprocess(rects: &[Rect], rmax: &Rect, eps: f64, k: usize) -> Vec<Rect> {
    let floor = eps * rmax.weight / k as f64;
    rects
        .iter()
        .filter(|r| r.id == rmax.id || (r.weight > floor && r.weight <= rmax.weight))
        .copied()
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub enum GridOutcome {
    /// Every input rectangle contains a grid point.
    Grid(Grid),
    /// Pairwise disjoint rectangles picked by the longer sweep.
    Fallback(Solution),
}

/// Lines allowed by the grid construction: `2k²/eps`.
pub fn grid_bound(k: usize, eps: f64) -> f64 {
    2.0 * (k * k) as f64 / eps
}

/// Greedy stabbing sweep along one axis. `key` gives each rectangle's
/// `(lo, hi)` extent on the axis; the reference point is the `hi` end.
/// Returns the chosen line positions and the rectangles that produced them.
fn sweep(rects: &[Rect], key: impl Fn(&Rect) -> (i64, i64)) -> (Vec<i64>, Vec<Rect>) {
    let mut order: Vec<&Rect> = rects.iter().collect();
    order.sort_by_key(|r| (key(r).1, r.id));
    let mut alive = vec![true; order.len()];
    let mut lines = Vec::new();
    let mut picked = Vec::new();
    for i in 0..order.len() {
        if !alive[i] {
            continue;
        }
        let line = key(order[i]).1;
        lines.push(line);
        picked.push(*order[i]);
        // every survivor has hi >= line, so it meets the line iff lo <= line
        for j in i..order.len() {
            if alive[j] && key(order[j]).0 <= line {
                alive[j] = false;
            }
        }
    }
    (lines, picked)
}

/// Builds a grid in which every rectangle of `rects` contains a grid point
/// when at most `2k²/eps` lines suffice; otherwise returns the selected
/// rectangles of the sweep with more lines, which are pairwise disjoint and,
/// given weights within a factor `eps/k` of each other, weigh at least
/// `opt_k`.
pub fn build_good_grid(rects: &[Rect], k: usize, eps: f64) -> GridOutcome {
    let (xs, ver) = sweep(rects, |r| (r.x1, r.x2));
    let (ys, hor) = sweep(rects, |r| (r.y1, r.y2));
    if (xs.len() + ys.len()) as f64 <= grid_bound(k, eps) {
        GridOutcome::Grid(Grid::new(xs, ys))
    } else if ver.len() >= hor.len() {
        GridOutcome::Fallback(Solution::from_items(&ver, "grid-fallback/vertical"))
    } else {
        GridOutcome::Fallback(Solution::from_items(&hor, "grid-fallback/horizontal"))
    }
}

/// Constraint instance for one type guess. Variable `i` stands for
/// `types[i]`; its value 0 means "no rectangle", value `j + 1` picks
/// `candidates[i][j]`.
#[derive(Clone, Debug)]
pub struct RectCsp {
    pub types: Vec<CombType>,
    pub candidates: Vec<Vec<Rect>>,
    pub instance: VcspInstance,
}

impl RectCsp {
    pub fn bottom(&self) -> Vec<usize> {
        vec![0; self.types.len()]
    }

    pub fn decode(&self, assignment: &[usize]) -> Vec<Rect> {
        assignment
            .iter()
            .enumerate()
            .filter(|(_, &a)| a > 0)
            .map(|(i, &a)| self.candidates[i][a - 1])
            .collect()
    }

    /// Assignment picking exactly the given rectangles, each of which must be
    /// a candidate of a distinct variable.
    pub fn encode(&self, picks: &[Rect]) -> Option<Vec<usize>> {
        let mut a = self.bottom();
        for p in picks {
            let (i, j) = self
                .candidates
                .iter()
                .enumerate()
                .find_map(|(i, c)| c.iter().position(|r| r.id == p.id).map(|j| (i, j)))?;
            if a[i] != 0 {
                return None;
            }
            a[i] = j + 1;
        }
        Some(a)
    }
}

/// One variable per guessed type with the matching rectangles plus "none"
/// as domain; revenue is the picked weight. Types with adjacent grid points
/// get a hard constraint forbidding intersecting picks.
pub fn build_vcsp(guess: &TypeGuess, realized: &BTreeMap<CombType, Vec<Rect>>) -> Result<RectCsp, SolveError> {
    let mut instance = VcspInstance::new();
    let mut candidates = Vec::with_capacity(guess.types.len());
    for t in &guess.types {
        let cands = realized
            .get(t)
            .filter(|c| !c.is_empty())
            .ok_or_else(|| SolveError::InvalidParameter(format!("type {t:?} has no candidate rectangles")))?
            .clone();
        let mut unary = vec![Revenue::ZERO];
        unary.extend(cands.iter().map(|r| Revenue::Finite(r.weight)));
        instance.add_variable(unary);
        candidates.push(cands);
    }
    for i in 0..guess.types.len() {
        for j in i + 1..guess.types.len() {
            if guess.types[i].touches(&guess.types[j]) {
                let (ci, cj) = (candidates[i].clone(), candidates[j].clone());
                instance.add_hard(i, j, move |a, b| a == 0 || b == 0 || !rects_intersect(&ci[a - 1], &cj[b - 1]));
            }
        }
    }
    Ok(RectCsp { types: guess.types.clone(), candidates, instance })
}

fn check_params(k: usize, eps: f64) -> Result<(), SolveError> {
    if k == 0 {
        return Err(SolveError::InvalidParameter("k must be at least 1".into()));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(SolveError::InvalidParameter(format!("eps must lie in (0, 1), got {eps}")));
    }
    Ok(())
}

pub fn solve_rect(rects: &[Rect], k: usize, eps: f64) -> Result<Solution, SolveError> {
    solve_rect_with(rects, k, eps, &RectConfig::default()).map(|r| r.solution)
}

/// Full pipeline. The budget `eps` is split evenly between the weight band
/// and the layered deletion.
pub fn solve_rect_with(rects: &[Rect], k: usize, eps: f64, cfg: &RectConfig) -> Result<RectReport, SolveError> {
    check_params(k, eps)?;
    let half = eps / 2.0;
    let mut order: Vec<&Rect> = rects.iter().collect();
    order.sort_by_key(|r| r.id);
    let results: Vec<Result<(Solution, RectStats), SolveError>> =
        order.par_iter().map(|rmax| rmax_branch(rects, rmax, k, half, cfg)).collect();
    let mut best = Solution::empty("empty");
    let mut stats = RectStats::default();
    for res in results {
        let (sol, st) = res?;
        best = best.best(sol);
        stats = stats.merge(st);
    }
    Ok(RectReport { solution: best, stats })
}

fn rmax_branch(
    rects: &[Rect],
    rmax: &Rect,
    k: usize,
    eps: f64,
    cfg: &RectConfig,
) -> Result<(Solution, RectStats), SolveError> {
    let mut stats = RectStats { rmax_branches: 1, ..Default::default() };
    let band = preprocess(rects, rmax, eps, k);
    let grid = match build_good_grid(&band, k, eps) {
        GridOutcome::Fallback(mut sol) => {
            sol.branch = format!("rmax={}/{}", rmax.id, sol.branch);
            stats.fallback_branches = 1;
            let picked = sol.resolve(&band).expect("fallback picks come from the band");
            let picked: Vec<Rect> = picked.into_iter().copied().collect();
            if !verify_independent(&picked) {
                return Err(SolveError::NotIndependent(sol.branch));
            }
            return Ok((sol, stats));
        }
        GridOutcome::Grid(g) => g,
    };
    let realized = realized_types(&band, &grid);
    let keys: Vec<CombType> = realized.keys().copied().collect();
    let mut best = Solution::empty(format!("rmax={}/empty", rmax.id));
    for guess in enumerate_type_guesses(&keys, k) {
        stats.type_guesses += 1;
        if stats.type_guesses > cfg.guess_cap {
            warn!(
                "rmax={}: type guesses exceed the cap of {}, abandoning this branch",
                rmax.id, cfg.guess_cap
            );
            stats.aborted_branches = 1;
            break;
        }
        if guess.types.is_empty() {
            continue;
        }
        let csp = build_vcsp(&guess, &realized)?;
        let layered = solve_layered(&csp.instance, eps, &csp.bottom());
        for w in &layered.widths {
            *stats.widths.entry(*w).or_default() += 1;
        }
        let picked = csp.decode(&layered.assignment);
        let tag = format!("rmax={}/types={}/r={:?}", rmax.id, guess.types.len(), layered.residues);
        if !verify_independent(&picked) {
            return Err(SolveError::NotIndependent(tag));
        }
        let sol = Solution::from_items(&picked, tag);
        debug_assert!((Revenue::Finite(sol.weight)).reaches(layered.revenue));
        best = best.best(sol);
    }
    debug!("rmax={} grid={} lines, {} realized types, best {}", rmax.id, grid.size(), keys.len(), best.weight);
    Ok((best, stats))
}
