//! Adding lines until some optimum solution has a grid point on every
//! segment.
//!
//! Each step guesses the types of the already nice part `N` of an optimum
//! solution together with the type of its heaviest non-nice segment. The
//! nice part is re-placed greedily so that it leaves as much room as possible
//! around where the heavy segment must lie, and lines through the
//! remaining candidates for that segment are added.

use std::collections::{BTreeMap, BTreeSet};

use log::{debug, warn};
use rayon::prelude::*;

use crate::ctype::{CompatibleSubsets, SegType};
use crate::error::SolveError;
use crate::geom::{segs_intersect, Coord, Orientation, Seg};
use crate::grid::Grid;

use super::nice::{chains, realized_seg_types, track, SegCsp};
use super::WeightClasses;

/// Greedy placement on one run of neighbouring types (sorted along their
/// line) around the gap between line indices `g` and `g + 1`. Types below
/// the gap are filled from the far end with the lowest possible upper ends,
/// types above it with the highest possible lower ends. Returns `None` if a
/// type straddles the gap or runs out of room.
pub fn greedy_chain(types: &[SegType], cands: &[&[Seg]], g: usize) -> Option<Vec<Seg>> {
    let mut picks: Vec<Option<Seg>> = vec![None; types.len()];
    let mut low = Vec::new();
    let mut high = Vec::new();
    for (i, t) in types.iter().enumerate() {
        let (_, _, start, end) = track(t);
        if end <= g + 1 {
            low.push(i);
        } else if start > g {
            high.push(i);
        } else {
            return None;
        }
    }
    let mut bound: Option<Coord> = None;
    for &i in &low {
        let pick = cands[i]
            .iter()
            .filter(|s| bound.map_or(true, |b| s.lo > b))
            .min_by_key(|s| (s.hi, s.id))?;
        bound = Some(pick.hi);
        picks[i] = Some(*pick);
    }
    let mut bound: Option<Coord> = None;
    for &i in high.iter().rev() {
        let pick = cands[i]
            .iter()
            .filter(|s| bound.map_or(true, |b| s.hi < b))
            .min_by_key(|s| (std::cmp::Reverse(s.lo), s.id))?;
        bound = Some(pick.lo);
        picks[i] = Some(*pick);
    }
    if let (Some(&a), Some(&b)) = (low.last(), high.first()) {
        if track(&types[a]).3 == track(&types[b]).2 && segs_intersect(&picks[a]?, &picks[b]?) {
            return None;
        }
    }
    picks.into_iter().collect()
}

/// What one branching step needs about an instance and a grid.
struct Frame<'a> {
    segs: &'a [Seg],
    grid: &'a Grid,
    classes: &'a WeightClasses,
    realized: BTreeMap<SegType, Vec<Seg>>,
}

impl<'a> Frame<'a> {
    fn new(segs: &'a [Seg], grid: &'a Grid, classes: &'a WeightClasses) -> Self {
        Frame { segs, grid, classes, realized: realized_seg_types(segs, classes, grid) }
    }

    fn cands(&self, t: &SegType) -> &[Seg] {
        self.realized.get(t).map_or(&[], Vec::as_slice)
    }

    /// Places the guessed nice types, running the greedy on the runs that
    /// `greedy_gap` selects and an exact solve on the rest.
    fn place(&self, types: &[SegType], greedy_gap: impl Fn(&[SegType]) -> Option<usize>) -> Option<Vec<Seg>> {
        let mut placed = Vec::with_capacity(types.len());
        let mut rest = Vec::new();
        for run in chains(types) {
            let run_types: Vec<SegType> = run.iter().map(|&i| types[i]).collect();
            match greedy_gap(&run_types) {
                Some(g) => {
                    let cands: Vec<&[Seg]> = run_types.iter().map(|t| self.cands(t)).collect();
                    placed.extend(greedy_chain(&run_types, &cands, g)?);
                }
                None => rest.extend(run_types),
            }
        }
        if !rest.is_empty() {
            placed.extend(SegCsp::new(&rest, &self.realized).solve()?);
        }
        Some(placed)
    }

    /// New lines for one guess with a horizontal heavy type `tmax`, as
    /// `(vertical x's, horizontal y's)`.
    fn lines_for(&self, types: &[SegType], tmax: &SegType, budget: usize) -> Option<(Vec<Coord>, Vec<Coord>)> {
        debug_assert_eq!(tmax.orientation, Orientation::Horizontal);
        let xs = self.grid.xs();
        let ys = self.grid.ys();
        if tmax.up == tmax.down + 1 {
            // strictly inside a horizontal strip: runs on vertical lines
            // crossing the box from its bottom or top side get the greedy
            let placed = self.place(types, |run| {
                let (o, line, start, _) = track(&run[0]);
                let end = track(run.last().unwrap()).3;
                let crosses = o == Orientation::Vertical && tmax.left < line && line < tmax.right;
                let reaches = (start..end).contains(&tmax.down) || (start..end).contains(&tmax.up);
                (crosses && reaches).then_some(tmax.down)
            })?;
            let mut rows: Vec<Coord> = self
                .cands(tmax)
                .iter()
                .filter(|s| placed.iter().all(|p| !segs_intersect(s, p)))
                .map(|s| s.at)
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            rows.truncate(budget);
            Some((Vec::new(), rows))
        } else {
            // on the grid line between `down` and `up`, inside one cell side
            let m = tmax.down + 1;
            let placed = self.place(types, |run| {
                let (o, line, start, _) = track(&run[0]);
                let end = track(run.last().unwrap()).3;
                let reaches = (start..end).contains(&tmax.left) || (start..end).contains(&tmax.right);
                (o == Orientation::Horizontal && line == m && reaches).then_some(tmax.left)
            })?;
            let y = ys[m];
            let (mut a, mut b) = (xs[tmax.left], xs[tmax.right]);
            for p in placed.iter().filter(|p| p.is_horizontal() && p.at == y) {
                if p.lo <= a && a <= p.hi {
                    a = a.max(p.hi);
                }
                if p.lo <= b && b <= p.hi {
                    b = b.min(p.lo);
                }
            }
            if a >= b {
                return None;
            }
            let mut inside: Vec<&Seg> = self
                .segs
                .iter()
                .filter(|s| s.is_horizontal() && s.at == y && a < s.lo && s.hi < b)
                .filter(|s| self.classes.class_of(s.weight) == Some(tmax.class))
                .collect();
            inside.sort_by_key(|s| (s.hi, s.id));
            let mut cols = Vec::new();
            for s in inside {
                if cols.last().map_or(true, |&last| s.lo > last) {
                    cols.push(s.hi);
                }
            }
            cols.truncate(budget);
            Some((cols, Vec::new()))
        }
    }
}

/// One round of line additions. Every returned grid contains `grid` and at
/// most `k` more lines; if some optimum solution has a segment without a
/// grid point, some returned grid gives one more of its segments a grid
/// point (or gives all of a different optimum solution one).
pub fn reduce_ugliness(segs: &[Seg], classes: &WeightClasses, k: usize, grid: &Grid) -> Vec<Grid> {
    let frame = Frame::new(segs, grid, classes);
    let t_segs: Vec<Seg> = segs.iter().map(Seg::transposed).collect();
    let t_grid = grid.transposed();
    let t_frame = Frame::new(&t_segs, &t_grid, classes);

    let nice: Vec<SegType> = frame.realized.keys().filter(|t| t.is_nice()).copied().collect();
    let ugly: Vec<SegType> = frame.realized.keys().filter(|t| !t.is_nice()).copied().collect();
    let mut out = BTreeSet::new();
    if ugly.is_empty() {
        return Vec::new();
    }
    let subsets = CompatibleSubsets::new(nice.len(), k.saturating_sub(1), |a, b| {
        nice[a].points().is_disjoint(&nice[b].points())
    });
    for idx in subsets {
        let types: Vec<SegType> = idx.iter().map(|&i| nice[i]).collect();
        let t_types: Vec<SegType> = types.iter().map(SegType::transposed).collect();
        let budget = k - types.len();
        for tmax in &ugly {
            let lines = match tmax.orientation {
                Orientation::Horizontal => frame.lines_for(&types, tmax, budget),
                Orientation::Vertical => {
                    t_frame.lines_for(&t_types, &tmax.transposed(), budget).map(|(vx, hy)| (hy, vx))
                }
            };
            if let Some((vx, hy)) = lines {
                out.insert(grid.with_lines(vx, hy));
            }
        }
    }
    out.into_iter().collect()
}

/// Grids reachable from `grid` in at most `k` rounds of
/// [`reduce_ugliness`], `grid` included, without repeats.
pub fn grid_family(segs: &[Seg], classes: &WeightClasses, k: usize, grid: &Grid, cap: usize) -> Result<Vec<Grid>, SolveError> {
    let mut seen: BTreeSet<Grid> = BTreeSet::from([grid.clone()]);
    let mut frontier = vec![grid.clone()];
    for round in 0..k {
        if frontier.is_empty() {
            break;
        }
        let expanded: Vec<Vec<Grid>> = frontier.par_iter().map(|g| reduce_ugliness(segs, classes, k, g)).collect();
        let mut next = Vec::new();
        for g in expanded.into_iter().flatten() {
            if seen.insert(g.clone()) {
                next.push(g);
            }
        }
        if seen.len() > cap {
            warn!("grid family exceeds the cap of {cap} in round {}", round + 1);
            return Err(SolveError::BudgetExceeded { what: "grid family", count: seen.len() as u128, cap: cap as u128 });
        }
        debug!("grid family round {}: {} new, {} total", round + 1, next.len(), seen.len());
        frontier = next;
    }
    Ok(seen.into_iter().collect())
}
