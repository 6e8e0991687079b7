//! Exact solve on a grid that contains a point of every segment of some
//! optimum solution.
//!
//! Once the types are fixed, two chosen segments can only meet when they
//! lie on the same grid line with neighbouring point intervals, so the
//! constraint graph is a union of paths.

use std::collections::BTreeMap;

use crate::ctype::{seg_type, CompatibleSubsets, SegType};
use crate::geom::{segs_intersect, verify_independent, Orientation, Seg, Solution};
use crate::grid::Grid;
use crate::vcsp::{solve_min_fill, Revenue, VcspInstance};

use super::WeightClasses;

/// Groups segments by type. Segments the grid does not enclose, or whose
/// weight falls below every class, are left out.
pub fn realized_seg_types(segs: &[Seg], classes: &WeightClasses, grid: &Grid) -> BTreeMap<SegType, Vec<Seg>> {
    let mut out: BTreeMap<SegType, Vec<Seg>> = BTreeMap::new();
    for s in segs {
        let Some(class) = classes.class_of(s.weight) else { continue };
        if let Some(t) = seg_type(grid, s, class) {
            out.entry(t).or_default().push(*s);
        }
    }
    for v in out.values_mut() {
        v.sort_by_key(|s| s.id);
    }
    out
}

/// Line index and half-open point range along the line of a nice type.
pub(crate) fn track(t: &SegType) -> (Orientation, usize, usize, usize) {
    let p = t.points();
    match t.orientation {
        Orientation::Horizontal => (t.orientation, p.y0, p.x0, p.x1),
        Orientation::Vertical => (t.orientation, p.x0, p.y0, p.y1),
    }
}

/// Point ranges on one line that follow each other without a gap.
pub(crate) fn neighbours(a: &SegType, b: &SegType) -> bool {
    let (oa, la, sa, ea) = track(a);
    let (ob, lb, sb, eb) = track(b);
    oa == ob && la == lb && (ea == sb || eb == sa)
}

/// Maximal runs of neighbouring types, each sorted along its line. Returns
/// indices into `types`.
pub(crate) fn chains(types: &[SegType]) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..types.len()).collect();
    order.sort_by_key(|&i| track(&types[i]));
    let mut out: Vec<Vec<usize>> = Vec::new();
    for i in order {
        match out.last_mut() {
            Some(run) if neighbours(&types[*run.last().unwrap()], &types[i]) => run.push(i),
            _ => out.push(vec![i]),
        }
    }
    out
}

/// Constraint instance for a guess of nice types: one variable per type,
/// its segments as domain, weight as revenue, and a hard disjointness
/// constraint between neighbouring types.
#[derive(Clone, Debug)]
pub struct SegCsp {
    pub types: Vec<SegType>,
    pub candidates: Vec<Vec<Seg>>,
    pub instance: VcspInstance,
}

impl SegCsp {
    pub fn new(types: &[SegType], realized: &BTreeMap<SegType, Vec<Seg>>) -> SegCsp {
        let mut instance = VcspInstance::new();
        let mut candidates = Vec::with_capacity(types.len());
        for t in types {
            let cands = realized.get(t).cloned().unwrap_or_default();
            instance.add_variable(cands.iter().map(|s| Revenue::Finite(s.weight)).collect());
            candidates.push(cands);
        }
        for i in 0..types.len() {
            for j in i + 1..types.len() {
                if neighbours(&types[i], &types[j]) {
                    let (ci, cj) = (candidates[i].clone(), candidates[j].clone());
                    instance.add_hard(i, j, move |a, b| !segs_intersect(&ci[a], &cj[b]));
                }
            }
        }
        SegCsp { types: types.to_vec(), candidates, instance }
    }

    /// Best assignment, or `None` when some type has no candidates or every
    /// assignment breaks a constraint.
    pub fn solve(&self) -> Option<Vec<Seg>> {
        if self.candidates.iter().any(Vec::is_empty) {
            return None;
        }
        let (rev, a, _) = solve_min_fill(&self.instance);
        if !rev.is_finite() {
            return None;
        }
        Some(a.iter().enumerate().map(|(i, &v)| self.candidates[i][v]).collect())
    }
}

/// Best solution over all guesses of at most `k` nice types with pairwise
/// disjoint point sets. Sound on any grid; optimal when some optimum
/// solution has a grid point on each of its segments.
pub fn solve_nice(segs: &[Seg], classes: &WeightClasses, k: usize, grid: &Grid) -> Solution {
    solve_nice_counted(segs, classes, k, grid).0
}

pub(crate) fn solve_nice_counted(segs: &[Seg], classes: &WeightClasses, k: usize, grid: &Grid) -> (Solution, u64) {
    let realized = realized_seg_types(segs, classes, grid);
    let nice: Vec<SegType> = realized.keys().filter(|t| t.is_nice()).copied().collect();
    let mut best = Solution::empty("nice/empty");
    let mut guesses = 0;
    for idx in CompatibleSubsets::new(nice.len(), k, |a, b| nice[a].points().is_disjoint(&nice[b].points())) {
        guesses += 1;
        if idx.is_empty() {
            continue;
        }
        let types: Vec<SegType> = idx.iter().map(|&i| nice[i]).collect();
        let Some(picked) = SegCsp::new(&types, &realized).solve() else { continue };
        assert!(verify_independent(&picked), "nice-grid solve picked intersecting segments");
        best = best.best(Solution::from_items(&picked, format!("nice/types={}", types.len())));
    }
    (best, guesses)
}
