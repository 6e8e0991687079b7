//! Small grids that hit every segment.

use crate::geom::{Coord, Item, Seg};
use crate::grid::Grid;

/// Minimum set of points stabbing every closed interval `[lo, hi]`.
/// Greedy by right endpoint; the points are the chosen right endpoints.
pub fn min_point_cover(intervals: &[(Coord, Coord)]) -> Vec<Coord> {
    let mut sorted = intervals.to_vec();
    sorted.sort_by_key(|&(lo, hi)| (hi, lo));
    let mut points: Vec<Coord> = Vec::new();
    for (lo, hi) in sorted {
        if points.last().map_or(true, |&p| p < lo) {
            points.push(hi);
        }
    }
    points
}

fn y_interval(s: &Seg) -> (Coord, Coord) {
    let b = s.bbox();
    (b.y1, b.y2)
}

/// Left-to-right sweep: each round takes the longest prefix (by right end)
/// of the remaining segments that `k` horizontal lines can hit, adds those
/// lines plus a vertical line at the first right end that overflows, and
/// drops everything hit. Returns `None` after more than `k + 1` rounds, in
/// which case no grid of `k` lines hits every segment.
pub fn build_hitting_grid(segs: &[Seg], k: usize) -> Option<Grid> {
    let mut alive: Vec<Seg> = segs.to_vec();
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut rounds = 0;
    while !alive.is_empty() {
        rounds += 1;
        if rounds > k + 1 {
            return None;
        }
        alive.sort_by_key(|s| (s.bbox().x2, s.id));
        let mut cut = None;
        let mut i = 0;
        while i < alive.len() {
            let x = alive[i].bbox().x2;
            let mut j = i;
            while j < alive.len() && alive[j].bbox().x2 == x {
                j += 1;
            }
            let prefix: Vec<_> = alive[..j].iter().map(y_interval).collect();
            if min_point_cover(&prefix).len() > k {
                cut = Some((x, i));
                break;
            }
            i = j;
        }
        let left_len = cut.map_or(alive.len(), |c| c.1);
        let left: Vec<_> = alive[..left_len].iter().map(y_interval).collect();
        let round_ys = min_point_cover(&left);
        let round_x = cut.map(|c| c.0);
        alive.retain(|s| {
            let b = s.bbox();
            let by_h = round_ys.iter().any(|&y| b.y1 <= y && y <= b.y2);
            let by_v = round_x.is_some_and(|x| b.x1 <= x && x <= b.x2);
            !(by_h || by_v)
        });
        ys.extend(round_ys);
        xs.extend(round_x);
    }
    Some(Grid::new(xs, ys))
}
