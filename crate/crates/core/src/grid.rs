//! Finite grids of axis-parallel lines.
//!
//! Grid points are addressed by index pairs into the sorted line lists;
//! coordinates are only looked up when comparing against geometry.

use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::geom::{BBox, Coord, Item};

/// Vertical lines at `xs`, horizontal lines at `ys`, both strictly increasing.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Grid {
    xs: Vec<Coord>,
    ys: Vec<Coord>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GridPoint {
    pub xi: usize,
    pub yi: usize,
}

impl GridPoint {
    pub fn new(xi: usize, yi: usize) -> Self {
        GridPoint { xi, yi }
    }
}

/// Chebyshev distance one in index space.
pub fn adjacent(p: GridPoint, q: GridPoint) -> bool {
    p != q && p.xi.abs_diff(q.xi) <= 1 && p.yi.abs_diff(q.yi) <= 1
}

/// A rectangular block of grid points `[x0, x1) × [y0, y1)` in index space.
/// Empty blocks are normalized to all-zero bounds so that equality of blocks
/// is equality of the point sets they denote.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexBox {
    pub x0: usize,
    pub x1: usize,
    pub y0: usize,
    pub y1: usize,
}

impl IndexBox {
    pub const EMPTY: IndexBox = IndexBox { x0: 0, x1: 0, y0: 0, y1: 0 };

    pub fn new(xr: Range<usize>, yr: Range<usize>) -> Self {
        if xr.is_empty() || yr.is_empty() {
            IndexBox::EMPTY
        } else {
            IndexBox { x0: xr.start, x1: xr.end, y0: yr.start, y1: yr.end }
        }
    }

    pub fn is_empty(&self) -> bool {
        self.x0 >= self.x1 || self.y0 >= self.y1
    }

    pub fn len(&self) -> usize {
        (self.x1 - self.x0) * (self.y1 - self.y0)
    }

    pub fn contains(&self, p: GridPoint) -> bool {
        (self.x0..self.x1).contains(&p.xi) && (self.y0..self.y1).contains(&p.yi)
    }

    pub fn is_disjoint(&self, other: &IndexBox) -> bool {
        self.is_empty()
            || other.is_empty()
            || self.x1 <= other.x0
            || other.x1 <= self.x0
            || self.y1 <= other.y0
            || other.y1 <= self.y0
    }

    /// Some point of `self` is adjacent to some point of `other`. Assumes
    /// the boxes are disjoint, so any pair within Chebyshev distance one is
    /// a pair of distinct points.
    pub fn touches(&self, other: &IndexBox) -> bool {
        if self.is_empty() || other.is_empty() {
            return false;
        }
        let gap = |a0: usize, a1: usize, b0: usize, b1: usize| {
            // closed index intervals [a0, a1-1] and [b0, b1-1]
            if b0 >= a1 {
                b0 - (a1 - 1)
            } else if a0 >= b1 {
                a0 - (b1 - 1)
            } else {
                0
            }
        };
        gap(self.x0, self.x1, other.x0, other.x1) <= 1 && gap(self.y0, self.y1, other.y0, other.y1) <= 1
    }

    pub fn points(&self) -> impl Iterator<Item = GridPoint> + '_ {
        (self.x0..self.x1).flat_map(move |xi| (self.y0..self.y1).map(move |yi| GridPoint { xi, yi }))
    }

    pub fn transposed(&self) -> IndexBox {
        IndexBox { x0: self.y0, x1: self.y1, y0: self.x0, y1: self.x1 }
    }
}

impl Grid {
    pub fn new(mut xs: Vec<Coord>, mut ys: Vec<Coord>) -> Self {
        xs.sort_unstable();
        xs.dedup();
        ys.sort_unstable();
        ys.dedup();
        Grid { xs, ys }
    }

    pub fn xs(&self) -> &[Coord] {
        &self.xs
    }

    pub fn ys(&self) -> &[Coord] {
        &self.ys
    }

    /// Total number of lines.
    pub fn size(&self) -> usize {
        self.xs.len() + self.ys.len()
    }

    pub fn point_coords(&self, p: GridPoint) -> (Coord, Coord) {
        (self.xs[p.xi], self.ys[p.yi])
    }

    /// Indices of vertical lines with `lo <= x <= hi`.
    pub fn x_span(&self, lo: Coord, hi: Coord) -> Range<usize> {
        span(&self.xs, lo, hi)
    }

    /// Indices of horizontal lines with `lo <= y <= hi`.
    pub fn y_span(&self, lo: Coord, hi: Coord) -> Range<usize> {
        span(&self.ys, lo, hi)
    }

    pub fn box_of(&self, b: &BBox) -> IndexBox {
        IndexBox::new(self.x_span(b.x1, b.x2), self.y_span(b.y1, b.y2))
    }

    /// Grid points contained in the closed extent of `item`.
    pub fn points_in<T: Item>(&self, item: &T) -> Vec<GridPoint> {
        self.box_of(&item.bbox()).points().collect()
    }

    /// `(hit by a vertical line, hit by a horizontal line)`.
    pub fn hits<T: Item>(&self, item: &T) -> (bool, bool) {
        let b = item.bbox();
        (!self.x_span(b.x1, b.x2).is_empty(), !self.y_span(b.y1, b.y2).is_empty())
    }

    pub fn hits_any<T: Item>(&self, item: &T) -> bool {
        let (v, h) = self.hits(item);
        v || h
    }

    /// The item contains a grid point.
    pub fn respected_by<T: Item>(&self, item: &T) -> bool {
        let (v, h) = self.hits(item);
        v && h
    }

    /// Every item lies in the open box delimited by the outermost lines.
    pub fn encloses<T: Item>(&self, items: &[T]) -> bool {
        let (Some(&xl), Some(&xr), Some(&yb), Some(&yt)) =
            (self.xs.first(), self.xs.last(), self.ys.first(), self.ys.last())
        else {
            return items.is_empty();
        };
        items.iter().all(|it| {
            let b = it.bbox();
            xl < b.x1 && b.x2 < xr && yb < b.y1 && b.y2 < yt
        })
    }

    /// Adds at most four lines one unit outside the items' extent, on each
    /// side where the grid does not already reach strictly past the items.
    pub fn enclose<T: Item>(&self, items: &[T]) -> Grid {
        let Some(first) = items.first() else {
            return self.clone();
        };
        let mut ext = first.bbox();
        for it in &items[1..] {
            let b = it.bbox();
            ext.x1 = ext.x1.min(b.x1);
            ext.x2 = ext.x2.max(b.x2);
            ext.y1 = ext.y1.min(b.y1);
            ext.y2 = ext.y2.max(b.y2);
        }
        let mut xs = self.xs.clone();
        let mut ys = self.ys.clone();
        if xs.first().map_or(true, |&x| x >= ext.x1) {
            xs.push(ext.x1 - 1);
        }
        if xs.last().map_or(true, |&x| x <= ext.x2) {
            xs.push(ext.x2 + 1);
        }
        if ys.first().map_or(true, |&y| y >= ext.y1) {
            ys.push(ext.y1 - 1);
        }
        if ys.last().map_or(true, |&y| y <= ext.y2) {
            ys.push(ext.y2 + 1);
        }
        Grid::new(xs, ys)
    }

    pub fn with_lines(&self, xs: impl IntoIterator<Item = Coord>, ys: impl IntoIterator<Item = Coord>) -> Grid {
        let mut nx = self.xs.clone();
        nx.extend(xs);
        let mut ny = self.ys.clone();
        ny.extend(ys);
        Grid::new(nx, ny)
    }

    pub fn transposed(&self) -> Grid {
        Grid { xs: self.ys.clone(), ys: self.xs.clone() }
    }

    pub fn is_superset_of(&self, other: &Grid) -> bool {
        other.xs.iter().all(|x| self.xs.binary_search(x).is_ok())
            && other.ys.iter().all(|y| self.ys.binary_search(y).is_ok())
    }
}

fn span(lines: &[Coord], lo: Coord, hi: Coord) -> Range<usize> {
    let start = lines.partition_point(|&c| c < lo);
    let end = lines.partition_point(|&c| c <= hi);
    start..end.max(start)
}

/// Free-function form of [`Grid::points_in`].
pub fn points_in_rect<T: Item>(grid: &Grid, item: &T) -> Vec<GridPoint> {
    grid.points_in(item)
}
