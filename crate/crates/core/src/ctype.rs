//! Combinatorial types of rectangles and segments relative to a grid.
//!
//! A rectangle's type is the set of grid points it contains. Because a
//! rectangle meets the lines of a grid in contiguous index ranges, that set
//! is always a block of grid points and is stored as an [`IndexBox`].
//!
//! A segment's type records its orientation, weight class and the four
//! closest grid lines that lie strictly outside it on each side.

use std::collections::BTreeMap;

use crate::geom::{Item, Orientation, Rect, Seg};
use crate::grid::{Grid, GridPoint, IndexBox};

/// Grid points contained in a rectangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CombType(pub IndexBox);

impl CombType {
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn points(&self) -> Vec<GridPoint> {
        self.0.points().collect()
    }

    pub fn is_disjoint(&self, other: &CombType) -> bool {
        self.0.is_disjoint(&other.0)
    }

    /// Some point of `self` is adjacent to some point of `other`.
    pub fn touches(&self, other: &CombType) -> bool {
        self.0.touches(&other.0)
    }
}

pub fn rect_type(grid: &Grid, r: &Rect) -> CombType {
    CombType(grid.box_of(&r.bbox()))
}

/// Groups rectangles by type, dropping those that contain no grid point.
pub fn realized_types(rects: &[Rect], grid: &Grid) -> BTreeMap<CombType, Vec<Rect>> {
    let mut out: BTreeMap<CombType, Vec<Rect>> = BTreeMap::new();
    for r in rects {
        let t = rect_type(grid, r);
        if !t.is_empty() {
            out.entry(t).or_default().push(*r);
        }
    }
    out
}

/// A guessed combinatorial type of a solution: nonempty, pairwise disjoint
/// rectangle types.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TypeGuess {
    pub types: Vec<CombType>,
}

/// Subsets of `0..n` of size at most `k` whose members are pairwise
/// compatible, in lexicographic order starting with the empty set.
pub struct CompatibleSubsets<F> {
    n: usize,
    k: usize,
    compatible: F,
    current: Vec<usize>,
    started: bool,
}

impl<F: Fn(usize, usize) -> bool> CompatibleSubsets<F> {
    pub fn new(n: usize, k: usize, compatible: F) -> Self {
        CompatibleSubsets { n, k, compatible, current: Vec::new(), started: false }
    }

    fn fits(&self, cand: usize) -> bool {
        self.current.iter().all(|&c| (self.compatible)(c, cand))
    }

    /// Smallest compatible index `>= from`.
    fn next_fit(&self, from: usize) -> Option<usize> {
        (from..self.n).find(|&c| self.fits(c))
    }
}

impl<F: Fn(usize, usize) -> bool> Iterator for CompatibleSubsets<F> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if !self.started {
            self.started = true;
            return Some(Vec::new());
        }
        // extend
        if self.current.len() < self.k {
            let from = self.current.last().map_or(0, |&l| l + 1);
            if let Some(c) = self.next_fit(from) {
                self.current.push(c);
                return Some(self.current.clone());
            }
        }
        // backtrack: replace the last element by a larger compatible one
        while let Some(last) = self.current.pop() {
            if let Some(c) = self.next_fit(last + 1) {
                self.current.push(c);
                return Some(self.current.clone());
            }
        }
        None
    }
}

/// Every set of at most `k` pairwise disjoint realized types, the empty
/// guess included.
///
/// Types no input rectangle has are skipped: such a type could only ever
/// be left empty, and an empty slot never helps a guess, so every optimum
/// still shows up as the guess made of its own (realized) types.
pub fn enumerate_type_guesses(realized: &[CombType], k: usize) -> impl Iterator<Item = TypeGuess> + '_ {
    CompatibleSubsets::new(realized.len(), k, move |a, b| realized[a].is_disjoint(&realized[b]))
        .map(move |idx| TypeGuess { types: idx.into_iter().map(|i| realized[i]).collect() })
}

/// Combinatorial type of a segment with respect to an enclosing grid.
///
/// `left`/`right` index vertical lines, `down`/`up` horizontal lines. The
/// open box they delimit is the smallest grid-line box whose interior
/// contains the segment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SegType {
    pub orientation: Orientation,
    pub class: usize,
    pub left: usize,
    pub right: usize,
    pub down: usize,
    pub up: usize,
}

impl SegType {
    /// Grid points strictly inside the delimited box, which are exactly the
    /// grid points on any segment of this type.
    pub fn points(&self) -> IndexBox {
        IndexBox::new(self.left + 1..self.right, self.down + 1..self.up)
    }

    /// Segments of this type contain a grid point.
    pub fn is_nice(&self) -> bool {
        !self.points().is_empty()
    }

    /// The type of the reflected segment in the reflected grid.
    pub fn transposed(&self) -> SegType {
        SegType {
            orientation: self.orientation.flipped(),
            class: self.class,
            left: self.down,
            right: self.up,
            down: self.left,
            up: self.right,
        }
    }
}

/// `None` when the grid does not enclose the segment.
pub fn seg_type(grid: &Grid, s: &Seg, class: usize) -> Option<SegType> {
    let b = s.bbox();
    let xs = grid.xs();
    let ys = grid.ys();
    let left = xs.partition_point(|&x| x < b.x1).checked_sub(1)?;
    let right = xs.partition_point(|&x| x <= b.x2);
    let down = ys.partition_point(|&y| y < b.y1).checked_sub(1)?;
    let up = ys.partition_point(|&y| y <= b.y2);
    if right >= xs.len() || up >= ys.len() {
        return None;
    }
    Some(SegType { orientation: s.orientation, class, left, right, down, up })
}
