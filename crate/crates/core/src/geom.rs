//! Closed axis-parallel rectangles and segments with integer coordinates.
//!
//! Every object is a closed point set, so two objects that only share a
//! boundary point intersect.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::GeomError;

/// Instance coordinate. Inputs are expected to stay within `|c| <= 2^31` so
/// that the `±1` offsets used for enclosing lines never overflow.
pub type Coord = i64;

/// Identifier of an input item, unique within an instance.
pub type ItemId = u32;

/// Closed bounding box `[x1, x2] × [y1, y2]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BBox {
    pub x1: Coord,
    pub x2: Coord,
    pub y1: Coord,
    pub y2: Coord,
}

impl BBox {
    pub fn intersects(&self, other: &BBox) -> bool {
        self.x1 <= other.x2 && other.x1 <= self.x2 && self.y1 <= other.y2 && other.y1 <= self.y2
    }

    pub fn contains(&self, x: Coord, y: Coord) -> bool {
        self.x1 <= x && x <= self.x2 && self.y1 <= y && y <= self.y2
    }

    /// Reflection across the diagonal `x = y`.
    pub fn transposed(&self) -> BBox {
        BBox { x1: self.y1, x2: self.y2, y1: self.x1, y2: self.x2 }
    }
}

/// Anything the solvers can pick: it has an id, a positive weight and a
/// closed axis-parallel extent.
pub trait Item: Clone + Send + Sync {
    fn id(&self) -> ItemId;
    fn weight(&self) -> f64;
    fn bbox(&self) -> BBox;

    fn intersects(&self, other: &Self) -> bool {
        self.bbox().intersects(&other.bbox())
    }
}

/// Closed rectangle `[x1, x2] × [y1, y2]`; zero width or height is allowed.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub id: ItemId,
    pub x1: Coord,
    pub x2: Coord,
    pub y1: Coord,
    pub y2: Coord,
    pub weight: f64,
}

impl Rect {
    pub fn new(id: ItemId, x1: Coord, x2: Coord, y1: Coord, y2: Coord, weight: f64) -> Result<Self, GeomError> {
        let r = Rect { id, x1, x2, y1, y2, weight };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<(), GeomError> {
        if self.x1 > self.x2 {
            return Err(GeomError::InvertedSpan { id: self.id, field: "x1" });
        }
        if self.y1 > self.y2 {
            return Err(GeomError::InvertedSpan { id: self.id, field: "y1" });
        }
        check_weight(self.id, self.weight)
    }

    /// Top-right corner, the reference point used by the grid sweeps.
    pub fn top_right(&self) -> (Coord, Coord) {
        (self.x2, self.y2)
    }
}

impl Item for Rect {
    fn id(&self) -> ItemId {
        self.id
    }
    fn weight(&self) -> f64 {
        self.weight
    }
    fn bbox(&self) -> BBox {
        BBox { x1: self.x1, x2: self.x2, y1: self.y1, y2: self.y2 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Horizontal,
    Vertical,
}

impl Orientation {
    pub fn flipped(self) -> Self {
        match self {
            Orientation::Horizontal => Orientation::Vertical,
            Orientation::Vertical => Orientation::Horizontal,
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::Horizontal => "horizontal",
            Orientation::Vertical => "vertical",
        })
    }
}

/// Closed axis-parallel segment. A horizontal segment is `[lo, hi] × {at}`,
/// a vertical one `{at} × [lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Seg {
    pub id: ItemId,
    pub orientation: Orientation,
    pub at: Coord,
    pub lo: Coord,
    pub hi: Coord,
    pub weight: f64,
}

impl Seg {
    pub fn new(id: ItemId, orientation: Orientation, at: Coord, lo: Coord, hi: Coord, weight: f64) -> Result<Self, GeomError> {
        let s = Seg { id, orientation, at, lo, hi, weight };
        s.validate()?;
        Ok(s)
    }

    pub fn horizontal(id: ItemId, y: Coord, x_lo: Coord, x_hi: Coord, weight: f64) -> Result<Self, GeomError> {
        Seg::new(id, Orientation::Horizontal, y, x_lo, x_hi, weight)
    }

    pub fn vertical(id: ItemId, x: Coord, y_lo: Coord, y_hi: Coord, weight: f64) -> Result<Self, GeomError> {
        Seg::new(id, Orientation::Vertical, x, y_lo, y_hi, weight)
    }

    pub fn validate(&self) -> Result<(), GeomError> {
        if self.lo > self.hi {
            return Err(GeomError::InvertedSpan { id: self.id, field: "lo" });
        }
        check_weight(self.id, self.weight)
    }

    pub fn is_horizontal(&self) -> bool {
        self.orientation == Orientation::Horizontal
    }

    pub fn transposed(&self) -> Seg {
        Seg { orientation: self.orientation.flipped(), ..*self }
    }

    pub fn with_weight(&self, weight: f64) -> Seg {
        Seg { weight, ..*self }
    }
}

impl Item for Seg {
    fn id(&self) -> ItemId {
        self.id
    }
    fn weight(&self) -> f64 {
        self.weight
    }
    fn bbox(&self) -> BBox {
        match self.orientation {
            Orientation::Horizontal => BBox { x1: self.lo, x2: self.hi, y1: self.at, y2: self.at },
            Orientation::Vertical => BBox { x1: self.at, x2: self.at, y1: self.lo, y2: self.hi },
        }
    }
}

fn check_weight(id: ItemId, weight: f64) -> Result<(), GeomError> {
    if weight.is_finite() && weight > 0.0 {
        Ok(())
    } else {
        Err(GeomError::NonPositiveWeight { id, weight })
    }
}

pub fn rects_intersect(a: &Rect, b: &Rect) -> bool {
    a.intersects(b)
}

/// Closed-set intersection of two segments. Segments are degenerate boxes, so
/// the box test covers collinear overlap, crossings and shared endpoints.
pub fn segs_intersect(a: &Seg, b: &Seg) -> bool {
    a.intersects(b)
}

/// O(n²) pairwise check.
pub fn verify_independent<T: Item>(items: &[T]) -> bool {
    items
        .iter()
        .enumerate()
        .all(|(i, a)| items[i + 1..].iter().all(|b| !a.intersects(b)))
}

/// An independent set together with its total weight and a tag recording
/// which branch of a solver produced it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    pub items: Vec<ItemId>,
    pub weight: f64,
    pub branch: String,
}

impl Solution {
    pub fn empty(branch: impl Into<String>) -> Self {
        Solution { items: Vec::new(), weight: 0.0, branch: branch.into() }
    }

    /// Ids are stored sorted; the weight is summed in id order so equal sets
    /// always get bit-identical weights.
    pub fn from_items<T: Item>(items: &[T], branch: impl Into<String>) -> Self {
        let mut picked: Vec<(ItemId, f64)> = items.iter().map(|it| (it.id(), it.weight())).collect();
        picked.sort_by_key(|p| p.0);
        Solution {
            items: picked.iter().map(|p| p.0).collect(),
            weight: picked.iter().map(|p| p.1).sum(),
            branch: branch.into(),
        }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Deterministic preference: heavier first, then the lexicographically
    /// smaller id list, then the smaller branch tag.
    pub fn better_than(&self, other: &Solution) -> bool {
        match self.weight.total_cmp(&other.weight) {
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Less => false,
            std::cmp::Ordering::Equal => (&self.items, &self.branch) < (&other.items, &other.branch),
        }
    }

    pub fn best(self, other: Solution) -> Solution {
        if other.better_than(&self) {
            other
        } else {
            self
        }
    }

    /// Resolves the ids against `pool` (which must contain every member).
    pub fn resolve<'a, T: Item>(&self, pool: &'a [T]) -> Option<Vec<&'a T>> {
        self.items.iter().map(|id| pool.iter().find(|it| it.id() == *id)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(id: ItemId, x1: Coord, x2: Coord, y1: Coord, y2: Coord) -> Rect {
        Rect::new(id, x1, x2, y1, y2, 1.0).unwrap()
    }

    #[test]
    fn rect_intersection_examples() {
        let unit = r(0, 0, 1, 0, 1);
        assert!(rects_intersect(&unit, &unit));
        assert!(rects_intersect(&unit, &r(1, 1, 2, 0, 1)));
        assert!(!rects_intersect(&unit, &r(2, 2, 3, 0, 1)));
    }

    #[test]
    fn seg_intersection_examples() {
        let h = Seg::horizontal(0, 0, 0, 3, 1.0).unwrap();
        assert!(segs_intersect(&h, &Seg::vertical(1, 2, -1, 1, 1.0).unwrap()));
        assert!(segs_intersect(&h, &Seg::horizontal(2, 0, 3, 5, 1.0).unwrap()));
        assert!(!segs_intersect(&h, &Seg::horizontal(3, 1, 0, 3, 1.0).unwrap()));
    }

    #[test]
    fn verify_examples() {
        assert!(verify_independent::<Rect>(&[]));
        assert!(verify_independent(&[r(0, 0, 1, 0, 1), r(1, 2, 3, 0, 1)]));
        assert!(!verify_independent(&[r(0, 0, 2, 0, 2), r(1, 1, 4, 1, 3)]));
    }

    #[test]
    fn constructors_reject_bad_input() {
        assert!(matches!(Rect::new(3, 2, 1, 0, 0, 1.0), Err(GeomError::InvertedSpan { id: 3, .. })));
        assert!(matches!(Rect::new(3, 0, 1, 0, 0, 0.0), Err(GeomError::NonPositiveWeight { .. })));
        assert!(Seg::horizontal(1, 0, 5, 4, 1.0).is_err());
        assert!(Seg::vertical(1, 0, 0, 0, f64::NAN).is_err());
        // degenerate rectangles are fine
        assert!(Rect::new(1, 0, 0, 0, 0, 1.0).is_ok());
    }

    #[test]
    fn solution_weight_and_ordering() {
        let a = Solution::from_items(&[r(2, 0, 0, 0, 0), r(1, 5, 5, 5, 5)], "x");
        assert_eq!(a.items, vec![1, 2]);
        assert_eq!(a.weight, 2.0);
        let b = Solution::from_items(&[r(1, 0, 0, 0, 0), r(3, 5, 5, 5, 5)], "x");
        assert!(a.better_than(&b));
        assert!(!b.better_than(&a));
        assert!(Solution::from_items(&[r(9, 0, 0, 0, 0)], "y").better_than(&Solution::empty("z")));
    }
}
