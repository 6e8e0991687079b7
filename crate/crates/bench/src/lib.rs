//! Fixed instances shared by the criterion benches.

use miser_core::io::{gen_instance, GenParams, Items, Kind, WeightSpec};
use miser_core::{Rect, Seg};

pub fn rects(n: usize, seed: u64) -> Vec<Rect> {
    let p = GenParams { kind: Kind::Rect, n, coord_max: 100, weights: WeightSpec::Range(1, 20), seed };
    match gen_instance(&p).items {
        Items::Rect(v) => v,
        Items::Seg(_) => unreachable!(),
    }
}

/// Segments with weights from `{1, 2, 3, 5}`.
pub fn segs(n: usize, seed: u64) -> Vec<Seg> {
    let p = GenParams { kind: Kind::Seg, n, coord_max: 60, weights: WeightSpec::Classes(vec![1.0, 2.0, 3.0, 5.0]), seed };
    match gen_instance(&p).items {
        Items::Seg(v) => v,
        Items::Rect(_) => unreachable!(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_stable() {
        assert_eq!(rects(12, 1), rects(12, 1));
        assert_eq!(segs(8, 2).len(), 8);
    }
}
