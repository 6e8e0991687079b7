//! Plain SVG rendering of an instance, optionally with a grid and a
//! highlighted solution.

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::geom::{Coord, Item, ItemId, Solution};
use crate::grid::Grid;

use super::format::{InstanceFile, Items};

const SCALE: i64 = 8;
const PAD: i64 = 2;

const STYLE: &str = "\
.item { fill: #9ecae1; fill-opacity: 0.35; stroke: #3182bd; stroke-width: 0.15; }
line.item { stroke-width: 0.3; }
.chosen { fill: #e6550d; fill-opacity: 0.6; stroke: #a63603; }
line.chosen { stroke: #e6550d; stroke-width: 0.45; }
.grid { stroke: #636363; stroke-width: 0.1; stroke-dasharray: 0.4 0.4; }
";

/// `(x1, x2, y1, y2)`
type Extent = (Coord, Coord, Coord, Coord);

struct Frame {
    x0: Coord,
    y1: Coord,
    w: Coord,
    h: Coord,
}

impl Frame {
    /// Flip y so larger y is drawn higher.
    fn y(&self, y: Coord) -> Coord {
        self.y1 - y
    }
}

fn frame(boxes: &[Extent], grid: Option<&Grid>) -> Frame {
    let mut xs: Vec<Coord> = boxes.iter().flat_map(|b| [b.0, b.1]).collect();
    let mut ys: Vec<Coord> = boxes.iter().flat_map(|b| [b.2, b.3]).collect();
    if let Some(g) = grid {
        xs.extend(g.xs());
        ys.extend(g.ys());
    }
    let (x0, x1) = (xs.iter().min().copied().unwrap_or(0) - PAD, xs.iter().max().copied().unwrap_or(0) + PAD);
    let (y0, y1) = (ys.iter().min().copied().unwrap_or(0) - PAD, ys.iter().max().copied().unwrap_or(0) + PAD);
    Frame { x0, y1, w: x1 - x0, h: y1 - y0 }
}

/// Deterministic SVG 1.1 document. Rectangles become `rect` elements,
/// segments `line` elements, grid lines dashed `line`s spanning the view;
/// members of `solution` get the extra class `chosen`.
pub fn emit_svg(inst: &InstanceFile, grid: Option<&Grid>, solution: Option<&Solution>) -> String {
    let chosen: BTreeSet<ItemId> = solution.map(|s| s.items.iter().copied().collect()).unwrap_or_default();
    let boxes: Vec<(ItemId, Extent, bool)> = match &inst.items {
        Items::Rect(v) => v.iter().map(|r| (r.id, bbox(r), true)).collect(),
        Items::Seg(v) => v.iter().map(|s| (s.id, bbox(s), false)).collect(),
    };
    let f = frame(&boxes.iter().map(|b| b.1).collect::<Vec<_>>(), grid);

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="{} 0 {} {}">"#,
        f.w * SCALE,
        f.h * SCALE,
        f.x0,
        f.w,
        f.h
    );
    let _ = writeln!(out, "<style>\n{STYLE}</style>");
    if let Some(g) = grid {
        let _ = writeln!(out, r#"<g class="grid-lines">"#);
        for &x in g.xs() {
            let _ = writeln!(out, r#"<line class="grid" x1="{x}" y1="0" x2="{x}" y2="{}"/>"#, f.h);
        }
        for &y in g.ys() {
            let yy = f.y(y);
            let _ = writeln!(out, r#"<line class="grid" x1="{}" y1="{yy}" x2="{}" y2="{yy}"/>"#, f.x0, f.x0 + f.w);
        }
        let _ = writeln!(out, "</g>");
    }
    let _ = writeln!(out, r#"<g class="canvas">"#);
    for (id, (x1, x2, y1, y2), is_rect) in &boxes {
        let class = if chosen.contains(id) { "item chosen" } else { "item" };
        if *is_rect {
            let _ = writeln!(
                out,
                r#"<rect class="{class}" data-id="{id}" x="{x1}" y="{}" width="{}" height="{}"/>"#,
                f.y(*y2),
                x2 - x1,
                y2 - y1
            );
        } else {
            let _ = writeln!(
                out,
                r#"<line class="{class}" data-id="{id}" x1="{x1}" y1="{}" x2="{x2}" y2="{}"/>"#,
                f.y(*y1),
                f.y(*y2)
            );
        }
    }
    let _ = writeln!(out, "</g>\n</svg>");
    out
}

fn bbox<T: Item>(it: &T) -> Extent {
    let b = it.bbox();
    (b.x1, b.x2, b.y1, b.y2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Rect;
    use crate::rect::{build_good_grid, GridOutcome};

    fn instance_a() -> InstanceFile {
        InstanceFile::new(Items::Rect(vec![
            Rect::new(1, 0, 2, 0, 2, 5.0).unwrap(),
            Rect::new(2, 3, 5, 0, 2, 4.0).unwrap(),
            Rect::new(3, 1, 4, 1, 3, 6.0).unwrap(),
        ]))
    }

    #[test]
    fn empty_instance() {
        let svg = emit_svg(&InstanceFile::new(Items::Rect(Vec::new())), None, None);
        assert!(svg.contains("<g class=\"canvas\">\n</g>"));
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn instance_a_with_grid() {
        let inst = instance_a();
        let Items::Rect(rects) = &inst.items else { unreachable!() };
        let GridOutcome::Grid(g) = build_good_grid(rects, 2, 0.5) else { panic!("expected a grid") };
        let svg = emit_svg(&inst, Some(&g), None);
        assert_eq!(svg.matches("<rect ").count(), 3);
        assert_eq!(svg.matches("class=\"grid\"").count(), g.size());
        assert!(!svg.contains("item chosen"));
        assert_eq!(svg, emit_svg(&inst, Some(&g), None));
    }

    #[test]
    fn highlights_only_with_solution() {
        let inst = instance_a();
        let sol = Solution { items: vec![1, 2], weight: 9.0, branch: String::new() };
        let svg = emit_svg(&inst, None, Some(&sol));
        assert_eq!(svg.matches("item chosen").count(), 2);
    }
}
