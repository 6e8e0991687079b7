//! Parameterized solvers for the maximum-weight independent set problem on
//! axis-parallel rectangles and segments.
//!
//! * [`rect::solve_rect`] returns an independent set of rectangles whose
//!   weight is at least `(1 - eps) * opt_k` (it may hold more than `k` items).
//! * [`seg::solve_exact`] returns an optimum set of at most `k` segments;
//!   [`seg::solve_seg_pas`] rounds weights first and keeps `(1 - eps) * opt_k`.
//! * [`oracle`] holds brute-force references used by tests and benchmarks.

pub mod ctype;
pub mod error;
pub mod geom;
pub mod grid;
pub mod io;
pub mod oracle;
pub mod rect;
pub mod seg;
pub mod vcsp;

pub use error::{FormatError, GeomError, SolveError, VcspError};
pub use geom::{rects_intersect, segs_intersect, verify_independent, BBox, Coord, Item, ItemId, Orientation, Rect, Seg, Solution};
pub use grid::{adjacent, Grid, GridPoint, IndexBox};
