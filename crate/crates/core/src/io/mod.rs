//! Files, generators, pictures and benchmark suites.

pub mod bench;
pub mod format;
pub mod gen;
pub mod svg;

pub use format::{verify_solution, InstanceFile, InstanceRef, Items, Kind, SolutionFile, VerifyIssue};
pub use gen::{gen_instance, GenParams, WeightSpec};
pub use svg::emit_svg;
