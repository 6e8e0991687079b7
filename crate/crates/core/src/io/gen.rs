//! Seeded random instances.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::error::FormatError;
use crate::geom::{Coord, Orientation, Rect, Seg};

use super::format::{InstanceFile, Items, Kind};

/// How item weights are drawn.
#[derive(Clone, Debug, PartialEq)]
pub enum WeightSpec {
    /// Uniform integer in `lo..=hi`.
    Range(u32, u32),
    /// Uniform pick from a fixed set.
    Classes(Vec<f64>),
}

impl WeightSpec {
    pub fn draw(&self, rng: &mut impl Rng) -> f64 {
        match self {
            WeightSpec::Range(lo, hi) => rng.gen_range(*lo..=*hi) as f64,
            WeightSpec::Classes(c) => *c.choose(rng).expect("nonempty class set"),
        }
    }
}

impl FromStr for WeightSpec {
    type Err = FormatError;

    /// `range=LO,HI` or `classes=A,B,...`.
    fn from_str(s: &str) -> Result<Self, FormatError> {
        let bad = || FormatError::WeightSpec(s.to_string());
        let (tag, list) = s.split_once('=').ok_or_else(bad)?;
        match tag.trim() {
            "range" => {
                let (lo, hi) = list.split_once(',').ok_or_else(bad)?;
                let lo: u32 = lo.trim().parse().map_err(|_| bad())?;
                let hi: u32 = hi.trim().parse().map_err(|_| bad())?;
                if lo == 0 || lo > hi {
                    return Err(bad());
                }
                Ok(WeightSpec::Range(lo, hi))
            }
            "classes" => {
                let c: Vec<f64> = list.split(',').map(|x| x.trim().parse::<f64>()).collect::<Result<_, _>>().map_err(|_| bad())?;
                if c.is_empty() || c.iter().any(|w| !(w.is_finite() && *w > 0.0)) {
                    return Err(bad());
                }
                Ok(WeightSpec::Classes(c))
            }
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for WeightSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightSpec::Range(lo, hi) => write!(f, "range={lo},{hi}"),
            WeightSpec::Classes(c) => {
                let parts: Vec<String> = c.iter().map(f64::to_string).collect();
                write!(f, "classes={}", parts.join(","))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenParams {
    pub kind: Kind,
    pub n: usize,
    pub coord_max: Coord,
    pub weights: WeightSpec,
    pub seed: u64,
}

pub fn random_rects(rng: &mut impl Rng, n: usize, coord_max: Coord, weights: &WeightSpec) -> Vec<Rect> {
    (0..n)
        .map(|i| {
            let (a, b) = (rng.gen_range(0..=coord_max), rng.gen_range(0..=coord_max));
            let (c, d) = (rng.gen_range(0..=coord_max), rng.gen_range(0..=coord_max));
            Rect { id: i as u32, x1: a.min(b), x2: a.max(b), y1: c.min(d), y2: c.max(d), weight: weights.draw(rng) }
        })
        .collect()
}

/// Uniform orientation and position, length at most `coord_max / 2`.
pub fn random_segs(rng: &mut impl Rng, n: usize, coord_max: Coord, weights: &WeightSpec) -> Vec<Seg> {
    (0..n)
        .map(|i| {
            let orientation = if rng.gen_bool(0.5) { Orientation::Horizontal } else { Orientation::Vertical };
            let at = rng.gen_range(0..=coord_max);
            let lo = rng.gen_range(0..=coord_max);
            let hi = (lo + rng.gen_range(0..=coord_max / 2)).min(coord_max);
            Seg { id: i as u32, orientation, at, lo, hi, weight: weights.draw(rng) }
        })
        .collect()
}

/// Same parameters, same file, byte for byte.
pub fn gen_instance(p: &GenParams) -> InstanceFile {
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let items = match p.kind {
        Kind::Rect => Items::Rect(random_rects(&mut rng, p.n, p.coord_max, &p.weights)),
        Kind::Seg => Items::Seg(random_segs(&mut rng, p.n, p.coord_max, &p.weights)),
    };
    let mut inst = InstanceFile::new(items);
    inst.metadata.insert("generator".into(), json!("chacha8"));
    inst.metadata.insert("seed".into(), json!(p.seed));
    inst.metadata.insert("n".into(), json!(p.n));
    inst.metadata.insert("coord_max".into(), json!(p.coord_max));
    inst.metadata.insert("weights".into(), json!(p.weights.to_string()));
    inst
}
