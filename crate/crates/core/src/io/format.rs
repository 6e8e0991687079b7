//! JSON instance and solution files.
//!
//! Instances serialize with a fixed key order, so the SHA-256 of the
//! serialized text identifies an instance and solution files can refer to
//! it by digest.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{FormatError, GeomError};
use crate::geom::{Item, ItemId, Rect, Seg, Solution};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Rect,
    Seg,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Rect => "rect",
            Kind::Seg => "seg",
        })
    }
}

impl std::str::FromStr for Kind {
    type Err = FormatError;

    fn from_str(s: &str) -> Result<Self, FormatError> {
        match s {
            "rect" => Ok(Kind::Rect),
            "seg" => Ok(Kind::Seg),
            other => Err(FormatError::UnknownKind(other.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Items {
    Rect(Vec<Rect>),
    Seg(Vec<Seg>),
}

impl Items {
    pub fn kind(&self) -> Kind {
        match self {
            Items::Rect(_) => Kind::Rect,
            Items::Seg(_) => Kind::Seg,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Items::Rect(v) => v.len(),
            Items::Seg(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `(id, weight)` of every item, in file order.
    pub fn weights(&self) -> Vec<(ItemId, f64)> {
        match self {
            Items::Rect(v) => v.iter().map(|r| (r.id, r.weight)).collect(),
            Items::Seg(v) => v.iter().map(|s| (s.id, s.weight)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct InstanceFile {
    pub items: Items,
    /// Free-form provenance, such as generator parameters.
    pub metadata: BTreeMap<String, Value>,
}

#[derive(Serialize)]
struct RawOut<'a, T> {
    kind: Kind,
    metadata: &'a BTreeMap<String, Value>,
    items: &'a [T],
}

fn geom_field(e: &GeomError) -> &'static str {
    match e {
        GeomError::InvertedSpan { field, .. } => field,
        GeomError::NonPositiveWeight { .. } => "weight",
    }
}

fn parse_items<T>(raw: &[Value], validate: impl Fn(&T) -> Result<(), GeomError>) -> Result<Vec<T>, FormatError>
where
    T: Item + for<'de> Deserialize<'de>,
{
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(raw.len());
    for (index, v) in raw.iter().enumerate() {
        let item: T = serde_json::from_value(v.clone())
            .map_err(|e| FormatError::Field { index, field: "item", msg: e.to_string() })?;
        validate(&item).map_err(|e| FormatError::Field { index, field: geom_field(&e), msg: e.to_string() })?;
        if !seen.insert(item.id()) {
            return Err(FormatError::DuplicateId { id: item.id(), index });
        }
        out.push(item);
    }
    Ok(out)
}

fn syntax(e: serde_json::Error) -> FormatError {
    FormatError::Syntax { line: e.line(), column: e.column(), msg: e.to_string() }
}

impl InstanceFile {
    pub fn new(items: Items) -> Self {
        InstanceFile { items, metadata: BTreeMap::new() }
    }

    pub fn kind(&self) -> Kind {
        self.items.kind()
    }

    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let root: Value = serde_json::from_str(text).map_err(syntax)?;
        let obj = root
            .as_object()
            .ok_or_else(|| FormatError::Syntax { line: 1, column: 1, msg: "expected a JSON object".into() })?;
        let kind: Kind = match obj.get("kind") {
            Some(Value::String(s)) => s.parse()?,
            Some(other) => return Err(FormatError::UnknownKind(other.to_string())),
            None => return Err(FormatError::UnknownKind(String::new())),
        };
        let raw = match obj.get("items") {
            Some(Value::Array(a)) => a.as_slice(),
            None => &[],
            Some(_) => {
                return Err(FormatError::Syntax { line: 1, column: 1, msg: "`items` must be an array".into() })
            }
        };
        let items = match kind {
            Kind::Rect => Items::Rect(parse_items(raw, Rect::validate)?),
            Kind::Seg => Items::Seg(parse_items(raw, Seg::validate)?),
        };
        let metadata = match obj.get("metadata") {
            Some(Value::Object(m)) => m.iter().map(|(k, v)| (k.clone(), v.clone())).collect(),
            _ => BTreeMap::new(),
        };
        Ok(InstanceFile { items, metadata })
    }

    /// Canonical text: fixed key order, two-space indent, trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = match &self.items {
            Items::Rect(v) => serde_json::to_string_pretty(&RawOut { kind: Kind::Rect, metadata: &self.metadata, items: v }),
            Items::Seg(v) => serde_json::to_string_pretty(&RawOut { kind: Kind::Seg, metadata: &self.metadata, items: v }),
        }
        .expect("instances always serialize");
        s.push('\n');
        s
    }

    /// Hex SHA-256 of [`InstanceFile::to_json`].
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.to_json().as_bytes()))
    }

    pub fn read(path: &Path) -> Result<Self, FormatError> {
        let text = std::fs::read_to_string(path).map_err(|source| FormatError::Io { path: path.display().to_string(), source })?;
        InstanceFile::parse(&text)
    }

    pub fn write(&self, path: &Path) -> Result<(), FormatError> {
        std::fs::write(path, self.to_json()).map_err(|source| FormatError::Io { path: path.display().to_string(), source })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceRef {
    pub path: String,
    pub digest: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolutionFile {
    pub instance: InstanceRef,
    pub algorithm: String,
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    pub items: Vec<ItemId>,
    pub weight: f64,
    pub branch: String,
    pub millis: f64,
}

impl SolutionFile {
    pub fn new(instance: &InstanceFile, path: &str, algorithm: &str, k: usize, eps: Option<f64>, sol: &Solution, millis: f64) -> Self {
        SolutionFile {
            instance: InstanceRef { path: path.to_string(), digest: instance.digest() },
            algorithm: algorithm.to_string(),
            k,
            eps,
            items: sol.items.clone(),
            weight: sol.weight,
            branch: sol.branch.clone(),
            millis,
        }
    }

    pub fn parse(text: &str) -> Result<Self, FormatError> {
        serde_json::from_str(text).map_err(syntax)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("solutions always serialize");
        s.push('\n');
        s
    }

    pub fn read(path: &Path) -> Result<Self, FormatError> {
        let text = std::fs::read_to_string(path).map_err(|source| FormatError::Io { path: path.display().to_string(), source })?;
        SolutionFile::parse(&text)
    }

    pub fn write(&self, path: &Path) -> Result<(), FormatError> {
        std::fs::write(path, self.to_json()).map_err(|source| FormatError::Io { path: path.display().to_string(), source })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum VerifyIssue {
    DigestMismatch { expected: String, actual: String },
    UnknownItem(ItemId),
    RepeatedItem(ItemId),
    Intersecting(ItemId, ItemId),
    WeightMismatch { recorded: f64, actual: f64 },
}

impl fmt::Display for VerifyIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyIssue::DigestMismatch { expected, actual } => {
                write!(f, "instance digest {actual} does not match the recorded {expected}")
            }
            VerifyIssue::UnknownItem(id) => write!(f, "item {id} is not in the instance"),
            VerifyIssue::RepeatedItem(id) => write!(f, "item {id} is listed twice"),
            VerifyIssue::Intersecting(a, b) => write!(f, "items {a} and {b} intersect"),
            VerifyIssue::WeightMismatch { recorded, actual } => {
                write!(f, "recorded weight {recorded} but the items weigh {actual}")
            }
        }
    }
}

fn pairwise<T: Item>(pool: &[T], ids: &[ItemId], issues: &mut Vec<VerifyIssue>) -> f64 {
    let by_id: BTreeMap<ItemId, &T> = pool.iter().map(|it| (it.id(), it)).collect();
    let mut picked: Vec<&T> = Vec::new();
    let mut seen = BTreeSet::new();
    for &id in ids {
        if !seen.insert(id) {
            issues.push(VerifyIssue::RepeatedItem(id));
            continue;
        }
        match by_id.get(&id) {
            Some(it) => picked.push(it),
            None => issues.push(VerifyIssue::UnknownItem(id)),
        }
    }
    picked.sort_by_key(|it| it.id());
    for (i, a) in picked.iter().enumerate() {
        for b in &picked[i + 1..] {
            if a.intersects(b) {
                issues.push(VerifyIssue::Intersecting(a.id(), b.id()));
            }
        }
    }
    picked.iter().map(|it| it.weight()).sum()
}

/// Every problem with `sol` as a solution of `inst`; empty when it checks
/// out. Weights are compared with relative tolerance `1e-9`.
pub fn verify_solution(inst: &InstanceFile, sol: &SolutionFile) -> Vec<VerifyIssue> {
    let mut issues = Vec::new();
    let actual = inst.digest();
    if actual != sol.instance.digest {
        issues.push(VerifyIssue::DigestMismatch { expected: sol.instance.digest.clone(), actual });
    }
    let total = match &inst.items {
        Items::Rect(v) => pairwise(v, &sol.items, &mut issues),
        Items::Seg(v) => pairwise(v, &sol.items, &mut issues),
    };
    if (total - sol.weight).abs() > 1e-9 * total.abs().max(1.0) {
        issues.push(VerifyIssue::WeightMismatch { recorded: sol.weight, actual: total });
    }
    issues
}
