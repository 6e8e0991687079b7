//! Arity-2 valued constraint satisfaction.
//!
//! Values are addressed by their position in the variable's domain. Binary
//! revenue functions are callbacks over value positions, never materialized
//! as tables. Hard constraints return [`Revenue::NegInf`] for forbidden pairs.

mod decomp;
mod dp;

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign};
use std::sync::Arc;

pub use decomp::{gaifman, min_fill_decomposition, validate_decomposition, Graph, TreeDecomposition};
pub use dp::{brute_force, brute_force_with_guard, solve_dp, solve_min_fill, BRUTE_FORCE_GUARD};

/// A revenue value: a finite real or minus infinity. `NegInf` absorbs under
/// addition and orders below every finite value.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub enum Revenue {
    NegInf,
    Finite(f64),
}

impl Revenue {
    pub const ZERO: Revenue = Revenue::Finite(0.0);

    pub fn is_finite(self) -> bool {
        matches!(self, Revenue::Finite(_))
    }

    pub fn value(self) -> Option<f64> {
        match self {
            Revenue::Finite(v) => Some(v),
            Revenue::NegInf => None,
        }
    }

    pub fn max(self, other: Revenue) -> Revenue {
        if other > self {
            other
        } else {
            self
        }
    }

    /// `self` is within relative tolerance `1e-9` of `target` or above it.
    pub(crate) fn reaches(self, target: Revenue) -> bool {
        match (self, target) {
            (_, Revenue::NegInf) => true,
            (Revenue::NegInf, _) => false,
            (Revenue::Finite(a), Revenue::Finite(b)) => a >= b - 1e-9 * b.abs().max(1.0),
        }
    }
}

impl Add for Revenue {
    type Output = Revenue;
    fn add(self, rhs: Revenue) -> Revenue {
        match (self, rhs) {
            (Revenue::Finite(a), Revenue::Finite(b)) => Revenue::Finite(a + b),
            _ => Revenue::NegInf,
        }
    }
}

impl AddAssign for Revenue {
    fn add_assign(&mut self, rhs: Revenue) {
        *self = *self + rhs;
    }
}

impl From<f64> for Revenue {
    fn from(v: f64) -> Self {
        Revenue::Finite(v)
    }
}

impl fmt::Display for Revenue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Revenue::Finite(v) => write!(f, "{v}"),
            Revenue::NegInf => f.write_str("-inf"),
        }
    }
}

pub type BinaryFn = Arc<dyn Fn(usize, usize) -> Revenue + Send + Sync>;

/// Binary constraint between `u < v`; `f(a, b)` receives the value of `u`
/// first.
#[derive(Clone)]
pub struct Binary {
    pub u: usize,
    pub v: usize,
    f: BinaryFn,
}

impl Binary {
    pub fn eval(&self, a: usize, b: usize) -> Revenue {
        (self.f)(a, b)
    }
}

impl fmt::Debug for Binary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Binary").field("u", &self.u).field("v", &self.v).finish_non_exhaustive()
    }
}

#[derive(Clone, Debug, Default)]
pub struct VcspInstance {
    unary: Vec<Vec<Revenue>>,
    binary: Vec<Binary>,
    pair_index: HashMap<(usize, usize), usize>,
}

impl VcspInstance {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a variable whose domain has one value per entry of `unary`.
    pub fn add_variable(&mut self, unary: Vec<Revenue>) -> usize {
        assert!(!unary.is_empty(), "domains must be nonempty");
        self.unary.push(unary);
        self.unary.len() - 1
    }

    pub fn num_vars(&self) -> usize {
        self.unary.len()
    }

    pub fn domain_size(&self, var: usize) -> usize {
        self.unary[var].len()
    }

    pub fn unary(&self, var: usize) -> &[Revenue] {
        &self.unary[var]
    }

    pub fn binaries(&self) -> &[Binary] {
        &self.binary
    }

    pub fn max_domain(&self) -> usize {
        self.unary.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Adds a constraint binding `(u, v)`. A self-pair folds its diagonal into
    /// the unary revenues; a repeated pair is merged by summation.
    pub fn add_binary<F>(&mut self, u: usize, v: usize, f: F)
    where
        F: Fn(usize, usize) -> Revenue + Send + Sync + 'static,
    {
        if u == v {
            for (a, r) in self.unary[u].iter_mut().enumerate() {
                *r += f(a, a);
            }
            return;
        }
        let f: BinaryFn = if u < v { Arc::new(f) } else { Arc::new(move |a, b| f(b, a)) };
        let (u, v) = (u.min(v), u.max(v));
        match self.pair_index.get(&(u, v)) {
            Some(&i) => {
                let old = self.binary[i].f.clone();
                self.binary[i].f = Arc::new(move |a, b| old(a, b) + f(a, b));
            }
            None => {
                self.pair_index.insert((u, v), self.binary.len());
                self.binary.push(Binary { u, v, f });
            }
        }
    }

    /// Hard constraint: 0 when `allowed(a, b)`, minus infinity otherwise.
    pub fn add_hard<F>(&mut self, u: usize, v: usize, allowed: F)
    where
        F: Fn(usize, usize) -> bool + Send + Sync + 'static,
    {
        self.add_binary(u, v, move |a, b| if allowed(a, b) { Revenue::ZERO } else { Revenue::NegInf });
    }

    /// Total revenue of a full assignment.
    pub fn evaluate(&self, assignment: &[usize]) -> Revenue {
        assert_eq!(assignment.len(), self.num_vars());
        let mut total = Revenue::ZERO;
        for (var, &a) in assignment.iter().enumerate() {
            total += self.unary[var][a];
        }
        for c in &self.binary {
            total += c.eval(assignment[c.u], assignment[c.v]);
        }
        total
    }

    /// The sub-instance induced by `keep` (original indices, any order).
    /// Variable `i` of the result is `keep[i]`; constraints with a deleted
    /// endpoint are dropped.
    pub fn restrict(&self, keep: &[usize]) -> VcspInstance {
        let mut pos = vec![usize::MAX; self.num_vars()];
        let mut out = VcspInstance::new();
        for (i, &var) in keep.iter().enumerate() {
            pos[var] = i;
            out.add_variable(self.unary[var].clone());
        }
        for c in &self.binary {
            let (pu, pv) = (pos[c.u], pos[c.v]);
            if pu != usize::MAX && pv != usize::MAX {
                let f = c.f.clone();
                out.add_binary(pu, pv, move |a, b| f(a, b));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neg_inf_absorbs_and_orders_low() {
        assert_eq!(Revenue::Finite(3.0) + Revenue::NegInf, Revenue::NegInf);
        assert_eq!(Revenue::NegInf + Revenue::NegInf, Revenue::NegInf);
        assert!(Revenue::NegInf < Revenue::Finite(-1e300));
        assert_eq!(Revenue::Finite(1.0).max(Revenue::NegInf), Revenue::Finite(1.0));
    }

    #[test]
    fn self_pairs_fold_into_unary() {
        let mut inst = VcspInstance::new();
        let x = inst.add_variable(vec![1.0.into(), 2.0.into()]);
        inst.add_binary(x, x, |a, _| Revenue::Finite(a as f64 * 10.0));
        assert!(inst.binaries().is_empty());
        assert_eq!(inst.unary(x), &[Revenue::Finite(1.0), Revenue::Finite(12.0)]);
    }

    #[test]
    fn duplicate_pairs_merge_by_sum() {
        let mut inst = VcspInstance::new();
        let x = inst.add_variable(vec![Revenue::ZERO; 2]);
        let y = inst.add_variable(vec![Revenue::ZERO; 3]);
        inst.add_binary(x, y, |a, b| Revenue::Finite((a * 10 + b) as f64));
        // reversed orientation: arguments arrive as (value of y, value of x)
        inst.add_binary(y, x, |b, a| Revenue::Finite((a * 100 + b * 1000) as f64));
        assert_eq!(inst.binaries().len(), 1);
        assert_eq!(inst.evaluate(&[1, 2]), Revenue::Finite(12.0 + 100.0 + 2000.0));
    }

    #[test]
    fn restrict_drops_constraints_of_deleted_vars() {
        let mut inst = VcspInstance::new();
        for _ in 0..3 {
            inst.add_variable(vec![Revenue::ZERO, Revenue::Finite(1.0)]);
        }
        inst.add_hard(0, 1, |a, b| a + b < 2);
        inst.add_hard(1, 2, |a, b| a + b < 2);
        let sub = inst.restrict(&[2, 1]);
        assert_eq!(sub.num_vars(), 2);
        assert_eq!(sub.binaries().len(), 1);
        assert_eq!(sub.evaluate(&[1, 1]), Revenue::NegInf);
        assert_eq!(sub.evaluate(&[1, 0]), Revenue::Finite(1.0));
    }
}
