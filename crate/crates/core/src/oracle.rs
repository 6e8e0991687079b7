//! Exhaustive reference solvers for the size-bounded independent set
//! problem, used as ground truth by tests and benchmarks.

use crate::error::SolveError;
use crate::geom::{Item, Solution};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    /// Largest number of candidate subsets (all sizes up to `k`) that
    /// [`exact_mwis`] agrees to enumerate.
    pub max_subsets: u128,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_subsets: 5_000_000 }
    }
}

/// `sum_{j <= k} C(n, j)`, saturating.
pub fn subsets_up_to(n: usize, k: usize) -> u128 {
    let mut total: u128 = 0;
    let mut c: u128 = 1;
    for j in 0..=k.min(n) {
        total = total.saturating_add(c);
        c = c.saturating_mul((n - j) as u128) / (j as u128 + 1);
    }
    total
}

fn sorted_by_id<T: Item>(items: &[T]) -> Vec<T> {
    let mut v = items.to_vec();
    v.sort_by_key(Item::id);
    v
}

pub fn exact_mwis<T: Item>(items: &[T], k: usize) -> Result<Solution, SolveError> {
    exact_mwis_with(items, k, OracleBudget::default())
}

/// Enumerates independent subsets in lexicographic id order and keeps the
/// first one of maximum weight, so ties resolve to the smallest id tuple.
pub fn exact_mwis_with<T: Item>(items: &[T], k: usize, budget: OracleBudget) -> Result<Solution, SolveError> {
    let count = subsets_up_to(items.len(), k);
    if count > budget.max_subsets {
        return Err(SolveError::BudgetExceeded { what: "oracle subsets", count, cap: budget.max_subsets });
    }
    let items = sorted_by_id(items);
    let mut search = Search { items: &items, k, chosen: Vec::new(), best: (0.0, Vec::new()), bound: None };
    search.run(0, 0.0);
    Ok(search.finish("oracle"))
}

/// Branch and bound over the same order, pruning when even the heaviest
/// remaining items cannot beat the incumbent. Same value and witness as
/// [`exact_mwis`]; no budget.
pub fn exact_mwis_pruned<T: Item>(items: &[T], k: usize) -> Solution {
    let items = sorted_by_id(items);
    // best[i][j]: total of the j heaviest among items[i..]
    let bound: Vec<Vec<f64>> = (0..=items.len())
        .map(|i| {
            let mut w: Vec<f64> = items[i..].iter().map(Item::weight).collect();
            w.sort_by(|a, b| b.total_cmp(a));
            let mut acc = vec![0.0];
            for x in w.into_iter().take(k) {
                acc.push(acc.last().unwrap() + x);
            }
            acc
        })
        .collect();
    let mut search = Search { items: &items, k, chosen: Vec::new(), best: (0.0, Vec::new()), bound: Some(bound) };
    search.run(0, 0.0);
    search.finish("oracle-pruned")
}

struct Search<'a, T> {
    items: &'a [T],
    k: usize,
    chosen: Vec<usize>,
    best: (f64, Vec<usize>),
    bound: Option<Vec<Vec<f64>>>,
}

impl<T: Item> Search<'_, T> {
    fn run(&mut self, from: usize, weight: f64) {
        if weight > self.best.0 {
            self.best = (weight, self.chosen.clone());
        }
        if self.chosen.len() == self.k {
            return;
        }
        if let Some(b) = &self.bound {
            let room = self.k - self.chosen.len();
            let tail = &b[from];
            let extra = tail[room.min(tail.len() - 1)];
            if weight + extra < self.best.0 - 1e-9 * self.best.0.abs() {
                return;
            }
        }
        for i in from..self.items.len() {
            let cand = &self.items[i];
            if self.chosen.iter().all(|&c| !self.items[c].intersects(cand)) {
                self.chosen.push(i);
                self.run(i + 1, weight + cand.weight());
                self.chosen.pop();
            }
        }
    }

    fn finish(self, tag: &str) -> Solution {
        let picked: Vec<T> = self.best.1.iter().map(|&i| self.items[i].clone()).collect();
        Solution::from_items(&picked, tag)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{Rect, Seg};

    fn instance_a() -> Vec<Rect> {
        vec![
            Rect::new(1, 0, 2, 0, 2, 5.0).unwrap(),
            Rect::new(2, 3, 5, 0, 2, 4.0).unwrap(),
            Rect::new(3, 1, 4, 1, 3, 6.0).unwrap(),
        ]
    }

    #[test]
    fn instance_a_values() {
        let s = exact_mwis(&instance_a(), 2).unwrap();
        assert_eq!((s.items, s.weight), (vec![1, 2], 9.0));
        let s = exact_mwis(&instance_a(), 1).unwrap();
        assert_eq!((s.items, s.weight), (vec![3], 6.0));
        assert_eq!(exact_mwis::<Rect>(&[], 3).unwrap().weight, 0.0);
    }

    #[test]
    fn ties_pick_smallest_ids() {
        let d: Vec<Seg> = [4, 2, 9].iter().map(|&id| Seg::horizontal(id, id as i64, 0, 1, 1.0).unwrap()).collect();
        assert_eq!(exact_mwis(&d, 2).unwrap().items, vec![2, 4]);
        assert_eq!(exact_mwis_pruned(&d, 2).items, vec![2, 4]);
    }

    #[test]
    fn budget_is_enforced() {
        assert_eq!(subsets_up_to(3, 2), 7);
        assert_eq!(subsets_up_to(5, 9), 32);
        let d: Vec<Seg> = (0..30).map(|i| Seg::horizontal(i, i as i64, 0, 1, 1.0).unwrap()).collect();
        let tight = OracleBudget { max_subsets: 100 };
        assert!(matches!(exact_mwis_with(&d, 3, tight), Err(SolveError::BudgetExceeded { .. })));
    }

    #[test]
    fn pruned_matches_plain() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..150 {
            let n = rng.gen_range(0..12);
            let d: Vec<Rect> = (0..n)
                .map(|i| {
                    let (x, y) = (rng.gen_range(0..20), rng.gen_range(0..20));
                    Rect::new(i, x, x + rng.gen_range(0..6), y, y + rng.gen_range(0..6), rng.gen_range(1..10) as f64).unwrap()
                })
                .collect();
            for k in 1..4 {
                let (a, b) = (exact_mwis(&d, k).unwrap(), exact_mwis_pruned(&d, k));
                assert_eq!((a.items, a.weight), (b.items, b.weight));
            }
        }
    }
}
