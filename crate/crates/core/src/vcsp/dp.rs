use super::{gaifman, min_fill_decomposition, validate_decomposition, Revenue, TreeDecomposition, VcspInstance};
use crate::error::VcspError;

/// Largest search space `brute_force` will enumerate.
pub const BRUTE_FORCE_GUARD: u128 = 10_000_000;

/// Which node evaluates which constraint, and a post-order of the tree.
struct Plan {
    post_order: Vec<usize>,
    unary_at: Vec<Vec<usize>>,
    binary_at: Vec<Vec<usize>>,
}

impl Plan {
    fn new(inst: &VcspInstance, td: &TreeDecomposition) -> Plan {
        let nodes = td.num_nodes();
        let children = td.children();
        let mut post_order = Vec::with_capacity(nodes);
        if let Some(root) = td.root() {
            let mut stack = vec![(root, false)];
            while let Some((t, expanded)) = stack.pop() {
                if expanded {
                    post_order.push(t);
                } else {
                    stack.push((t, true));
                    stack.extend(children[t].iter().map(|&c| (c, false)));
                }
            }
        }
        let first_with = |pred: &dyn Fn(&[usize]) -> bool| (0..nodes).find(|&t| pred(&td.bags[t]));
        let mut unary_at = vec![Vec::new(); nodes];
        for var in 0..inst.num_vars() {
            let t = first_with(&|bag: &[usize]| bag.contains(&var)).expect("validated decomposition covers every variable");
            unary_at[t].push(var);
        }
        let mut binary_at = vec![Vec::new(); nodes];
        for (i, c) in inst.binaries().iter().enumerate() {
            let t = first_with(&|bag: &[usize]| bag.contains(&c.u) && bag.contains(&c.v))
                .expect("validated decomposition covers every edge");
            binary_at[t].push(i);
        }
        Plan { post_order, unary_at, binary_at }
    }
}

/// Mixed-radix enumeration of assignments to a list of variables, honouring
/// variables pinned to a single value.
struct Odometer {
    radix: Vec<usize>,
    base: Vec<Option<usize>>,
    digits: Vec<usize>,
}

impl Odometer {
    fn new(vars: &[usize], inst: &VcspInstance, fixed: &[Option<usize>]) -> Self {
        let radix = vars.iter().map(|&v| if fixed[v].is_some() { 1 } else { inst.domain_size(v) }).collect();
        let base = vars.iter().map(|&v| fixed[v]).collect();
        Odometer { radix, base, digits: vec![0; vars.len()] }
    }

    fn len(&self) -> usize {
        self.radix.iter().product()
    }

    fn value(&self, i: usize) -> usize {
        self.base[i].unwrap_or(self.digits[i])
    }

    /// Index of the current digits projected onto positions `sel` of `self`.
    fn index_of(&self, sel: &[usize], radix: &[usize]) -> usize {
        sel.iter().zip(radix).fold(0, |acc, (&i, &r)| acc * r + self.digits[i])
    }

    /// Advances, last position fastest; returns false after the final entry.
    fn step(&mut self) -> bool {
        for i in (0..self.digits.len()).rev() {
            self.digits[i] += 1;
            if self.digits[i] < self.radix[i] {
                return true;
            }
            self.digits[i] = 0;
        }
        false
    }
}

/// Message a node sends to its parent, indexed by the separator assignment.
struct Message {
    /// separator variables, sorted
    sep: Vec<usize>,
    radix: Vec<usize>,
    best: Vec<Revenue>,
}

fn max_revenue(inst: &VcspInstance, td: &TreeDecomposition, plan: &Plan, fixed: &[Option<usize>]) -> Revenue {
    let children = td.children();
    let mut messages: Vec<Option<Message>> = (0..td.num_nodes()).map(|_| None).collect();
    let mut total = Revenue::ZERO;
    let mut assignment = vec![0usize; inst.num_vars()];

    for &t in &plan.post_order {
        let bag = &td.bags[t];
        let mut odo = Odometer::new(bag, inst, fixed);
        // positions (within this bag) of each child's separator variables
        let child_sel: Vec<Vec<usize>> = children[t]
            .iter()
            .map(|&c| {
                let m = messages[c].as_ref().unwrap();
                m.sep.iter().map(|v| bag.binary_search(v).unwrap()).collect()
            })
            .collect();
        let parent_sel: Option<(Vec<usize>, Vec<usize>)> = td.parent[t].map(|p| {
            let sel: Vec<usize> =
                (0..bag.len()).filter(|&i| td.bags[p].binary_search(&bag[i]).is_ok()).collect();
            let radix = sel.iter().map(|&i| odo.radix[i]).collect();
            (sel, radix)
        });
        let mut out = match &parent_sel {
            Some((sel, radix)) => Message {
                sep: sel.iter().map(|&i| bag[i]).collect(),
                radix: radix.clone(),
                best: vec![Revenue::NegInf; radix.iter().product()],
            },
            None => Message { sep: Vec::new(), radix: Vec::new(), best: vec![Revenue::NegInf] },
        };

        if odo.len() > 0 {
            loop {
                for i in 0..bag.len() {
                    assignment[bag[i]] = odo.value(i);
                }
                let mut local = Revenue::ZERO;
                for &v in &plan.unary_at[t] {
                    local += inst.unary(v)[assignment[v]];
                }
                for &ci in &plan.binary_at[t] {
                    if local == Revenue::NegInf {
                        break;
                    }
                    let c = &inst.binaries()[ci];
                    local += c.eval(assignment[c.u], assignment[c.v]);
                }
                for (k, &c) in children[t].iter().enumerate() {
                    if local == Revenue::NegInf {
                        break;
                    }
                    let m = messages[c].as_ref().unwrap();
                    local += m.best[odo.index_of(&child_sel[k], &m.radix)];
                }
                let slot = match &parent_sel {
                    Some((sel, radix)) => odo.index_of(sel, radix),
                    None => 0,
                };
                out.best[slot] = out.best[slot].max(local);
                if !odo.step() {
                    break;
                }
            }
        }
        for &c in &children[t] {
            messages[c] = None;
        }
        if td.parent[t].is_none() {
            total += out.best[0];
        } else {
            messages[t] = Some(out);
        }
    }
    total
}

/// Exact maximum revenue over all assignments, by dynamic programming over
/// `td`. Among optimal assignments the lexicographically smallest one (by
/// variable index, then domain position) is returned. If every assignment is
/// forbidden the revenue is `NegInf` and the assignment is all zeros.
pub fn solve_dp(inst: &VcspInstance, td: &TreeDecomposition) -> Result<(Revenue, Vec<usize>), VcspError> {
    if !validate_decomposition(&gaifman(inst), td) {
        return Err(VcspError::InvalidDecomposition);
    }
    let n = inst.num_vars();
    let plan = Plan::new(inst, td);
    let mut fixed = vec![None; n];
    let opt = max_revenue(inst, td, &plan, &fixed);
    if opt == Revenue::NegInf {
        return Ok((opt, vec![0; n]));
    }
    // Pin variables one at a time to the first value that keeps the optimum
    // reachable.
    for var in 0..n {
        let mut chosen = None;
        for a in 0..inst.domain_size(var) {
            fixed[var] = Some(a);
            if max_revenue(inst, td, &plan, &fixed).reaches(opt) {
                chosen = Some(a);
                break;
            }
        }
        fixed[var] = Some(chosen.expect("some value of every variable attains the optimum"));
    }
    let assignment: Vec<usize> = fixed.into_iter().map(Option::unwrap).collect();
    Ok((opt, assignment))
}

/// Min-fill decomposition of the Gaifman graph followed by [`solve_dp`].
/// Also reports the decomposition width.
pub fn solve_min_fill(inst: &VcspInstance) -> (Revenue, Vec<usize>, usize) {
    let td = min_fill_decomposition(&gaifman(inst));
    let (rev, a) = solve_dp(inst, &td).expect("min-fill decompositions are valid");
    (rev, a, td.width())
}

pub fn brute_force(inst: &VcspInstance) -> Result<(Revenue, Vec<usize>), VcspError> {
    brute_force_with_guard(inst, BRUTE_FORCE_GUARD)
}

/// Exhaustive search with the same tie-break as [`solve_dp`].
pub fn brute_force_with_guard(inst: &VcspInstance, guard: u128) -> Result<(Revenue, Vec<usize>), VcspError> {
    let n = inst.num_vars();
    let mut size: u128 = 1;
    for v in 0..n {
        size = size.saturating_mul(inst.domain_size(v) as u128);
        if size > guard {
            return Err(VcspError::TooLarge { size, guard });
        }
    }
    let vars: Vec<usize> = (0..n).collect();
    let free = vec![None; n];
    let scan = |mut visit: Box<dyn FnMut(&[usize]) -> bool + '_>| {
        let mut odo = Odometer::new(&vars, inst, &free);
        let mut a = vec![0; n];
        loop {
            for (i, slot) in a.iter_mut().enumerate() {
                *slot = odo.value(i);
            }
            if !visit(&a) || !odo.step() {
                break;
            }
        }
    };
    let mut best = Revenue::NegInf;
    scan(Box::new(|a| {
        best = best.max(inst.evaluate(a));
        true
    }));
    if best == Revenue::NegInf {
        return Ok((best, vec![0; n]));
    }
    let mut witness = Vec::new();
    scan(Box::new(|a| {
        if inst.evaluate(a).reaches(best) {
            witness = a.to_vec();
            false
        } else {
            true
        }
    }));
    Ok((best, witness))
}
