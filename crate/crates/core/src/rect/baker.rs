//! Layered deletion on the Gaifman graph of a constraint instance.
//!
//! Each connected component is split into BFS layers from its smallest
//! variable. For a residue `r`, deleting every layer `t ≡ r (mod ℓ)` leaves
//! pieces spanning fewer than `ℓ` consecutive layers. With nonnegative
//! unary revenues and hard binary constraints, some residue loses at most a
//! `1/ℓ` share of the component's optimum.

use crate::vcsp::{gaifman, solve_min_fill, Revenue, VcspInstance};

/// `ℓ = ⌈1/eps⌉`.
pub fn layer_count(eps: f64) -> usize {
    ((1.0 / eps) - 1e-9).ceil().max(1.0) as usize
}

#[derive(Clone, Debug)]
pub struct BakerVariant {
    pub residue: usize,
    /// Surviving variables, as indices of the original instance.
    pub kept: Vec<usize>,
    pub instance: VcspInstance,
}

#[derive(Clone, Debug)]
pub struct BakerComponent {
    /// Variables of the component, sorted.
    pub vars: Vec<usize>,
    /// BFS layer of each entry of `vars`.
    pub layers: Vec<usize>,
    pub variants: Vec<BakerVariant>,
}

pub fn baker_split(inst: &VcspInstance, eps: f64) -> Vec<BakerComponent> {
    let ell = layer_count(eps);
    let g = gaifman(inst);
    g.components()
        .into_iter()
        .map(|vars| {
            let dist = g.bfs(vars[0]);
            let layers: Vec<usize> = vars.iter().map(|&v| dist[v].unwrap()).collect();
            let variants = (0..ell)
                .map(|r| {
                    let kept: Vec<usize> = vars
                        .iter()
                        .zip(&layers)
                        .filter(|(_, &t)| t % ell != r)
                        .map(|(&v, _)| v)
                        .collect();
                    let instance = inst.restrict(&kept);
                    BakerVariant { residue: r, kept, instance }
                })
                .collect();
            BakerComponent { vars, layers, variants }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct LayeredSolve {
    pub revenue: Revenue,
    pub assignment: Vec<usize>,
    /// Chosen residue per component.
    pub residues: Vec<usize>,
    /// Min-fill width of every reduced instance that was solved.
    pub widths: Vec<usize>,
}

/// Solves every reduced instance of every component, keeps the best residue
/// per component (smallest residue on ties) and lifts the result, giving
/// deleted variables the value `bottom[var]`.
pub fn solve_layered(inst: &VcspInstance, eps: f64, bottom: &[usize]) -> LayeredSolve {
    let mut assignment = bottom.to_vec();
    let mut revenue = Revenue::ZERO;
    let mut residues = Vec::new();
    let mut widths = Vec::new();
    for comp in baker_split(inst, eps) {
        let mut best: Option<(Revenue, usize, Vec<usize>, &BakerVariant)> = None;
        for variant in &comp.variants {
            let (rev, a, width) = solve_min_fill(&variant.instance);
            widths.push(width);
            if best.as_ref().map_or(true, |b| rev > b.0) {
                best = Some((rev, variant.residue, a, variant));
            }
        }
        let (rev, r, a, variant) = best.expect("at least one residue");
        for (i, &var) in variant.kept.iter().enumerate() {
            assignment[var] = a[i];
        }
        revenue += rev;
        residues.push(r);
    }
    LayeredSolve { revenue, assignment, residues, widths }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zero_vars(n: usize) -> VcspInstance {
        let mut inst = VcspInstance::new();
        for _ in 0..n {
            inst.add_variable(vec![Revenue::ZERO, Revenue::Finite(1.0)]);
        }
        inst
    }

    #[test]
    fn edgeless_instance() {
        let inst = zero_vars(3);
        let comps = baker_split(&inst, 0.5);
        assert_eq!(comps.len(), 3);
        for c in &comps {
            assert_eq!(c.layers, vec![0]);
            assert!(c.variants[0].kept.is_empty());
            assert_eq!(c.variants[1].kept, c.vars);
        }
    }

    #[test]
    fn path_layers_alternate() {
        let mut inst = zero_vars(4);
        for (u, v) in [(0, 1), (1, 2), (2, 3)] {
            inst.add_hard(u, v, |_, _| true);
        }
        let comps = baker_split(&inst, 0.5);
        assert_eq!(comps.len(), 1);
        let c = &comps[0];
        assert_eq!(c.layers, vec![0, 1, 2, 3]);
        // M_0 = {0, 2} deleted under r = 0, M_1 = {1, 3} under r = 1
        assert_eq!(c.variants[0].kept, vec![1, 3]);
        assert_eq!(c.variants[1].kept, vec![0, 2]);
    }

    #[test]
    fn single_variable_survives_nonzero_residues() {
        let inst = zero_vars(1);
        for eps in [0.9, 0.5, 0.2] {
            let c = &baker_split(&inst, eps)[0];
            assert_eq!(c.variants.len(), layer_count(eps));
            for v in &c.variants[1..] {
                assert_eq!(v.kept, vec![0]);
                assert_eq!(v.instance.unary(0), inst.unary(0));
            }
        }
    }

    #[test]
    fn layer_counts() {
        assert_eq!(layer_count(0.5), 2);
        assert_eq!(layer_count(0.25), 4);
        assert_eq!(layer_count(0.15), 7);
        assert_eq!(layer_count(1.0 / 3.0), 3);
    }

    #[test]
    fn lifting_uses_bottom_values() {
        let mut inst = zero_vars(3);
        inst.add_hard(0, 1, |a, b| a + b < 2);
        inst.add_hard(1, 2, |a, b| a + b < 2);
        // ℓ = 2: r=0 keeps {1} (revenue 1), r=1 keeps {0, 2} (revenue 2)
        let s = solve_layered(&inst, 0.5, &[0, 0, 0]);
        assert_eq!(s.revenue, Revenue::Finite(2.0));
        assert_eq!(s.assignment, vec![1, 0, 1]);
        assert_eq!(s.residues, vec![1]);
        assert_eq!(inst.evaluate(&s.assignment), s.revenue);
    }
}
