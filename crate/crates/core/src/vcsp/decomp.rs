use std::collections::{BTreeSet, VecDeque};

use super::VcspInstance;

/// Simple undirected graph on vertices `0..n`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<BTreeSet<usize>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { adj: vec![BTreeSet::new(); n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u != v {
            self.adj[u].insert(v);
            self.adj[v].insert(u);
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&v)
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[u].iter().copied()
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.range(u + 1..).map(move |&v| (u, v)))
    }

    /// BFS distances from `root`; unreachable vertices get `None`.
    pub fn bfs(&self, root: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.num_vertices()];
        dist[root] = Some(0);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for v in self.neighbors(u) {
                if dist[v].is_none() {
                    dist[v] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.num_vertices()];
        let mut out = Vec::new();
        for s in 0..self.num_vertices() {
            if seen[s] {
                continue;
            }
            let mut comp: Vec<usize> = self
                .bfs(s)
                .iter()
                .enumerate()
                .filter_map(|(v, d)| d.map(|_| v))
                .collect();
            for &v in &comp {
                seen[v] = true;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

/// Gaifman graph of an instance: one vertex per variable, an edge per
/// binary constraint.
pub fn gaifman(inst: &VcspInstance) -> Graph {
    let mut g = Graph::new(inst.num_vars());
    for c in inst.binaries() {
        g.add_edge(c.u, c.v);
    }
    g
}

/// Rooted tree of bags. `parent[i]` is `None` only for the root.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub parent: Vec<Option<usize>>,
    pub bags: Vec<Vec<usize>>,
}

impl TreeDecomposition {
    /// Single bag holding every vertex.
    pub fn trivial(n: usize) -> Self {
        TreeDecomposition { parent: vec![None], bags: vec![(0..n).collect()] }
    }

    pub fn num_nodes(&self) -> usize {
        self.bags.len()
    }

    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(1).saturating_sub(1)
    }

    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut ch = vec![Vec::new(); self.num_nodes()];
        for (i, p) in self.parent.iter().enumerate() {
            if let Some(p) = *p {
                ch[p].push(i);
            }
        }
        ch
    }

    pub fn root(&self) -> Option<usize> {
        self.parent.iter().position(Option::is_none)
    }
}

/// Tree decomposition from a greedy min-fill elimination ordering (ties by
/// degree, then vertex index). Bags of independent roots are chained into a
/// path, so the result is always a single tree.
pub fn min_fill_decomposition(g: &Graph) -> TreeDecomposition {
    let n = g.num_vertices();
    let mut adj: Vec<BTreeSet<usize>> = (0..n).map(|u| g.neighbors(u).collect()).collect();
    let mut eliminated = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut bags = Vec::with_capacity(n);

    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !eliminated[v])
            .min_by_key(|&v| (fill_in(&adj, v), adj[v].len(), v))
            .unwrap();
        let nbrs: Vec<usize> = adj[v].iter().copied().collect();
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
            adj[a].remove(&v);
        }
        adj[v].clear();
        eliminated[v] = true;
        let mut bag = nbrs;
        bag.push(v);
        bag.sort_unstable();
        order.push(v);
        bags.push(bag);
    }

    // Node i holds the bag of the i-th eliminated vertex; its parent is the
    // node of the earliest-eliminated later neighbour.
    let mut step = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        step[v] = i;
    }
    let mut parent: Vec<Option<usize>> = (0..n)
        .map(|i| {
            bags[i]
                .iter()
                .filter(|&&u| u != order[i])
                .map(|&u| step[u])
                .min()
        })
        .collect();
    let roots: Vec<usize> = (0..n).filter(|&i| parent[i].is_none()).collect();
    for w in roots.windows(2) {
        parent[w[0]] = Some(w[1]);
    }
    TreeDecomposition { parent, bags }
}

fn fill_in(adj: &[BTreeSet<usize>], v: usize) -> usize {
    let nbrs: Vec<usize> = adj[v].iter().copied().collect();
    let mut missing = 0;
    for (i, &a) in nbrs.iter().enumerate() {
        for &b in &nbrs[i + 1..] {
            if !adj[a].contains(&b) {
                missing += 1;
            }
        }
    }
    missing
}

/// Checks that `td` is a tree, that every vertex occurs in a nonempty
/// connected set of bags, and that every edge is covered by some bag.
pub fn validate_decomposition(g: &Graph, td: &TreeDecomposition) -> bool {
    let nodes = td.num_nodes();
    let n = g.num_vertices();
    if td.parent.len() != nodes {
        return false;
    }
    if nodes == 0 {
        return n == 0;
    }
    if td.parent.iter().filter(|p| p.is_none()).count() != 1 {
        return false;
    }
    // every node must reach the root without revisiting
    for start in 0..nodes {
        let mut cur = start;
        let mut steps = 0;
        while let Some(p) = td.parent[cur] {
            if p >= nodes || steps > nodes {
                return false;
            }
            cur = p;
            steps += 1;
        }
    }
    let mut member = vec![vec![false; n]; nodes];
    for (i, bag) in td.bags.iter().enumerate() {
        for &u in bag {
            if u >= n {
                return false;
            }
            member[i][u] = true;
        }
    }
    // occurrences of u form a connected subtree iff exactly one occurrence
    // has a parent not containing u
    for u in 0..n {
        let tops = (0..nodes)
            .filter(|&i| member[i][u] && td.parent[i].map_or(true, |p| !member[p][u]))
            .count();
        if tops != 1 {
            return false;
        }
    }
    g.edges().all(|(u, v)| (0..nodes).any(|i| member[i][u] && member[i][v]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaifman_shapes() {
        let mut inst = VcspInstance::new();
        for _ in 0..4 {
            inst.add_variable(vec![0.0.into()]);
        }
        assert_eq!(gaifman(&inst).num_edges(), 0);
        inst.add_hard(0, 1, |_, _| true);
        inst.add_hard(1, 2, |_, _| true);
        let g = gaifman(&inst);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        inst.add_hard(2, 3, |_, _| true);
        inst.add_hard(3, 0, |_, _| true);
        let g = gaifman(&inst);
        assert_eq!(g.num_edges(), 4);
        assert!((0..4).all(|v| g.degree(v) == 2));
    }

    #[test]
    fn min_fill_widths() {
        let path = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        let td = min_fill_decomposition(&path);
        assert!(validate_decomposition(&path, &td));
        assert_eq!(td.width(), 1);

        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let td = min_fill_decomposition(&k4);
        assert!(validate_decomposition(&k4, &td));
        assert_eq!(td.width(), 3);

        let empty = Graph::new(3);
        let td = min_fill_decomposition(&empty);
        assert!(validate_decomposition(&empty, &td));
        assert_eq!(td.width(), 0);
        assert_eq!(td.num_nodes(), 3);
    }

    #[test]
    fn validation_rejects_broken_decompositions() {
        let path = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        // missing the bag covering edge (1, 2)
        let td = TreeDecomposition { parent: vec![None, Some(0)], bags: vec![vec![0, 1], vec![2]] };
        assert!(!validate_decomposition(&path, &td));
        // vertex 1 occurs in two bags separated by a bag without it
        let td = TreeDecomposition {
            parent: vec![None, Some(0), Some(1)],
            bags: vec![vec![0, 1], vec![0], vec![1, 2]],
        };
        assert!(!validate_decomposition(&path, &td));
        let ok = TreeDecomposition { parent: vec![None, Some(0)], bags: vec![vec![0, 1], vec![1, 2]] };
        assert!(validate_decomposition(&path, &ok));
        assert!(validate_decomposition(&path, &TreeDecomposition::trivial(3)));
    }
}
