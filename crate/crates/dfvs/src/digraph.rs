//! Directed graph representation and strongly connected component machinery.
//!
//! Vertices are contiguous 0-based indices. Adjacency is stored CSR-style
//! (offset arrays into flat neighbor arrays) and rebuilt on every induced
//! subgraph; parallel arcs are deduplicated at construction time and
//! self-loops are kept in the arc list but also flagged per vertex.

use std::collections::BTreeSet;

/// An immutable directed graph with CSR-style out- and in-adjacency.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    arcs: Vec<(usize, usize)>,
    out_off: Vec<usize>,
    out_adj: Vec<usize>,
    in_off: Vec<usize>,
    in_adj: Vec<usize>,
    self_loop: Vec<bool>,
}

impl Digraph {
    /// Builds a digraph on `n` vertices, deduplicating parallel arcs.
    ///
    /// Panics if an arc endpoint is out of range.
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Digraph {
        let mut list: Vec<(usize, usize)> = arcs.into_iter().collect();
        for &(u, v) in &list {
            assert!(u < n && v < n, "arc ({u}, {v}) out of range for n = {n}");
        }
        list.sort_unstable();
        list.dedup();

        let mut self_loop = vec![false; n];
        let mut out_deg = vec![0usize; n];
        let mut in_deg = vec![0usize; n];
        for &(u, v) in &list {
            if u == v {
                self_loop[u] = true;
            }
            out_deg[u] += 1;
            in_deg[v] += 1;
        }

        let out_off = prefix_sums(&out_deg);
        let in_off = prefix_sums(&in_deg);
        let mut out_adj = vec![0usize; list.len()];
        let mut in_adj = vec![0usize; list.len()];
        let mut out_pos = out_off.clone();
        let mut in_pos = in_off.clone();
        for &(u, v) in &list {
            out_adj[out_pos[u]] = v;
            out_pos[u] += 1;
            in_adj[in_pos[v]] = u;
            in_pos[v] += 1;
        }

        Digraph { n, arcs: list, out_off, out_adj, in_off, in_adj, self_loop }
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of arcs after deduplication (self-loops included).
    pub fn m(&self) -> usize {
        self.arcs.len()
    }

    /// The normalized arc list, sorted lexicographically.
    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    /// Out-neighbors of `v` in increasing order.
    pub fn out(&self, v: usize) -> &[usize] {
        &self.out_adj[self.out_off[v]..self.out_off[v + 1]]
    }

    /// In-neighbors of `v`.
    pub fn in_(&self, v: usize) -> &[usize] {
        &self.in_adj[self.in_off[v]..self.in_off[v + 1]]
    }

    /// Whether the arc (u, v) is present.
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out(u).binary_search(&v).is_ok()
    }

    /// Whether `v` carries a self-loop.
    pub fn has_self_loop(&self, v: usize) -> bool {
        self.self_loop[v]
    }

    /// Vertices carrying self-loops.
    pub fn self_loop_vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.self_loop[v]).collect()
    }

    /// Instance size measure |D| = n + m.
    pub fn size(&self) -> usize {
        self.n + self.arcs.len()
    }

    /// The subgraph induced on `x`, with ids compacted.
    ///
    /// Returns the subgraph and the new-to-old id mapping (sorted, so
    /// old-to-new lookups are binary searches). Panics on out-of-range ids.
    pub fn induced(&self, x: &[usize]) -> (Digraph, Vec<usize>) {
        let keep: BTreeSet<usize> = x.iter().copied().collect();
        for &v in &keep {
            assert!(v < self.n, "vertex {v} out of range for n = {}", self.n);
        }
        let new_to_old: Vec<usize> = keep.iter().copied().collect();
        let mut old_to_new = vec![usize::MAX; self.n];
        for (new, &old) in new_to_old.iter().enumerate() {
            old_to_new[old] = new;
        }
        let arcs = self
            .arcs
            .iter()
            .filter(|&&(u, v)| old_to_new[u] != usize::MAX && old_to_new[v] != usize::MAX)
            .map(|&(u, v)| (old_to_new[u], old_to_new[v]));
        (Digraph::new(new_to_old.len(), arcs), new_to_old)
    }

    /// The subgraph obtained by deleting `removed`, with ids compacted.
    pub fn without(&self, removed: &[usize]) -> (Digraph, Vec<usize>) {
        let mut drop = vec![false; self.n];
        for &v in removed {
            drop[v] = true;
        }
        let keep: Vec<usize> = (0..self.n).filter(|&v| !drop[v]).collect();
        self.induced(&keep)
    }

    /// Whether the digraph is acyclic (self-loops count as cycles).
    pub fn is_acyclic(&self) -> bool {
        let scc = self.scc_decompose();
        scc.components.iter().enumerate().all(|(c, _)| scc.trivial[c])
    }

    /// Whether deleting `set` leaves the digraph acyclic.
    pub fn is_acyclic_without(&self, set: &[usize]) -> bool {
        self.without(set).0.is_acyclic()
    }

    /// Out-neighborhood N⁺(x) of a vertex set, excluding x itself.
    pub fn out_neighborhood(&self, x: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.n];
        for &v in x {
            inside[v] = true;
        }
        let mut seen = vec![false; self.n];
        let mut result = Vec::new();
        for &v in x {
            for &w in self.out(v) {
                if !inside[w] && !seen[w] {
                    seen[w] = true;
                    result.push(w);
                }
            }
        }
        result.sort_unstable();
        result
    }

    /// Vertices reachable from `s` after deleting `removed` (includes `s`
    /// itself unless removed).
    pub fn reachable_from(&self, s: usize, removed: &[usize]) -> Vec<usize> {
        let mut blocked = vec![false; self.n];
        for &v in removed {
            blocked[v] = true;
        }
        if blocked[s] {
            return Vec::new();
        }
        let mut seen = vec![false; self.n];
        seen[s] = true;
        let mut stack = vec![s];
        let mut result = vec![s];
        while let Some(v) = stack.pop() {
            for &w in self.out(v) {
                if !seen[w] && !blocked[w] {
                    seen[w] = true;
                    result.push(w);
                    stack.push(w);
                }
            }
        }
        result.sort_unstable();
        result
    }

    /// Strongly connected components in topological order of the condensation.
    pub fn scc_decompose(&self) -> SccDecomposition {
        // Kosaraju, iterative so deep graphs cannot overflow the call stack.
        // First pass: finish order on the original graph.
        let n = self.n;
        let mut visited = vec![false; n];
        let mut order = Vec::with_capacity(n);
        // Stack entries are (vertex, next out-neighbor index to explore).
        let mut stack: Vec<(usize, usize)> = Vec::new();
        for start in 0..n {
            if visited[start] {
                continue;
            }
            visited[start] = true;
            stack.push((start, 0));
            while let Some(&mut (v, ref mut idx)) = stack.last_mut() {
                if let Some(&w) = self.out(v).get(*idx) {
                    *idx += 1;
                    if !visited[w] {
                        visited[w] = true;
                        stack.push((w, 0));
                    }
                } else {
                    order.push(v);
                    stack.pop();
                }
            }
        }

        // Second pass: collect components on the reversed graph in decreasing
        // finish order; components are found in topological order of the
        // condensation of the original graph.
        visited.fill(false);
        let mut component = vec![usize::MAX; n];
        let mut components: Vec<Vec<usize>> = Vec::new();
        let mut dfs = Vec::new();
        for &root in order.iter().rev() {
            if visited[root] {
                continue;
            }
            let id = components.len();
            let mut comp = Vec::new();
            visited[root] = true;
            dfs.push(root);
            while let Some(v) = dfs.pop() {
                component[v] = id;
                comp.push(v);
                for &w in self.in_(v) {
                    if !visited[w] {
                        visited[w] = true;
                        dfs.push(w);
                    }
                }
            }
            comp.sort_unstable();
            components.push(comp);
        }

        let trivial = components
            .iter()
            .map(|c| c.len() == 1 && !self.self_loop[c[0]])
            .collect();
        SccDecomposition { component, components, trivial }
    }

    /// Whether the digraph is strongly connected (true for n ≤ 1).
    pub fn is_strongly_connected(&self) -> bool {
        self.n <= 1 || self.scc_decompose().components.len() == 1
    }
}

/// Strongly connected components with condensation order and triviality flags.
#[derive(Clone, Debug)]
pub struct SccDecomposition {
    /// Component id per vertex.
    pub component: Vec<usize>,
    /// Components listed in topological order of the condensation.
    pub components: Vec<Vec<usize>>,
    /// A component is trivial iff it is a single vertex without a self-loop.
    pub trivial: Vec<bool>,
}

fn prefix_sums(deg: &[usize]) -> Vec<usize> {
    let mut off = Vec::with_capacity(deg.len() + 1);
    let mut acc = 0;
    off.push(0);
    for &d in deg {
        acc += d;
        off.push(acc);
    }
    off
}
