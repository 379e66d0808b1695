//! Minimum s-t vertex separators via unit-capacity max flow on the
//! vertex-split network.
//!
//! Every internal vertex v becomes v⁻ → v⁺ with capacity 1; original arcs get
//! "infinite" capacity, encoded as budget + 2 since at most budget + 1
//! augmentations ever run. Arc-separators among the split arcs correspond
//! bijectively to vertex separators in the original digraph.

use crate::digraph::Digraph;

/// λ exceeds the budget; `infinite` distinguishes "no separator exists at
/// all" (a source has an arc straight to a sink) from "λ > budget".
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExceedsBudget {
    pub infinite: bool,
}

/// The split network after a max-flow run, with the flow left in place.
#[derive(Debug)]
pub struct VertexFlow {
    /// λ = value of the maximum flow = minimum separator size.
    pub value: usize,
    n: usize,
    sources: Vec<usize>,
    arc_to: Vec<usize>,
    arc_from: Vec<usize>,
    arc_cap: Vec<i64>,
    arc_flow: Vec<i64>,
    adj_off: Vec<usize>,
    adj: Vec<usize>, // arc indices, forward and reverse interleaved by parity
}

/// Node id of v's in-copy v⁻.
pub fn in_node(v: usize) -> usize {
    2 * v
}

/// Node id of v's out-copy v⁺.
pub fn out_node(v: usize) -> usize {
    2 * v + 1
}

/// Runs min{budget + 1, λ} Ford-Fulkerson augmentations between vertex sets.
///
/// Terminal vertices (sources and sinks) are not deletable: their split arcs
/// carry infinite capacity. Sources and sinks must be disjoint and non-empty.
pub fn max_vertex_flow_multi(
    d: &Digraph,
    sources: &[usize],
    sinks: &[usize],
    budget: usize,
) -> Result<VertexFlow, ExceedsBudget> {
    assert!(!sources.is_empty() && !sinks.is_empty());
    let mut is_source = vec![false; d.n()];
    let mut is_sink = vec![false; d.n()];
    for &s in sources {
        is_source[s] = true;
    }
    for &t in sinks {
        assert!(!is_source[t], "sources and sinks must be disjoint");
        is_sink[t] = true;
    }
    // A source-to-sink arc admits no vertex separator at all.
    for &s in sources {
        if d.out(s).iter().any(|&w| is_sink[w]) {
            return Err(ExceedsBudget { infinite: true });
        }
    }

    let inf = budget as i64 + 2;
    let node_count = 2 * d.n() + 2;
    let super_s = 2 * d.n();
    let super_t = 2 * d.n() + 1;

    let mut builder = NetBuilder::new(node_count);
    for v in 0..d.n() {
        let cap = if is_source[v] || is_sink[v] { inf } else { 1 };
        builder.push(in_node(v), out_node(v), cap);
    }
    for &(u, v) in d.arcs() {
        if u != v {
            builder.push(out_node(u), in_node(v), inf);
        }
    }
    for &s in sources {
        builder.push(super_s, in_node(s), inf);
    }
    for &t in sinks {
        builder.push(out_node(t), super_t, inf);
    }
    let mut net = builder.finish(d.n(), sources.to_vec());

    // Each augmentation pushes exactly one unit, so the flow value equals the
    // number of augmentations; stop once the budget is exceeded.
    let mut value = 0usize;
    while net.augment_one(super_s, super_t) {
        value += 1;
        if value > budget {
            return Err(ExceedsBudget { infinite: false });
        }
    }
    net.value = value;
    Ok(net)
}

/// Single-pair version of [`max_vertex_flow_multi`].
pub fn max_vertex_flow(
    d: &Digraph,
    s: usize,
    t: usize,
    budget: usize,
) -> Result<VertexFlow, ExceedsBudget> {
    assert_ne!(s, t);
    max_vertex_flow_multi(d, &[s], &[t], budget)
}

/// Minimum s-t vertex separator of size ≤ k (the one closest to s).
pub fn min_separator(
    d: &Digraph,
    s: usize,
    t: usize,
    k: usize,
) -> Result<Vec<usize>, ExceedsBudget> {
    crate::layers::separator_layers(d, s, t, k).map(|chain| chain.boundaries[0].clone())
}

impl VertexFlow {
    /// Nodes reachable from the source side in the residual graph.
    pub fn residual_reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.adj_off.len() - 1];
        let mut stack = Vec::new();
        for &s in &self.sources {
            let node = in_node(s);
            if !seen[node] {
                seen[node] = true;
                stack.push(node);
            }
        }
        while let Some(v) = stack.pop() {
            for &a in self.adj_arcs(v) {
                let w = self.arc_to[a];
                if self.residual(a) > 0 && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// The minimum separator closest to the sources: vertices whose split arc
    /// crosses the residual-reachable boundary.
    pub fn closest_min_cut(&self) -> Vec<usize> {
        let seen = self.residual_reachable();
        (0..self.n)
            .filter(|&v| seen[in_node(v)] && !seen[out_node(v)])
            .collect()
    }

    /// Original-graph vertices strictly on the source side of the closest
    /// min cut (both copies residual-reachable).
    pub fn source_side(&self) -> Vec<usize> {
        let seen = self.residual_reachable();
        (0..self.n)
            .filter(|&v| seen[in_node(v)] && seen[out_node(v)])
            .collect()
    }

    /// Nodes that can reach the super sink in the residual graph.
    fn residual_coreachable(&self) -> Vec<bool> {
        let node_count = self.adj_off.len() - 1;
        let super_t = node_count - 1;
        let mut seen = vec![false; node_count];
        seen[super_t] = true;
        let mut stack = vec![super_t];
        while let Some(w) = stack.pop() {
            // Arc b leaves w; its pair b ^ 1 enters w from arc_to[b].
            for &b in self.adj_arcs(w) {
                let v = self.arc_to[b];
                if self.residual(b ^ 1) > 0 && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }

    /// The minimum separator farthest from the sources: vertices whose split
    /// arc crosses into the residual region that still reaches the sinks.
    pub fn farthest_min_cut(&self) -> Vec<usize> {
        let co = self.residual_coreachable();
        (0..self.n)
            .filter(|&v| co[out_node(v)] && !co[in_node(v)])
            .collect()
    }

    /// Original-graph vertices strictly on the source side of the farthest
    /// min cut (neither copy reaches the sinks in the residual graph).
    pub fn farthest_source_side(&self) -> Vec<usize> {
        let co = self.residual_coreachable();
        (0..self.n)
            .filter(|&v| !co[out_node(v)] && !co[in_node(v)])
            .collect()
    }

    /// Residual out-adjacency over split-network nodes (super nodes excluded).
    pub fn residual_adjacency(&self) -> Vec<Vec<usize>> {
        let node_count = 2 * self.n;
        let mut adj = vec![Vec::new(); node_count];
        for a in 0..self.arc_to.len() {
            let (from, to) = (self.arc_from[a], self.arc_to[a]);
            if from < node_count && to < node_count && self.residual(a) > 0 {
                adj[from].push(to);
            }
        }
        adj
    }

    fn residual(&self, arc: usize) -> i64 {
        self.arc_cap[arc] - self.arc_flow[arc]
    }

    fn adj_arcs(&self, v: usize) -> &[usize] {
        &self.adj[self.adj_off[v]..self.adj_off[v + 1]]
    }

    /// Finds one augmenting path by BFS and pushes a single unit along it.
    fn augment_one(&mut self, s: usize, t: usize) -> bool {
        let node_count = self.adj_off.len() - 1;
        let mut pred: Vec<usize> = vec![usize::MAX; node_count];
        let mut seen = vec![false; node_count];
        seen[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        'bfs: while let Some(v) = queue.pop_front() {
            for &a in &self.adj[self.adj_off[v]..self.adj_off[v + 1]] {
                let w = self.arc_to[a];
                if !seen[w] && self.residual(a) > 0 {
                    seen[w] = true;
                    pred[w] = a;
                    if w == t {
                        break 'bfs;
                    }
                    queue.push_back(w);
                }
            }
        }
        if !seen[t] {
            return false;
        }
        let mut v = t;
        while v != s {
            let a = pred[v];
            self.arc_flow[a] += 1;
            self.arc_flow[a ^ 1] -= 1;
            v = self.arc_from[a];
        }
        true
    }
}

struct NetBuilder {
    node_count: usize,
    arc_to: Vec<usize>,
    arc_from: Vec<usize>,
    arc_cap: Vec<i64>,
}

impl NetBuilder {
    fn new(node_count: usize) -> NetBuilder {
        NetBuilder { node_count, arc_to: Vec::new(), arc_from: Vec::new(), arc_cap: Vec::new() }
    }

    /// Adds a capacitated arc plus its zero-capacity reverse; the pair sits
    /// at indices (2i, 2i + 1) so `a ^ 1` is always the reverse of `a`.
    fn push(&mut self, from: usize, to: usize, cap: i64) {
        self.arc_from.extend([from, to]);
        self.arc_to.extend([to, from]);
        self.arc_cap.extend([cap, 0]);
    }

    fn finish(self, n: usize, sources: Vec<usize>) -> VertexFlow {
        let mut deg = vec![0usize; self.node_count];
        for &f in &self.arc_from {
            deg[f] += 1;
        }
        let mut adj_off = Vec::with_capacity(self.node_count + 1);
        let mut acc = 0;
        adj_off.push(0);
        for &d in &deg {
            acc += d;
            adj_off.push(acc);
        }
        let mut pos = adj_off.clone();
        let mut adj = vec![0usize; self.arc_from.len()];
        for (a, &f) in self.arc_from.iter().enumerate() {
            adj[pos[f]] = a;
            pos[f] += 1;
        }
        let flow = vec![0i64; self.arc_to.len()];
        VertexFlow {
            value: 0,
            n,
            sources,
            arc_to: self.arc_to,
            arc_from: self.arc_from,
            arc_cap: self.arc_cap,
            arc_flow: flow,
            adj_off,
            adj,
        }
    }
}
