//! Separator layers: a nested chain X₁ ⊂ … ⊂ X_q with each N⁺(Xᵢ) a minimum
//! s-t separator, such that every minimum s-t separator lies in ⋃ᵢ N⁺(Xᵢ).
//!
//! Built from a max-flow run: the strongly connected components of the
//! residual graph are ordered topologically, index α(node) assigned, and the
//! per-layer reachable sets are produced by a single modified BFS that keeps
//! a queue of "forbidden" vertices alongside the ordinary BFS queue.

use crate::digraph::Digraph;
use crate::flow::{in_node, max_vertex_flow, out_node, ExceedsBudget};

/// The chain X₁ ⊂ … ⊂ X_q, delta-encoded, with its boundary separators.
#[derive(Clone, Debug)]
pub struct SeparatorChain {
    /// Minimum separator size ℓ = λ(s, t).
    pub lambda: usize,
    /// X₁, X₂∖X₁, …, X_q∖X_{q−1}; each delta sorted.
    pub deltas: Vec<Vec<usize>>,
    /// N⁺(Xᵢ) for each i, sorted; all have size ℓ.
    pub boundaries: Vec<Vec<usize>>,
    /// X_{q+1} = R(s, ∅) ∖ {t}: everything reachable from s, except t. The
    /// tight-sequence recursion needs this extra layer.
    pub full_reach: Vec<usize>,
}

impl SeparatorChain {
    /// Number of sets in the chain.
    pub fn q(&self) -> usize {
        self.deltas.len()
    }

    /// Materializes Xᵢ (1-based; i = 0 gives ∅, i = q + 1 gives `full_reach`).
    pub fn x(&self, i: usize) -> Vec<usize> {
        if i > self.q() {
            return self.full_reach.clone();
        }
        let mut x: Vec<usize> = self.deltas[..i].iter().flatten().copied().collect();
        x.sort_unstable();
        x
    }
}

/// Computes the separator-layer chain for (s, t) within budget k.
///
/// Runs at most k + 1 flow augmentations and one modified BFS; O(k·(n + m)).
/// Returns `ExceedsBudget` when λ(s, t) > k, with the infinite flag set when
/// the arc (s, t) makes separation impossible.
pub fn separator_layers(
    d: &Digraph,
    s: usize,
    t: usize,
    k: usize,
) -> Result<SeparatorChain, ExceedsBudget> {
    let flow = max_vertex_flow(d, s, t, k)?;
    let lambda = flow.value;

    if lambda == 0 {
        // t is unreachable from s: the reachable set is closed under
        // out-arcs, so it is the single chain set with an empty boundary.
        let x1 = d.reachable_from(s, &[]);
        debug_assert!(!x1.contains(&t));
        return Ok(SeparatorChain {
            lambda: 0,
            full_reach: x1.clone(),
            deltas: vec![x1],
            boundaries: vec![Vec::new()],
        });
    }

    // Topological index α per split-network node, from the residual SCCs.
    let residual = Digraph::new(2 * d.n(), residual_arcs(&flow));
    let scc = residual.scc_decompose();
    let alpha: Vec<usize> = scc.component.clone();
    let alpha_s = alpha[out_node(s)];
    let alpha_t = alpha[in_node(t)];
    debug_assert_eq!(alpha[in_node(s)], alpha_s);
    debug_assert!(alpha_t < alpha_s, "residual graph must contain a t-s path");

    let node_deltas = forbidden_queue_bfs(d, s, &alpha, alpha_s, alpha_t);
    let vertex_deltas = to_vertex_deltas(d.n(), s, &node_deltas);
    finish_chain(d, s, t, lambda, vertex_deltas)
}

/// Residual arcs of the flow network restricted to split nodes.
fn residual_arcs(flow: &crate::flow::VertexFlow) -> Vec<(usize, usize)> {
    flow.residual_adjacency()
        .into_iter()
        .enumerate()
        .flat_map(|(v, outs)| outs.into_iter().map(move |w| (v, w)))
        .collect()
}

/// The modified BFS of the layer construction. Works on the (uncapacitated)
/// split network: split arcs v⁻ → v⁺ plus original arcs u⁺ → v⁻.
///
/// Returns, for i = α(s) down to α(t) + 1, the split-network nodes added to
/// the BFS tree while computing R(Yᵢ) (where Yᵢ is the union of residual
/// components with index ≥ i).
fn forbidden_queue_bfs(
    d: &Digraph,
    s: usize,
    alpha: &[usize],
    alpha_s: usize,
    alpha_t: usize,
) -> Vec<Vec<usize>> {
    let n = d.n();
    // A node w is i-forbidden exactly when w ∈ N⁺(Yᵢ) in the split network:
    // α(w) < i (w outside Yᵢ) and some in-neighbor u has α(u) ≥ i. So the
    // window is α(w) + 1 ≤ i ≤ β(w) with β(w) the max in-neighbor index,
    // clamped to [α(t) + 1, α(s)].
    let mut beta = vec![usize::MAX; 2 * n]; // MAX = never forbidden
    let mut note = |w: usize, u: usize| {
        if alpha[u] > alpha[w] {
            beta[w] = if beta[w] == usize::MAX { alpha[u] } else { beta[w].max(alpha[u]) };
        }
    };
    for v in 0..n {
        note(out_node(v), in_node(v));
        for &w in d.out(v) {
            if w != v {
                note(in_node(w), out_node(v));
            }
        }
    }
    let window = |w: usize| -> Option<(usize, usize)> {
        if beta[w] == usize::MAX {
            return None;
        }
        let hi = beta[w].min(alpha_s);
        let lo = (alpha[w] + 1).max(alpha_t + 1);
        (lo <= hi).then_some((lo, hi))
    };
    let forbidden_at = |w: usize, i: usize| window(w).is_some_and(|(lo, hi)| lo <= i && i <= hi);

    let out_neighbors = |node: usize| -> Vec<usize> {
        let v = node / 2;
        if node % 2 == 0 {
            vec![out_node(v)] // split arc v⁻ → v⁺
        } else {
            d.out(v).iter().filter(|&&w| w != v).map(|&w| in_node(w)).collect()
        }
    };

    let mut visited = vec![false; 2 * n];
    let mut in_forbidden = vec![false; 2 * n];
    let mut forbidden: Vec<usize> = Vec::new();
    let mut queue = std::collections::VecDeque::new();
    for node in [in_node(s), out_node(s)] {
        visited[node] = true;
        queue.push_back(node);
    }

    let mut layers = Vec::new();
    let mut i = alpha_s;
    loop {
        let mut added = Vec::new();
        while let Some(v) = queue.pop_front() {
            added.push(v);
            for w in out_neighbors(v) {
                if visited[w] || in_forbidden[w] {
                    continue;
                }
                if forbidden_at(w, i) {
                    in_forbidden[w] = true;
                    forbidden.push(w);
                } else {
                    visited[w] = true;
                    queue.push_back(w);
                }
            }
        }
        layers.push(added);
        if i == alpha_t + 1 {
            return layers;
        }
        i -= 1;
        // Release queue entries that are no longer forbidden at the new i.
        forbidden.retain(|&w| {
            if forbidden_at(w, i) {
                true
            } else {
                in_forbidden[w] = false;
                visited[w] = true;
                queue.push_back(w);
                false
            }
        });
    }
}

/// Collapses split-node layers to original-vertex deltas: a vertex joins the
/// chain in the stage where its second copy is reached. Stages whose vertex
/// delta is empty are merged away to keep the chain strictly nested.
fn to_vertex_deltas(n: usize, s: usize, node_layers: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut seen = vec![0u8; n];
    let mut deltas = Vec::new();
    for layer in node_layers {
        let mut delta = Vec::new();
        for &node in layer {
            let v = node / 2;
            seen[v] += 1;
            if seen[v] == 2 {
                delta.push(v);
            }
        }
        if !delta.is_empty() {
            delta.sort_unstable();
            deltas.push(delta);
        }
    }
    debug_assert!(!deltas.is_empty() && deltas[0].contains(&s));
    deltas
}

/// Computes boundaries and the extra reachability layer, assembling the chain.
fn finish_chain(
    d: &Digraph,
    s: usize,
    t: usize,
    lambda: usize,
    deltas: Vec<Vec<usize>>,
) -> Result<SeparatorChain, ExceedsBudget> {
    let q = deltas.len();
    // lab(v) = 1-based chain stage of v, q + 1 for vertices outside X_q.
    let mut lab = vec![q + 1; d.n()];
    for (idx, delta) in deltas.iter().enumerate() {
        for &v in delta {
            lab[v] = idx + 1;
        }
    }
    // v ∈ N⁺(Xᵢ) exactly for earliest(v) ≤ i < lab(v).
    let mut boundaries = vec![Vec::new(); q];
    for v in 0..d.n() {
        let earliest = d.in_(v).iter().map(|&u| lab[u]).min().unwrap_or(q + 1);
        for i in earliest..lab[v].min(q + 1) {
            boundaries[i - 1].push(v);
        }
    }
    for b in &boundaries {
        assert_eq!(b.len(), lambda, "every chain boundary is a minimum separator");
    }

    let mut full_reach = d.reachable_from(s, &[]);
    full_reach.retain(|&v| v != t);

    Ok(SeparatorChain { lambda, deltas, boundaries, full_reach })
}

/// Quadratic reference for the chain: recomputes each layer's reachable set
/// from scratch. Returns the materialized sets X₁ ⊂ … ⊂ X_q. Test support.
pub fn separator_layers_reference(
    d: &Digraph,
    s: usize,
    t: usize,
    k: usize,
) -> Result<Vec<Vec<usize>>, ExceedsBudget> {
    let flow = max_vertex_flow(d, s, t, k)?;
    if flow.value == 0 {
        return Ok(vec![d.reachable_from(s, &[])]);
    }
    let residual = Digraph::new(2 * d.n(), residual_arcs(&flow));
    let scc = residual.scc_decompose();
    let alpha = &scc.component;
    let alpha_s = alpha[out_node(s)];
    let alpha_t = alpha[in_node(t)];

    let split_arcs: Vec<(usize, usize)> = (0..d.n())
        .map(|v| (in_node(v), out_node(v)))
        .chain(
            d.arcs()
                .iter()
                .filter(|&&(u, v)| u != v)
                .map(|&(u, v)| (out_node(u), in_node(v))),
        )
        .collect();

    let mut result: Vec<Vec<usize>> = Vec::new();
    for i in ((alpha_t + 1)..=alpha_s).rev() {
        // R(Yᵢ): nodes reachable from s inside components of index ≥ i.
        let inside = |node: usize| alpha[node] >= i;
        let mut seen = vec![false; 2 * d.n()];
        let mut stack = vec![in_node(s), out_node(s)];
        seen[in_node(s)] = true;
        seen[out_node(s)] = true;
        while let Some(v) = stack.pop() {
            for &(a, b) in &split_arcs {
                if a == v && inside(b) && !seen[b] {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
        let x: Vec<usize> =
            (0..d.n()).filter(|&v| seen[in_node(v)] && seen[out_node(v)]).collect();
        if result.last() != Some(&x) {
            result.push(x);
        }
    }
    Ok(result)
}

/// Asserts the four chain properties plus the ℓ+1 gap lemma on one graph,
/// against exhaustive separator enumeration. Test support (exponential).
pub fn verify_chain(d: &Digraph, s: usize, t: usize, chain: &SeparatorChain) {
    use crate::oracle;
    let q = chain.q();
    // Property 1: strict nesting, s ∈ X₁, Xᵢ avoids {t} ∪ N⁻(t).
    for i in 1..=q {
        let x = chain.x(i);
        assert!(x.contains(&s));
        assert!(!x.contains(&t));
        for &v in &x {
            assert!(!d.has_arc(v, t), "X_{i} must avoid N⁻(t)");
        }
        if i > 1 {
            let prev = chain.x(i - 1);
            assert!(prev.iter().all(|v| x.binary_search(v).is_ok()));
            assert!(x.len() > prev.len());
        }
    }
    for i in 1..=q {
        let x = chain.x(i);
        // Property 2a: X_i reachable from s within D[X_i].
        let (sub, map) = d.induced(&x);
        let s_local = map.binary_search(&s).unwrap();
        assert_eq!(sub.reachable_from(s_local, &[]).len(), x.len());
        // Property 2b: every boundary vertex reaches t in D − Xᵢ.
        assert_eq!(chain.boundaries[i - 1], d.out_neighborhood(&x));
        for &b in &chain.boundaries[i - 1] {
            let mut blocked = x.clone();
            blocked.retain(|&v| v != b);
            assert!(d.reachable_from(b, &blocked).contains(&t));
        }
        // Property 3: |N⁺(Xᵢ)| = ℓ.
        assert_eq!(chain.boundaries[i - 1].len(), chain.lambda);
    }
    // Property 4: every minimum separator inside ⋃ boundaries; and the
    // gap lemma: minimal separators touching a gap Zᵢ have size ≥ ℓ + 1.
    let union: std::collections::BTreeSet<usize> =
        chain.boundaries.iter().flatten().copied().collect();
    let (lambda, min_seps) = oracle::enumerate_min_separators(d, s, t);
    assert_eq!(lambda, Some(chain.lambda));
    for sep in &min_seps {
        assert!(sep.iter().all(|v| union.contains(v)));
    }
    for i in 0..=q {
        // Zᵢ = X_{i+1} ∖ N⁺[Xᵢ] with X₀ = ∅, X_{q+1} = V(D).
        let x_next: Vec<usize> = if i == q { (0..d.n()).collect() } else { chain.x(i + 1) };
        let closed: std::collections::BTreeSet<usize> = if i == 0 {
            Default::default()
        } else {
            chain.x(i).into_iter().chain(chain.boundaries[i - 1].iter().copied()).collect()
        };
        let z: Vec<usize> = x_next.into_iter().filter(|v| !closed.contains(v)).collect();
        for sep in oracle::enumerate_minimal_separators(d, s, t) {
            if sep.iter().any(|v| z.contains(v)) {
                assert!(sep.len() >= chain.lambda + 1);
            }
        }
    }
}
