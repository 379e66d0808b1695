//! Tight separator sequences: a nested chain H₁ ⊂ … ⊂ H_r of vertex sets
//! whose boundaries N⁺(Hᵢ) are minimal u-v separators of size ≤ k, with no
//! small separator hiding inside any gap between consecutive sets (or beyond
//! the last one).
//!
//! Construction: run the separator-layer chain, contract each layer into a
//! local digraph Dᵢ (Pᵢ → sᵢ, Qᵢ → tᵢ), recurse on Dᵢ − Wᵢ with budget
//! k − |Wᵢ|, and splice the local sequences between the chain sets. The local
//! connectivity strictly exceeds the parent's λ, which bounds the recursion
//! depth by k and yields an O(k²m) total running time.
//!
//! Also houses the two linear-time scans over a sequence: the l-light → not
//! l-light transition, and the first gap whose substructure leaves the family.

use crate::digraph::Digraph;
use crate::family::{Structure, StructureFamily};
use crate::flow::ExceedsBudget;
use crate::layers::{separator_layers, SeparatorChain};

/// A tight u-v separator sequence of order k, delta-encoded.
#[derive(Clone, Debug)]
pub struct TightSequence {
    pub u: usize,
    pub v: usize,
    /// H₁, H₂∖H₁, …, H_r∖H_{r−1}; each delta sorted and non-empty.
    pub deltas: Vec<Vec<usize>>,
    /// Zᵢ = N⁺(Hᵢ), sorted, each of size ≤ k.
    pub boundaries: Vec<Vec<usize>>,
    /// lab(w) = index of the delta containing w (1-based), r + 1 outside H_r.
    pub lab: Vec<usize>,
    /// Least lab among in-neighbors of w, so w ∈ Zᵢ ⟺ earliest(w) ≤ i < lab(w);
    /// r + 1 when w has no in-neighbors.
    pub earliest: Vec<usize>,
}

impl TightSequence {
    /// Number of sets in the sequence.
    pub fn r(&self) -> usize {
        self.deltas.len()
    }

    /// Materializes Hᵢ (1-based; i = 0 gives ∅).
    pub fn h(&self, i: usize) -> Vec<usize> {
        let mut h: Vec<usize> = self.deltas[..i].iter().flatten().copied().collect();
        h.sort_unstable();
        h
    }

    /// The gap H_{i+1} ∖ N⁺[Hᵢ] for 1 ≤ i ≤ r − 1. Gaps are pairwise
    /// disjoint: each is the subset of delta i + 1 that is not boundary of Hᵢ.
    pub fn gap(&self, i: usize) -> Vec<usize> {
        self.deltas[i].iter().copied().filter(|&w| self.earliest[w] > i).collect()
    }
}

/// Computes a tight u-v separator sequence of order k, or reports that no
/// u-v separator of size ≤ k exists.
///
/// Preconditions: u ≠ v and v reachable from u (otherwise the empty set
/// separates and no tight sequence exists; the function panics).
pub fn tight_separator_sequence(
    d: &Digraph,
    u: usize,
    v: usize,
    k: usize,
) -> Result<TightSequence, ExceedsBudget> {
    assert_ne!(u, v);
    let deltas = sequence_deltas(d, u, v, k)?;
    let r = deltas.len();
    let n = d.n();

    let mut lab = vec![r + 1; n];
    for (idx, delta) in deltas.iter().enumerate() {
        for &w in delta {
            lab[w] = idx + 1;
        }
    }
    let earliest: Vec<usize> = (0..n)
        .map(|w| d.in_(w).iter().map(|&x| lab[x]).min().unwrap_or(r + 1))
        .collect();

    let mut boundaries = vec![Vec::new(); r];
    for w in 0..n {
        for i in earliest[w]..lab[w].min(r + 1) {
            boundaries[i - 1].push(w);
        }
    }
    for b in &boundaries {
        assert!(b.len() <= k, "every sequence boundary has size at most k");
    }
    debug_assert_eq!(lab[v], r + 1);
    debug_assert!(d.in_(v).iter().all(|&x| lab[x] == r + 1), "sets avoid in-neighbors of v");

    Ok(TightSequence { u, v, deltas, boundaries, lab, earliest })
}

/// The recursive core: returns the sequence deltas in the vertex ids of `d`.
fn sequence_deltas(
    d: &Digraph,
    s: usize,
    t: usize,
    k: usize,
) -> Result<Vec<Vec<usize>>, ExceedsBudget> {
    let chain = separator_layers(d, s, t, k)?;
    assert!(chain.lambda >= 1, "t must be reachable from s");
    let q = chain.q();

    // Membership stamps, reset per layer by bumping the timestamp.
    // Codes: 1 = core (Yᵢ ∖ Pᵢ), 2 = Pᵢ, 3 = Qᵢ.
    let mut stamp = vec![0u32; d.n()];
    let mut mark = vec![0u8; d.n()];
    let mut clock = 0u32;

    // X_q membership, for carving Y_{q+1} out of the full reachable set.
    let mut in_x_q = vec![false; d.n()];
    for delta in &chain.deltas {
        for &w in delta {
            in_x_q[w] = true;
        }
    }
    let y_last: Vec<usize> =
        chain.full_reach.iter().copied().filter(|&w| !in_x_q[w]).collect();

    let empty: Vec<usize> = Vec::new();
    let mut out: Vec<Vec<usize>> = Vec::new();
    for i in 1..=q + 1 {
        let prev_boundary: &[usize] = if i == 1 { &empty } else { &chain.boundaries[i - 2] };
        let y_i: &[usize] = if i <= q { &chain.deltas[i - 1] } else { &y_last };
        let (p_i, q_i, w_i): (Vec<usize>, Vec<usize>, Vec<usize>) = if i == 1 {
            (vec![s], chain.boundaries[0].clone(), Vec::new())
        } else if i <= q {
            let boundary = &chain.boundaries[i - 1];
            (
                y_i.iter().copied().filter(|w| prev_boundary.contains(w)).collect(),
                boundary.iter().copied().filter(|w| !prev_boundary.contains(w)).collect(),
                boundary.iter().copied().filter(|w| prev_boundary.contains(w)).collect(),
            )
        } else {
            (prev_boundary.to_vec(), vec![t], Vec::new())
        };
        debug_assert!(!p_i.is_empty() && !q_i.is_empty());
        debug_assert!(w_i.len() < k, "W_i is a strict subset of a boundary of size <= k");

        // Build Dᵢ − Wᵢ: core vertices then sᵢ, tᵢ.
        clock += 1;
        let core: Vec<usize> =
            y_i.iter().copied().filter(|w| !p_i.contains(w)).collect();
        for (j, &w) in core.iter().enumerate() {
            stamp[w] = clock;
            mark[w] = 1;
            debug_assert!(j < d.n());
        }
        for &w in &p_i {
            stamp[w] = clock;
            mark[w] = 2;
        }
        for &w in &q_i {
            stamp[w] = clock;
            mark[w] = 3;
        }
        let mut local_of = std::collections::HashMap::new();
        for (j, &w) in core.iter().enumerate() {
            local_of.insert(w, j);
        }
        let (s_loc, t_loc) = (core.len(), core.len() + 1);
        let mut arcs = Vec::new();
        for &y in &core {
            for &x in d.out(y) {
                if stamp[x] == clock && x != y {
                    match mark[x] {
                        1 => arcs.push((local_of[&y], local_of[&x])),
                        3 => arcs.push((local_of[&y], t_loc)),
                        _ => {} // arcs back into Pᵢ do not exist in Dᵢ
                    }
                }
            }
        }
        for &p in &p_i {
            for &x in d.out(p) {
                if stamp[x] == clock {
                    match mark[x] {
                        1 => arcs.push((s_loc, local_of[&x])),
                        3 => arcs.push((s_loc, t_loc)),
                        _ => {}
                    }
                }
            }
        }
        let local = Digraph::new(core.len() + 2, arcs);

        // Recurse with the budget reduced by |Wᵢ|: every minimal separator of
        // Dᵢ within budget contains all of Wᵢ, so Wᵢ can be pre-removed.
        let mut emitted = vec![false; y_i.len()];
        let pos: std::collections::HashMap<usize, usize> =
            y_i.iter().enumerate().map(|(j, &w)| (w, j)).collect();
        if let Ok(local_deltas) = sequence_deltas(&local, s_loc, t_loc, k - w_i.len()) {
            for (j, ld) in local_deltas.iter().enumerate() {
                let mut mapped: Vec<usize> = Vec::new();
                for &x in ld {
                    debug_assert_ne!(x, t_loc);
                    if x == s_loc {
                        debug_assert_eq!(j, 0, "only the first local set contains s_i");
                        mapped.extend_from_slice(&p_i);
                    } else {
                        mapped.push(core[x]);
                    }
                }
                mapped.sort_unstable();
                for &w in &mapped {
                    emitted[pos[&w]] = true;
                }
                out.push(mapped);
            }
        }
        if i <= q {
            // Close the layer with Xᵢ itself: delta Yᵢ ∖ H^i_{rᵢ}.
            let rest: Vec<usize> =
                y_i.iter().copied().filter(|&w| !emitted[pos[&w]]).collect();
            debug_assert!(!rest.is_empty());
            out.push(rest);
        }
    }
    Ok(out)
}

/// The full local digraph Dᵢ for one chain layer, with Wᵢ wired sᵢ → w → tᵢ.
/// Primarily for inspection and tests; the construction itself only ever
/// materializes Dᵢ − Wᵢ.
#[derive(Clone, Debug)]
pub struct LocalGraph {
    /// Vertex layout: 0..core.len() = Yᵢ ∖ Pᵢ, then sᵢ, tᵢ, then Wᵢ.
    pub digraph: Digraph,
    pub s: usize,
    pub t: usize,
    /// Original ids of the core vertices, in local-id order.
    pub core: Vec<usize>,
    pub p: Vec<usize>,
    pub q_set: Vec<usize>,
    pub w: Vec<usize>,
}

/// Builds Dᵢ for layer 1 ≤ i ≤ q + 1 of a separator-layer chain of `d`
/// (i = q + 1 uses X_{q+1} = R(s, ∅) ∖ {t}).
pub fn build_local_graph(
    d: &Digraph,
    chain: &SeparatorChain,
    s: usize,
    t: usize,
    i: usize,
) -> LocalGraph {
    let q = chain.q();
    assert!((1..=q + 1).contains(&i));
    let x_prev = chain.x(i - 1);
    let x_i = chain.x(i);
    let y_i: Vec<usize> =
        x_i.iter().copied().filter(|w| x_prev.binary_search(w).is_err()).collect();
    let prev_boundary: Vec<usize> =
        if i == 1 { Vec::new() } else { chain.boundaries[i - 2].clone() };
    let (p, q_set, w): (Vec<usize>, Vec<usize>, Vec<usize>) = if i == 1 {
        (vec![s], chain.boundaries[0].clone(), Vec::new())
    } else if i <= q {
        let boundary = &chain.boundaries[i - 1];
        (
            y_i.iter().copied().filter(|x| prev_boundary.contains(x)).collect(),
            boundary.iter().copied().filter(|x| !prev_boundary.contains(x)).collect(),
            boundary.iter().copied().filter(|x| prev_boundary.contains(x)).collect(),
        )
    } else {
        (prev_boundary.clone(), vec![t], Vec::new())
    };

    let core: Vec<usize> = y_i.iter().copied().filter(|x| !p.contains(x)).collect();
    let local_of = |x: usize| core.iter().position(|&c| c == x);
    let (s_loc, t_loc) = (core.len(), core.len() + 1);
    let mut arcs = Vec::new();
    for (j, &y) in core.iter().enumerate() {
        for &x in d.out(y) {
            if x == y {
                continue;
            }
            if let Some(jx) = local_of(x) {
                arcs.push((j, jx));
            } else if q_set.contains(&x) {
                arcs.push((j, t_loc));
            }
        }
    }
    for &pv in &p {
        for &x in d.out(pv) {
            if let Some(jx) = local_of(x) {
                arcs.push((s_loc, jx));
            } else if q_set.contains(&x) {
                arcs.push((s_loc, t_loc));
            }
        }
    }
    for (j, _) in w.iter().enumerate() {
        let w_loc = core.len() + 2 + j;
        arcs.push((s_loc, w_loc));
        arcs.push((w_loc, t_loc));
    }
    LocalGraph {
        digraph: Digraph::new(core.len() + 2 + w.len(), arcs),
        s: s_loc,
        t: t_loc,
        core,
        p,
        q_set,
        w,
    }
}

/// Least i with Zᵢ l-light and Z_{i+1} not l-light, or None.
///
/// Zᵢ is l-light when |Q[R(u, Zᵢ)]| ≤ ½|Q|; since R(u, Zᵢ) = Hᵢ exactly, the
/// sizes |Q[Hᵢ]| are computed for all i in one prefix-counting pass: a vertex,
/// arc, or relation tuple lies inside Hᵢ exactly when its largest label is
/// ≤ i. Runs in O(|Q| + r·#tuples) (relations are empty for the dfvs solver).
pub fn llight_transition(q: &Structure, seq: &TightSequence) -> Option<usize> {
    let r = seq.r();
    if r < 2 {
        return None;
    }
    let mut bucket = vec![0usize; r + 2];
    for delta in &seq.deltas {
        // Vertices count 1 each at their own label.
        // (Index by label directly; label r + 1 never occurs inside a delta.)
        bucket[seq.lab[delta[0]]] += delta.len();
    }
    for &(x, y) in q.digraph.arcs() {
        bucket[seq.lab[x].max(seq.lab[y])] += 1;
    }
    for rel in &q.relations {
        for tuple in rel {
            let top = tuple.iter().map(|&v| seq.lab[v]).max().unwrap_or(1);
            bucket[top] += q.epsilon;
        }
    }
    let mut sizes = Vec::with_capacity(r);
    let mut acc = 0usize;
    for &b in &bucket[1..=r] {
        acc += b;
        sizes.push(acc);
    }
    let total = q.size();
    let l_light = |i: usize| 2 * sizes[i - 1] <= total;
    (1..r).find(|&i| l_light(i) && !l_light(i + 1))
}

/// Naive reference for [`llight_transition`]: recomputes R(u, Zᵢ) and the
/// induced size from scratch for every boundary. Test support.
pub fn llight_transition_reference(q: &Structure, seq: &TightSequence) -> Option<usize> {
    let l_light = |i: usize| {
        let reach = q.digraph.reachable_from(seq.u, &seq.boundaries[i - 1]);
        debug_assert_eq!(reach, seq.h(i), "R(u, Z_i) is exactly H_i");
        2 * q.induced(&reach).0.size() <= q.size()
    };
    (1..seq.r()).find(|&i| l_light(i) && !l_light(i + 1))
}

/// Least i (1 ≤ i ≤ r − 1) whose gap substructure Q[H_{i+1} ∖ N⁺[Hᵢ]] is not
/// in the family, or None. Gaps are disjoint, so the total work is
/// O(|Q| + r·#tuples).
pub fn find_bad_gap(
    q: &Structure,
    seq: &TightSequence,
    family: &impl StructureFamily,
) -> Option<usize> {
    let n = q.digraph.n();
    let mut local = vec![usize::MAX; n];
    for i in 1..seq.r() {
        let gap = seq.gap(i);
        if gap.is_empty() {
            continue; // the empty substructure is arc-free, always in family
        }
        for (j, &w) in gap.iter().enumerate() {
            local[w] = j;
        }
        let mut arcs = Vec::new();
        for &w in &gap {
            for &x in q.digraph.out(w) {
                if local[x] != usize::MAX {
                    arcs.push((local[w], local[x]));
                }
            }
        }
        let relations = q
            .relations
            .iter()
            .map(|rel| {
                rel.iter()
                    .filter(|tuple| tuple.iter().all(|&v| local[v] != usize::MAX))
                    .map(|tuple| tuple.iter().map(|&v| local[v]).collect())
                    .collect()
            })
            .collect();
        let sub = Structure {
            digraph: Digraph::new(gap.len(), arcs),
            relations,
            epsilon: q.epsilon,
        };
        let bad = !family.recognize(&sub);
        for &w in &gap {
            local[w] = usize::MAX;
        }
        if bad {
            return Some(i);
        }
    }
    None
}

/// Naive reference for [`find_bad_gap`]: materializes every gap via prefix
/// unions and runs the recognizer on a full induced substructure. Test
/// support.
pub fn find_bad_gap_reference(
    q: &Structure,
    seq: &TightSequence,
    family: &impl StructureFamily,
) -> Option<usize> {
    for i in 1..seq.r() {
        let h = seq.h(i);
        let closed: std::collections::BTreeSet<usize> =
            h.iter().chain(seq.boundaries[i - 1].iter()).copied().collect();
        let gap: Vec<usize> =
            seq.h(i + 1).into_iter().filter(|w| !closed.contains(w)).collect();
        if !family.recognize(&q.induced(&gap).0) {
            return Some(i);
        }
    }
    None
}

/// Asserts all four defining conditions of a tight u-v separator sequence,
/// with the no-small-separator condition checked by exhaustive subset
/// enumeration. Exponential; test support for small instances only.
pub fn verify_sequence(d: &Digraph, u: usize, v: usize, k: usize, seq: &TightSequence) {
    use crate::oracle::{for_each_subset, is_separator};
    let r = seq.r();
    assert!(r >= 1);
    for i in 1..=r {
        let h = seq.h(i);
        // Membership frame: u ∈ Hᵢ ⊆ V ∖ ({v} ∪ N⁻(v)).
        assert!(h.binary_search(&u).is_ok());
        assert!(h.binary_search(&v).is_err());
        for &w in &h {
            assert!(!d.has_arc(w, v));
        }
        // Condition 1: strict nesting (deltas non-empty and disjoint).
        assert!(!seq.deltas[i - 1].is_empty());
        // Condition 2: Hᵢ reachable from u inside D[Hᵢ] ...
        let (sub, map) = d.induced(&h);
        let u_loc = map.binary_search(&u).unwrap();
        assert_eq!(sub.reachable_from(u_loc, &[]).len(), h.len());
        // ... boundary is correct, and every boundary vertex reaches v
        // in D − Hᵢ (minimality of the separator).
        assert_eq!(seq.boundaries[i - 1], d.out_neighborhood(&h));
        assert!(is_separator(d, u, v, &seq.boundaries[i - 1]));
        for &b in &seq.boundaries[i - 1] {
            assert!(d.reachable_from(b, &h).contains(&v));
        }
        // Condition 3: |Zᵢ| ≤ k.
        assert!(seq.boundaries[i - 1].len() <= k);
    }
    // Condition 4a: no separator of size ≤ k inside any gap.
    for i in 1..r {
        let gap = seq.gap(i);
        for_each_subset(&gap, k, &mut |s| {
            assert!(!is_separator(d, u, v, s), "separator hidden in gap {i}");
        });
    }
    // Condition 4b: no separator of size ≤ k disjoint from N⁺[H_r].
    let h_r = seq.h(r);
    let closed: std::collections::BTreeSet<usize> =
        h_r.iter().chain(seq.boundaries[r - 1].iter()).copied().collect();
    let outside: Vec<usize> =
        (0..d.n()).filter(|w| !closed.contains(w) && *w != u && *w != v).collect();
    for_each_subset(&outside, k, &mut |s| {
        assert!(!is_separator(d, u, v, s), "separator disjoint from last closed set");
    });
}
