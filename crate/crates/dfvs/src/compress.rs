//! Iterative compression for dfvs: given a digraph, a budget k, and a known
//! feedback vertex set Ŵ, compute a minimum dfvs of size ≤ k or report NO.
//!
//! The classical route: guess the solution's intersection with Ŵ, reduce the
//! disjoint remainder problem to skew separators by guessing the topological
//! order of Ŵ in the residual DAG, and solve skew separators by push-or-
//! include branching on the minimum cut closest to the last source block.
//! A folklore wrapper handles Ŵ of arbitrary size by inserting its vertices
//! one at a time.

use crate::digraph::Digraph;
use crate::flow::max_vertex_flow_multi;

/// A skew cut instance: delete ≤ k non-terminal vertices so that no path
/// remains from Xᵢ to Yⱼ for any i ≥ j.
#[derive(Clone, Debug)]
pub struct SkewCutInstance {
    pub digraph: Digraph,
    /// Ordered terminal pairs (X₁, Y₁), …, (X_ℓ, Y_ℓ).
    pub pairs: Vec<(Vec<usize>, Vec<usize>)>,
    pub k: usize,
}

/// A minimum skew separator of size ≤ k, or NO.
///
/// Requires the shape produced by the dfvs reduction: X-terminals have no
/// incoming arcs and Y-terminals no outgoing arcs, so terminals never sit on
/// the interior of a path and are never cut.
pub fn skew_separator(inst: &SkewCutInstance) -> Option<Vec<usize>> {
    for (xs, ys) in &inst.pairs {
        for &x in xs {
            assert!(inst.digraph.in_(x).is_empty(), "X-terminals must have no in-arcs");
        }
        for &y in ys {
            assert!(inst.digraph.out(y).is_empty(), "Y-terminals must have no out-arcs");
        }
    }
    skew_rec(&inst.digraph, inst.pairs.clone(), inst.k)
}

/// The push-or-include recursion on the cut farthest from the last block.
///
/// At each node, let Z be the minimum cut from X_ℓ to all sinks farthest
/// from X_ℓ (the important-separator direction). Any solution either
/// contains some z ∈ Z (include branch: delete z, budget k−1) or avoids Z
/// entirely, in which case a solution of the same size avoiding the whole
/// source side exists and X_ℓ can absorb it (push branch). The minimum over
/// feasible branches is exact. Pushing past the farthest cut strictly
/// increases the cut value — the farthest cut has the unique maximal source
/// side among minimum cuts — so the measure 2k − λ drops in every branch
/// and the recursion tree stays within the 4^k bound.
fn skew_rec(
    d: &Digraph,
    mut pairs: Vec<(Vec<usize>, Vec<usize>)>,
    k: usize,
) -> Option<Vec<usize>> {
    let flow = loop {
        let Some((sources, _)) = pairs.last() else {
            return Some(Vec::new());
        };
        let sinks: Vec<usize> = {
            let mut s: Vec<usize> = pairs.iter().flat_map(|(_, ys)| ys.iter().copied()).collect();
            s.sort_unstable();
            s.dedup();
            s
        };
        match max_vertex_flow_multi(d, sources, &sinks, k) {
            Err(_) => return None, // direct arc or λ > k: this branch is dead
            Ok(flow) if flow.value == 0 => {
                pairs.pop(); // the last block reaches no sink; its constraints hold
            }
            Ok(flow) => break flow,
        }
    };

    let cut = flow.farthest_min_cut();
    let mut best: Option<Vec<usize>> = None;
    let allowed = |best: &Option<Vec<usize>>| match best {
        Some(b) => b.len().saturating_sub(1).min(k),
        None => k,
    };

    // Include branches: z joins the solution.
    for &z in &cut {
        let budget = allowed(&best);
        if budget == 0 {
            break;
        }
        let arcs = d.arcs().iter().copied().filter(|&(a, b)| a != z && b != z);
        let child = Digraph::new(d.n(), arcs);
        if let Some(mut sol) = skew_rec(&child, pairs.clone(), budget - 1) {
            sol.push(z);
            best = Some(sol);
        }
    }
    // Push branch: the solution avoids the cut, hence (some optimal one
    // avoids) the whole closest source side; absorb it into X_ℓ.
    let budget = allowed(&best);
    if best.is_none() || budget >= 1 {
        let mut pushed = pairs;
        {
            let (xs, _) = pushed.last_mut().unwrap();
            xs.extend(flow.farthest_source_side());
            xs.extend(&cut);
            xs.sort_unstable();
            xs.dedup();
        }
        if let Some(sol) = skew_rec(d, pushed, budget) {
            if best.as_ref().is_none_or(|b| sol.len() < b.len()) {
                best = Some(sol);
            }
        }
    }
    best
}

/// A minimum dfvs of size ≤ k disjoint from `w`, or NO.
///
/// Requires D − w acyclic. NO is immediate when D[w] has a cycle. Otherwise
/// every topological order of w consistent with D[w] is tried; each reduces
/// to a skew cut instance where w-vertices split into an out-copy source
/// block and an in-copy sink block.
pub fn disjoint_dfvs(d: &Digraph, k: usize, w: &[usize]) -> Option<Vec<usize>> {
    assert!(d.is_acyclic_without(w), "w must be a feedback vertex set");
    if !d.induced(w).0.is_acyclic() {
        return None;
    }
    let mut in_w = vec![false; d.n()];
    for &v in w {
        in_w[v] = true;
    }
    // Presolve: a non-w vertex on a 2-cycle with a w-vertex is forced.
    let mut forced: Vec<usize> = (0..d.n())
        .filter(|&v| !in_w[v] && d.out(v).iter().any(|&u| in_w[u] && d.has_arc(u, v)))
        .collect();
    if forced.len() > k {
        return None;
    }
    let mut dropped = vec![false; d.n()];
    for &v in &forced {
        dropped[v] = true;
    }
    let arcs = d.arcs().iter().copied().filter(|&(a, b)| !dropped[a] && !dropped[b]);
    let core = Digraph::new(d.n(), arcs);
    if core.is_acyclic() {
        return Some(forced);
    }

    let k = k - forced.len();
    let mut w_sorted = w.to_vec();
    w_sorted.sort_unstable();
    let mut best: Option<Vec<usize>> = None;
    for_each_topological_order(&core, &w_sorted, &mut |sigma| {
        let budget = match &best {
            Some(b) => b.len().saturating_sub(1).min(k),
            None => k,
        };
        if let Some(sol) = skew_for_order(&core, &w_sorted, sigma, budget) {
            if best.as_ref().is_none_or(|b| sol.len() < b.len()) {
                best = Some(sol);
            }
        }
    });
    best.map(|mut sol| {
        sol.append(&mut forced);
        sol
    })
}

/// Enumerates topological orders of D[w], pruning inconsistent prefixes.
fn for_each_topological_order(d: &Digraph, w: &[usize], f: &mut impl FnMut(&[usize])) {
    let mut in_w = vec![false; d.n()];
    let mut placed = vec![false; d.n()];
    for &v in w {
        in_w[v] = true;
    }
    let mut sigma = Vec::with_capacity(w.len());
    fn rec(
        d: &Digraph,
        w: &[usize],
        in_w: &[bool],
        placed: &mut [bool],
        sigma: &mut Vec<usize>,
        f: &mut impl FnMut(&[usize]),
    ) {
        if sigma.len() == w.len() {
            f(sigma);
            return;
        }
        for &v in w {
            // v may come next iff all its w-in-neighbors are already placed.
            if placed[v] || d.in_(v).iter().any(|&u| in_w[u] && !placed[u]) {
                continue;
            }
            placed[v] = true;
            sigma.push(v);
            rec(d, w, in_w, placed, sigma, f);
            sigma.pop();
            placed[v] = false;
        }
    }
    rec(d, w, &in_w, &mut placed, &mut sigma, f);
}

/// Builds and solves the skew cut instance for one topological order of w.
///
/// Each w-vertex keeps its id as the in-copy (sink) and gains a fresh
/// out-copy (source); a dfvs disjoint from w realizing the order is exactly
/// a skew separator: paths from a later block back to an earlier one are
/// the only way a cycle can close through w.
fn skew_for_order(d: &Digraph, w: &[usize], sigma: &[usize], k: usize) -> Option<Vec<usize>> {
    let n = d.n();
    let mut out_copy = vec![usize::MAX; n];
    for (i, &v) in w.iter().enumerate() {
        out_copy[v] = n + i;
    }
    let arcs = d.arcs().iter().filter_map(|&(u, v)| {
        match (out_copy[u] != usize::MAX, out_copy[v] != usize::MAX) {
            (true, true) => None, // within w: already consistent with sigma
            (true, false) => Some((out_copy[u], v)),
            (false, true) => Some((u, v)),
            (false, false) => Some((u, v)),
        }
    });
    let inst = SkewCutInstance {
        digraph: Digraph::new(n + w.len(), arcs),
        pairs: sigma.iter().map(|&v| (vec![out_copy[v]], vec![v])).collect(),
        k,
    };
    skew_separator(&inst)
}

/// A minimum dfvs of size ≤ k, or NO, given a feedback vertex set w of size
/// ≤ k + 1: guess the solution's intersection with w, solve the disjoint
/// remainder.
pub fn compress(d: &Digraph, k: usize, w: &[usize]) -> Option<Vec<usize>> {
    assert!(w.len() <= k + 1, "compress needs |w| <= k + 1");
    assert!(d.is_acyclic_without(w), "w must be a feedback vertex set");
    let mut w_sorted = w.to_vec();
    w_sorted.sort_unstable();
    let mut best: Option<Vec<usize>> = None;
    for mask in 0u32..1 << w_sorted.len() {
        let budget = match &best {
            Some(b) => b.len().saturating_sub(1).min(k),
            None => k,
        };
        let z: Vec<usize> = w_sorted
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &v)| v)
            .collect();
        if z.len() > budget {
            continue;
        }
        let rest: Vec<usize> = w_sorted.iter().copied().filter(|v| !z.contains(v)).collect();
        let mut dropped = vec![false; d.n()];
        for &v in &z {
            dropped[v] = true;
        }
        let arcs = d.arcs().iter().copied().filter(|&(a, b)| !dropped[a] && !dropped[b]);
        let without_z = Digraph::new(d.n(), arcs);
        if let Some(sol) = disjoint_dfvs(&without_z, budget - z.len(), &rest) {
            let mut full = z;
            full.extend(sol);
            if best.as_ref().is_none_or(|b| full.len() < b.len()) {
                best = Some(full);
            }
        }
    }
    if let Some(sol) = &mut best {
        sol.sort_unstable();
        assert!(d.is_acyclic_without(sol), "compression returned a non-solution");
    }
    best
}

/// A minimum dfvs of size ≤ k, or NO, given a feedback vertex set w of any
/// size: compress directly when w is small, otherwise insert w's vertices
/// one at a time, re-compressing after each insertion.
pub fn smart_compress(d: &Digraph, k: usize, w: &[usize]) -> Option<Vec<usize>> {
    assert!(d.is_acyclic_without(w), "w must be a feedback vertex set");
    if w.len() <= k + 1 {
        return compress(d, k, w);
    }
    let mut w_sorted = w.to_vec();
    w_sorted.sort_unstable();
    w_sorted.dedup();
    if w_sorted.len() <= k + 1 {
        return compress(d, k, &w_sorted);
    }
    let mut in_w = vec![false; d.n()];
    for &v in &w_sorted {
        in_w[v] = true;
    }
    // Grow the vertex set from D − w, adding w-vertices one by one; the
    // previous solution plus the new vertex is always a small dfvs.
    let mut verts: Vec<usize> = (0..d.n()).filter(|&v| !in_w[v]).collect();
    verts.extend(&w_sorted[..k + 1]);
    let (sub, map) = d.induced(&verts);
    let seed: Vec<usize> =
        w_sorted[..k + 1].iter().map(|v| map.binary_search(v).unwrap()).collect();
    let mut solution: Vec<usize> = compress(&sub, k, &seed)?
        .into_iter()
        .map(|v| map[v])
        .collect();
    for &next in &w_sorted[k + 1..] {
        verts.push(next);
        let (sub, map) = d.induced(&verts);
        let mut small: Vec<usize> = solution
            .iter()
            .chain([&next])
            .map(|v| map.binary_search(v).unwrap())
            .collect();
        small.sort_unstable();
        solution = compress(&sub, k, &small)?.into_iter().map(|v| map[v]).collect();
    }
    solution.sort_unstable();
    assert!(d.is_acyclic_without(&solution), "compression returned a non-solution");
    Some(solution)
}

/// Exhaustive skew-separator minimum, test support (exponential).
pub fn brute_force_skew(inst: &SkewCutInstance) -> Option<Vec<usize>> {
    let d = &inst.digraph;
    let mut terminal = vec![false; d.n()];
    for (xs, ys) in &inst.pairs {
        for &v in xs.iter().chain(ys) {
            terminal[v] = true;
        }
    }
    let deletable: Vec<usize> = (0..d.n()).filter(|&v| !terminal[v]).collect();
    for size in 0..=inst.k {
        let mut found: Option<Vec<usize>> = None;
        crate::oracle::for_each_subset(&deletable, size, &mut |set| {
            if found.is_none() && set.len() == size && is_skew_separator(inst, set) {
                found = Some(set.to_vec());
            }
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Whether `set` cuts every Xᵢ → Yⱼ path with i ≥ j.
pub fn is_skew_separator(inst: &SkewCutInstance, set: &[usize]) -> bool {
    let d = &inst.digraph;
    for (i, (xs, _)) in inst.pairs.iter().enumerate() {
        let mut reach = vec![false; d.n()];
        for &x in xs {
            if !set.contains(&x) {
                for r in d.reachable_from(x, set) {
                    reach[r] = true;
                }
            }
        }
        for (_, ys) in &inst.pairs[..=i] {
            if ys.iter().any(|&y| reach[y]) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use crate::oracle;

    #[test]
    fn compress_triangle() {
        let d = Digraph::new(3, [(0, 1), (1, 2), (2, 0)]);
        let sol = compress(&d, 1, &[0]).unwrap();
        assert_eq!(sol.len(), 1);
        assert!(d.is_acyclic_without(&sol));
    }

    #[test]
    fn compress_two_triangles_is_no() {
        let d = Digraph::new(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]);
        assert_eq!(compress(&d, 1, &[0, 3]), None);
    }

    #[test]
    fn compress_dag_is_empty() {
        let d = Digraph::new(4, [(0, 1), (1, 2), (2, 3), (0, 3)]);
        assert_eq!(compress(&d, 2, &[]), Some(vec![]));
    }

    #[test]
    fn disjoint_triangle_avoids_w() {
        let d = Digraph::new(3, [(0, 1), (1, 2), (2, 0)]);
        let sol = disjoint_dfvs(&d, 1, &[0]).unwrap();
        assert_eq!(sol.len(), 1);
        assert_ne!(sol[0], 0);
        assert!(d.is_acyclic_without(&sol));
    }

    #[test]
    fn disjoint_two_cycle() {
        let d = Digraph::new(2, [(0, 1), (1, 0)]);
        assert_eq!(disjoint_dfvs(&d, 1, &[0]), Some(vec![1]));
        // Both endpoints protected: D[w] has a cycle.
        assert_eq!(disjoint_dfvs(&d, 5, &[0, 1]), None);
    }

    #[test]
    fn skew_single_pair_matches_min_separator() {
        // One pair degenerates to a plain minimum vertex separator.
        let mut rng = gen::SplitMix64::new(0x5e9a);
        for _ in 0..200 {
            let n = 3 + rng.below(5);
            let core = gen::gen_random_with(&mut rng, n, 2 * n);
            // Fresh terminals wired to/from random core vertices.
            let mut arcs: Vec<(usize, usize)> = core.arcs().to_vec();
            arcs.push((n, rng.below(n)));
            arcs.push((rng.below(n), n + 1));
            let d = Digraph::new(n + 2, arcs);
            let inst =
                SkewCutInstance { digraph: d, pairs: vec![(vec![n], vec![n + 1])], k: n };
            let got = skew_separator(&inst);
            let want = brute_force_skew(&inst);
            assert_eq!(got.as_ref().map(Vec::len), want.as_ref().map(Vec::len));
            if let Some(sol) = got {
                assert!(is_skew_separator(&inst, &sol));
            }
        }
    }

    #[test]
    fn skew_no_paths_is_empty() {
        let d = Digraph::new(4, []);
        let inst = SkewCutInstance {
            digraph: d,
            pairs: vec![(vec![0], vec![1]), (vec![2], vec![3])],
            k: 2,
        };
        assert_eq!(skew_separator(&inst), Some(vec![]));
    }

    #[test]
    fn skew_six_vertex_instance() {
        // Blocks (X₁={0}, Y₁={1}), (X₂={2}, Y₂={3}); all constrained paths
        // funnel through vertices 4 and 5, so the minimum skew cut is {4, 5}.
        let d = Digraph::new(6, [(0, 4), (4, 1), (2, 5), (5, 3), (2, 4)]);
        let inst = SkewCutInstance {
            digraph: d,
            pairs: vec![(vec![0], vec![1]), (vec![2], vec![3])],
            k: 2,
        };
        assert_eq!(brute_force_skew(&inst).unwrap().len(), 2);
        let sol = skew_separator(&inst).unwrap();
        assert_eq!(sol.len(), 2);
        assert!(is_skew_separator(&inst, &sol));
    }

    #[test]
    fn skew_matches_enumeration_on_corpus() {
        // Random two-block instances against exhaustive enumeration.
        let mut rng = gen::SplitMix64::new(0x5e9b);
        for _ in 0..200 {
            let n = 3 + rng.below(4);
            let core = gen::gen_random_with(&mut rng, n, 2 * n);
            let mut arcs: Vec<(usize, usize)> = core.arcs().to_vec();
            for x in [n, n + 2] {
                for _ in 0..1 + rng.below(2) {
                    arcs.push((x, rng.below(n)));
                }
            }
            for y in [n + 1, n + 3] {
                for _ in 0..1 + rng.below(2) {
                    arcs.push((rng.below(n), y));
                }
            }
            let k = 1 + rng.below(3);
            let inst = SkewCutInstance {
                digraph: Digraph::new(n + 4, arcs),
                pairs: vec![(vec![n], vec![n + 1]), (vec![n + 2], vec![n + 3])],
                k,
            };
            let got = skew_separator(&inst);
            let want = brute_force_skew(&inst);
            assert_eq!(
                got.as_ref().map(Vec::len),
                want.as_ref().map(Vec::len),
                "instance {:?}",
                inst
            );
            if let Some(sol) = got {
                assert!(is_skew_separator(&inst, &sol));
            }
        }
    }

    #[test]
    fn compress_matches_oracle_on_corpus() {
        let mut rng = gen::SplitMix64::new(0xc0a1);
        for _ in 0..300 {
            let n = 3 + rng.below(5);
            let d = gen::gen_random_with(&mut rng, n, 2 * n);
            let k = 1 + rng.below(3);
            let Some(opt) = oracle::brute_force_dfvs(&d, k) else { continue };
            // A feedback set of size ≤ k+1: the optimum plus one extra vertex.
            let mut w = opt.clone();
            if let Some(extra) = (0..n).find(|v| !w.contains(v)) {
                w.push(extra);
            }
            let sol = compress(&d, k, &w).expect("a solution of size <= k exists");
            assert_eq!(sol.len(), opt.len());
            assert!(d.is_acyclic_without(&sol));
            // Monotone sanity: with budget opt − 1 the answer must be NO.
            if !opt.is_empty() {
                assert_eq!(compress(&d, opt.len() - 1, &opt), None);
            }
        }
    }

    #[test]
    fn smart_compress_full_vertex_set_matches_oracle() {
        let mut rng = gen::SplitMix64::new(0xc0a2);
        for _ in 0..200 {
            let n = 3 + rng.below(5);
            let d = gen::gen_random_with(&mut rng, n, 2 * n);
            let k = rng.below(4);
            let all: Vec<usize> = (0..n).collect();
            let got = smart_compress(&d, k, &all);
            let want = oracle::brute_force_dfvs(&d, k);
            assert_eq!(got.as_ref().map(Vec::len), want.as_ref().map(Vec::len));
            if let Some(sol) = got {
                assert!(d.is_acyclic_without(&sol));
            }
        }
    }

    #[test]
    fn smart_compress_dag_is_empty() {
        let d = Digraph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]);
        assert_eq!(smart_compress(&d, 0, &[0, 2, 4]), Some(vec![]));
    }

    #[test]
    fn smart_compress_planted_instance() {
        // The generator guarantees a dfvs of size ≤ 3 exists.
        let inst = gen::gen_planted(40, 120, 3, 0xbeef);
        let d = &inst.digraph;
        let all: Vec<usize> = (0..d.n()).collect();
        let sol = smart_compress(d, 3, &all).expect("planted budget always feasible");
        assert!(sol.len() <= 3);
        assert!(d.is_acyclic_without(&sol));
    }
}
