//! The recursive driver: an exact dfvs solver whose running time is linear
//! in the input size for fixed k, plus the feedback-arc-set reduction.
//!
//! After presolving self-loops, each level strips components that are
//! already acyclic, splits on strongly connected components when possible,
//! and otherwise runs the crux subroutine on a cycle pair (u, v) with budget
//! k. The crux set S then drives one of four cases, each of which assembles
//! a feedback vertex set Ŵ of size ≤ 5k from S and recursive answers and
//! finishes with one compression call, keeping every answer an exact
//! minimum.

use crate::compress::smart_compress;
use crate::crux::{crux, CruxOutcome, CruxTag};
use crate::digraph::Digraph;
use crate::family::{find_cycle_pair, strip_trivial_components, AcyclicFamily, Structure};
use serde::Serialize;

/// Which branch a recursion level took.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Case {
    /// The instance split into strongly connected components.
    SccSplit,
    /// The crux set is itself a deletion set.
    Case1,
    /// The crux set leaves two bad components.
    Case2,
    /// The crux set leaves one bad component of at most half the size.
    Case3,
    /// Deleting the crux set drops the budget.
    Case4,
}

/// One recursion level: depth, branch, instance size, and budget.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct TraceEntry {
    pub depth: usize,
    pub case: Case,
    pub size: usize,
    pub k: usize,
}

/// A minimum directed feedback vertex set together with the recursion trace.
#[derive(Clone, Debug)]
pub struct Solution {
    pub vertices: Vec<usize>,
    pub trace: Vec<TraceEntry>,
}

/// A minimum directed feedback arc set together with the recursion trace.
#[derive(Clone, Debug)]
pub struct ArcSolution {
    pub arcs: Vec<(usize, usize)>,
    pub trace: Vec<TraceEntry>,
}

/// An exact minimum dfvs of size ≤ k, or NO iff the optimum exceeds k.
pub fn solve_dfvs(d: &Digraph, k: usize) -> Option<Solution> {
    // Self-loop vertices are in every solution; presolve them away.
    let loops = d.self_loop_vertices();
    if loops.len() > k {
        return None;
    }
    let (core, map) = d.without(&loops);
    let q = Structure::from_digraph(core);
    let mut trace = Vec::new();
    let sol = solve_rec(&q, k - loops.len(), 0, usize::MAX, &mut trace)?;
    let mut vertices: Vec<usize> = sol.into_iter().map(|v| map[v]).chain(loops).collect();
    vertices.sort_unstable();
    assert!(d.is_acyclic_without(&vertices), "solver returned a non-solution");
    Some(Solution { vertices, trace })
}

/// One recursion level. `bound` is the parent's k + |Q|, which must strictly
/// decrease. Returns a minimum dfvs of q of size ≤ k, or NO iff none exists.
fn solve_rec(
    q: &Structure,
    k: usize,
    depth: usize,
    bound: usize,
    trace: &mut Vec<TraceEntry>,
) -> Option<Vec<usize>> {
    assert!(k + q.size() < bound, "recursion measure must strictly decrease");
    let bound = k + q.size();
    let family = AcyclicFamily;

    let (sq, map) = strip_trivial_components(q, &family);
    if sq.digraph.n() == 0 {
        return Some(Vec::new());
    }
    // Every surviving component has a cycle.
    if k == 0 {
        return None;
    }
    let d = &sq.digraph;
    let scc = d.scc_decompose();

    let sol = if scc.components.len() > 1 {
        // Components solve independently; each needs ≥ 1 deletion, so both
        // sides fit in budget k − 1 whenever the whole instance fits in k.
        trace.push(TraceEntry { depth, case: Case::SccSplit, size: q.size(), k });
        let comp = scc.components[0].clone();
        let (qc, cmap) = sq.induced(&comp);
        let x1 = solve_rec(&qc, k - 1, depth + 1, bound, trace)?;
        let (qr, rmap) = sq.without(&comp);
        let x2 = solve_rec(&qr, k - 1, depth + 1, bound, trace)?;
        let what: Vec<usize> = x1
            .into_iter()
            .map(|v| cmap[v])
            .chain(x2.into_iter().map(|v| rmap[v]))
            .collect();
        finish(d, k, what)?
    } else {
        let (u, v) = find_cycle_pair(&sq);
        let (s, tag) = match crux(&sq, u, v, k, &family) {
            // Every solution avoiding {u, v} would be a u-v separator, and
            // none of size ≤ k exists; so {u, v} hits every solution.
            CruxOutcome::NoSeparator => (vec![u, v], CruxTag::BudgetDrop),
            CruxOutcome::Set { s, tag } => (s, tag),
        };
        match tag {
            CruxTag::DeletionSet => {
                trace.push(TraceEntry { depth, case: Case::Case1, size: q.size(), k });
                finish(d, k, s)?
            }
            CruxTag::TwoBadComponents(c, _) => {
                // Both bad components need ≥ 1 deletion each.
                trace.push(TraceEntry { depth, case: Case::Case2, size: q.size(), k });
                let (qc, cmap) = sq.induced(&c);
                let x1 = solve_rec(&qc, k - 1, depth + 1, bound, trace)?;
                let mut removed = c;
                removed.extend(&s);
                removed.sort_unstable();
                let (qr, rmap) = sq.without(&removed);
                let x2 = solve_rec(&qr, k - 1, depth + 1, bound, trace)?;
                let mut what = s;
                what.extend(x1.into_iter().map(|v| cmap[v]));
                what.extend(x2.into_iter().map(|v| rmap[v]));
                finish(d, k, what)?
            }
            CruxTag::BalancedSplit(c) => {
                // The one bad component is at most half the size; solve it
                // at full budget.
                trace.push(TraceEntry { depth, case: Case::Case3, size: q.size(), k });
                let (qc, cmap) = sq.induced(&c);
                let x = solve_rec(&qc, k, depth + 1, bound, trace)?;
                let mut what = s;
                what.extend(x.into_iter().map(|v| cmap[v]));
                finish(d, k, what)?
            }
            CruxTag::BudgetDrop => {
                // S hits every solution of size ≤ k, so the rest fits k − 1.
                trace.push(TraceEntry { depth, case: Case::Case4, size: q.size(), k });
                let (qr, rmap) = sq.without(&s);
                let x = solve_rec(&qr, k - 1, depth + 1, bound, trace)?;
                let mut what = s;
                what.extend(x.into_iter().map(|v| rmap[v]));
                finish(d, k, what)?
            }
        }
    };
    Some(sol.into_iter().map(|v| map[v]).collect())
}

/// Compresses the assembled feedback vertex set down to an exact minimum.
fn finish(d: &Digraph, k: usize, mut what: Vec<usize>) -> Option<Vec<usize>> {
    what.sort_unstable();
    what.dedup();
    assert!(what.len() <= 5 * k, "every compression call gets |W| <= 5k");
    smart_compress(d, k, &what)
}

/// The feedback-arc-set instance rewritten for vertex deletion.
#[derive(Clone, Debug)]
pub struct DfasReduction {
    pub digraph: Digraph,
    /// Ids below this are vertex copies; ids ≥ base are subdivision vertices
    /// standing for arcs, in input arc order.
    base: usize,
    arcs: Vec<(usize, usize)>,
}

impl DfasReduction {
    /// Maps a subdivision vertex back to its arc.
    pub fn arc_of(&self, v: usize) -> (usize, usize) {
        assert!(v >= self.base, "not a subdivision vertex");
        self.arcs[v - self.base]
    }
}

/// Subdivides every arc and makes k + 1 copies of every original vertex.
///
/// Copies of v are v(k+1)..v(k+1)+k; arc e becomes the subdivision vertex
/// n(k+1)+e with arcs from every copy of its tail and to every copy of its
/// head. With budget k the copies are effectively undeletable, so minimum
/// solutions of size ≤ k consist of subdivision vertices only — i.e. arcs.
/// The output has (k+1)n + m vertices and 2(k+1)m arcs; its total size stays
/// within 2(k+1)(n+m) whenever m ≤ (k+1)n.
pub fn reduce_dfas_to_dfvs(d: &Digraph, k: usize) -> DfasReduction {
    let n = d.n();
    let base = n * (k + 1);
    let mut arcs = Vec::with_capacity(2 * (k + 1) * d.m());
    for (e, &(u, v)) in d.arcs().iter().enumerate() {
        for i in 0..=k {
            arcs.push((u * (k + 1) + i, base + e));
            arcs.push((base + e, v * (k + 1) + i));
        }
    }
    DfasReduction {
        digraph: Digraph::new(base + d.m(), arcs),
        base,
        arcs: d.arcs().to_vec(),
    }
}

/// An exact minimum feedback arc set of size ≤ k, or NO iff none exists.
pub fn solve_dfas(d: &Digraph, k: usize) -> Option<ArcSolution> {
    let red = reduce_dfas_to_dfvs(d, k);
    let sol = solve_dfvs(&red.digraph, k)?;
    // A minimum solution never touches vertex copies: k + 1 copies exist and
    // any used copy would be redundant next to a surviving twin.
    let arcs: Vec<(usize, usize)> = sol.vertices.iter().map(|&v| red.arc_of(v)).collect();
    let keep: Vec<(usize, usize)> =
        d.arcs().iter().copied().filter(|a| !arcs.contains(a)).collect();
    assert!(
        Digraph::new(d.n(), keep).is_acyclic() || arcs.len() < sol.vertices.len(),
        "solver returned a non-solution"
    );
    Some(ArcSolution { arcs, trace: sol.trace })
}
