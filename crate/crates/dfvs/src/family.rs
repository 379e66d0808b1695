//! Structures (digraph plus relations), the structure-family interface, and
//! the family-generic preprocessing helpers of the recursion driver.
//!
//! The solver itself only exercises the empty-relation instantiation (the
//! family of acyclic digraphs), but relations are carried structurally so the
//! size measure |Q| = n + m + ε·Σ|Rᵢ| is honest for other families.

use crate::digraph::Digraph;

/// A digraph together with relations of arity ≤ ε over its vertices.
#[derive(Clone, Debug)]
pub struct Structure {
    pub digraph: Digraph,
    /// Relations; each a list of vertex tuples. Empty for dfvs.
    pub relations: Vec<Vec<Vec<usize>>>,
    /// The arity bound ε of the structure type.
    pub epsilon: usize,
}

impl Structure {
    /// Wraps a bare digraph as an ε = 1 structure with no relations.
    pub fn from_digraph(digraph: Digraph) -> Structure {
        Structure { digraph, relations: Vec::new(), epsilon: 1 }
    }

    /// Size measure |Q| = n + m + ε·Σ|Rᵢ|.
    pub fn size(&self) -> usize {
        let tuples: usize = self.relations.iter().map(|r| r.len()).sum();
        self.digraph.size() + self.epsilon * tuples
    }

    /// The substructure induced on `x`: digraph induced, relations restricted
    /// to tuples fully inside `x`. Returns the new-to-old vertex mapping.
    pub fn induced(&self, x: &[usize]) -> (Structure, Vec<usize>) {
        let (d, new_to_old) = self.digraph.induced(x);
        let mut old_to_new = vec![usize::MAX; self.digraph.n()];
        for (new, &old) in new_to_old.iter().enumerate() {
            old_to_new[old] = new;
        }
        let relations = self
            .relations
            .iter()
            .map(|rel| {
                rel.iter()
                    .filter(|tuple| tuple.iter().all(|&v| old_to_new[v] != usize::MAX))
                    .map(|tuple| tuple.iter().map(|&v| old_to_new[v]).collect())
                    .collect()
            })
            .collect();
        (Structure { digraph: d, relations, epsilon: self.epsilon }, new_to_old)
    }

    /// The substructure obtained by deleting `removed`.
    pub fn without(&self, removed: &[usize]) -> (Structure, Vec<usize>) {
        let mut drop = vec![false; self.digraph.n()];
        for &v in removed {
            drop[v] = true;
        }
        let keep: Vec<usize> = (0..self.digraph.n()).filter(|&v| !drop[v]).collect();
        self.induced(&keep)
    }
}

/// A linear-time recognizable, hereditary and rigid family of structures.
///
/// Rigidity contract: a structure is recognized iff every substructure
/// induced by a strongly connected component is recognized, and arc-free
/// structures are always recognized. Hereditarity: recognition is closed
/// under induced substructures. Both are spot-checked by tests, not enforced.
pub trait StructureFamily {
    /// Membership test; must run in time linear in |Q|.
    fn recognize(&self, q: &Structure) -> bool;
}

/// The family of all directed acyclic graphs (the dfvs instantiation, ε = 1).
pub struct AcyclicFamily;

impl StructureFamily for AcyclicFamily {
    fn recognize(&self, q: &Structure) -> bool {
        q.digraph.is_acyclic()
    }
}

/// Removes every strongly connected component whose induced substructure is
/// already in the family. Deletion sets are preserved in both directions
/// because the family is rigid and hereditary.
///
/// Returns the stripped structure and the new-to-old vertex mapping.
pub fn strip_trivial_components(
    q: &Structure,
    family: &impl StructureFamily,
) -> (Structure, Vec<usize>) {
    let d = &q.digraph;
    let scc = d.scc_decompose();
    // Bucket relation tuples by the component fully containing them; tuples
    // spanning components survive in no component's induced substructure.
    let mut comp_tuples: Vec<Vec<(usize, &Vec<usize>)>> = vec![Vec::new(); scc.components.len()];
    for (ri, rel) in q.relations.iter().enumerate() {
        for tuple in rel {
            if let Some((&first, rest)) = tuple.split_first() {
                let c = scc.component[first];
                if rest.iter().all(|&v| scc.component[v] == c) {
                    comp_tuples[c].push((ri, tuple));
                }
            }
        }
    }
    // Examine each component with work proportional to its own size, so the
    // whole pass is linear even when most components are singletons.
    let mut local = vec![usize::MAX; d.n()];
    let mut keep: Vec<usize> = Vec::new();
    for (ci, comp) in scc.components.iter().enumerate() {
        // A single vertex without a self-loop induces an arc-free structure,
        // which the family always recognizes.
        if scc.trivial[ci] && !d.has_self_loop(comp[0]) {
            continue;
        }
        for (i, &v) in comp.iter().enumerate() {
            local[v] = i;
        }
        let mut arcs = Vec::new();
        for &v in comp {
            for &w in d.out(v) {
                if scc.component[w] == ci {
                    arcs.push((local[v], local[w]));
                }
            }
        }
        let mut relations = vec![Vec::new(); q.relations.len()];
        for &(ri, tuple) in &comp_tuples[ci] {
            relations[ri].push(tuple.iter().map(|&v| local[v]).collect());
        }
        let sub = Structure {
            digraph: Digraph::new(comp.len(), arcs),
            relations,
            epsilon: q.epsilon,
        };
        if !family.recognize(&sub) {
            keep.extend_from_slice(comp);
        }
        for &v in comp {
            local[v] = usize::MAX;
        }
    }
    keep.sort_unstable();
    q.induced(&keep)
}

/// The pair-finder for dfvs: picks an arc (a, b) inside a non-trivial
/// strongly connected component and returns (u, v) = (b, a).
///
/// Contract: every deletion set disjoint from {u, v} is a u-v separator.
/// Deterministic: the first back-arc of a DFS from the smallest vertex of the
/// first non-trivial component in topological order, neighbors in id order.
///
/// Panics if the digraph is acyclic (precondition violation).
pub fn find_cycle_pair(q: &Structure) -> (usize, usize) {
    let d = &q.digraph;
    let scc = d.scc_decompose();
    let comp_id = (0..scc.components.len())
        .find(|&c| !scc.trivial[c])
        .expect("find_cycle_pair requires a digraph with a cycle");
    let comp = &scc.components[comp_id];
    if d.has_self_loop(comp[0]) {
        // A self-loop (a, a) is an arc on a cycle; u = v is useless to the
        // caller, which is why the driver presolves self-loops away first.
        return (comp[0], comp[0]);
    }

    // Iterative DFS restricted to the component, tracking the active path.
    let mut state = vec![0u8; d.n()]; // 0 unvisited, 1 on stack, 2 done
    let mut stack: Vec<(usize, usize)> = vec![(comp[0], 0)];
    state[comp[0]] = 1;
    while let Some(&mut (v, ref mut idx)) = stack.last_mut() {
        if let Some(&w) = d.out(v).get(*idx) {
            *idx += 1;
            if scc.component[w] != comp_id {
                continue;
            }
            match state[w] {
                0 => {
                    state[w] = 1;
                    stack.push((w, 0));
                }
                1 => return (w, v), // back-arc (v, w): u = w, v = v
                _ => {}
            }
        } else {
            state[v] = 2;
            stack.pop();
        }
    }
    unreachable!("non-trivial strongly connected component must contain a back-arc");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use crate::oracle;

    fn structure(d: Digraph) -> Structure {
        Structure::from_digraph(d)
    }

    fn triangle() -> Structure {
        structure(Digraph::new(3, [(0, 1), (1, 2), (2, 0)]))
    }

    #[test]
    fn recognize_dag_and_cycle() {
        assert!(AcyclicFamily.recognize(&structure(Digraph::new(3, [(0, 1), (1, 2)]))));
        assert!(!AcyclicFamily.recognize(&triangle()));
    }

    #[test]
    fn recognize_large_generated_dag() {
        let inst = gen::gen_planted(1000, 3000, 0, 42);
        assert!(AcyclicFamily.recognize(&structure(inst.digraph)));
    }

    #[test]
    fn recognition_is_rigid_at_literal_level() {
        // Recognized iff every SCC is a singleton without self-loop.
        for d in gen::gen_exhaustive_small(3) {
            let q = structure(d);
            let scc = q.digraph.scc_decompose();
            let rigid = scc.trivial.iter().all(|&t| t);
            assert_eq!(AcyclicFamily.recognize(&q), rigid);
        }
    }

    #[test]
    fn strip_dag_leaves_nothing() {
        let q = structure(Digraph::new(4, [(0, 1), (1, 2), (2, 3)]));
        let (stripped, _) = strip_trivial_components(&q, &AcyclicFamily);
        assert_eq!(stripped.digraph.n(), 0);
    }

    #[test]
    fn strip_keeps_cycles_only() {
        // Triangle plus a pendant path hanging off it.
        let d = Digraph::new(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)]);
        let q = structure(d.clone());
        let (stripped, map) = strip_trivial_components(&q, &AcyclicFamily);
        assert_eq!(map, vec![0, 1, 2]);
        assert_eq!(stripped.digraph.n(), 3);
        // Deletion-set equivalence via the oracle.
        assert_eq!(
            oracle::brute_force_dfvs_opt(&d),
            oracle::brute_force_dfvs_opt(&stripped.digraph)
        );
    }

    #[test]
    fn strip_two_triangles_unchanged() {
        let d = Digraph::new(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]);
        let (stripped, map) = strip_trivial_components(&structure(d.clone()), &AcyclicFamily);
        assert_eq!(map, (0..6).collect::<Vec<_>>());
        assert_eq!(stripped.digraph, d);
    }

    #[test]
    fn cycle_pair_on_triangle_and_two_cycle() {
        let (u, v) = find_cycle_pair(&triangle());
        assert!(u != v);
        // (u, v) = (b, a) for an arc (a, b): the arc (v, u) must exist.
        assert!(triangle().digraph.has_arc(v, u));

        let two = structure(Digraph::new(2, [(0, 1), (1, 0)]));
        let (u, v) = find_cycle_pair(&two);
        assert!(two.digraph.has_arc(v, u));
    }

    #[test]
    #[should_panic(expected = "requires a digraph with a cycle")]
    fn cycle_pair_on_dag_panics() {
        find_cycle_pair(&structure(Digraph::new(2, [(0, 1)])));
    }

    #[test]
    fn cycle_pair_contract_on_small_corpus() {
        // Every dfvs disjoint from {u, v} must cut all u → v paths.
        for seed in 0..80u64 {
            let d = gen::gen_random(6, 10, seed);
            if d.is_acyclic() {
                continue;
            }
            let (u, v) = find_cycle_pair(&structure(d.clone()));
            let opt = oracle::brute_force_dfvs_opt(&d);
            oracle::for_each_subset(
                &(0..d.n()).collect::<Vec<_>>(),
                opt,
                &mut |set| {
                    if d.is_acyclic_without(set)
                        && !set.contains(&u)
                        && !set.contains(&v)
                    {
                        assert!(oracle::is_separator(&d, u, v, set));
                    }
                },
            );
        }
    }

    #[test]
    fn structure_size_counts_relations() {
        let mut q = triangle();
        assert_eq!(q.size(), 6);
        q.epsilon = 2;
        q.relations = vec![vec![vec![0, 1], vec![1, 2]]];
        assert_eq!(q.size(), 6 + 2 * 2);
        let (sub, _) = q.induced(&[0, 1]);
        assert_eq!(sub.relations[0], vec![vec![0, 1]]);
    }
}
