//! Maximal cliques of graphs that become interval after deleting a small
//! vertex set X: enumeration structured by the intersection with X, and the
//! extremal staircase family showing the 2^{k+1} clique count is reachable.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSet};
use crate::interval::{interval_maximal_cliques, is_interval};
use crate::mir::{Interval, Mir};

/// Enumeration result plus the instrumentation the tests lean on.
#[derive(Clone, Debug)]
pub struct CliqueEnumeration {
    /// Maximal cliques, sorted by (|Y|, Y, clique) where Y is the X-part.
    pub cliques: Vec<VertexSet>,
    /// For each clique, its intersection with the deletion set.
    pub x_parts: Vec<VertexSet>,
    /// Subsets Y ⊆ X examined (clique subsets only).
    pub explored_subsets: u64,
    /// Basic operations between consecutive emitted cliques; max observed.
    pub max_delay_ops: u64,
}

impl CliqueEnumeration {
    pub fn count(&self) -> usize {
        self.cliques.len()
    }
}

/// Enumerates all maximal cliques of `g`, given an interval deletion set `x`
/// (so `g − x` must be an interval graph).
///
/// For every clique subset Y ⊆ X, the cliques with X-part exactly Y are Y
/// joined with the maximal cliques of the interval graph induced on the
/// common neighborhood of Y outside X; non-maximal lifts are filtered out.
pub fn enumerate_maximal_cliques(g: &Graph, x: &VertexSet) -> Result<CliqueEnumeration> {
    for v in x {
        if !g.has_vertex(v) {
            return Err(Error::UnknownVertex(v.to_string()));
        }
    }
    let rest = g.remove_vertices(x);
    if !is_interval(&rest) {
        return Err(Error::Precondition(
            "enumerate_maximal_cliques: graph minus deletion set is not interval".into(),
        ));
    }

    let mut found: Vec<(VertexSet, VertexSet)> = Vec::new(); // (Y, clique)
    let mut explored_subsets = 0u64;
    let mut ops_since_emit = 0u64;
    let mut max_delay_ops = 0u64;

    for y in crate::graph::subsets_of(x) {
        if !g.is_clique(&y) {
            continue;
        }
        explored_subsets += 1;
        // Common neighborhood of Y outside X (all of V ∖ X when Y is empty).
        let mut common: VertexSet = g
            .vertices()
            .filter(|v| !x.contains(*v))
            .cloned()
            .collect();
        for v in &y {
            let ns = g.neighbors(v);
            common = common.intersection(ns).cloned().collect();
        }
        ops_since_emit += common.len() as u64 + 1;

        let candidates: Vec<VertexSet> = if common.is_empty() {
            if y.is_empty() {
                Vec::new()
            } else {
                vec![VertexSet::new()]
            }
        } else {
            interval_maximal_cliques(&g.induced(&common))
                .expect("induced subgraph of an interval graph is interval")
        };

        for q in candidates {
            let mut clique: VertexSet = y.clone();
            clique.extend(q.iter().cloned());
            // Maximality in the whole graph.
            let mut maximal = true;
            for w in g.vertices() {
                if clique.contains(w) {
                    continue;
                }
                ops_since_emit += 1;
                if clique.iter().all(|u| g.has_edge(w, u)) {
                    maximal = false;
                    break;
                }
            }
            if maximal {
                debug_assert_eq!(
                    clique.intersection(x).cloned().collect::<VertexSet>(),
                    y,
                    "lifted clique must intersect X exactly in Y"
                );
                debug_assert!(!found.iter().any(|(_, c)| *c == clique));
                max_delay_ops = max_delay_ops.max(ops_since_emit);
                ops_since_emit = 0;
                found.push((y.clone(), clique));
            }
        }
    }
    max_delay_ops = max_delay_ops.max(ops_since_emit);

    found.sort_by(|(y1, c1), (y2, c2)| (y1.len(), y1, c1).cmp(&(y2.len(), y2, c2)));
    let (x_parts, cliques) = found.into_iter().unzip();
    Ok(CliqueEnumeration {
        cliques,
        x_parts,
        explored_subsets,
        max_delay_ops,
    })
}

/// The staircase family: vertices a_0..a_k, b_0..b_k, all pairs adjacent
/// except a_i b_i, realized with exactly k gaps (each b_i with i ≥ 1 is split
/// around the stretch of a_i). The graph has 2^{k+1} maximal cliques.
pub fn gen_fig1(k: usize) -> (Graph, Mir) {
    let k_i = k as i64;
    let mut g = Graph::new();
    let names: Vec<(VertexId, VertexId)> = (0..=k)
        .map(|i| (VertexId::new(format!("a{i}")), VertexId::new(format!("b{i}"))))
        .collect();
    for (a, b) in &names {
        g.add_vertex(a.clone());
        g.add_vertex(b.clone());
    }
    let all: Vec<VertexId> = g.vertex_set().into_iter().collect();
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            let (u, v) = (&all[i], &all[j]);
            let partners = names
                .iter()
                .any(|(a, b)| (u == a && v == b) || (u == b && v == a));
            if !partners {
                g.add_edge(u, v).unwrap();
            }
        }
    }

    let mut assignment: BTreeMap<VertexId, Vec<Interval>> = BTreeMap::new();
    assignment.insert(names[0].0.clone(), vec![Interval::new(1, k_i + 2)]);
    assignment.insert(names[0].1.clone(), vec![Interval::new(k_i + 3, 2 * k_i + 4)]);
    for i in 1..=k {
        let ii = i as i64;
        assignment.insert(names[i].0.clone(), vec![Interval::new(ii + 1, k_i + 3 + ii)]);
        assignment.insert(
            names[i].1.clone(),
            vec![
                Interval::new(1, ii),
                Interval::new(k_i + 4 + ii, 2 * k_i + 4),
            ],
        );
    }
    let rep = Mir::new(assignment).expect("staircase representation is well-formed");
    debug_assert!(crate::mir::validate_representation(&g, &rep).ok());
    debug_assert_eq!(rep.gap_count(), k);
    (g, rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::mir::validate_representation;

    #[test]
    fn fig1_structure() {
        for k in 0..=4 {
            let (g, rep) = gen_fig1(k);
            assert!(validate_representation(&g, &rep).ok(), "k={k}");
            assert_eq!(rep.gap_count(), k);
            assert_eq!(g.vertex_count(), 2 * (k + 1));
            let expected_gap_vertices: VertexSet =
                (1..=k).map(|i| VertexId::new(format!("b{i}"))).collect();
            assert_eq!(rep.gap_vertices(), expected_gap_vertices);
        }
    }

    #[test]
    fn fig1_clique_counts() {
        for k in 0..=5 {
            let (g, rep) = gen_fig1(k);
            let x = rep.gap_vertices();
            let enumeration = enumerate_maximal_cliques(&g, &x).unwrap();
            assert_eq!(enumeration.count(), 1 << (k + 1), "k={k}");
        }
    }

    #[test]
    fn fig1_cliques_pick_one_per_level() {
        let (g, rep) = gen_fig1(3);
        let enumeration = enumerate_maximal_cliques(&g, &rep.gap_vertices()).unwrap();
        assert_eq!(enumeration.count(), 16);
        for clique in &enumeration.cliques {
            assert_eq!(clique.len(), 4);
            for i in 0..=3 {
                let a = VertexId::new(format!("a{i}"));
                let b = VertexId::new(format!("b{i}"));
                assert_eq!(
                    usize::from(clique.contains(&a)) + usize::from(clique.contains(&b)),
                    1,
                    "level {i} in {clique:?}"
                );
            }
        }
    }

    #[test]
    fn k3_with_empty_deletion_set() {
        let out = enumerate_maximal_cliques(&fixtures::k3(), &VertexSet::new()).unwrap();
        assert_eq!(out.count(), 1);
    }

    #[test]
    fn c4_with_one_deleted_vertex() {
        let (g, rep) = fixtures::c4_with_rep();
        let out = enumerate_maximal_cliques(&g, &rep.gap_vertices()).unwrap();
        assert_eq!(out.count(), 4);
        for c in &out.cliques {
            assert_eq!(c.len(), 2);
        }
    }

    #[test]
    fn non_interval_remainder_is_an_error() {
        let g = fixtures::c4();
        assert!(enumerate_maximal_cliques(&g, &VertexSet::new()).is_err());
    }
}
