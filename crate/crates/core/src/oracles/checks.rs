//! Witness feasibility predicates.
//!
//! Kept apart from both the solvers and the exhaustive oracles on purpose:
//! these use nothing but edge lookups and interval membership, so they remain
//! a third, independent code path.

use std::collections::BTreeMap;

use crate::graph::{Graph, VertexId, VertexSet};
use crate::mir::Mir;
use crate::solvers::{Problem, Witness};

pub fn check_independent_set(g: &Graph, set: &VertexSet) -> bool {
    set.iter().all(|v| g.has_vertex(v)) && g.is_independent(set)
}

pub fn check_clique(g: &Graph, set: &VertexSet) -> bool {
    set.iter().all(|v| g.has_vertex(v)) && g.is_clique(set)
}

/// A clique cover witness must partition the vertex set into cliques.
pub fn check_clique_cover(g: &Graph, cover: &[VertexSet]) -> bool {
    let mut seen = VertexSet::new();
    for class in cover {
        if class.is_empty() || !g.is_clique(class) {
            return false;
        }
        for v in class {
            if !seen.insert(v.clone()) {
                return false;
            }
        }
    }
    seen == g.vertex_set()
}

pub fn check_feedback_vertex_set(g: &Graph, set: &VertexSet) -> bool {
    set.iter().all(|v| g.has_vertex(v)) && g.remove_vertices(set).is_acyclic()
}

pub fn check_dominating_set(g: &Graph, set: &VertexSet) -> bool {
    set.iter().all(|v| g.has_vertex(v))
        && g.vertices()
            .all(|v| set.contains(v) || g.neighbors(v).iter().any(|u| set.contains(u)))
}

pub fn check_transversal(rep: &Mir, points: &[i64]) -> bool {
    rep.iter().all(|(_, ivs)| {
        ivs.iter()
            .any(|iv| points.iter().any(|&p| iv.contains_point(p)))
    })
}

pub fn check_coloring(g: &Graph, coloring: &BTreeMap<VertexId, u32>, p: u32) -> bool {
    if !g
        .vertices()
        .all(|v| coloring.get(v).is_some_and(|&c| 1 <= c && c <= p))
    {
        return false;
    }
    g.edges().iter().all(|(a, b)| coloring[a] != coloring[b])
}

/// Dispatcher used by the CLI and the agreement tests. `rep` is consulted for
/// transversal, `p` for the coloring palette size.
pub fn check_witness(
    problem: Problem,
    g: &Graph,
    rep: Option<&Mir>,
    p: Option<u32>,
    witness: &Witness,
) -> bool {
    match (problem, witness) {
        (Problem::IndependentSet, Witness::Vertices(s)) => check_independent_set(g, s),
        (Problem::Clique, Witness::Vertices(s)) => check_clique(g, s),
        (Problem::CliqueCover, Witness::Partition(classes)) => check_clique_cover(g, classes),
        (Problem::FeedbackVertexSet, Witness::Vertices(s)) => check_feedback_vertex_set(g, s),
        (Problem::DominatingSet, Witness::Vertices(s)) => check_dominating_set(g, s),
        (Problem::Transversal, Witness::Points(pts)) => {
            rep.map_or(false, |rep| check_transversal(rep, pts))
        }
        (Problem::Coloring, Witness::Coloring(c)) => {
            p.map_or(false, |p| check_coloring(g, c, p))
        }
        (Problem::Coloring, Witness::None) => true, // a "no" answer carries no witness
        _ => false,
    }
}
