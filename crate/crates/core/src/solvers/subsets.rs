//! Independent set and clique via the deletion-set subsets.

use std::time::Instant;

use crate::cliques::enumerate_maximal_cliques;
use crate::error::{Error, Result};
use crate::graph::{subsets_of, Graph, VertexSet};
use crate::interval::{interval_max_independent_set, recognize_interval};
use crate::mir::Mir;

use super::{Problem, SolverReport, Witness};

/// Maximum independent set: try every independent Y ⊆ X, then solve greedily
/// on the interval remainder outside N[Y]. Counts one guess per subset of X.
pub fn solve_independent_set(
    g: &Graph,
    x: &VertexSet,
    target: Option<i64>,
) -> Result<SolverReport> {
    let start = Instant::now();
    let rest = g.remove_vertices(x);
    let model = recognize_interval(&rest).ok_or(Error::Precondition(
        "solve_independent_set: graph minus deletion set is not interval".into(),
    ))?;
    let mut explored = 0u64;
    let mut best: Option<VertexSet> = None;
    for y in subsets_of(x) {
        explored += 1;
        if !g.is_independent(&y) {
            continue;
        }
        let forbidden = g.closed_set_neighborhood(&y);
        let items: Vec<_> = model
            .rep
            .iter()
            .filter(|(v, _)| !forbidden.contains(*v))
            .map(|(v, ivs)| (v.clone(), ivs[0]))
            .collect();
        let mut candidate = interval_max_independent_set(&items);
        candidate.extend(y.iter().cloned());
        if best.as_ref().map_or(true, |b| candidate.len() > b.len()) {
            best = Some(candidate);
        }
    }
    let witness = best.unwrap_or_default();
    debug_assert!(g.is_independent(&witness));
    Ok(SolverReport::new(
        Problem::IndependentSet,
        witness.len() as i64,
        Witness::Vertices(witness),
        explored,
        start.elapsed(),
        target,
    ))
}

/// Maximum clique: scan the structured maximal-clique enumeration. Counts the
/// subsets of X the enumeration examines.
pub fn solve_clique(g: &Graph, x: &VertexSet, target: Option<i64>) -> Result<SolverReport> {
    let start = Instant::now();
    let enumeration = enumerate_maximal_cliques(g, x)?;
    let witness = enumeration
        .cliques
        .iter()
        .max_by_key(|c| c.len())
        .cloned()
        .unwrap_or_default();
    debug_assert!(g.is_clique(&witness));
    Ok(SolverReport::new(
        Problem::Clique,
        witness.len() as i64,
        Witness::Vertices(witness),
        enumeration.explored_subsets,
        start.elapsed(),
        target,
    ))
}

/// Shared precondition helper: a representation is a valid instance when it
/// derives exactly the given graph.
pub(crate) fn require_matching_rep(g: &Graph, rep: &Mir, context: &str) -> Result<()> {
    let report = crate::mir::validate_representation(g, rep);
    if !report.ok() {
        return Err(Error::Precondition(format!(
            "{context}: representation does not match the graph ({report})"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cliques::gen_fig1;
    use crate::fixtures;
    use crate::graph::Graph;

    #[test]
    fn c4_independent_set() {
        let (g, rep) = fixtures::c4_with_rep();
        let report = solve_independent_set(&g, &rep.gap_vertices(), None).unwrap();
        assert_eq!(report.optimum, 2);
        assert_eq!(report.explored, 2); // ∅ and {b1}
    }

    #[test]
    fn fig1_independent_set_is_two() {
        let (g, rep) = gen_fig1(3);
        let report = solve_independent_set(&g, &rep.gap_vertices(), None).unwrap();
        assert_eq!(report.optimum, 2);
    }

    #[test]
    fn edgeless_graph_takes_everything() {
        let mut g = Graph::new();
        for i in 0..5 {
            g.add_vertex(format!("v{i}").into());
        }
        let report = solve_independent_set(&g, &VertexSet::new(), None).unwrap();
        assert_eq!(report.optimum, 5);
    }

    #[test]
    fn clique_sizes() {
        let (g, rep) = fixtures::c4_with_rep();
        assert_eq!(solve_clique(&g, &rep.gap_vertices(), None).unwrap().optimum, 2);
        for k in 0..=4 {
            let (g, rep) = gen_fig1(k);
            assert_eq!(
                solve_clique(&g, &rep.gap_vertices(), None).unwrap().optimum,
                k as i64 + 1
            );
        }
    }

    #[test]
    fn k5_with_one_deleted() {
        let g = crate::graph::complete_graph(&["1", "2", "3", "4", "5"]);
        let x: VertexSet = ["1".into()].into_iter().collect();
        assert_eq!(solve_clique(&g, &x, None).unwrap().optimum, 5);
    }

    #[test]
    fn non_interval_rest_is_an_error() {
        let g = fixtures::c4();
        assert!(solve_independent_set(&g, &VertexSet::new(), None).is_err());
    }
}
