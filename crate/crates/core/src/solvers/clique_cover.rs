//! Minimum clique cover via the greedy-closure recursion: pick a vertex
//! exclusive to the leftmost clique bag of the interval part, branch over the
//! deletion-set portion of its cover class, close the class greedily inside
//! the bag, and recurse on the remainder. Memoized on the remaining vertex
//! set.

use std::collections::HashMap;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::graph::{subsets_of, Graph, VertexId, VertexSet};
use crate::interval::{clique_path_decomposition, is_interval};

use super::{Problem, SolverReport, Witness};

/// Counts one guess per `(remainder, class candidate)` branch actually
/// expanded; memo hits are free.
pub fn solve_clique_cover(g: &Graph, x: &VertexSet, target: Option<i64>) -> Result<SolverReport> {
    let start = Instant::now();
    if !is_interval(&g.remove_vertices(x)) {
        return Err(Error::Precondition(
            "solve_clique_cover: graph minus deletion set is not interval".into(),
        ));
    }
    let mut memo: HashMap<Vec<VertexId>, (usize, Option<VertexSet>)> = HashMap::new();
    let mut explored = 0u64;
    let all = g.vertex_set();
    let size = cover(g, x, &all, &mut memo, &mut explored);

    // Reconstruct the cover by re-walking the memoized choices.
    let mut classes: Vec<VertexSet> = Vec::new();
    let mut remaining = all;
    while !remaining.is_empty() {
        let key: Vec<VertexId> = remaining.iter().cloned().collect();
        let class = memo[&key]
            .1
            .clone()
            .expect("non-empty remainder stores its chosen class");
        remaining = remaining.difference(&class).cloned().collect();
        classes.push(class);
    }
    debug_assert_eq!(classes.len(), size);
    Ok(SolverReport::new(
        Problem::CliqueCover,
        size as i64,
        Witness::Partition(classes),
        explored,
        start.elapsed(),
        target,
    ))
}

fn cover(
    g: &Graph,
    x: &VertexSet,
    remaining: &VertexSet,
    memo: &mut HashMap<Vec<VertexId>, (usize, Option<VertexSet>)>,
    explored: &mut u64,
) -> usize {
    if remaining.is_empty() {
        return 0;
    }
    let key: Vec<VertexId> = remaining.iter().cloned().collect();
    if let Some((size, _)) = memo.get(&key) {
        return *size;
    }
    let sub = g.induced(remaining);
    let x_part: VertexSet = remaining.intersection(x).cloned().collect();
    let interval_part: VertexSet = remaining.difference(&x_part).cloned().collect();

    // The pivot vertex and the bag that closes its class greedily.
    let (pivot, bag) = if interval_part.is_empty() {
        (remaining.iter().next().unwrap().clone(), VertexSet::new())
    } else {
        let pd = clique_path_decomposition(&sub.induced(&interval_part))
            .expect("interval part stays interval under induced subgraphs");
        let first = &pd.bags[0];
        let rest: VertexSet = pd.bags[1..]
            .iter()
            .flat_map(|b| b.iter().cloned())
            .collect();
        let pivot = first
            .iter()
            .find(|v| !rest.contains(*v))
            .expect("the leftmost maximal clique owns an exclusive vertex")
            .clone();
        (pivot, first.clone())
    };

    let x_neighbors: VertexSet = g
        .neighbors(&pivot)
        .intersection(&x_part)
        .cloned()
        .collect();
    let mut best = usize::MAX;
    let mut best_class: Option<VertexSet> = None;
    for x1 in subsets_of(&x_neighbors) {
        if !g.is_clique(&x1) {
            continue;
        }
        *explored += 1;
        let mut class: VertexSet = x1.clone();
        class.insert(pivot.clone());
        for u in &bag {
            if u != &pivot && x1.iter().all(|w| g.has_edge(u, w)) {
                class.insert(u.clone());
            }
        }
        let rest: VertexSet = remaining.difference(&class).cloned().collect();
        let size = 1 + cover(g, x, &rest, memo, explored);
        if size < best {
            best = size;
            best_class = Some(class);
        }
    }
    memo.insert(key, (best, best_class));
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cliques::gen_fig1;
    use crate::fixtures;
    use crate::oracles::checks::check_clique_cover;

    #[test]
    fn c4_cover_is_two() {
        let (g, rep) = fixtures::c4_with_rep();
        let report = solve_clique_cover(&g, &rep.gap_vertices(), None).unwrap();
        assert_eq!(report.optimum, 2);
        match &report.witness {
            Witness::Partition(classes) => assert!(check_clique_cover(&g, classes)),
            _ => panic!("expected a partition"),
        }
    }

    #[test]
    fn k3_cover_is_one() {
        let g = fixtures::k3();
        let report = solve_clique_cover(&g, &VertexSet::new(), None).unwrap();
        assert_eq!(report.optimum, 1);
    }

    #[test]
    fn fig1_two_gaps_cover_is_two() {
        let (g, rep) = gen_fig1(2);
        let report = solve_clique_cover(&g, &rep.gap_vertices(), None).unwrap();
        assert_eq!(report.optimum, 2);
    }

    #[test]
    fn deletion_set_only_graph() {
        // Everything in X: falls back to the clique recursion without bags.
        let g = fixtures::c4();
        let report = solve_clique_cover(&g, &g.vertex_set(), None).unwrap();
        assert_eq!(report.optimum, 2);
    }
}
