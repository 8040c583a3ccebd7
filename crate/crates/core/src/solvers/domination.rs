//! Dominating set on a representation with few gaps: partition the split
//! vertices into Y (forced into the solution) and Z (each dominated through
//! one chosen interval), then solve the remaining interval instance where
//! only the vertices outside N[Y] still need domination.

use std::time::Instant;

use crate::error::Result;
use crate::graph::{subsets_of, Graph, VertexId, VertexSet};
use crate::interval::interval_dominating_with_optional;
use crate::mir::{Interval, Mir};

use super::subsets::require_matching_rep;
use super::{Problem, SolverReport, Witness};

/// Counts one guess per (Y, interval-choice) combination, Σ_Y Π_z |f(z)|.
pub fn solve_dominating_set(g: &Graph, rep: &Mir, target: Option<i64>) -> Result<SolverReport> {
    let start = Instant::now();
    require_matching_rep(g, rep, "solve_dominating_set")?;
    let x = rep.gap_vertices();
    let base: Vec<(VertexId, Interval)> = rep
        .iter()
        .filter(|(v, _)| !x.contains(*v))
        .map(|(v, ivs)| (v.clone(), ivs[0]))
        .collect();

    let mut explored = 0u64;
    let mut best: Option<VertexSet> = None;
    for y in subsets_of(&x) {
        let z: Vec<VertexId> = x.difference(&y).cloned().collect();
        let covered = g.closed_set_neighborhood(&y);
        let required: VertexSet = g
            .vertices()
            .filter(|v| !covered.contains(*v))
            .cloned()
            .collect();
        let mut choice: Vec<Interval> = z.iter().map(|zv| rep.intervals(zv)[0]).collect();
        choose_intervals(
            rep,
            &z,
            0,
            &mut choice,
            &mut |model_tail: &[(VertexId, Interval)]| {
                explored += 1;
                let mut model = base.clone();
                model.extend(model_tail.iter().cloned());
                let d = interval_dominating_with_optional(&model, &required, &VertexSet::new());
                let mut candidate = y.clone();
                candidate.extend(d);
                if best
                    .as_ref()
                    .map_or(true, |b| (candidate.len(), &candidate) < (b.len(), b))
                {
                    best = Some(candidate);
                }
            },
        );
    }
    let witness = best.expect("the full vertex set always dominates");
    debug_assert!(crate::oracles::checks::check_dominating_set(g, &witness));
    Ok(SolverReport::new(
        Problem::DominatingSet,
        witness.len() as i64,
        Witness::Vertices(witness),
        explored,
        start.elapsed(),
        target,
    ))
}

fn choose_intervals(
    rep: &Mir,
    z: &[VertexId],
    idx: usize,
    choice: &mut Vec<Interval>,
    leaf: &mut impl FnMut(&[(VertexId, Interval)]),
) {
    if idx == z.len() {
        let model_tail: Vec<(VertexId, Interval)> =
            z.iter().cloned().zip(choice.iter().copied()).collect();
        leaf(&model_tail);
        return;
    }
    for iv in rep.intervals(&z[idx]) {
        choice[idx] = *iv;
        choose_intervals(rep, z, idx + 1, choice, leaf);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::mir::build_graph_from_representation;

    #[test]
    fn p3_middle_dominates() {
        let rep = Mir::new(
            [
                (VertexId::from("1"), vec![Interval::new(1, 3)]),
                (VertexId::from("2"), vec![Interval::new(3, 5)]),
                (VertexId::from("3"), vec![Interval::new(5, 7)]),
            ]
            .into_iter()
            .collect(),
        )
        .unwrap();
        let g = build_graph_from_representation(&rep);
        let report = solve_dominating_set(&g, &rep, None).unwrap();
        assert_eq!(report.optimum, 1);
        assert_eq!(report.witness_vertices().unwrap().len(), 1);
    }

    #[test]
    fn c4_needs_two() {
        let (g, rep) = fixtures::c4_with_rep();
        let report = solve_dominating_set(&g, &rep, None).unwrap();
        assert_eq!(report.optimum, 2);
        // One split vertex: Y=∅ gives 2 interval choices, Y={b1} gives 1.
        assert_eq!(report.explored, 3);
    }

    #[test]
    fn star_center_dominates() {
        let mut map = std::collections::BTreeMap::new();
        map.insert(VertexId::from("center"), vec![Interval::new(0, 100)]);
        for i in 0..4 {
            map.insert(
                VertexId::from(format!("leaf{i}")),
                vec![Interval::new(10 * i, 10 * i + 5)],
            );
        }
        let rep = Mir::new(map).unwrap();
        let g = build_graph_from_representation(&rep);
        let report = solve_dominating_set(&g, &rep, None).unwrap();
        assert_eq!(report.optimum, 1);
    }

    #[test]
    fn mismatching_rep_is_rejected() {
        let (g, _) = fixtures::c4_with_rep();
        let wrong = Mir::new(
            [(VertexId::from("a0"), vec![Interval::new(0, 1)])]
                .into_iter()
                .collect(),
        )
        .unwrap();
        assert!(solve_dominating_set(&g, &wrong, None).is_err());
    }
}
