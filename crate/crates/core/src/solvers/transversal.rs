//! Piercing a multiple interval representation, and the bridge to the
//! AtMost-NValue consistency view of the same question.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use serde::Serialize;

use crate::error::Result;
use crate::graph::VertexId;
use crate::interval::interval_piercing;
use crate::mir::{Interval, Mir};

use super::{Problem, SolverReport, Witness};

/// Consistency instance: one variable per vertex, values are the interval
/// endpoints, a variable's domain is the endpoints its intervals cover.
#[derive(Clone, Debug, Serialize)]
pub struct NValueInstance {
    pub variables: Vec<VertexId>,
    /// Ordered value set D.
    pub values: Vec<i64>,
    pub domains: BTreeMap<VertexId, BTreeSet<i64>>,
    pub budget: usize,
}

impl NValueInstance {
    /// Total count of maximal domain gaps with respect to the value order.
    pub fn hole_count(&self) -> usize {
        let index: BTreeMap<i64, usize> =
            self.values.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        self.domains
            .values()
            .map(|dom| {
                let idx: Vec<usize> = dom.iter().map(|v| index[v]).collect();
                idx.windows(2).filter(|w| w[1] > w[0] + 1).count()
            })
            .sum()
    }

    /// Brute-force consistency: is there a hitting set of at most `budget`
    /// values meeting every domain? (An assignment with ≤ N distinct values
    /// is exactly such a hitting set.)
    pub fn consistent_brute(&self) -> bool {
        fn rec(
            domains: &[&BTreeSet<i64>],
            chosen: &mut Vec<i64>,
            budget: usize,
        ) -> bool {
            match domains
                .iter()
                .find(|d| !d.iter().any(|v| chosen.contains(v)))
            {
                None => true,
                Some(unhit) => {
                    if chosen.len() == budget {
                        return false;
                    }
                    for &v in unhit.iter() {
                        chosen.push(v);
                        if rec(domains, chosen, budget) {
                            return true;
                        }
                        chosen.pop();
                    }
                    false
                }
            }
        }
        let domains: Vec<&BTreeSet<i64>> = self.domains.values().collect();
        rec(&domains, &mut Vec::new(), self.budget)
    }
}

/// Builds the consistency instance for "`p` points pierce every vertex".
pub fn to_nvalue_instance(rep: &Mir, p: usize) -> NValueInstance {
    let values = rep.endpoints();
    let domains = rep
        .iter()
        .map(|(v, ivs)| {
            let dom: BTreeSet<i64> = values
                .iter()
                .copied()
                .filter(|&pt| ivs.iter().any(|iv| iv.contains_point(pt)))
                .collect();
            (v.clone(), dom)
        })
        .collect();
    NValueInstance {
        variables: rep.vertices().cloned().collect(),
        values,
        domains,
        budget: p,
    }
}

/// Minimum number of points such that every vertex owns an interval holding a
/// point. Branches over the interval choice of every split vertex (one guess
/// per complete choice) and solves each leaf greedily.
pub fn solve_transversal(rep: &Mir, target: Option<i64>) -> Result<SolverReport> {
    let start = Instant::now();
    let vertices: Vec<&VertexId> = rep.vertices().collect();
    let mut chosen: Vec<Interval> = vertices.iter().map(|v| rep.intervals(v)[0]).collect();
    let mut explored = 0u64;
    let mut best: Option<Vec<i64>> = None;
    branch(rep, &vertices, 0, &mut chosen, &mut explored, &mut best);
    let points = best.expect("piercing always exists");
    Ok(SolverReport::new(
        Problem::Transversal,
        points.len() as i64,
        Witness::Points(points),
        explored,
        start.elapsed(),
        target,
    ))
}

fn branch(
    rep: &Mir,
    vertices: &[&VertexId],
    idx: usize,
    chosen: &mut Vec<Interval>,
    explored: &mut u64,
    best: &mut Option<Vec<i64>>,
) {
    match vertices.get(idx) {
        None => {
            *explored += 1;
            let points = interval_piercing(chosen);
            if best.as_ref().map_or(true, |b| points.len() < b.len()) {
                *best = Some(points);
            }
        }
        Some(v) => {
            for iv in rep.intervals(v) {
                chosen[idx] = *iv;
                branch(rep, vertices, idx + 1, chosen, explored, best);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cliques::gen_fig1;
    use crate::fixtures;
    use crate::oracles::checks::check_transversal;

    #[test]
    fn c4_rep_needs_two_points() {
        let rep = fixtures::c4_rep();
        let report = solve_transversal(&rep, Some(2)).unwrap();
        assert_eq!(report.optimum, 2);
        assert_eq!(report.meets_target, Some(true));
        match &report.witness {
            Witness::Points(points) => assert!(check_transversal(&rep, points)),
            _ => panic!("expected points"),
        }
        // One split vertex with two intervals: two leaves explored.
        assert_eq!(report.explored, 2);
    }

    #[test]
    fn pairwise_intersecting_needs_one() {
        let rep = Mir::new(
            [
                (VertexId::from("a"), vec![Interval::new(1, 10)]),
                (VertexId::from("b"), vec![Interval::new(2, 9)]),
                (VertexId::from("c"), vec![Interval::new(3, 8)]),
            ]
            .into_iter()
            .collect(),
        )
        .unwrap();
        assert_eq!(solve_transversal(&rep, None).unwrap().optimum, 1);
    }

    #[test]
    fn fig1_two_gaps_costs_two() {
        let (_, rep) = gen_fig1(2);
        assert_eq!(solve_transversal(&rep, None).unwrap().optimum, 2);
    }

    #[test]
    fn nvalue_bridge_on_c4_rep() {
        let rep = fixtures::c4_rep();
        let inst = to_nvalue_instance(&rep, 2);
        assert_eq!(inst.values, vec![1, 2, 3, 4, 5, 6, 8]);
        let b1_dom = &inst.domains[&VertexId::from("b1")];
        assert_eq!(b1_dom.iter().copied().collect::<Vec<_>>(), vec![1, 2, 6, 8]);
        assert_eq!(inst.hole_count(), 1);
        assert!(inst.consistent_brute());
        assert!(!to_nvalue_instance(&rep, 1).consistent_brute());
    }

    #[test]
    fn single_point_vertex() {
        let rep = Mir::new(
            [(VertexId::from("v"), vec![Interval::new(0, 0)])]
                .into_iter()
                .collect(),
        )
        .unwrap();
        let inst = to_nvalue_instance(&rep, 1);
        assert_eq!(inst.values, vec![0]);
        assert_eq!(inst.budget, 1);
        assert_eq!(inst.hole_count(), 0);
        assert_eq!(solve_transversal(&rep, None).unwrap().optimum, 1);
    }

    #[test]
    fn gap_free_rep_has_no_holes() {
        let rep = crate::gen::random_interval_rep(8, 3);
        assert_eq!(to_nvalue_instance(&rep, 3).hole_count(), 0);
    }
}
