//! p-coloring with a deletion set, and the reduction that turns a precolored
//! interval graph into an equivalent instance whose only non-interval
//! structure is one merged vertex per color class.

use std::collections::BTreeMap;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSet};
use crate::interval::{clique_path_decomposition, make_nice, NiceStep};
use crate::solvers::solve_clique;

use super::{Problem, SolverReport, Witness};

/// Decides p-colorability. Win-win: a clique larger than p settles "no";
/// otherwise the bag width is at most p plus the deletion set and a dynamic
/// program over the nice path decomposition finishes the job. States are bag
/// colorings, canonical up to renaming the colors no deletion-set vertex
/// uses. Counts one guess per state created.
pub fn solve_p_coloring(g: &Graph, x: &VertexSet, p: u32) -> Result<SolverReport> {
    let start = Instant::now();
    if p < 1 {
        return Err(Error::Precondition("p-coloring requires p >= 1".into()));
    }
    let clique_report = solve_clique(g, x, None)?;
    let mut explored = clique_report.explored;
    if clique_report.optimum > p as i64 {
        return Ok(decision_report(false, Witness::None, explored, start, p));
    }

    let rest = g.remove_vertices(x);
    let nice = make_nice(&clique_path_decomposition(&rest)?);
    let steps = nice.steps.as_ref().unwrap();

    // Canonical proper colorings of the deletion set.
    let x_vec: Vec<VertexId> = x.iter().cloned().collect();
    let mut x_colorings: Vec<BTreeMap<VertexId, u32>> = Vec::new();
    enumerate_canonical_colorings(g, &x_vec, p, &mut BTreeMap::new(), &mut x_colorings);

    for x_coloring in &x_colorings {
        let x_used: std::collections::BTreeSet<u32> = x_coloring.values().copied().collect();
        if let Some(coloring) =
            dp_over_decomposition(g, steps, x_coloring, &x_used, p, &mut explored)
        {
            debug_assert!(crate::oracles::checks::check_coloring(g, &coloring, p));
            return Ok(decision_report(
                true,
                Witness::Coloring(coloring),
                explored,
                start,
                p,
            ));
        }
    }
    Ok(decision_report(false, Witness::None, explored, start, p))
}

fn decision_report(
    yes: bool,
    witness: Witness,
    explored: u64,
    start: Instant,
    p: u32,
) -> SolverReport {
    let mut report = SolverReport::new(
        Problem::Coloring,
        i64::from(yes),
        witness,
        explored,
        start.elapsed(),
        Some(p as i64),
    );
    report.meets_target = Some(yes);
    report
}

fn enumerate_canonical_colorings(
    g: &Graph,
    order: &[VertexId],
    p: u32,
    partial: &mut BTreeMap<VertexId, u32>,
    out: &mut Vec<BTreeMap<VertexId, u32>>,
) {
    if partial.len() == order.len() {
        out.push(partial.clone());
        return;
    }
    let v = &order[partial.len()];
    let max_used = partial.values().copied().max().unwrap_or(0);
    for c in 1..=p.min(max_used + 1) {
        if g.neighbors(v).iter().any(|u| partial.get(u) == Some(&c)) {
            continue;
        }
        partial.insert(v.clone(), c);
        enumerate_canonical_colorings(g, order, p, partial, out);
        partial.remove(v);
    }
}

struct DpState {
    bag_colors: BTreeMap<VertexId, u32>,
    parent: Option<(usize, Option<(VertexId, u32)>)>,
}

fn dp_over_decomposition(
    g: &Graph,
    steps: &[NiceStep],
    x_coloring: &BTreeMap<VertexId, u32>,
    x_used: &std::collections::BTreeSet<u32>,
    p: u32,
    explored: &mut u64,
) -> Option<BTreeMap<VertexId, u32>> {
    let mut arena: Vec<DpState> = vec![DpState {
        bag_colors: BTreeMap::new(),
        parent: None,
    }];
    let mut frontier: Vec<usize> = vec![0];
    for step in steps {
        let mut seen: BTreeMap<Vec<(VertexId, u32)>, ()> = BTreeMap::new();
        let mut next: Vec<usize> = Vec::new();
        for &idx in &frontier {
            match step {
                NiceStep::Introduce(v) => {
                    for c in 1..=p {
                        let conflict = g.neighbors(v).iter().any(|u| {
                            arena[idx].bag_colors.get(u) == Some(&c)
                                || x_coloring.get(u) == Some(&c)
                        });
                        if conflict {
                            continue;
                        }
                        let mut colors = arena[idx].bag_colors.clone();
                        colors.insert(v.clone(), c);
                        push_state(
                            &mut arena,
                            &mut seen,
                            &mut next,
                            colors,
                            (idx, Some((v.clone(), c))),
                            x_used,
                            explored,
                        );
                    }
                }
                NiceStep::Forget(v) => {
                    let mut colors = arena[idx].bag_colors.clone();
                    colors.remove(v);
                    push_state(
                        &mut arena,
                        &mut seen,
                        &mut next,
                        colors,
                        (idx, None),
                        x_used,
                        explored,
                    );
                }
            }
        }
        if next.is_empty() {
            return None;
        }
        frontier = next;
    }
    // Any surviving state extends; walk its ancestry for the witness.
    let mut coloring = x_coloring.clone();
    let mut cursor = Some(frontier[0]);
    while let Some(idx) = cursor {
        if let Some((parent, assigned)) = &arena[idx].parent {
            if let Some((v, c)) = assigned {
                coloring.insert(v.clone(), *c);
            }
            cursor = Some(*parent);
        } else {
            cursor = None;
        }
    }
    Some(coloring)
}

#[allow(clippy::too_many_arguments)]
fn push_state(
    arena: &mut Vec<DpState>,
    seen: &mut BTreeMap<Vec<(VertexId, u32)>, ()>,
    next: &mut Vec<usize>,
    colors: BTreeMap<VertexId, u32>,
    parent: (usize, Option<(VertexId, u32)>),
    x_used: &std::collections::BTreeSet<u32>,
    explored: &mut u64,
) {
    let key = canonical_key(&colors, x_used);
    if seen.insert(key, ()).is_none() {
        *explored += 1;
        arena.push(DpState {
            bag_colors: colors,
            parent: Some(parent),
        });
        next.push(arena.len() - 1);
    }
}

/// Colors used by the deletion set are pinned; the rest are renamed by first
/// occurrence over the sorted bag.
fn canonical_key(
    colors: &BTreeMap<VertexId, u32>,
    x_used: &std::collections::BTreeSet<u32>,
) -> Vec<(VertexId, u32)> {
    let mut rename: BTreeMap<u32, u32> = BTreeMap::new();
    let mut fresh = 1_000_000u32;
    let mut key = Vec::with_capacity(colors.len());
    for (v, &c) in colors {
        let mapped = if x_used.contains(&c) {
            c
        } else {
            *rename.entry(c).or_insert_with(|| {
                fresh += 1;
                fresh
            })
        };
        key.push((v.clone(), mapped));
    }
    key
}

/// Builds, from an interval graph with a precoloring on U, a graph whose
/// p-colorings correspond exactly to extensions of the precoloring: add a
/// p-clique of fresh color vertices and merge each color class into its color
/// vertex. The result needs at most |U| extra intervals.
pub fn coloring_hardness_gadget(
    g: &Graph,
    precoloring: &BTreeMap<VertexId, u32>,
    p: u32,
) -> Result<(Graph, Vec<(VertexId, VertexId)>, usize)> {
    if !crate::interval::is_interval(g) {
        return Err(Error::Precondition(
            "coloring_hardness_gadget: input graph must be interval".into(),
        ));
    }
    for (v, &c) in precoloring {
        if !g.has_vertex(v) {
            return Err(Error::UnknownVertex(v.to_string()));
        }
        if c < 1 || c > p {
            return Err(Error::Precondition(format!(
                "precolor {c} of vertex {v} is outside 1..={p}"
            )));
        }
    }
    let mut h = g.clone();
    let color_vertex: Vec<VertexId> = (1..=p)
        .map(|i| {
            let mut name = format!("color{i}");
            while h.has_vertex(&VertexId::from(name.as_str())) {
                name.push('_');
            }
            VertexId::from(name)
        })
        .collect();
    for v in &color_vertex {
        h.add_vertex(v.clone());
    }
    for i in 0..color_vertex.len() {
        for j in i + 1..color_vertex.len() {
            h.add_edge(&color_vertex[i], &color_vertex[j])?;
        }
    }
    let mut log: Vec<(VertexId, VertexId)> = Vec::new();
    for (u, &c) in precoloring {
        let keep = &color_vertex[(c - 1) as usize];
        h = h.identify(keep, u)?;
        log.push((keep.clone(), u.clone()));
    }
    Ok((h, log, precoloring.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cliques::gen_fig1;
    use crate::fixtures;
    use crate::oracles::exact::p_coloring_with_precoloring;
    use crate::oracles::OracleGuard;

    #[test]
    fn c4_is_two_colorable() {
        let (g, rep) = fixtures::c4_with_rep();
        let report = solve_p_coloring(&g, &rep.gap_vertices(), 2).unwrap();
        assert_eq!(report.meets_target, Some(true));
        match report.witness {
            Witness::Coloring(c) => {
                assert!(crate::oracles::checks::check_coloring(&g, &c, 2))
            }
            _ => panic!("expected a coloring"),
        }
    }

    #[test]
    fn k3_is_not_two_colorable() {
        let g = fixtures::k3();
        let x: VertexSet = ["1".into()].into_iter().collect();
        let report = solve_p_coloring(&g, &x, 2).unwrap();
        assert_eq!(report.meets_target, Some(false));
    }

    #[test]
    fn fig1_needs_three_colors() {
        let (g, rep) = gen_fig1(2);
        let x = rep.gap_vertices();
        assert_eq!(
            solve_p_coloring(&g, &x, 2).unwrap().meets_target,
            Some(false)
        );
        assert_eq!(
            solve_p_coloring(&g, &x, 3).unwrap().meets_target,
            Some(true)
        );
    }

    #[test]
    fn invalid_p_is_an_error() {
        let g = fixtures::k3();
        assert!(solve_p_coloring(&g, &VertexSet::new(), 0).is_err());
    }

    #[test]
    fn gadget_on_p3_disjoint_precolored_pair() {
        let g = fixtures::p3();
        let pre: BTreeMap<VertexId, u32> = [("1".into(), 1), ("3".into(), 1)].into_iter().collect();
        let (h, log, k) = coloring_hardness_gadget(&g, &pre, 2).unwrap();
        assert_eq!(k, 2);
        assert_eq!(log.len(), 2);
        // Both sides of the equivalence, by oracle.
        let guard = OracleGuard::default();
        let h_colorable = p_coloring_with_precoloring(&h, &BTreeMap::new(), 2, &guard)
            .unwrap()
            .is_some();
        let extends = p_coloring_with_precoloring(&g, &pre, 2, &guard)
            .unwrap()
            .is_some();
        assert!(h_colorable);
        assert_eq!(h_colorable, extends);
    }

    #[test]
    fn gadget_equivalence_requires_proper_precolorings() {
        // Two adjacent vertices forced onto one color: the extension side is
        // trivially "no", but identifying them suppresses their edge, so the
        // merged graph stays colorable. The equivalence only covers proper
        // precolorings; improper inputs are trivial no-instances upstream.
        let g = fixtures::p3();
        let pre: BTreeMap<VertexId, u32> = [("1".into(), 1), ("2".into(), 1)].into_iter().collect();
        let (h, _, _) = coloring_hardness_gadget(&g, &pre, 2).unwrap();
        let guard = OracleGuard::default();
        let h_colorable = p_coloring_with_precoloring(&h, &BTreeMap::new(), 2, &guard)
            .unwrap()
            .is_some();
        let extends = p_coloring_with_precoloring(&g, &pre, 2, &guard)
            .unwrap()
            .is_some();
        assert!(!extends);
        assert!(h_colorable);
    }

    #[test]
    fn empty_precoloring_is_disjoint_union_with_clique() {
        let g = fixtures::p3();
        let (h, log, k) = coloring_hardness_gadget(&g, &BTreeMap::new(), 3).unwrap();
        assert!(log.is_empty());
        assert_eq!(k, 0);
        assert_eq!(h.vertex_count(), 6);
    }
}
