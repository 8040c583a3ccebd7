//! Plain exhaustive optimizers over vertex subsets, set partitions, canonical
//! colorings and endpoint subsets.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::graph::{Graph, VertexId, VertexSet};
use crate::mir::Mir;

use super::OracleGuard;

fn indexed(g: &Graph) -> (Vec<VertexId>, Vec<u32>) {
    let vs: Vec<VertexId> = g.vertex_set().into_iter().collect();
    let adj: Vec<u32> = vs
        .iter()
        .map(|v| {
            let mut m = 0u32;
            for (j, u) in vs.iter().enumerate() {
                if g.has_edge(v, u) {
                    m |= 1 << j;
                }
            }
            m
        })
        .collect();
    (vs, adj)
}

fn mask_to_set(vs: &[VertexId], mask: u32) -> VertexSet {
    vs.iter()
        .enumerate()
        .filter(|(i, _)| mask & (1 << i) != 0)
        .map(|(_, v)| v.clone())
        .collect()
}

fn is_independent_mask(adj: &[u32], mask: u32) -> bool {
    (0..adj.len()).all(|i| mask & (1 << i) == 0 || adj[i] & mask == 0)
}

fn is_clique_mask(adj: &[u32], mask: u32) -> bool {
    (0..adj.len()).all(|i| mask & (1 << i) == 0 || (mask & !(1 << i)) & !adj[i] == 0)
}

pub fn max_independent_set(g: &Graph, guard: &OracleGuard) -> Result<(usize, VertexSet)> {
    guard.check_vertices(g.vertex_count())?;
    let (vs, adj) = indexed(g);
    let mut best = (0usize, 0u32);
    for mask in 0u32..(1 << vs.len()) {
        let size = mask.count_ones() as usize;
        if size > best.0 && is_independent_mask(&adj, mask) {
            best = (size, mask);
        }
    }
    Ok((best.0, mask_to_set(&vs, best.1)))
}

pub fn max_clique(g: &Graph, guard: &OracleGuard) -> Result<(usize, VertexSet)> {
    guard.check_vertices(g.vertex_count())?;
    let (vs, adj) = indexed(g);
    let mut best = (0usize, 0u32);
    for mask in 0u32..(1 << vs.len()) {
        let size = mask.count_ones() as usize;
        if size > best.0 && is_clique_mask(&adj, mask) {
            best = (size, mask);
        }
    }
    Ok((best.0, mask_to_set(&vs, best.1)))
}

pub fn min_dominating_set(g: &Graph, guard: &OracleGuard) -> Result<(usize, VertexSet)> {
    guard.check_vertices(g.vertex_count())?;
    let (vs, adj) = indexed(g);
    let n = vs.len();
    let closed: Vec<u32> = (0..n).map(|i| adj[i] | (1 << i)).collect();
    let everyone = (1u32 << n) - 1;
    let mut best = (n + 1, 0u32);
    for mask in 0u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size >= best.0 {
            continue;
        }
        let covered = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .fold(0u32, |acc, i| acc | closed[i]);
        if covered == everyone {
            best = (size, mask);
        }
    }
    Ok((best.0.min(n), mask_to_set(&vs, best.1)))
}

pub fn min_feedback_vertex_set(g: &Graph, guard: &OracleGuard) -> Result<(usize, VertexSet)> {
    guard.check_vertices(g.vertex_count())?;
    let vs: Vec<VertexId> = g.vertex_set().into_iter().collect();
    let mut best: Option<(usize, VertexSet)> = None;
    for mask in 0u32..(1 << vs.len()) {
        let size = mask.count_ones() as usize;
        if best.as_ref().is_some_and(|(b, _)| size >= *b) {
            continue;
        }
        let drop = mask_to_set(&vs, mask);
        if g.remove_vertices(&drop).is_acyclic() {
            best = Some((size, drop));
        }
    }
    Ok(best.expect("deleting everything is always acyclic"))
}

/// Minimum clique cover by canonical backtracking: each vertex joins an
/// existing class that stays a clique, or opens a new class.
pub fn min_clique_cover(g: &Graph, guard: &OracleGuard) -> Result<(usize, Vec<VertexSet>)> {
    guard.check_vertices(g.vertex_count())?;
    let (vs, adj) = indexed(g);
    let mut best: Option<Vec<u32>> = None;
    let mut classes: Vec<u32> = Vec::new();
    fn rec(
        i: usize,
        adj: &[u32],
        classes: &mut Vec<u32>,
        best: &mut Option<Vec<u32>>,
    ) {
        if best.as_ref().is_some_and(|b| classes.len() >= b.len()) && i < adj.len() {
            return;
        }
        if i == adj.len() {
            if best.as_ref().is_none_or(|b| classes.len() < b.len()) {
                *best = Some(classes.clone());
            }
            return;
        }
        for c in 0..classes.len() {
            // The vertex must see every member of the class.
            if classes[c] & !adj[i] == 0 {
                classes[c] |= 1 << i;
                rec(i + 1, adj, classes, best);
                classes[c] &= !(1 << i);
            }
        }
        classes.push(1 << i);
        rec(i + 1, adj, classes, best);
        classes.pop();
    }
    rec(0, &adj, &mut classes, &mut best);
    let best = best.expect("singleton classes always cover");
    Ok((best.len(), best.into_iter().map(|m| mask_to_set(&vs, m)).collect()))
}

/// Canonical proper-coloring backtracking honoring a precoloring; colors run
/// 1..=p. Returns a full coloring if one exists.
pub fn p_coloring_with_precoloring(
    g: &Graph,
    precoloring: &BTreeMap<VertexId, u32>,
    p: u32,
    guard: &OracleGuard,
) -> Result<Option<BTreeMap<VertexId, u32>>> {
    guard.check_vertices(g.vertex_count())?;
    let (vs, adj) = indexed(g);
    let pre: Vec<Option<u32>> = vs.iter().map(|v| precoloring.get(v).copied()).collect();
    if pre.iter().flatten().any(|&c| c == 0 || c > p) {
        return Ok(None);
    }
    let mut colors: Vec<u32> = vec![0; vs.len()];
    fn rec(
        i: usize,
        p: u32,
        adj: &[u32],
        pre: &[Option<u32>],
        colors: &mut Vec<u32>,
        has_precoloring: bool,
    ) -> bool {
        if i == adj.len() {
            return true;
        }
        let conflict = |colors: &[u32], c: u32| {
            (0..i).any(|j| adj[i] & (1 << j) != 0 && colors[j] == c)
        };
        match pre[i] {
            Some(c) => {
                if conflict(colors, c) {
                    return false;
                }
                colors[i] = c;
                if rec(i + 1, p, adj, pre, colors, has_precoloring) {
                    return true;
                }
            }
            None => {
                // Without precolored vertices, restrict to canonical colorings
                // (a fresh color must be the smallest unused one).
                let cap = if has_precoloring {
                    p
                } else {
                    p.min(colors[..i].iter().copied().max().unwrap_or(0) + 1)
                };
                for c in 1..=cap {
                    if conflict(colors, c) {
                        continue;
                    }
                    colors[i] = c;
                    if rec(i + 1, p, adj, pre, colors, has_precoloring) {
                        return true;
                    }
                }
            }
        }
        colors[i] = 0;
        false
    }
    let has_pre = !precoloring.is_empty();
    if rec(0, p, &adj, &pre, &mut colors, has_pre) {
        Ok(Some(
            vs.into_iter().zip(colors).collect::<BTreeMap<_, _>>(),
        ))
    } else {
        Ok(None)
    }
}

pub fn chromatic_number(g: &Graph, guard: &OracleGuard) -> Result<(usize, BTreeMap<VertexId, u32>)> {
    guard.check_vertices(g.vertex_count())?;
    if g.vertex_count() == 0 {
        return Ok((0, BTreeMap::new()));
    }
    for p in 1..=g.vertex_count() as u32 {
        if let Some(coloring) = p_coloring_with_precoloring(g, &BTreeMap::new(), p, guard)? {
            return Ok((p as usize, coloring));
        }
    }
    unreachable!("n colors always suffice")
}

/// Minimum piercing of a representation: branch on an unpierced vertex, over
/// the left endpoints that stab one of its intervals. A left-shift argument
/// confines optima to left endpoints.
pub fn min_transversal(rep: &Mir, guard: &OracleGuard) -> Result<(usize, Vec<i64>)> {
    guard.check_intervals(rep.interval_count())?;
    let vertices: Vec<&VertexId> = rep.vertices().collect();
    let lefts: Vec<i64> = {
        let mut ls: Vec<i64> = rep.iter().flat_map(|(_, ivs)| ivs.iter().map(|iv| iv.left)).collect();
        ls.sort();
        ls.dedup();
        ls
    };
    let pierced = |points: &[i64], v: &VertexId| {
        rep.intervals(v)
            .iter()
            .any(|iv| points.iter().any(|&p| iv.contains_point(p)))
    };
    fn rec(
        rep: &Mir,
        vertices: &[&VertexId],
        lefts: &[i64],
        points: &mut Vec<i64>,
        best: &mut Option<Vec<i64>>,
        pierced: &impl Fn(&[i64], &VertexId) -> bool,
    ) {
        if best.as_ref().is_some_and(|b| points.len() >= b.len()) {
            return;
        }
        match vertices.iter().find(|v| !pierced(points, v)) {
            None => *best = Some(points.clone()),
            Some(v) => {
                for &p in lefts {
                    if rep.intervals(v).iter().any(|iv| iv.contains_point(p)) {
                        points.push(p);
                        rec(rep, vertices, lefts, points, best, pierced);
                        points.pop();
                    }
                }
            }
        }
    }
    let mut best = None;
    rec(rep, &vertices, &lefts, &mut Vec::new(), &mut best, &pierced);
    let mut best = best.expect("piercing every left endpoint is feasible");
    best.sort();
    best.dedup();
    Ok((best.len(), best))
}

/// Naive Bron–Kerbosch, no pivoting; results sorted.
pub fn maximal_cliques(g: &Graph, guard: &OracleGuard) -> Result<Vec<VertexSet>> {
    guard.check_vertices(g.vertex_count())?;
    let (vs, adj) = indexed(g);
    let n = vs.len();
    let mut out: Vec<u32> = Vec::new();
    fn bk(r: u32, p: u32, x: u32, adj: &[u32], n: usize, out: &mut Vec<u32>) {
        if p == 0 && x == 0 {
            if r != 0 {
                out.push(r);
            }
            return;
        }
        let mut p_iter = p;
        let mut p_live = p;
        let mut x_live = x;
        while p_iter != 0 {
            let i = p_iter.trailing_zeros() as usize;
            p_iter &= !(1 << i);
            bk(r | (1 << i), p_live & adj[i], x_live & adj[i], adj, n, out);
            p_live &= !(1 << i);
            x_live |= 1 << i;
        }
    }
    bk(0, if n == 0 { 0 } else { (1u32 << n) - 1 }, 0, &adj, n, &mut out);
    let mut cliques: Vec<VertexSet> = out.into_iter().map(|m| mask_to_set(&vs, m)).collect();
    cliques.sort();
    Ok(cliques)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn guard() -> OracleGuard {
        OracleGuard::default()
    }

    #[test]
    fn c4_basics() {
        let g = fixtures::c4();
        assert_eq!(max_independent_set(&g, &guard()).unwrap().0, 2);
        assert_eq!(max_clique(&g, &guard()).unwrap().0, 2);
        assert_eq!(min_dominating_set(&g, &guard()).unwrap().0, 2);
        assert_eq!(min_feedback_vertex_set(&g, &guard()).unwrap().0, 1);
        assert_eq!(min_clique_cover(&g, &guard()).unwrap().0, 2);
        assert_eq!(chromatic_number(&g, &guard()).unwrap().0, 2);
    }

    #[test]
    fn k3_chromatic() {
        assert_eq!(chromatic_number(&fixtures::k3(), &guard()).unwrap().0, 3);
    }

    #[test]
    fn transversal_of_c4_rep() {
        let rep = fixtures::c4_rep();
        let (size, points) = min_transversal(&rep, &guard()).unwrap();
        assert_eq!(size, 2);
        assert!(checks_cover(&rep, &points));
    }

    fn checks_cover(rep: &Mir, points: &[i64]) -> bool {
        rep.iter().all(|(_, ivs)| {
            ivs.iter()
                .any(|iv| points.iter().any(|&p| iv.contains_point(p)))
        })
    }

    #[test]
    fn bron_kerbosch_matches_structured_enumeration() {
        let (g, rep) = crate::cliques::gen_fig1(2);
        let via_bk = maximal_cliques(&g, &guard()).unwrap();
        let via_structure =
            crate::cliques::enumerate_maximal_cliques(&g, &rep.gap_vertices()).unwrap();
        let mut sorted = via_structure.cliques.clone();
        sorted.sort();
        assert_eq!(via_bk, sorted);
        assert_eq!(via_bk.len(), 8);
    }

    #[test]
    fn guard_violation_reported() {
        let g = crate::gen::random_interval_graph(13, 0).0;
        assert!(max_clique(&g, &guard()).is_err());
    }

    #[test]
    fn precoloring_extension() {
        let g = fixtures::p3();
        // 1 and 3 share a color: extension exists with 2 colors.
        let pre: BTreeMap<VertexId, u32> =
            [("1".into(), 1), ("3".into(), 1)].into_iter().collect();
        assert!(p_coloring_with_precoloring(&g, &pre, 2, &guard())
            .unwrap()
            .is_some());
        // 1 and 2 adjacent with the same color: impossible.
        let pre: BTreeMap<VertexId, u32> =
            [("1".into(), 1), ("2".into(), 1)].into_iter().collect();
        assert!(p_coloring_with_precoloring(&g, &pre, 2, &guard())
            .unwrap()
            .is_none());
    }
}
