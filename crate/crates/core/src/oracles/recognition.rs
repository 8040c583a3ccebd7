//! Brute-force recognition: exhaust interval-count assignments and endpoint
//! orders. An endpoint order is explored as a sequence of open/close events
//! with hard feasibility pruning (opening next to a non-neighbor, or closing a
//! vertex for good with unrealized adjacencies, kills the branch).

use crate::error::Result;
use crate::graph::{Graph, VertexId};
use crate::interval::is_interval;

use super::OracleGuard;

/// Exhaustive interval-graph test (single interval per vertex).
pub fn is_interval_graph_brute(g: &Graph, guard: &OracleGuard) -> Result<bool> {
    guard.check_permutation_base(g.vertex_count())?;
    let (_, adj) = index_graph(g);
    let counts = vec![1usize; adj.len()];
    Ok(realizable(&adj, &counts))
}

/// Does `g` admit a multiple interval representation with at most `k` gaps?
/// Exhausts every distribution of the surplus intervals, then every endpoint
/// order.
pub fn recognize_k_gap_brute(g: &Graph, k: usize, guard: &OracleGuard) -> Result<bool> {
    let n = g.vertex_count();
    guard.check_permutation_base(n + k)?;
    if n == 0 {
        return Ok(true);
    }
    let (_, adj) = index_graph(g);
    for gaps in 0..=k {
        let mut extra = vec![0usize; n];
        if distribute(&adj, &mut extra, 0, gaps) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Alternative route: splitting vertices. `g` has a representation with at
/// most `k` gaps iff at most `k` vertex splits reach an interval graph.
/// Used to cross-check the event search.
pub fn recognize_k_gap_via_splits(g: &Graph, k: usize, guard: &OracleGuard) -> Result<bool> {
    guard.check_permutation_base(g.vertex_count() + k)?;
    let mut level: Vec<Graph> = vec![g.clone()];
    let mut seen = std::collections::HashSet::new();
    seen.insert(graph_key(g));
    for depth in 0..=k {
        for h in &level {
            if is_interval(h) {
                return Ok(true);
            }
        }
        if depth == k {
            break;
        }
        let mut next = Vec::new();
        for h in &level {
            for s in splits(h, depth) {
                if seen.insert(graph_key(&s)) {
                    next.push(s);
                }
            }
        }
        level = next;
    }
    Ok(false)
}

fn graph_key(g: &Graph) -> String {
    use std::fmt::Write;
    let mut key = String::new();
    for v in g.vertices() {
        write!(key, "{v};").unwrap();
    }
    key.push('|');
    for (a, b) in g.edges() {
        write!(key, "{a},{b};").unwrap();
    }
    key
}

/// All graphs obtained by splitting one vertex `v` into `v` and a fresh
/// vertex: each neighbor of `v` keeps `v`, moves, or connects to both, and
/// the two copies may or may not be adjacent.
fn splits(g: &Graph, depth: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for v in g.vertex_set() {
        let fresh = VertexId::new(format!("__split{depth}_{v}"));
        let neighbors: Vec<VertexId> = g.neighbors(&v).iter().cloned().collect();
        let combos = 3usize.pow(neighbors.len() as u32);
        for combo in 0..combos {
            for copies_adjacent in [false, true] {
                let mut h = g.clone();
                h.add_vertex(fresh.clone());
                let mut c = combo;
                for u in &neighbors {
                    let choice = c % 3;
                    c /= 3;
                    match choice {
                        0 => {} // u stays with v
                        1 => {
                            // u moves to the fresh copy
                            h = remove_edge(&h, &v, u);
                            h.add_edge(&fresh, u).unwrap();
                        }
                        _ => {
                            h.add_edge(&fresh, u).unwrap();
                        }
                    }
                }
                if copies_adjacent {
                    h.add_edge(&v, &fresh).unwrap();
                }
                out.push(h);
            }
        }
    }
    out
}

fn remove_edge(g: &Graph, a: &VertexId, b: &VertexId) -> Graph {
    let mut h = Graph::new();
    for v in g.vertices() {
        h.add_vertex(v.clone());
    }
    for (x, y) in g.edges() {
        if !((&x == a && &y == b) || (&x == b && &y == a)) {
            h.add_edge(&x, &y).unwrap();
        }
    }
    h
}

fn index_graph(g: &Graph) -> (Vec<VertexId>, Vec<u16>) {
    let vs: Vec<VertexId> = g.vertex_set().into_iter().collect();
    let adj = vs
        .iter()
        .map(|v| {
            let mut m = 0u16;
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

/// Recurses over distributions of `left` surplus intervals onto vertices
/// `from..`; tests realizability for each complete distribution.
fn distribute(adj: &[u16], extra: &mut Vec<usize>, from: usize, left: usize) -> bool {
    if left == 0 {
        let counts: Vec<usize> = extra.iter().map(|e| e + 1).collect();
        return realizable(adj, &counts);
    }
    if from == extra.len() {
        return false;
    }
    for take in (0..=left).rev() {
        extra[from] = take;
        if distribute(adj, extra, from + 1, left - take) {
            extra[from] = 0;
            return true;
        }
    }
    extra[from] = 0;
    false
}

/// Event-sequence search: place open/close events left to right.
fn realizable(adj: &[u16], counts: &[usize]) -> bool {
    let mut remaining = counts.to_vec();
    let mut realized = vec![0u16; adj.len()];
    search(adj, &mut remaining, 0, &mut realized)
}

fn search(adj: &[u16], remaining: &mut Vec<usize>, active: u16, realized: &mut Vec<u16>) -> bool {
    if active == 0 && remaining.iter().all(|&r| r == 0) {
        return (0..adj.len()).all(|i| realized[i] & adj[i] == adj[i]);
    }
    // Open any vertex with intervals left, provided all active vertices are
    // neighbors (anything else would realize a non-edge).
    for i in 0..adj.len() {
        if remaining[i] == 0 || active & (1 << i) != 0 {
            continue;
        }
        if active & !adj[i] != 0 {
            continue;
        }
        remaining[i] -= 1;
        let saved: Vec<u16> = (0..adj.len())
            .filter(|&j| active & (1 << j) != 0)
            .map(|j| realized[j])
            .collect();
        let saved_i = realized[i];
        realized[i] |= active;
        for j in 0..adj.len() {
            if active & (1 << j) != 0 {
                realized[j] |= 1 << i;
            }
        }
        if search(adj, remaining, active | (1 << i), realized) {
            return true;
        }
        realized[i] = saved_i;
        for (s, j) in (0..adj.len()).filter(|&j| active & (1 << j) != 0).enumerate() {
            realized[j] = saved[s];
        }
        remaining[i] += 1;
    }
    // Close any active vertex; closing for good with unrealized adjacencies is
    // a dead end.
    for i in 0..adj.len() {
        if active & (1 << i) == 0 {
            continue;
        }
        if remaining[i] == 0 && realized[i] & adj[i] != adj[i] {
            continue;
        }
        if search(adj, remaining, active & !(1 << i), realized) {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::gen;

    fn guard() -> OracleGuard {
        OracleGuard::default()
    }

    #[test]
    fn interval_basics() {
        assert!(is_interval_graph_brute(&fixtures::p3(), &guard()).unwrap());
        assert!(is_interval_graph_brute(&fixtures::k3(), &guard()).unwrap());
        assert!(!is_interval_graph_brute(&fixtures::c4(), &guard()).unwrap());
        assert!(!is_interval_graph_brute(&fixtures::c5(), &guard()).unwrap());
    }

    #[test]
    fn c4_needs_exactly_one_gap() {
        assert!(!recognize_k_gap_brute(&fixtures::c4(), 0, &guard()).unwrap());
        assert!(recognize_k_gap_brute(&fixtures::c4(), 1, &guard()).unwrap());
    }

    #[test]
    fn fig1_gap_requirements() {
        let (g, _) = crate::cliques::gen_fig1(2);
        assert!(!recognize_k_gap_brute(&g, 1, &guard()).unwrap());
        assert!(recognize_k_gap_brute(&g, 2, &guard()).unwrap());
    }

    #[test]
    fn brute_agrees_with_production_interval_recognition() {
        for (i, g) in gen::small_graphs_up_to_iso(5).iter().enumerate() {
            assert_eq!(
                is_interval_graph_brute(g, &guard()).unwrap(),
                is_interval(g),
                "graph #{i}: {g:?}"
            );
        }
    }

    #[test]
    fn event_route_and_split_route_agree() {
        for seed in 0..12 {
            let (g, _) = gen::random_interval_graph(5, seed);
            let g = if seed % 2 == 0 {
                g
            } else {
                gen::identify_instance(5, 1, seed).unwrap()
            };
            for k in 0..=2 {
                assert_eq!(
                    recognize_k_gap_brute(&g, k, &guard()).unwrap(),
                    recognize_k_gap_via_splits(&g, k, &guard()).unwrap(),
                    "seed {seed} k {k} g {g:?}"
                );
            }
        }
    }
}
