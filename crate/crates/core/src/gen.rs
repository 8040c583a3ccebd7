//! Seeded instance generators. Every function is deterministic in its seed;
//! the test suites and the CLI `generate` subcommand share these.

use std::collections::BTreeMap;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSet};
use crate::mir::{build_graph_from_representation, Interval, Mir};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn vertex_name(i: usize) -> VertexId {
    VertexId::new(format!("v{i:02}"))
}

fn random_interval(rng: &mut ChaCha8Rng, span: i64) -> Interval {
    let a = rng.gen_range(1..=span);
    let b = rng.gen_range(1..=span);
    Interval::new(a.min(b), a.max(b))
}

/// Random single-interval representation: n intervals in [1, 4n].
pub fn random_interval_rep(n: usize, seed: u64) -> Mir {
    let mut r = rng(seed);
    let span = 4 * n.max(1) as i64;
    let assignment: BTreeMap<VertexId, Vec<Interval>> = (0..n)
        .map(|i| (vertex_name(i), vec![random_interval(&mut r, span)]))
        .collect();
    Mir::new(assignment).expect("generated intervals are well-formed")
}

pub fn random_interval_graph(n: usize, seed: u64) -> (Graph, Mir) {
    let rep = random_interval_rep(n, seed);
    (build_graph_from_representation(&rep), rep)
}

/// Interval graph on n−k vertices plus k unrestricted vertices (the deletion
/// set) with coin-flip adjacency.
pub fn random_interval_plus_kv(n: usize, k: usize, seed: u64) -> (Graph, VertexSet) {
    assert!(k <= n);
    let mut r = rng(seed);
    let (mut g, _) = random_interval_graph(n - k, seed.wrapping_add(1));
    let mut x = VertexSet::new();
    for i in 0..k {
        let v = VertexId::new(format!("x{i:02}"));
        g.add_vertex(v.clone());
        x.insert(v);
    }
    let all: Vec<VertexId> = g.vertex_set().into_iter().collect();
    for xv in &x {
        for other in &all {
            if other != xv && (!x.contains(other) || other < xv) && r.gen_bool(0.5) {
                g.add_edge(xv, other).unwrap();
            }
        }
    }
    (g, x)
}

/// Random representation with exactly `gaps` surplus intervals. Retries until
/// interval merging does not eat any of the surplus.
pub fn random_kgap_rep(n: usize, gaps: usize, seed: u64) -> Mir {
    assert!(n >= 1);
    let mut r = rng(seed);
    let span = 4 * (n + gaps) as i64;
    loop {
        let mut extra = vec![0usize; n];
        for _ in 0..gaps {
            extra[r.gen_range(0..n)] += 1;
        }
        let assignment: BTreeMap<VertexId, Vec<Interval>> = (0..n)
            .map(|i| {
                let count = 1 + extra[i];
                let ivs = (0..count).map(|_| random_interval(&mut r, span)).collect();
                (vertex_name(i), ivs)
            })
            .collect();
        let rep = Mir::new(assignment).expect("generated intervals are well-formed");
        if rep.gap_count() == gaps {
            return rep;
        }
    }
}

/// Merges every gap that no foreign endpoint lies strictly inside; such a gap
/// cannot affect any intersection, so the derived graph is unchanged and the
/// remaining gaps are all essential.
pub fn merge_redundant_gaps(rep: &Mir) -> Mir {
    let mut current = rep.clone();
    loop {
        let endpoints = current.endpoints();
        let mut changed = false;
        let mut assignment: BTreeMap<VertexId, Vec<Interval>> = BTreeMap::new();
        for (v, ivs) in current.iter() {
            let mut merged: Vec<Interval> = vec![ivs[0]];
            for iv in &ivs[1..] {
                let last = merged.last_mut().unwrap();
                let blocked = endpoints
                    .iter()
                    .any(|&p| last.right < p && p < iv.left);
                if blocked {
                    merged.push(*iv);
                } else {
                    last.right = iv.right;
                    changed = true;
                }
            }
            assignment.insert(v.clone(), merged);
        }
        current = Mir::new(assignment).expect("merge keeps intervals well-formed");
        if !changed {
            return current;
        }
    }
}

/// Applies `j` identifications of pairwise disjoint, non-adjacent vertex pairs
/// to a random interval graph. Errors out when no admissible pair remains
/// after bounded retries.
pub fn identify_instance(n: usize, j: usize, seed: u64) -> Result<Graph> {
    let mut r = rng(seed);
    'attempt: for _ in 0..100 {
        let (mut g, _) = random_interval_graph(n, r.gen());
        let mut used = VertexSet::new();
        for _ in 0..j {
            let candidates: Vec<(VertexId, VertexId)> = {
                let vs: Vec<&VertexId> = g
                    .vertices()
                    .filter(|v| !used.contains(*v))
                    .collect();
                let mut out = Vec::new();
                for i in 0..vs.len() {
                    for l in i + 1..vs.len() {
                        if !g.has_edge(vs[i], vs[l]) {
                            out.push((vs[i].clone(), vs[l].clone()));
                        }
                    }
                }
                out
            };
            if candidates.is_empty() {
                continue 'attempt;
            }
            let (a, b) = candidates[r.gen_range(0..candidates.len())].clone();
            g = g.identify(&a, &b)?;
            used.insert(a);
        }
        return Ok(g);
    }
    Err(Error::Precondition(format!(
        "no instance with {j} disjoint non-adjacent identifications on {n} vertices"
    )))
}

/// All graphs on exactly `n ≤ 6` labeled vertices, one representative per
/// isomorphism class, vertices named v00..v0{n-1}.
pub fn small_graphs_up_to_iso(n: usize) -> Vec<Graph> {
    assert!(n <= 6, "exhaustive enumeration is limited to 6 vertices");
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let pair_index = |i: usize, j: usize| -> usize {
        let (i, j) = (i.min(j), i.max(j));
        pairs.iter().position(|&p| p == (i, j)).unwrap()
    };
    // Precompute, for each permutation, where each edge bit moves.
    let mut perms: Vec<Vec<usize>> = Vec::new();
    let mut idx: Vec<usize> = (0..n).collect();
    permute_all(&mut idx, 0, &mut |perm| {
        perms.push(
            pairs
                .iter()
                .map(|&(i, j)| pair_index(perm[i], perm[j]))
                .collect(),
        );
    });

    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let canon = perms
            .iter()
            .map(|moves| {
                let mut m = 0u32;
                for (bit, &target) in moves.iter().enumerate() {
                    if mask & (1 << bit) != 0 {
                        m |= 1 << target;
                    }
                }
                m
            })
            .min()
            .unwrap();
        if seen.insert(canon) {
            let mut g = Graph::new();
            for i in 0..n {
                g.add_vertex(vertex_name(i));
            }
            for (bit, &(i, j)) in pairs.iter().enumerate() {
                if canon & (1 << bit) != 0 {
                    g.add_edge(&vertex_name(i), &vertex_name(j)).unwrap();
                }
            }
            out.push(g);
        }
    }
    out
}

fn permute_all(indices: &mut Vec<usize>, from: usize, visit: &mut impl FnMut(&[usize])) {
    if from == indices.len() {
        visit(indices);
        return;
    }
    for i in from..indices.len() {
        indices.swap(from, i);
        permute_all(indices, from + 1, visit);
        indices.swap(from, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::is_interval;
    use crate::mir::validate_representation;

    #[test]
    fn generators_are_deterministic() {
        assert_eq!(random_interval_rep(5, 7), random_interval_rep(5, 7));
        assert_eq!(
            random_kgap_rep(6, 2, 3).gap_count(),
            random_kgap_rep(6, 2, 3).gap_count()
        );
        let a = identify_instance(6, 1, 1).unwrap();
        let b = identify_instance(6, 1, 1).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn random_interval_graph_is_interval() {
        for seed in 0..20 {
            let (g, rep) = random_interval_graph(8, seed);
            assert!(validate_representation(&g, &rep).ok());
            assert!(is_interval(&g));
        }
    }

    #[test]
    fn kgap_rep_has_requested_gaps() {
        for seed in 0..20 {
            let rep = random_kgap_rep(6, 3, seed);
            assert_eq!(rep.gap_count(), 3);
        }
    }

    #[test]
    fn merging_redundant_gaps_preserves_graph() {
        for seed in 0..30 {
            let rep = random_kgap_rep(5, 2, seed);
            let merged = merge_redundant_gaps(&rep);
            assert_eq!(
                build_graph_from_representation(&merged),
                build_graph_from_representation(&rep),
                "seed {seed}"
            );
            assert!(merged.gap_count() <= rep.gap_count());
        }
    }

    #[test]
    fn plus_kv_remainder_is_interval() {
        for seed in 0..10 {
            let (g, x) = random_interval_plus_kv(10, 3, seed);
            assert!(is_interval(&g.remove_vertices(&x)));
        }
    }

    #[test]
    fn six_vertex_graph_census() {
        assert_eq!(small_graphs_up_to_iso(4).len(), 11);
        assert_eq!(small_graphs_up_to_iso(5).len(), 34);
    }
}
