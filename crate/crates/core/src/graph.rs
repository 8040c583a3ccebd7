//! Simple undirected graphs over opaque, totally ordered vertex ids.
//!
//! Vertex ids are strings; every set and map in this crate is ordered so that
//! iteration, and therefore every algorithm built on top, is deterministic.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Opaque vertex identifier with a total order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexId(String);

impl VertexId {
    pub fn new(id: impl Into<String>) -> Self {
        VertexId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        VertexId(s.to_string())
    }
}

impl From<String> for VertexId {
    fn from(s: String) -> Self {
        VertexId(s)
    }
}

pub type VertexSet = BTreeSet<VertexId>;

/// Simple undirected graph: no self-loops, no parallel edges.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Graph {
    adj: BTreeMap<VertexId, VertexSet>,
}

impl Graph {
    pub fn new() -> Self {
        Graph::default()
    }

    /// Builds a graph from explicit vertex and edge lists.
    pub fn from_parts<V, E>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<VertexId>,
        E: IntoIterator,
        E::Item: Into<(VertexId, VertexId)>,
    {
        let mut g = Graph::new();
        for v in vertices {
            g.add_vertex(v.into());
        }
        for e in edges {
            let (a, b) = e.into();
            g.add_edge(&a, &b)?;
        }
        Ok(g)
    }

    /// Convenience constructor from string pairs; endpoints are added as vertices.
    pub fn from_edges<'a>(edges: impl IntoIterator<Item = (&'a str, &'a str)>) -> Result<Self> {
        let mut g = Graph::new();
        for (a, b) in edges {
            let (a, b) = (VertexId::from(a), VertexId::from(b));
            g.add_vertex(a.clone());
            g.add_vertex(b.clone());
            g.add_edge(&a, &b)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, v: VertexId) {
        self.adj.entry(v).or_default();
    }

    /// Adds edge `ab`. Both endpoints must already be vertices.
    pub fn add_edge(&mut self, a: &VertexId, b: &VertexId) -> Result<()> {
        if a == b {
            return Err(Error::SelfLoop(a.to_string()));
        }
        if !self.adj.contains_key(a) {
            return Err(Error::UnknownVertex(a.to_string()));
        }
        if !self.adj.contains_key(b) {
            return Err(Error::UnknownVertex(b.to_string()));
        }
        self.adj.get_mut(a).unwrap().insert(b.clone());
        self.adj.get_mut(b).unwrap().insert(a.clone());
        Ok(())
    }

    pub fn has_vertex(&self, v: &VertexId) -> bool {
        self.adj.contains_key(v)
    }

    pub fn has_edge(&self, a: &VertexId, b: &VertexId) -> bool {
        self.adj.get(a).map_or(false, |ns| ns.contains(b))
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.values().map(|ns| ns.len()).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> impl Iterator<Item = &VertexId> + '_ {
        self.adj.keys()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.adj.keys().cloned().collect()
    }

    /// Edges as normalized (lo, hi) pairs in sorted order.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (v, ns) in &self.adj {
            for u in ns {
                if v < u {
                    out.push((v.clone(), u.clone()));
                }
            }
        }
        out
    }

    pub fn neighbors(&self, v: &VertexId) -> &VertexSet {
        self.adj
            .get(v)
            .unwrap_or_else(|| panic!("unknown vertex {v}"))
    }

    pub fn closed_neighborhood(&self, v: &VertexId) -> VertexSet {
        let mut ns = self.neighbors(v).clone();
        ns.insert(v.clone());
        ns
    }

    /// N(S): neighbors of the set, excluding the set itself.
    pub fn set_neighborhood(&self, s: &VertexSet) -> VertexSet {
        let mut out = VertexSet::new();
        for v in s {
            for u in self.neighbors(v) {
                if !s.contains(u) {
                    out.insert(u.clone());
                }
            }
        }
        out
    }

    /// N[S] = N(S) ∪ S.
    pub fn closed_set_neighborhood(&self, s: &VertexSet) -> VertexSet {
        let mut out = self.set_neighborhood(s);
        out.extend(s.iter().cloned());
        out
    }

    pub fn degree(&self, v: &VertexId) -> usize {
        self.neighbors(v).len()
    }

    pub fn induced(&self, keep: &VertexSet) -> Graph {
        let mut g = Graph::new();
        for v in self.adj.keys() {
            if keep.contains(v) {
                g.add_vertex(v.clone());
            }
        }
        for (v, ns) in &self.adj {
            if !keep.contains(v) {
                continue;
            }
            for u in ns {
                if u > v && keep.contains(u) {
                    g.add_edge(v, u).unwrap();
                }
            }
        }
        g
    }

    pub fn remove_vertices(&self, drop: &VertexSet) -> Graph {
        let keep: VertexSet = self
            .adj
            .keys()
            .filter(|v| !drop.contains(v))
            .cloned()
            .collect();
        self.induced(&keep)
    }

    pub fn is_clique(&self, s: &VertexSet) -> bool {
        let vs: Vec<_> = s.iter().collect();
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                if !self.has_edge(vs[i], vs[j]) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_independent(&self, s: &VertexSet) -> bool {
        let vs: Vec<_> = s.iter().collect();
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                if self.has_edge(vs[i], vs[j]) {
                    return false;
                }
            }
        }
        true
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::new();
        for v in self.adj.keys() {
            g.add_vertex(v.clone());
        }
        let vs: Vec<_> = self.adj.keys().cloned().collect();
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                if !self.has_edge(&vs[i], &vs[j]) {
                    g.add_edge(&vs[i], &vs[j]).unwrap();
                }
            }
        }
        g
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::new();
        let mut comps = Vec::new();
        for v in self.adj.keys() {
            if seen.contains(v) {
                continue;
            }
            let mut comp = VertexSet::new();
            let mut stack = vec![v.clone()];
            while let Some(u) = stack.pop() {
                if !comp.insert(u.clone()) {
                    continue;
                }
                for w in self.neighbors(&u) {
                    if !comp.contains(w) {
                        stack.push(w.clone());
                    }
                }
            }
            seen.extend(comp.iter().cloned());
            comps.push(comp);
        }
        comps
    }

    pub fn is_acyclic(&self) -> bool {
        // A graph is a forest iff every component has |E| = |V| - 1.
        let mut edges_in = BTreeMap::new();
        for comp in self.components() {
            let m: usize = comp
                .iter()
                .map(|v| self.neighbors(v).iter().filter(|u| comp.contains(*u)).count())
                .sum::<usize>()
                / 2;
            edges_in.insert(comp.len(), m);
            if m != comp.len() - 1 {
                return false;
            }
        }
        true
    }

    /// Identifies `b` into `a`: the result is `self` minus `b`, plus edges
    /// `{va : vb ∈ E, v ≠ a}`. An `ab` edge never becomes a self-loop.
    pub fn identify(&self, a: &VertexId, b: &VertexId) -> Result<Graph> {
        if a == b {
            return Err(Error::Precondition(format!(
                "identify requires distinct vertices, got {a} twice"
            )));
        }
        if !self.has_vertex(a) {
            return Err(Error::UnknownVertex(a.to_string()));
        }
        if !self.has_vertex(b) {
            return Err(Error::UnknownVertex(b.to_string()));
        }
        let b_neighbors = self.neighbors(b).clone();
        let mut drop = VertexSet::new();
        drop.insert(b.clone());
        let mut g = self.remove_vertices(&drop);
        for v in &b_neighbors {
            if v != a && v != b {
                g.add_edge(v, a)?;
            }
        }
        Ok(g)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Graph(n={}, m={}, edges={:?})",
            self.vertex_count(),
            self.edge_count(),
            self.edges()
        )
    }
}

/// All subsets of a vertex set, ordered by (size, lexicographic).
pub fn subsets_of(set: &VertexSet) -> Vec<VertexSet> {
    let items: Vec<VertexId> = set.iter().cloned().collect();
    let mut out = Vec::with_capacity(1 << items.len().min(20));
    fn rec(items: &[VertexId], from: usize, current: &mut VertexSet, out: &mut Vec<VertexSet>) {
        out.push(current.clone());
        for i in from..items.len() {
            current.insert(items[i].clone());
            rec(items, i + 1, current, out);
            current.remove(&items[i]);
        }
    }
    rec(&items, 0, &mut VertexSet::new(), &mut out);
    out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    out
}

/// Path a-b-c-... over the given ids.
pub fn path_graph(ids: &[&str]) -> Graph {
    let mut g = Graph::new();
    for id in ids {
        g.add_vertex(VertexId::from(*id));
    }
    for w in ids.windows(2) {
        g.add_edge(&VertexId::from(w[0]), &VertexId::from(w[1])).unwrap();
    }
    g
}

/// Cycle over the given ids.
pub fn cycle_graph(ids: &[&str]) -> Graph {
    let mut g = path_graph(ids);
    if ids.len() > 2 {
        g.add_edge(&VertexId::from(ids[0]), &VertexId::from(ids[ids.len() - 1]))
            .unwrap();
    }
    g
}

/// Complete graph over the given ids.
pub fn complete_graph(ids: &[&str]) -> Graph {
    let mut g = Graph::new();
    for id in ids {
        g.add_vertex(VertexId::from(*id));
    }
    for i in 0..ids.len() {
        for j in i + 1..ids.len() {
            g.add_edge(&VertexId::from(ids[i]), &VertexId::from(ids[j])).unwrap();
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_self_loops() {
        let mut g = Graph::new();
        g.add_vertex("a".into());
        assert!(matches!(
            g.add_edge(&"a".into(), &"a".into()),
            Err(Error::SelfLoop(_))
        ));
    }

    #[test]
    fn edge_endpoints_must_exist() {
        let mut g = Graph::new();
        g.add_vertex("a".into());
        assert!(matches!(
            g.add_edge(&"a".into(), &"zz".into()),
            Err(Error::UnknownVertex(_))
        ));
    }

    #[test]
    fn identify_path_ends_gives_cycle() {
        // P5 a-b-c-d-e, identify(a, e) -> C4 on {a,b,c,d}
        let g = path_graph(&["a", "b", "c", "d", "e"]);
        let h = g.identify(&"a".into(), &"e".into()).unwrap();
        let c4 = cycle_graph(&["a", "b", "c", "d"]);
        assert_eq!(h, c4);
    }

    #[test]
    fn identify_adjacent_suppresses_loop() {
        let g = path_graph(&["a", "b"]);
        let h = g.identify(&"a".into(), &"b".into()).unwrap();
        assert_eq!(h.vertex_count(), 1);
        assert_eq!(h.edge_count(), 0);
    }

    #[test]
    fn identify_collapses_parallel_edges() {
        // P3 1-2-3, identify(1, 3): both endpoints adjacent to 2, single edge remains.
        let g = path_graph(&["1", "2", "3"]);
        let h = g.identify(&"1".into(), &"3".into()).unwrap();
        assert_eq!(h.vertex_set(), ["1", "2"].iter().map(|s| VertexId::from(*s)).collect());
        assert_eq!(h.edges(), vec![("1".into(), "2".into())]);
    }

    #[test]
    fn identify_commutes_on_disjoint_pairs() {
        let g = path_graph(&["a", "b", "c", "d", "e", "f"]);
        let h1 = g
            .identify(&"a".into(), &"c".into())
            .unwrap()
            .identify(&"d".into(), &"f".into())
            .unwrap();
        let h2 = g
            .identify(&"d".into(), &"f".into())
            .unwrap()
            .identify(&"a".into(), &"c".into())
            .unwrap();
        assert_eq!(h1, h2);
    }

    #[test]
    fn acyclicity() {
        assert!(path_graph(&["a", "b", "c"]).is_acyclic());
        assert!(!cycle_graph(&["a", "b", "c"]).is_acyclic());
    }
}
