//! Multiple interval representations: each vertex owns one or more closed
//! integer intervals, and adjacency means some pair of intervals intersects.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSet};

/// Closed interval `[left, right]` with integer endpoints.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash, Serialize, Deserialize)]
pub struct Interval {
    pub left: i64,
    pub right: i64,
}

impl Interval {
    pub fn new(left: i64, right: i64) -> Self {
        Interval { left, right }
    }

    /// Closed-interval intersection: touching endpoints count.
    pub fn intersects(&self, other: &Interval) -> bool {
        self.left.max(other.left) <= self.right.min(other.right)
    }

    pub fn contains_point(&self, p: i64) -> bool {
        self.left <= p && p <= self.right
    }
}

/// Assignment of a non-empty, sorted, pairwise disjoint interval list to each
/// vertex. Touching intervals of the same vertex are merged at construction,
/// so every gap that remains is a real gap.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MultiIntervalRepresentation {
    assignment: BTreeMap<VertexId, Vec<Interval>>,
}

pub type Mir = MultiIntervalRepresentation;

impl MultiIntervalRepresentation {
    /// Validates, sorts and merges the per-vertex interval lists.
    pub fn new(assignment: BTreeMap<VertexId, Vec<Interval>>) -> Result<Self> {
        let mut normalized = BTreeMap::new();
        for (v, intervals) in assignment {
            if intervals.is_empty() {
                return Err(Error::EmptyIntervals(v.to_string()));
            }
            for iv in &intervals {
                if iv.left > iv.right {
                    return Err(Error::InvertedInterval {
                        vertex: v.to_string(),
                        left: iv.left,
                        right: iv.right,
                    });
                }
            }
            let mut sorted = intervals;
            sorted.sort();
            // Merge intervals of one vertex that overlap or touch: a vertex's
            // intersecting intervals denote one contiguous stretch of the line.
            let mut merged: Vec<Interval> = Vec::with_capacity(sorted.len());
            for iv in sorted {
                match merged.last_mut() {
                    Some(last) if iv.left <= last.right => {
                        last.right = last.right.max(iv.right);
                    }
                    _ => merged.push(iv),
                }
            }
            normalized.insert(v, merged);
        }
        Ok(MultiIntervalRepresentation {
            assignment: normalized,
        })
    }

    /// Single-interval-per-vertex constructor.
    pub fn from_single(intervals: BTreeMap<VertexId, Interval>) -> Result<Self> {
        Self::new(
            intervals
                .into_iter()
                .map(|(v, iv)| (v, vec![iv]))
                .collect(),
        )
    }

    pub fn vertices(&self) -> impl Iterator<Item = &VertexId> + '_ {
        self.assignment.keys()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.assignment.keys().cloned().collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.assignment.len()
    }

    pub fn intervals(&self, v: &VertexId) -> &[Interval] {
        &self.assignment[v]
    }

    pub fn iter(&self) -> impl Iterator<Item = (&VertexId, &[Interval])> + '_ {
        self.assignment.iter().map(|(v, ivs)| (v, ivs.as_slice()))
    }

    pub fn interval_count(&self) -> usize {
        self.assignment.values().map(|ivs| ivs.len()).sum()
    }

    /// Total gaps: Σ|f(v)| − |V|.
    pub fn gap_count(&self) -> usize {
        self.interval_count() - self.vertex_count()
    }

    /// Vertices with at least two intervals.
    pub fn gap_vertices(&self) -> VertexSet {
        self.assignment
            .iter()
            .filter(|(_, ivs)| ivs.len() >= 2)
            .map(|(v, _)| v.clone())
            .collect()
    }

    /// All interval endpoints, sorted and deduplicated.
    pub fn endpoints(&self) -> Vec<i64> {
        let mut pts: Vec<i64> = self
            .assignment
            .values()
            .flatten()
            .flat_map(|iv| [iv.left, iv.right])
            .collect();
        pts.sort();
        pts.dedup();
        pts
    }

    /// Restriction to a vertex subset.
    pub fn restrict(&self, keep: &VertexSet) -> Mir {
        MultiIntervalRepresentation {
            assignment: self
                .assignment
                .iter()
                .filter(|(v, _)| keep.contains(*v))
                .map(|(v, ivs)| (v.clone(), ivs.clone()))
                .collect(),
        }
    }

    pub fn do_intersect(&self, u: &VertexId, v: &VertexId) -> bool {
        self.assignment[u]
            .iter()
            .any(|i| self.assignment[v].iter().any(|j| i.intersects(j)))
    }
}

/// Derives the intersection graph of a representation: `uv` is an edge iff
/// some interval of `u` meets some interval of `v`.
pub fn build_graph_from_representation(rep: &Mir) -> Graph {
    let mut g = Graph::new();
    for v in rep.vertices() {
        g.add_vertex(v.clone());
    }
    let vs: Vec<&VertexId> = rep.vertices().collect();
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            if rep.do_intersect(vs[i], vs[j]) {
                g.add_edge(vs[i], vs[j]).unwrap();
            }
        }
    }
    g
}

/// Outcome of checking a representation against a graph.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub missing_vertices: Vec<VertexId>,
    pub extra_vertices: Vec<VertexId>,
    /// Edges of the graph not realized by the representation.
    pub missing_edges: Vec<(VertexId, VertexId)>,
    /// Intersections of the representation that are not edges of the graph.
    pub extra_edges: Vec<(VertexId, VertexId)>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.missing_vertices.is_empty()
            && self.extra_vertices.is_empty()
            && self.missing_edges.is_empty()
            && self.extra_edges.is_empty()
    }

    pub fn vertex_sets_match(&self) -> bool {
        self.missing_vertices.is_empty() && self.extra_vertices.is_empty()
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.ok() {
            return write!(f, "ok");
        }
        if !self.vertex_sets_match() {
            write!(
                f,
                "vertex mismatch: missing={:?} extra={:?}; ",
                self.missing_vertices, self.extra_vertices
            )?;
        }
        write!(
            f,
            "missing edges={:?} extra edges={:?}",
            self.missing_edges, self.extra_edges
        )
    }
}

/// Compares the graph derived from `rep` with `g`, edge by edge.
pub fn validate_representation(g: &Graph, rep: &Mir) -> ValidationReport {
    let derived = build_graph_from_representation(rep);
    let mut report = ValidationReport::default();
    for v in g.vertices() {
        if !derived.has_vertex(v) {
            report.missing_vertices.push(v.clone());
        }
    }
    for v in derived.vertices() {
        if !g.has_vertex(v) {
            report.extra_vertices.push(v.clone());
        }
    }
    if !report.vertex_sets_match() {
        return report;
    }
    for (a, b) in g.edges() {
        if !derived.has_edge(&a, &b) {
            report.missing_edges.push((a, b));
        }
    }
    for (a, b) in derived.edges() {
        if !g.has_edge(&a, &b) {
            report.extra_edges.push((a, b));
        }
    }
    report
}

/// Rewrites all endpoints to distinct integers `1..=2T` (T = number of
/// intervals) without changing which intervals intersect. Intervals that
/// shared an endpoint are pulled apart so that they still overlap.
pub fn normalize_representation(rep: &Mir) -> Mir {
    #[derive(PartialEq, Eq, PartialOrd, Ord)]
    enum Kind {
        Open,
        Close,
    }
    // Sort key: coordinate, then opens before closes (preserves closed-interval
    // touching as overlap), then owner for determinism.
    let mut events: Vec<(i64, Kind, VertexId, usize)> = Vec::new();
    for (v, ivs) in rep.iter() {
        for (idx, iv) in ivs.iter().enumerate() {
            events.push((iv.left, Kind::Open, v.clone(), idx));
            events.push((iv.right, Kind::Close, v.clone(), idx));
        }
    }
    events.sort();
    let mut coords: BTreeMap<(VertexId, usize), (Option<i64>, Option<i64>)> = BTreeMap::new();
    for (pos, (_, kind, v, idx)) in events.into_iter().enumerate() {
        let entry = coords.entry((v, idx)).or_insert((None, None));
        match kind {
            Kind::Open => entry.0 = Some(pos as i64 + 1),
            Kind::Close => entry.1 = Some(pos as i64 + 1),
        }
    }
    let assignment = rep
        .iter()
        .map(|(v, ivs)| {
            let list = (0..ivs.len())
                .map(|idx| {
                    let (l, r) = coords[&(v.clone(), idx)];
                    Interval::new(l.unwrap(), r.unwrap())
                })
                .collect();
            (v.clone(), list)
        })
        .collect();
    MultiIntervalRepresentation::new(assignment).expect("normalization preserves well-formedness")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn mir(entries: &[(&str, &[(i64, i64)])]) -> Mir {
        let map = entries
            .iter()
            .map(|(v, ivs)| {
                (
                    VertexId::from(*v),
                    ivs.iter().map(|&(l, r)| Interval::new(l, r)).collect(),
                )
            })
            .collect();
        Mir::new(map).unwrap()
    }

    #[test]
    fn touching_chain_gives_path() {
        let rep = mir(&[("1", &[(1, 3)]), ("2", &[(3, 5)]), ("3", &[(5, 7)])]);
        let g = build_graph_from_representation(&rep);
        assert_eq!(g.edges(), vec![("1".into(), "2".into()), ("2".into(), "3".into())]);
    }

    #[test]
    fn singleton_point_interval() {
        let rep = mir(&[("1", &[(0, 0)])]);
        let g = build_graph_from_representation(&rep);
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn c4_fixture_derives_c4() {
        let (g, rep) = fixtures::c4_with_rep();
        assert!(validate_representation(&g, &rep).ok());
        assert_eq!(rep.gap_count(), 1);
        assert_eq!(rep.gap_vertices(), ["b1"].iter().map(|s| VertexId::from(*s)).collect());
    }

    #[test]
    fn validation_reports_extra_edge() {
        let (g, _) = fixtures::c4_with_rep();
        // b1 as a single interval spans everything and picks up a1.
        let bad = mir(&[
            ("a0", &[(1, 4)]),
            ("b0", &[(5, 8)]),
            ("a1", &[(3, 5)]),
            ("b1", &[(1, 8)]),
        ]);
        let report = validate_representation(&g, &bad);
        assert!(!report.ok());
        assert_eq!(report.extra_edges, vec![("a1".into(), "b1".into())]);
        assert!(report.missing_edges.is_empty());
    }

    #[test]
    fn empty_against_empty_is_ok() {
        let report = validate_representation(&Graph::new(), &mir(&[]));
        assert!(report.ok());
    }

    #[test]
    fn vertex_mismatch_is_distinct() {
        let mut g = Graph::new();
        g.add_vertex("a".into());
        let report = validate_representation(&g, &mir(&[("b", &[(0, 1)])]));
        assert_eq!(report.missing_vertices, vec![VertexId::from("a")]);
        assert_eq!(report.extra_vertices, vec![VertexId::from("b")]);
    }

    #[test]
    fn construction_rejects_malformed() {
        let err = Mir::new(
            [(VertexId::from("v"), vec![])].into_iter().collect::<BTreeMap<_, _>>(),
        )
        .unwrap_err();
        assert!(err.to_string().contains('v'));
        let err = Mir::new(
            [(VertexId::from("w"), vec![Interval::new(3, 1)])]
                .into_iter()
                .collect::<BTreeMap<_, _>>(),
        )
        .unwrap_err();
        assert!(err.to_string().contains('w'));
    }

    #[test]
    fn same_vertex_overlapping_intervals_merge() {
        let rep = mir(&[("v", &[(1, 3), (3, 5), (7, 9)])]);
        assert_eq!(rep.intervals(&"v".into()), &[Interval::new(1, 5), Interval::new(7, 9)]);
        assert_eq!(rep.gap_count(), 1);
    }

    #[test]
    fn normalize_keeps_graph_and_gaps() {
        let (_, rep) = fixtures::c4_with_rep();
        let norm = normalize_representation(&rep);
        assert_eq!(norm.gap_count(), rep.gap_count());
        assert_eq!(
            build_graph_from_representation(&norm),
            build_graph_from_representation(&rep)
        );
        // All endpoints distinct and inside 1..=2T.
        let mut pts: Vec<i64> = norm
            .iter()
            .flat_map(|(_, ivs)| ivs.iter().flat_map(|iv| [iv.left, iv.right]))
            .collect();
        let t = norm.interval_count() as i64;
        pts.sort();
        assert!(pts.windows(2).all(|w| w[0] < w[1]));
        assert!(pts.iter().all(|&p| 1 <= p && p <= 2 * t));
    }

    #[test]
    fn normalize_preserves_shared_endpoint_overlap() {
        let rep = mir(&[("1", &[(1, 3)]), ("2", &[(3, 5)])]);
        let norm = normalize_representation(&rep);
        let g = build_graph_from_representation(&norm);
        assert!(g.has_edge(&"1".into(), &"2".into()));
    }
}
