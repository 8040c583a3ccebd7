//! Canonical small instances used across the test suites.

use std::collections::BTreeMap;

use crate::graph::{complete_graph, cycle_graph, path_graph, Graph, VertexId};
use crate::mir::{Interval, Mir};

pub fn p3() -> Graph {
    path_graph(&["1", "2", "3"])
}

pub fn k3() -> Graph {
    complete_graph(&["1", "2", "3"])
}

pub fn c4() -> Graph {
    let mut g = Graph::new();
    for v in ["a0", "a1", "b0", "b1"] {
        g.add_vertex(v.into());
    }
    for (a, b) in [("a0", "a1"), ("a1", "b0"), ("b0", "b1"), ("b1", "a0")] {
        g.add_edge(&a.into(), &b.into()).unwrap();
    }
    g
}

/// One-gap representation of C4: b1 is split around a0's stretch.
pub fn c4_rep() -> Mir {
    let map: BTreeMap<VertexId, Vec<Interval>> = [
        ("a0", vec![Interval::new(1, 4)]),
        ("b0", vec![Interval::new(5, 8)]),
        ("a1", vec![Interval::new(3, 5)]),
        ("b1", vec![Interval::new(1, 2), Interval::new(6, 8)]),
    ]
    .into_iter()
    .map(|(v, ivs)| (VertexId::from(v), ivs))
    .collect();
    Mir::new(map).unwrap()
}

pub fn c4_with_rep() -> (Graph, Mir) {
    (c4(), c4_rep())
}

pub fn c5() -> Graph {
    cycle_graph(&["1", "2", "3", "4", "5"])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mir::validate_representation;

    #[test]
    fn c4_rep_matches_c4() {
        let (g, rep) = c4_with_rep();
        assert!(validate_representation(&g, &rep).ok());
    }
}
