//! Classical interval-graph subroutines: recognition through maximal-clique
//! ordering, clique path decompositions, the greedy independent set, interval
//! piercing, and domination with optional vertices. These are the polynomial
//! pieces every solver leans on.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSet};
use crate::mir::{Interval, Mir};
use crate::pqtree::PqTree;

/// Ordered bag sequence; when `steps` is present the decomposition is nice:
/// consecutive bags differ by exactly one introduced or forgotten vertex,
/// starting and ending at the empty bag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathDecomposition {
    pub bags: Vec<VertexSet>,
    pub steps: Option<Vec<NiceStep>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NiceStep {
    Introduce(VertexId),
    Forget(VertexId),
}

impl PathDecomposition {
    pub fn width(&self) -> usize {
        self.bags.iter().map(|b| b.len()).max().unwrap_or(1).saturating_sub(1)
    }

    /// Checks the three decomposition axioms against `g`.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        let mut seen = VertexSet::new();
        for b in &self.bags {
            seen.extend(b.iter().cloned());
        }
        if seen != g.vertex_set() {
            return false;
        }
        for (a, b) in g.edges() {
            if !self.bags.iter().any(|bag| bag.contains(&a) && bag.contains(&b)) {
                return false;
            }
        }
        for v in g.vertices() {
            let idx: Vec<usize> = self
                .bags
                .iter()
                .enumerate()
                .filter(|(_, bag)| bag.contains(v))
                .map(|(i, _)| i)
                .collect();
            if idx.windows(2).any(|w| w[1] != w[0] + 1) {
                return false;
            }
        }
        true
    }
}

/// Result of a successful recognition: all maximal cliques in a consecutive
/// order (every vertex's cliques form a contiguous run) plus the
/// single-interval representation read off that order.
#[derive(Clone, Debug)]
pub struct IntervalModel {
    pub cliques: Vec<VertexSet>,
    pub rep: Mir,
}

/// Decides whether `g` is an interval graph.
///
/// Chordality is established by maximum-cardinality search and a perfect
/// elimination check; the maximal cliques are then ordered consecutively with
/// a PQ-tree. Vertex `v` receives the interval `[first bag, last bag]` (bags
/// numbered from 1).
pub fn recognize_interval(g: &Graph) -> Option<IntervalModel> {
    let elimination = maximum_cardinality_search(g);
    if !is_perfect_elimination_order(g, &elimination) {
        return None;
    }
    let cliques = cliques_from_elimination(g, &elimination);
    let order = consecutive_clique_order(&cliques)?;
    let ordered: Vec<VertexSet> = order.iter().map(|&i| cliques[i].clone()).collect();
    let mut intervals: BTreeMap<VertexId, Interval> = BTreeMap::new();
    for (pos, clique) in ordered.iter().enumerate() {
        for v in clique {
            let coord = pos as i64 + 1;
            intervals
                .entry(v.clone())
                .and_modify(|iv| {
                    iv.left = iv.left.min(coord);
                    iv.right = iv.right.max(coord);
                })
                .or_insert(Interval::new(coord, coord));
        }
    }
    let rep = Mir::from_single(intervals).expect("clique positions are well-formed intervals");
    debug_assert!(crate::mir::validate_representation(g, &rep).ok());
    Some(IntervalModel {
        cliques: ordered,
        rep,
    })
}

pub fn is_interval(g: &Graph) -> bool {
    recognize_interval(g).is_some()
}

/// Maximal cliques of an interval graph, in consecutive order.
pub fn interval_maximal_cliques(g: &Graph) -> Result<Vec<VertexSet>> {
    recognize_interval(g)
        .map(|m| m.cliques)
        .ok_or(Error::NotInterval {
            context: "interval_maximal_cliques",
        })
}

/// Path decomposition whose bags are exactly the maximal cliques.
pub fn clique_path_decomposition(g: &Graph) -> Result<PathDecomposition> {
    Ok(PathDecomposition {
        bags: interval_maximal_cliques(g)?,
        steps: None,
    })
}

/// Refines a path decomposition into a nice one: starting from the empty bag,
/// each step introduces or forgets a single vertex. Width is unchanged.
pub fn make_nice(pd: &PathDecomposition) -> PathDecomposition {
    let mut bags: Vec<VertexSet> = vec![VertexSet::new()];
    let mut steps: Vec<NiceStep> = Vec::new();
    let mut current = VertexSet::new();
    for target in pd.bags.iter().chain(std::iter::once(&VertexSet::new())) {
        let forget: Vec<VertexId> = current.difference(target).cloned().collect();
        for v in forget {
            current.remove(&v);
            steps.push(NiceStep::Forget(v));
            bags.push(current.clone());
        }
        let introduce: Vec<VertexId> = target.difference(&current).cloned().collect();
        for v in introduce {
            current.insert(v.clone());
            steps.push(NiceStep::Introduce(v));
            bags.push(current.clone());
        }
    }
    PathDecomposition {
        bags,
        steps: Some(steps),
    }
}

/// Maximum independent set of an interval model, one interval per vertex:
/// greedy by earliest right endpoint.
pub fn interval_max_independent_set(items: &[(VertexId, Interval)]) -> VertexSet {
    let mut sorted: Vec<&(VertexId, Interval)> = items.iter().collect();
    sorted.sort_by_key(|(v, iv)| (iv.right, iv.left, v.clone()));
    let mut chosen = VertexSet::new();
    let mut frontier: Option<i64> = None;
    for (v, iv) in sorted {
        if frontier.map_or(true, |f| iv.left > f) {
            chosen.insert(v.clone());
            frontier = Some(iv.right);
        }
    }
    chosen
}

/// Minimum set of points stabbing every interval: greedy on right endpoints.
pub fn interval_piercing(intervals: &[Interval]) -> Vec<i64> {
    let mut sorted: Vec<&Interval> = intervals.iter().collect();
    sorted.sort_by_key(|iv| (iv.right, iv.left));
    let mut points = Vec::new();
    let mut last: Option<i64> = None;
    for iv in sorted {
        if last.map_or(true, |p| iv.left > p) {
            points.push(iv.right);
            last = Some(iv.right);
        }
    }
    points
}

/// Minimum dominating set on an interval model where only `required` vertices
/// (minus the already `predominated` ones) must be dominated. Every model
/// vertex may serve as a dominator.
///
/// Greedy with an exchange argument: cover the pending vertex with the
/// earliest right endpoint by the intersecting dominator that reaches
/// furthest right.
pub fn interval_dominating_with_optional(
    model: &[(VertexId, Interval)],
    required: &VertexSet,
    predominated: &VertexSet,
) -> VertexSet {
    let by_vertex: BTreeMap<&VertexId, &Interval> =
        model.iter().map(|(v, iv)| (v, iv)).collect();
    debug_assert!(required.iter().all(|v| by_vertex.contains_key(v)));
    let mut pending: Vec<(&VertexId, &Interval)> = required
        .iter()
        .filter(|v| !predominated.contains(*v))
        .map(|v| (v, by_vertex[v]))
        .collect();
    pending.sort_by_key(|(v, iv)| (iv.right, iv.left, (*v).clone()));

    let mut chosen = VertexSet::new();
    let mut covered: Vec<bool> = vec![false; pending.len()];
    for i in 0..pending.len() {
        if covered[i] {
            continue;
        }
        let target = pending[i].1;
        // The target intersects itself, so a best dominator always exists.
        let (dom, dom_iv) = model
            .iter()
            .filter(|(_, iv)| iv.intersects(target))
            .max_by_key(|(v, iv)| (iv.right, std::cmp::Reverse(v.clone())))
            .map(|(v, iv)| (v.clone(), *iv))
            .expect("required vertex must appear in the model");
        chosen.insert(dom);
        for (j, (_, iv)) in pending.iter().enumerate() {
            if !covered[j] && iv.intersects(&dom_iv) {
                covered[j] = true;
            }
        }
    }
    chosen
}

/// Maximum-cardinality search; returns an elimination order (first vertex is
/// eliminated first). For chordal graphs this is a perfect elimination order.
fn maximum_cardinality_search(g: &Graph) -> Vec<VertexId> {
    let mut weight: BTreeMap<&VertexId, usize> = g.vertices().map(|v| (v, 0)).collect();
    let mut visited: Vec<VertexId> = Vec::with_capacity(g.vertex_count());
    let mut in_order: VertexSet = VertexSet::new();
    while visited.len() < g.vertex_count() {
        let next = weight
            .iter()
            .filter(|(v, _)| !in_order.contains(**v))
            .max_by(|(v1, w1), (v2, w2)| w1.cmp(w2).then_with(|| v2.cmp(v1)))
            .map(|(v, _)| (*v).clone())
            .unwrap();
        in_order.insert(next.clone());
        for u in g.neighbors(&next) {
            if !in_order.contains(u) {
                *weight.get_mut(u).unwrap() += 1;
            }
        }
        visited.push(next);
    }
    visited.reverse();
    visited
}

fn is_perfect_elimination_order(g: &Graph, order: &[VertexId]) -> bool {
    let position: BTreeMap<&VertexId, usize> =
        order.iter().enumerate().map(|(i, v)| (v, i)).collect();
    for (i, v) in order.iter().enumerate() {
        let later: Vec<&VertexId> = g
            .neighbors(v)
            .iter()
            .filter(|u| position[*u] > i)
            .collect();
        for a in 0..later.len() {
            for b in a + 1..later.len() {
                if !g.has_edge(later[a], later[b]) {
                    return false;
                }
            }
        }
    }
    true
}

/// Maximal cliques of a chordal graph, one candidate per vertex of the
/// elimination order, filtered to the maximal ones.
fn cliques_from_elimination(g: &Graph, order: &[VertexId]) -> Vec<VertexSet> {
    let position: BTreeMap<&VertexId, usize> =
        order.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut candidates: Vec<VertexSet> = Vec::new();
    for (i, v) in order.iter().enumerate() {
        let mut c: VertexSet = g
            .neighbors(v)
            .iter()
            .filter(|u| position[*u] > i)
            .cloned()
            .collect();
        c.insert(v.clone());
        candidates.push(c);
    }
    let mut maximal: Vec<VertexSet> = Vec::new();
    for c in &candidates {
        if !candidates.iter().any(|other| c != other && c.is_subset(other)) {
            if !maximal.contains(c) {
                maximal.push(c.clone());
            }
        }
    }
    maximal
}

/// Orders cliques so that every vertex's cliques are contiguous, via PQ-tree
/// reduction over clique indices. None when no such order exists.
fn consecutive_clique_order(cliques: &[VertexSet]) -> Option<Vec<usize>> {
    if cliques.len() <= 1 {
        return Some((0..cliques.len()).collect());
    }
    let mut tree = PqTree::new(0..cliques.len()).expect("non-empty universe");
    let mut incidence: BTreeMap<&VertexId, std::collections::BTreeSet<usize>> = BTreeMap::new();
    for (i, c) in cliques.iter().enumerate() {
        for v in c {
            incidence.entry(v).or_default().insert(i);
        }
    }
    for (_, set) in incidence {
        if !tree.reduce(&set).ok()? {
            return None;
        }
    }
    Some(tree.frontier())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::{complete_graph, path_graph};

    fn vid(s: &str) -> VertexId {
        VertexId::from(s)
    }

    #[test]
    fn p3_recognition() {
        let model = recognize_interval(&fixtures::p3()).unwrap();
        assert_eq!(model.cliques.len(), 2);
        let as_sets: Vec<VertexSet> = model.cliques.clone();
        assert!(as_sets.contains(&[vid("1"), vid("2")].into_iter().collect()));
        assert!(as_sets.contains(&[vid("2"), vid("3")].into_iter().collect()));
    }

    #[test]
    fn k3_is_one_clique() {
        let model = recognize_interval(&fixtures::k3()).unwrap();
        assert_eq!(model.cliques.len(), 1);
    }

    #[test]
    fn c4_is_not_interval() {
        assert!(recognize_interval(&fixtures::c4()).is_none());
        assert!(matches!(
            interval_maximal_cliques(&fixtures::c4()),
            Err(Error::NotInterval { .. })
        ));
    }

    #[test]
    fn c5_is_not_interval() {
        assert!(!is_interval(&fixtures::c5()));
    }

    #[test]
    fn clique_runs_are_contiguous() {
        let g = path_graph(&["a", "b", "c", "d", "e"]);
        let model = recognize_interval(&g).unwrap();
        for v in g.vertices() {
            let idx: Vec<usize> = model
                .cliques
                .iter()
                .enumerate()
                .filter(|(_, c)| c.contains(v))
                .map(|(i, _)| i)
                .collect();
            assert!(idx.windows(2).all(|w| w[1] == w[0] + 1), "vertex {v}");
        }
    }

    #[test]
    fn nice_decomposition_of_p3() {
        let pd = clique_path_decomposition(&fixtures::p3()).unwrap();
        assert_eq!(pd.bags.len(), 2);
        let nice = make_nice(&pd);
        assert!(nice.is_valid_for(&fixtures::p3()));
        assert_eq!(nice.width(), pd.width());
        let steps = nice.steps.unwrap();
        // One introduce and one forget per vertex endpoint event.
        assert_eq!(steps.len(), nice.bags.len() - 1);
        assert!(nice.bags.first().unwrap().is_empty());
        assert!(nice.bags.last().unwrap().is_empty());
    }

    #[test]
    fn k3_single_bag() {
        let pd = clique_path_decomposition(&complete_graph(&["1", "2", "3"])).unwrap();
        assert_eq!(pd.bags.len(), 1);
        assert_eq!(pd.width(), 2);
    }

    #[test]
    fn greedy_independent_set_small() {
        let items = vec![
            (vid("1"), Interval::new(1, 3)),
            (vid("2"), Interval::new(2, 5)),
            (vid("3"), Interval::new(6, 8)),
        ];
        assert_eq!(
            interval_max_independent_set(&items),
            [vid("1"), vid("3")].into_iter().collect()
        );
    }

    #[test]
    fn greedy_independent_set_disjoint_and_nested() {
        let disjoint = vec![
            (vid("a"), Interval::new(0, 1)),
            (vid("b"), Interval::new(2, 3)),
            (vid("c"), Interval::new(4, 5)),
        ];
        assert_eq!(interval_max_independent_set(&disjoint).len(), 3);
        let nested = vec![
            (vid("a"), Interval::new(0, 9)),
            (vid("b"), Interval::new(1, 8)),
            (vid("c"), Interval::new(2, 7)),
        ];
        assert_eq!(interval_max_independent_set(&nested).len(), 1);
    }

    #[test]
    fn piercing_small() {
        let ivs = vec![
            Interval::new(1, 3),
            Interval::new(2, 5),
            Interval::new(6, 8),
        ];
        assert_eq!(interval_piercing(&ivs), vec![3, 8]);
        assert!(interval_piercing(&[]).is_empty());
        let pairwise = vec![
            Interval::new(1, 10),
            Interval::new(2, 9),
            Interval::new(3, 8),
        ];
        assert_eq!(interval_piercing(&pairwise).len(), 1);
    }

    #[test]
    fn dominating_with_optional_small() {
        let model = vec![
            (vid("1"), Interval::new(1, 3)),
            (vid("2"), Interval::new(3, 5)),
            (vid("3"), Interval::new(5, 7)),
        ];
        let required: VertexSet = [vid("1"), vid("3")].into_iter().collect();
        let d = interval_dominating_with_optional(&model, &required, &VertexSet::new());
        assert_eq!(d, [vid("2")].into_iter().collect());

        assert!(interval_dominating_with_optional(&model, &VertexSet::new(), &VertexSet::new())
            .is_empty());
        let one: VertexSet = [vid("1")].into_iter().collect();
        assert!(interval_dominating_with_optional(&model, &one, &one).is_empty());
    }
}
