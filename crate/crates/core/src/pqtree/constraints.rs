//! Partition constraints on PQ-tree frontiers.
//!
//! A partition constraint asks that a scope set `S` split into ordered parts
//! `S_1 < S_2 < ... < S_i`, each part consecutive in the frontier, delimited
//! on the left by `u_L^j` and on the right by `u_R^j`. Free scope elements
//! (non-delimiters) may join any part. Families are solvable here under the
//! hypothesis that the free sets of distinct constraints are disjoint.
//!
//! The solver searches assignments of free elements to parts; for a fixed
//! assignment, feasibility is decided exactly by reducing the tree with each
//! part set and with each part minus one delimiter (which pins delimiters to
//! the block ends), then choosing a frontier consistent with the left-to-right
//! precedences between delimiters. Both directions of that equivalence are
//! exercised against a brute-force oracle in the tests.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{NodeKind, PqError, PqNode, PqTree};

/// Ordered-parts constraint over a scope of leaves.
///
/// `parts[j] = (u_L, u_R)` are the delimiters of the j-th part. A part with
/// `u_L == u_R` is a singleton part: it admits no free elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionConstraint<E> {
    pub parts: Vec<(E, E)>,
    pub scope: BTreeSet<E>,
}

impl<E: Ord + Clone + fmt::Debug> PartitionConstraint<E> {
    pub fn new(parts: Vec<(E, E)>, scope: BTreeSet<E>) -> Self {
        PartitionConstraint { parts, scope }
    }

    pub fn part_count(&self) -> usize {
        self.parts.len()
    }

    pub fn delimiters(&self) -> BTreeSet<E> {
        self.parts
            .iter()
            .flat_map(|(l, r)| [l.clone(), r.clone()])
            .collect()
    }

    /// Scope elements that are not delimiters.
    pub fn free_set(&self) -> BTreeSet<E> {
        let delims = self.delimiters();
        self.scope.difference(&delims).cloned().collect()
    }

    fn validate(&self, ground: &BTreeSet<E>) -> Result<(), PqError> {
        if self.parts.is_empty() {
            return Err(PqError::BadConstraint("no parts".into()));
        }
        if let Some(e) = self.scope.iter().find(|e| !ground.contains(e)) {
            return Err(PqError::ForeignElement(format!("{e:?}")));
        }
        let mut seen = BTreeSet::new();
        for (l, r) in &self.parts {
            if !self.scope.contains(l) || !self.scope.contains(r) {
                return Err(PqError::BadConstraint(format!(
                    "delimiter outside scope: ({l:?}, {r:?})"
                )));
            }
            if !seen.insert(l.clone()) {
                return Err(PqError::BadConstraint(format!("repeated delimiter {l:?}")));
            }
            if l != r && !seen.insert(r.clone()) {
                return Err(PqError::BadConstraint(format!("repeated delimiter {r:?}")));
            }
        }
        Ok(())
    }
}

/// A satisfying frontier together with the chosen partition of each scope.
#[derive(Clone, Debug)]
pub struct ConstraintSolution<E: Ord + Clone> {
    pub ordering: Vec<E>,
    /// One entry per constraint: the parts S_1..S_i, delimiters included.
    pub partitions: Vec<Vec<BTreeSet<E>>>,
    /// The input tree after all part-consecutivity reductions, reordered so
    /// that its frontier equals `ordering`.
    pub tree: PqTree<E>,
}

pub fn satisfy_partition_constraints<E: Ord + Clone + fmt::Debug>(
    tree: &PqTree<E>,
    constraints: &[PartitionConstraint<E>],
) -> Result<Option<ConstraintSolution<E>>, PqError> {
    satisfy_partition_constraints_with_precedences(tree, constraints, &[])
}

/// Like [`satisfy_partition_constraints`], with extra `(a, b)` pairs that
/// force leaf `a` to the left of leaf `b` in the returned ordering.
pub fn satisfy_partition_constraints_with_precedences<E: Ord + Clone + fmt::Debug>(
    tree: &PqTree<E>,
    constraints: &[PartitionConstraint<E>],
    precedences: &[(E, E)],
) -> Result<Option<ConstraintSolution<E>>, PqError> {
    for c in constraints {
        c.validate(tree.ground())?;
    }
    for (a, b) in precedences {
        for e in [a, b] {
            if !tree.ground().contains(e) {
                return Err(PqError::ForeignElement(format!("{e:?}")));
            }
        }
    }
    // Hypothesis: free sets pairwise disjoint.
    let mut owned: BTreeMap<E, usize> = BTreeMap::new();
    for (i, c) in constraints.iter().enumerate() {
        for e in c.free_set() {
            if let Some(j) = owned.insert(e.clone(), i) {
                if j != i {
                    return Err(PqError::OverlappingFreeSets(format!("{e:?}")));
                }
            }
        }
    }

    let frees: Vec<Vec<E>> = constraints
        .iter()
        .map(|c| c.free_set().into_iter().collect())
        .collect();
    let eligible: Vec<Vec<usize>> = constraints
        .iter()
        .map(|c| {
            (0..c.parts.len())
                .filter(|&j| c.parts[j].0 != c.parts[j].1)
                .collect()
        })
        .collect();
    for (i, f) in frees.iter().enumerate() {
        if !f.is_empty() && eligible[i].is_empty() {
            return Ok(None);
        }
    }

    let mut assignment: Vec<Vec<usize>> = frees.iter().map(|f| vec![0; f.len()]).collect();
    let solution = assign_constraint(
        tree,
        constraints,
        &frees,
        &eligible,
        &mut assignment,
        0,
        precedences,
    );
    Ok(solution)
}

/// Depth-first search over free-element assignments, one constraint at a time.
/// The tree passed down already carries the reductions of earlier constraints.
fn assign_constraint<E: Ord + Clone + fmt::Debug>(
    tree: &PqTree<E>,
    constraints: &[PartitionConstraint<E>],
    frees: &[Vec<E>],
    eligible: &[Vec<usize>],
    assignment: &mut Vec<Vec<usize>>,
    idx: usize,
    precedences: &[(E, E)],
) -> Option<ConstraintSolution<E>> {
    if idx == constraints.len() {
        return finalize(tree, constraints, frees, assignment, precedences);
    }
    assign_frees(
        tree,
        constraints,
        frees,
        eligible,
        assignment,
        idx,
        0,
        precedences,
    )
}

#[allow(clippy::too_many_arguments)]
fn assign_frees<E: Ord + Clone + fmt::Debug>(
    tree: &PqTree<E>,
    constraints: &[PartitionConstraint<E>],
    frees: &[Vec<E>],
    eligible: &[Vec<usize>],
    assignment: &mut Vec<Vec<usize>>,
    idx: usize,
    free_pos: usize,
    precedences: &[(E, E)],
) -> Option<ConstraintSolution<E>> {
    if free_pos == frees[idx].len() {
        // Assignment of this constraint complete: apply its reductions.
        let mut narrowed = tree.clone();
        if !apply_cascade(&mut narrowed, &constraints[idx], &frees[idx], &assignment[idx]) {
            return None;
        }
        return assign_constraint(
            &narrowed,
            constraints,
            frees,
            eligible,
            assignment,
            idx + 1,
            precedences,
        );
    }
    for &part in &eligible[idx] {
        assignment[idx][free_pos] = part;
        if let Some(sol) = assign_frees(
            tree,
            constraints,
            frees,
            eligible,
            assignment,
            idx,
            free_pos + 1,
            precedences,
        ) {
            return Some(sol);
        }
    }
    None
}

fn part_sets<E: Ord + Clone>(
    constraint: &PartitionConstraint<E>,
    frees: &[E],
    assignment: &[usize],
) -> Vec<BTreeSet<E>> {
    let mut sets: Vec<BTreeSet<E>> = constraint
        .parts
        .iter()
        .map(|(l, r)| [l.clone(), r.clone()].into_iter().collect())
        .collect();
    for (e, &j) in frees.iter().zip(assignment) {
        sets[j].insert(e.clone());
    }
    sets
}

/// Reduces with every part, and with every part minus one delimiter, which
/// pins the delimiters to the ends of the part's block.
fn apply_cascade<E: Ord + Clone + fmt::Debug>(
    tree: &mut PqTree<E>,
    constraint: &PartitionConstraint<E>,
    frees: &[E],
    assignment: &[usize],
) -> bool {
    for (j, set) in part_sets(constraint, frees, assignment).into_iter().enumerate() {
        if set.len() >= 2 && !tree.reduce(&set).unwrap() {
            return false;
        }
        let (l, r) = &constraint.parts[j];
        for delim in [l, r] {
            let mut inner = set.clone();
            inner.remove(delim);
            if inner.len() >= 2 && !tree.reduce(&inner).unwrap() {
                return false;
            }
        }
    }
    true
}

fn finalize<E: Ord + Clone + fmt::Debug>(
    tree: &PqTree<E>,
    constraints: &[PartitionConstraint<E>],
    frees: &[Vec<E>],
    assignment: &[Vec<usize>],
    extra: &[(E, E)],
) -> Option<ConstraintSolution<E>> {
    let mut precedences: Vec<(E, E)> = Vec::new();
    for c in constraints {
        for (l, r) in &c.parts {
            if l != r {
                precedences.push((l.clone(), r.clone()));
            }
        }
        for w in c.parts.windows(2) {
            precedences.push((w[0].1.clone(), w[1].0.clone()));
        }
    }
    precedences.extend(extra.iter().cloned());
    let ordered = order_with_precedences(tree, &precedences)?;
    let partitions: Vec<Vec<BTreeSet<E>>> = constraints
        .iter()
        .zip(frees.iter().zip(assignment))
        .map(|(c, (f, a))| part_sets(c, f, a))
        .collect();
    let ordering = ordered.frontier();
    debug_assert!(
        satisfies_constraints(&ordering, constraints).is_some(),
        "solver produced an ordering violating its own constraints"
    );
    Some(ConstraintSolution {
        ordering,
        partitions,
        tree: ordered,
    })
}

/// Reorders P children and orients Q nodes so that every `(a, b)` pair has
/// leaf `a` left of leaf `b`; returns None when the requirements clash.
fn order_with_precedences<E: Ord + Clone + fmt::Debug>(
    tree: &PqTree<E>,
    precedences: &[(E, E)],
) -> Option<PqTree<E>> {
    let mut paths: BTreeMap<E, Vec<usize>> = BTreeMap::new();
    collect_paths(&tree.root, &mut Vec::new(), &mut paths);
    // Requirements grouped by the path of the node that must separate them.
    let mut reqs: BTreeMap<Vec<usize>, Vec<(usize, usize)>> = BTreeMap::new();
    for (a, b) in precedences {
        if a == b {
            return None;
        }
        let pa = &paths[a];
        let pb = &paths[b];
        let mut depth = 0;
        while pa[depth] == pb[depth] {
            depth += 1;
        }
        reqs.entry(pa[..depth].to_vec())
            .or_default()
            .push((pa[depth], pb[depth]));
    }
    let root = rebuild(&tree.root, &mut Vec::new(), &reqs)?;
    Some(PqTree {
        root,
        ground: tree.ground.clone(),
    })
}

fn collect_paths<E: Ord + Clone>(
    node: &PqNode<E>,
    path: &mut Vec<usize>,
    out: &mut BTreeMap<E, Vec<usize>>,
) {
    match node {
        PqNode::Leaf(e) => {
            out.insert(e.clone(), path.clone());
        }
        PqNode::P(cs) | PqNode::Q(cs) => {
            for (i, c) in cs.iter().enumerate() {
                path.push(i);
                collect_paths(c, path, out);
                path.pop();
            }
        }
    }
}

fn rebuild<E: Ord + Clone>(
    node: &PqNode<E>,
    path: &mut Vec<usize>,
    reqs: &BTreeMap<Vec<usize>, Vec<(usize, usize)>>,
) -> Option<PqNode<E>> {
    match node {
        PqNode::Leaf(e) => Some(PqNode::Leaf(e.clone())),
        PqNode::P(cs) | PqNode::Q(cs) => {
            let kind = if matches!(node, PqNode::P(_)) {
                NodeKind::P
            } else {
                NodeKind::Q
            };
            let order = match (kind, reqs.get(path.as_slice())) {
                (_, None) => (0..cs.len()).collect::<Vec<usize>>(),
                (NodeKind::Q, Some(edges)) => {
                    if edges.iter().all(|&(a, b)| a < b) {
                        (0..cs.len()).collect()
                    } else if edges.iter().all(|&(a, b)| a > b) {
                        (0..cs.len()).rev().collect()
                    } else {
                        return None;
                    }
                }
                (NodeKind::P, Some(edges)) => topological_child_order(cs.len(), edges)?,
            };
            let mut rebuilt = Vec::with_capacity(cs.len());
            for i in order {
                path.push(i);
                let child = rebuild(&cs[i], path, reqs)?;
                path.pop();
                rebuilt.push(child);
            }
            Some(match kind {
                NodeKind::P => PqNode::P(rebuilt),
                NodeKind::Q => PqNode::Q(rebuilt),
            })
        }
    }
}

/// Kahn's algorithm; among ready children the smallest original index goes
/// first, so unconstrained children keep their relative order.
fn topological_child_order(n: usize, edges: &[(usize, usize)]) -> Option<Vec<usize>> {
    let mut indegree = vec![0usize; n];
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in edges {
        out[a].push(b);
        indegree[b] += 1;
    }
    let mut ready: BTreeSet<usize> = (0..n).filter(|&i| indegree[i] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(&i) = ready.iter().next() {
        ready.remove(&i);
        order.push(i);
        for &j in &out[i] {
            indegree[j] -= 1;
            if indegree[j] == 0 {
                ready.insert(j);
            }
        }
    }
    (order.len() == n).then_some(order)
}

/// Independent predicate: does `order` satisfy every constraint? On success
/// returns the forced partitions (the window between each delimiter pair).
pub fn satisfies_constraints<E: Ord + Clone>(
    order: &[E],
    constraints: &[PartitionConstraint<E>],
) -> Option<Vec<Vec<BTreeSet<E>>>> {
    let pos: BTreeMap<&E, usize> = order.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut all = Vec::with_capacity(constraints.len());
    for c in constraints {
        let mut parts = Vec::with_capacity(c.parts.len());
        let mut covered: BTreeSet<E> = BTreeSet::new();
        let mut prev_end: Option<usize> = None;
        for (l, r) in &c.parts {
            let (lp, rp) = (*pos.get(l)?, *pos.get(r)?);
            if lp > rp {
                return None;
            }
            if let Some(end) = prev_end {
                if lp <= end {
                    return None;
                }
            }
            let window: BTreeSet<E> = order[lp..=rp].iter().cloned().collect();
            if !window.is_subset(&c.scope) {
                return None;
            }
            covered.extend(window.iter().cloned());
            parts.push(window);
            prev_end = Some(rp);
        }
        if covered != c.scope {
            return None;
        }
        all.push(parts);
    }
    Some(all)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn universal(n: u32) -> PqTree<u32> {
        PqTree::new(0..n).unwrap()
    }

    fn constraint(parts: &[(u32, u32)], scope: &[u32]) -> PartitionConstraint<u32> {
        PartitionConstraint::new(parts.to_vec(), scope.iter().copied().collect())
    }

    /// Brute-force satisfiability over all admissible frontiers.
    fn oracle(
        tree: &PqTree<u32>,
        constraints: &[PartitionConstraint<u32>],
    ) -> Option<Vec<u32>> {
        tree.enumerate_frontiers(usize::MAX)
            .unwrap()
            .into_iter()
            .find(|f| satisfies_constraints(f, constraints).is_some())
    }

    #[test]
    fn single_pair_part() {
        let tree = universal(4);
        let cs = [constraint(&[(1, 2)], &[1, 2])];
        let sol = satisfy_partition_constraints(&tree, &cs).unwrap().unwrap();
        let pos1 = sol.ordering.iter().position(|&e| e == 1).unwrap();
        assert_eq!(sol.ordering[pos1 + 1], 2);
        assert_eq!(sol.partitions[0], vec![[1, 2].into_iter().collect()]);
    }

    #[test]
    fn free_element_is_placed_inside_a_part() {
        let tree = universal(5);
        let cs = [constraint(&[(0, 1), (2, 3)], &[0, 1, 2, 3, 4])];
        let sol = satisfy_partition_constraints(&tree, &cs).unwrap().unwrap();
        let parts = satisfies_constraints(&sol.ordering, &cs).unwrap();
        assert_eq!(parts, sol.partitions);
        let total: BTreeSet<u32> = sol.partitions[0].iter().flatten().copied().collect();
        assert_eq!(total, (0..5).collect());
    }

    #[test]
    fn singleton_part_admits_no_frees() {
        let tree = universal(2);
        // One singleton part cannot absorb the free element 1.
        let cs = [constraint(&[(0, 0)], &[0, 1])];
        assert!(satisfy_partition_constraints(&tree, &cs).unwrap().is_none());
        let cs = [constraint(&[(0, 0)], &[0])];
        let sol = satisfy_partition_constraints(&tree, &cs).unwrap().unwrap();
        assert_eq!(sol.partitions[0], vec![[0].into_iter().collect()]);
    }

    #[test]
    fn consecutivity_interaction_with_prereduced_tree() {
        // {1, 3} must stay consecutive; a part delimited by (1, 2) can still be
        // realized as ... 3 1 2 ...
        let mut tree = universal(4);
        assert!(tree.reduce(&[1, 3].into_iter().collect()).unwrap());
        let cs = [constraint(&[(1, 2)], &[1, 2])];
        let got = satisfy_partition_constraints(&tree, &cs).unwrap();
        let expect = oracle(&tree, &cs);
        assert_eq!(got.is_some(), expect.is_some());
        if let Some(sol) = got {
            assert!(satisfies_constraints(&sol.ordering, &cs).is_some());
        }
    }

    #[test]
    fn unsatisfiable_when_delimiters_pinned_apart() {
        let mut tree = universal(4);
        // 0 and 1 consecutive, and 2 and 3 consecutive.
        assert!(tree.reduce(&[0, 1].into_iter().collect()).unwrap());
        assert!(tree.reduce(&[2, 3].into_iter().collect()).unwrap());
        // A part [0 .. 2] must contain exactly {0, 2}: impossible, 1 sticks to 0
        // and 3 sticks to 2 only on the outside... oracle decides.
        let cs = [constraint(&[(0, 2)], &[0, 2])];
        let got = satisfy_partition_constraints(&tree, &cs).unwrap();
        assert_eq!(got.is_some(), oracle(&tree, &cs).is_some());
    }

    #[test]
    fn overlapping_free_sets_are_a_precondition_error() {
        let tree = universal(6);
        let cs = [
            constraint(&[(0, 1)], &[0, 1, 4]),
            constraint(&[(2, 3)], &[2, 3, 4]),
        ];
        assert!(matches!(
            satisfy_partition_constraints(&tree, &cs),
            Err(PqError::OverlappingFreeSets(_))
        ));
    }

    #[test]
    fn extra_precedences_are_honored() {
        let tree = universal(4);
        let cs = [constraint(&[(0, 1)], &[0, 1])];
        let sol = satisfy_partition_constraints_with_precedences(&tree, &cs, &[(3, 0), (1, 2)])
            .unwrap()
            .unwrap();
        let pos = |e: u32| sol.ordering.iter().position(|&x| x == e).unwrap();
        assert!(pos(3) < pos(0));
        assert!(pos(0) < pos(1));
        assert!(pos(1) < pos(2));
    }

    #[test]
    fn contradictory_precedences_fail() {
        let tree = universal(3);
        let got =
            satisfy_partition_constraints_with_precedences(&tree, &[], &[(0, 1), (1, 0)]).unwrap();
        assert!(got.is_none());
    }

    #[test]
    fn random_families_match_oracle() {
        let mut state = 0xdeadbeefcafef00du64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _case in 0..60 {
            let n = 4 + (next() % 4) as u32; // 4..=7
            let mut tree = universal(n);
            // A couple of random consecutivity reductions first.
            for _ in 0..(next() % 3) {
                let mut s = BTreeSet::new();
                for e in 0..n {
                    if next() % 2 == 0 {
                        s.insert(e);
                    }
                }
                if s.len() >= 2 {
                    let _ = tree.reduce(&s);
                }
            }
            // Random constraint family with disjoint scopes.
            let mut pool: Vec<u32> = (0..n).collect();
            let mut constraints = Vec::new();
            let c_count = 1 + (next() % 2) as usize;
            for _ in 0..c_count {
                if pool.len() < 2 {
                    break;
                }
                let take = 2 + (next() % (pool.len() as u64 - 1)) as usize;
                let take = take.min(pool.len());
                let mut scope: Vec<u32> = Vec::new();
                for _ in 0..take {
                    let i = (next() % pool.len() as u64) as usize;
                    scope.push(pool.remove(i));
                }
                scope.sort();
                let parts = if scope.len() >= 4 && next() % 2 == 0 {
                    vec![(scope[0], scope[1]), (scope[2], scope[3])]
                } else {
                    vec![(scope[0], scope[1])]
                };
                constraints.push(PartitionConstraint::new(
                    parts,
                    scope.into_iter().collect(),
                ));
            }
            if constraints.is_empty() {
                continue;
            }
            let got = satisfy_partition_constraints(&tree, &constraints).unwrap();
            let expect = oracle(&tree, &constraints);
            assert_eq!(
                got.is_some(),
                expect.is_some(),
                "tree {tree:?}, constraints {constraints:?}"
            );
            if let Some(sol) = got {
                assert!(satisfies_constraints(&sol.ordering, &constraints).is_some());
            }
        }
    }
}
