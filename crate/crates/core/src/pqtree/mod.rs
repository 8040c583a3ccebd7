//! PQ-trees: compact representations of families of permutations closed under
//! consecutivity constraints.
//!
//! A P node permutes its children arbitrarily, a Q node only reverses its
//! ordered child list. `reduce` narrows the represented permutations to those
//! in which a given leaf set is consecutive, using the classical template case
//! analysis (leaf / P-node / Q-node, singly and doubly partial) applied on the
//! pertinent subtree.

mod constraints;

pub use constraints::{
    satisfies_constraints, satisfy_partition_constraints,
    satisfy_partition_constraints_with_precedences, ConstraintSolution, PartitionConstraint,
};

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum PqError {
    #[error("PQ-tree requires a non-empty universe")]
    EmptyUniverse,
    #[error("element {0} is not in the ground set")]
    ForeignElement(String),
    #[error("frontier enumeration limited to ground sets of size {limit}, got {got}")]
    EnumerationGuard { limit: usize, got: usize },
    #[error("invalid partition constraint: {0}")]
    BadConstraint(String),
    #[error("partition constraint family violates the disjoint free-set hypothesis on {0}")]
    OverlappingFreeSets(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PqNode<E> {
    Leaf(E),
    P(Vec<PqNode<E>>),
    Q(Vec<PqNode<E>>),
}

impl<E: Clone + Ord> PqNode<E> {
    fn leaves_into(&self, out: &mut Vec<E>) {
        match self {
            PqNode::Leaf(e) => out.push(e.clone()),
            PqNode::P(cs) | PqNode::Q(cs) => cs.iter().for_each(|c| c.leaves_into(out)),
        }
    }

    fn count_in(&self, s: &BTreeSet<E>) -> usize {
        match self {
            PqNode::Leaf(e) => usize::from(s.contains(e)),
            PqNode::P(cs) | PqNode::Q(cs) => cs.iter().map(|c| c.count_in(s)).sum(),
        }
    }
}

/// Wraps a node list as a single child: one node stays itself, several become
/// a P node.
fn group<E>(mut nodes: Vec<PqNode<E>>) -> PqNode<E> {
    debug_assert!(!nodes.is_empty());
    if nodes.len() == 1 {
        nodes.pop().unwrap()
    } else {
        PqNode::P(nodes)
    }
}

/// Builds a Q node from an ordered sequence, normalizing the degenerate sizes:
/// a two-element Q is a P, a one-element Q is its child.
fn make_q<E>(mut seq: Vec<PqNode<E>>) -> PqNode<E> {
    debug_assert!(!seq.is_empty());
    match seq.len() {
        1 => seq.pop().unwrap(),
        2 => PqNode::P(seq),
        _ => PqNode::Q(seq),
    }
}

/// Result of reducing a non-root node: either untouched by the pertinent set,
/// fully inside it, or split into an ordered block sequence running from the
/// empty side to the full side.
enum Classified<E> {
    Empty(PqNode<E>),
    Full(PqNode<E>),
    /// Ordered empty-side-first sequence to be spliced into the parent.
    Partial(Vec<PqNode<E>>),
}

struct ReduceFailed;

#[derive(Clone, PartialEq, Eq)]
pub struct PqTree<E: Ord + Clone> {
    root: PqNode<E>,
    ground: BTreeSet<E>,
}

impl<E: Ord + Clone> PqTree<E> {
    /// Universal tree admitting every permutation of the universe.
    pub fn new(universe: impl IntoIterator<Item = E>) -> Result<Self, PqError> {
        let ground: BTreeSet<E> = universe.into_iter().collect();
        if ground.is_empty() {
            return Err(PqError::EmptyUniverse);
        }
        let leaves: Vec<PqNode<E>> = ground.iter().cloned().map(PqNode::Leaf).collect();
        let root = group(leaves);
        Ok(PqTree { root, ground })
    }

    pub fn from_root(root: PqNode<E>) -> Self {
        let mut leaves = Vec::new();
        root.leaves_into(&mut leaves);
        let ground = leaves.into_iter().collect();
        PqTree { root, ground }
    }

    pub fn ground(&self) -> &BTreeSet<E> {
        &self.ground
    }

    pub fn root(&self) -> &PqNode<E> {
        &self.root
    }

    /// Current left-to-right leaf order.
    pub fn frontier(&self) -> Vec<E> {
        let mut out = Vec::with_capacity(self.ground.len());
        self.root.leaves_into(&mut out);
        out
    }

    /// Narrows the tree to the frontiers where `s` is consecutive.
    ///
    /// Returns `Ok(true)` on success, `Ok(false)` when no admissible frontier
    /// keeps `s` consecutive (the tree is left unchanged), and an error when
    /// `s` contains foreign elements.
    pub fn reduce(&mut self, s: &BTreeSet<E>) -> Result<bool, PqError>
    where
        E: fmt::Debug,
    {
        if let Some(foreign) = s.iter().find(|e| !self.ground.contains(e)) {
            return Err(PqError::ForeignElement(format!("{foreign:?}")));
        }
        if s.len() <= 1 || s.len() == self.ground.len() {
            return Ok(true);
        }
        let root = std::mem::replace(&mut self.root, PqNode::P(Vec::new()));
        match descend(root, s) {
            Ok(new_root) => {
                self.root = new_root;
                Ok(true)
            }
            Err(original) => {
                self.root = original;
                Ok(false)
            }
        }
    }

    /// Applies `reduce` for every set, failing fast.
    pub fn reduce_all<'a>(
        &mut self,
        sets: impl IntoIterator<Item = &'a BTreeSet<E>>,
    ) -> Result<bool, PqError>
    where
        E: fmt::Debug + 'a,
    {
        for s in sets {
            if !self.reduce(s)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Enumerates admissible frontiers, up to `limit`, in a fixed order.
    /// Guarded: refuses ground sets larger than 10.
    pub fn enumerate_frontiers(&self, limit: usize) -> Result<Vec<Vec<E>>, PqError> {
        const GUARD: usize = 10;
        if self.ground.len() > GUARD {
            return Err(PqError::EnumerationGuard {
                limit: GUARD,
                got: self.ground.len(),
            });
        }
        let mut out = Vec::new();
        let work: Vec<&PqNode<E>> = vec![&self.root];
        lay_out(&work, &mut Vec::new(), &mut |frontier| {
            if out.len() < limit {
                out.push(frontier.to_vec());
            }
            out.len() < limit
        });
        Ok(out)
    }

}

#[derive(Clone, Copy, PartialEq, Eq)]
enum NodeKind {
    P,
    Q,
}

/// Walks down to the smallest subtree containing all of `s`, reduces there,
/// and reassembles the tree. On failure returns the original node.
fn descend<E: Ord + Clone>(node: PqNode<E>, s: &BTreeSet<E>) -> Result<PqNode<E>, PqNode<E>> {
    let full_inside = match &node {
        PqNode::Leaf(_) => None,
        PqNode::P(cs) | PqNode::Q(cs) => cs
            .iter()
            .position(|c| c.count_in(s) == s.len()),
    };
    match full_inside {
        Some(idx) => {
            let (kind, mut cs) = match node {
                PqNode::P(cs) => (NodeKind::P, cs),
                PqNode::Q(cs) => (NodeKind::Q, cs),
                PqNode::Leaf(_) => unreachable!(),
            };
            let child = cs.remove(idx);
            match descend(child, s) {
                Ok(new_child) => {
                    cs.insert(idx, new_child);
                    Ok(match kind {
                        NodeKind::P => PqNode::P(cs),
                        NodeKind::Q => PqNode::Q(cs),
                    })
                }
                Err(old_child) => {
                    cs.insert(idx, old_child);
                    Err(match kind {
                        NodeKind::P => PqNode::P(cs),
                        NodeKind::Q => PqNode::Q(cs),
                    })
                }
            }
        }
        None => {
            let backup = node.clone();
            reduce_at_root(node, s).map_err(|_| backup)
        }
    }
}

/// Template application at the root of the pertinent subtree.
fn reduce_at_root<E: Ord + Clone>(
    node: PqNode<E>,
    s: &BTreeSet<E>,
) -> Result<PqNode<E>, ReduceFailed> {
    match node {
        PqNode::Leaf(_) => Ok(node),
        PqNode::P(children) => {
            let (empties, fulls, mut partials) = split_children(children, s)?;
            match partials.len() {
                0 => {
                    if empties.is_empty() || fulls.is_empty() {
                        // All children on one side: s is trivially grouped.
                        let all: Vec<_> = empties.into_iter().chain(fulls).collect();
                        Ok(group(all))
                    } else {
                        // Gather the full children under one P child.
                        let mut cs = empties;
                        cs.push(group(fulls));
                        Ok(group(cs))
                    }
                }
                1 => {
                    let mut seq = partials.pop().unwrap();
                    if !fulls.is_empty() {
                        seq.push(group(fulls));
                    }
                    let q = make_q(seq);
                    if empties.is_empty() {
                        Ok(q)
                    } else {
                        let mut cs = empties;
                        cs.push(q);
                        Ok(group(cs))
                    }
                }
                2 => {
                    let second = partials.pop().unwrap();
                    let mut seq = partials.pop().unwrap();
                    if !fulls.is_empty() {
                        seq.push(group(fulls));
                    }
                    seq.extend(second.into_iter().rev());
                    let q = make_q(seq);
                    if empties.is_empty() {
                        Ok(q)
                    } else {
                        let mut cs = empties;
                        cs.push(q);
                        Ok(group(cs))
                    }
                }
                _ => Err(ReduceFailed),
            }
        }
        PqNode::Q(children) => {
            let classified: Vec<Classified<E>> = children
                .into_iter()
                .map(|c| classify(c, s))
                .collect::<Result<_, _>>()?;
            let first = classified
                .iter()
                .position(|c| !matches!(c, Classified::Empty(_)));
            let last = classified
                .iter()
                .rposition(|c| !matches!(c, Classified::Empty(_)));
            let (first, last) = match (first, last) {
                (Some(f), Some(l)) => (f, l),
                _ => {
                    // All empty: s does not touch this subtree; nothing to do.
                    let cs = classified
                        .into_iter()
                        .map(|c| match c {
                            Classified::Empty(n) => n,
                            _ => unreachable!(),
                        })
                        .collect();
                    return Ok(make_q(cs));
                }
            };
            let mut seq: Vec<PqNode<E>> = Vec::new();
            for (i, c) in classified.into_iter().enumerate() {
                match c {
                    Classified::Empty(n) => {
                        if i > first && i < last {
                            return Err(ReduceFailed);
                        }
                        seq.push(n);
                    }
                    Classified::Full(n) => seq.push(n),
                    Classified::Partial(p_seq) => {
                        if i == first && i != last {
                            seq.extend(p_seq);
                        } else if i == last && i != first {
                            seq.extend(p_seq.into_iter().rev());
                        } else if i == first && i == last {
                            // Single partial child among empties: splice with
                            // the full side facing right.
                            seq.extend(p_seq);
                        } else {
                            return Err(ReduceFailed);
                        }
                    }
                }
            }
            Ok(make_q(seq))
        }
    }
}

/// Classifies a non-root node against the pertinent set.
fn classify<E: Ord + Clone>(node: PqNode<E>, s: &BTreeSet<E>) -> Result<Classified<E>, ReduceFailed> {
    match node {
        PqNode::Leaf(e) => Ok(if s.contains(&e) {
            Classified::Full(PqNode::Leaf(e))
        } else {
            Classified::Empty(PqNode::Leaf(e))
        }),
        PqNode::P(children) => {
            let (empties, fulls, mut partials) = split_children(children, s)?;
            match partials.len() {
                0 => match (empties.is_empty(), fulls.is_empty()) {
                    (false, true) => Ok(Classified::Empty(group(empties))),
                    (true, false) => Ok(Classified::Full(group(fulls))),
                    (false, false) => Ok(Classified::Partial(vec![group(empties), group(fulls)])),
                    (true, true) => unreachable!("P node without children"),
                },
                1 => {
                    let mut seq: Vec<PqNode<E>> = Vec::new();
                    if !empties.is_empty() {
                        seq.push(group(empties));
                    }
                    seq.extend(partials.pop().unwrap());
                    if !fulls.is_empty() {
                        seq.push(group(fulls));
                    }
                    Ok(Classified::Partial(seq))
                }
                _ => Err(ReduceFailed),
            }
        }
        PqNode::Q(children) => {
            let classified: Vec<Classified<E>> = children
                .into_iter()
                .map(|c| classify(c, s))
                .collect::<Result<_, _>>()?;
            if classified
                .iter()
                .all(|c| matches!(c, Classified::Empty(_)))
            {
                let cs = classified
                    .into_iter()
                    .map(|c| match c {
                        Classified::Empty(n) => n,
                        _ => unreachable!(),
                    })
                    .collect();
                return Ok(Classified::Empty(make_q(cs)));
            }
            if classified.iter().all(|c| matches!(c, Classified::Full(_))) {
                let cs = classified
                    .into_iter()
                    .map(|c| match c {
                        Classified::Full(n) => n,
                        _ => unreachable!(),
                    })
                    .collect();
                return Ok(Classified::Full(make_q(cs)));
            }
            // Singly partial: children must read empties, then at most one
            // partial, then fulls — in the given order or reversed.
            fn splice<E: Ord + Clone>(
                classified: Vec<Classified<E>>,
            ) -> Result<Vec<PqNode<E>>, Vec<Classified<E>>> {
                #[derive(PartialEq, Eq, PartialOrd, Ord, Clone, Copy)]
                enum Phase {
                    Empty,
                    Full,
                }
                let mut phase = Phase::Empty;
                for (i, c) in classified.iter().enumerate() {
                    match (c, phase) {
                        (Classified::Empty(_), Phase::Empty) => {}
                        (Classified::Full(_), _) => phase = Phase::Full,
                        (Classified::Partial(_), Phase::Empty) => {
                            // Partial must be the pivot between empties and fulls.
                            if classified[i + 1..]
                                .iter()
                                .any(|c| !matches!(c, Classified::Full(_)))
                            {
                                return Err(classified);
                            }
                            phase = Phase::Full;
                        }
                        _ => return Err(classified),
                    }
                }
                let mut seq = Vec::new();
                for c in classified {
                    match c {
                        Classified::Empty(n) | Classified::Full(n) => seq.push(n),
                        Classified::Partial(p_seq) => seq.extend(p_seq),
                    }
                }
                Ok(seq)
            }
            match splice(classified) {
                Ok(seq) => Ok(Classified::Partial(seq)),
                Err(mut classified) => {
                    classified.reverse();
                    match splice(classified) {
                        Ok(seq) => Ok(Classified::Partial(seq)),
                        Err(_) => Err(ReduceFailed),
                    }
                }
            }
        }
    }
}

type Split<E> = (Vec<PqNode<E>>, Vec<PqNode<E>>, Vec<Vec<PqNode<E>>>);

fn split_children<E: Ord + Clone>(
    children: Vec<PqNode<E>>,
    s: &BTreeSet<E>,
) -> Result<Split<E>, ReduceFailed> {
    let mut empties = Vec::new();
    let mut fulls = Vec::new();
    let mut partials = Vec::new();
    for child in children {
        match classify(child, s)? {
            Classified::Empty(n) => empties.push(n),
            Classified::Full(n) => fulls.push(n),
            Classified::Partial(seq) => partials.push(seq),
        }
    }
    if partials.len() > 2 {
        return Err(ReduceFailed);
    }
    Ok((empties, fulls, partials))
}

/// Streams every admissible frontier of the worklist, aborting when the sink
/// returns false. Returns false when aborted.
fn lay_out<E: Ord + Clone>(
    work: &[&PqNode<E>],
    prefix: &mut Vec<E>,
    sink: &mut impl FnMut(&[E]) -> bool,
) -> bool {
    match work.split_first() {
        None => sink(prefix),
        Some((node, rest)) => match node {
            PqNode::Leaf(e) => {
                prefix.push(e.clone());
                let go_on = lay_out(rest, prefix, sink);
                prefix.pop();
                go_on
            }
            PqNode::Q(children) => {
                let forward: Vec<&PqNode<E>> =
                    children.iter().chain(rest.iter().copied()).collect();
                if !lay_out(&forward, prefix, sink) {
                    return false;
                }
                let backward: Vec<&PqNode<E>> =
                    children.iter().rev().chain(rest.iter().copied()).collect();
                lay_out(&backward, prefix, sink)
            }
            PqNode::P(children) => {
                let mut indices: Vec<usize> = (0..children.len()).collect();
                permute(&mut indices, 0, &mut |perm| {
                    let work: Vec<&PqNode<E>> = perm
                        .iter()
                        .map(|&i| &children[i])
                        .chain(rest.iter().copied())
                        .collect();
                    lay_out(&work, prefix, sink)
                })
            }
        },
    }
}

/// Lexicographic-ish recursive permutation generation with early abort.
fn permute(indices: &mut Vec<usize>, from: usize, visit: &mut impl FnMut(&[usize]) -> bool) -> bool {
    if from == indices.len() {
        return visit(indices);
    }
    for i in from..indices.len() {
        indices.swap(from, i);
        if !permute(indices, from + 1, visit) {
            return false;
        }
        indices.swap(from, i);
    }
    true
}

impl<E: Ord + Clone + fmt::Display> fmt::Display for PqTree<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn rec<E: fmt::Display>(node: &PqNode<E>, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match node {
                PqNode::Leaf(e) => write!(f, "{e}"),
                PqNode::P(cs) | PqNode::Q(cs) => {
                    write!(f, "{}(", if matches!(node, PqNode::P(_)) { "P" } else { "Q" })?;
                    for (i, c) in cs.iter().enumerate() {
                        if i > 0 {
                            write!(f, " ")?;
                        }
                        rec(c, f)?;
                    }
                    write!(f, ")")
                }
            }
        }
        rec(&self.root, f)
    }
}

impl<E: Ord + Clone + fmt::Debug> fmt::Debug for PqTree<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn rec<E: fmt::Debug>(node: &PqNode<E>, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match node {
                PqNode::Leaf(e) => write!(f, "{e:?}"),
                PqNode::P(cs) | PqNode::Q(cs) => {
                    write!(f, "{}(", if matches!(node, PqNode::P(_)) { "P" } else { "Q" })?;
                    for (i, c) in cs.iter().enumerate() {
                        if i > 0 {
                            write!(f, " ")?;
                        }
                        rec(c, f)?;
                    }
                    write!(f, ")")
                }
            }
        }
        rec(&self.root, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(items: &[u32]) -> BTreeSet<u32> {
        items.iter().copied().collect()
    }

    fn frontiers(t: &PqTree<u32>) -> BTreeSet<Vec<u32>> {
        t.enumerate_frontiers(usize::MAX).unwrap().into_iter().collect()
    }

    /// All permutations of the ground set where every reduced set is consecutive.
    fn brute_force(ground: &[u32], sets: &[BTreeSet<u32>]) -> BTreeSet<Vec<u32>> {
        let mut out = BTreeSet::new();
        let mut idx: Vec<usize> = (0..ground.len()).collect();
        permute(&mut idx, 0, &mut |perm| {
            let order: Vec<u32> = perm.iter().map(|&i| ground[i]).collect();
            if sets.iter().all(|s| is_consecutive(&order, s)) {
                out.insert(order);
            }
            true
        });
        out
    }

    fn is_consecutive(order: &[u32], s: &BTreeSet<u32>) -> bool {
        let positions: Vec<usize> = order
            .iter()
            .enumerate()
            .filter(|(_, e)| s.contains(e))
            .map(|(i, _)| i)
            .collect();
        positions.windows(2).all(|w| w[1] == w[0] + 1)
    }

    #[test]
    fn empty_universe_is_rejected() {
        assert!(PqTree::<u32>::new([]).is_err());
    }

    #[test]
    fn universal_tree_frontier_counts() {
        assert_eq!(frontiers(&PqTree::new([1u32]).unwrap()).len(), 1);
        assert_eq!(frontiers(&PqTree::new([1u32, 2]).unwrap()).len(), 2);
        assert_eq!(frontiers(&PqTree::new([1u32, 2, 3]).unwrap()).len(), 6);
    }

    #[test]
    fn q_node_admits_exactly_two_orders() {
        let t = PqTree::from_root(PqNode::Q(vec![
            PqNode::Leaf(1u32),
            PqNode::Leaf(2),
            PqNode::Leaf(3),
        ]));
        let fs = frontiers(&t);
        assert_eq!(fs, [vec![1, 2, 3], vec![3, 2, 1]].into_iter().collect());
    }

    #[test]
    fn reduction_sequence_on_three_elements() {
        let mut t = PqTree::new([1u32, 2, 3]).unwrap();
        assert!(t.reduce(&set(&[1, 2])).unwrap());
        assert_eq!(
            frontiers(&t),
            brute_force(&[1, 2, 3], &[set(&[1, 2])])
        );
        assert_eq!(frontiers(&t).len(), 4);

        assert!(t.reduce(&set(&[2, 3])).unwrap());
        assert_eq!(
            frontiers(&t),
            [vec![1, 2, 3], vec![3, 2, 1]].into_iter().collect()
        );

        let before = t.clone();
        assert!(!t.reduce(&set(&[1, 3])).unwrap());
        assert_eq!(t, before, "failed reduction must not change the tree");
    }

    #[test]
    fn foreign_elements_error() {
        let mut t = PqTree::new([1u32, 2]).unwrap();
        assert!(t.reduce(&set(&[1, 7])).is_err());
    }

    #[test]
    fn reduce_is_idempotent() {
        let mut t = PqTree::new([1u32, 2, 3, 4, 5]).unwrap();
        assert!(t.reduce(&set(&[2, 3, 4])).unwrap());
        let once = t.clone();
        assert!(t.reduce(&set(&[2, 3, 4])).unwrap());
        assert_eq!(frontiers(&once), frontiers(&t));
    }

    #[test]
    fn enumeration_guard_trips() {
        let t = PqTree::new(0u32..11).unwrap();
        assert!(matches!(
            t.enumerate_frontiers(10),
            Err(PqError::EnumerationGuard { .. })
        ));
    }

    #[test]
    fn random_reduction_sequences_match_brute_force() {
        // Deterministic pseudo-random sequences over small universes.
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for n in 2..=6u32 {
            for _case in 0..40 {
                let ground: Vec<u32> = (0..n).collect();
                let mut t = PqTree::new(ground.clone()).unwrap();
                let mut applied: Vec<BTreeSet<u32>> = Vec::new();
                for _step in 0..3 {
                    let mut s = BTreeSet::new();
                    for e in &ground {
                        if next() % 2 == 0 {
                            s.insert(*e);
                        }
                    }
                    if s.len() < 2 {
                        continue;
                    }
                    let expect = {
                        let mut sets = applied.clone();
                        sets.push(s.clone());
                        brute_force(&ground, &sets)
                    };
                    let ok = t.reduce(&s).unwrap();
                    if ok {
                        applied.push(s);
                        assert_eq!(frontiers(&t), expect, "sets: {applied:?}");
                    } else {
                        assert!(expect.is_empty(), "sets: {applied:?} + {s:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn display_dump_is_stable() {
        let t = PqTree::from_root(PqNode::P(vec![
            PqNode::Leaf("a".to_string()),
            PqNode::Q(vec![
                PqNode::Leaf("b".to_string()),
                PqNode::Leaf("c".to_string()),
                PqNode::Leaf("d".to_string()),
            ]),
        ]));
        assert_eq!(t.to_string(), "P(a Q(b c d))");
    }
}
