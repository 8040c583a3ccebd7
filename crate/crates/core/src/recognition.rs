//! Recognition: does a graph admit a multiple interval representation with at
//! most `k` surplus intervals?
//!
//! The search guesses, in order: how many intervals each vertex gets (the
//! split vertices X being those with more than one), the left-to-right order
//! of the X endpoints, and for each display of that partial representation
//! the two outermost cliques beneath it. Each complete guess is checked by
//! PQ-tree consecutivity plus partition constraints, and every candidate
//! representation is validated against the input graph before it is returned,
//! so emitted witnesses are correct by construction.

use std::collections::BTreeMap;

use crate::cliques::enumerate_maximal_cliques;
use crate::graph::{Graph, VertexId, VertexSet};
use crate::interval::recognize_interval;
use crate::mir::{validate_representation, Interval, Mir};
use crate::pqtree::{
    satisfy_partition_constraints_with_precedences, PartitionConstraint, PqTree,
};

/// How many intervals each vertex receives; the split vertices are those with
/// at least two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityGuess {
    pub counts: BTreeMap<VertexId, usize>,
}

impl MultiplicityGuess {
    pub fn split_vertices(&self) -> VertexSet {
        self.counts
            .iter()
            .filter(|(_, &c)| c >= 2)
            .map(|(v, _)| v.clone())
            .collect()
    }

    pub fn gap_total(&self) -> usize {
        self.counts.values().map(|c| c - 1).sum()
    }
}

/// Maximal open span of the line relative to the partial representation of
/// the split vertices: contained in one interval of every owner, disjoint
/// from all other split-vertex intervals. `None` bounds are unbounded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Display {
    pub owner: VertexSet,
    pub left: Option<i64>,
    pub right: Option<i64>,
}

/// All interval-count guesses with surplus up to `k`, by increasing surplus,
/// then lexicographically.
pub fn enumerate_multiplicity_guesses(g: &Graph, k: usize) -> Vec<MultiplicityGuess> {
    let vertices: Vec<VertexId> = g.vertex_set().into_iter().collect();
    let mut out = Vec::new();
    for gaps in 0..=k {
        let mut extra: Vec<usize> = vec![0; vertices.len()];
        distribute(&vertices, &mut extra, 0, gaps, &mut out);
    }
    out
}

fn distribute(
    vertices: &[VertexId],
    extra: &mut Vec<usize>,
    from: usize,
    left: usize,
    out: &mut Vec<MultiplicityGuess>,
) {
    if left == 0 {
        out.push(MultiplicityGuess {
            counts: vertices
                .iter()
                .zip(extra.iter())
                .map(|(v, e)| (v.clone(), e + 1))
                .collect(),
        });
        return;
    }
    if from == vertices.len() {
        return;
    }
    for take in 0..=left {
        extra[from] = take;
        distribute(vertices, extra, from + 1, left - take, out);
        extra[from] = 0;
    }
}

/// All orders of the split-vertex endpoints as partial representations of
/// G[X] on positions 1..2T: assign position owners, pair each vertex's sorted
/// positions consecutively (any other pairing makes its own intervals meet),
/// keep orders whose derived graph is exactly G[X], and drop mirror images.
pub fn enumerate_endpoint_orders(g: &Graph, guess: &MultiplicityGuess) -> Vec<Mir> {
    let x = guess.split_vertices();
    if x.is_empty() {
        return vec![Mir::new(BTreeMap::new()).unwrap()];
    }
    let mut slots: Vec<VertexId> = Vec::new();
    for v in &x {
        for _ in 0..2 * guess.counts[v] {
            slots.push(v.clone());
        }
    }
    let g_x = g.induced(&x);
    let mut out = Vec::new();
    let mut current: Vec<VertexId> = Vec::with_capacity(slots.len());
    let mut remaining: BTreeMap<VertexId, usize> = BTreeMap::new();
    for v in &slots {
        *remaining.entry(v.clone()).or_default() += 1;
    }
    arrange(&mut current, &mut remaining, slots.len(), &mut |order| {
        let mirrored: Vec<VertexId> = order.iter().rev().cloned().collect();
        if *order > mirrored[..] {
            return; // keep one of each mirror pair
        }
        let mut per_vertex: BTreeMap<VertexId, Vec<i64>> = BTreeMap::new();
        for (pos, v) in order.iter().enumerate() {
            per_vertex.entry(v.clone()).or_default().push(pos as i64 + 1);
        }
        let assignment: BTreeMap<VertexId, Vec<Interval>> = per_vertex
            .into_iter()
            .map(|(v, positions)| {
                let intervals = positions
                    .chunks(2)
                    .map(|pair| Interval::new(pair[0], pair[1]))
                    .collect();
                (v, intervals)
            })
            .collect();
        let rep = Mir::new(assignment).expect("positions are distinct and ordered");
        if rep.interval_count() == slots.len() / 2 && validate_representation(&g_x, &rep).ok() {
            out.push(rep);
        }
    });
    out
}

fn arrange(
    current: &mut Vec<VertexId>,
    remaining: &mut BTreeMap<VertexId, usize>,
    total: usize,
    emit: &mut impl FnMut(&[VertexId]),
) {
    if current.len() == total {
        emit(current);
        return;
    }
    let choices: Vec<VertexId> = remaining
        .iter()
        .filter(|(_, &c)| c > 0)
        .map(|(v, _)| v.clone())
        .collect();
    for v in choices {
        *remaining.get_mut(&v).unwrap() -= 1;
        current.push(v.clone());
        arrange(current, remaining, total, emit);
        current.pop();
        *remaining.get_mut(&v).unwrap() += 1;
    }
}

/// Displays of a partial representation, in line order. With no endpoints the
/// whole line is one display owned by nobody.
pub fn displays_of(partial: &Mir) -> Vec<Display> {
    let endpoints = partial.endpoints();
    let mut bounds: Vec<(Option<i64>, Option<i64>)> = Vec::new();
    if endpoints.is_empty() {
        bounds.push((None, None));
    } else {
        bounds.push((None, Some(endpoints[0])));
        for w in endpoints.windows(2) {
            bounds.push((Some(w[0]), Some(w[1])));
        }
        bounds.push((Some(endpoints[endpoints.len() - 1]), None));
    }
    bounds
        .into_iter()
        .map(|(left, right)| {
            let owner = match (left, right) {
                (Some(a), Some(b)) => partial
                    .iter()
                    .filter(|(_, ivs)| ivs.iter().any(|iv| iv.left <= a && b <= iv.right))
                    .map(|(v, _)| v.clone())
                    .collect(),
                _ => VertexSet::new(),
            };
            Display { owner, left, right }
        })
        .collect()
}

/// Decides whether `g` has a representation with at most `k` gaps and returns
/// a validated witness when it does. Guesses are explored in a fixed order;
/// the first witness is returned.
pub fn recognize_k_gap(g: &Graph, k: usize) -> Option<Mir> {
    for guess in enumerate_multiplicity_guesses(g, k) {
        let x = guess.split_vertices();
        if x.is_empty() {
            if let Some(model) = recognize_interval(g) {
                return Some(model.rep);
            }
            continue;
        }
        let rest = g.remove_vertices(&x);
        let Some(rest_model) = recognize_interval(&rest) else {
            continue;
        };
        let enumeration =
            enumerate_maximal_cliques(g, &x).expect("remainder verified interval above");
        for partial in enumerate_endpoint_orders(g, &guess) {
            if let Some(rep) = extend_partial(g, &x, &partial, &rest_model.cliques, &enumeration.cliques)
            {
                debug_assert!(validate_representation(g, &rep).ok());
                debug_assert!(rep.gap_count() <= k);
                return Some(rep);
            }
        }
    }
    None
}

/// One leaf of the layout tree: a clique occurrence that will become a column
/// of the final representation.
#[derive(Clone, Debug)]
struct Leaf {
    set: VertexSet,
    /// Split-vertex part of the originating maximal clique; bounds which
    /// spans may host a floating column.
    owner_cap: VertexSet,
}

/// Tries to extend the partial representation of the split vertices to all of
/// `g`. `rest_cliques` are the maximal cliques of g − X; `all_cliques` of g.
///
/// The outer-clique search proceeds owner by owner. Restricting a frontier
/// with consecutive vertex incidences to a leaf subset keeps the incidences
/// consecutive, so infeasibility of the leaves chosen so far soundly prunes
/// the whole subtree.
fn extend_partial(
    g: &Graph,
    x: &VertexSet,
    partial: &Mir,
    rest_cliques: &[VertexSet],
    all_cliques: &[VertexSet],
) -> Option<Mir> {
    let displays = displays_of(partial);

    // Candidate outer cliques per display owner: maximal cliques of the
    // remainder and their pairwise intersections, cut to the owner's common
    // neighborhood.
    let mut k_pool: Vec<VertexSet> = rest_cliques.to_vec();
    for i in 0..rest_cliques.len() {
        for j in i + 1..rest_cliques.len() {
            let inter: VertexSet = rest_cliques[i]
                .intersection(&rest_cliques[j])
                .cloned()
                .collect();
            if !inter.is_empty() && !k_pool.contains(&inter) {
                k_pool.push(inter);
            }
        }
    }
    k_pool.sort();
    let owner_candidates = |owner: &VertexSet| -> Vec<VertexSet> {
        let mut common: VertexSet = g.vertices().filter(|v| !x.contains(*v)).cloned().collect();
        for v in owner {
            common = common.intersection(g.neighbors(v)).cloned().collect();
        }
        let mut out: Vec<VertexSet> = Vec::new();
        for kq in &k_pool {
            let cut: VertexSet = kq.intersection(&common).cloned().collect();
            if !cut.is_empty() && !out.contains(&cut) {
                out.push(cut);
            }
        }
        out
    };

    // The content each graph clique contributes: its part outside X, grouped
    // by its X-part (which determines the hosting owner).
    let mut content_by_owner: BTreeMap<VertexSet, Vec<VertexSet>> = BTreeMap::new();
    let mut unowned_contents: Vec<VertexSet> = Vec::new();
    for kq in all_cliques {
        let rest: VertexSet = kq.difference(x).cloned().collect();
        if rest.is_empty() {
            continue; // realized inside the partial representation
        }
        let x_part: VertexSet = kq.intersection(x).cloned().collect();
        if x_part.is_empty() {
            unowned_contents.push(rest);
        } else {
            // Every owned clique needs a display with exactly its X-part.
            if !displays.iter().any(|d| d.owner == x_part) {
                return None;
            }
            content_by_owner.entry(x_part).or_default().push(rest);
        }
    }

    // One search unit per non-empty owner: its displays in line order, the
    // guess options per display, and its content cliques. Owners with content
    // go first so their failures prune early.
    let mut owners: Vec<VertexSet> = displays
        .iter()
        .filter(|d| !d.owner.is_empty())
        .map(|d| d.owner.clone())
        .collect();
    owners.sort();
    owners.dedup();
    owners.sort_by_key(|o| {
        (
            std::cmp::Reverse(content_by_owner.get(o).map_or(0, Vec::len)),
            o.clone(),
        )
    });
    let plans: Vec<OwnerPlan> = owners
        .into_iter()
        .map(|owner| {
            let display_ids: Vec<usize> = displays
                .iter()
                .enumerate()
                .filter(|(_, d)| d.owner == owner)
                .map(|(i, _)| i)
                .collect();
            let cands = owner_candidates(&owner);
            let mut options: Vec<Option<(VertexSet, VertexSet)>> = vec![None];
            for a in &cands {
                for b in &cands {
                    options.push(Some((a.clone(), b.clone())));
                }
            }
            let contents = content_by_owner.get(&owner).cloned().unwrap_or_default();
            OwnerPlan {
                owner,
                display_ids,
                options,
                contents,
            }
        })
        .collect();

    let mut state = SearchState {
        g,
        x,
        partial,
        displays: &displays,
        plans: &plans,
        unowned_contents: &unowned_contents,
        leaves: Vec::new(),
        active: Vec::new(),
        window_members: BTreeMap::new(),
        optional: Vec::new(),
    };
    state.search_owner(0)
}

struct OwnerPlan {
    owner: VertexSet,
    display_ids: Vec<usize>,
    options: Vec<Option<(VertexSet, VertexSet)>>,
    contents: Vec<VertexSet>,
}

struct SearchState<'a> {
    g: &'a Graph,
    x: &'a VertexSet,
    partial: &'a Mir,
    displays: &'a [Display],
    plans: &'a [OwnerPlan],
    unowned_contents: &'a [VertexSet],
    leaves: Vec<Leaf>,
    /// (display id, first leaf, last leaf) per guessed-active display.
    active: Vec<(usize, usize, usize)>,
    window_members: BTreeMap<VertexSet, Vec<usize>>,
    /// Content cliques that may float; resolved in the final coverage pass.
    optional: Vec<(VertexSet, VertexSet)>,
}

impl SearchState<'_> {
    fn search_owner(&mut self, owner_idx: usize) -> Option<Mir> {
        if owner_idx == self.plans.len() {
            return self.finalize();
        }
        self.search_display(owner_idx, 0)
    }

    fn search_display(&mut self, owner_idx: usize, pos: usize) -> Option<Mir> {
        let plan = &self.plans[owner_idx];
        if pos == plan.display_ids.len() {
            return self.classify_and_descend(owner_idx);
        }
        let display_id = plan.display_ids[pos];
        for opt in &plan.options {
            let leaves_mark = self.leaves.len();
            let active_mark = self.active.len();
            if let Some((first_set, last_set)) = opt {
                let first = self.leaves.len();
                self.leaves.push(Leaf {
                    set: first_set.clone(),
                    owner_cap: plan.owner.clone(),
                });
                let last = self.leaves.len();
                self.leaves.push(Leaf {
                    set: last_set.clone(),
                    owner_cap: plan.owner.clone(),
                });
                self.active.push((display_id, first, last));
            }
            if self.consecutivity_feasible() {
                if let Some(rep) = self.search_display(owner_idx, pos + 1) {
                    return Some(rep);
                }
            }
            self.leaves.truncate(leaves_mark);
            self.active.truncate(active_mark);
        }
        None
    }

    /// All displays of this owner are decided: sort its content cliques into
    /// merged / window / optional-floating, then move to the next owner.
    fn classify_and_descend(&mut self, owner_idx: usize) -> Option<Mir> {
        let plan = &self.plans[owner_idx];
        let owner_active: Vec<(usize, usize, usize)> = self
            .active
            .iter()
            .filter(|(d, _, _)| self.displays[*d].owner == plan.owner)
            .copied()
            .collect();
        let leaves_mark = self.leaves.len();
        let optional_mark = self.optional.len();
        let mut window_added = 0usize;
        let mut ok = true;
        for rest in &plan.contents {
            if owner_active.is_empty() {
                ok = false; // the guess leaves this clique homeless
                break;
            }
            // Merge with an outer occurrence carrying the same vertex set.
            if owner_active
                .iter()
                .any(|(_, f, l)| self.leaves[*f].set == *rest || self.leaves[*l].set == *rest)
            {
                continue;
            }
            let outer_sequence: Vec<&VertexSet> = owner_active
                .iter()
                .flat_map(|(_, f, l)| [&self.leaves[*f].set, &self.leaves[*l].set])
                .collect();
            let missing_everywhere = rest
                .iter()
                .any(|v| !outer_sequence.iter().any(|o| o.contains(v)));
            let covered_between = (1..outer_sequence.len().saturating_sub(1))
                .step_by(2)
                .any(|i| {
                    rest.iter().all(|v| {
                        outer_sequence[i].contains(v) || outer_sequence[i + 1].contains(v)
                    })
                });
            let covered_within = (0..outer_sequence.len()).step_by(2).any(|i| {
                rest.iter()
                    .all(|v| outer_sequence[i].contains(v) || outer_sequence[i + 1].contains(v))
            });
            if missing_everywhere || (covered_within && !covered_between) {
                let leaf_id = self.leaves.len();
                self.leaves.push(Leaf {
                    set: rest.clone(),
                    owner_cap: plan.owner.clone(),
                });
                self.window_members
                    .entry(plan.owner.clone())
                    .or_default()
                    .push(leaf_id);
                window_added += 1;
            } else if covered_between {
                self.optional.push((rest.clone(), plan.owner.clone()));
            } else {
                ok = false; // no consecutive outer pair covers the clique
                break;
            }
        }
        let mut result = None;
        if ok && self.consecutivity_feasible() {
            result = self.search_owner(owner_idx + 1);
        }
        if result.is_none() {
            self.leaves.truncate(leaves_mark);
            self.optional.truncate(optional_mark);
            if window_added > 0 {
                let members = self.window_members.get_mut(&plan.owner).unwrap();
                let keep = members.len() - window_added;
                members.truncate(keep);
                if members.is_empty() {
                    self.window_members.remove(&plan.owner);
                }
            }
        }
        result
    }

    /// Sound pruning: the final leaf set extends the current one, and
    /// restricting a consecutive arrangement to a subset stays consecutive.
    fn consecutivity_feasible(&self) -> bool {
        if self.leaves.len() <= 2 {
            return true;
        }
        let mut tree = PqTree::new(0..self.leaves.len()).unwrap();
        for v in self.g.vertices().filter(|v| !self.x.contains(*v)) {
            let incidence: std::collections::BTreeSet<usize> = self
                .leaves
                .iter()
                .enumerate()
                .filter(|(_, leaf)| leaf.set.contains(v))
                .map(|(i, _)| i)
                .collect();
            if incidence.len() >= 2 && !tree.reduce(&incidence).unwrap() {
                return false;
            }
        }
        true
    }

    /// Every owner is decided: run the optional-column coverage pass, the full
    /// consecutivity reduction, the partition constraints, and the sweep.
    fn finalize(&mut self) -> Option<Mir> {
        let mut leaves = self.leaves.clone();
        let optionals: Vec<(VertexSet, VertexSet)> = self
            .unowned_contents
            .iter()
            .map(|rest| (rest.clone(), VertexSet::new()))
            .chain(self.optional.iter().cloned())
            .collect();
        // Add optional columns while some edge or vertex of the remainder
        // lacks a witnessing column.
        for (rest, x_part) in optionals {
            let vs: Vec<&VertexId> = rest.iter().collect();
            let mut needed = vs.len() == 1 && !leaves.iter().any(|l| l.set.contains(vs[0]));
            'pairs: for i in 0..vs.len() {
                for j in i + 1..vs.len() {
                    if !leaves
                        .iter()
                        .any(|l| l.set.contains(vs[i]) && l.set.contains(vs[j]))
                    {
                        needed = true;
                        break 'pairs;
                    }
                }
            }
            if needed {
                leaves.push(Leaf {
                    set: rest,
                    owner_cap: x_part,
                });
            }
        }

        if leaves.is_empty() {
            // No vertices outside X: the partial representation is the answer.
            let rep = self.partial.clone();
            return validate_representation(self.g, &rep).ok().then_some(rep);
        }

        // Consecutive vertex incidences over the full leaf set.
        let mut tree = PqTree::new(0..leaves.len()).unwrap();
        for v in self.g.vertices().filter(|v| !self.x.contains(*v)) {
            let incidence: std::collections::BTreeSet<usize> = leaves
                .iter()
                .enumerate()
                .filter(|(_, leaf)| leaf.set.contains(v))
                .map(|(i, _)| i)
                .collect();
            if incidence.is_empty() || !tree.reduce(&incidence).unwrap() {
                return None;
            }
        }

        let mut active = self.active.clone();
        active.sort_by_key(|(d, _, _)| *d);

        // Partition constraints: per owner, its active displays in line order.
        let mut constraints: Vec<PartitionConstraint<usize>> = Vec::new();
        let mut owners_seen: Vec<VertexSet> = Vec::new();
        for (d, _, _) in &active {
            let owner = &self.displays[*d].owner;
            if owners_seen.contains(owner) {
                continue;
            }
            owners_seen.push(owner.clone());
            let parts: Vec<(usize, usize)> = active
                .iter()
                .filter(|(dd, _, _)| self.displays[*dd].owner == *owner)
                .map(|(_, f, l)| (*f, *l))
                .collect();
            let mut scope: std::collections::BTreeSet<usize> =
                parts.iter().flat_map(|&(f, l)| [f, l]).collect();
            for leaf in self.window_members.get(owner).into_iter().flatten() {
                scope.insert(*leaf);
            }
            constraints.push(PartitionConstraint::new(parts, scope));
        }

        // Display windows follow the line order across owners.
        let mut precedences: Vec<(usize, usize)> = Vec::new();
        for pair in active.windows(2) {
            precedences.push((pair[0].2, pair[1].1));
        }

        let solution =
            satisfy_partition_constraints_with_precedences(&tree, &constraints, &precedences)
                .expect("constraint family is well-formed by construction")?;

        // Map window leaves to their concrete display through the part order.
        let mut leaf_display: BTreeMap<usize, usize> = BTreeMap::new();
        for (constraint_idx, owner) in owners_seen.iter().enumerate() {
            let owner_displays: Vec<usize> = active
                .iter()
                .filter(|(d, _, _)| self.displays[*d].owner == *owner)
                .map(|(d, _, _)| *d)
                .collect();
            for (part_idx, part) in solution.partitions[constraint_idx].iter().enumerate() {
                for leaf in part {
                    leaf_display.insert(*leaf, owner_displays[part_idx]);
                }
            }
        }

        lay_out_columns(
            self.g,
            self.x,
            self.partial,
            self.displays,
            &leaves,
            &solution.ordering,
            &leaf_display,
        )
    }
}

/// Final geometry: interleave the columns with the split-vertex endpoints.
/// Window leaves go inside their display's span; floating leaves try every
/// admissible span between their anchored neighbors. The first arrangement
/// whose derived graph is exactly `g` wins.
fn lay_out_columns(
    g: &Graph,
    x: &VertexSet,
    partial: &Mir,
    displays: &[Display],
    leaves: &[Leaf],
    ordering: &[usize],
    leaf_display: &BTreeMap<usize, usize>,
) -> Option<Mir> {
    // Anchored positions: span index per ordering slot where known.
    let anchors: Vec<Option<usize>> = ordering
        .iter()
        .map(|leaf| leaf_display.get(leaf).copied())
        .collect();
    // Anchors must be weakly monotone along the ordering; the precedences
    // guarantee it across displays, but re-check cheaply.
    {
        let known: Vec<usize> = anchors.iter().flatten().copied().collect();
        if known.windows(2).any(|w| w[1] < w[0]) {
            return None;
        }
    }

    // Candidate spans per floating leaf: between the nearest anchors, owner
    // contained in the clique's X-part.
    let m = displays.len();
    let mut slots: Vec<Vec<usize>> = Vec::with_capacity(ordering.len());
    for (pos, leaf) in ordering.iter().enumerate() {
        match anchors[pos] {
            Some(d) => slots.push(vec![d]),
            None => {
                let lo = anchors[..pos].iter().flatten().max().copied().unwrap_or(0);
                let hi = anchors[pos..]
                    .iter()
                    .flatten()
                    .min()
                    .copied()
                    .unwrap_or(m - 1);
                let cap = &leaves[*leaf].owner_cap;
                let candidates: Vec<usize> = (lo..=hi)
                    .filter(|&d| displays[d].owner.is_subset(cap))
                    .collect();
                if candidates.is_empty() {
                    return None;
                }
                slots.push(candidates);
            }
        }
    }

    // Monotone assignment search over the floating slots.
    let mut assignment: Vec<usize> = vec![0; ordering.len()];
    fn search(
        pos: usize,
        min_span: usize,
        slots: &[Vec<usize>],
        assignment: &mut Vec<usize>,
        build: &mut impl FnMut(&[usize]) -> Option<Mir>,
    ) -> Option<Mir> {
        if pos == slots.len() {
            return build(assignment);
        }
        for &d in &slots[pos] {
            if d < min_span {
                continue;
            }
            assignment[pos] = d;
            if let Some(rep) = search(pos + 1, d, slots, assignment, build) {
                return Some(rep);
            }
        }
        None
    }
    let mut build = |assignment: &[usize]| -> Option<Mir> {
        build_candidate(g, x, partial, leaves, ordering, assignment)
    };
    search(0, 0, &slots, &mut assignment, &mut build)
}

/// Assigns integer coordinates: walk the spans left to right, interleaving
/// split-vertex endpoints with the columns assigned to each span, then read
/// off every vertex's interval and validate.
fn build_candidate(
    g: &Graph,
    x: &VertexSet,
    partial: &Mir,
    leaves: &[Leaf],
    ordering: &[usize],
    assignment: &[usize],
) -> Option<Mir> {
    let endpoints = partial.endpoints();
    let mut coord_of_endpoint: BTreeMap<i64, i64> = BTreeMap::new();
    let mut column_coord: BTreeMap<usize, i64> = BTreeMap::new(); // leaf -> coordinate
    let mut next = 0i64;
    for span in 0..=endpoints.len() {
        for (pos, leaf) in ordering.iter().enumerate() {
            if assignment[pos] == span {
                next += 1;
                column_coord.insert(*leaf, next);
            }
        }
        if span < endpoints.len() {
            next += 1;
            coord_of_endpoint.insert(endpoints[span], next);
        }
    }

    let mut map: BTreeMap<VertexId, Vec<Interval>> = BTreeMap::new();
    for (v, ivs) in partial.iter() {
        map.insert(
            v.clone(),
            ivs.iter()
                .map(|iv| Interval::new(coord_of_endpoint[&iv.left], coord_of_endpoint[&iv.right]))
                .collect(),
        );
    }
    for v in g.vertices().filter(|v| !x.contains(*v)) {
        let cols: Vec<i64> = ordering
            .iter()
            .filter(|leaf| leaves[**leaf].set.contains(v))
            .map(|leaf| column_coord[leaf])
            .collect();
        let (min, max) = (cols.iter().min()?, cols.iter().max()?);
        map.insert(v.clone(), vec![Interval::new(*min, *max)]);
    }
    let rep = Mir::new(map).ok()?;
    // Interval merging must not have eaten a gap (it cannot: coordinates are
    // distinct), and the derived graph must be exactly the input.
    if rep.interval_count() != partial.interval_count() + g.vertex_count() - x.len() {
        return None;
    }
    validate_representation(g, &rep).ok().then_some(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::gen;

    #[test]
    fn interval_graphs_need_no_gaps() {
        for g in [fixtures::p3(), fixtures::k3()] {
            let rep = recognize_k_gap(&g, 0).unwrap();
            assert!(validate_representation(&g, &rep).ok());
            assert_eq!(rep.gap_count(), 0);
        }
    }

    #[test]
    fn c4_requires_one_gap() {
        let g = fixtures::c4();
        assert!(recognize_k_gap(&g, 0).is_none());
        let rep = recognize_k_gap(&g, 1).unwrap();
        assert!(validate_representation(&g, &rep).ok());
        assert_eq!(rep.gap_count(), 1);
    }

    #[test]
    fn monotone_in_k() {
        let g = fixtures::c4();
        assert!(recognize_k_gap(&g, 2).is_some());
        assert!(recognize_k_gap(&g, 3).is_some());
    }

    #[test]
    fn c5_requires_one_gap() {
        let g = fixtures::c5();
        assert!(recognize_k_gap(&g, 0).is_none());
        let rep = recognize_k_gap(&g, 1).unwrap();
        assert!(validate_representation(&g, &rep).ok());
    }

    #[test]
    fn identified_interval_graphs_are_recognized() {
        for seed in 0..6 {
            let g = gen::identify_instance(6, 1, seed).unwrap();
            let rep = recognize_k_gap(&g, 1);
            assert!(rep.is_some(), "seed {seed}: {g:?}");
            assert!(validate_representation(&g, &rep.unwrap()).ok());
        }
    }

    #[test]
    fn displays_of_partial_rep() {
        let mut map = BTreeMap::new();
        map.insert(
            VertexId::from("b1"),
            vec![Interval::new(1, 2), Interval::new(6, 8)],
        );
        let partial = Mir::new(map).unwrap();
        let displays = displays_of(&partial);
        assert_eq!(displays.len(), 5);
        let owners: Vec<usize> = displays.iter().map(|d| d.owner.len()).collect();
        assert_eq!(owners, vec![0, 1, 0, 1, 0]);
        assert_eq!(displays[1].left, Some(1));
        assert_eq!(displays[1].right, Some(2));
    }

    #[test]
    fn empty_x_has_one_unbounded_display() {
        let partial = Mir::new(BTreeMap::new()).unwrap();
        let displays = displays_of(&partial);
        assert_eq!(displays.len(), 1);
        assert!(displays[0].owner.is_empty());
        assert_eq!((displays[0].left, displays[0].right), (None, None));
    }

    #[test]
    fn endpoint_orders_for_single_split_vertex() {
        let g = fixtures::c4();
        let mut counts: BTreeMap<VertexId, usize> =
            g.vertices().map(|v| (v.clone(), 1)).collect();
        counts.insert("b1".into(), 2);
        let guess = MultiplicityGuess { counts };
        let orders = enumerate_endpoint_orders(&g, &guess);
        // A lone split vertex admits exactly one order up to mirroring.
        assert_eq!(orders.len(), 1);
        assert_eq!(orders[0].intervals(&"b1".into()).len(), 2);
    }
}
