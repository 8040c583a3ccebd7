//! Feedback vertex set by dynamic programming over a nice path decomposition
//! of the interval part, with the deletion set X riding along in every bag.
//!
//! A table record is (F, F_i, P, s): F the deleted X-vertices, F_i the deleted
//! bag vertices of the interval part, P the partition of the surviving bag
//! into connected-component traces, s the deletions spent. A bag is a clique,
//! so at most two of its interval-part vertices may survive; an introduced
//! vertex with two neighbors in one trace block closes a cycle and kills the
//! record. Records with equal key keep the minimum s.

use std::collections::BTreeMap;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::graph::{subsets_of, Graph, VertexId, VertexSet};
use crate::interval::{clique_path_decomposition, make_nice, NiceStep};

use super::{Problem, SolverReport, Witness};

type Blocks = Vec<Vec<VertexId>>;
type Key = (Vec<VertexId>, Vec<VertexId>, Blocks);
type Table = BTreeMap<Key, (usize, VertexSet)>;

/// Counts one guess per record insertion attempted.
pub fn solve_fvs(g: &Graph, x: &VertexSet, target: Option<i64>) -> Result<SolverReport> {
    let start = Instant::now();
    let rest = g.remove_vertices(x);
    let pd = clique_path_decomposition(&rest).map_err(|_| {
        Error::Precondition("solve_fvs: graph minus deletion set is not interval".into())
    })?;
    let nice = make_nice(&pd);
    let steps = nice.steps.as_ref().unwrap();

    let mut explored = 0u64;
    let mut table: Table = BTreeMap::new();
    for f in subsets_of(x) {
        let kept: VertexSet = x.difference(&f).cloned().collect();
        if !g.induced(&kept).is_acyclic() {
            continue;
        }
        let blocks = component_blocks(&g.induced(&kept));
        explored += 1;
        insert_record(
            &mut table,
            (f.iter().cloned().collect(), Vec::new(), blocks),
            f.len(),
            f.clone(),
        );
    }

    let mut bag_interval: VertexSet = VertexSet::new();
    for step in steps {
        let mut next: Table = BTreeMap::new();
        match step {
            NiceStep::Introduce(v) => {
                bag_interval.insert(v.clone());
                for ((f, fi, blocks), (s, witness)) in &table {
                    // Deleting v.
                    if bag_interval.len() - (fi.len() + 1) <= 2 {
                        explored += 1;
                        let mut fi2 = fi.clone();
                        fi2.insert(fi2.binary_search(v).unwrap_err(), v.clone());
                        let mut w2 = witness.clone();
                        w2.insert(v.clone());
                        insert_record(&mut next, (f.clone(), fi2, blocks.clone()), s + 1, w2);
                    }
                    // Keeping v: merge the trace blocks it touches; two edges
                    // into one block would close a cycle.
                    if bag_interval.len() - fi.len() <= 2 {
                        if let Some(blocks2) = merge_blocks(g, v, blocks) {
                            explored += 1;
                            insert_record(
                                &mut next,
                                (f.clone(), fi.clone(), blocks2),
                                *s,
                                witness.clone(),
                            );
                        }
                    }
                }
            }
            NiceStep::Forget(v) => {
                bag_interval.remove(v);
                for ((f, fi, blocks), (s, witness)) in &table {
                    explored += 1;
                    let mut fi2 = fi.clone();
                    let mut blocks2 = blocks.clone();
                    if let Ok(pos) = fi2.binary_search(v) {
                        fi2.remove(pos);
                    } else {
                        for block in &mut blocks2 {
                            block.retain(|u| u != v);
                        }
                        blocks2.retain(|b| !b.is_empty());
                        blocks2.sort();
                    }
                    insert_record(&mut next, (f.clone(), fi2, blocks2), *s, witness.clone());
                }
            }
        }
        table = next;
    }

    let (optimum, witness) = table
        .values()
        .min_by_key(|(s, w)| (*s, w.clone()))
        .cloned()
        .expect("deleting everything is always feasible");
    debug_assert!(g.remove_vertices(&witness).is_acyclic());
    debug_assert_eq!(witness.len(), optimum);
    Ok(SolverReport::new(
        Problem::FeedbackVertexSet,
        optimum as i64,
        Witness::Vertices(witness),
        explored,
        start.elapsed(),
        target,
    ))
}

fn insert_record(table: &mut Table, key: Key, s: usize, witness: VertexSet) {
    match table.get_mut(&key) {
        Some(entry) if (entry.0, &entry.1) <= (s, &witness) => {}
        Some(entry) => *entry = (s, witness),
        None => {
            table.insert(key, (s, witness));
        }
    }
}

fn component_blocks(g: &Graph) -> Blocks {
    let mut blocks: Blocks = g
        .components()
        .into_iter()
        .map(|c| c.into_iter().collect())
        .collect();
    blocks.sort();
    blocks
}

/// Adds `v` to the partition; None when `v` has two neighbors inside a block.
fn merge_blocks(g: &Graph, v: &VertexId, blocks: &Blocks) -> Option<Blocks> {
    let mut merged: Vec<VertexId> = vec![v.clone()];
    let mut rest: Blocks = Vec::with_capacity(blocks.len());
    for block in blocks {
        let touches = block.iter().filter(|u| g.has_edge(v, u)).count();
        match touches {
            0 => rest.push(block.clone()),
            1 => merged.extend(block.iter().cloned()),
            _ => return None,
        }
    }
    merged.sort();
    rest.push(merged);
    rest.sort();
    Some(rest)
}
