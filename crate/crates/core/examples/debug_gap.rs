use gapgraph::graph::Graph;
use gapgraph::mir::{build_graph_from_representation, Interval, Mir, validate_representation};
use gapgraph::graph::VertexId;
use std::collections::BTreeMap;

fn main() {
    let g = Graph::from_edges([
        ("v00","v02"),("v00","v03"),("v00","v04"),("v00","v05"),
        ("v01","v02"),("v01","v03"),("v01","v04"),("v01","v05"),
        ("v02","v03"),("v02","v05"),("v03","v04"),
    ]).unwrap();
    // Brute: find a 1-gap representation by trying each split vertex and
    // exhausting endpoint orders of ALL intervals via simple DFS.
    let vs: Vec<VertexId> = g.vertex_set().into_iter().collect();
    for split in &vs {
        // events: each vertex one interval except split has two.
        let mut counts: BTreeMap<VertexId, usize> = vs.iter().map(|v| (v.clone(), 1)).collect();
        counts.insert(split.clone(), 2);
        if let Some(rep) = search(&g, &counts) {
            println!("split {split}: {}", gapgraph::io::write_mir(&rep));
            assert!(validate_representation(&g, &rep).ok());
            return;
        }
    }
    println!("none found");
}

fn search(g: &Graph, counts: &BTreeMap<VertexId, usize>) -> Option<Mir> {
    let mut remaining = counts.clone();
    let mut active: Vec<VertexId> = Vec::new();
    let mut open_at: BTreeMap<(VertexId, usize), usize> = BTreeMap::new();
    let mut intervals: BTreeMap<VertexId, Vec<Interval>> = BTreeMap::new();
    let mut pos = 0usize;
    fn rec(
        g: &Graph,
        remaining: &mut BTreeMap<VertexId, usize>,
        active: &mut Vec<VertexId>,
        open_at: &mut BTreeMap<(VertexId, usize), usize>,
        intervals: &mut BTreeMap<VertexId, Vec<Interval>>,
        pos: &mut usize,
    ) -> Option<Mir> {
        if active.is_empty() && remaining.values().all(|&c| c == 0) {
            let rep = Mir::new(intervals.clone()).ok()?;
            if validate_representation(g, &rep).ok() {
                return Some(rep);
            }
            return None;
        }
        let vs: Vec<VertexId> = remaining.keys().cloned().collect();
        for v in &vs {
            if remaining[v] == 0 || active.contains(v) { continue; }
            if active.iter().any(|u| !g.has_edge(u, v)) { continue; }
            *remaining.get_mut(v).unwrap() -= 1;
            let idx = intervals.get(v).map_or(0, |l| l.len());
            active.push(v.clone());
            *pos += 1;
            open_at.insert((v.clone(), idx), *pos);
            intervals.entry(v.clone()).or_default().push(Interval::new(*pos as i64, 0));
            if let Some(rep) = rec(g, remaining, active, open_at, intervals, pos) { return Some(rep); }
            intervals.get_mut(v).unwrap().pop();
            open_at.remove(&(v.clone(), idx));
            *pos -= 1;
            active.retain(|u| u != v);
            *remaining.get_mut(v).unwrap() += 1;
        }
        for i in 0..active.len() {
            let v = active[i].clone();
            let fully_closed = remaining[&v] == 0;
            let idx = intervals[&v].len() - 1;
            // prune: closing for good with unrealized adjacency
            if fully_closed {
                let realized_ok = g.neighbors(&v).iter().all(|u| {
                    intervals.get(u).map_or(false, |l1| {
                        intervals[&v].iter().enumerate().any(|(ii, iv)| {
                            let right = if ii == idx { i64::MAX } else { iv.right };
                            l1.iter().enumerate().any(|(jj, ju)| {
                                let jright = if active.contains(u) && jj == l1.len()-1 && remaining[u] == 0 { i64::MAX } else { ju.right };
                                let jright = if active.contains(u) && jj == l1.len()-1 { i64::MAX } else { jright };
                                iv.left.max(ju.left) <= right.min(jright)
                            })
                        })
                    })
                });
                if !realized_ok { continue; }
            }
            *pos += 1;
            active.remove(i);
            let old = intervals.get_mut(&v).unwrap()[idx];
            intervals.get_mut(&v).unwrap()[idx].right = *pos as i64;
            if let Some(rep) = rec(g, remaining, active, open_at, intervals, pos) { return Some(rep); }
            intervals.get_mut(&v).unwrap()[idx] = old;
            active.insert(i, v);
            *pos -= 1;
        }
        None
    }
    rec(g, &mut remaining, &mut active, &mut open_at, &mut intervals, &mut pos)
}
