use gapgraph::graph::{Graph, VertexId};
use gapgraph::oracles::recognition::recognize_k_gap_brute;
use gapgraph::oracles::OracleGuard;
use gapgraph::recognition::recognize_k_gap;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new();
    let vs: Vec<VertexId> = (0..n).map(|i| VertexId::new(format!("v{i:02}"))).collect();
    for v in &vs { g.add_vertex(v.clone()); }
    for i in 0..n { for j in i+1..n {
        if rng.gen_bool(p) { g.add_edge(&vs[i], &vs[j]).unwrap(); }
    }}
    g
}

fn main() {
    let guard = OracleGuard::default();
    let t0 = Instant::now();
    let mut mism = 0; let mut yes = 0; let mut worst = std::time::Duration::ZERO;
    for seed in 0..100u64 {
        let p = [0.3, 0.5, 0.7][(seed % 3) as usize];
        let g = random_graph(6, p, seed);
        let t1 = Instant::now();
        let got = recognize_k_gap(&g, 2).is_some();
        let mine = t1.elapsed();
        let t2 = Instant::now();
        let expected = recognize_k_gap_brute(&g, 2, &guard).unwrap();
        let oracle_time = t2.elapsed();
        worst = worst.max(mine);
        if got != expected { mism += 1; println!("MISMATCH seed {seed}: got {got} expected {expected} {:?}", g); }
        if got { yes += 1; }
        if seed % 20 == 0 { println!("seed {seed}: mine {mine:?} oracle {oracle_time:?}"); }
    }
    println!("k=2 n=6: yes={yes}/100 mismatches={mism} total={:?} worst-single={worst:?}", t0.elapsed());
}
