use gapgraph::gen::small_graphs_up_to_iso;
use gapgraph::oracles::recognition::recognize_k_gap_brute;
use gapgraph::oracles::OracleGuard;
use gapgraph::recognition::recognize_k_gap;
use std::time::Instant;

fn main() {
    let guard = OracleGuard::default();
    let graphs = small_graphs_up_to_iso(6);
    let t0 = Instant::now();
    let mut mism = 0; let mut yes = 0;
    let mut worst = std::time::Duration::ZERO;
    let mut worst_i = 0;
    for (i, g) in graphs.iter().enumerate() {
        let t1 = Instant::now();
        let got = recognize_k_gap(g, 2).is_some();
        let d = t1.elapsed();
        if d > worst { worst = d; worst_i = i; }
        let expected = recognize_k_gap_brute(g, 2, &guard).unwrap();
        if got != expected { mism += 1; println!("MISMATCH #{i}: got {got} expected {expected} {:?}", g); }
        if got { yes += 1; }
    }
    println!("k=2 n=6 all-classes: yes={yes}/156 mismatches={mism} total={:?} worst={worst:?} (#{worst_i})", t0.elapsed());
}
