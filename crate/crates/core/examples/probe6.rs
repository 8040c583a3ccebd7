use gapgraph::gen::small_graphs_up_to_iso;
use gapgraph::oracles::recognition::recognize_k_gap_brute;
use gapgraph::oracles::OracleGuard;
use gapgraph::recognition::recognize_k_gap;
use std::time::Instant;

fn main() {
    let guard = OracleGuard::default();
    let graphs = small_graphs_up_to_iso(6);
    println!("graphs: {}", graphs.len());
    for k in 0..=1usize {
        let t0 = Instant::now();
        let mut mismatches = 0;
        let mut yes = 0;
        for g in &graphs {
            let expected = recognize_k_gap_brute(g, k, &guard).unwrap();
            let got = recognize_k_gap(g, k).is_some();
            if got != expected { mismatches += 1; println!("MISMATCH k={k}: {:?} expected {expected}", g); }
            if got { yes += 1; }
        }
        println!("k={k}: yes={yes}/156 mismatches={mismatches} elapsed={:?}", t0.elapsed());
    }
}
