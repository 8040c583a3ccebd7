use gapgraph::gen::small_graphs_up_to_iso;
use gapgraph::recognition::recognize_k_gap;
use std::time::Instant;

fn main() {
    let graphs = small_graphs_up_to_iso(6);
    let mut timings: Vec<(std::time::Duration, usize)> = Vec::new();
    for (i, g) in graphs.iter().enumerate() {
        let t1 = Instant::now();
        let _ = recognize_k_gap(g, 2);
        let d = t1.elapsed();
        timings.push((d, i));
        if d.as_millis() > 500 {
            println!("slow #{i}: {d:?} m={} {:?}", g.edge_count(), g);
        }
    }
    timings.sort();
    timings.reverse();
    println!("top5: {:?}", &timings[..5]);
    let total: std::time::Duration = timings.iter().map(|(d, _)| *d).sum();
    println!("total {total:?}");
}
