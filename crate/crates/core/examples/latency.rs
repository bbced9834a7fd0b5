//! Clock-cycle latency estimates for a range of list sizes.
//!
//! ```bash
//! cargo run --release --example latency
//! ```

use ordept::sim::estimate_latency_cycles;

fn main() {
    println!("{:>8} {:>6} {:>6} {:>6}", "qmax", "c=1", "c=4", "c=16");
    for q in [1, 256, 1024, 4096, 16384] {
        let row: Vec<String> = [1, 4, 16]
            .iter()
            .map(|&c| format!("{:>6}", estimate_latency_cycles(q, 256, 256, Some(c))))
            .collect();
        println!("{q:>8} {}", row.join(" "));
    }
}
