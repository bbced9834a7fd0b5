//! Query lists ordered by logistic weight, and their parity split.
//!
//! ```bash
//! cargo run --release --example query_list
//! ```

use ordept::patterns::{generate_query_list, split_by_parity};

fn main() {
    let list = generate_query_list(256, 20);
    println!("first {} patterns for n = 256:", list.len());
    for (i, p) in list.patterns().iter().enumerate() {
        println!("{:>3}  lw = {:>2}  {:?}", i + 1, p.logistic_weight(), p.ranks());
    }

    let big = generate_query_list(256, 1 << 14);
    let (even, odd) = split_by_parity(&big, 1);
    println!("2^14 patterns: {} with even weight+1, {} odd", even.len(), odd.len());
    println!("largest logistic weight reached: {}", big.patterns().last().unwrap().logistic_weight());

    print!("{}", generate_query_list(6, 8).to_text());
}
