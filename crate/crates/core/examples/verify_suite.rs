//! The seeded verification suite with per-property tallies.
//!
//!     cargo run --release --example verify_suite -- 1 6 3

use std::collections::BTreeMap;

use ffwave::verify::{run_suite, SuiteBounds};

fn main() {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u64>().expect("integer argument"));
    let seed = args.next().unwrap_or(1);
    let max_m = args.next().unwrap_or(5) as usize;
    let max_n = args.next().unwrap_or(2) as usize;

    let reports = run_suite(seed, &SuiteBounds::with_size(max_m, max_n));
    let mut tally: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
    for r in &reports {
        let entry = tally.entry(r.property.as_str()).or_default();
        if r.passed {
            entry.0 += 1;
        } else {
            entry.1 += 1;
            println!("{}", r.human_line());
        }
    }
    for (property, (pass, fail)) in &tally {
        println!("{property:<18} {pass:>5} passed {fail:>3} failed");
    }
    let failed: usize = tally.values().map(|t| t.1).sum();
    std::process::exit(i32::from(failed > 0));
}
