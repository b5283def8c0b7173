//! Wall time and peak number size of each method as the lattice grows.
//!
//!     cargo run --release --example bench_methods

use ffwave::cli::bench_rows;

fn main() -> ffwave::Result<()> {
    // past M = 10 brute force is guarded off, at M = 20 the lattice too
    for (m, n) in [(4, 2), (6, 3), (8, 4), (12, 5), (20, 7), (40, 10)] {
        let repeat = if m <= 8 { 3 } else { 1 };
        for row in bench_rows(m, n, None, 1, repeat)? {
            let time = row.wall_time_ms.map_or("-".to_string(), |t| format!("{t:.3} ms"));
            let digits = row.peak_digits.map_or("-".to_string(), |d| d.to_string());
            let note = if row.status == "ok" { "" } else { row.status.as_str() };
            println!("M={m:<3} N={n:<3} {:<12} {time:>14} {digits:>6}  {note}", row.method.as_str());
        }
    }
    Ok(())
}
