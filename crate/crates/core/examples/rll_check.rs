//! The RLL relation on the 8-dimensional space aux ⊗ aux ⊗ site, at seeded
//! random points, plus the single-site weight table at one of them.

use ffwave::model::{check_rll, WeightTable};
use ffwave::sampling::{derive_seed, generic_params};
use ffwave::EdgeState;

fn main() -> ffwave::Result<()> {
    let mut all = true;
    for point in 0..20 {
        let p = generic_params(derive_seed(1, "example-rll", &[point]), 1, 2);
        let holds = check_rll(&p.z[0], &p.z[1], &p.sites[0], &p.t)?;
        all &= holds;
        println!(
            "point {point:>2}: z1={} z2={} t={} -> {}",
            p.z[0],
            p.z[1],
            p.t,
            if holds { "holds" } else { "FAILS" }
        );
    }

    let p = generic_params(derive_seed(1, "example-rll", &[0]), 1, 2);
    let table = WeightTable::new(&p.z[0], &p.sites[0], &p.t);
    println!("\nweights at point 0 (a_in q_in -> a_out q_out):");
    for a_in in EdgeState::BOTH {
        for q_in in EdgeState::BOTH {
            for a_out in EdgeState::BOTH {
                for q_out in EdgeState::BOTH {
                    let w = table.get(a_in, q_in, a_out, q_out);
                    if !w.is_zero() {
                        println!("  {}{} -> {}{}: {w}", a_in.bit(), q_in.bit(), a_out.bit(), q_out.bit());
                    }
                }
            }
        }
    }
    std::process::exit(if all { 0 } else { 1 });
}
