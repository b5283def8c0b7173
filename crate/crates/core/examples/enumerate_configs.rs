//! Every configuration of one sector with its Young diagram, the number of
//! admissible lattice configurations and the brute-force value, checked
//! against the closed form.

use ffwave::lattice::enumerate_with_summary;
use ffwave::sampling::generic_params;
use ffwave::schur::{config_to_partition, theorem_rhs};
use ffwave::ParticleConfig;

fn main() -> ffwave::Result<()> {
    let (m, n) = (5, 2);
    let params = generic_params(42, m, n);
    for config in ParticleConfig::all(m, n) {
        let summary = enumerate_with_summary(&params, &config)?;
        let closed = theorem_rhs(&params, &config)?;
        println!(
            "x={:?} lambda={:?} configs={:>3} W={} {}",
            config.positions(),
            config_to_partition(&config).parts(),
            summary.configurations,
            summary.value,
            if summary.value == closed { "ok" } else { "MISMATCH" },
        );
    }
    Ok(())
}
