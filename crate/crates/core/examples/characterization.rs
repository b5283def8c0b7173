//! The properties that pin the wavefunction down, one configuration at a
//! time: degree in w_M, exchange symmetry, the recursion and vanishing at
//! the last site, factorization, and reconstruction from N+1 values.

use ffwave::sampling::generic_params;
use ffwave::verify::{
    check_degree, check_exchange, check_factorization, check_initial, check_recursion_top, check_uniqueness,
    check_vanishing,
};
use ffwave::ParticleConfig;

fn main() -> ffwave::Result<()> {
    let seed = 5;
    let top = ParticleConfig::new(vec![1, 3, 5], 5)?;
    let inner = ParticleConfig::new(vec![1, 2, 4], 5)?;
    let p = generic_params(seed, 5, 3);

    let reports = [
        check_initial(&generic_params(seed, 4, 1))?,
        check_degree(&p, &top, seed, true)?,
        check_degree(&p, &inner, seed, true)?,
        check_exchange(&p, &top, &[1, 0, 2])?,
        check_exchange(&p, &inner, &[1, 2, 0])?,
        check_recursion_top(&p, &top)?,
        check_vanishing(&p, &top)?,
        check_factorization(&p, &inner)?,
        check_uniqueness(&p, &top, seed)?,
    ];
    for report in &reports {
        println!("{}", report.human_line());
    }
    Ok(())
}
