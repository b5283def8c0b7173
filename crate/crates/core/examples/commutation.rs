//! Exchange of two B-operators on a random state, and the single-column
//! contraction against its product formula.

use ffwave::sampling::{generic_params, rng};
use ffwave::verify::{check_column, check_commutation};
use ffwave::{ParticleConfig, Scalar, SectorState};

fn main() -> ffwave::Result<()> {
    let (m, particles) = (6, 2);
    let p = generic_params(11, m, 2);
    let mut draw = rng(11);
    let terms = ParticleConfig::all(m, particles).into_iter().map(|c| (c, Scalar::sample(&mut draw)));
    let probe = SectorState::from_terms(m, particles, terms)?;
    println!("{}", check_commutation(&p, &p.z[0], &p.z[1], &probe)?.human_line());

    let q = generic_params(12, 1, 4);
    for j in 1..=4 {
        println!("{}", check_column(j, &q.z, &q.sites[0], &q.t)?.human_line());
    }
    Ok(())
}
