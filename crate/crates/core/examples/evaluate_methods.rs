//! One wavefunction, four ways: B-operator transfer, brute-force lattice sum,
//! the determinant closed form and the symmetrized sum.
//!
//!     cargo run --example evaluate_methods -- 6 2,3,6 11

use ffwave::cli::{evaluate, Method};
use ffwave::sampling::generic_params;
use ffwave::schur::config_to_partition;
use ffwave::{ModelParams, ParticleConfig, Scalar, Site};

fn main() -> ffwave::Result<()> {
    let mut args = std::env::args().skip(1);
    let m: usize = args.next().map_or(Ok(5), |a| a.parse()).expect("M");
    let x: Vec<usize> = match args.next() {
        Some(list) => list.split(',').map(|p| p.parse().expect("position")).collect(),
        None => vec![2, 3, 5],
    };
    let seed: u64 = args.next().map_or(Ok(1), |a| a.parse()).expect("seed");

    // A single site, a single particle: W = w_1.
    let p = ModelParams::new(
        Scalar::one(),
        vec![Scalar::one()],
        vec![Site::new(Scalar::from_int(7), Scalar::zero(), Scalar::zero())],
    )?;
    let single = ParticleConfig::new(vec![1], 1)?;
    println!("M=1 N=1: W = {}", evaluate(Method::Lattice, &p, &single)?.value);

    let config = ParticleConfig::new(x, m)?;
    let params = generic_params(seed, m, config.n());
    println!("M={m} x={:?} lambda={:?} seed={seed}", config.positions(), config_to_partition(&config).parts());
    println!("t = {}, z = {:?}", params.t, params.z);
    for method in Method::ALL {
        match evaluate(method, &params, &config) {
            Ok(traced) => println!("{:<12} {} ({} digits)", method.as_str(), traced.value, traced.peak_digits),
            Err(err) => println!("{:<12} {err}", method.as_str()),
        }
    }
    Ok(())
}
