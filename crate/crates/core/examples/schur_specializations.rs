//! With w = 1 and γ = 0 the closed form is a factorial Schur function in the
//! shifts α; with α = 0 as well it is the ordinary Schur function. Both are
//! compared against tableau sums.

use ffwave::sampling::generic_params;
use ffwave::schur::{factorial_schur_oracle, generalized_schur_det, schur_oracle, YoungDiagram};
use ffwave::{ModelParams, Scalar, Site};

fn main() -> ffwave::Result<()> {
    let (n, width) = (3, 3);
    let base = generic_params(3, n + width, n);
    let alpha: Vec<Scalar> = base.sites.iter().map(|s| s.alpha.clone()).collect();
    let at = |alpha: &[Scalar]| {
        let sites = alpha.iter().map(|a| Site::new(Scalar::one(), a.clone(), Scalar::zero())).collect();
        ModelParams::new(base.t.clone(), base.z.clone(), sites)
    };
    let factorial = at(&alpha)?;
    let plain = at(&vec![Scalar::zero(); alpha.len()])?;

    println!("z = {:?}, a = {:?}", base.z, alpha);
    for lambda in YoungDiagram::all_in_box(n, width) {
        let det = generalized_schur_det(&factorial, &lambda)?;
        let tableaux = factorial_schur_oracle(&base.z, &alpha, &lambda)?;
        let schur = generalized_schur_det(&plain, &lambda)? == schur_oracle(&base.z, &lambda)?;
        println!(
            "{:<10} factorial {} schur {}  s*_lambda = {det}",
            format!("{:?}", lambda.parts()),
            if det == tableaux { "ok" } else { "MISMATCH" },
            if schur { "ok" } else { "MISMATCH" },
        );
    }
    Ok(())
}
