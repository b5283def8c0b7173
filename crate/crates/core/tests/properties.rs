use ffwave::lattice::{apply_b, enumerate_configurations, projected_wavefunction};
use ffwave::model::{l_weight, r_weight, EdgeState};
use ffwave::numeric::{exact_degree, SamplePoint};
use ffwave::sampling::generic_params;
use ffwave::schur::{
    config_to_partition, generalized_schur_det, generalized_schur_sum, partition_to_config, theorem_rhs,
};
use ffwave::verify::{check_commutation, check_rll_point};
use ffwave::{ParticleConfig, Scalar, SectorState};
use num_bigint::BigInt;
use num_traits::{One, Signed};
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = Scalar> {
    (-9i64..=9, 1i64..=9).prop_map(|(p, q)| Scalar::new(p, q).unwrap())
}

fn wide_scalar() -> impl Strategy<Value = Scalar> {
    (any::<i64>(), any::<i64>().prop_filter("nonzero", |q| *q != 0)).prop_map(|(p, q)| Scalar::new(p, q).unwrap())
}

/// `(seed, config)` with `M <= max_m`, `N <= min(M, max_n)`.
fn case(max_m: usize, max_n: usize) -> impl Strategy<Value = (u64, ParticleConfig)> {
    (1..=max_m).prop_flat_map(move |m| (Just(m), 0..=m.min(max_n))).prop_flat_map(|(m, n)| {
        let configs = ParticleConfig::all(m, n);
        (any::<u64>(), proptest::sample::select(configs))
    })
}

fn horner(coefficients: &[Scalar], x: &Scalar) -> Scalar {
    coefficients.iter().rev().fold(Scalar::zero(), |acc, c| acc * x + c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            prop_assert!((&a * a.recip().unwrap()).is_one());
        }
    }

    #[test]
    fn canonical_form_and_round_trip(a in wide_scalar()) {
        prop_assert!(a.denominator().is_positive());
        prop_assert!(gcd(a.numerator(), a.denominator()).is_one());
        let text = a.to_string();
        prop_assert_eq!(text.parse::<Scalar>().unwrap(), a);
    }

    #[test]
    fn degree_of_sampled_polynomial(mut coefficients in proptest::collection::vec(scalar(), 1..7), lead in scalar()) {
        prop_assume!(!lead.is_zero());
        coefficients.push(lead);
        let d = coefficients.len() - 1;
        let samples: Vec<SamplePoint> = (0..d as i64 + 2)
            .map(|i| {
                let node = Scalar::new(3 * i - 4, 2).unwrap();
                let value = horner(&coefficients, &node);
                SamplePoint::new(node, value)
            })
            .collect();
        prop_assert_eq!(exact_degree(&samples).unwrap(), d);
    }

    #[test]
    fn ice_rule(z in scalar(), w in scalar(), alpha in scalar(), gamma in scalar(), t in scalar(), bits in 0usize..16) {
        let e = |k: usize| EdgeState::from_bit(((bits >> k) & 1) as u8).unwrap();
        let (a_in, q_in, a_out, q_out) = (e(3), e(2), e(1), e(0));
        if a_in.bit() + q_in.bit() != a_out.bit() + q_out.bit() {
            prop_assert!(l_weight(a_in, q_in, a_out, q_out, &z, &w, &alpha, &gamma, &t).is_zero());
            prop_assert!(r_weight(a_in, q_in, a_out, q_out, &z, &t).is_zero());
        }
    }

    #[test]
    fn rll_at_random_points(seed in any::<u64>()) {
        let p = generic_params(seed, 1, 2);
        let report = check_rll_point(&p.z[0], &p.z[1], &p.sites[0], &p.t).unwrap();
        prop_assert!(report.passed, "{}", report.human_line());
    }

    #[test]
    fn translation_round_trip(m in 1usize..=8, pick in any::<prop::sample::Index>(), n_pick in any::<prop::sample::Index>()) {
        let n = n_pick.index(m + 1);
        let configs = ParticleConfig::all(m, n);
        let config = pick.get(&configs);
        let lambda = config_to_partition(config);
        prop_assert!(lambda.parts().windows(2).all(|p| p[0] >= p[1]));
        prop_assert_eq!(&partition_to_config(&lambda).unwrap(), config);
    }

    #[test]
    fn sector_grading(seed in any::<u64>(), m in 1usize..=6, n_pick in any::<prop::sample::Index>()) {
        let n = n_pick.index(m);
        let p = generic_params(seed, m, 1);
        let terms = ParticleConfig::all(m, n).into_iter().zip((1..).map(Scalar::from_int));
        let state = SectorState::from_terms(m, n, terms).unwrap();
        let next = apply_b(&state, &p.z[0], &p).unwrap();
        prop_assert_eq!(next.particles(), n + 1);
        prop_assert!(next.iter().all(|(mask, _)| mask.count_ones() as usize == n + 1));
    }

    #[test]
    fn commutation_on_random_states(seed in any::<u64>(), m in 2usize..=5, coefficients in proptest::collection::vec(scalar(), 10)) {
        let particles = (seed as usize) % (m - 1);
        let p = generic_params(seed, m, 2);
        let terms = ParticleConfig::all(m, particles).into_iter().zip(coefficients.into_iter().cycle());
        let probe = SectorState::from_terms(m, particles, terms).unwrap();
        let report = check_commutation(&p, &p.z[0], &p.z[1], &probe).unwrap();
        prop_assert!(report.passed, "{}", report.human_line());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn methods_agree((seed, config) in case(5, 3)) {
        let p = generic_params(seed, config.m(), config.n());
        let transfer = projected_wavefunction(&p, &config).unwrap();
        prop_assert_eq!(&enumerate_configurations(&p, &config).unwrap(), &transfer);
        prop_assert_eq!(&theorem_rhs(&p, &config).unwrap(), &transfer);
    }

    #[test]
    fn symmetric_in_spectral_parameters((seed, config) in case(7, 4), shuffle in Just(vec![0usize, 1, 2, 3]).prop_shuffle()) {
        let p = generic_params(seed, config.m(), config.n());
        let sigma: Vec<usize> = shuffle.into_iter().filter(|&i| i < config.n()).collect();
        let q = p.permuted_z(&sigma);
        let lambda = config_to_partition(&config);
        prop_assert_eq!(generalized_schur_det(&p, &lambda).unwrap(), generalized_schur_det(&q, &lambda).unwrap());
        prop_assert_eq!(generalized_schur_sum(&p, &config).unwrap(), generalized_schur_sum(&q, &config).unwrap());
    }

    #[test]
    fn closed_form_vanishes_at_zero_last_weight((seed, config) in case(7, 4)) {
        prop_assume!(config.n() > 0 && config.occupies_last());
        let p = generic_params(seed, config.m(), config.n()).with_last_w(Scalar::zero());
        prop_assert!(theorem_rhs(&p, &config).unwrap().is_zero());
    }
}

fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != BigInt::from(0) {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}
