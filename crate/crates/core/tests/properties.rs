use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use shellzeta_core::primes::{miller_rabin, trial_division};
use shellzeta_core::{is_prime, log_density_sum, residual, residual_scan, IntegerPolynomial, Precision};

/// Positive leading coefficient, non-negative lower coefficients, `f(1) >= 1`.
fn admissible() -> impl Strategy<Value = IntegerPolynomial> {
    (1usize..=6)
        .prop_flat_map(|degree| (prop::collection::vec(0i64..20, degree), 1i64..10, 0i64..5))
        .prop_map(|(mut lower, lead, constant)| {
            lower[0] = constant;
            lower.push(lead);
            if lower[1..].iter().all(|&c| c == 0) {
                lower[1] = 1;
            }
            if lower.iter().sum::<i64>() < 1 {
                lower[0] = 1;
            }
            IntegerPolynomial::from_i64s(&lower, "random").unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn residual_stays_in_open_unit_interval(f in admissible(), x in 2u64..400) {
        let r = residual(&f, x, 1.0, Precision::Float).unwrap();
        let m = r.m_value.to_f64();
        prop_assert!(m > -1.0 && m < 0.0);
        let p = r.product_partial.to_f64();
        prop_assert!(p > 0.0 && p <= 1.0);
        prop_assert!(r.zeta_partial.to_f64() >= 1.0);
    }

    #[test]
    fn residual_decreases_with_the_limit(f in admissible(), x in 2u64..200) {
        let rs = residual_scan(&f, &[x, x + 1, x + 7], 1.0, Precision::Exact).unwrap();
        let m: Vec<_> = rs.iter().map(|r| r.m_value.as_exact().unwrap().clone()).collect();
        prop_assert!(m[1] < m[0]);
        prop_assert!(m[2] < m[1]);
    }

    #[test]
    fn fixed_width_evaluation_is_exact(coeffs in prop::collection::vec(-1000i64..1000, 1..8), n in 1u64..5000) {
        prop_assume!(coeffs.iter().any(|&c| c != 0));
        let f = IntegerPolynomial::unvalidated(coeffs.iter().map(|&c| BigInt::from(c)).collect(), "p").unwrap();
        let mut exact = BigInt::from(0);
        for c in coeffs.iter().rev() {
            exact = exact * BigInt::from(n) + BigInt::from(*c);
        }
        if let Some(v) = f.evaluate_fixed(n) {
            prop_assert_eq!(BigInt::from(v), exact.clone());
        }
        prop_assert_eq!(f.evaluate(n), exact);
    }

    #[test]
    fn log_density_grows_with_the_limit(f in admissible(), x in 3u64..300) {
        let a = log_density_sum(&f, x).unwrap().value;
        let b = log_density_sum(&f, x + 1).unwrap().value;
        prop_assert!(b > a);
    }
}

#[test]
fn miller_rabin_matches_trial_division_below_a_million() {
    for n in 0..=1_000_000u64 {
        assert_eq!(is_prime(n), trial_division(n), "{n}");
    }
}

#[test]
fn miller_rabin_matches_trial_division_on_random_values() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..10_000 {
        let n = rng.gen_range(1..=1_000_000_000_000u64);
        assert_eq!(is_prime(n), trial_division(n), "{n}");
    }
}

#[test]
fn deterministic_and_random_bases_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let shell7 = IntegerPolynomial::prime_shell(7).unwrap();
    for n in 2..=200u64 {
        let v: u64 = shell7.evaluate(n).try_into().unwrap();
        let bases: Vec<u64> = (0..20).map(|_| rng.gen_range(2..v - 1)).collect();
        assert_eq!(is_prime(v), miller_rabin(v, &bases), "n = {n}");
    }
}
