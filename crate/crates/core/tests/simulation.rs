use icosa::bipoly::{tk, BiPoly};
use icosa::frobsim::{
    class_measure_densities, partial_sum, sample_stream, sample_stream_serial, sieve_primes,
};
use icosa::golden::{a_index, GoldenRational};
use proptest::prelude::*;

#[test]
fn prime_counts() {
    for (x, pi) in [
        (10, 4),
        (100, 25),
        (1_000, 168),
        (10_000, 1_229),
        (100_000, 9_592),
        (1_000_000, 78_498),
    ] {
        assert_eq!(sieve_primes(x).len(), pi, "pi({x})");
    }
    assert!(sieve_primes(1).is_empty());
    assert_eq!(sieve_primes(2), vec![2]);
}

#[test]
fn class_measure() {
    let d = class_measure_densities();
    let want = [
        1.0 / 4.0,
        1.0 / 6.0,
        1.0 / 6.0,
        1.0 / 120.0,
        1.0 / 120.0,
        0.1,
        0.1,
        0.1,
        0.1,
    ];
    for (a, b) in d.iter().zip(want) {
        assert!((a - b).abs() < 1e-15);
    }
}

#[test]
fn psi_over_x_tends_to_one() {
    // sum of log p over prime powers up to X does not depend on the draws
    let s = sample_stream(200_000, 3);
    let psi = partial_sum(&s, &BiPoly::one()).unwrap();
    assert!((psi.ratio - 1.0).abs() < 0.01, "{}", psi.ratio);
    let other = partial_sum(&sample_stream(200_000, 99), &BiPoly::one()).unwrap();
    assert_eq!(psi, other);
}

#[test]
fn degree_limit() {
    let s = sample_stream(100, 1);
    assert!(partial_sum(&s, &BiPoly::x().pow(9)).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn prime_power_values_stay_in_a(seed in any::<u64>(), x in 2u64..5_000) {
        let s = sample_stream(x, seed);
        for (n, idx, j) in s.prime_powers() {
            prop_assert!(n <= x);
            let a = s.a_prime_power(idx, j);
            prop_assert!(a_index(&a).is_some(), "a_(p^{}) = {}", j, a);
            let direct = tk(j as usize).eval_int(s.a_p(idx), &0.into());
            prop_assert_eq!(GoldenRational::from(a), direct);
        }
    }

    #[test]
    fn parallel_and_serial_agree(seed in any::<u64>(), x in 2u64..20_000) {
        let a = sample_stream(x, seed);
        let b = sample_stream_serial(x, seed);
        prop_assert_eq!(&a.classes, &b.classes);
        // a longer run extends a shorter one
        let longer = sample_stream(x + 1_000, seed);
        prop_assert_eq!(&longer.classes[..a.len()], &a.classes[..]);
    }
}
