//! Randomized structural properties of the public API: laws normalize,
//! parities are conserved, closed forms track the exact law, eigenvalues
//! stay in the unit interval, and couplings respect their increment bounds.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use steinlight::chain::{
    count_on, exact_pmf, mean_var_formula, sample_switch_matrix, size_biased_pmf, SwitchPattern,
};
use steinlight::coupling::{even_size_bias, odd_size_bias, symmetrize_v};
use steinlight::spectral::{f_prob, lambda, transition_matrix};

fn arb_pattern(max_n: u32, max_stages: usize) -> impl Strategy<Value = SwitchPattern> {
    (
        1..=max_n,
        proptest::collection::vec(1u32..=max_n, 0..=max_stages),
    )
        .prop_map(|(n, raw)| {
            let stages: Vec<u32> = raw.into_iter().map(|s| 1 + (s - 1) % n).collect();
            SwitchPattern::new(n, stages).expect("sizes reduced into range")
        })
}

proptest! {
    #[test]
    fn pmf_is_a_probability_law(pattern in arb_pattern(24, 6)) {
        let pmf = exact_pmf(&pattern);
        let total: f64 = pmf.mass().iter().sum();
        prop_assert!((total - 1.0).abs() <= 1e-12);
        prop_assert!(pmf.mass().iter().all(|&p| p >= 0.0));
        // the count carries the parity of the total toggle budget
        let parity = pattern.stages().iter().sum::<u32>() % 2;
        for (k, &p) in pmf.mass().iter().enumerate() {
            if k as u32 % 2 != parity {
                prop_assert!(p == 0.0, "off-parity mass {p} at {k}");
            }
        }
    }

    #[test]
    fn closed_moments_match_law(pattern in arb_pattern(24, 6)) {
        let (mu, var) = mean_var_formula(&pattern);
        let pmf = exact_pmf(&pattern);
        prop_assert!((mu - pmf.mean()).abs() <= 1e-9 * pmf.mean().abs().max(1.0));
        prop_assert!((var - pmf.variance()).abs() <= 1e-9 * pmf.variance().max(1.0));
    }

    #[test]
    fn sampled_runs_respect_pattern_and_parity(
        pattern in arb_pattern(16, 5),
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let matrix = sample_switch_matrix(&pattern, &mut rng);
        prop_assert!(matrix.matches_pattern(&pattern));
        prop_assert_eq!(count_on(&matrix) % 2, pattern.stages().iter().sum::<u32>() % 2);
    }

    #[test]
    fn size_bias_lifts_the_mean_to_second_moment_ratio(pattern in arb_pattern(20, 5)) {
        let pmf = exact_pmf(&pattern);
        if pmf.mean() > 0.0 {
            let biased = size_biased_pmf(&pmf).expect("positive mean");
            let second: f64 = pmf
                .mass()
                .iter()
                .enumerate()
                .map(|(k, &p)| (k * k) as f64 * p)
                .sum();
            let expect = second / pmf.mean();
            prop_assert!((biased.mean() - expect).abs() <= 1e-12 * expect.max(1.0));
        }
    }

    #[test]
    fn eigenvalues_bounded_and_symmetric(
        n in 1u32..=40,
        s_raw in 1u32..=40,
        b_raw in 1u32..=8,
    ) {
        let s = 1 + (s_raw - 1) % n;
        let b = 1 + (b_raw - 1) % n.min(8);
        let value = lambda(n, b, s).expect("valid order");
        prop_assert!(value.abs() <= 1.0 + 1e-12, "lambda({n},{b},{s}) = {value}");
        if b == 4 {
            let mirrored = lambda(n, 4, n - s).expect("mirrored size");
            prop_assert!((value - mirrored).abs() <= 1e-12);
        }
    }

    #[test]
    fn transition_rows_are_distributions(
        n in 1u32..=10,
        b_raw in 1u32..=3,
        s_raw in 0u32..=10,
    ) {
        let b = b_raw.min(n);
        let s = s_raw.min(n);
        let matrix = transition_matrix(n, b, s).expect("dense size");
        for x in 0..matrix.size() {
            let mut row = 0.0;
            for y in 0..matrix.size() {
                let p = matrix.entry(x, y);
                prop_assert!(p >= -1e-15);
                row += p;
            }
            prop_assert!((row - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn finish_probabilities_stay_in_range(
        pattern in arb_pattern(12, 5),
        alpha in 0u32..=3,
        beta in 0u32..=3,
    ) {
        if alpha + beta <= pattern.n() {
            let f = f_prob(alpha, beta, &pattern).expect("group fits");
            prop_assert!((-1e-12..=1.0 + 1e-12).contains(&f), "f = {f}");
        }
    }

    #[test]
    fn coupling_increments_stay_bounded(half_n in 1u32..=12, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let even_n = 2 * half_n;
        let even_pattern = SwitchPattern::standard(even_n).expect("standard pattern");
        let matrix = sample_switch_matrix(&even_pattern, &mut rng);
        let draw = even_size_bias(&matrix, &mut rng).expect("even coupling");
        prop_assert!(draw.increment() == 0 || draw.increment() == 2);
        prop_assert!(draw.xs <= even_n);

        let odd_n = even_n + 1;
        let odd_pattern = SwitchPattern::standard(odd_n).expect("standard pattern");
        let matrix = sample_switch_matrix(&odd_pattern, &mut rng);
        let vdraw = symmetrize_v(&matrix, &mut rng).expect("symmetrization");
        prop_assert!(vdraw.v().abs_diff(vdraw.x()) <= 2);
        let draw = odd_size_bias(&vdraw, &mut rng).expect("odd coupling");
        prop_assert!(draw.increment() <= 2);
        prop_assert!(draw.xs <= odd_n);
    }
}
