use mtensor::{cw_bracket, largest_eigenvalue, real_eigenvalue_bounds, residual, DenseTensor, IterationSettings};
use proptest::prelude::*;

prop_compose! {
    fn positive_tensor()(order in 2usize..=4, dim in 1usize..=5)
        (entries in prop::collection::vec(0.01f64..2.0, dim.pow(order as u32)),
         order in Just(order), dim in Just(dim)) -> DenseTensor {
        DenseTensor::new(order, dim, entries).unwrap()
    }
}

fn settings() -> IterationSettings {
    IterationSettings::default()
}

fn row_sum_bounds(t: &DenseTensor) -> (f64, f64) {
    let sums: Vec<f64> = (0..t.dim()).map(|i| t.slice(i).iter().sum()).collect();
    (
        sums.iter().cloned().fold(f64::INFINITY, f64::min),
        sums.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn perron_vector_certifies_its_eigenvalue(t in positive_tensor()) {
        let s = settings();
        let out = largest_eigenvalue(&t, &s).unwrap();
        prop_assert!(out.converged);
        prop_assert!(out.final_bracket.lower <= out.lambda && out.lambda <= out.final_bracket.upper);
        prop_assert!(out.shifted_bracket.contains(out.lambda + s.sigma));
        prop_assert!(out.final_bracket.width() <= s.tol * (1.0 + out.lambda.abs()));
        prop_assert!(out.eigenvector.iter().all(|&v| v > 0.0));
        // independent certificate on the shifted tensor
        let b = t.shift_combine(1.0, s.sigma);
        let cw = cw_bracket(&b, &out.eigenvector).unwrap();
        prop_assert!(cw.contains(out.lambda + s.sigma));
        let (lo, hi) = row_sum_bounds(&t);
        prop_assert!(lo - 1e-12 * hi <= out.lambda && out.lambda <= hi * (1.0 + 1e-12));
        prop_assert!(out.residual <= 100.0 * s.tol);
        let bounds = real_eigenvalue_bounds(&t);
        let slack = 1e-12 * (1.0 + s.sigma + out.lambda.abs());
        prop_assert!(bounds.lower - slack <= out.lambda && out.lambda <= bounds.upper + slack);
    }

    #[test]
    fn shift_does_not_move_the_answer(t in positive_tensor()) {
        let s = settings();
        let base = largest_eigenvalue(&t, &s.with_sigma(1.0)).unwrap().lambda;
        for sigma in [0.5, 10.0] {
            let other = largest_eigenvalue(&t, &s.with_sigma(sigma)).unwrap().lambda;
            prop_assert!((other - base).abs() <= 10.0 * s.tol * (1.0 + base.abs()), "sigma {}: {} vs {}", sigma, other, base);
        }
    }

    #[test]
    fn radius_scales_with_tensor(t in positive_tensor(), c in 0.1f64..20.0) {
        let s = settings();
        let base = largest_eigenvalue(&t, &s).unwrap().lambda;
        let scaled = largest_eigenvalue(&t.scale(c), &s).unwrap().lambda;
        prop_assert!((scaled - c * base).abs() <= 10.0 * s.tol * (1.0 + (c * base).abs()));
    }

    #[test]
    fn perturbation_bias_is_bounded(t in positive_tensor()) {
        let s = settings();
        let exact = largest_eigenvalue(&t, &s).unwrap();
        let perturbed = largest_eigenvalue(&t, &s.with_epsilon(1e-6)).unwrap();
        prop_assert!(exact.converged && perturbed.converged);
        let bound = perturbed.epsilon_bias;
        prop_assert!(bound >= 1e-6 * (t.dim() as f64).powi(t.order() as i32 - 1) * (1.0 - 1e-12));
        let slack = 2.0 * s.tol * (1.0 + exact.lambda.abs());
        prop_assert!(perturbed.lambda >= exact.lambda - slack);
        prop_assert!(perturbed.lambda - exact.lambda <= bound + slack);
    }
}

#[test]
fn all_ones_bracket_at_non_eigenvector() {
    let t = DenseTensor::filled(3, 2, 1.0).unwrap();
    let b = cw_bracket(&t, &[1.0, 2.0]).unwrap();
    assert_eq!((b.lower, b.upper), (2.25, 9.0));
}

#[test]
fn matrix_radius_matches_closed_form() {
    // [[2, 1], [1, 2]] has eigenvalues 1 and 3
    let m = DenseTensor::new(2, 2, vec![2.0, 1.0, 1.0, 3.0]).unwrap();
    let out = largest_eigenvalue(&m, &settings()).unwrap();
    let expected = (5.0 + 5.0f64.sqrt()) / 2.0;
    assert!((out.lambda - expected).abs() < 1e-9);
    assert!(residual(&m, out.lambda, &out.eigenvector).unwrap() < 1e-9);
}

#[test]
fn reducible_block_tensor_with_fallback() {
    // block-diagonal nonnegative tensor: radius is the larger block's
    let t = DenseTensor::from_fn(3, 4, |i| {
        let block = |k: usize| k / 2;
        if i.iter().all(|&k| block(k) == block(i[0])) {
            if block(i[0]) == 0 {
                1.0
            } else {
                2.0
            }
        } else {
            0.0
        }
    })
    .unwrap();
    let out = largest_eigenvalue(&t, &settings()).unwrap();
    assert!(out.converged);
    let bias = out.epsilon_bias;
    assert!(
        out.lambda >= 8.0 - 1e-8 && out.lambda <= 8.0 + bias + 1e-8,
        "{}",
        out.lambda
    );
}
