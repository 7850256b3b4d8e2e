use ginibre::kernel::{entry_log, spectrum, SymmetricKernel};
use ginibre::linalg::{real_schur_eigenvalues, DEFAULT_BLOCK_TAU};
use ginibre::probability::*;
use ginibre::specfun::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn log_gamma_recurrence(x in 0.01_f64..2000.0) {
        let lhs = log_gamma(x + 1.0).unwrap() - log_gamma(x).unwrap();
        let scale = log_gamma(x).unwrap().abs().max(1.0);
        prop_assert!((lhs - x.ln()).abs() <= 4e-15 * scale + 1e-15, "{} vs {}", lhs, x.ln());
    }

    #[test]
    fn kernel_entries_are_symmetric(j in 1_usize..5000, k in 1_usize..5000) {
        prop_assert_eq!(entry_log(j, k).to_bits(), entry_log(k, j).to_bits());
    }

    #[test]
    fn kernel_entries_match_gamma_form(j in 1_usize..150, k in 1_usize..150) {
        let direct = log_gamma((j + k) as f64 - 1.5).unwrap()
            - 0.5 * log_gamma(2.0 * j as f64 - 1.0).unwrap()
            - 0.5 * log_gamma(2.0 * k as f64 - 1.0).unwrap()
            - 0.5 * (2.0 * std::f64::consts::PI).ln();
        prop_assert!((entry_log(j, k) - direct).abs() <= 1e-12 * direct.abs().max(1.0));
    }

    #[test]
    fn kernel_entries_obey_cauchy_schwarz(j in 1_usize..3000, k in 1_usize..3000) {
        // Cauchy-Schwarz for the Gram form: M_jk² <= M_jj M_kk
        let lhs = 2.0 * entry_log(j, k);
        prop_assert!(lhs <= entry_log(j, j) + entry_log(k, k) + 1e-12);
    }

    #[test]
    fn scaled_exp_section_is_a_probability(n in 0_u32..200, x in 0.0_f64..300.0) {
        let v = (-x).exp() * exp_section(n, x);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&v));
        let c = ln_scaled_cosh_section(n, x).exp();
        prop_assert!(c > 0.0 && c <= 1.0 + 1e-12);
    }

    #[test]
    fn f_section_is_non_increasing(n in 1_u32..500, x in 0.0_f64..5.0, dx in 0.0_f64..1.0) {
        let a = f_section(n, x).unwrap();
        let b = f_section(n, x + dx).unwrap();
        prop_assert!(b <= a * (1.0 + 1e-13));
    }

    #[test]
    fn exp_minus_section_is_positive(n in 1_u32..5000, x in 0.0_f64..10.0) {
        let v = ln_exp_minus_section(n, x);
        prop_assert!(v.is_finite() && v >= -4.0 * n as f64 * x - 1e-9);
    }

    #[test]
    fn elementary_symmetric_sum_is_the_product(values in prop::collection::vec(1e-3_f64..50.0, 1..40)) {
        // Σ_k e_k = Π (1 + v_i)
        let e = elementary_symmetric(&values);
        let ln_sum = {
            let logs: Vec<f64> = e.iter().map(|s| s.ln()).collect();
            let top = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            top + logs.iter().map(|l| (l - top).exp()).sum::<f64>().ln()
        };
        let ln_prod: f64 = values.iter().map(|v| v.ln_1p()).sum();
        prop_assert!((ln_sum - ln_prod).abs() <= 1e-12 * ln_prod.abs().max(1.0));
        let ln_top: f64 = values.iter().map(|v| v.ln()).sum();
        prop_assert!((e[values.len()].ln() - ln_top).abs() <= 1e-12 * ln_top.abs().max(1.0));
    }

    #[test]
    fn real_count_has_matrix_parity(size in 1_usize..12, seed in any::<u64>()) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut m = ginibre::montecarlo::sample_ginibre(size, &mut rng);
        let ev = real_schur_eigenvalues(&mut m, size, DEFAULT_BLOCK_TAU).unwrap();
        prop_assert!(ev.real_count <= size);
        prop_assert_eq!(ev.real_count % 2, size % 2);
    }

    #[test]
    fn triangular_matrices_are_all_real(diag in prop::collection::vec(-5.0_f64..5.0, 1..10), fill in -3.0_f64..3.0) {
        let n = diag.len();
        let mut a = vec![0.0; n * n];
        for i in 0..n {
            a[i * n + i] = diag[i];
            for j in i + 1..n {
                a[i * n + j] = fill * (i + 2 * j) as f64;
            }
        }
        let ev = real_schur_eigenvalues(&mut a, n, DEFAULT_BLOCK_TAU).unwrap();
        prop_assert_eq!(ev.real_count, n);
    }

    #[test]
    fn fit_recovers_any_linear_model(b1 in -3.0_f64..-0.1, b2 in -2.0_f64..2.0, start in 1_usize..50) {
        let pts: Vec<(usize, f64)> = (0..15)
            .map(|i| {
                let size = 2 * (start + 7 * i);
                (size, b1 * (size as f64).sqrt() + b2)
            })
            .collect();
        let f = fit_asymptote(&pts, FitModel::TwoTerm).unwrap();
        prop_assert!((f.b1 - b1).abs() < 1e-10 && (f.b2 - b2).abs() < 1e-10);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn tables_are_normalized_and_match_generating_function(n in 1_usize..80, z in -1.0_f64..3.0) {
        let eig = spectrum(&SymmetricKernel::build(n).unwrap()).unwrap();
        let t = prob_table(&eig).unwrap();
        prop_assert!(t.normalization_residual <= 1e-8);
        let g = generating_function_from(&eig, z);
        let poly = t.polynomial(z);
        prop_assert!((g - poly).abs() <= 1e-9 * g.abs().max(1e-300) + 1e-15);
    }

    #[test]
    fn spectrum_stays_inside_unit_interval(n in 1_usize..300) {
        let eig = spectrum(&SymmetricKernel::build(n).unwrap()).unwrap();
        prop_assert!(eig.lambda_max() < 1.0);
        if n <= ginibre::kernel::FACTOR_JACOBI_MAX_N {
            prop_assert!(eig.is_resolved());
        }
        prop_assert!(eig.lambdas.windows(2).all(|w| w[0] >= w[1]));
        prop_assert!(eig.trace_check_residual < 1e-12);
    }
}
