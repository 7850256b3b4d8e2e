use ginibre::kernel::{spectrum, SymmetricKernel};
use ginibre::montecarlo::*;
use ginibre::probability::{prob_table, ProbabilityTable};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn table(n: usize) -> ProbabilityTable {
    prob_table(&spectrum(&SymmetricKernel::build(n).unwrap()).unwrap()).unwrap()
}

#[test]
fn normal_draws_have_unit_moments() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let draws = sample_ginibre(1000, &mut rng);
    let n = draws.len() as f64;
    let mean = draws.iter().sum::<f64>() / n;
    let var = draws.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    // standard errors 1/sqrt(n) and sqrt(2/n)
    assert!(mean.abs() <= 4.0 / n.sqrt(), "{mean}");
    assert!((var - 1.0).abs() <= 4.0 * (2.0 / n).sqrt(), "{var}");
}

#[test]
fn two_by_two_counts_follow_the_discriminant() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20_000 {
        let m = sample_ginibre(2, &mut rng);
        let disc = (m[0] - m[3]).powi(2) + 4.0 * m[1] * m[2];
        let want = if disc > 0.0 { 2 } else { 0 };
        assert_eq!(count_real_eigenvalues(&m, 2).unwrap(), want, "{m:?}");
    }
}

#[test]
fn three_by_three_counts_follow_the_cubic_discriminant() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..20_000 {
        let m = sample_ginibre(3, &mut rng);
        // characteristic polynomial λ³ + a λ² + b λ + c
        let tr = m[0] + m[4] + m[8];
        let minors = m[0] * m[4] - m[1] * m[3] + m[0] * m[8] - m[2] * m[6] + m[4] * m[8] - m[5] * m[7];
        let det = m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6])
            + m[2] * (m[3] * m[7] - m[4] * m[6]);
        let (a, b, c) = (-tr, minors, -det);
        let disc = 18.0 * a * b * c - 4.0 * a.powi(3) * c + a * a * b * b - 4.0 * b.powi(3) - 27.0 * c * c;
        let scale = (a * a * b * b).abs() + (4.0 * b.powi(3)).abs() + (27.0 * c * c).abs();
        if disc.abs() < 1e-9 * scale {
            continue;
        }
        let want = if disc > 0.0 { 3 } else { 1 };
        assert_eq!(count_real_eigenvalues(&m, 3).unwrap(), want, "{m:?}");
    }
}

#[test]
fn histogram_invariants() {
    for size in [2, 4, 6, 10] {
        let est = estimate(size, 4000, 11).unwrap();
        assert_eq!(est.counts.len(), size / 2 + 1);
        assert_eq!(est.counts.iter().sum::<u64>(), est.samples);
        assert_eq!(est.samples, 4000);
        assert!((est.phat.iter().sum::<f64>() - 1.0).abs() <= 1e-15);
        assert_eq!(est.parity_violations, 0);
        assert_eq!(est.discarded, 0);
    }
}

#[test]
fn runs_are_reproducible_per_worker_count() {
    let a = estimate_with_workers(8, 3000, 42, 2).unwrap();
    let b = estimate_with_workers(8, 3000, 42, 2).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.workers, 2);
    let c = estimate_with_workers(8, 3000, 43, 2).unwrap();
    assert_ne!(a.counts, c.counts);
}

#[test]
fn small_sizes_agree_with_exact_values() {
    let samples = 200_000;
    let est = estimate(2, samples, 1).unwrap();
    let p0 = 1.0 - std::f64::consts::FRAC_1_SQRT_2;
    let sigma = (p0 * (1.0 - p0) / samples as f64).sqrt();
    assert!((est.phat[0] - p0).abs() <= 4.0 * sigma);
    assert!((est.phat[1] - (1.0 - p0)).abs() <= 4.0 * sigma);

    let est = estimate(4, samples, 2).unwrap();
    let p0 = 9.0 / 8.0 - 11.0 / (8.0 * std::f64::consts::SQRT_2);
    let sigma = (p0 * (1.0 - p0) / samples as f64).sqrt();
    assert!((est.phat[0] - p0).abs() <= 4.0 * sigma);
}

/// A fake estimate whose histogram is a multinomial draw from the table.
fn multinomial_estimate(t: &ProbabilityTable, samples: u64, seed: u64) -> MCEstimate {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cdf: Vec<f64> = t
        .log_p
        .iter()
        .scan(0.0, |acc, lp| {
            *acc += lp.exp();
            Some(*acc)
        })
        .collect();
    let mut counts = vec![0_u64; cdf.len()];
    for _ in 0..samples {
        let u: f64 = rng.random::<f64>() * cdf[cdf.len() - 1];
        let k = cdf.iter().position(|&c| u < c).unwrap_or(cdf.len() - 1);
        counts[k] += 1;
    }
    let total = samples as f64;
    let phat: Vec<f64> = counts.iter().map(|&c| c as f64 / total).collect();
    let stderr = phat.iter().map(|p| (p * (1.0 - p) / total).sqrt()).collect();
    MCEstimate {
        matrix_size: t.matrix_size(),
        samples,
        seed,
        workers: 1,
        counts,
        phat,
        stderr,
        discarded: 0,
        parity_violations: 0,
    }
}

#[test]
fn multinomial_resample_passes_comparison() {
    let t = table(5);
    for seed in 0..5 {
        let est = multinomial_estimate(&t, 100_000, seed);
        let r = compare(&est, &t).unwrap();
        assert!(r.max_abs_z <= 4.0, "seed {seed}: {:?}", r.z_scores);
        assert!(r.p_value > 1e-4);
    }
}

#[test]
fn comparison_requires_matching_sizes() {
    let est = estimate(4, 1000, 3).unwrap();
    assert!(matches!(
        compare(&est, &table(3)),
        Err(ginibre::Error::DimensionMismatch { .. })
    ));
}

#[test]
fn chi_square_of_eight_by_eight() {
    let est = estimate(8, 100_000, 8).unwrap();
    let r = compare(&est, &table(4)).unwrap();
    assert!(r.p_value > 1e-4, "{r:?}");
    assert!(r.degrees_of_freedom >= 3);
}
