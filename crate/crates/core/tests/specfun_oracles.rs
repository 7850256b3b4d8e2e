use ginibre::specfun::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

// ln Γ(x), 22 significant digits from an arbitrary-precision evaluation
const LGAMMA: [(f64, f64); 12] = [
    (0.5, 0.572_364_942_924_700_087_071_7),
    (0.75, 0.203_280_951_431_295_371_481_4),
    (1.25, -0.098_271_836_421_813_161_463_85),
    (1.5, -0.120_782_237_635_245_222_345_5),
    (2.5, 0.284_682_870_472_919_159_632_5),
    (3.0, std::f64::consts::LN_2),
    (7.3, 7.147_892_523_022_249_032_777),
    (10.0, 12.801_827_480_081_469_611_21),
    (12.5, 18.734_347_511_936_445_701_63),
    (100.5, 361.435_540_467_777_621_555_3),
    (1234.567, 7_551.027_809_984_276_039_809),
    (99_999.5, 1_051_281.952_514_674_422_287),
];

#[test]
fn log_gamma_matches_high_precision_values() {
    for &(x, want) in &LGAMMA {
        let got = log_gamma(x).unwrap();
        let tol = 4e-16 * want.abs().max(1.0);
        assert!((got - want).abs() <= tol, "lnΓ({x}) = {got}, want {want}");
    }
}

#[test]
fn log_gamma_matches_factorials() {
    let mut ln_fact = 0.0_f64;
    for k in 1..=170_u32 {
        ln_fact += (k as f64).ln();
        let got = log_gamma(k as f64 + 1.0).unwrap();
        assert!((got - ln_fact).abs() <= 1e-13 * ln_fact.max(1.0), "{k}!");
    }
}

#[test]
fn zeta_three_halves_inside_integral_bracket() {
    // Σ_{k<=K} k^{-3/2} + [2/sqrt(K+1), 2/sqrt(K)] brackets ζ(3/2)
    let big_k = 1_000_000_u64;
    let partial: f64 = (1..=big_k).rev().map(|k| (k as f64).powf(-1.5)).sum();
    let lo = partial + 2.0 / ((big_k + 1) as f64).sqrt();
    let hi = partial + 2.0 / (big_k as f64).sqrt();
    let z = zeta_three_halves();
    assert!(lo - 1e-12 <= z && z <= hi + 1e-12, "{lo} <= {z} <= {hi}");
    assert!((z - 2.612_375_348_685_488_343).abs() < 1e-14);
}

#[test]
fn rate_constant_value() {
    let c = Constants::compute();
    assert!((c.rate - 1.042_186_978_869_076_555).abs() < 1e-14);
    assert!((c.rate - c.zeta_three_halves / (2.0 * std::f64::consts::PI).sqrt()).abs() < 1e-15);
}

fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Σ_{k<=n} x^k / k! and Σ_{k<=n} x^{2k} / (2k)! in exact arithmetic.
fn exact_sections(n: u32, x: &BigRational) -> (BigRational, BigRational) {
    let mut exp_sum = BigRational::zero();
    let mut cosh_sum = BigRational::zero();
    let mut term = BigRational::one();
    for k in 0..=2 * n {
        if k > 0 {
            term = term * x / BigRational::from_integer(BigInt::from(k));
        }
        if k <= n {
            exp_sum += &term;
        }
        if k % 2 == 0 {
            cosh_sum += &term;
        }
    }
    (exp_sum, cosh_sum)
}

#[test]
fn sections_match_exact_rational_arithmetic() {
    for n in 0..=20_u32 {
        for q in 0..=20_i64 {
            let x = rational(q, 4);
            let (e, c) = exact_sections(n, &x);
            let xf = q as f64 / 4.0;
            let e = e.to_f64().unwrap();
            let c = c.to_f64().unwrap();
            assert!((exp_section(n, xf) - e).abs() <= 1e-14 * e, "e_{n}({xf})");
            assert!((cosh_section(n, xf) - c).abs() <= 1e-14 * c, "cosh_{n}({xf})");
            let scaled = ln_scaled_cosh_section(n, xf).exp();
            let want = (-xf).exp() * c;
            assert!((scaled - want).abs() <= 1e-13 * want, "scaled cosh_{n}({xf})");
        }
    }
}

#[test]
fn cosh_section_never_exceeds_cosh() {
    for n in [1_u32, 3, 10, 40, 150] {
        for i in 0..=200 {
            let x = i as f64 * 0.25;
            assert!(cosh_section(n, x) <= x.cosh() * (1.0 + 1e-14), "n={n} x={x}");
        }
    }
}

#[test]
fn scaled_section_is_monotone_and_positive_on_grid() {
    let grid = DEFAULT_GRID_POINTS;
    for n in (1..=200_u32).step_by(7).chain([200]) {
        let mut prev = f64::INFINITY;
        for i in 0..grid {
            let x = 4.0 * i as f64 / (grid - 1) as f64;
            let f = f_section(n, x).unwrap();
            assert!(f > 0.0 && f <= 1.0, "f_{n}({x}) = {f}");
            assert!(f <= prev * (1.0 + 1e-13), "f_{n} rises at {x}");
            prev = f;
            assert!(ln_exp_minus_section(n, x).is_finite());
            assert!(ln_exp_minus_section(n, x) >= -4.0 * n as f64 * x - 1e-9);
        }
    }
}

#[test]
fn derivative_of_f_is_minus_n_exp_minus_section() {
    // central difference: O(h²) truncation, O(eps/h) rounding
    let h = 1e-5;
    for n in [1_u32, 4, 25, 100] {
        for &x in &[0.05, 0.4, 1.0, 1.7, 2.5] {
            let fd = (f_section(n, x + h).unwrap() - f_section(n, x - h).unwrap()) / (2.0 * h);
            let want = -(n as f64) * ln_exp_minus_section(n, x / 2.0).exp();
            assert!(
                (fd - want).abs() <= 1e-6 * want.abs() + 1e-10,
                "n={n} x={x}: {fd} vs {want}"
            );
        }
    }
}

#[test]
fn exp_minus_section_small_n_closed_form() {
    // e^{-2nx} e_{2n}(-2nx) directly, where nothing cancels badly
    for n in [1_u32, 2, 3] {
        for &x in &[0.1, 0.3, 0.6] {
            let y = 2.0 * n as f64 * x;
            let direct = (-y).exp() * exp_section(2 * n, -y);
            let got = ln_exp_minus_section(n, x).exp();
            assert!((got - direct).abs() <= 1e-13 * direct, "n={n} x={x}");
        }
    }
}

// worst margin of the plateau bound at x = s, from a 40-digit evaluation
const PLATEAU_MARGINS: [(u32, f64); 6] = [
    (100, 0.002_064_14),
    (400, 1.455_72e-4),
    (900, 1.110_62e-5),
    (2000, 2.617_49e-7),
    (5000, 3.645_73e-10),
    (10_000, 2.257_02e-13),
];

#[test]
fn plateau_margins_match_high_precision() {
    for &(n, want) in &PLATEAU_MARGINS {
        let r = lemma4_check(n, (n as f64).powf(0.25)).unwrap();
        assert!(r.passed, "n={n}");
        assert_eq!(r.worst_x, r.params.s);
        // the last digit is uncertain, and at n = 10^4 so is the absolute level
        let tol = (2e-5 * want).max(2e-16 * 1e2);
        assert!((r.worst_margin - want).abs() <= tol, "n={n}: {} vs {want}", r.worst_margin);
    }
}

#[test]
fn plateau_holds_from_the_first_n() {
    assert_eq!(empirical_threshold(3000, 201).unwrap(), 1);
}

#[test]
fn plateau_params_reject_bad_input() {
    assert!(SectionBoundParams::new(0, 1.0).is_err());
    assert!(SectionBoundParams::new(4, 0.0).is_err());
    assert!(SectionBoundParams::new(4, 4.0).is_err());
    assert!(lemma4_check_on_grid(10, 1.0, 1).is_err());
}
