//! Riemann zeta values by Euler–Maclaurin summation.

use serde::{Deserialize, Serialize};

/// `B_{2k} / (2k)!` for `k = 1..=8`.
const BERNOULLI_OVER_FACTORIAL: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30_240.0,
    -1.0 / 1_209_600.0,
    1.0 / 47_900_160.0,
    -691.0 / 1_307_674_368_000.0,
    1.0 / 74_724_249_600.0,
    -3617.0 / 10_670_622_842_880_000.0,
];

const HEAD_TERMS: usize = 16;

/// `ζ(s)` for real `s > 1`.
///
/// Sums the first 15 terms directly, then adds the integral tail, the
/// half-term at the cut, and eight Bernoulli corrections. For `s` in
/// `(1, 4]` the first omitted correction is below `1e-22`.
pub fn zeta(s: f64) -> f64 {
    debug_assert!(s > 1.0);
    let cut = HEAD_TERMS as f64;
    let head: f64 = (1..HEAD_TERMS).rev().map(|m| (m as f64).powf(-s)).sum();
    let mut acc = head + cut.powf(1.0 - s) / (s - 1.0) + 0.5 * cut.powf(-s);
    // rising = s (s+1) ... (s+2k-2), power = cut^{-s-2k+1}
    let mut rising = s;
    let mut power = cut.powf(-s - 1.0);
    for (k, c) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        acc += c * rising * power;
        let next = 2.0 * (k as f64 + 1.0);
        rising *= (s + next - 1.0) * (s + next);
        power /= cut * cut;
    }
    acc
}

/// `ζ(3/2) = 2.6123753486854883...`
pub fn zeta_three_halves() -> f64 {
    zeta(1.5)
}

/// The constants governing the `sqrt(N)` decay of `p_{N,0}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Constants {
    pub zeta_three_halves: f64,
    /// `ζ(3/2) / sqrt(2π)`.
    pub rate: f64,
}

impl Constants {
    pub fn compute() -> Self {
        let zeta_three_halves = zeta_three_halves();
        Self {
            zeta_three_halves,
            rate: zeta_three_halves / (2.0 * std::f64::consts::PI).sqrt(),
        }
    }
}
