//! Monte Carlo estimate of the real-eigenvalue-count distribution.
//!
//! Each worker draws from its own ChaCha8 stream (`seed`, stream index =
//! worker index), so a run is reproducible for a fixed
//! `(size, samples, seed, workers)`. Real eigenvalues are counted from the
//! block structure of the real Schur form.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{Error, Result};
use crate::linalg::{real_schur_eigenvalues, DEFAULT_BLOCK_TAU};
use crate::probability::ProbabilityTable;

/// Largest tolerated fraction of samples dropped for non-convergence.
pub const MAX_DISCARD_RATE: f64 = 1e-4;
pub const MIN_SAMPLES: u64 = 1000;

/// Fills a `size × size` row-major matrix with standard normal deviates.
pub fn sample_ginibre<R: Rng + ?Sized>(size: usize, rng: &mut R) -> Vec<f64> {
    (0..size * size).map(|_| rng.sample(StandardNormal)).collect()
}

/// Number of real eigenvalues of the row-major `n × n` matrix.
pub fn count_real_eigenvalues(matrix: &[f64], n: usize) -> Result<usize> {
    if matrix.len() != n * n {
        return Err(Error::DimensionMismatch {
            expected: n * n,
            actual: matrix.len(),
        });
    }
    let mut work = matrix.to_vec();
    Ok(real_schur_eigenvalues(&mut work, n, DEFAULT_BLOCK_TAU)?.real_count)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MCEstimate {
    pub matrix_size: usize,
    pub samples: u64,
    pub seed: u64,
    pub workers: usize,
    /// `counts[k]` = samples with exactly `2k` (or `2k+1` for odd sizes)
    /// real eigenvalues.
    pub counts: Vec<u64>,
    pub phat: Vec<f64>,
    /// `sqrt(phat (1 - phat) / samples)`.
    pub stderr: Vec<f64>,
    /// Draws replaced because the Schur iteration did not converge.
    pub discarded: u64,
    /// Samples whose count had the wrong parity. A nonzero value makes
    /// [`estimate`] fail, so a returned estimate always has zero here.
    pub parity_violations: u64,
}

struct Tally {
    counts: Vec<u64>,
    discarded: u64,
    parity_violations: u64,
}

fn run_worker(size: usize, samples: u64, seed: u64, stream: u64) -> Tally {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut tally = Tally {
        counts: vec![0; size / 2 + 1],
        discarded: 0,
        parity_violations: 0,
    };
    let mut done = 0;
    // a pathological stream cannot loop forever
    let max_draws = samples + samples / 100 + 10;
    let mut draws = 0;
    while done < samples && draws < max_draws {
        draws += 1;
        let mut m = sample_ginibre(size, &mut rng);
        match real_schur_eigenvalues(&mut m, size, DEFAULT_BLOCK_TAU) {
            Ok(ev) => {
                if ev.real_count % 2 != size % 2 || ev.real_count > size {
                    tally.parity_violations += 1;
                }
                tally.counts[ev.real_count.min(size) / 2] += 1;
                done += 1;
            }
            Err(_) => tally.discarded += 1,
        }
    }
    tally
}

pub fn estimate(size: usize, samples: u64, seed: u64) -> Result<MCEstimate> {
    estimate_with_workers(size, samples, seed, 1)
}

pub fn estimate_with_workers(size: usize, samples: u64, seed: u64, workers: usize) -> Result<MCEstimate> {
    if size < 2 || size % 2 != 0 {
        return Err(Error::Precondition(format!("matrix size {size} must be even and at least 2")));
    }
    if samples < MIN_SAMPLES {
        return Err(Error::Precondition(format!("need at least {MIN_SAMPLES} samples, got {samples}")));
    }
    if workers == 0 {
        return Err(Error::Precondition("need at least one worker".into()));
    }
    let share = |w: usize| samples / workers as u64 + u64::from((w as u64) < samples % workers as u64);
    let tallies: Vec<Tally> = if workers == 1 {
        vec![run_worker(size, samples, seed, 0)]
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..workers)
                .map(|w| scope.spawn(move || run_worker(size, share(w), seed, w as u64)))
                .collect();
            handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
        })
    };

    let mut counts = vec![0_u64; size / 2 + 1];
    let mut discarded = 0;
    let mut parity_violations = 0;
    for t in &tallies {
        for (c, x) in counts.iter_mut().zip(&t.counts) {
            *c += x;
        }
        discarded += t.discarded;
        parity_violations += t.parity_violations;
    }
    if parity_violations > 0 {
        return Err(Error::Degenerate(format!(
            "{parity_violations} samples had a real-eigenvalue count of the wrong parity"
        )));
    }
    let accepted: u64 = counts.iter().sum();
    let attempted = accepted + discarded;
    if discarded as f64 > MAX_DISCARD_RATE * attempted as f64 || accepted < samples {
        return Err(Error::DiscardRate {
            discarded,
            samples: attempted,
            max_rate: MAX_DISCARD_RATE,
        });
    }
    let total = accepted as f64;
    let phat: Vec<f64> = counts.iter().map(|&c| c as f64 / total).collect();
    let stderr = phat.iter().map(|p| (p * (1.0 - p) / total).sqrt()).collect();
    Ok(MCEstimate {
        matrix_size: size,
        samples: accepted,
        seed,
        workers,
        counts,
        phat,
        stderr,
        discarded,
        parity_violations,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub matrix_size: usize,
    pub exact: Vec<f64>,
    /// `(phat_k - p_k) / stderr_k`; where `phat_k` is 0 or 1 the standard
    /// error of the exact `p_k` is used instead.
    pub z_scores: Vec<f64>,
    pub max_abs_z: f64,
    pub chi_square: f64,
    pub degrees_of_freedom: usize,
    /// Upper-tail probability of `chi_square`, over bins expecting at
    /// least five counts.
    pub p_value: f64,
}

pub fn compare(est: &MCEstimate, table: &ProbabilityTable) -> Result<Comparison> {
    if est.matrix_size != table.matrix_size() {
        return Err(Error::DimensionMismatch {
            expected: table.matrix_size(),
            actual: est.matrix_size,
        });
    }
    let total = est.samples as f64;
    let exact: Vec<f64> = (0..table.log_p.len()).map(|k| table.p(k)).collect();
    let z_scores: Vec<f64> = exact
        .iter()
        .zip(est.phat.iter().zip(&est.stderr))
        .map(|(&p, (&ph, &se))| {
            let se = if se > 0.0 { se } else { (p * (1.0 - p) / total).sqrt() };
            if se > 0.0 {
                (ph - p) / se
            } else {
                0.0
            }
        })
        .collect();
    let max_abs_z = z_scores.iter().fold(0.0_f64, |m, z| m.max(z.abs()));

    let mut chi_square = 0.0;
    let mut bins = 0_usize;
    for (&p, &observed) in exact.iter().zip(&est.counts) {
        let expected = p * total;
        if expected >= 5.0 {
            chi_square += (observed as f64 - expected).powi(2) / expected;
            bins += 1;
        }
    }
    let degrees_of_freedom = bins.saturating_sub(1);
    let p_value = if degrees_of_freedom == 0 {
        1.0
    } else {
        ChiSquared::new(degrees_of_freedom as f64)
            .expect("positive degrees of freedom")
            .sf(chi_square)
    };
    Ok(Comparison {
        matrix_size: est.matrix_size,
        exact,
        z_scores,
        max_abs_z,
        chi_square,
        degrees_of_freedom,
        p_value,
    })
}
