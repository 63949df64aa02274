use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::rng::{stream_id, RngStream};
use crate::error::{domain, Result};

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.96;

/// Samples per work unit of the parallel driver. Chunk boundaries are fixed,
/// so the merge order (and hence every bit of the result) does not depend on
/// the number of worker threads.
pub const CHUNK: u64 = 512;

/// Monte-Carlo estimate of an expectation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MCEstimate {
    pub mean: f64,
    /// Sample standard deviation over `sqrt(n_samples)`.
    pub stderr: f64,
    pub n_samples: u64,
    pub seed: u64,
    /// `mean ∓ 1.96 stderr`.
    pub ci95: [f64; 2],
}

impl MCEstimate {
    pub fn new(mean: f64, stderr: f64, n_samples: u64, seed: u64) -> Self {
        Self {
            mean,
            stderr,
            n_samples,
            seed,
            ci95: [mean - Z95 * stderr, mean + Z95 * stderr],
        }
    }

    /// The estimate of `c · X` given this estimate of `X`.
    pub fn scaled(&self, c: f64) -> Self {
        Self::new(self.mean * c, self.stderr * c.abs(), self.n_samples, self.seed)
    }

    /// `sqrt(σ₁² + σ₂²)`, the standard error of a difference of independent
    /// estimates.
    pub fn combined_stderr(&self, other: &MCEstimate) -> f64 {
        self.stderr.hypot(other.stderr)
    }

    /// `|mean − target| ≤ k·stderr + allowance`.
    pub fn covers(&self, target: f64, k_sigma: f64, allowance: f64) -> bool {
        (self.mean - target).abs() <= k_sigma * self.stderr + allowance
    }
}

/// Single-pass mean/variance accumulator (Welford), mergeable with the
/// pairwise update of Chan, Golub and LeVeque.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Accumulator {
    n: u64,
    mean: f64,
    m2: f64,
}

impl Accumulator {
    #[inline]
    pub fn push(&mut self, x: f64) {
        self.n += 1;
        let delta = x - self.mean;
        self.mean += delta / self.n as f64;
        self.m2 += delta * (x - self.mean);
    }

    pub fn merge(&mut self, other: &Accumulator) {
        if other.n == 0 {
            return;
        }
        if self.n == 0 {
            *self = *other;
            return;
        }
        let n = self.n + other.n;
        let delta = other.mean - self.mean;
        self.mean += delta * other.n as f64 / n as f64;
        self.m2 += other.m2 + delta * delta * (self.n as f64 * other.n as f64 / n as f64);
        self.n = n;
    }

    pub fn count(&self) -> u64 {
        self.n
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Unbiased sample variance.
    pub fn variance(&self) -> f64 {
        if self.n < 2 {
            0.0
        } else {
            (self.m2 / (self.n - 1) as f64).max(0.0)
        }
    }

    pub fn estimate(&self, seed: u64) -> Result<MCEstimate> {
        if self.n < 2 {
            return domain(format!("need at least 2 samples, got {}", self.n));
        }
        let stderr = (self.variance() / self.n as f64).sqrt();
        Ok(MCEstimate::new(self.mean, stderr, self.n, seed))
    }
}

/// Mean, standard error and 95% interval of a sample stream.
pub fn aggregate(samples: impl IntoIterator<Item = f64>, seed: u64) -> Result<MCEstimate> {
    let mut acc = Accumulator::default();
    for x in samples {
        acc.push(x);
    }
    acc.estimate(seed)
}

/// Runs `n` independent samples in parallel and returns one accumulator per
/// output component. Sample `i` draws from stream `stream_id(tag, i)`.
pub fn sample_moments<const N: usize, F>(n: u64, seed: u64, tag: u16, sample: F) -> Result<[Accumulator; N]>
where
    F: Fn(&mut RngStream) -> Result<[f64; N]> + Sync,
{
    let chunks = n.div_ceil(CHUNK);
    let partials = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut acc = [Accumulator::default(); N];
            for i in c * CHUNK..((c + 1) * CHUNK).min(n) {
                let mut rng = RngStream::new(seed, stream_id(tag, i));
                let values = sample(&mut rng)?;
                for (a, v) in acc.iter_mut().zip(values) {
                    a.push(v);
                }
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(merge_in_order(&partials))
}

/// Pairwise tree reduction over chunk partials in index order.
fn merge_in_order<const N: usize>(partials: &[[Accumulator; N]]) -> [Accumulator; N] {
    match partials.len() {
        0 => [Accumulator::default(); N],
        1 => partials[0],
        len => {
            let (l, r) = partials.split_at(len / 2);
            let mut left = merge_in_order(l);
            let right = merge_in_order(r);
            for (a, b) in left.iter_mut().zip(right.iter()) {
                a.merge(b);
            }
            left
        }
    }
}

/// Runs `n` independent samples in parallel and returns them in index order.
pub fn sample_values<T, F>(n: u64, seed: u64, tag: u16, sample: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&mut RngStream) -> Result<T> + Sync,
{
    (0..n)
        .into_par_iter()
        .map(|i| sample(&mut RngStream::new(seed, stream_id(tag, i))))
        .collect()
}
