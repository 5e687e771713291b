//! Nonparametric bootstrap of the mean estimator.
//!
//! Pairs `(Z_i, delta_i)` are resampled with replacement. Because the sample
//! is stored sorted, a resample is rebuilt in order-statistic form from the
//! multiplicity of each index, without sorting.

use rand::Rng;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::censoring::CensoredSample;
use crate::error::{Error, Result};
use crate::estimator::{estimate_at, KChoice};
use crate::tail::{select_k_star, KSelection};

/// `k` used inside every resample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KPolicy {
    /// Keep `k` fixed; `None` takes `k*` selected on the original sample.
    Fixed(Option<usize>),
    /// Re-run the selection on every resample.
    Reauto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CiMethod {
    /// `mu_hat -/+ z_{(1+level)/2} * boot_sd`
    Normal,
    /// Empirical quantiles of the bootstrap estimates.
    Percentile,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BootstrapConfig {
    pub b: usize,
    pub policy: KPolicy,
    pub level: f64,
    pub method: CiMethod,
    pub selection: KSelection,
}

impl Default for BootstrapConfig {
    fn default() -> Self {
        Self {
            b: 500,
            policy: KPolicy::Fixed(None),
            level: 0.95,
            method: CiMethod::Normal,
            selection: KSelection::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BootstrapResult {
    pub b: usize,
    /// Retained replicate estimates, in replicate order.
    pub estimates: Vec<f64>,
    pub failures: usize,
    /// Estimate on the original sample; the normal interval is centred here.
    pub point: f64,
    /// `k` of the original-sample estimate.
    pub k: usize,
    pub boot_mean: f64,
    pub boot_sd: f64,
    pub ci_lower: f64,
    pub ci_upper: f64,
    pub level: f64,
}

impl BootstrapResult {
    pub fn contains(&self, value: f64) -> bool {
        self.ci_lower <= value && value <= self.ci_upper
    }

    pub fn length(&self) -> f64 {
        self.ci_upper - self.ci_lower
    }
}

/// One resample, already in order-statistic form.
fn resample<R: Rng + ?Sized>(s: &CensoredSample, counts: &mut [u32], rng: &mut R) -> CensoredSample {
    let n = s.len();
    counts.iter_mut().for_each(|c| *c = 0);
    for _ in 0..n {
        counts[rng.random_range(0..n)] += 1;
    }
    let mut z = Vec::with_capacity(n);
    let mut delta = Vec::with_capacity(n);
    for ((&zi, &di), &c) in s.z().iter().zip(s.delta()).zip(counts.iter()) {
        for _ in 0..c {
            z.push(zi);
            delta.push(di);
        }
    }
    CensoredSample::from_sorted(z, delta)
}

/// Pairwise summation, so the aggregate does not depend on accumulation order details.
fn pairwise_sum(values: &[f64]) -> f64 {
    if values.len() <= 8 {
        return values.iter().sum();
    }
    let (a, b) = values.split_at(values.len() / 2);
    pairwise_sum(a) + pairwise_sum(b)
}

/// Linear-interpolation sample quantile of sorted data.
fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (pos - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Bootstrap distribution of the estimator and a confidence interval for the mean.
pub fn bootstrap_mu<R: Rng + ?Sized>(
    s: &CensoredSample,
    config: &BootstrapConfig,
    rng: &mut R,
) -> Result<BootstrapResult> {
    let BootstrapConfig {
        b,
        policy,
        level,
        method,
        selection,
    } = *config;
    if b < 2 {
        return Err(Error::Config(format!("bootstrap size b = {b} must be >= 2")));
    }
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::Config(format!("level = {level} must lie in (0, 1)")));
    }

    let k = match policy {
        KPolicy::Fixed(Some(k)) => k,
        KPolicy::Fixed(None) | KPolicy::Reauto => KChoice::Auto(selection).resolve(s)?,
    };
    let point = estimate_at(s, k, f64::NAN)?.mu_hat;

    let mut counts = vec![0u32; s.len()];
    let mut estimates = Vec::with_capacity(b);
    for _ in 0..b {
        let star = resample(s, &mut counts, rng);
        let k_star = match policy {
            KPolicy::Fixed(_) => Ok(k),
            KPolicy::Reauto => select_k_star(&star, &selection),
        };
        if let Ok(est) = k_star.and_then(|k| estimate_at(&star, k, f64::NAN)) {
            estimates.push(est.mu_hat);
        }
    }

    let failures = b - estimates.len();
    if 2 * failures > b || estimates.len() < 2 {
        return Err(Error::UnreliableBootstrap { failures, b });
    }

    let retained = estimates.len() as f64;
    let boot_mean = pairwise_sum(&estimates) / retained;
    let squares: Vec<f64> = estimates.iter().map(|e| (e - boot_mean).powi(2)).collect();
    let mut boot_sd = (pairwise_sum(&squares) / (retained - 1.0)).sqrt();
    if estimates.iter().all(|&e| e == estimates[0]) {
        boot_sd = 0.0;
    }

    let (ci_lower, ci_upper) = match method {
        CiMethod::Normal => {
            let z = Normal::standard().inverse_cdf(0.5 + level / 2.0);
            (point - z * boot_sd, point + z * boot_sd)
        }
        CiMethod::Percentile => {
            let mut sorted = estimates.clone();
            sorted.sort_by(f64::total_cmp);
            let alpha = (1.0 - level) / 2.0;
            (
                quantile_sorted(&sorted, alpha),
                quantile_sorted(&sorted, 1.0 - alpha),
            )
        }
    };

    Ok(BootstrapResult {
        b,
        estimates,
        failures,
        point,
        k,
        boot_mean,
        boot_sd,
        ci_lower,
        ci_upper,
        level,
    })
}
