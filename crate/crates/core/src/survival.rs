//! Kaplan-Meier product-limit estimator in order-statistic form.
//!
//! With `S_0 = 1` and `S_m = prod_{j<=m} ((n-j)/(n-j+1))^{delta_[j:n]}`, the
//! jump at `Z_{i:n}` is `W_{i,n} = delta_[i:n] / (n-i+1) * S_{i-1}` and
//! `S_m` is the estimated survival just after `Z_{m:n}`.
//!
//! Weights start at `i = 1`, so the first order statistic carries mass
//! `delta_[1:n] / n` like every product-limit estimator.
//!
//! Internally `S_m = (n-m)/n * C_m` with `C_m = prod_{j<=m, censored} (n-j+1)/(n-j)`,
//! so `W_{i,n} = delta_[i:n] C_{i-1} / n`. Without censoring `C` is exactly 1.

use crate::censoring::CensoredSample;
use crate::error::{Error, Result};

/// Above this size the censoring factor is accumulated in log space.
const LOG_SPACE_THRESHOLD: usize = 10_000;

/// `[C_0, C_1, ..., C_{n-1}]`.
fn censoring_factors(s: &CensoredSample) -> Vec<f64> {
    let n = s.len();
    let mut out = Vec::with_capacity(n);
    out.push(1.0);
    let log_space = n > LOG_SPACE_THRESHOLD;
    let (mut acc, mut log_acc) = (1.0, 0.0);
    for (idx, &d) in s.delta().iter().take(n - 1).enumerate() {
        let j = idx + 1;
        if !d {
            if log_space {
                log_acc += (1.0 / (n - j) as f64).ln_1p();
                acc = log_acc.exp();
            } else {
                acc *= (n - j + 1) as f64 / (n - j) as f64;
            }
        }
        out.push(acc);
    }
    out
}

/// `[S_0, S_1, ..., S_n]`; `S` only moves at uncensored indices.
fn running_products(s: &CensoredSample) -> Vec<f64> {
    let n = s.len();
    let c = censoring_factors(s);
    let mut out = Vec::with_capacity(n + 1);
    out.push(1.0);
    let mut acc = 1.0;
    for (idx, &d) in s.delta().iter().enumerate() {
        let m = idx + 1;
        if d {
            acc = if m == n {
                0.0
            } else {
                (n - m) as f64 / n as f64 * c[m]
            };
        }
        out.push(acc);
    }
    out
}

/// The estimated distribution as a step function.
#[derive(Debug, Clone, PartialEq)]
pub struct KmCurve {
    pub jump_points: Vec<f64>,
    pub weights: Vec<f64>,
    /// `F_n bar (Z_{i:n})` per index.
    pub survival_at_jump: Vec<f64>,
}

impl KmCurve {
    pub fn new(s: &CensoredSample) -> Self {
        let n = s.len() as f64;
        let weights = s
            .delta()
            .iter()
            .zip(censoring_factors(s))
            .map(|(&d, c)| if d { c / n } else { 0.0 })
            .collect();
        let products = running_products(s);
        Self {
            jump_points: s.z().to_vec(),
            weights,
            survival_at_jump: products[1..].to_vec(),
        }
    }

    /// `F_n(x)`, equal to 1 from the largest observation on.
    pub fn cdf(&self, x: f64) -> f64 {
        let last = *self.jump_points.last().expect("non-empty curve");
        if x >= last {
            return 1.0;
        }
        self.jump_points
            .iter()
            .zip(&self.weights)
            .take_while(|(&z, _)| z <= x)
            .map(|(_, w)| w)
            .sum()
    }

    pub fn survival(&self, x: f64) -> f64 {
        1.0 - self.cdf(x)
    }
}

/// Product-limit masses `W_{1,n}, ..., W_{n,n}`.
pub fn km_weights(s: &CensoredSample) -> Vec<f64> {
    KmCurve::new(s).weights
}

/// `S_m = F_n bar (Z_{m:n})` for `1 <= m <= n - 1`.
pub fn km_survival_product(s: &CensoredSample, m: usize) -> Result<f64> {
    let n = s.len();
    if m == 0 || m >= n {
        return Err(Error::OutOfRange {
            what: "m",
            value: m,
            lo: 1,
            hi: n - 1,
        });
    }
    Ok(running_products(s)[m])
}

/// KM integral `sum_i W_{i,n} Z_{i:n}`, the classical censored-data mean.
pub fn km_mean(s: &CensoredSample) -> f64 {
    if s.uncensored_count() == 0 {
        log::warn!("km_mean: every observation is censored, the KM mean is 0");
    }
    truncated_integral(s, s.len()).0
}

/// Body and threshold pieces shared by the estimators: `(sum_{i<=m} W_i Z_i, S_m)`.
pub(crate) fn truncated_integral(s: &CensoredSample, m: usize) -> (f64, f64) {
    let n = s.len();
    let c = censoring_factors(s);
    let weighted: f64 = s
        .z()
        .iter()
        .zip(s.delta())
        .zip(&c)
        .take(m)
        .filter(|((_, &d), _)| d)
        .map(|((&z, _), &ci)| ci * z)
        .sum();
    (weighted / n as f64, running_products(s)[m])
}
