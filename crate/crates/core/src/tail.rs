//! Tail-index estimation under random right censoring.
//!
//! The Hill estimator of `Z` estimates `gamma = gamma1 * p`; dividing it by the
//! proportion `p_hat` of uncensored observations among the top `k` recovers
//! the tail index `gamma1` of the lifetime.

use serde::{Deserialize, Serialize};

use crate::censoring::CensoredSample;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TailEstimate {
    pub k: usize,
    pub gamma_hill: f64,
    pub p_hat: f64,
    pub gamma1_hat: f64,
}

fn check_k(s: &CensoredSample, k: usize) -> Result<()> {
    let n = s.len();
    if k < 2 || k + 1 > n {
        return Err(Error::OutOfRange {
            what: "k",
            value: k,
            lo: 2,
            hi: n.saturating_sub(1),
        });
    }
    Ok(())
}

/// `(1/k) sum_{i=1}^{k} log(Z_{n-i+1:n} / Z_{n-k:n})`.
pub fn hill(s: &CensoredSample, k: usize) -> Result<f64> {
    check_k(s, k)?;
    let n = s.len();
    let threshold = s.order_stat(n - k);
    if !(threshold > 0.0) {
        return Err(Error::Domain {
            what: "threshold",
            value: threshold,
        });
    }
    let sum: f64 = s.z()[n - k..].iter().map(|&z| (z / threshold).ln()).sum();
    Ok(sum / k as f64)
}

/// Fraction of uncensored observations among the top `k`.
pub fn p_hat(s: &CensoredSample, k: usize) -> Result<f64> {
    check_k(s, k)?;
    let n = s.len();
    let count = s.delta()[n - k..].iter().filter(|&&d| d).count();
    Ok(count as f64 / k as f64)
}

/// Censoring-adapted Hill estimator `hill / p_hat`.
pub fn gamma1_hat(s: &CensoredSample, k: usize) -> Result<f64> {
    Ok(tail_estimate(s, k)?.gamma1_hat)
}

pub fn tail_estimate(s: &CensoredSample, k: usize) -> Result<TailEstimate> {
    let gamma_hill = hill(s, k)?;
    let p = p_hat(s, k)?;
    if p == 0.0 {
        return Err(Error::AllCensoredTail(k));
    }
    Ok(TailEstimate {
        k,
        gamma_hill,
        p_hat: p,
        gamma1_hat: gamma_hill / p,
    })
}

/// Controls of the stability-based choice of `k`.
///
/// `k*` minimises
/// `(1/k) sum_{i=2}^{k} i^theta |g(i) - median(g(2), ..., g(k))|`
/// over `k_min <= k <= k_max`, where `g(i)` is the censored Hill estimate at
/// `i`. Explicit bounds win over the fractional defaults.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct KSelection {
    pub theta: f64,
    pub k_min: Option<usize>,
    pub k_max: Option<usize>,
    pub k_min_frac: f64,
    pub k_max_frac: f64,
}

/// Smallest default lower bound; the criterion vanishes identically at `k = 2`
/// and is dominated by noise for the next few `k`.
pub const K_MIN_FLOOR: usize = 10;

impl Default for KSelection {
    fn default() -> Self {
        Self {
            theta: 0.3,
            k_min: None,
            k_max: None,
            k_min_frac: 0.01,
            k_max_frac: 0.25,
        }
    }
}

impl KSelection {
    pub fn with_bounds(k_min: usize, k_max: usize) -> Self {
        Self {
            k_min: Some(k_min),
            k_max: Some(k_max),
            ..Self::default()
        }
    }

    /// Resolved `(k_min, k_max)` for a sample of size `n`.
    pub fn bounds(&self, n: usize) -> Result<(usize, usize)> {
        if !(0.0..=0.5).contains(&self.theta) {
            return Err(Error::Config(format!(
                "theta = {} must lie in [0, 0.5]",
                self.theta
            )));
        }
        let upper = n.saturating_sub(2);
        let k_max = match self.k_max {
            Some(k) => k,
            None => ((self.k_max_frac * n as f64).floor() as usize).min(upper),
        };
        let k_min = match self.k_min {
            Some(k) => k,
            None => {
                let default = K_MIN_FLOOR.max((self.k_min_frac * n as f64).floor() as usize);
                default.min(k_max.saturating_sub(1)).max(2)
            }
        };
        if k_min < 2 || k_min >= k_max || k_max > upper {
            return Err(Error::Config(format!(
                "k bounds [{k_min}, {k_max}] invalid for n = {n} (need 2 <= k_min < k_max <= n - 2)"
            )));
        }
        Ok((k_min, k_max))
    }
}

/// One row of the `k` sweep, as emitted by `ktrace`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KTraceRow {
    pub k: usize,
    pub gamma_hill: f64,
    pub p_hat: f64,
    /// NaN when every top-`k` observation is censored.
    pub gamma1_hat: f64,
    /// NaN below `k_min` or where `gamma1_hat` is undefined.
    pub criterion: f64,
}

/// Hill and `p_hat` for every `k` in `1..=k_max`, from prefix sums over the top.
struct Sweep {
    gamma_hill: Vec<f64>,
    p_hat: Vec<f64>,
}

impl Sweep {
    fn new(s: &CensoredSample, k_max: usize) -> Self {
        let n = s.len();
        let z = s.z();
        let delta = s.delta();
        let mut gamma_hill = Vec::with_capacity(k_max + 1);
        let mut p_hat = Vec::with_capacity(k_max + 1);
        gamma_hill.push(f64::NAN);
        p_hat.push(f64::NAN);
        let mut log_sum = 0.0;
        let mut uncensored = 0usize;
        for k in 1..=k_max {
            log_sum += z[n - k].ln();
            uncensored += usize::from(delta[n - k]);
            gamma_hill.push(log_sum / k as f64 - z[n - k - 1].ln());
            p_hat.push(uncensored as f64 / k as f64);
        }
        Self { gamma_hill, p_hat }
    }

    fn gamma1(&self, k: usize) -> Option<f64> {
        let p = self.p_hat[k];
        (p > 0.0).then(|| self.gamma_hill[k] / p)
    }
}

/// Stability criterion for `k = 2..=k_max` (index = k); `None` where undefined.
fn criteria(sweep: &Sweep, k_max: usize, theta: f64) -> Vec<Option<f64>> {
    let mut out = vec![None; k_max + 1];
    // Defined (i, g(i)) pairs and a sorted copy of their values for the median.
    let mut defined: Vec<(f64, f64)> = Vec::with_capacity(k_max);
    let mut sorted: Vec<f64> = Vec::with_capacity(k_max);
    for k in 2..=k_max {
        if let Some(g) = sweep.gamma1(k) {
            defined.push(((k as f64).powf(theta), g));
            let pos = sorted.partition_point(|&v| v < g);
            sorted.insert(pos, g);
        }
        if sorted.is_empty() {
            continue;
        }
        // Lower median: order statistic ceil(m/2).
        let median = sorted[(sorted.len() + 1) / 2 - 1];
        let total: f64 = defined.iter().map(|&(w, g)| w * (g - median).abs()).sum();
        out[k] = Some(total / k as f64);
    }
    out
}

/// Data-driven number of top order statistics.
///
/// Ties go to the smaller `k`; `k` with an all-censored top are skipped.
pub fn select_k_star(s: &CensoredSample, sel: &KSelection) -> Result<usize> {
    let (k_min, k_max) = sel.bounds(s.len())?;
    let sweep = Sweep::new(s, k_max);
    let crit = criteria(&sweep, k_max, sel.theta);
    let mut best: Option<(usize, f64)> = None;
    for k in k_min..=k_max {
        if sweep.gamma1(k).is_none() {
            continue;
        }
        if let Some(c) = crit[k] {
            if best.is_none_or(|(_, b)| c < b) {
                best = Some((k, c));
            }
        }
    }
    best.map(|(k, _)| k).ok_or(Error::Selection { k_min, k_max })
}

/// Per-`k` diagnostics for `k = 2..=k_max`.
pub fn k_trace(s: &CensoredSample, sel: &KSelection) -> Result<Vec<KTraceRow>> {
    let (k_min, k_max) = sel.bounds(s.len())?;
    let sweep = Sweep::new(s, k_max);
    let crit = criteria(&sweep, k_max, sel.theta);
    Ok((2..=k_max)
        .map(|k| {
            let gamma1_hat = sweep.gamma1(k).unwrap_or(f64::NAN);
            let criterion = match crit[k] {
                Some(c) if k >= k_min && !gamma1_hat.is_nan() => c,
                _ => f64::NAN,
            };
            KTraceRow {
                k,
                gamma_hill: sweep.gamma_hill[k],
                p_hat: sweep.p_hat[k],
                gamma1_hat,
                criterion,
            }
        })
        .collect())
}
