//! Extreme-value corrected estimator of the mean of a censored heavy-tailed lifetime.
//!
//! `mu = int_0^h F_bar + int_h^inf F_bar` with `h = Z_{n-k:n}`. The body is
//! integrated against the KM estimator; the tail integral is replaced by its
//! Karamata approximation `gamma1 / (1 - gamma1) * h * F_bar(h)`.

use serde::Serialize;

use crate::censoring::CensoredSample;
use crate::error::{Error, Result};
use crate::survival::{km_mean, truncated_integral};
use crate::tail::{select_k_star, tail_estimate, KSelection, TailEstimate};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeanEstimate {
    pub mu1_hat: f64,
    pub mu2_hat: f64,
    pub mu_hat: f64,
    pub tail: TailEstimate,
    /// Classical KM mean over the whole sample.
    pub km_baseline: f64,
    /// `Z_{n-k:n}`
    pub threshold: f64,
    /// `F_n bar (Z_{n-k:n})`
    pub survival_at_threshold: f64,
}

impl MeanEstimate {
    /// `sqrt(k) (mu_hat - mu) / (Z_{n-k:n} F_n bar (Z_{n-k:n}))`, the statistic
    /// with a Gaussian limit.
    pub fn standardized(&self, mu: f64) -> f64 {
        (self.tail.k as f64).sqrt() * (self.mu_hat - mu)
            / (self.threshold * self.survival_at_threshold)
    }
}

/// How the number of top order statistics is chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KChoice {
    Fixed(usize),
    Auto(KSelection),
}

impl KChoice {
    pub fn auto() -> Self {
        KChoice::Auto(KSelection::default())
    }

    pub fn resolve(&self, s: &CensoredSample) -> Result<usize> {
        match *self {
            KChoice::Fixed(k) => Ok(k),
            KChoice::Auto(ref sel) => select_k_star(s, sel),
        }
    }
}

fn check_k(s: &CensoredSample, k: usize) -> Result<()> {
    let n = s.len();
    if k < 2 || k + 2 > n {
        return Err(Error::OutOfRange {
            what: "k",
            value: k,
            lo: 2,
            hi: n.saturating_sub(2),
        });
    }
    Ok(())
}

/// Body part: `F_n bar (h) h + sum_{i<=n-k} W_{i,n} Z_{i:n}`.
pub fn mu1_hat(s: &CensoredSample, k: usize) -> Result<f64> {
    check_k(s, k)?;
    let m = s.len() - k;
    let (body, survival) = truncated_integral(s, m);
    Ok(survival * s.order_stat(m) + body)
}

fn tail_factor(gamma1: f64) -> Result<f64> {
    if !(gamma1 < 1.0) {
        return Err(Error::InfiniteMeanEstimate(gamma1));
    }
    Ok(gamma1 / (1.0 - gamma1))
}

/// Tail part: `gamma1_hat / (1 - gamma1_hat) * h * F_n bar (h)`.
pub fn mu2_hat(s: &CensoredSample, k: usize) -> Result<f64> {
    check_k(s, k)?;
    let tail = tail_estimate(s, k)?;
    let factor = tail_factor(tail.gamma1_hat)?;
    let m = s.len() - k;
    let (_, survival) = truncated_integral(s, m);
    Ok(factor * s.order_stat(m) * survival)
}

/// Full estimate at a fixed or data-driven `k`.
pub fn mu_hat(s: &CensoredSample, choice: &KChoice) -> Result<MeanEstimate> {
    let k = choice.resolve(s)?;
    estimate_at(s, k, km_mean(s))
}

/// As [`mu_hat`] but skips the KM baseline (used inside resampling loops).
pub(crate) fn estimate_at(s: &CensoredSample, k: usize, km_baseline: f64) -> Result<MeanEstimate> {
    check_k(s, k)?;
    let tail = tail_estimate(s, k)?;
    let factor = tail_factor(tail.gamma1_hat)?;
    let m = s.len() - k;
    let (body, survival) = truncated_integral(s, m);
    let threshold = s.order_stat(m);
    let mu1_hat = survival * threshold + body;
    let mu2_hat = factor * threshold * survival;
    Ok(MeanEstimate {
        mu1_hat,
        mu2_hat,
        mu_hat: mu1_hat + mu2_hat,
        tail,
        km_baseline,
        threshold,
        survival_at_threshold: survival,
    })
}

/// Second-order constants entering the asymptotic bias.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticParams {
    /// `lim sqrt(k) A1(h)`
    pub lambda1: f64,
    /// Second-order index of `F`, negative.
    pub tau1: f64,
    pub p: f64,
    pub gamma1: f64,
}

/// Centering constant `m` of the limiting normal law.
pub fn asymptotic_mean_m(params: &AsymptoticParams) -> Result<f64> {
    let AsymptoticParams {
        lambda1,
        tau1,
        p,
        gamma1,
    } = *params;
    if !(tau1 < 0.0) {
        return Err(Error::Parameter("tau1 must be negative"));
    }
    let d1 = (1.0 - p * tau1) * (1.0 - gamma1).powi(2);
    let d2 = (gamma1 + tau1 - 1.0) * (1.0 - gamma1);
    if d1 == 0.0 || d2 == 0.0 {
        return Err(Error::Parameter("singular denominator"));
    }
    Ok(lambda1 / d1 + lambda1 / d2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::censoring::load_sample;
    use approx::assert_relative_eq;

    fn uncensored(z: &[f64]) -> CensoredSample {
        load_sample(z.iter().map(|&z| (z, 1))).unwrap()
    }

    #[test]
    fn mu1_no_censoring() {
        let s = uncensored(&[1.0, 2.0, 3.0, 4.0]);
        assert_relative_eq!(mu1_hat(&s, 2).unwrap(), 1.75, epsilon = 1e-15);
    }

    #[test]
    fn mu1_all_censored_is_threshold() {
        let s = load_sample((1..=10).map(|i| (i as f64, 0))).unwrap();
        assert_eq!(mu1_hat(&s, 3).unwrap(), 7.0);
    }

    #[test]
    fn mu1_homogeneous() {
        let s = load_sample([(1.0, 1), (2.5, 0), (3.0, 1), (4.0, 1), (7.0, 0), (9.0, 1)]).unwrap();
        let c = 3.5;
        assert_relative_eq!(
            mu1_hat(&s.scaled(c).unwrap(), 2).unwrap(),
            c * mu1_hat(&s, 2).unwrap(),
            max_relative = 1e-14
        );
    }

    #[test]
    fn k_range_checks() {
        let s = uncensored(&[1.0, 2.0, 3.0, 4.0]);
        assert!(mu1_hat(&s, 1).is_err());
        assert!(mu1_hat(&s, 3).is_err());
        assert!(mu2_hat(&s, 3).is_err());
    }

    #[test]
    fn mu2_unit_factor() {
        // Top-3 logs relative to Z_{n-3:n} = 1 average to 0.5 with no censoring.
        let e = std::f64::consts::E;
        let s = uncensored(&[0.5, 1.0, e.powf(0.25), e.powf(0.5), e.powf(0.75)]);
        let gamma = hill_for(&s, 3);
        assert_relative_eq!(gamma, 0.5, epsilon = 1e-15);
        // Factor 1, threshold 1, survival (n - m) / n = 3/5.
        assert_relative_eq!(mu2_hat(&s, 3).unwrap(), 0.6, epsilon = 1e-14);
    }

    fn hill_for(s: &CensoredSample, k: usize) -> f64 {
        crate::tail::gamma1_hat(s, k).unwrap()
    }

    #[test]
    fn mu2_rejects_infinite_mean_estimate() {
        let s = uncensored(&[1.0, 2.0, 4.0, 8.0, 16.0]);
        // hill at k = 2 = (ln 4 + ln 2) / 2 > 1
        assert!(matches!(mu2_hat(&s, 2), Err(Error::InfiniteMeanEstimate(_))));
        assert!(matches!(
            mu_hat(&s, &KChoice::Fixed(2)),
            Err(Error::InfiniteMeanEstimate(_))
        ));
    }

    #[test]
    fn mu2_vanishes_with_flat_tail() {
        let s = uncensored(&[1.0, 2.0, 3.0, 3.0, 3.0, 3.0]);
        assert_eq!(mu2_hat(&s, 3).unwrap(), 0.0);
    }

    #[test]
    fn mu2_propagates_censored_tail() {
        let s = load_sample([(1.0, 1), (2.0, 1), (3.0, 1), (4.0, 0), (5.0, 0)]).unwrap();
        assert!(matches!(mu2_hat(&s, 2), Err(Error::AllCensoredTail(2))));
    }

    #[test]
    fn decomposition_identity() {
        let s = load_sample([
            (0.3, 1),
            (0.9, 0),
            (1.4, 1),
            (2.2, 1),
            (2.9, 0),
            (3.1, 1),
            (3.3, 1),
            (3.5, 1),
        ])
        .unwrap();
        let est = mu_hat(&s, &KChoice::Fixed(3)).unwrap();
        assert_eq!(est.mu_hat, est.mu1_hat + est.mu2_hat);
        assert_eq!(est.mu1_hat, mu1_hat(&s, 3).unwrap());
        assert_eq!(est.mu2_hat, mu2_hat(&s, 3).unwrap());
        assert_eq!(est.km_baseline, crate::survival::km_mean(&s));
        assert_eq!(est.threshold, 2.9);
    }

    #[test]
    fn m_examples() {
        let p = AsymptoticParams {
            lambda1: 1.0,
            tau1: -1.0,
            p: 0.5,
            gamma1: 0.5,
        };
        assert_relative_eq!(asymptotic_mean_m(&p).unwrap(), 4.0 / 3.0, epsilon = 1e-14);
        let zero = AsymptoticParams { lambda1: 0.0, ..p };
        assert_eq!(asymptotic_mean_m(&zero).unwrap(), 0.0);
        let double = AsymptoticParams { lambda1: 2.0, ..p };
        assert_relative_eq!(
            asymptotic_mean_m(&double).unwrap(),
            2.0 * asymptotic_mean_m(&p).unwrap(),
            epsilon = 1e-14
        );
    }

    #[test]
    fn m_singular_parameters() {
        let base = AsymptoticParams {
            lambda1: 1.0,
            tau1: -1.0,
            p: 0.5,
            gamma1: 0.5,
        };
        assert!(asymptotic_mean_m(&AsymptoticParams { gamma1: 1.0, ..base }).is_err());
        assert!(asymptotic_mean_m(&AsymptoticParams { gamma1: 2.0, ..base }).is_err());
        assert!(asymptotic_mean_m(&AsymptoticParams { p: -1.0, ..base }).is_err());
        assert!(asymptotic_mean_m(&AsymptoticParams { tau1: 0.5, ..base }).is_err());
    }
}
