//! Distributional experiments: the Gaussian limit of the standardized mean
//! estimator and the limit law of the KM survival ratio at `Z_{n-k:n}`.

use rayon::prelude::*;
use serde::Serialize;
use statrs::function::erf::erfc;

use super::CellSpec;
use crate::censoring::censor;
use crate::error::{Error, Result};
use crate::estimator::{mu_hat, KChoice};
use crate::models::{CensoringDesign, ModelSpec};
use crate::rng::stream;
use crate::survival::km_survival_product;

/// Anderson-Darling test of normality with estimated mean and variance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AndersonDarling {
    /// `A^2`
    pub statistic: f64,
    /// `A^2 (1 + 0.75/n + 2.25/n^2)`
    pub adjusted: f64,
    pub p_value: f64,
}

fn ln_norm_cdf(x: f64) -> f64 {
    (0.5 * erfc(-x / std::f64::consts::SQRT_2)).ln()
}

fn ln_norm_sf(x: f64) -> f64 {
    (0.5 * erfc(x / std::f64::consts::SQRT_2)).ln()
}

/// Composite-hypothesis AD test; p-value from the D'Agostino-Stephens approximation.
pub fn anderson_darling(data: &[f64]) -> Result<AndersonDarling> {
    let n = data.len();
    if n < 8 {
        return Err(Error::TooSmall(n));
    }
    let nf = n as f64;
    let mean = data.iter().sum::<f64>() / nf;
    let var = data.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (nf - 1.0);
    if !(var > 0.0) || !var.is_finite() {
        return Err(Error::Domain {
            what: "variance",
            value: var,
        });
    }
    let sd = var.sqrt();
    let mut y: Vec<f64> = data.iter().map(|x| (x - mean) / sd).collect();
    y.sort_by(f64::total_cmp);
    let s: f64 = (0..n)
        .map(|i| (2 * i + 1) as f64 * (ln_norm_cdf(y[i]) + ln_norm_sf(y[n - 1 - i])))
        .sum();
    let statistic = -nf - s / nf;
    let a = statistic * (1.0 + 0.75 / nf + 2.25 / (nf * nf));
    let p_value = if a >= 0.6 {
        (1.2937 - 5.709 * a + 0.0186 * a * a).exp()
    } else if a >= 0.34 {
        (0.9177 - 4.279 * a - 1.38 * a * a).exp()
    } else if a >= 0.2 {
        1.0 - (-8.318 + 42.796 * a - 59.938 * a * a).exp()
    } else {
        1.0 - (-13.436 + 101.14 * a - 223.73 * a * a).exp()
    };
    Ok(AndersonDarling {
        statistic,
        adjusted: a,
        p_value: p_value.clamp(0.0, 1.0),
    })
}

fn moments(data: &[f64]) -> (f64, f64, f64, f64) {
    let n = data.len() as f64;
    let mean = data.iter().sum::<f64>() / n;
    let m2 = data.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    let m3 = data.iter().map(|x| (x - mean).powi(3)).sum::<f64>() / n;
    let m4 = data.iter().map(|x| (x - mean).powi(4)).sum::<f64>() / n;
    let sd = (m2 * n / (n - 1.0)).sqrt();
    (mean, sd, m3 / m2.powf(1.5), m4 / (m2 * m2) - 3.0)
}

/// Setting of a CLT experiment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CltSpec {
    pub cell: CellSpec,
    pub k: KChoice,
    pub replicates: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CltReport {
    /// `sqrt(k) (mu_hat - mu) / (Z_{n-k:n} F_n bar (Z_{n-k:n}))` per retained replicate.
    pub z_scores: Vec<f64>,
    pub failures: usize,
    pub mean: f64,
    pub sd: f64,
    pub skewness: f64,
    /// Excess kurtosis.
    pub kurtosis: f64,
    pub normality: AndersonDarling,
}

/// Collects the standardized estimator over independent replicates and tests it for normality.
pub fn clt_experiment(spec: &CltSpec) -> Result<CltReport> {
    let cell = spec.cell;
    let (x_model, y_model) = cell.models()?;
    let mu = x_model.true_mean()?;
    let results: Vec<Option<f64>> = (0..spec.replicates as u64)
        .into_par_iter()
        .map(|r| {
            let mut rng = stream(spec.seed, 0, r);
            let x = x_model.sample(cell.n, &mut rng);
            let y = y_model.sample(cell.n, &mut rng);
            let s = censor(&x, &y).ok()?;
            let est = mu_hat(&s, &spec.k).ok()?;
            let z = est.standardized(mu);
            z.is_finite().then_some(z)
        })
        .collect();
    let z_scores: Vec<f64> = results.iter().flatten().copied().collect();
    let failures = results.len() - z_scores.len();
    let normality = anderson_darling(&z_scores)?;
    let (mean, sd, skewness, kurtosis) = moments(&z_scores);
    Ok(CltReport {
        z_scores,
        failures,
        mean,
        sd,
        skewness,
        kurtosis,
        normality,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SurvivalRatioReport {
    pub mean: f64,
    pub variance: f64,
    pub replicates: usize,
}

/// Empirical mean and variance of `sqrt(k) (F_n bar (Z_{n-k:n}) / F bar (Z_{n-k:n}) - 1)`
/// for a Pareto lifetime censored by a Pareto time; the limit law is `N(0, p)`.
pub fn survival_ratio_experiment(
    design: &CensoringDesign,
    n: usize,
    k: usize,
    replicates: usize,
    seed: u64,
) -> Result<SurvivalRatioReport> {
    if k < 1 || k + 1 >= n {
        return Err(Error::OutOfRange {
            what: "k",
            value: k,
            lo: 1,
            hi: n.saturating_sub(2),
        });
    }
    if replicates < 2 {
        return Err(Error::Config("replicates must be >= 2".into()));
    }
    let x_model = ModelSpec::pareto(design.gamma1())?;
    let y_model = ModelSpec::pareto(design.gamma2())?;
    let values: Vec<f64> = (0..replicates as u64)
        .into_par_iter()
        .map(|r| -> Result<f64> {
            let mut rng = stream(seed, 0, r);
            let x = x_model.sample(n, &mut rng);
            let y = y_model.sample(n, &mut rng);
            let s = censor(&x, &y)?;
            let m = n - k;
            let km = km_survival_product(&s, m)?;
            let exact = x_model.survival(s.order_stat(m))?;
            Ok((k as f64).sqrt() * (km / exact - 1.0))
        })
        .collect::<Result<_>>()?;
    let nf = values.len() as f64;
    let mean = values.iter().sum::<f64>() / nf;
    let variance = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (nf - 1.0);
    Ok(SurvivalRatioReport {
        mean,
        variance,
        replicates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::Family;
    use approx::assert_relative_eq;

    #[test]
    fn ad_statistic_reference_values() {
        // Reference statistics from scipy.stats.anderson / statsmodels normal_ad.
        let x = [
            0.12, -1.3, 0.44, 2.1, -0.35, 0.9, -0.05, 1.7, -2.2, 0.31, 0.77, -0.62,
        ];
        let ad = anderson_darling(&x).unwrap();
        assert_relative_eq!(ad.statistic, 0.1521676288151248, max_relative = 1e-10);
        assert_relative_eq!(ad.p_value, 0.9430132244255595, max_relative = 1e-8);

        let e: Vec<f64> = (1..=30).map(|i| -((i as f64 - 0.5) / 30.0).ln()).collect();
        let ad = anderson_darling(&e).unwrap();
        assert_relative_eq!(ad.statistic, 1.365163104504898, max_relative = 1e-10);
        assert_relative_eq!(ad.p_value, 0.0012586112594105347, max_relative = 1e-8);
    }

    #[test]
    fn ad_rejects_degenerate_input() {
        assert!(anderson_darling(&[1.0; 20]).is_err());
        assert!(anderson_darling(&[1.0, 2.0]).is_err());
    }

    #[test]
    fn clt_scores_are_finite() {
        let spec = CltSpec {
            cell: CellSpec::new(Family::Frechet, 0.3, 0.7, 1000),
            k: KChoice::Fixed(44),
            replicates: 500,
            seed: 4,
        };
        let r = clt_experiment(&spec).unwrap();
        assert_eq!(r.z_scores.len() + r.failures, 500);
        assert!(r.z_scores.iter().all(|z| z.is_finite()));
        assert!(r.mean.is_finite() && r.sd.is_finite() && r.sd > 0.0);
    }

    #[test]
    fn survival_ratio_no_censoring_limit() {
        let design = CensoringDesign::new(0.5, 20.0).unwrap();
        let r = survival_ratio_experiment(&design, 5000, 70, 1000, 8).unwrap();
        assert!((r.variance - design.p()).abs() < 0.12, "{r:?}");
        assert!(r.mean.abs() < 0.1);
    }

    #[test]
    fn survival_ratio_rejects_bad_k() {
        let design = CensoringDesign::new(0.5, 0.5).unwrap();
        assert!(survival_ratio_experiment(&design, 100, 0, 10, 0).is_err());
        assert!(survival_ratio_experiment(&design, 100, 99, 10, 0).is_err());
    }
}
