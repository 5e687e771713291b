//! Monte-Carlo harness: grids of censored-sample experiments and their summaries.
//!
//! Every replicate of every cell draws from its own stream
//! `rng::stream(seed, cell, replicate)`, and replicate results are aggregated
//! in replicate order, so output does not depend on the thread count.

mod experiments;
mod output;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bootstrap::{bootstrap_mu, BootstrapConfig, CiMethod, KPolicy};
use crate::censoring::censor;
use crate::error::{Error, Result};
use crate::estimator::{mu_hat, KChoice};
use crate::models::{CensoringDesign, Family, ModelSpec, DEFAULT_BURR_ETA};
use crate::rng::stream;
use crate::tail::KSelection;

pub use experiments::{
    anderson_darling, clt_experiment, survival_ratio_experiment, AndersonDarling, CltReport,
    CltSpec, SurvivalRatioReport,
};
pub use output::{read_summaries_csv, render_markdown, write_summaries_csv, write_tables, TableFormat};

/// Grid of simulation cells, as read from a TOML config file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridConfig {
    pub family: Family,
    pub eta: f64,
    pub gamma1_list: Vec<f64>,
    pub p_list: Vec<f64>,
    pub n_list: Vec<usize>,
    pub replicates: usize,
    pub seed: u64,
    pub theta: f64,
    pub k_min_frac: f64,
    pub k_max_frac: f64,
    pub boot_b: usize,
    pub level: f64,
    pub boot_policy: BootPolicy,
    pub ci_method: CiMethod,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BootPolicy {
    Fixed,
    Reauto,
}

impl Default for GridConfig {
    fn default() -> Self {
        let sel = KSelection::default();
        Self {
            family: Family::Frechet,
            eta: DEFAULT_BURR_ETA,
            gamma1_list: vec![0.3, 0.4, 0.5],
            p_list: vec![0.4, 0.5, 0.6, 0.7],
            n_list: vec![500, 1000, 1500, 2000],
            replicates: 1000,
            seed: 2016,
            theta: sel.theta,
            k_min_frac: sel.k_min_frac,
            k_max_frac: sel.k_max_frac,
            boot_b: BootstrapConfig::default().b,
            level: 0.95,
            boot_policy: BootPolicy::Fixed,
            ci_method: CiMethod::Normal,
        }
    }
}

impl GridConfig {
    /// The full simulation design for one family (1000 replicates per cell).
    pub fn full_design(family: Family) -> Self {
        Self {
            family,
            ..Self::default()
        }
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let config: Self = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.gamma1_list.is_empty() || self.p_list.is_empty() || self.n_list.is_empty() {
            return bad("gamma1_list, p_list and n_list must be non-empty".into());
        }
        if let Some(g) = self.gamma1_list.iter().find(|g| !(**g > 0.0 && **g < 1.0)) {
            return bad(format!("gamma1 = {g} must lie in (0, 1)"));
        }
        if let Some(p) = self.p_list.iter().find(|p| !(**p > 0.0 && **p < 1.0)) {
            return bad(format!("p = {p} must lie in (0, 1)"));
        }
        if let Some(n) = self.n_list.iter().find(|n| **n < 50) {
            return bad(format!("n = {n} is too small (minimum 50)"));
        }
        if self.replicates == 0 {
            return bad("replicates must be >= 1".into());
        }
        if self.family == Family::Burr && !(self.eta > 0.0) {
            return bad(format!("eta = {} must be positive", self.eta));
        }
        if !(0.0..=0.5).contains(&self.theta) {
            return bad(format!("theta = {} must lie in [0, 0.5]", self.theta));
        }
        if !(self.k_min_frac >= 0.0 && self.k_min_frac < self.k_max_frac && self.k_max_frac < 1.0) {
            return bad("need 0 <= k_min_frac < k_max_frac < 1".into());
        }
        if self.boot_b < 2 {
            return bad(format!("boot_b = {} must be >= 2", self.boot_b));
        }
        if !(self.level > 0.0 && self.level < 1.0) {
            return bad(format!("level = {} must lie in (0, 1)", self.level));
        }
        Ok(())
    }

    pub fn controls(&self) -> Controls {
        let selection = KSelection {
            theta: self.theta,
            k_min: None,
            k_max: None,
            k_min_frac: self.k_min_frac,
            k_max_frac: self.k_max_frac,
        };
        Controls {
            selection,
            bootstrap: BootstrapConfig {
                b: self.boot_b,
                policy: match self.boot_policy {
                    BootPolicy::Fixed => KPolicy::Fixed(None),
                    BootPolicy::Reauto => KPolicy::Reauto,
                },
                level: self.level,
                method: self.ci_method,
                selection,
            },
        }
    }

    /// Cells in output order: gamma1, then p, then n.
    pub fn cells(&self) -> Vec<CellSpec> {
        let mut out = Vec::new();
        for &gamma1 in &self.gamma1_list {
            for &p in &self.p_list {
                for &n in &self.n_list {
                    out.push(CellSpec {
                        family: self.family,
                        eta: self.eta,
                        gamma1,
                        p,
                        n,
                    });
                }
            }
        }
        out
    }
}

/// Estimation controls shared by every replicate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Controls {
    pub selection: KSelection,
    pub bootstrap: BootstrapConfig,
}

impl Default for Controls {
    fn default() -> Self {
        GridConfig::default().controls()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellSpec {
    pub family: Family,
    pub eta: f64,
    pub gamma1: f64,
    pub p: f64,
    pub n: usize,
}

impl CellSpec {
    pub fn new(family: Family, gamma1: f64, p: f64, n: usize) -> Self {
        Self {
            family,
            eta: DEFAULT_BURR_ETA,
            gamma1,
            p,
            n,
        }
    }

    pub fn design(&self) -> Result<CensoringDesign> {
        CensoringDesign::from_proportion(self.gamma1, self.p)
    }

    /// Lifetime and censoring-time models.
    pub fn models(&self) -> Result<(ModelSpec, ModelSpec)> {
        let design = self.design()?;
        let x = ModelSpec::new(self.family, design.gamma1(), self.eta)?;
        let y = x.with_gamma(design.gamma2())?;
        Ok((x, y))
    }
}

/// Aggregated metrics of one grid cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellSummary {
    pub family: Family,
    pub gamma1: f64,
    pub gamma2: f64,
    pub p: f64,
    pub n: usize,
    pub mu_true: f64,
    pub mu_hat_mean: f64,
    pub abs_bias: f64,
    pub mse: f64,
    pub ci_mean_lower: f64,
    pub ci_mean_upper: f64,
    pub cov_prob: f64,
    pub ci_length_mean: f64,
    pub failures: usize,
    pub k_star_mean: f64,
}

impl CellSummary {
    /// Every replicate failed; the metrics are NaN.
    pub fn is_failed(&self) -> bool {
        self.mu_hat_mean.is_nan()
    }
}

/// Outcome of one successful replicate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReplicateOutcome {
    pub mu_hat: f64,
    pub k: usize,
    pub ci_lower: f64,
    pub ci_upper: f64,
}

/// Draws, censors, estimates with data-driven `k` and bootstraps one replicate.
pub fn run_replicate(
    cell: &CellSpec,
    controls: &Controls,
    seed: u64,
    cell_id: u64,
    replicate: u64,
) -> Result<ReplicateOutcome> {
    let (x_model, y_model) = cell.models()?;
    let mut rng = stream(seed, cell_id, replicate);
    let x = x_model.sample(cell.n, &mut rng);
    let y = y_model.sample(cell.n, &mut rng);
    let sample = censor(&x, &y)?;
    let est = mu_hat(&sample, &KChoice::Auto(controls.selection))?;
    let mut boot_cfg = controls.bootstrap;
    if let KPolicy::Fixed(None) = boot_cfg.policy {
        boot_cfg.policy = KPolicy::Fixed(Some(est.tail.k));
    }
    let boot = bootstrap_mu(&sample, &boot_cfg, &mut rng)?;
    Ok(ReplicateOutcome {
        mu_hat: est.mu_hat,
        k: est.tail.k,
        ci_lower: boot.ci_lower,
        ci_upper: boot.ci_upper,
    })
}

fn mean(values: impl Iterator<Item = f64>) -> f64 {
    let (sum, count) = values.fold((0.0, 0usize), |(s, c), v| (s + v, c + 1));
    if count == 0 {
        f64::NAN
    } else {
        sum / count as f64
    }
}

/// Aggregates replicate outcomes (in replicate order) into a cell summary.
pub fn summarize(cell: &CellSpec, outcomes: &[Result<ReplicateOutcome>]) -> Result<CellSummary> {
    let (x_model, _) = cell.models()?;
    let mu_true = x_model.true_mean()?;
    let ok: Vec<&ReplicateOutcome> = outcomes.iter().filter_map(|o| o.as_ref().ok()).collect();
    let failures = outcomes.len() - ok.len();
    let mu_hat_mean = mean(ok.iter().map(|o| o.mu_hat));
    let covered = ok
        .iter()
        .filter(|o| o.ci_lower <= mu_true && mu_true <= o.ci_upper)
        .count();
    Ok(CellSummary {
        family: cell.family,
        gamma1: cell.gamma1,
        gamma2: cell.design()?.gamma2(),
        p: cell.p,
        n: cell.n,
        mu_true,
        mu_hat_mean,
        abs_bias: (mu_hat_mean - mu_true).abs(),
        mse: mean(ok.iter().map(|o| (o.mu_hat - mu_true).powi(2))),
        ci_mean_lower: mean(ok.iter().map(|o| o.ci_lower)),
        ci_mean_upper: mean(ok.iter().map(|o| o.ci_upper)),
        cov_prob: if ok.is_empty() {
            f64::NAN
        } else {
            covered as f64 / ok.len() as f64
        },
        ci_length_mean: mean(ok.iter().map(|o| o.ci_upper - o.ci_lower)),
        failures,
        k_star_mean: mean(ok.iter().map(|o| o.k as f64)),
    })
}

/// Runs `replicates` independent replicates of one cell on the current rayon pool.
pub fn run_cell(
    cell: &CellSpec,
    replicates: usize,
    seed: u64,
    cell_id: u64,
    controls: &Controls,
) -> Result<CellSummary> {
    if replicates == 0 {
        return Err(Error::Config("replicates must be >= 1".into()));
    }
    cell.models()?.0.true_mean()?;
    let outcomes: Vec<Result<ReplicateOutcome>> = (0..replicates as u64)
        .into_par_iter()
        .map(|r| run_replicate(cell, controls, seed, cell_id, r))
        .collect();
    let summary = summarize(cell, &outcomes)?;
    if summary.failures > 0 {
        let first = outcomes.iter().find_map(|o| o.as_ref().err());
        log::debug!(
            "{} gamma1={} p={} n={}: {} failed replicates (first: {})",
            cell.family,
            cell.gamma1,
            cell.p,
            cell.n,
            summary.failures,
            first.map(|e| e.to_string()).unwrap_or_default()
        );
    }
    Ok(summary)
}

/// Runs every cell of the grid; cell `i` of [`GridConfig::cells`] has id `i`.
pub fn run_grid(config: &GridConfig) -> Result<Vec<CellSummary>> {
    config.validate()?;
    let controls = config.controls();
    let cells = config.cells();
    let total = cells.len();
    cells
        .iter()
        .enumerate()
        .map(|(id, cell)| {
            let summary = run_cell(cell, config.replicates, config.seed, id as u64, &controls)?;
            log::info!(
                "[{}/{}] {} gamma1={} p={} n={}: mu_hat={:.3} cov={:.2} failures={}",
                id + 1,
                total,
                cell.family,
                cell.gamma1,
                cell.p,
                cell.n,
                summary.mu_hat_mean,
                summary.cov_prob,
                summary.failures
            );
            Ok(summary)
        })
        .collect()
}

/// [`run_grid`] on a dedicated pool of `threads` workers.
pub fn run_grid_with_threads(config: &GridConfig, threads: usize) -> Result<Vec<CellSummary>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    pool.install(|| run_grid(config))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_controls() -> Controls {
        let mut c = Controls::default();
        c.bootstrap.b = 50;
        c
    }

    #[test]
    fn config_parses_and_validates() {
        let text = r#"
            family = "burr"
            gamma1_list = [0.3]
            p_list = [0.7]
            n_list = [500, 1000]
            replicates = 10
            seed = 7
            boot_b = 100
            ci_method = "percentile"
        "#;
        let cfg = GridConfig::from_toml_str(text).unwrap();
        assert_eq!(cfg.family, Family::Burr);
        assert_eq!(cfg.eta, 0.25);
        assert_eq!(cfg.cells().len(), 2);
        assert_eq!(cfg.controls().bootstrap.method, CiMethod::Percentile);

        for bad in [
            "gamma1_list = [1.2]",
            "p_list = [0.0]",
            "replicates = 0",
            "n_list = []",
            "unknown_key = 3",
            "theta = 0.9",
            "family = \"weibull\"",
        ] {
            assert!(
                matches!(GridConfig::from_toml_str(bad), Err(Error::Config(_))),
                "{bad}"
            );
        }
    }

    #[test]
    fn full_grid_layout() {
        let cfg = GridConfig::full_design(Family::Frechet);
        assert_eq!(cfg.cells().len(), 48);
        assert_eq!(cfg.replicates, 1000);
    }

    #[test]
    fn single_replicate_degeneracy() {
        let cell = CellSpec::new(Family::Frechet, 0.3, 0.7, 500);
        let s = run_cell(&cell, 1, 3, 0, &small_controls()).unwrap();
        if s.failures == 0 {
            assert!((s.mse - (s.mu_hat_mean - s.mu_true).powi(2)).abs() < 1e-15);
            assert!(s.cov_prob == 0.0 || s.cov_prob == 1.0);
        }
    }

    #[test]
    fn summary_invariants() {
        let cell = CellSpec::new(Family::Burr, 0.4, 0.6, 500);
        let s = run_cell(&cell, 20, 11, 5, &small_controls()).unwrap();
        assert_eq!(s.abs_bias, (s.mu_hat_mean - s.mu_true).abs());
        assert!(s.mse >= s.abs_bias.powi(2) - 1e-12);
        assert!(s.ci_mean_lower <= s.mu_hat_mean && s.mu_hat_mean <= s.ci_mean_upper);
        assert!((0.0..=1.0).contains(&s.cov_prob));
        assert!(s.k_star_mean >= 2.0);
        assert!((s.gamma2 - 0.6 * 0.4 / 0.4).abs() < 1e-12);
    }

    #[test]
    fn all_failed_cell_is_marked() {
        let cell = CellSpec::new(Family::Frechet, 0.3, 0.7, 500);
        let outcomes: Vec<Result<ReplicateOutcome>> =
            (0..3).map(|_| Err(Error::InfiniteMeanEstimate(1.2))).collect();
        let s = summarize(&cell, &outcomes).unwrap();
        assert!(s.is_failed());
        assert_eq!(s.failures, 3);
    }

    #[test]
    fn grid_of_one_is_run_cell() {
        let cfg = GridConfig {
            gamma1_list: vec![0.3],
            p_list: vec![0.6],
            n_list: vec![300],
            replicates: 8,
            boot_b: 50,
            seed: 99,
            ..GridConfig::default()
        };
        let grid = run_grid(&cfg).unwrap();
        let cell = run_cell(&cfg.cells()[0], 8, 99, 0, &cfg.controls()).unwrap();
        assert_eq!(grid, vec![cell]);
    }

    #[test]
    fn replicate_is_schedule_independent() {
        let cell = CellSpec::new(Family::Frechet, 0.4, 0.5, 400);
        let c = small_controls();
        let a = run_replicate(&cell, &c, 5, 2, 7).unwrap();
        let b = run_replicate(&cell, &c, 5, 2, 7).unwrap();
        assert_eq!(a, b);
    }
}
