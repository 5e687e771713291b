//! Heavy-tailed lifetime families and the censoring quantities they induce.

use std::fmt;
use std::str::FromStr;

use rand::distr::Open01;
use rand::Rng;
use serde::{Deserialize, Serialize};
use statrs::function::beta::beta;
use statrs::function::gamma::gamma;

use crate::error::{Error, Result};

/// Burr second shape used throughout the simulation design.
pub const DEFAULT_BURR_ETA: f64 = 0.25;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Pareto,
    Frechet,
    Burr,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Pareto => "pareto",
            Family::Frechet => "frechet",
            Family::Burr => "burr",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "pareto" => Ok(Family::Pareto),
            "frechet" | "fréchet" => Ok(Family::Frechet),
            "burr" => Ok(Family::Burr),
            other => Err(Error::Config(format!("unknown family `{other}`"))),
        }
    }
}

/// A heavy-tailed marginal with tail index `gamma`.
///
/// Survival functions:
///
/// * Pareto: `x^(-1/gamma)` for `x >= 1`
/// * Fréchet: `1 - exp(-x^(-1/gamma))` for `x >= 0`
/// * Burr: `(1 + x^(1/eta))^(-eta/gamma)` for `x >= 0`
///
/// All three are regularly varying with index `-1/gamma`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    family: Family,
    gamma: f64,
    eta: f64,
}

impl ModelSpec {
    pub fn new(family: Family, gamma: f64, eta: f64) -> Result<Self> {
        if !(gamma.is_finite() && gamma > 0.0) {
            return Err(Error::Domain {
                what: "gamma",
                value: gamma,
            });
        }
        if family == Family::Burr && !(eta.is_finite() && eta > 0.0) {
            return Err(Error::Domain {
                what: "eta",
                value: eta,
            });
        }
        Ok(Self { family, gamma, eta })
    }

    pub fn pareto(gamma: f64) -> Result<Self> {
        Self::new(Family::Pareto, gamma, DEFAULT_BURR_ETA)
    }

    pub fn frechet(gamma: f64) -> Result<Self> {
        Self::new(Family::Frechet, gamma, DEFAULT_BURR_ETA)
    }

    pub fn burr(gamma: f64, eta: f64) -> Result<Self> {
        Self::new(Family::Burr, gamma, eta)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    /// Same family and shape, different tail index.
    pub fn with_gamma(&self, gamma: f64) -> Result<Self> {
        Self::new(self.family, gamma, self.eta)
    }

    pub fn lower_support(&self) -> f64 {
        match self.family {
            Family::Pareto => 1.0,
            Family::Frechet | Family::Burr => 0.0,
        }
    }

    pub fn survival(&self, x: f64) -> Result<f64> {
        if x.is_nan() || x < self.lower_support() {
            return Err(Error::Domain {
                what: "x",
                value: x,
            });
        }
        let g = self.gamma;
        let s = match self.family {
            Family::Pareto => x.powf(-1.0 / g),
            Family::Frechet => {
                if x == 0.0 {
                    1.0
                } else {
                    -(-x.powf(-1.0 / g)).exp_m1()
                }
            }
            Family::Burr => (-(self.eta / g) * x.powf(1.0 / self.eta).ln_1p()).exp(),
        };
        Ok(s)
    }

    pub fn cdf(&self, x: f64) -> Result<f64> {
        Ok(1.0 - self.survival(x)?)
    }

    /// Inverse of the cdf on the open unit interval.
    pub fn quantile(&self, u: f64) -> Result<f64> {
        if !(u > 0.0 && u < 1.0) {
            return Err(Error::Domain {
                what: "u",
                value: u,
            });
        }
        Ok(self.quantile_unchecked(u))
    }

    fn quantile_unchecked(&self, u: f64) -> f64 {
        let g = self.gamma;
        match self.family {
            Family::Pareto => (-g * (-u).ln_1p()).exp(),
            Family::Frechet => (-u.ln()).powf(-g),
            Family::Burr => (-(g / self.eta) * (-u).ln_1p()).exp_m1().powf(self.eta),
        }
    }

    /// `n` i.i.d. draws by inverse transform of `Open01` uniforms.
    pub fn sample<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Vec<f64> {
        (0..n)
            .map(|_| self.quantile_unchecked(rng.sample(Open01)))
            .collect()
    }

    /// Closed-form `E[X]`, finite only for `gamma < 1`.
    pub fn true_mean(&self) -> Result<f64> {
        let g = self.gamma;
        if g >= 1.0 {
            return Err(Error::InfiniteMean(g));
        }
        let mean = match self.family {
            Family::Pareto => 1.0 / (1.0 - g),
            Family::Frechet => gamma(1.0 - g),
            Family::Burr => {
                // Burr XII with c = 1/eta and k = eta/gamma: E X = k B(k - 1/c, 1 + 1/c).
                let k = self.eta / g;
                k * beta(k - self.eta, 1.0 + self.eta)
            }
        };
        Ok(mean)
    }
}

/// Tail indices of the lifetime `X` (`gamma1`) and the censoring time `Y` (`gamma2`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CensoringDesign {
    gamma1: f64,
    gamma2: f64,
}

/// `H`-side quantities for a Pareto lifetime censored by a Pareto time, at one `x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairTheory {
    /// `P(Z > x)`
    pub hbar: f64,
    /// `P(Z <= x, censored)`
    pub h0: f64,
    /// `P(Z <= x, uncensored)`
    pub h1: f64,
    pub gamma0: f64,
}

impl CensoringDesign {
    pub fn new(gamma1: f64, gamma2: f64) -> Result<Self> {
        for (what, value) in [("gamma1", gamma1), ("gamma2", gamma2)] {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::Domain { what, value });
            }
        }
        Ok(Self { gamma1, gamma2 })
    }

    /// Design with the given `gamma1` and asymptotic uncensored proportion `p`.
    pub fn from_proportion(gamma1: f64, p: f64) -> Result<Self> {
        Self::new(gamma1, gamma2_for(p, gamma1)?)
    }

    pub fn gamma1(&self) -> f64 {
        self.gamma1
    }

    pub fn gamma2(&self) -> f64 {
        self.gamma2
    }

    /// Asymptotic proportion of uncensored observations in the tail.
    pub fn p(&self) -> f64 {
        self.gamma2 / (self.gamma1 + self.gamma2)
    }

    /// Tail index of `Z = min(X, Y)`.
    pub fn gamma(&self) -> f64 {
        self.gamma1 * self.gamma2 / (self.gamma1 + self.gamma2)
    }

    pub fn censoring_quantities(&self) -> (f64, f64) {
        (self.p(), self.gamma())
    }

    /// Whether the classical KM mean CLT still applies.
    ///
    /// Returns `false` inside the region `gamma2/(1+2 gamma2) < gamma1 < 1`,
    /// where the KM integral has infinite asymptotic variance.
    pub fn stute_applicable(&self) -> Result<bool> {
        if self.gamma1 >= 1.0 {
            return Err(Error::InfiniteMean(self.gamma1));
        }
        Ok(self.gamma1 <= self.gamma2 / (1.0 + 2.0 * self.gamma2))
    }

    /// Closed forms for the Pareto/Pareto design with common support `[1, inf)`.
    pub fn pareto_pair_theory(&self, x: f64) -> Result<PairTheory> {
        if x.is_nan() || x < 1.0 {
            return Err(Error::Domain {
                what: "x",
                value: x,
            });
        }
        let g = self.gamma();
        let hbar = x.powf(-1.0 / g);
        let mass = g * (1.0 - hbar);
        Ok(PairTheory {
            hbar,
            h0: mass / self.gamma2,
            h1: mass / self.gamma1,
            gamma0: x.powf(1.0 / self.gamma2),
        })
    }
}

/// Solves `p = gamma2 / (gamma1 + gamma2)` for `gamma2`.
pub fn gamma2_for(p: f64, gamma1: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::DegenerateDesign(p));
    }
    if !(gamma1.is_finite() && gamma1 > 0.0) {
        return Err(Error::Domain {
            what: "gamma1",
            value: gamma1,
        });
    }
    Ok(p * gamma1 / (1.0 - p))
}
