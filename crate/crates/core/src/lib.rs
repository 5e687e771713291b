//! Mean estimation for heavy-tailed lifetimes under random right censoring.
//!
//! The body of the distribution is handled by the Kaplan-Meier product-limit
//! estimator up to a high order statistic `Z_{n-k:n}`; the tail beyond it is
//! extrapolated with a Karamata-type approximation driven by the censoring
//! adapted Hill estimator `hill / p_hat`.
//!
//! ```
//! use censored_mean::{censor, mu_hat, KChoice, ModelSpec};
//! use censored_mean::rng::stream;
//!
//! let x_model = ModelSpec::frechet(0.3).unwrap();
//! let y_model = ModelSpec::frechet(0.7).unwrap();
//! let mut rng = stream(7, 0, 0);
//! let x = x_model.sample(2000, &mut rng);
//! let y = y_model.sample(2000, &mut rng);
//! let sample = censor(&x, &y).unwrap();
//! let est = mu_hat(&sample, &KChoice::auto()).unwrap();
//! assert!((est.mu_hat - 1.298).abs() < 0.5);
//! ```

pub mod bootstrap;
pub mod censoring;
mod error;
pub mod estimator;
pub mod harness;
pub mod models;
pub mod rng;
pub mod survival;
pub mod tail;

pub use bootstrap::{bootstrap_mu, BootstrapConfig, BootstrapResult, CiMethod, KPolicy};
pub use censoring::{censor, load_sample, CensoredSample};
pub use error::{Error, Result};
pub use estimator::{
    asymptotic_mean_m, mu1_hat, mu2_hat, mu_hat, AsymptoticParams, KChoice, MeanEstimate,
};
pub use models::{CensoringDesign, Family, ModelSpec};
pub use survival::{km_mean, km_survival_product, km_weights, KmCurve};
pub use tail::{gamma1_hat, hill, p_hat, select_k_star, KSelection, TailEstimate};
