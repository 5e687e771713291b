// Bootstrap confidence intervals, with `k` frozen at `k*` or re-selected on
// every resample.

use censored_mean::rng::stream;
use censored_mean::{
    bootstrap_mu, censor, mu_hat, BootstrapConfig, CensoringDesign, CiMethod, KChoice, KPolicy,
    ModelSpec,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let design = CensoringDesign::from_proportion(0.3, 0.7)?;
    let x_model = ModelSpec::frechet(design.gamma1())?;
    let mut rng = stream(5, 0, 0);
    let x = x_model.sample(1000, &mut rng);
    let y = ModelSpec::frechet(design.gamma2())?.sample(1000, &mut rng);
    let sample = censor(&x, &y)?;
    let est = mu_hat(&sample, &KChoice::auto())?;

    let configs = [
        ("fixed/normal", KPolicy::Fixed(Some(est.tail.k)), CiMethod::Normal),
        ("fixed/percentile", KPolicy::Fixed(Some(est.tail.k)), CiMethod::Percentile),
        ("reauto/normal", KPolicy::Reauto, CiMethod::Normal),
    ];
    for (label, policy, method) in configs {
        let cfg = BootstrapConfig {
            b: 200,
            policy,
            method,
            ..BootstrapConfig::default()
        };
        let r = bootstrap_mu(&sample, &cfg, &mut stream(5, 1, 0))?;
        println!(
            "{label:<17} [{:.3}, {:.3}] sd={:.3} failures={} covers true mean: {}",
            r.ci_lower,
            r.ci_upper,
            r.boot_sd,
            r.failures,
            r.contains(x_model.true_mean()?)
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
