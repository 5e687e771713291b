// Lifetime models, their exact means, and censoring designs with a given
// uncensored proportion `p`.

use censored_mean::models::gamma2_for;
use censored_mean::rng::stream;
use censored_mean::{CensoringDesign, ModelSpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let models = [
        ModelSpec::pareto(0.3)?,
        ModelSpec::frechet(0.3)?,
        ModelSpec::burr(0.3, 0.25)?,
    ];
    let mut rng = stream(1, 0, 0);
    for m in &models {
        let draws = m.sample(100_000, &mut rng);
        let empirical = draws.iter().sum::<f64>() / draws.len() as f64;
        println!(
            "{:<8} gamma={} mean={:.4} empirical={:.4} median={:.4}",
            m.family(),
            m.gamma(),
            m.true_mean()?,
            empirical,
            m.quantile(0.5)?
        );
    }

    for p in [0.4, 0.5, 0.6, 0.7] {
        let d = CensoringDesign::from_proportion(0.3, p)?;
        assert!((gamma2_for(p, 0.3)? - d.gamma2()).abs() < 1e-15);
        println!(
            "p={p}: gamma2={:.4} gamma={:.4} stute={}",
            d.gamma2(),
            d.gamma(),
            d.stute_applicable()?
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
