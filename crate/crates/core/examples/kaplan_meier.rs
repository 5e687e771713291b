// Censoring a sample and integrating the product-limit estimator.

use censored_mean::rng::stream;
use censored_mean::{censor, km_mean, km_weights, CensoringDesign, KmCurve, ModelSpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let design = CensoringDesign::from_proportion(0.3, 0.6)?;
    let x_model = ModelSpec::frechet(design.gamma1())?;
    let y_model = ModelSpec::frechet(design.gamma2())?;
    let mut rng = stream(2, 0, 0);
    let x = x_model.sample(1000, &mut rng);
    let y = y_model.sample(1000, &mut rng);
    let sample = censor(&x, &y)?;

    println!(
        "n={} uncensored={} (expected fraction {})",
        sample.len(),
        sample.uncensored_count(),
        design.p()
    );

    let w = km_weights(&sample);
    // The mass of the largest observation is lost when it is censored.
    println!("total KM mass {:.6}", w.iter().sum::<f64>());

    let curve = KmCurve::new(&sample);
    for t in [0.8, 1.0, 2.0, 5.0] {
        println!(
            "S({t}) km={:.4} true={:.4}",
            curve.survival(t),
            x_model.survival(t)?
        );
    }
    println!(
        "KM mean {:.4} vs true {:.4}",
        km_mean(&sample),
        x_model.true_mean()?
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
