// Monte-Carlo checks of two limit laws: normality of the standardized mean
// estimator, and the `N(0, p)` law of the KM survival ratio at `Z_{n-k:n}`.

use censored_mean::harness::{clt_experiment, survival_ratio_experiment, CellSpec, CltSpec};
use censored_mean::{CensoringDesign, Family, KChoice};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let n = 2000;
    let spec = CltSpec {
        cell: CellSpec::new(Family::Frechet, 0.3, 0.7, n),
        k: KChoice::Fixed((n as f64).powf(0.55) as usize),
        replicates: 200,
        seed: 13,
    };
    let r = clt_experiment(&spec)?;
    println!(
        "standardized estimator: mean={:.3} sd={:.3} skew={:.3} AD p-value={:.3}",
        r.mean, r.sd, r.skewness, r.normality.p_value
    );

    let design = CensoringDesign::new(0.5, 0.5)?;
    let n = 5000;
    let k = (n as f64).sqrt() as usize;
    let r = survival_ratio_experiment(&design, n, k, 300, 17)?;
    println!(
        "survival ratio: mean={:.3} variance={:.3} (limit variance {})",
        r.mean,
        r.variance,
        design.p()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
