// Tail-index estimation: Hill on censored data, the uncensored proportion in
// the tail, and data-driven choice of `k`.

use censored_mean::rng::stream;
use censored_mean::tail::{k_trace, tail_estimate};
use censored_mean::{censor, select_k_star, CensoringDesign, KSelection, ModelSpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let design = CensoringDesign::from_proportion(0.3, 0.7)?;
    let mut rng = stream(3, 0, 0);
    let x = ModelSpec::frechet(design.gamma1())?.sample(2000, &mut rng);
    let y = ModelSpec::frechet(design.gamma2())?.sample(2000, &mut rng);
    let sample = censor(&x, &y)?;

    for k in [20, 50, 100, 200] {
        let t = tail_estimate(&sample, k)?;
        println!(
            "k={k:>3} hill={:.3} p_hat={:.3} gamma1_hat={:.3}",
            t.gamma_hill, t.p_hat, t.gamma1_hat
        );
    }

    let sel = KSelection::default();
    let (lo, hi) = sel.bounds(sample.len())?;
    let k_star = select_k_star(&sample, &sel)?;
    println!("k* = {k_star} searched over [{lo}, {hi}]");

    let trace = k_trace(&sample, &sel)?;
    let best = trace.iter().find(|r| r.k == k_star).expect("k* is in the trace");
    println!(
        "at k*: gamma1_hat={:.3} criterion={:.4}",
        best.gamma1_hat, best.criterion
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
