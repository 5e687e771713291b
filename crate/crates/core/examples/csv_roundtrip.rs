// Reading and writing `z,delta` files, and building samples from raw rows.

use censored_mean::{load_sample, mu_hat, CensoredSample, KChoice};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut text = String::from("z,delta\n");
    for i in 1..=400u32 {
        let z = (f64::from(i) / 401.0).powf(-0.4);
        let delta = u8::from(i % 4 != 0);
        text.push_str(&format!("{z},{delta}\n"));
    }
    let sample = CensoredSample::read_csv(text.as_bytes())?;
    println!("read {} rows, {} uncensored", sample.len(), sample.uncensored_count());

    let mut out = Vec::new();
    sample.write_csv(&mut out)?;
    let again = CensoredSample::read_csv(out.as_slice())?;
    assert_eq!(again, sample);

    let rebuilt = load_sample(sample.rows())?;
    let est = mu_hat(&rebuilt, &KChoice::auto())?;
    println!("k*={} mu_hat={:.4} km={:.4}", est.tail.k, est.mu_hat, est.km_baseline);

    assert!(CensoredSample::read_csv("z,delta\n1.0,2\n".as_bytes()).is_err());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
