// A small Monte-Carlo grid, rendered as markdown.

use censored_mean::harness::{render_markdown, run_grid, GridConfig};
use censored_mean::Family;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let config = GridConfig::from_toml_str(
        r#"
        family = "frechet"
        gamma1_list = [0.3]
        p_list = [0.5, 0.7]
        n_list = [500]
        replicates = 20
        boot_b = 50
        seed = 11
        "#,
    )?;
    assert_eq!(config.family, Family::Frechet);
    let summaries = run_grid(&config)?;
    print!("{}", render_markdown(&summaries));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
