use std::path::Path;
use std::process::{Command, Output};

use censored_mean::harness::read_summaries_csv;
use censored_mean::rng::stream;
use censored_mean::{censor, ModelSpec};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_censored-mean"));
    c.env("RUST_LOG", "warn");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn write_sample(path: &Path, n: usize) {
    let mut rng = stream(21, 0, 0);
    let x = ModelSpec::frechet(0.3).unwrap().sample(n, &mut rng);
    let y = ModelSpec::frechet(0.7).unwrap().sample(n, &mut rng);
    let s = censor(&x, &y).unwrap();
    s.write_csv(std::fs::File::create(path).unwrap()).unwrap();
}

fn field(stdout: &str, key: &str) -> f64 {
    stdout
        .lines()
        .find_map(|l| l.strip_prefix(&format!("{key} = ")))
        .unwrap_or_else(|| panic!("missing {key} in {stdout}"))
        .parse()
        .unwrap()
}

#[test]
fn estimate_prints_key_values_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("s.csv");
    write_sample(&input, 800);
    let out = run(&[
        "estimate",
        "--input",
        input.to_str().unwrap(),
        "--ci",
        "--boot-b",
        "100",
        "--json",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let mu = field(&text, "mu_hat");
    let mu1 = field(&text, "mu1_hat");
    let mu2 = field(&text, "mu2_hat");
    assert!((mu - (mu1 + mu2)).abs() < 1e-12);
    assert!(field(&text, "ci_lower") <= mu && mu <= field(&text, "ci_upper"));
    let json: serde_json::Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
    assert_eq!(json["mu_hat"].as_f64().unwrap(), mu);
    assert_eq!(json["k_star"].as_f64().unwrap(), field(&text, "k_star"));
}

#[test]
fn estimate_with_fixed_k() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("s.csv");
    write_sample(&input, 500);
    let out = run(&["estimate", "--input", input.to_str().unwrap(), "--k", "40"]);
    assert!(out.status.success());
    assert_eq!(field(&String::from_utf8(out.stdout).unwrap(), "k_star"), 40.0);

    let bad = run(&["estimate", "--input", input.to_str().unwrap(), "--k", "many"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn estimate_rejects_malformed_input() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("bad.csv");
    std::fs::write(&input, "z,delta\n1.0,1\n2.0,3\n").unwrap();
    let out = run(&["estimate", "--input", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("row"));
}

#[test]
fn ktrace_writes_diagnostics() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("s.csv");
    let trace = dir.path().join("trace.csv");
    write_sample(&input, 1000);
    let out = run(&[
        "ktrace",
        "--input",
        input.to_str().unwrap(),
        "--out",
        trace.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&trace).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("k,gamma_hill,p_hat,gamma1_hat,criterion"));
    let rest: Vec<&str> = lines.collect();
    assert!(rest[0].starts_with("2,"));
    assert_eq!(rest.len(), 250 - 2 + 1);
}

#[test]
fn simulate_config_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("bad.toml");
    std::fs::write(&config, "gamma1_list = [1.5]\n").unwrap();
    let out = run(&[
        "simulate",
        "--config",
        config.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));

    std::fs::write(&config, "unknown_key = 1\n").unwrap();
    let out = run(&[
        "simulate",
        "--config",
        config.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn simulate_writes_csv_and_markdown() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("grid.toml");
    std::fs::write(
        &config,
        "family = \"frechet\"\ngamma1_list = [0.3]\np_list = [0.6]\nn_list = [200, 400]\nreplicates = 10\nboot_b = 30\n",
    )
    .unwrap();
    for format in ["csv", "markdown"] {
        let out = run(&[
            "simulate",
            "--config",
            config.to_str().unwrap(),
            "--out",
            dir.path().join("out").to_str().unwrap(),
            "--format",
            format,
            "--threads",
            "2",
        ]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let rows = read_summaries_csv(std::fs::File::open(dir.path().join("out/frechet.csv")).unwrap()).unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[1].n, 400);
    let md = std::fs::read_to_string(dir.path().join("out/frechet.md")).unwrap();
    assert!(md.contains("### p = 0.60"));
}
