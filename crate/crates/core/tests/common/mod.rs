//! Reference implementations written straight from the definitions, sharing no
//! code with the library.

#![allow(dead_code)]

/// Adaptive Simpson quadrature on `[a, b]`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    fn step<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
            + step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
    let fa = f(a);
    let fb = f(b);
    let fm = f(0.5 * (a + b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    step(f, a, b, fa, fm, fb, whole, tol, 50)
}

/// `int_0^inf surv(x) dx` through `x = t / (1 - t)`, split at `x = 1`.
pub fn integrate_survival<F: Fn(f64) -> f64>(surv: F) -> f64 {
    let g = |t: f64| {
        if t >= 1.0 {
            return 0.0;
        }
        let x = t / (1.0 - t);
        surv(x) / ((1.0 - t) * (1.0 - t))
    };
    adaptive_simpson(&g, 0.0, 0.5, 1e-13) + adaptive_simpson(&g, 0.5, 1.0, 1e-13)
}

pub fn frechet_survival(gamma: f64) -> impl Fn(f64) -> f64 {
    move |x| {
        if x <= 0.0 {
            1.0
        } else {
            -(-x.powf(-1.0 / gamma)).exp_m1()
        }
    }
}

pub fn burr_survival(gamma: f64, eta: f64) -> impl Fn(f64) -> f64 {
    move |x| (1.0 + x.powf(1.0 / eta)).powf(-eta / gamma)
}

pub fn pareto_survival(gamma: f64) -> impl Fn(f64) -> f64 {
    move |x| if x < 1.0 { 1.0 } else { x.powf(-1.0 / gamma) }
}

/// Product-limit estimator in risk-set form, on unsorted data with distinct times:
/// `S(t) = prod_{uncensored t_j <= t} (1 - 1 / #{z >= t_j})`.
pub fn km_survival_at(z: &[f64], delta: &[bool], t: f64) -> f64 {
    let mut s = 1.0;
    for (&tj, &dj) in z.iter().zip(delta) {
        if dj && tj <= t {
            let at_risk = z.iter().filter(|&&zz| zz >= tj).count();
            s *= 1.0 - 1.0 / at_risk as f64;
        }
    }
    s
}

/// Mass at each observation, reported in ascending order of `z`.
pub fn km_masses_sorted(z: &[f64], delta: &[bool]) -> Vec<f64> {
    let mut zs: Vec<f64> = z.to_vec();
    zs.sort_by(f64::total_cmp);
    let mut prev = 1.0;
    zs.iter()
        .map(|&t| {
            let cur = km_survival_at(z, delta, t);
            let w = prev - cur;
            prev = cur;
            w
        })
        .collect()
}

/// Tail-corrected mean written as one formula:
/// `sum_{i<=n-k} W_i Z_(i) + Z_(n-k) S(Z_(n-k)) / (1 - hill / p_hat)`.
pub fn single_display_mean(z: &[f64], delta: &[bool], k: usize) -> f64 {
    let n = z.len();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| z[a].total_cmp(&z[b]));
    let zs: Vec<f64> = idx.iter().map(|&i| z[i]).collect();
    let ds: Vec<bool> = idx.iter().map(|&i| delta[i]).collect();
    let h = zs[n - k - 1];
    let hill = zs[n - k..].iter().map(|v| v.ln()).sum::<f64>() / k as f64 - h.ln();
    let p = ds[n - k..].iter().filter(|&&d| d).count() as f64 / k as f64;
    let gamma1 = hill / p;
    let w = km_masses_sorted(z, delta);
    let body: f64 = (0..n - k).map(|i| w[i] * zs[i]).sum();
    body + h * km_survival_at(z, delta, h) / (1.0 - gamma1)
}
