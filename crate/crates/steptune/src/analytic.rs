//! Closed-form reference quantities for the Gaussian-target random walk:
//! the arctan acceptance law, its integral form, the exact inverse step
//! formula, and the logit-linear approximation the tuner's fixed slope
//! comes from.

use crate::error::{Error, Result};
use crate::model::{ScalarTarget, TargetFamily, TargetModel};
use crate::rng::RandomSource;
use crate::sampler::Chain;
use crate::tuner::{fit_full, AcceptanceRecord};

/// log(p / (1−p)); requires 0 < p < 1.
pub fn logit(p: f64) -> f64 {
    assert!(p > 0.0 && p < 1.0, "logit domain is (0,1), got {p}");
    (p / (1.0 - p)).ln()
}

/// Inverse of `logit`, always in (0,1). Evaluated branch-wise so large |z|
/// saturates smoothly instead of overflowing.
pub fn logit_inverse(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// Standard normal CDF via erfc; |error| < 1e-15 over the real line.
pub fn std_normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x * std::f64::consts::FRAC_1_SQRT_2)
}

/// Standard normal density.
pub fn std_normal_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt()
}

/// Long-run acceptance rate of a Gaussian random walk with step s on a
/// N(·, σ²) target: (2/π)·arctan(2σ/s).
pub fn arctan_acceptance(s: f64, sigma: f64) -> f64 {
    assert!(s > 0.0 && sigma > 0.0, "s and sigma must be positive");
    std::f64::consts::FRAC_2_PI * (2.0 * sigma / s).atan()
}

/// The same acceptance rate as the integral
/// 4·∫₀^∞ [Φ(x/(1+s)) − Φ(−x(2+s)/(2+s+s²))]·φ(x) dx,
/// evaluated by adaptive quadrature. Must agree with `arctan_acceptance`
/// to ~1e-10: the two routes are derived independently.
pub fn integral_acceptance(s: f64) -> f64 {
    assert!(s > 0.0, "s must be positive");
    let f = |x: f64| {
        let lo = -x * (2.0 + s) / (2.0 + s + s * s);
        (std_normal_cdf(x / (1.0 + s)) - std_normal_cdf(lo)) * std_normal_pdf(x)
    };
    // Integrand is bounded by φ(x); the tail beyond 12 contributes < 1e-31.
    4.0 * adaptive_simpson(&f, 0.0, 12.0, 1e-12, 60)
}

fn simpson(f: &impl Fn(f64) -> f64, a: f64, fa: f64, b: f64, fb: f64, m: f64, fm: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

fn adaptive_simpson_rec(
    f: &impl Fn(f64) -> f64,
    a: f64,
    fa: f64,
    b: f64,
    fb: f64,
    m: f64,
    fm: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(f, a, fa, m, fm, lm, flm);
    let right = simpson(f, m, fm, b, fb, rm, frm);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        adaptive_simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1)
            + adaptive_simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1)
    }
}

fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let (fa, fb, fm) = (f(a), f(b), f(m));
    let whole = simpson(f, a, fa, b, fb, m, fm);
    adaptive_simpson_rec(f, a, fa, b, fb, m, fm, whole, tol, depth)
}

/// Exact inverse of the arctan law: the step size giving acceptance rate p
/// on a N(·, σ²) target: s = 2σ / tan(πp/2).
pub fn closed_form_step(sigma: f64, p: f64) -> f64 {
    assert!(sigma > 0.0 && p > 0.0 && p < 1.0, "need sigma > 0 and p in (0,1)");
    2.0 * sigma / (std::f64::consts::FRAC_PI_2 * p).tan()
}

/// Unweighted least-squares line through (log s, logit p_σ(s)) over the grid.
/// Returns (intercept, slope). The acceptance curve is only approximately
/// logit-linear, so the fitted slope depends on the grid; expressing the grid
/// in units of σ makes the fit exactly scale-invariant.
pub fn logit_linearization_scaled(sigma: f64, s_grid: &[f64]) -> Result<(f64, f64)> {
    assert!(sigma > 0.0);
    if s_grid.len() < 2 {
        return Err(Error::structural(
            "linearization needs at least two grid points",
        ));
    }
    if s_grid.iter().any(|&s| !(s > 0.0)) {
        return Err(Error::structural("grid step sizes must be positive"));
    }
    let xs: Vec<f64> = s_grid.iter().map(|&s| s.ln()).collect();
    let ys: Vec<f64> = s_grid
        .iter()
        .map(|&s| logit(arctan_acceptance(s, sigma)))
        .collect();
    let n = xs.len() as f64;
    let xbar = xs.iter().sum::<f64>() / n;
    let ybar = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - xbar) * (x - xbar)).sum();
    if sxx == 0.0 {
        return Err(Error::structural(
            "linearization grid has no spread in log s",
        ));
    }
    let sxy: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (x - xbar) * (y - ybar))
        .sum();
    let slope = sxy / sxx;
    let intercept = ybar - slope * xbar;
    Ok((intercept, slope))
}

/// Linearization of the unit-σ curve.
pub fn logit_linearization(s_grid: &[f64]) -> Result<(f64, f64)> {
    logit_linearization_scaled(1.0, s_grid)
}

/// Measures the acceptance-vs-step slope of the plain (linear-kernel) random
/// walk on the given target: one chain per grid size, `attempts` moves each,
/// then a free-slope logistic fit to the acceptance counts. Out-of-support
/// proposals on constrained targets count as rejections, which is part of the
/// curve being measured.
pub fn empirical_slope(
    family: TargetFamily,
    s_grid: &[f64],
    attempts: u64,
    src: &RandomSource,
) -> Result<f64> {
    if s_grid.len() < 2 {
        return Err(Error::structural("slope needs at least two grid sizes"));
    }
    let mut entries = Vec::with_capacity(s_grid.len());
    for (i, &s) in s_grid.iter().enumerate() {
        let target = ScalarTarget::new(family, crate::model::ScaleType::Linear);
        let cfg = target.initial_config(s);
        let mut chain = Chain::new(
            &target,
            cfg,
            vec![crate::sampler::UpdateStep::single_site(0, format!("grid{i}"), false)],
            &src.substream(&format!("slope-grid-{i}")),
        )?;
        chain.run(attempts, None)?;
        let (n, x) = chain.update(0).counters()[0].totals();
        entries.push((s, n as f64, x as f64));
    }
    let record = AcceptanceRecord::new(entries)?;
    let fit = fit_full(&record)?;
    Ok(fit.slope)
}
