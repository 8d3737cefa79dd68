//! Residuals of the recurrence, derivative and integral identities.
//!
//! Each identity is written as a list of terms that must sum to zero. The
//! residual is |Σ terms| divided by Σ |terms|, so it measures the loss of
//! agreement relative to the size of what is being combined. Normalizing by
//! the two sides alone would be meaningless wherever the sides themselves
//! cancel (ν = 0, the Wronskian at large x).

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::eval::{EvalContext, OrderPair};
use crate::quadrature::tanh_sinh;
use crate::series::{pow_scaled, Scaled};

const EPS: f64 = 1e-300;

/// Residual of one identity at one point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualReport {
    pub name: &'static str,
    pub residual: f64,
    /// Σ |terms| used for normalization.
    pub scale: f64,
    /// The identity could not be formed here (normalization pole or undefined form).
    pub skipped: bool,
}

impl ResidualReport {
    fn skipped(name: &'static str) -> ResidualReport {
        ResidualReport {
            name,
            residual: 0.0,
            scale: 1.0,
            skipped: true,
        }
    }
}

/// Identity names in the order [`identity_residuals`] reports them.
pub const IDENTITY_NAMES: [&str; 9] = [
    "struveid1",
    "struveid2",
    "raw_shift",
    "raw_two_nu",
    "raw_derivative",
    "bessel_difference",
    "bessel_derivative",
    "second_kind_definition",
    "cross_product_routes",
];

fn residual_of(name: &'static str, terms: &[Scaled]) -> ResidualReport {
    let mut sum = Scaled::ZERO;
    let mut mag = Scaled::ZERO;
    for t in terms {
        sum = sum.add(*t);
        mag = mag.add(t.abs());
    }
    let residual = if mag.is_zero() {
        0.0
    } else if mag.to_f64() == 0.0 {
        sum.abs().ratio(&mag)
    } else {
        sum.abs().to_f64() / mag.to_f64().max(EPS)
    };
    ResidualReport {
        name,
        residual,
        scale: mag.to_f64().max(EPS),
        skipped: false,
    }
}

/// Runs `f`, turning domain and pole errors into a skipped report.
fn guarded<F>(name: &'static str, f: F) -> Result<ResidualReport>
where
    F: FnOnce() -> Result<Vec<Scaled>>,
{
    match f() {
        Ok(terms) => Ok(residual_of(name, &terms)),
        Err(Error::Domain(_)) | Err(Error::NormalizationPole(_)) => {
            Ok(ResidualReport::skipped(name))
        }
        Err(e) => Err(e),
    }
}

/// Residuals of every pointwise identity at (μ, ν, x).
///
/// The unnormalized relations are checked in the form that follows from the
/// series for t_{μ,ν}:
///
/// ```text
/// t_{μ+2,ν} = [(μ+1)² − ν²] t_{μ,ν} − x^{μ+1}
/// (2ν/x) t_{μ,ν} = (μ+ν−1) t_{μ−1,ν−1} − (μ−ν−1) t_{μ−1,ν+1}
/// 2 t′_{μ,ν} = (μ+ν−1) t_{μ−1,ν−1} + (μ−ν−1) t_{μ−1,ν+1}
/// ```
pub fn identity_residuals(ctx: &EvalContext, p: OrderPair, x: f64) -> Result<Vec<ResidualReport>> {
    let (mu, nu) = (p.mu, p.nu);
    let t = |q: OrderPair| ctx.t_tilde_raw(q, x).map(|r| r.value);
    let i = |n: f64| ctx.bessel_i_raw(n, x).map(|r| r.value);
    let big_t = |q: OrderPair| {
        let n = EvalContext::normalization(q)?;
        Ok::<Scaled, Error>(t(q)?.mul(n))
    };
    let mid = t(p)?;
    let lo = t(p.shifted(-1.0))?;
    let hi = t(p.shifted(1.0))?;
    let a = ctx.coeff_a_scaled(p, x);
    let two_nu_x = 2.0 * nu / x;

    let mut out = Vec::with_capacity(IDENTITY_NAMES.len());
    out.push(residual_of(
        "struveid1",
        &[lo, hi.scale(-1.0), mid.scale(-two_nu_x), a.scale(-1.0)],
    ));
    out.push(guarded("struveid2", || {
        let d = ctx.derivative_series_raw(p, x)?.value;
        Ok(vec![lo, hi, d.scale(-2.0), a])
    })?);
    out.push(guarded("raw_shift", || {
        let up = big_t(OrderPair::new(mu + 2.0, nu)?)?;
        let here = big_t(p)?;
        Ok(vec![
            up,
            pow_scaled(x, mu + 1.0),
            here.scale(-((mu + 1.0).powi(2) - nu * nu)),
        ])
    })?);
    out.push(guarded("raw_two_nu", || {
        let here = big_t(p)?;
        let down = big_t(p.shifted(-1.0))?;
        let cross = big_t(OrderPair::new(mu - 1.0, nu + 1.0)?)?;
        Ok(vec![
            here.scale(two_nu_x),
            down.scale(-(mu + nu - 1.0)),
            cross.scale(mu - nu - 1.0),
        ])
    })?);
    out.push(guarded("raw_derivative", || {
        let n = EvalContext::normalization(p)?;
        let d = ctx.derivative_series_raw(p, x)?.value.mul(n);
        let down = big_t(p.shifted(-1.0))?;
        let cross = big_t(OrderPair::new(mu - 1.0, nu + 1.0)?)?;
        Ok(vec![
            d.scale(2.0),
            down.scale(-(mu + nu - 1.0)),
            cross.scale(-(mu - nu - 1.0)),
        ])
    })?);
    let i0 = i(nu)?;
    let im = i(nu - 1.0)?;
    let ip = i(nu + 1.0)?;
    out.push(residual_of(
        "bessel_difference",
        &[im, ip.scale(-1.0), i0.scale(-two_nu_x)],
    ));
    out.push(guarded("bessel_derivative", || {
        let d = ctx
            .derivative_series_raw(OrderPair::new(nu - 1.0, nu)?, x)?
            .value;
        Ok(vec![im, ip, d.scale(-2.0)])
    })?);
    out.push(guarded("second_kind_definition", || {
        let n = EvalContext::normalization(p)?;
        let tt = ctx.lommel_big_t_tilde_raw(p, x)?.value.mul(n);
        let hyp = ctx.lommel_t_hypergeometric_raw(p, x)?.value;
        Ok(vec![tt, hyp.scale(-1.0), i0.mul(n)])
    })?);
    out.push(guarded("cross_product_routes", || {
        let s = ctx.cross_product_raw(p, x)?.value;
        Ok(vec![s, i0.mul(lo).scale(-1.0), im.mul(mid)])
    })?);
    Ok(out)
}

/// Domain of the integral identity: μ > −1, ν ≥ −1, |ν| < μ+1.
pub fn integral_identity_domain(p: OrderPair) -> bool {
    p.mu > -1.0 && p.nu >= -1.0 && p.nu.abs() < p.mu + 1.0
}

/// Relative residual between ∫₀ˣ u^μ I_ν(u) du by tanh-sinh quadrature and
/// 2^{μ−1}Γ((μ−ν+1)/2)Γ((μ+ν+1)/2)·x·(I_ν t̃_{μ−1,ν−1} − I_{ν−1} t̃_{μ,ν}).
///
/// The substitution u = x s^{1/(μ+ν+1)} absorbs the u^{μ+ν} endpoint
/// behaviour, so the quadrature runs on a bounded integrand from exactly 0.
pub fn integral_identity_residual(ctx: &EvalContext, p: OrderPair, x: f64) -> Result<f64> {
    if !integral_identity_domain(p) {
        return Err(domain(format!(
            "integral identity needs mu > -1, nu >= -1, |nu| < mu+1, got ({}, {})",
            p.mu, p.nu
        )));
    }
    if !(x > 0.0 && x.is_finite()) {
        return Err(domain(format!("x must be positive and finite, got {x}")));
    }
    let nu = p.nu;
    let g = p.mu + nu + 1.0;
    // I_ν(u)/u^ν → 2^{−ν}/Γ(ν+1) as u → 0.
    let limit = crate::gamma::recip_gamma(nu + 1.0) * 2f64.powf(-nu);
    let mut failure = None;
    let q = tanh_sinh(
        |s, c| {
            let u = if c < 0.25 {
                x * (libm::log1p(-c) / g).exp()
            } else {
                x * s.powf(1.0 / g)
            };
            if u < 1e-150 {
                return limit * (-x).exp();
            }
            match ctx.bessel_i_raw(nu, u) {
                Ok(r) => r.value.div(pow_scaled(u, nu)).times_exp_neg(x),
                Err(e) => {
                    failure = Some(e);
                    0.0
                }
            }
        },
        1e-12,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    // LHS = (x^γ/γ)·e^x·Q
    let lhs = pow_scaled(x, g).scale(q.value / g);
    let rhs = EvalContext::normalization(p)?
        .mul(ctx.cross_product_raw(p, x)?.value)
        .scale(x)
        .times_exp_neg(x);
    let lhs = lhs.to_f64();
    Ok((lhs - rhs).abs() / lhs.abs().max(rhs.abs()).max(EPS))
}

/// Residual of I_ν I_{1−ν} − I_{ν−1} I_{−ν} = −2 sin(πν)/(πx) for ν ∈ (−1, 0).
pub fn wronskian_special_residual(ctx: &EvalContext, nu: f64, x: f64) -> Result<f64> {
    if !(nu > -1.0 && nu < 0.0) {
        return Err(domain(format!("nu must lie in (-1, 0), got {nu}")));
    }
    let i = |n: f64| ctx.bessel_i_raw(n, x).map(|r| r.value);
    let first = i(nu)?.mul(i(1.0 - nu)?);
    let second = i(nu - 1.0)?.mul(i(-nu)?);
    let rhs = -2.0 * crate::gamma::sin_pi(nu) / (std::f64::consts::PI * x);
    Ok(residual_of("wronskian", &[first, second.scale(-1.0), Scaled::new(-rhs)]).residual)
}

/// Tolerance on the recurrence and derivative identity residuals.
pub const IDENTITY_TOL: f64 = 1e-12;
/// Tolerance on the integral identity residual.
pub const INTEGRAL_TOL: f64 = 1e-10;
/// Tolerance on the Wronskian residual.
pub const WRONSKIAN_TOL: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Random points for the recurrence and derivative identities.
    pub points: usize,
    pub integral_points: usize,
    pub wronskian_points: usize,
    pub x_max: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            points: 1000,
            integral_points: 100,
            wronskian_points: 100,
            x_max: 60.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteFailure {
    pub name: String,
    pub mu: f64,
    pub nu: f64,
    pub x: f64,
    /// Residual, or NaN when evaluation itself failed.
    pub residual: f64,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct SuiteReport {
    /// Largest residual per identity name, including "integral" and "wronskian".
    pub max_residual: BTreeMap<String, f64>,
    pub checked: usize,
    pub skipped: usize,
    pub failures: Vec<SuiteFailure>,
}

impl SuiteReport {
    pub fn is_clean(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, name: &str, p: (f64, f64, f64), r: Result<f64>, tol: f64) {
        match r {
            Ok(v) => {
                self.checked += 1;
                let m = self.max_residual.entry(name.to_string()).or_insert(0.0);
                *m = m.max(v);
                if !(v <= tol) {
                    self.failures.push(SuiteFailure {
                        name: name.to_string(),
                        mu: p.0,
                        nu: p.1,
                        x: p.2,
                        residual: v,
                        error: None,
                    });
                }
            }
            Err(e) => self.failures.push(SuiteFailure {
                name: name.to_string(),
                mu: p.0,
                nu: p.1,
                x: p.2,
                residual: f64::NAN,
                error: Some(e.to_string()),
            }),
        }
    }
}

fn draw_x(rng: &mut ChaCha8Rng, x_max: f64) -> f64 {
    if rng.gen_bool(0.5) {
        rng.gen_range((1e-3f64).ln()..x_max.ln()).exp()
    } else {
        x_max * (1.0 - rng.gen::<f64>())
    }
}

/// Checks every identity at seeded random points: μ ∈ (−1.5, 15], |ν| < μ+3, x ∈ (0, x_max].
pub fn run_suite(ctx: &EvalContext, cfg: &SuiteConfig) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let alg: Vec<(f64, f64, f64)> = (0..cfg.points)
        .map(|_| {
            let mu = -1.5 + 16.5 * (1.0 - rng.gen::<f64>());
            let w = mu + 3.0;
            let nu = rng.gen_range(-w..w);
            (mu, nu, draw_x(&mut rng, cfg.x_max))
        })
        .collect();
    let integral: Vec<(f64, f64, f64)> = (0..cfg.integral_points)
        .map(|_| {
            let mu = -1.0 + 16.0 * (1.0 - rng.gen::<f64>());
            let lo = (-1.0f64).max(-mu - 1.0);
            let nu = rng.gen_range(lo..mu + 1.0);
            (mu, nu, draw_x(&mut rng, cfg.x_max))
        })
        .collect();
    let wronskian: Vec<(f64, f64, f64)> = (0..cfg.wronskian_points)
        .map(|_| {
            let nu = -(1.0 - rng.gen::<f64>()) * (1.0 - 1e-9);
            (0.0, nu.min(-1e-9), draw_x(&mut rng, cfg.x_max))
        })
        .collect();

    let alg_res: Vec<Result<Vec<ResidualReport>>> = alg
        .par_iter()
        .map(|&(mu, nu, x)| identity_residuals(ctx, OrderPair { mu, nu }, x))
        .collect();
    let int_res: Vec<Result<f64>> = integral
        .par_iter()
        .map(|&(mu, nu, x)| integral_identity_residual(ctx, OrderPair { mu, nu }, x))
        .collect();
    let wr_res: Vec<Result<f64>> = wronskian
        .par_iter()
        .map(|&(_, nu, x)| wronskian_special_residual(ctx, nu, x))
        .collect();

    let mut report = SuiteReport::default();
    for (&pt, res) in alg.iter().zip(alg_res) {
        match res {
            Ok(list) => {
                for r in list {
                    if r.skipped {
                        report.skipped += 1;
                    } else {
                        report.record(r.name, pt, Ok(r.residual), IDENTITY_TOL);
                    }
                }
            }
            Err(e) => report.record("identities", pt, Err(e), IDENTITY_TOL),
        }
    }
    for (&pt, r) in integral.iter().zip(int_res) {
        report.record("integral", pt, r, INTEGRAL_TOL);
    }
    for (&pt, r) in wronskian.iter().zip(wr_res) {
        report.record("wronskian", pt, r, WRONSKIAN_TOL);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> EvalContext {
        EvalContext::default()
    }

    #[test]
    fn all_identities_small_at_sample_points() {
        for &(mu, nu, x) in &[
            (1.0, 0.0, 10.0),
            (2.0, 0.0, 2.5),
            (0.3, 1.7, 0.4),
            (-1.2, 0.4, 5.0),
            (7.5, -3.2, 33.0),
            (14.0, 9.0, 59.0),
        ] {
            let p = OrderPair::new(mu, nu).unwrap();
            for r in identity_residuals(&ctx(), p, x).unwrap() {
                assert!(r.residual <= 1e-13, "{mu} {nu} {x}: {r:?}");
            }
        }
    }

    #[test]
    fn scaled_path_point() {
        let c = EvalContext::new(crate::EvalOptions::default().with_scaling_threshold(5.0));
        let p = OrderPair::new(1.0, 0.0).unwrap();
        for r in identity_residuals(&c, p, 10.0).unwrap() {
            assert!(r.residual <= 1e-12, "{r:?}");
        }
    }

    #[test]
    fn poles_are_skipped() {
        // μ−ν+1 = 0 puts the normalization of t on a pole.
        let p = OrderPair::new(0.0, 1.0).unwrap();
        let r = identity_residuals(&ctx(), p, 1.0).unwrap();
        assert!(r.iter().any(|r| r.skipped));
        assert!(r.iter().filter(|r| !r.skipped).all(|r| r.residual < 1e-13));
    }

    #[test]
    fn reduces_to_bessel_relation() {
        let p = OrderPair::new(0.4, 1.4).unwrap();
        let r = identity_residuals(&ctx(), p, 3.0).unwrap();
        assert!(r[0].residual <= 1e-13);
    }

    #[test]
    fn fault_is_visible() {
        let c = ctx().with_fault(crate::Fault::NegateCoeffA);
        let p = OrderPair::new(2.0, 0.5).unwrap();
        let r = identity_residuals(&c, p, 1.0).unwrap();
        assert!(r[0].residual > 1e-3);
    }

    #[test]
    fn integral_identity() {
        for &(mu, nu, x) in &[
            (1.0, 0.0, 1.0),
            (2.5, 1.0, 7.5),
            (0.05, -0.99, 3.0),
            (3.0, -1.0, 40.0),
        ] {
            let p = OrderPair::new(mu, nu).unwrap();
            let r = integral_identity_residual(&ctx(), p, x).unwrap();
            assert!(r <= 1e-11, "{mu} {nu} {x}: {r}");
        }
        let p = OrderPair::new(0.0, 1.0).unwrap();
        assert!(integral_identity_residual(&ctx(), p, 1.0).is_err());
    }

    #[test]
    fn wronskian() {
        for &(nu, x) in &[(-0.5, 1.0), (-0.25, 5.0), (-0.75, 0.1), (-0.9, 55.0)] {
            let r = wronskian_special_residual(&ctx(), nu, x).unwrap();
            assert!(r <= 1e-13, "{nu} {x}: {r}");
        }
        assert!(wronskian_special_residual(&ctx(), 0.0, 1.0).is_err());
    }

    #[test]
    fn seeded_suite_is_clean_and_reproducible() {
        let cfg = SuiteConfig {
            seed: 3,
            points: 200,
            integral_points: 20,
            wronskian_points: 20,
            ..SuiteConfig::default()
        };
        let a = run_suite(&EvalContext::default(), &cfg);
        assert!(a.is_clean(), "{:?}", a.failures);
        assert!(
            a.max_residual.contains_key("integral") && a.max_residual.contains_key("wronskian")
        );
        let b = run_suite(&EvalContext::default(), &cfg);
        assert_eq!(a.max_residual, b.max_residual);
        let faulty = EvalContext::default().with_fault(crate::Fault::NegateCoeffA);
        assert!(!run_suite(&faulty, &cfg).is_clean());
    }
}
