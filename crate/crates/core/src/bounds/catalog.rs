//! Built-in catalog entries.

use std::f64::consts::{LN_2, PI};
use std::sync::Arc;

use super::{Bound, Constraint, DomainRegion, Inputs, Side, SideSpec, Target};
use crate::error::Result;
use crate::eval::{ConditionKind, OrderPair};
use crate::gamma::recip_gamma;
use crate::series::{recip_gamma_scaled, Scaled};

/// An inequality given by closed-form side formulas.
pub(crate) struct Inequality {
    id: &'static str,
    target: Target,
    lower: Option<SideSpec>,
    upper: Option<SideSpec>,
    equality: fn(Side, OrderPair) -> bool,
    equality_text: &'static str,
}

impl Bound for Inequality {
    fn id(&self) -> &'static str {
        self.id
    }

    fn target(&self) -> Target {
        self.target
    }

    fn side(&self, side: Side) -> Option<&SideSpec> {
        match side {
            Side::Lower => self.lower.as_ref(),
            Side::Upper => self.upper.as_ref(),
        }
    }

    fn equality_case(&self, side: Side, p: OrderPair) -> bool {
        self.side(side).is_some() && (self.equality)(side, p)
    }

    fn equality_description(&self) -> &'static str {
        self.equality_text
    }
}

const EQ_TOL: f64 = 1e-12;

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= EQ_TOL
}

fn no_equality(_: Side, _: OrderPair) -> bool {
    false
}

fn at_minus_half(_: Side, p: OrderPair) -> bool {
    close(p.mu, -0.5) && close(p.nu, -0.5)
}

fn on_shift_line(p: OrderPair) -> bool {
    close(p.mu - p.nu, -1.0)
}

macro_rules! strict {
    ($label:literal, |$p:ident| $e:expr) => {
        Constraint {
            label: $label,
            g: |$p: OrderPair| $e,
            inclusive: false,
        }
    };
}

macro_rules! incl {
    ($label:literal, |$p:ident| $e:expr) => {
        Constraint {
            label: $label,
            g: |$p: OrderPair| $e,
            inclusive: true,
        }
    };
}

fn below_mu_plus_one() -> Constraint {
    strict!("nu < mu+1", |p| p.mu + 1.0 - p.nu)
}

// μ > −1, 0 ≤ ν < μ+1
fn region_a() -> DomainRegion {
    DomainRegion::all(vec![
        strict!("mu > -1", |p| p.mu + 1.0),
        incl!("nu >= 0", |p| p.nu),
        below_mu_plus_one(),
    ])
}

// μ > −1/2, 1/2 ≤ ν < μ+1
fn region_half() -> DomainRegion {
    DomainRegion::all(vec![
        strict!("mu > -1/2", |p| p.mu + 0.5),
        incl!("nu >= 1/2", |p| p.nu - 0.5),
        below_mu_plus_one(),
    ])
}

// μ > −3/2, −1/2 ≤ ν < μ+1
fn region_c() -> DomainRegion {
    DomainRegion::all(vec![
        strict!("mu > -3/2", |p| p.mu + 1.5),
        incl!("nu >= -1/2", |p| p.nu + 0.5),
        below_mu_plus_one(),
    ])
}

// μ > −2, −1 ≤ ν < μ+1
fn region_d() -> DomainRegion {
    DomainRegion::all(vec![
        strict!("mu > -2", |p| p.mu + 2.0),
        incl!("nu >= -1", |p| p.nu + 1.0),
        below_mu_plus_one(),
    ])
}

// μ ≥ −1/2, −1 ≤ ν < μ+1, K ≥ 6
fn region_k6() -> DomainRegion {
    DomainRegion::all(vec![
        incl!("mu >= -1/2", |p| p.mu + 0.5),
        incl!("nu >= -1", |p| p.nu + 1.0),
        below_mu_plus_one(),
        incl!("(mu+3)^2 - nu^2 >= 6", |p| p.k_const() - 6.0),
    ])
}

fn b_domain() -> Vec<Constraint> {
    vec![
        strict!("mu > -2", |p| p.mu + 2.0),
        strict!("|nu+1| < mu+2", |p| p.mu + 2.0 - (p.nu + 1.0).abs()),
    ]
}

fn nu_region(c: Constraint) -> DomainRegion {
    DomainRegion::all(vec![c])
}

fn side(
    formula: &'static str,
    domain: DomainRegion,
    strict: bool,
    eval: super::SideFn,
) -> Option<SideSpec> {
    Some(SideSpec {
        formula,
        domain,
        strict,
        eval,
    })
}

// Helpers on logarithms so that e^x-sized factors never overflow.

fn ln_sinh(x: f64) -> f64 {
    x - LN_2 + (-(-2.0 * x).exp_m1()).ln()
}

fn ln_cosh(x: f64) -> f64 {
    x - LN_2 + (-2.0 * x).exp().ln_1p()
}

fn ln_tanh_half(x: f64) -> f64 {
    (0.5 * x).tanh().ln()
}

fn exp_scaled(ln: f64) -> Scaled {
    Scaled::from_log(1.0, ln)
}

fn plain(v: f64) -> Result<Scaled> {
    Ok(Scaled::new(v))
}

/// s(u) = √((ν+1/2)² + u²)
fn s_half(nu: f64, u: f64) -> f64 {
    (nu + 0.5).hypot(u)
}

/// w(u) = √((ν+3/2)² + u²)
fn w_three_half(nu: f64, u: f64) -> f64 {
    (nu + 1.5).hypot(u)
}

/// (ν+1/2) ln(ν+1/2+s), with the value 0 at ν = −1/2.
fn half_power_log(nu: f64, s: f64) -> f64 {
    let h = nu + 0.5;
    if h == 0.0 {
        0.0
    } else {
        h * (h + s).ln()
    }
}

// x^μ sinh x / (2^{μ+1} Γ(α) Γ(β))
fn sinh_bound(i: &Inputs) -> Result<Scaled> {
    let mu = i.p.mu;
    Ok(exp_scaled(mu * i.x.ln() + ln_sinh(i.x) - (mu + 1.0) * LN_2).mul(i.recip_g()))
}

fn b_const(i: &Inputs) -> Result<Scaled> {
    plain(i.c())
}

fn b_refined(i: &Inputs) -> Result<Scaled> {
    plain(i.c() / (1.0 + i.x * i.x / i.k()))
}

fn b_csch(i: &Inputs) -> Result<Scaled> {
    Ok(exp_scaled(i.x.ln() - ln_sinh(i.x)).scale(i.c()))
}

fn zero(_: &Inputs) -> Result<Scaled> {
    Ok(Scaled::ZERO)
}

// a_{μ,ν} I_ν
fn cross_a(i: &Inputs) -> Result<Scaled> {
    Ok(i.ctx.coeff_a_scaled(i.p, i.x).mul(i.bessel(i.p.nu, i.x)?))
}

// a_{μ−1,ν−1} I_{ν−1}
fn cross_b(i: &Inputs) -> Result<Scaled> {
    Ok(i.ctx
        .coeff_a_scaled(i.p.shifted(-1.0), i.x)
        .mul(i.bessel(i.p.nu - 1.0, i.x)?))
}

// (I_{ν−1}/I_ν + 2b/x)^{−1}
fn bracket_lower(i: &Inputs) -> Result<Scaled> {
    let r = i.bessel_ratio(i.x)?;
    plain(1.0 / (1.0 / r + 2.0 * i.b(i.x)? / i.x))
}

fn bessel_ratio(i: &Inputs) -> Result<Scaled> {
    plain(i.bessel_ratio(i.x)?)
}

fn tanh_x(i: &Inputs) -> Result<Scaled> {
    plain(i.x.tanh())
}

// x tanh x / (x + (2ν−1+2b) tanh x)
fn ratio_tanh_lower(i: &Inputs) -> Result<Scaled> {
    let t = i.x.tanh();
    plain(i.x * t / (i.x + (2.0 * i.p.nu - 1.0 + 2.0 * i.b(i.x)?) * t))
}

// x / (ν − 1/2 + 2b + √((ν+1/2)² + x²))
fn ratio_sqrt_lower(i: &Inputs) -> Result<Scaled> {
    let nu = i.p.nu;
    plain(i.x / (nu - 0.5 + 2.0 * i.b(i.x)? + s_half(nu, i.x)))
}

// x / (ν − 1/2 + √((ν−1/2)² + x²))
fn sqrt_upper(i: &Inputs) -> Result<Scaled> {
    let nu = i.p.nu;
    plain(i.x / (nu - 0.5 + (nu - 0.5).hypot(i.x)))
}

fn simple_tanh(i: &Inputs) -> Result<Scaled> {
    plain(i.x.tanh() / (i.p.mu + i.p.nu + 1.0))
}

fn simple_sqrt(i: &Inputs) -> Result<Scaled> {
    plain(i.x / (i.p.mu + 0.5 + s_half(i.p.nu, i.x)))
}

fn cond_bessel(i: &Inputs) -> Result<Scaled> {
    plain(i.ctx.condition_number(ConditionKind::BesselI, i.p, i.x)?)
}

fn cond_bessel_upper(i: &Inputs) -> Result<Scaled> {
    plain(i.ctx.condition_number(ConditionKind::BesselI, i.p, i.x)? + 2.0 * i.b(i.x)?)
}

// √((ν−1/2)² + x²) − 1/2
fn cond_sqrt_lower(i: &Inputs) -> Result<Scaled> {
    plain((i.p.nu - 0.5).hypot(i.x) - 0.5)
}

// √((ν+1/2)² + x²) + 2b − 1/2
fn cond_sqrt_upper(i: &Inputs) -> Result<Scaled> {
    plain(s_half(i.p.nu, i.x) + 2.0 * i.b(i.x)? - 0.5)
}

fn cond_tanh_lower(i: &Inputs) -> Result<Scaled> {
    plain(i.x / i.x.tanh() - i.p.nu)
}

fn cond_tanh_upper(i: &Inputs) -> Result<Scaled> {
    plain(i.x * i.x.tanh() + i.p.nu + 2.0 * i.b(i.x)?)
}

fn ln_k_ratio(i: &Inputs) -> f64 {
    let k = i.k();
    (k + i.y * i.y).ln() - (k + i.x * i.x).ln()
}

fn bessel_xy(i: &Inputs) -> Result<Scaled> {
    Ok(i.bessel(i.p.nu, i.x)?.div(i.bessel(i.p.nu, i.y)?))
}

// (x/y)^{μ−ν+1} ((K+y²)/(K+x²))^{(μ−ν+1)/2} I_ν(x)/I_ν(y)
fn xy_bessel_lower(i: &Inputs) -> Result<Scaled> {
    let c = i.c();
    let ln = 2.0 * c * (i.x / i.y).ln() + c * ln_k_ratio(i);
    Ok(exp_scaled(ln).mul(bessel_xy(i)?))
}

fn xy_sqrt_lower(i: &Inputs) -> Result<Scaled> {
    let (mu, nu, x, y) = (i.p.mu, i.p.nu, i.x, i.y);
    let (sx, sy) = (s_half(nu, x), s_half(nu, y));
    let ln = (x * x - y * y) / (sx + sy)
        + (mu + 1.0) * (x / y).ln()
        + i.c() * ln_k_ratio(i)
        + half_power_log(nu, sy)
        - half_power_log(nu, sx);
    Ok(exp_scaled(ln))
}

fn xy_sqrt_upper(i: &Inputs) -> Result<Scaled> {
    let (mu, nu, x, y) = (i.p.mu, i.p.nu, i.x, i.y);
    let (wx, wy) = (w_three_half(nu, x), w_three_half(nu, y));
    let a = mu + 1.5;
    let ln = (x * x - y * y) / (wx + wy)
        + (mu - nu + 1.0) * (ln_tanh_half(x) - ln_tanh_half(y))
        + nu * (x / y).ln()
        + a * ((a + wy).ln() - (a + wx).ln());
    Ok(exp_scaled(ln))
}

fn xy_cosh_lower(i: &Inputs) -> Result<Scaled> {
    let (mu, x, y) = (i.p.mu, i.x, i.y);
    let ln = i.c() * ln_k_ratio(i) + (mu + 1.0) * (x / y).ln() + ln_cosh(x) - ln_cosh(y);
    Ok(exp_scaled(ln))
}

fn xy_cosh_upper(i: &Inputs) -> Result<Scaled> {
    let (mu, nu, x, y) = (i.p.mu, i.p.nu, i.x, i.y);
    let ln = nu * (x / y).ln()
        + (mu - nu + 1.0) * (ln_tanh_half(x) - ln_tanh_half(y))
        + (ln_cosh(x) - ln_cosh(y)) / (mu + nu + 3.0);
    Ok(exp_scaled(ln))
}

// I_ν (x²/(K+x²))^{(μ−ν+1)/2}
fn func_i_lower(i: &Inputs) -> Result<Scaled> {
    let x2 = i.x * i.x;
    let f = exp_scaled(i.c() * (x2.ln() - (i.k() + x2).ln()));
    Ok(i.bessel(i.p.nu, i.x)?.mul(f))
}

fn func_i_upper(i: &Inputs) -> Result<Scaled> {
    Ok(func_i_lower(i)?.scale(super::constant_c(i.p)?))
}

fn bessel_nu(i: &Inputs) -> Result<Scaled> {
    i.bessel(i.p.nu, i.x)
}

// x^{μ+1} e^{s} / ((K+x²)^{(μ−ν+1)/2} (ν+1/2+s)^{ν+1/2})
fn exp_base(i: &Inputs) -> Scaled {
    let (mu, nu, x) = (i.p.mu, i.p.nu, i.x);
    let s = s_half(nu, x);
    exp_scaled((mu + 1.0) * x.ln() + s - i.c() * (i.k() + x * x).ln() - half_power_log(nu, s))
}

fn func_exp_lower(i: &Inputs) -> Result<Scaled> {
    Ok(exp_base(i).scale(1.0 / (2.0 * PI).sqrt()))
}

fn func_exp_upper(i: &Inputs) -> Result<Scaled> {
    Ok(exp_base(i).scale(super::constant_c_prime(i.p)?))
}

// x^ν tanh^{μ−ν+1}(x/2) cosh^{1/(μ+ν+3)} x / (2^ν Γ(α) Γ(β))
fn func_cosh_lower(i: &Inputs) -> Result<Scaled> {
    let (mu, nu, x) = (i.p.mu, i.p.nu, i.x);
    let ln =
        nu * x.ln() + (mu - nu + 1.0) * ln_tanh_half(x) + ln_cosh(x) / (mu + nu + 3.0) - nu * LN_2;
    Ok(exp_scaled(ln).mul(i.recip_g()))
}

// x^{μ+1} (K/(K+x²))^{(μ−ν+1)/2} cosh x / (2^{μ+1} Γ(α) Γ(β))
fn func_cosh_upper(i: &Inputs) -> Result<Scaled> {
    let (mu, x) = (i.p.mu, i.x);
    let k = i.k();
    let ln =
        (mu + 1.0) * x.ln() + i.c() * (k.ln() - (k + x * x).ln()) + ln_cosh(x) - (mu + 1.0) * LN_2;
    Ok(exp_scaled(ln).mul(i.recip_g()))
}

// Γ(ν+1) √(3(2ν+3)) / (√π Γ(ν+3/2)) · x I_ν / √(x² + 3(2ν+3))
fn near22(i: &Inputs) -> Result<Scaled> {
    let nu = i.p.nu;
    let q = 3.0 * (2.0 * nu + 3.0);
    let k = recip_gamma(nu + 1.5) / recip_gamma(nu + 1.0) * q.sqrt() / PI.sqrt();
    Ok(i.bessel(nu, i.x)?.scale(k * i.x / (i.x * i.x + q).sqrt()))
}

// 2Γ(ν+2) / (√π Γ(ν+3/2)) · I_{ν+1}
fn bpstu(i: &Inputs) -> Result<Scaled> {
    let nu = i.p.nu;
    let k = 2.0 * recip_gamma(nu + 1.5) / recip_gamma(nu + 2.0) / PI.sqrt();
    Ok(i.bessel(nu + 1.0, i.x)?.scale(k))
}

// x^{ν+1} e^{s} / (√(2π) √(3(2ν+3)+x²) (ν+1/2+s)^{ν+1/2})
fn llowerr(i: &Inputs) -> Result<Scaled> {
    let (nu, x) = (i.p.nu, i.x);
    let s = s_half(nu, x);
    let ln = (nu + 1.0) * x.ln() + s
        - 0.5 * (3.0 * (2.0 * nu + 3.0) + x * x).ln()
        - half_power_log(nu, s)
        - 0.5 * (2.0 * PI).ln();
    Ok(exp_scaled(ln))
}

// e^{w−ν−3/2} x^ν tanh^{μ−ν+1}(x/2) ((μ+ν+3)/(μ+3/2+w))^{μ+3/2} / (2^ν Γ(α) Γ(β))
fn alt_exp_lower(i: &Inputs) -> Result<Scaled> {
    let (mu, nu, x) = (i.p.mu, i.p.nu, i.x);
    let w = w_three_half(nu, x);
    let a = mu + 1.5;
    // w − (ν+3/2) without cancellation
    let excess = x * x / (w + nu + 1.5);
    let ln = excess
        + nu * x.ln()
        + (mu - nu + 1.0) * ln_tanh_half(x)
        + a * ((mu + nu + 3.0).ln() - (a + w).ln())
        - nu * LN_2;
    Ok(exp_scaled(ln).mul(i.recip_g()))
}

// (x/y)^ν (cosh x / cosh y)^{1/(2(ν+1))}
fn complement_ratio(i: &Inputs) -> Result<Scaled> {
    let (nu, x, y) = (i.p.nu, i.x, i.y);
    Ok(exp_scaled(
        nu * (x / y).ln() + (ln_cosh(x) - ln_cosh(y)) / (2.0 * (nu + 1.0)),
    ))
}

// x^{μ+1} cosh^{1/(2(ν+1))} x / (2^ν Γ(ν+1) (K+x²)^{(μ−ν+1)/2})
fn complement_func(i: &Inputs) -> Result<Scaled> {
    let (mu, nu, x) = (i.p.mu, i.p.nu, i.x);
    let ln = (mu + 1.0) * x.ln() + ln_cosh(x) / (2.0 * (nu + 1.0))
        - nu * LN_2
        - i.c() * (i.k() + x * x).ln();
    Ok(exp_scaled(ln).mul(recip_gamma_scaled(nu + 1.0)))
}

// x tanh x / (x + (2ν−1) tanh x)
fn aux_tanh_lower(i: &Inputs) -> Result<Scaled> {
    let t = i.x.tanh();
    plain(i.x * t / (i.x + (2.0 * i.p.nu - 1.0) * t))
}

// x / (ν − 1/2 + √((ν+1/2)² + x²))
fn aux_sqrt_lower(i: &Inputs) -> Result<Scaled> {
    let nu = i.p.nu;
    plain(i.x / (nu - 0.5 + s_half(nu, i.x)))
}

fn entry(
    id: &'static str,
    target: Target,
    lower: Option<SideSpec>,
    upper: Option<SideSpec>,
    equality: fn(Side, OrderPair) -> bool,
    equality_text: &'static str,
) -> Arc<dyn Bound> {
    Arc::new(Inequality {
        id,
        target,
        lower,
        upper,
        equality,
        equality_text,
    })
}

pub(crate) fn entries() -> Vec<Arc<dyn Bound>> {
    use Target::*;
    let sinh_ub_domain = DomainRegion::all(vec![
        incl!("mu >= -1/2", |p| p.mu + 0.5),
        incl!("(mu+3)^2 - nu^2 >= 6", |p| p.k_const() - 6.0),
    ]);
    let sinh_lb_domain = DomainRegion::all(vec![
        strict!("mu > -3", |p| p.mu + 3.0),
        incl!("mu <= -1/2", |p| -0.5 - p.mu),
        incl!("(mu+3)^2 - nu^2 <= 6", |p| 6.0 - p.k_const()),
        strict!("|nu| < mu+3", |p| p.mu + 3.0 - p.nu.abs()),
    ]);
    let mut csch_lb = b_domain();
    csch_lb.extend(sinh_ub_domain.regions[0].iter().copied());
    let mut csch_ub = b_domain();
    csch_ub.extend([
        incl!("mu <= -1/2", |p| -0.5 - p.mu),
        incl!("(mu+3)^2 - nu^2 <= 6", |p| 6.0 - p.k_const()),
    ]);

    vec![
        entry(
            "SINH_UB",
            LommelTTilde,
            None,
            side(
                "x^mu sinh(x) / (2^(mu+1) G(alpha) G(beta))",
                sinh_ub_domain,
                true,
                sinh_bound,
            ),
            at_minus_half,
            "mu = nu = -1/2",
        ),
        entry(
            "SINH_LB",
            LommelTTilde,
            side(
                "x^mu sinh(x) / (2^(mu+1) G(alpha) G(beta))",
                sinh_lb_domain,
                true,
                sinh_bound,
            ),
            None,
            at_minus_half,
            "mu = nu = -1/2",
        ),
        entry(
            "B_UB_CONST",
            CoeffB,
            None,
            side("(mu-nu+1)/2", DomainRegion::all(b_domain()), true, b_const),
            no_equality,
            "none",
        ),
        entry(
            "B_UB_REFINED",
            CoeffB,
            None,
            side(
                "((mu-nu+1)/2) / (1 + x^2/K)",
                DomainRegion::all(b_domain()),
                true,
                b_refined,
            ),
            no_equality,
            "none",
        ),
        entry(
            "B_LB_CSCH",
            CoeffB,
            side(
                "((mu-nu+1)/2) x csch(x)",
                DomainRegion::all(csch_lb),
                true,
                b_csch,
            ),
            None,
            at_minus_half,
            "mu = nu = -1/2",
        ),
        entry(
            "B_UB_CSCH",
            CoeffB,
            None,
            side(
                "((mu-nu+1)/2) x csch(x)",
                DomainRegion::all(csch_ub),
                true,
                b_csch,
            ),
            at_minus_half,
            "mu = nu = -1/2",
        ),
        entry(
            "CROSS_POS",
            CrossProduct,
            side(
                "0",
                DomainRegion::any(vec![
                    vec![
                        strict!("mu > -1", |p| p.mu + 1.0),
                        incl!("nu >= -1", |p| p.nu + 1.0),
                        strict!("|nu| < mu+1", |p| p.mu + 1.0 - p.nu.abs()),
                    ],
                    vec![
                        strict!("mu > -1", |p| p.mu + 1.0),
                        strict!("nu > -1", |p| p.nu + 1.0),
                        incl!("nu >= -mu-1", |p| p.nu + p.mu + 1.0),
                        below_mu_plus_one(),
                    ],
                ]),
                true,
                zero,
            ),
            None,
            |_, p| on_shift_line(p) || (close(p.mu, 0.0) && close(p.nu, -1.0)),
            "mu - nu = -1, or (mu, nu) = (0, -1)",
        ),
        entry(
            "CROSS_UB_A",
            CrossProduct,
            None,
            side(
                "a_{mu,nu} I_nu",
                DomainRegion::any(vec![
                    vec![
                        strict!("mu > -2", |p| p.mu + 2.0),
                        incl!("nu >= -2", |p| p.nu + 2.0),
                        strict!("|nu+1| < mu+2", |p| p.mu + 2.0 - (p.nu + 1.0).abs()),
                    ],
                    vec![
                        strict!("mu > -2", |p| p.mu + 2.0),
                        strict!("nu > -2", |p| p.nu + 2.0),
                        incl!("nu+1 >= -mu-2", |p| p.nu + p.mu + 3.0),
                        below_mu_plus_one(),
                    ],
                ]),
                true,
                cross_a,
            ),
            |_, p| on_shift_line(p) || (close(p.mu, -1.0) && close(p.nu, -2.0)),
            "mu - nu = -1, or (mu, nu) = (-1, -2)",
        ),
        entry(
            "CROSS_UB_B",
            CrossProduct,
            None,
            side(
                "a_{mu-1,nu-1} I_{nu-1}",
                DomainRegion::any(vec![
                    vec![
                        strict!("mu > 0", |p| p.mu),
                        incl!("nu >= 0", |p| p.nu),
                        strict!("|nu-1| < mu", |p| p.mu - (p.nu - 1.0).abs()),
                    ],
                    vec![
                        strict!("mu > 0", |p| p.mu),
                        strict!("nu > 0", |p| p.nu),
                        incl!("nu-1 >= -mu", |p| p.nu - 1.0 + p.mu),
                        below_mu_plus_one(),
                    ],
                ]),
                true,
                cross_b,
            ),
            |_, p| on_shift_line(p) || (close(p.mu, 1.0) && close(p.nu, 0.0)),
            "mu - nu = -1, or (mu, nu) = (1, 0)",
        ),
        entry(
            "RATIO_BRACKET",
            RatioH,
            side(
                "(I_{nu-1}/I_nu + 2b/x)^(-1)",
                region_a(),
                true,
                bracket_lower,
            ),
            side("I_nu / I_{nu-1}", region_a(), true, bessel_ratio),
            |_, p| on_shift_line(p),
            "mu - nu = -1",
        ),
        entry(
            "STRUVE_CROSS",
            StruveCross,
            side(
                "0",
                nu_region(incl!("nu >= -1/2", |p| p.nu + 0.5)),
                true,
                zero,
            ),
            side(
                "a_{nu,nu} I_nu",
                nu_region(incl!("nu >= -3/2", |p| p.nu + 1.5)),
                true,
                cross_a,
            ),
            no_equality,
            "none",
        ),
        entry(
            "STRUVE_CROSS_ALT",
            StruveCross,
            None,
            side(
                "a_{nu-1,nu-1} I_{nu-1}",
                nu_region(incl!("nu >= 1/2", |p| p.nu - 0.5)),
                true,
                cross_b,
            ),
            no_equality,
            "none",
        ),
        entry(
            "STRUVE_BRACKET",
            StruveRatio,
            side(
                "(I_{nu-1}/I_nu + 2b_{nu,nu}/x)^(-1)",
                nu_region(incl!("nu >= 0", |p| p.nu)),
                true,
                bracket_lower,
            ),
            side(
                "I_nu / I_{nu-1}",
                nu_region(incl!("nu >= 0", |p| p.nu)),
                true,
                bessel_ratio,
            ),
            no_equality,
            "none",
        ),
        entry(
            "RATIO_TANH",
            RatioH,
            side(
                "x tanh(x) / (x + (2nu-1+2b) tanh(x))",
                region_half(),
                true,
                ratio_tanh_lower,
            ),
            side("tanh(x)", region_half(), true, tanh_x),
            no_equality,
            "none",
        ),
        entry(
            "RATIO_SQRT",
            RatioH,
            side(
                "x / (nu - 1/2 + 2b + sqrt((nu+1/2)^2 + x^2))",
                region_a(),
                true,
                ratio_sqrt_lower,
            ),
            side(
                "x / (nu - 1/2 + sqrt((nu-1/2)^2 + x^2))",
                region_half(),
                true,
                sqrt_upper,
            ),
            no_equality,
            "none",
        ),
        entry(
            "RATIO_SIMPLE_TANH",
            RatioH,
            side("tanh(x) / (mu+nu+1)", region_half(), true, simple_tanh),
            None,
            no_equality,
            "none",
        ),
        entry(
            "RATIO_SIMPLE_SQRT",
            RatioH,
            side(
                "x / (mu + 1/2 + sqrt((nu+1/2)^2 + x^2))",
                region_a(),
                true,
                simple_sqrt,
            ),
            None,
            no_equality,
            "none",
        ),
        entry(
            "COND_BESSEL",
            Condition,
            side("C(I_nu)", region_a(), true, cond_bessel),
            side("C(I_nu) + 2b", region_d(), true, cond_bessel_upper),
            no_equality,
            "none",
        ),
        entry(
            "COND_SQRT",
            Condition,
            side(
                "sqrt((nu-1/2)^2 + x^2) - 1/2",
                region_half(),
                true,
                cond_sqrt_lower,
            ),
            side(
                "sqrt((nu+1/2)^2 + x^2) + 2b - 1/2",
                region_c(),
                true,
                cond_sqrt_upper,
            ),
            no_equality,
            "none",
        ),
        entry(
            "COND_TANH",
            Condition,
            side("x coth(x) - nu", region_half(), true, cond_tanh_lower),
            side("x tanh(x) + nu + 2b", region_c(), true, cond_tanh_upper),
            no_equality,
            "none",
        ),
        entry(
            "XY_BESSEL",
            RatioXY,
            side(
                "(x/y)^(mu-nu+1) ((K+y^2)/(K+x^2))^((mu-nu+1)/2) I_nu(x)/I_nu(y)",
                region_d(),
                true,
                xy_bessel_lower,
            ),
            side("I_nu(x)/I_nu(y)", region_a(), true, bessel_xy),
            no_equality,
            "none",
        ),
        entry(
            "XY_SQRT",
            RatioXY,
            side(
                "e^(s(x)-s(y)) (x/y)^(mu+1) ((K+y^2)/(K+x^2))^((mu-nu+1)/2) \
                 ((nu+1/2+s(y))/(nu+1/2+s(x)))^(nu+1/2), s(u) = sqrt((nu+1/2)^2+u^2)",
                region_c(),
                true,
                xy_sqrt_lower,
            ),
            side(
                "e^(w(x)-w(y)) (tanh(x/2)/tanh(y/2))^(mu-nu+1) (x/y)^nu \
                 ((mu+3/2+w(y))/(mu+3/2+w(x)))^(mu+3/2), w(u) = sqrt((nu+3/2)^2+u^2)",
                region_k6(),
                true,
                xy_sqrt_upper,
            ),
            no_equality,
            "none",
        ),
        entry(
            "XY_COSH",
            RatioXY,
            side(
                "((K+y^2)/(K+x^2))^((mu-nu+1)/2) (x/y)^(mu+1) cosh(x)/cosh(y)",
                region_c(),
                true,
                xy_cosh_lower,
            ),
            side(
                "(x/y)^nu (tanh(x/2)/tanh(y/2))^(mu-nu+1) (cosh(x)/cosh(y))^(1/(mu+nu+3))",
                region_k6(),
                true,
                xy_cosh_upper,
            ),
            no_equality,
            "none",
        ),
        entry(
            "FUNC_I_BRACKET",
            LommelTTilde,
            side(
                "I_nu (x^2/(K+x^2))^((mu-nu+1)/2)",
                DomainRegion::all(vec![
                    strict!("mu > -2", |p| p.mu + 2.0),
                    strict!("nu > -1", |p| p.nu + 1.0),
                    below_mu_plus_one(),
                ]),
                true,
                func_i_lower,
            ),
            side(
                "C_{mu,nu} I_nu (x^2/(K+x^2))^((mu-nu+1)/2)",
                DomainRegion::all(vec![
                    strict!("mu > -2", |p| p.mu + 2.0),
                    strict!("nu > -1", |p| p.nu + 1.0),
                    below_mu_plus_one(),
                ]),
                true,
                func_i_upper,
            ),
            no_equality,
            "none",
        ),
        entry(
            "FUNC_I_UB",
            LommelTTilde,
            None,
            side("I_nu", region_a(), true, bessel_nu),
            no_equality,
            "none",
        ),
        entry(
            "FUNC_EXP_BRACKET",
            LommelTTilde,
            side(
                "x^(mu+1) e^s / (sqrt(2 pi) (K+x^2)^((mu-nu+1)/2) (nu+1/2+s)^(nu+1/2)), \
                 s = sqrt((nu+1/2)^2+x^2)",
                region_c(),
                true,
                func_exp_lower,
            ),
            side(
                "C'_{mu,nu} x^(mu+1) e^s / ((K+x^2)^((mu-nu+1)/2) (nu+1/2+s)^(nu+1/2))",
                region_c(),
                true,
                func_exp_upper,
            ),
            no_equality,
            "none",
        ),
        entry(
            "FUNC_COSH_BRACKET",
            LommelTTilde,
            side(
                "x^nu tanh(x/2)^(mu-nu+1) cosh(x)^(1/(mu+nu+3)) / (2^nu G(alpha) G(beta))",
                region_k6(),
                true,
                func_cosh_lower,
            ),
            side(
                "x^(mu+1) (K/(K+x^2))^((mu-nu+1)/2) cosh(x) / (2^(mu+1) G(alpha) G(beta))",
                region_c(),
                true,
                func_cosh_upper,
            ),
            no_equality,
            "none",
        ),
        entry(
            "NEAR22",
            StruveL,
            None,
            side(
                "G(nu+1) sqrt(3(2nu+3)) / (sqrt(pi) G(nu+3/2)) x I_nu / sqrt(x^2 + 3(2nu+3))",
                nu_region(strict!("nu > -1", |p| p.nu + 1.0)),
                true,
                near22,
            ),
            no_equality,
            "none",
        ),
        entry(
            "BPSTU",
            StruveL,
            None,
            side(
                "2 G(nu+2) / (sqrt(pi) G(nu+3/2)) I_{nu+1}",
                nu_region(incl!("nu >= -1/2", |p| p.nu + 0.5)),
                true,
                bpstu,
            ),
            |_, p| close(p.nu, -0.5),
            "nu = -1/2",
        ),
        entry(
            "LLOWERR",
            StruveL,
            side(
                "x^(nu+1) e^s / (sqrt(2 pi) sqrt(3(2nu+3)+x^2) (nu+1/2+s)^(nu+1/2))",
                nu_region(incl!("nu >= -1/2", |p| p.nu + 0.5)),
                true,
                llowerr,
            ),
            None,
            no_equality,
            "none",
        ),
        entry(
            "ALT_EXP_LB",
            LommelTTilde,
            side(
                "e^(w-nu-3/2) x^nu tanh(x/2)^(mu-nu+1) ((mu+nu+3)/(mu+3/2+w))^(mu+3/2) \
                 / (2^nu G(alpha) G(beta)), w = sqrt((nu+3/2)^2+x^2)",
                region_k6(),
                true,
                alt_exp_lower,
            ),
            None,
            no_equality,
            "none",
        ),
        entry(
            "COMPLEMENT_COSH_RATIO",
            RatioXY,
            None,
            side(
                "(x/y)^nu (cosh(x)/cosh(y))^(1/(2(nu+1)))",
                DomainRegion::all(vec![
                    strict!("mu > -1", |p| p.mu + 1.0),
                    incl!("nu >= 1/2", |p| p.nu - 0.5),
                    below_mu_plus_one(),
                ]),
                true,
                complement_ratio,
            ),
            no_equality,
            "none",
        ),
        entry(
            "COMPLEMENT_COSH_FUNC",
            LommelTTilde,
            side(
                "x^(mu+1) cosh(x)^(1/(2(nu+1))) / (2^nu G(nu+1) (K+x^2)^((mu-nu+1)/2))",
                DomainRegion::all(vec![
                    strict!("mu > -2", |p| p.mu + 2.0),
                    incl!("nu >= -1/2", |p| p.nu + 0.5),
                    below_mu_plus_one(),
                ]),
                true,
                complement_func,
            ),
            None,
            no_equality,
            "none",
        ),
        entry(
            "AUX_TANHB",
            BesselRatio,
            side(
                "x tanh(x) / (x + (2nu-1) tanh(x))",
                nu_region(incl!("nu >= 1/2", |p| p.nu - 0.5)),
                true,
                aux_tanh_lower,
            ),
            side(
                "tanh(x)",
                nu_region(incl!("nu >= 1/2", |p| p.nu - 0.5)),
                true,
                tanh_x,
            ),
            |_, p| close(p.nu, 0.5),
            "nu = 1/2",
        ),
        entry(
            "AUX_SQRTBB",
            BesselRatio,
            side(
                "x / (nu - 1/2 + sqrt((nu+1/2)^2 + x^2))",
                nu_region(incl!("nu >= 0", |p| p.nu)),
                true,
                aux_sqrt_lower,
            ),
            side(
                "x / (nu - 1/2 + sqrt((nu-1/2)^2 + x^2))",
                nu_region(incl!("nu >= 1/2", |p| p.nu - 0.5)),
                true,
                sqrt_upper,
            ),
            no_equality,
            "none",
        ),
    ]
}
