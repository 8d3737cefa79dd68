//! Truncated small-x and large-x expansions, and decay-order fits for bound gaps.

use std::f64::consts::{LN_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::eval::{EvalContext, OrderPair};
use crate::gamma::{nonpositive_integer, recip_gamma};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ExpansionKind {
    /// t̃ ~ (x/2)^{μ+1}/(Γ(α)Γ(β)) · (1 + x²/K), x → 0
    TSmall,
    /// t̃ ~ e^x/√(2πx) · (1 − (4ν²−1)/(8x) + (4ν²−1)(4ν²−9)/(128x²)), x → ∞
    TLarge,
    /// I_ν ~ (x/2)^ν/Γ(ν+1), x → 0
    ISmall,
    /// Same expression as [`ExpansionKind::TLarge`].
    ILarge,
    /// b ~ ((μ−ν+1)/2)(1 − x²/K), x → 0
    BSmall,
    /// b ~ √π x^{μ+3/2} e^{−x} / (2^{μ+1/2} Γ((μ−ν+1)/2) Γ((μ+ν+3)/2)), x → ∞
    BLarge,
    /// h ~ x/(μ+ν+1) − 2x³/((μ+ν+1)² K), x → 0
    HSmall,
    /// Lower bound of the h bracket with Bessel ratios, x → 0
    LaSmall,
    /// Lower bound of the h bracket with square roots, x → 0
    LbSmall,
    /// M_ν = L_ν − I_ν ~ −(x/2)^{ν−1}/(√π Γ(ν+1/2)), x → ∞
    MLarge,
}

impl ExpansionKind {
    pub const ALL: [ExpansionKind; 10] = [
        ExpansionKind::TSmall,
        ExpansionKind::TLarge,
        ExpansionKind::ISmall,
        ExpansionKind::ILarge,
        ExpansionKind::BSmall,
        ExpansionKind::BLarge,
        ExpansionKind::HSmall,
        ExpansionKind::LaSmall,
        ExpansionKind::LbSmall,
        ExpansionKind::MLarge,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ExpansionKind::TSmall => "T_SMALL",
            ExpansionKind::TLarge => "T_LARGE",
            ExpansionKind::ISmall => "I_SMALL",
            ExpansionKind::ILarge => "I_LARGE",
            ExpansionKind::BSmall => "B_SMALL",
            ExpansionKind::BLarge => "B_LARGE",
            ExpansionKind::HSmall => "H_SMALL",
            ExpansionKind::LaSmall => "LA_SMALL",
            ExpansionKind::LbSmall => "LB_SMALL",
            ExpansionKind::MLarge => "M_LARGE",
        }
    }

    pub fn from_name(s: &str) -> Option<ExpansionKind> {
        ExpansionKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
    }

    pub fn is_large_x(&self) -> bool {
        matches!(
            self,
            ExpansionKind::TLarge
                | ExpansionKind::ILarge
                | ExpansionKind::BLarge
                | ExpansionKind::MLarge
        )
    }

    /// Parameter domain of the expansion, as text.
    pub fn domain_description(&self) -> &'static str {
        match self {
            ExpansionKind::TSmall => "mu > -3, |nu| < mu+3",
            ExpansionKind::TLarge => "(mu-nu+3)/2 and (mu+nu+3)/2 not nonpositive integers",
            ExpansionKind::ISmall => "nu not a negative integer",
            ExpansionKind::ILarge => "any nu",
            ExpansionKind::BSmall | ExpansionKind::BLarge => "mu > -2, |nu+1| < mu+2",
            ExpansionKind::HSmall => "mu > -2, |nu| < mu+3, |nu-1| < mu+2",
            ExpansionKind::LaSmall => "mu > -2, |nu| < mu+3, |nu-1| < mu+2, nu != -1",
            ExpansionKind::LbSmall => "mu > -2, |nu| < mu+3, |nu-1| < mu+2, nu != -1/2",
            ExpansionKind::MLarge => "nu + 1/2 not a nonpositive integer",
        }
    }

    pub fn domain_holds(&self, p: OrderPair) -> bool {
        let (mu, nu) = (p.mu, p.nu);
        let t_small = |mu: f64, nu: f64| mu > -3.0 && nu.abs() < mu + 3.0;
        let h_small = t_small(mu, nu) && t_small(mu - 1.0, nu - 1.0);
        match self {
            ExpansionKind::TSmall => t_small(mu, nu),
            ExpansionKind::TLarge => {
                nonpositive_integer(p.alpha()).is_none() && nonpositive_integer(p.beta()).is_none()
            }
            ExpansionKind::ISmall => nonpositive_integer(nu + 1.0).is_none(),
            ExpansionKind::ILarge => true,
            ExpansionKind::BSmall | ExpansionKind::BLarge => p.b_domain(),
            ExpansionKind::HSmall => h_small,
            ExpansionKind::LaSmall => h_small && (nu + 1.0).abs() > 1e-12,
            ExpansionKind::LbSmall => h_small && (nu + 0.5).abs() > 1e-12,
            ExpansionKind::MLarge => nonpositive_integer(nu + 0.5).is_none(),
        }
    }
}

/// e^x/√(2πx)·(1 − (4ν²−1)/(8x) + (4ν²−1)(4ν²−9)/(128x²)) times e^{−s}.
fn hankel_type(nu: f64, x: f64, s: f64) -> f64 {
    let m = 4.0 * nu * nu;
    let corr = 1.0 - (m - 1.0) / (8.0 * x) + (m - 1.0) * (m - 9.0) / (128.0 * x * x);
    (x - s).exp() / (2.0 * PI * x).sqrt() * corr
}

/// The truncated expansion of `kind` at (μ, ν, x), exactly as printed.
///
/// Large-x kinds overflow to ∞ past x ≈ 709; use [`asymptotic_scaled`] there.
pub fn asymptotic(kind: ExpansionKind, p: OrderPair, x: f64) -> Result<f64> {
    asymptotic_scaled(kind, p, x, 0.0)
}

/// [`asymptotic`] times e^{−log_scale}; `log_scale` only affects the exponentially growing kinds.
pub fn asymptotic_scaled(kind: ExpansionKind, p: OrderPair, x: f64, log_scale: f64) -> Result<f64> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(domain(format!("x must be positive and finite, got {x}")));
    }
    if !kind.domain_holds(p) {
        return Err(domain(format!(
            "{} needs {}, got (mu, nu) = ({}, {})",
            kind.name(),
            kind.domain_description(),
            p.mu,
            p.nu
        )));
    }
    let (mu, nu) = (p.mu, p.nu);
    let k = p.k_const();
    let s = mu + nu + 1.0;
    let x2 = x * x;
    let v = match kind {
        ExpansionKind::TSmall => {
            (0.5 * x).powf(mu + 1.0)
                * recip_gamma(p.alpha())
                * recip_gamma(p.beta())
                * (1.0 + x2 / k)
        }
        ExpansionKind::TLarge | ExpansionKind::ILarge => hankel_type(nu, x, log_scale),
        ExpansionKind::ISmall => (0.5 * x).powf(nu) * recip_gamma(nu + 1.0),
        ExpansionKind::BSmall => 0.5 * (mu - nu + 1.0) * (1.0 - x2 / k),
        ExpansionKind::BLarge => {
            let ln = 0.5 * PI.ln() + (mu + 1.5) * x.ln() - x - (mu + 0.5) * LN_2;
            ln.exp() * recip_gamma(0.5 * (mu - nu + 1.0)) * recip_gamma(p.beta())
        }
        ExpansionKind::HSmall => x / s - 2.0 * x * x2 / (s * s * k),
        ExpansionKind::LaSmall => {
            let d = mu - nu;
            x / s - (d * d + 4.0 * mu + 7.0) * x * x2 / (2.0 * (nu + 1.0) * s * s * k)
        }
        ExpansionKind::LbSmall => {
            let d = mu - nu;
            x / s - (d * d + 5.0 * mu - nu + 8.0) * x * x2 / ((2.0 * nu + 1.0) * s * s * k)
        }
        ExpansionKind::MLarge => -(0.5 * x).powf(nu - 1.0) * recip_gamma(nu + 0.5) / PI.sqrt(),
    };
    Ok(v)
}

/// Gap between the two sides of an h bracket, upper/lower − 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GapKind {
    /// (I_{ν−1}/I_ν + 2b/x)^{−1} ≤ h ≤ I_ν/I_{ν−1}; gap = (2b/x) I_ν/I_{ν−1}
    BesselBracket,
    /// Square-root bracket; gap ~ ν/x²
    SqrtBracket,
}

impl GapKind {
    pub fn name(&self) -> &'static str {
        match self {
            GapKind::BesselBracket => "bessel_bracket",
            GapKind::SqrtBracket => "sqrt_bracket",
        }
    }
}

/// upper/lower − 1 for the chosen bracket, formed without subtracting nearby numbers.
pub fn bracket_gap(ctx: &EvalContext, gap: GapKind, p: OrderPair, x: f64) -> Result<f64> {
    let b = ctx.ratio_b(p, x)?;
    let nu = p.nu;
    Ok(match gap {
        GapKind::BesselBracket => 2.0 * b / x * ctx.ratio_r(nu, x)?,
        GapKind::SqrtBracket => {
            let sp = (nu + 0.5).hypot(x);
            let sm = (nu - 0.5).hypot(x);
            // (ν−1/2+2b+s₊)/(ν−1/2+s₋) − 1 with s₊ − s₋ = 2ν/(s₊+s₋)
            (2.0 * b + 2.0 * nu / (sp + sm)) / (nu - 0.5 + sm)
        }
    })
}

/// Least-squares fit of log(gap) against log(x).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrderFit {
    pub gap: GapKind,
    pub x_grid: Vec<f64>,
    pub values: Vec<f64>,
    /// Fitted exponent: gap ≈ constant·x^order.
    pub order: f64,
    pub constant: f64,
    /// Slopes between consecutive grid points; these drift without bound for exponential decay.
    pub local_orders: Vec<f64>,
}

pub fn order_check(
    ctx: &EvalContext,
    gap: GapKind,
    p: OrderPair,
    x_grid: &[f64],
) -> Result<OrderFit> {
    if x_grid.len() < 4 {
        return Err(domain(format!(
            "order check needs at least 4 points, got {}",
            x_grid.len()
        )));
    }
    if x_grid.windows(2).any(|w| !(w[1] > w[0])) || !(x_grid[0] > 0.0) {
        return Err(domain("x grid must be positive and strictly increasing"));
    }
    let values = x_grid
        .iter()
        .map(|&x| bracket_gap(ctx, gap, p, x))
        .collect::<Result<Vec<_>>>()?;
    if values.iter().any(|v| !(*v > 0.0)) {
        return Err(domain(format!(
            "gap is not positive on the grid: {values:?}"
        )));
    }
    let lx: Vec<f64> = x_grid.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = values.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    let order = sxy / sxx;
    let constant = (my - order * mx).exp();
    let local_orders = lx
        .windows(2)
        .zip(ly.windows(2))
        .map(|(a, b)| (b[1] - b[0]) / (a[1] - a[0]))
        .collect();
    Ok(OrderFit {
        gap,
        x_grid: x_grid.to_vec(),
        values,
        order,
        constant,
        local_orders,
    })
}
