//! Evaluation of I_ν, L_ν, t̃_{μ,ν} and the quantities built from them.
//!
//! Everything is a series summed by [`crate::series`]. Ratios are formed
//! from the exponent-tracked sums, so exponential factors cancel exactly
//! no matter how large x is.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::gamma::nonpositive_integer;
use crate::series::{
    hyp_series, pow_scaled, recip_gamma_scaled, require_converged, sum_series, to_evaluation,
    EvalFlags, EvalOptions, Evaluation, HypTerms, Scaled, SeriesSum,
};

/// The order pair (μ, ν) of t̃_{μ,ν}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrderPair {
    pub mu: f64,
    pub nu: f64,
}

impl OrderPair {
    pub fn new(mu: f64, nu: f64) -> Result<OrderPair> {
        if !mu.is_finite() || !nu.is_finite() {
            return Err(domain(format!(
                "orders must be finite, got mu={mu}, nu={nu}"
            )));
        }
        Ok(OrderPair { mu, nu })
    }

    /// μ−ν > −3 and μ+ν > −3: every series coefficient is positive.
    pub fn series_positive(&self) -> bool {
        self.mu - self.nu > -3.0 && self.mu + self.nu > -3.0
    }

    /// μ−ν ≥ −3 and μ+ν ≥ −3: t̃ is still positive for x > 0.
    pub fn positive_closure(&self) -> bool {
        self.mu - self.nu >= -3.0 && self.mu + self.nu >= -3.0
    }

    /// μ > −2 and |ν+1| < μ+2, where b_{μ,ν} is defined through its reciprocal series.
    pub fn b_domain(&self) -> bool {
        self.mu > -2.0 && (self.nu + 1.0).abs() < self.mu + 2.0
    }

    /// a_{μ,ν} vanishes identically: μ−ν ∈ {−1,−3,…} or μ+ν ∈ {−3,−5,…}.
    pub fn coeff_a_vanishes(&self) -> bool {
        nonpositive_integer(0.5 * (self.mu - self.nu + 1.0)).is_some()
            || nonpositive_integer(0.5 * (self.mu + self.nu + 3.0)).is_some()
    }

    /// (μ+d, ν+d).
    pub fn shifted(&self, d: f64) -> OrderPair {
        OrderPair {
            mu: self.mu + d,
            nu: self.nu + d,
        }
    }

    /// (μ+3)² − ν², the constant that keeps appearing in the bounds.
    pub fn k_const(&self) -> f64 {
        (self.mu + 3.0).powi(2) - self.nu * self.nu
    }

    pub(crate) fn alpha(&self) -> f64 {
        0.5 * (self.mu - self.nu + 3.0)
    }

    pub(crate) fn beta(&self) -> f64 {
        0.5 * (self.mu + self.nu + 3.0)
    }
}

/// Function whose condition number x f′/f is requested.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConditionKind {
    LommelTTilde,
    BesselI,
}

/// Deliberate faults, used to check that the verification suite notices them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Fault {
    NegateCoeffA,
}

/// Evaluation options plus an optional injected fault.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct EvalContext {
    pub opts: EvalOptions,
    pub fault: Option<Fault>,
}

/// A sum plus its diagnostics, before presentation.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Raw {
    pub value: Scaled,
    pub terms: usize,
    pub tail: f64,
    pub flags: EvalFlags,
}

impl Raw {
    fn from_sum(s: SeriesSum, flags: EvalFlags) -> Raw {
        Raw {
            value: s.sum,
            terms: s.terms_used,
            tail: s.tail_bound,
            flags,
        }
    }

    fn present(&self, x: f64, opts: &EvalOptions) -> Evaluation {
        let s = SeriesSum {
            sum: self.value,
            terms_used: self.terms,
            tail_bound: self.tail,
            converged: true,
        };
        to_evaluation(&s, x, opts, self.flags)
    }
}

fn check_x(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("x must be positive and finite, got {x}")))
    }
}

fn merge_flags(a: EvalFlags, b: EvalFlags) -> EvalFlags {
    EvalFlags {
        gamma_pole_skip: a.gamma_pole_skip || b.gamma_pole_skip,
        sign_unguaranteed: a.sign_unguaranteed || b.sign_unguaranteed,
        cancellation: a.cancellation || b.cancellation,
        forced_scaling: a.forced_scaling || b.forced_scaling,
    }
}

/// Relative error bound of `Σ c_i v_i` given per-term relative bounds, relative to the result.
fn combined_tail(parts: &[(Scaled, f64)], result: Scaled) -> f64 {
    if result.is_zero() {
        return parts.iter().map(|p| p.1).fold(0.0, f64::max);
    }
    parts
        .iter()
        .map(|(v, t)| {
            if v.is_zero() {
                0.0
            } else {
                t * v.abs().ratio(&result.abs())
            }
        })
        .sum()
}

impl EvalContext {
    pub fn new(opts: EvalOptions) -> EvalContext {
        EvalContext { opts, fault: None }
    }

    pub fn with_fault(mut self, fault: Fault) -> EvalContext {
        self.fault = Some(fault);
        self
    }

    pub(crate) fn bessel_i_raw(&self, nu: f64, x: f64) -> Result<Raw> {
        self.opts.validate()?;
        check_x(x)?;
        if !nu.is_finite() {
            return Err(domain("order must be finite"));
        }
        let (s, skipped) = hyp_series(
            HypTerms {
                p: nu,
                alpha: 1.0,
                beta: nu + 1.0,
            },
            x,
            &self.opts,
        );
        let s = require_converged(s)?;
        let flags = EvalFlags {
            gamma_pole_skip: skipped,
            sign_unguaranteed: nu < -1.0 && nonpositive_integer(nu).is_none(),
            ..EvalFlags::default()
        };
        Ok(Raw::from_sum(s, flags))
    }

    pub(crate) fn t_tilde_raw(&self, p: OrderPair, x: f64) -> Result<Raw> {
        self.opts.validate()?;
        check_x(x)?;
        let (s, skipped) = hyp_series(
            HypTerms {
                p: p.mu + 1.0,
                alpha: p.alpha(),
                beta: p.beta(),
            },
            x,
            &self.opts,
        );
        let s = require_converged(s)?;
        let flags = EvalFlags {
            gamma_pole_skip: skipped,
            sign_unguaranteed: !p.positive_closure(),
            ..EvalFlags::default()
        };
        Ok(Raw::from_sum(s, flags))
    }

    pub fn bessel_i(&self, nu: f64, x: f64) -> Result<Evaluation> {
        Ok(self.bessel_i_raw(nu, x)?.present(x, &self.opts))
    }

    pub fn lommel_t_tilde(&self, p: OrderPair, x: f64) -> Result<Evaluation> {
        Ok(self.t_tilde_raw(p, x)?.present(x, &self.opts))
    }

    pub fn struve_l(&self, nu: f64, x: f64) -> Result<Evaluation> {
        if !(nu >= -1.5) {
            return Err(domain(format!("struve_l needs nu >= -3/2, got {nu}")));
        }
        self.lommel_t_tilde(OrderPair::new(nu, nu)?, x)
    }

    /// 2^{μ−1}Γ((μ−ν+1)/2)Γ((μ+ν+1)/2), the factor between t and t̃.
    pub(crate) fn normalization(p: OrderPair) -> Result<Scaled> {
        let ga = 0.5 * (p.mu - p.nu + 1.0);
        let gb = 0.5 * (p.mu + p.nu + 1.0);
        for g in [ga, gb] {
            if nonpositive_integer(g).is_some() {
                return Err(Error::NormalizationPole(format!(
                    "gamma argument {g} at (mu, nu) = ({}, {})",
                    p.mu, p.nu
                )));
            }
        }
        Ok(pow_scaled(2.0, p.mu - 1.0)
            .div(recip_gamma_scaled(ga))
            .div(recip_gamma_scaled(gb)))
    }

    pub(crate) fn lommel_t_raw(&self, p: OrderPair, x: f64) -> Result<Raw> {
        let norm = Self::normalization(p)?;
        let mut r = self.t_tilde_raw(p, x)?;
        r.value = r.value.mul(norm);
        Ok(r)
    }

    pub fn lommel_t(&self, p: OrderPair, x: f64) -> Result<Evaluation> {
        Ok(self.lommel_t_raw(p, x)?.present(x, &self.opts))
    }

    pub(crate) fn lommel_big_t_tilde_raw(&self, p: OrderPair, x: f64) -> Result<Raw> {
        let t = self.t_tilde_raw(p, x)?;
        let i = self.bessel_i_raw(p.nu, x)?;
        let d = t.value.sub(i.value);
        let big = if t.value.abs().ln_abs() > i.value.abs().ln_abs() {
            t.value
        } else {
            i.value
        };
        let mut flags = merge_flags(t.flags, i.flags);
        flags.sign_unguaranteed = true;
        if d.is_zero() || d.abs().ratio(&big.abs()) < 1e-6 {
            flags.cancellation = true;
        }
        let tail = combined_tail(&[(t.value, t.tail), (i.value, i.tail)], d);
        Ok(Raw {
            value: d,
            terms: t.terms + i.terms,
            tail,
            flags,
        })
    }

    #[allow(non_snake_case)]
    pub fn lommel_T_tilde(&self, p: OrderPair, x: f64) -> Result<Evaluation> {
        Ok(self.lommel_big_t_tilde_raw(p, x)?.present(x, &self.opts))
    }

    pub(crate) fn coeff_a_scaled(&self, p: OrderPair, x: f64) -> Scaled {
        if p.coeff_a_vanishes() {
            return Scaled::ZERO;
        }
        let v = pow_scaled(0.5 * x, p.mu)
            .mul(recip_gamma_scaled(0.5 * (p.mu - p.nu + 1.0)))
            .mul(recip_gamma_scaled(0.5 * (p.mu + p.nu + 3.0)));
        match self.fault {
            Some(Fault::NegateCoeffA) => v.scale(-1.0),
            None => v,
        }
    }

    pub fn coeff_a(&self, p: OrderPair, x: f64) -> f64 {
        self.coeff_a_scaled(p, x).to_f64()
    }

    /// b_{μ,ν}(x) from the reciprocal series, which has positive terms on `b_domain`.
    pub fn ratio_b(&self, p: OrderPair, x: f64) -> Result<f64> {
        self.opts.validate()?;
        check_x(x)?;
        if !p.b_domain() {
            return Err(domain(format!(
                "b needs mu > -2 and |nu+1| < mu+2, got (mu, nu) = ({}, {})",
                p.mu, p.nu
            )));
        }
        let (alpha, beta) = (p.alpha(), p.beta());
        let z = 0.25 * x * x;
        let s = sum_series(
            Scaled::new(1.0),
            0,
            |k| {
                let k = k as f64;
                z / ((k + alpha) * (k + beta))
            },
            |k| {
                let k = k as f64;
                Some(z / ((k + alpha) * (k + beta)))
            },
            &self.opts,
        );
        let s = require_converged(s)?;
        Ok(Scaled::new(0.5 * (p.mu - p.nu + 1.0)).ratio(&s.sum))
    }

    /// b_{μ,ν}(x) straight from its definition x·a/(2t̃).
    pub fn ratio_b_direct(&self, p: OrderPair, x: f64) -> Result<f64> {
        let t = self.t_tilde_raw(p, x)?;
        Ok(self.coeff_a_scaled(p, x).scale(0.5 * x).ratio(&t.value))
    }

    pub(crate) fn derivative_raw(&self, p: OrderPair, x: f64) -> Result<Raw> {
        let lo = self.t_tilde_raw(p.shifted(-1.0), x)?;
        let hi = self.t_tilde_raw(p.shifted(1.0), x)?;
        let a = self.coeff_a_scaled(p, x);
        let d = lo.value.add(hi.value).add(a).scale(0.5);
        let tail = combined_tail(&[(lo.value, lo.tail), (hi.value, hi.tail)], d);
        Ok(Raw {
            value: d,
            terms: lo.terms + hi.terms,
            tail,
            flags: merge_flags(lo.flags, hi.flags),
        })
    }

    /// t̃′_{μ,ν}(x) = (t̃_{μ−1,ν−1} + t̃_{μ+1,ν+1} + a_{μ,ν})/2.
    pub fn t_tilde_derivative(&self, p: OrderPair, x: f64) -> Result<Evaluation> {
        Ok(self.derivative_raw(p, x)?.present(x, &self.opts))
    }

    /// t̃′ by termwise differentiation of the series.
    pub(crate) fn derivative_series_raw(&self, p: OrderPair, x: f64) -> Result<Raw> {
        self.opts.validate()?;
        check_x(x)?;
        let alpha = crate::gamma::snap_pole(p.alpha());
        let beta = crate::gamma::snap_pole(p.beta());
        let mut k0 = 0usize;
        for g in [alpha, beta] {
            if let Some(n) = nonpositive_integer(g) {
                k0 = k0.max((-n) as usize + 1);
            }
        }
        let mu = p.mu;
        if let Some(n) = nonpositive_integer(0.5 * (mu + 1.0)) {
            // The coefficient (μ+2k+1)/2 vanishes at k = −n.
            let kz = (-n) as usize;
            if kz == k0 {
                k0 += 1;
            } else if kz > k0 {
                return Err(domain(format!(
                    "termwise derivative has a vanishing inner coefficient at mu = {mu}"
                )));
            }
        }
        let kf = k0 as f64;
        let half = 0.5 * x;
        let z = half * half;
        let first = pow_scaled(half, mu + 2.0 * kf)
            .scale(0.5 * (mu + 2.0 * kf + 1.0))
            .mul(recip_gamma_scaled(kf + alpha))
            .mul(recip_gamma_scaled(kf + beta));
        let ratio = |k: usize| {
            let k = k as f64;
            z * (mu + 2.0 * k + 3.0) / ((mu + 2.0 * k + 1.0) * (k + alpha) * (k + beta))
        };
        let s = sum_series(
            first,
            k0,
            ratio,
            |k| {
                let kf = k as f64;
                (kf + alpha > 0.0 && kf + beta > 0.0 && mu + 2.0 * kf + 1.0 > 0.0).then(|| ratio(k))
            },
            &self.opts,
        );
        let s = require_converged(s)?;
        Ok(Raw::from_sum(
            s,
            EvalFlags {
                gamma_pole_skip: k0 > 0,
                ..EvalFlags::default()
            },
        ))
    }

    /// t_{μ,ν} from x^{μ+1}/((μ−ν+1)(μ+ν+1)) ₁F₂(1; α, β; x²/4), without gamma factors.
    pub(crate) fn lommel_t_hypergeometric_raw(&self, p: OrderPair, x: f64) -> Result<Raw> {
        self.opts.validate()?;
        check_x(x)?;
        let (alpha, beta) = (p.alpha(), p.beta());
        let d = (p.mu - p.nu + 1.0) * (p.mu + p.nu + 1.0);
        if nonpositive_integer(alpha).is_some() || nonpositive_integer(beta).is_some() || d == 0.0 {
            return Err(domain(format!(
                "hypergeometric form undefined at (mu, nu) = ({}, {})",
                p.mu, p.nu
            )));
        }
        let z = 0.25 * x * x;
        let ratio = |k: usize| {
            let k = k as f64;
            z / ((k + alpha) * (k + beta))
        };
        let s = sum_series(
            pow_scaled(x, p.mu + 1.0).scale(1.0 / d),
            0,
            ratio,
            |k| {
                let kf = k as f64;
                (kf + alpha > 0.0 && kf + beta > 0.0).then(|| ratio(k))
            },
            &self.opts,
        );
        Ok(Raw::from_sum(require_converged(s)?, EvalFlags::default()))
    }

    /// x f′(x)/f(x), cross-checked between the two recurrence forms.
    pub fn condition_number(&self, kind: ConditionKind, p: OrderPair, x: f64) -> Result<f64> {
        let nu = p.nu;
        let (down, up, extra) = match kind {
            ConditionKind::LommelTTilde => {
                if !p.positive_closure() {
                    return Err(domain(format!(
                        "condition number of t~ needs mu-nu >= -3 and mu+nu >= -3, got ({}, {})",
                        p.mu, nu
                    )));
                }
                let t = self.t_tilde_raw(p, x)?.value;
                let lo = self.t_tilde_raw(p.shifted(-1.0), x)?.value;
                let hi = self.t_tilde_raw(p.shifted(1.0), x)?.value;
                let a = self.coeff_a_scaled(p, x);
                (x * lo.ratio(&t), x * hi.ratio(&t), x * a.ratio(&t))
            }
            ConditionKind::BesselI => {
                if !(nu >= -1.0) {
                    return Err(domain(format!(
                        "condition number of I needs nu >= -1, got {nu}"
                    )));
                }
                let i = self.bessel_i_raw(nu, x)?.value;
                let lo = self.bessel_i_raw(nu - 1.0, x)?.value;
                let hi = self.bessel_i_raw(nu + 1.0, x)?.value;
                (x * lo.ratio(&i), x * hi.ratio(&i), 0.0)
            }
        };
        let c60 = down - nu;
        let c61 = up + nu + extra;
        let scale = down.abs() + up.abs() + extra.abs() + nu.abs();
        if (c60 - c61).abs() > 1e-12 * scale {
            return Err(Error::CrossCheck {
                what: "condition number",
                first: c60,
                second: c61,
            });
        }
        Ok(0.5 * (c60 + c61))
    }

    /// h_{μ,ν}(x) = t̃_{μ,ν}(x)/t̃_{μ−1,ν−1}(x).
    pub fn ratio_h(&self, p: OrderPair, x: f64) -> Result<f64> {
        let num = self.t_tilde_raw(p, x)?.value;
        let den = self.t_tilde_raw(p.shifted(-1.0), x)?.value;
        if !(den.signum() > 0.0) {
            return Err(domain(format!(
                "t~_(mu-1,nu-1) is not positive at (mu, nu, x) = ({}, {}, {x})",
                p.mu, p.nu
            )));
        }
        Ok(num.ratio(&den))
    }

    /// r_ν(x) = I_ν(x)/I_{ν−1}(x).
    pub fn ratio_r(&self, nu: f64, x: f64) -> Result<f64> {
        let num = self.bessel_i_raw(nu, x)?.value;
        let den = self.bessel_i_raw(nu - 1.0, x)?.value;
        if !(den.signum() > 0.0) {
            return Err(domain(format!(
                "I_(nu-1) is not positive at nu = {nu}, x = {x}"
            )));
        }
        Ok(num.ratio(&den))
    }

    /// I_ν t̃_{μ−1,ν−1} − I_{ν−1} t̃_{μ,ν}, summed as a single series free of cancellation.
    ///
    /// When 2k+μ+ν+1 vanishes for some k the prefactor vanishes too and the limit is a single term.
    pub(crate) fn cross_product_raw(&self, p: OrderPair, x: f64) -> Result<Raw> {
        self.opts.validate()?;
        check_x(x)?;
        let (mu, nu) = (p.mu, p.nu);
        let ga = 0.5 * (mu - nu + 1.0);
        let c = 0.5 * (mu + nu + 1.0);
        if let Some(n) = nonpositive_integer(c) {
            // Only the k = −c term survives the limit: (−1)^n (2/x) / (Γ(A) Γ(n+ν+1)).
            let n = -n;
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let value = recip_gamma_scaled(ga)
                .mul(recip_gamma_scaled(n as f64 + nu + 1.0))
                .scale(sign * 2.0 / x);
            return Ok(Raw {
                value,
                terms: 1,
                tail: 0.0,
                flags: EvalFlags::default(),
            });
        }
        let pref = recip_gamma_scaled(ga).mul(recip_gamma_scaled(c)).scale(2.0);
        if pref.is_zero() {
            return Ok(Raw {
                value: Scaled::ZERO,
                terms: 0,
                tail: 0.0,
                flags: EvalFlags::default(),
            });
        }
        let nu1 = crate::gamma::snap_pole(nu + 1.0);
        let k0 = nonpositive_integer(nu1).map_or(0, |n| (-n) as usize + 1);
        let kf = k0 as f64;
        let half = 0.5 * x;
        let z = half * half;
        let first = pow_scaled(half, 2.0 * kf + mu + nu)
            .scale(1.0 / (2.0 * (kf + c)))
            .mul(recip_gamma_scaled(kf + 1.0))
            .mul(recip_gamma_scaled(kf + nu1));
        let s = sum_series(
            first,
            k0,
            |k| {
                let k = k as f64;
                z * (k + c) / ((k + c + 1.0) * (k + 1.0) * (k + nu1))
            },
            |k| {
                let k = k as f64;
                (k + c > 0.0 && k + nu1 > 0.0).then(|| z / ((k + 1.0) * (k + nu1)))
            },
            &self.opts,
        );
        let s = require_converged(s)?;
        let flags = EvalFlags {
            gamma_pole_skip: k0 > 0,
            ..EvalFlags::default()
        };
        let mut r = Raw::from_sum(s, flags);
        r.value = r.value.mul(pref);
        Ok(r)
    }

    /// The same cross product as a literal difference of products.
    pub(crate) fn cross_product_direct_raw(&self, p: OrderPair, x: f64) -> Result<Raw> {
        let i0 = self.bessel_i_raw(p.nu, x)?;
        let i1 = self.bessel_i_raw(p.nu - 1.0, x)?;
        let t0 = self.t_tilde_raw(p.shifted(-1.0), x)?;
        let t1 = self.t_tilde_raw(p, x)?;
        let a = i0.value.mul(t0.value);
        let b = i1.value.mul(t1.value);
        let d = a.sub(b);
        let mut flags = merge_flags(
            merge_flags(i0.flags, i1.flags),
            merge_flags(t0.flags, t1.flags),
        );
        if d.is_zero() || d.abs().ratio(&a.abs().add(b.abs())) < 1e-6 {
            flags.cancellation = true;
        }
        let tail = combined_tail(&[(a, i0.tail + t0.tail), (b, i1.tail + t1.tail)], d);
        Ok(Raw {
            value: d,
            terms: i0.terms + i1.terms + t0.terms + t1.terms,
            tail,
            flags,
        })
    }

    /// The cross product formed as a difference of products; loses digits where they cancel.
    pub fn cross_product_direct(&self, p: OrderPair, x: f64) -> Result<Evaluation> {
        Ok(self.cross_product_direct_raw(p, x)?.present(x, &self.opts))
    }

    /// I_ν(x) t̃_{μ−1,ν−1}(x) − I_{ν−1}(x) t̃_{μ,ν}(x).
    pub fn cross_product(&self, p: OrderPair, x: f64) -> Result<Evaluation> {
        Ok(self.cross_product_raw(p, x)?.present(x, &self.opts))
    }
}

macro_rules! free_fn {
    ($(#[$m:meta])* $name:ident($($arg:ident: $ty:ty),*) -> $ret:ty) => {
        $(#[$m])*
        pub fn $name($($arg: $ty,)* opts: &EvalOptions) -> $ret {
            EvalContext::new(*opts).$name($($arg),*)
        }
    };
}

free_fn!(
    /// I_ν(x).
    bessel_i(nu: f64, x: f64) -> Result<Evaluation>
);
free_fn!(
    /// t̃_{μ,ν}(x).
    lommel_t_tilde(p: OrderPair, x: f64) -> Result<Evaluation>
);
free_fn!(
    /// L_ν(x) = t̃_{ν,ν}(x), for ν ≥ −3/2.
    struve_l(nu: f64, x: f64) -> Result<Evaluation>
);
free_fn!(
    /// t_{μ,ν}(x) = 2^{μ−1}Γ((μ−ν+1)/2)Γ((μ+ν+1)/2)·t̃_{μ,ν}(x).
    lommel_t(p: OrderPair, x: f64) -> Result<Evaluation>
);
free_fn!(
    /// T̃_{μ,ν}(x) = t̃_{μ,ν}(x) − I_ν(x).
    #[allow(non_snake_case)]
    lommel_T_tilde(p: OrderPair, x: f64) -> Result<Evaluation>
);
free_fn!(ratio_b(p: OrderPair, x: f64) -> Result<f64>);
free_fn!(t_tilde_derivative(p: OrderPair, x: f64) -> Result<Evaluation>);
free_fn!(condition_number(kind: ConditionKind, p: OrderPair, x: f64) -> Result<f64>);
free_fn!(ratio_h(p: OrderPair, x: f64) -> Result<f64>);
free_fn!(ratio_r(nu: f64, x: f64) -> Result<f64>);
free_fn!(cross_product(p: OrderPair, x: f64) -> Result<Evaluation>);

/// a_{μ,ν}(x) = (x/2)^μ / (Γ((μ−ν+1)/2)Γ((μ+ν+3)/2)); exactly zero on the exceptional lines.
pub fn coeff_a(p: OrderPair, x: f64) -> f64 {
    EvalContext::default().coeff_a(p, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn ctx() -> EvalContext {
        EvalContext::default()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a / b - 1.0).abs()
    }

    fn op(mu: f64, nu: f64) -> OrderPair {
        OrderPair::new(mu, nu).unwrap()
    }

    #[test]
    fn half_integer_closed_forms() {
        let x = 1.0f64;
        let i = ctx().bessel_i(0.5, x).unwrap();
        assert!(rel(i.value, (2.0 / PI).sqrt() * x.sinh()) < 2e-15);
        let l = ctx().struve_l(0.5, x).unwrap();
        assert!(rel(l.value, (2.0 / PI).sqrt() * (x.cosh() - 1.0)) < 2e-15);
        for &x in &[0.3, 2.0, 17.0, 45.0] {
            let i = ctx().bessel_i(-0.5, x).unwrap();
            assert!(
                rel(i.value, (2.0 / (PI * x)).sqrt() * x.cosh()) < 4e-15,
                "x = {x}"
            );
        }
    }

    #[test]
    fn reductions() {
        for &(nu, x) in &[(0.0, 2.0), (1.3, 2.0), (-0.4, 0.7), (6.0, 33.0)] {
            let i = ctx().bessel_i(nu, x).unwrap().value;
            let t1 = ctx().lommel_t_tilde(op(nu - 1.0, nu), x).unwrap().value;
            let t3 = ctx().lommel_t_tilde(op(nu - 3.0, nu), x).unwrap().value;
            assert!(rel(t1, i) <= 2e-15, "nu = {nu}");
            assert!(rel(t3, i) <= 4e-15, "nu = {nu}: {t3} vs {i}");
        }
        let l = ctx().struve_l(0.0, 1.0).unwrap().value;
        let t = ctx().lommel_t_tilde(op(0.0, 0.0), 1.0).unwrap().value;
        assert_eq!(l, t);
    }

    #[test]
    fn negative_integer_order() {
        for &x in &[0.5, 3.0, 20.0] {
            let a = ctx().bessel_i(-2.0, x).unwrap();
            let b = ctx().bessel_i(2.0, x).unwrap();
            assert!(a.flags.gamma_pole_skip);
            assert!(rel(a.value, b.value) < 1e-15);
        }
    }

    #[test]
    fn coeff_a_values() {
        assert_eq!(coeff_a(op(0.0, 1.0), 3.0), 0.0);
        assert_eq!(coeff_a(op(-2.0, -1.0), 3.0), 0.0);
        assert_eq!(coeff_a(op(-1.0, -2.0), 3.0), 0.0);
        let g32 = 0.5 * PI.sqrt();
        let g52 = 1.5 * g32;
        assert!(rel(coeff_a(op(2.0, 0.0), 2.0), 1.0 / (g32 * g52)) < 1e-15);
    }

    #[test]
    fn b_limits_and_definition() {
        let opts = EvalOptions::default();
        let b = ratio_b(op(2.0, 0.0), 1e-9, &opts).unwrap();
        assert!((b - 1.5).abs() < 1e-12);
        for &x in &[0.1, 1.0, 4.0, 30.0] {
            let b = ratio_b(op(-0.5, -0.5), x, &opts).unwrap();
            assert!(rel(b, 0.5 * x / x.sinh()) < 1e-14, "x = {x}");
        }
        for &(mu, nu, x) in &[(2.0, 0.0, 5.0), (0.3, -1.1, 2.0), (7.0, 3.0, 12.0)] {
            let p = op(mu, nu);
            let a = ctx().ratio_b(p, x).unwrap();
            let d = ctx().ratio_b_direct(p, x).unwrap();
            assert!(rel(a, d) < 1e-13);
        }
        assert!(ratio_b(op(-2.5, 0.0), 1.0, &opts).is_err());
    }

    #[test]
    fn b_at_large_x_stays_finite() {
        let b = ratio_b(op(1.0, 0.5), 700.0, &EvalOptions::default()).unwrap();
        assert!(b > 0.0 && b < 1e-280);
        assert_eq!(
            ratio_b(op(1.0, 0.5), 2000.0, &EvalOptions::default()).unwrap(),
            0.0
        );
    }

    #[test]
    fn scaled_path() {
        let opts = EvalOptions::default();
        for &x in &[30.0, 45.0, 60.0] {
            let plain = bessel_i(1.0, x, &opts.with_scaling_threshold(1e3)).unwrap();
            let scaled = bessel_i(1.0, x, &opts.with_scaling_threshold(10.0)).unwrap();
            assert_eq!(plain.log_scale, 0.0);
            assert_eq!(scaled.log_scale, x);
            assert!(rel(scaled.unscaled(), plain.value) < 1e-13);
        }
        let big = lommel_t_tilde(op(2.0, 1.0), 800.0, &opts).unwrap();
        assert!(big.value.is_finite() && big.value > 0.0);
        let near = big.value * (2.0 * PI * 800.0).sqrt();
        assert!((near - 1.0).abs() < 1e-2);
    }

    #[test]
    fn forced_scaling_below_threshold() {
        let opts = EvalOptions::default().with_scaling_threshold(5000.0);
        let e = bessel_i(0.0, 800.0, &opts).unwrap();
        assert!(e.flags.forced_scaling);
        assert_eq!(e.log_scale, 800.0);
    }

    #[test]
    fn derivative_and_condition() {
        let x = 1.0f64;
        let c = condition_number(
            ConditionKind::BesselI,
            op(0.0, 0.5),
            x,
            &EvalOptions::default(),
        )
        .unwrap();
        assert!(rel(c, x / x.tanh() - 0.5) < 1e-14);
        // I_ν derivative identity at μ = ν − 1
        let p = op(0.7, 1.7);
        let d = ctx().t_tilde_derivative(p, 2.0).unwrap().value;
        let lo = ctx().bessel_i(0.7, 2.0).unwrap().value;
        let hi = ctx().bessel_i(2.7, 2.0).unwrap().value;
        assert!(rel(d, 0.5 * (lo + hi)) < 1e-15);
        let small = condition_number(
            ConditionKind::LommelTTilde,
            op(2.0, 1.0),
            1e-5,
            &EvalOptions::default(),
        )
        .unwrap();
        assert!((small - 3.0).abs() < 1e-8);
    }

    #[test]
    fn lommel_t_normalization() {
        let x = 1.0f64;
        let p = op(0.5, 0.5);
        let t = ctx().lommel_t(p, x).unwrap().value;
        let l = (2.0 / PI).sqrt() * (x.cosh() - 1.0);
        // 2^{μ−1}Γ((μ−ν+1)/2)Γ((μ+ν+1)/2) = 2^{-1/2}Γ(1/2)Γ(1)
        let norm = 2f64.powf(-0.5) * PI.sqrt();
        assert!(rel(t, norm * l) < 1e-14);
        assert!(matches!(
            ctx().lommel_t(op(1.0, 2.0), x),
            Err(Error::NormalizationPole(_))
        ));
        let q = op(2.3, 1.1);
        let num = ctx().lommel_t(q, 3.0).unwrap().value;
        let den = ctx().lommel_t(q.shifted(-1.0), 3.0).unwrap().value;
        let h = ctx().ratio_h(q, 3.0).unwrap();
        assert!(rel(num / den, (q.mu + q.nu - 1.0) * h) < 1e-14);
    }

    #[test]
    fn second_kind_struve() {
        let x = 20.0;
        let m = ctx().lommel_T_tilde(op(0.0, 0.0), x).unwrap();
        assert!(m.flags.cancellation);
        let v = m.unscaled();
        // M_0(x) ≈ −(2/π)(1/x + 1/x³)
        assert!(
            rel(v, -2.0 / PI * (1.0 / x + 1.0 / x.powi(3))) < 1e-4,
            "{v}"
        );
        assert!(
            !ctx()
                .lommel_T_tilde(op(2.0, 0.0), 1.0)
                .unwrap()
                .flags
                .cancellation
        );
    }

    #[test]
    fn cross_product_routes_agree() {
        for &(mu, nu, x) in &[
            (1.0, 0.0, 1.0),
            (2.5, 1.0, 7.5),
            (-0.6, -0.6, 5.0),
            (0.3, -1.7, 3.0),
        ] {
            let p = op(mu, nu);
            let s = ctx().cross_product_raw(p, x).unwrap().value.to_f64();
            let d = ctx().cross_product_direct_raw(p, x).unwrap().value.to_f64();
            let scale = ctx().bessel_i(nu, x).unwrap().value.abs()
                * ctx()
                    .lommel_t_tilde(p.shifted(-1.0), x)
                    .unwrap()
                    .value
                    .abs();
            assert!((s - d).abs() < 1e-14 * scale, "{mu} {nu} {x}: {s} vs {d}");
        }
        let z = ctx().cross_product(op(0.5, 1.5), 2.0).unwrap();
        assert_eq!(z.value, 0.0);
        let z = ctx().cross_product(op(0.0, -1.0), 2.0).unwrap();
        assert_eq!(z.value, 0.0);
        // μ = ν = −1/2: I_{−1/2}² − I_{1/2}² = 2/(πx)
        for x in [0.5, 3.0, 12.0] {
            let z = ctx().cross_product(op(-0.5, -0.5), x).unwrap();
            assert!(rel(z.value, 2.0 / (PI * x)) < 1e-15, "{x}");
            let d = ctx().cross_product_direct(op(-0.5, -0.5), x).unwrap();
            assert!(rel(d.value, 2.0 / (PI * x)) < 1e-12 * x.exp(), "{x}");
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(OrderPair::new(f64::NAN, 0.0).is_err());
        assert!(ctx().bessel_i(0.0, 0.0).is_err());
        assert!(ctx().bessel_i(0.0, -1.0).is_err());
        assert!(ctx().struve_l(-2.0, 1.0).is_err());
        let opts = EvalOptions::default().with_max_terms(16);
        assert!(matches!(
            bessel_i(0.0, 200.0, &opts),
            Err(Error::NonConvergence { .. })
        ));
    }
}
