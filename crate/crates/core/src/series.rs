//! Power-series summation with truncation control and exponent tracking.
//!
//! Every function in this crate is a series whose term ratio is an explicit
//! rational function of the index. Terms are carried relative to a binary
//! exponent so that sums far beyond the `f64` range (e^x for x ≳ 709) stay
//! representable until the caller decides how to present them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Cody–Waite split of ln 2.
const LN2_HI: f64 = 6.931_471_803_691_238_164_90e-1;
const LN2_LO: f64 = 1.908_214_929_270_587_700_02e-10;

const RESCALE_BITS: i32 = 600;

/// Tuning knobs for every series evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalOptions {
    /// Target bound on the relative truncation error.
    pub rel_tol: f64,
    pub max_terms: usize,
    /// Arguments above this are returned as e^{-x}·f(x) with `log_scale = x`.
    pub scaling_threshold: f64,
    /// Compensated summation plus a term-doubling agreement check.
    pub oracle_mode: bool,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            rel_tol: 1e-15,
            max_terms: 10_000,
            scaling_threshold: 50.0,
            oracle_mode: false,
        }
    }
}

impl EvalOptions {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol <= 1e-6) {
            return Err(Error::InvalidOptions(format!(
                "rel_tol must lie in (0, 1e-6], got {}",
                self.rel_tol
            )));
        }
        if self.max_terms < 16 {
            return Err(Error::InvalidOptions(format!(
                "max_terms must be at least 16, got {}",
                self.max_terms
            )));
        }
        if !(self.scaling_threshold > 0.0) {
            return Err(Error::InvalidOptions(format!(
                "scaling_threshold must be positive, got {}",
                self.scaling_threshold
            )));
        }
        Ok(())
    }

    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_max_terms(mut self, max_terms: usize) -> Self {
        self.max_terms = max_terms;
        self
    }

    pub fn with_scaling_threshold(mut self, threshold: f64) -> Self {
        self.scaling_threshold = threshold;
        self
    }

    pub fn oracle(mut self) -> Self {
        self.oracle_mode = true;
        self
    }
}

/// Diagnostic flags attached to an [`Evaluation`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalFlags {
    /// Leading terms vanished because a gamma argument sat on a pole; summation started later.
    pub gamma_pole_skip: bool,
    /// The parameters are outside the region where the series is known to be positive.
    pub sign_unguaranteed: bool,
    /// A difference lost more than six significant digits to cancellation.
    pub cancellation: bool,
    /// The unscaled value would overflow, so a scaled value was returned below the threshold.
    pub forced_scaling: bool,
}

/// A function value with truncation diagnostics.
///
/// The represented number is `value * exp(log_scale)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    pub value: f64,
    pub log_scale: f64,
    pub terms_used: usize,
    /// Bound on the relative truncation error.
    pub tail_bound: f64,
    pub converged: bool,
    pub flags: EvalFlags,
}

impl Evaluation {
    pub fn is_scaled(&self) -> bool {
        self.log_scale != 0.0
    }

    /// `value * exp(log_scale)`; may overflow to infinity.
    pub fn unscaled(&self) -> f64 {
        if self.log_scale == 0.0 {
            self.value
        } else {
            mul_exp(self.value, self.log_scale)
        }
    }

    /// The value expressed relative to `exp(log_scale)`.
    pub fn at_log_scale(&self, log_scale: f64) -> f64 {
        mul_exp(self.value, self.log_scale - log_scale)
    }
}

/// `v * exp(s)` without intermediate overflow in `exp(s)`.
pub fn mul_exp(v: f64, s: f64) -> f64 {
    if s == 0.0 || v == 0.0 {
        return v;
    }
    let n = (s / std::f64::consts::LN_2).round();
    let r = (s - n * LN2_HI) - n * LN2_LO;
    libm::scalbn(v * r.exp(), clamp_exp(n))
}

fn clamp_exp(n: f64) -> i32 {
    n.clamp(-100_000.0, 100_000.0) as i32
}

/// A real number `m * 2^e` with `m` normalized into [0.5, 1) (or zero).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scaled {
    pub m: f64,
    pub e: i32,
}

// Inherent arithmetic keeps call sites free of operator-trait imports.
#[allow(clippy::should_implement_trait)]
impl Scaled {
    pub const ZERO: Scaled = Scaled { m: 0.0, e: 0 };

    pub fn new(v: f64) -> Scaled {
        Scaled { m: v, e: 0 }.normalized()
    }

    /// Builds m·2^e from an unnormalized mantissa.
    pub fn from_parts(m: f64, e: i32) -> Scaled {
        Scaled { m, e }.normalized()
    }

    /// sign·exp(log_mag).
    pub fn from_log(sign: f64, log_mag: f64) -> Scaled {
        let n = (log_mag / std::f64::consts::LN_2).round();
        let r = (log_mag - n * LN2_HI) - n * LN2_LO;
        Scaled::from_parts(sign * r.exp(), clamp_exp(n))
    }

    fn normalized(self) -> Scaled {
        if self.m == 0.0 || !self.m.is_finite() {
            return Scaled { m: self.m, e: 0 };
        }
        let (m, de) = libm::frexp(self.m);
        Scaled {
            m,
            e: self.e.saturating_add(de),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.m == 0.0
    }

    pub fn mul(self, o: Scaled) -> Scaled {
        Scaled::from_parts(self.m * o.m, self.e.saturating_add(o.e))
    }

    pub fn div(self, o: Scaled) -> Scaled {
        Scaled::from_parts(self.m / o.m, self.e.saturating_sub(o.e))
    }

    pub fn scale(self, f: f64) -> Scaled {
        Scaled::from_parts(self.m * f, self.e)
    }

    /// Sum of two values, aligned at the larger exponent.
    pub fn add(self, o: Scaled) -> Scaled {
        if self.is_zero() {
            return o;
        }
        if o.is_zero() {
            return self;
        }
        let e = self.e.max(o.e);
        let a = libm::scalbn(self.m, self.e - e);
        let b = libm::scalbn(o.m, o.e - e);
        Scaled::from_parts(a + b, e)
    }

    pub fn sub(self, o: Scaled) -> Scaled {
        self.add(o.scale(-1.0))
    }

    pub fn abs(self) -> Scaled {
        Scaled {
            m: self.m.abs(),
            e: self.e,
        }
    }

    pub fn signum(&self) -> f64 {
        if self.m == 0.0 {
            0.0
        } else {
            self.m.signum()
        }
    }

    /// Natural log of the magnitude.
    pub fn ln_abs(&self) -> f64 {
        self.m.abs().ln() + self.e as f64 * std::f64::consts::LN_2
    }

    /// Plain `f64`; overflows to ±∞ or underflows to 0 outside the range.
    pub fn to_f64(&self) -> f64 {
        libm::scalbn(self.m, self.e)
    }

    /// The value times exp(-s).
    pub fn times_exp_neg(&self, s: f64) -> f64 {
        let n = (s / std::f64::consts::LN_2).round();
        let r = (s - n * LN2_HI) - n * LN2_LO;
        libm::scalbn(self.m * (-r).exp(), self.e.saturating_sub(clamp_exp(n)))
    }

    /// Ratio self/o as a plain `f64`.
    pub fn ratio(&self, o: &Scaled) -> f64 {
        libm::scalbn(self.m / o.m, self.e.saturating_sub(o.e))
    }
}

/// b^p as a [`Scaled`] for b > 0, safe for exponents far outside the f64 range.
pub fn pow_scaled(b: f64, p: f64) -> Scaled {
    let lg = p * b.ln();
    if lg.abs() < 700.0 {
        return Scaled::new(b.powf(p));
    }
    let n = (lg.abs() / 600.0).ceil();
    let piece = Scaled::new(b.powf(p / n));
    let mut acc = Scaled::new(1.0);
    for _ in 0..n as usize {
        acc = acc.mul(piece);
    }
    acc
}

/// 1/Γ(z) as a [`Scaled`], usable beyond the point where the plain value underflows.
pub fn recip_gamma_scaled(z: f64) -> Scaled {
    if z > 170.0 {
        let (lg, sign) = libm::lgamma_r(z);
        let s = if sign < 0 { -1.0 } else { 1.0 };
        return Scaled::from_log(s, -lg);
    }
    if z < -170.0 && crate::gamma::nonpositive_integer(z).is_none() {
        // 1/Γ(z) = sin(πz)Γ(1−z)/π
        let (lg, _) = libm::lgamma_r(1.0 - z);
        let s = crate::gamma::sin_pi(z);
        return Scaled::from_log(1.0, lg - std::f64::consts::PI.ln()).scale(s);
    }
    Scaled::new(crate::gamma::recip_gamma(z))
}

/// Raw outcome of a summation.
#[derive(Debug, Clone, Copy)]
pub struct SeriesSum {
    pub sum: Scaled,
    pub terms_used: usize,
    pub tail_bound: f64,
    pub converged: bool,
}

/// Sums `Σ_{k ≥ k0} t_k` with `t_{k0} = first` and `t_{k+1} = t_k · ratio(k)`.
///
/// `majorant(k)` must return, when available, a value q̄ with
/// `ratio(j) ≤ q̄` for every j ≥ k and all terms from k on of one sign; the
/// remainder after t_k is then at most |t_k|·q̄/(1−q̄).
pub fn sum_series<R, M>(
    first: Scaled,
    k0: usize,
    ratio: R,
    majorant: M,
    opts: &EvalOptions,
) -> SeriesSum
where
    R: Fn(usize) -> f64,
    M: Fn(usize) -> Option<f64>,
{
    if first.is_zero() {
        return SeriesSum {
            sum: Scaled::ZERO,
            terms_used: 1,
            tail_bound: 0.0,
            converged: true,
        };
    }
    let mut e = first.e;
    let mut term = first.m;
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut terms = 0usize;
    let mut k = k0;
    let mut tail = f64::INFINITY;
    let mut converged = false;
    // In oracle mode, the count at which the tolerance was first met.
    let mut first_hit: Option<(usize, f64)> = None;

    while terms < opts.max_terms {
        if opts.oracle_mode {
            let t = sum + term;
            if sum.abs() >= term.abs() {
                comp += (sum - t) + term;
            } else {
                comp += (term - t) + sum;
            }
            sum = t;
        } else {
            sum += term;
        }
        terms += 1;

        let total = sum + comp;
        if let Some(q) = majorant(k) {
            if q < 1.0 && total != 0.0 {
                tail = (term.abs() * q / (1.0 - q)) / total.abs();
                if term == 0.0 {
                    tail = 0.0;
                }
                if tail <= opts.rel_tol {
                    if !opts.oracle_mode {
                        converged = true;
                        break;
                    }
                    match first_hit {
                        None => first_hit = Some((terms, total)),
                        Some((n, s)) if terms >= 2 * n => {
                            if (total - s).abs() <= 1e-15 * total.abs() {
                                converged = true;
                                break;
                            }
                            first_hit = Some((terms, total));
                        }
                        _ => {}
                    }
                }
            }
        }

        term *= ratio(k);
        k += 1;
        if term.abs() > libm::scalbn(1.0, RESCALE_BITS) {
            term = libm::scalbn(term, -RESCALE_BITS);
            sum = libm::scalbn(sum, -RESCALE_BITS);
            comp = libm::scalbn(comp, -RESCALE_BITS);
            if let Some((n, s)) = first_hit {
                first_hit = Some((n, libm::scalbn(s, -RESCALE_BITS)));
            }
            e = e.saturating_add(RESCALE_BITS);
        }
        if !term.is_finite() {
            break;
        }
    }

    SeriesSum {
        sum: Scaled::from_parts(sum + comp, e),
        terms_used: terms,
        tail_bound: tail,
        converged,
    }
}

/// Leading exponent data for Σ_k (x/2)^{p+2k} / (Γ(k+α)Γ(k+β)).
#[derive(Debug, Clone, Copy)]
pub struct HypTerms {
    pub p: f64,
    pub alpha: f64,
    pub beta: f64,
}

/// Sum of Σ_{k≥0} (x/2)^{p+2k} / (Γ(k+α)Γ(k+β)) for x > 0.
///
/// Terms killed by a gamma pole at the start are skipped exactly; the
/// returned flag reports whether that happened.
pub fn hyp_series(h: HypTerms, x: f64, opts: &EvalOptions) -> (SeriesSum, bool) {
    let alpha = crate::gamma::snap_pole(h.alpha);
    let beta = crate::gamma::snap_pole(h.beta);
    let mut k0 = 0usize;
    for g in [alpha, beta] {
        if let Some(n) = crate::gamma::nonpositive_integer(g) {
            k0 = k0.max((-n) as usize + 1);
        }
    }
    let half = 0.5 * x;
    let z = half * half;
    let kf = k0 as f64;
    let first = pow_scaled(half, h.p + 2.0 * kf)
        .mul(recip_gamma_scaled(kf + alpha))
        .mul(recip_gamma_scaled(kf + beta));
    let sum = sum_series(
        first,
        k0,
        |k| {
            let k = k as f64;
            z / ((k + alpha) * (k + beta))
        },
        |k| {
            // q_k is nonincreasing once both shifted indices are positive.
            let k = k as f64;
            let (a, b) = (k + alpha, k + beta);
            (a > 0.0 && b > 0.0).then(|| z / (a * b))
        },
        opts,
    );
    (sum, k0 > 0)
}

/// Presents a summed value as an [`Evaluation`] using the scaling convention.
pub fn to_evaluation(s: &SeriesSum, x: f64, opts: &EvalOptions, flags: EvalFlags) -> Evaluation {
    let mut flags = flags;
    let (value, log_scale) = if x > opts.scaling_threshold {
        (s.sum.times_exp_neg(x), x)
    } else {
        let v = s.sum.to_f64();
        if v.is_finite() {
            (v, 0.0)
        } else {
            flags.forced_scaling = true;
            (s.sum.times_exp_neg(x), x)
        }
    };
    Evaluation {
        value,
        log_scale,
        terms_used: s.terms_used,
        tail_bound: s.tail_bound,
        converged: s.converged,
        flags,
    }
}

/// Turns a non-converged sum into an error.
pub fn require_converged(s: SeriesSum) -> Result<SeriesSum> {
    if s.converged {
        Ok(s)
    } else {
        Err(Error::NonConvergence {
            terms: s.terms_used,
            tail_bound: s.tail_bound,
        })
    }
}
