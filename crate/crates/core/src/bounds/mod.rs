//! Catalog of two-sided inequalities for t̃_{μ,ν} and related quantities.
//!
//! Every inequality implements [`Bound`] and is registered under a stable
//! id in a [`Registry`]. A bound knows its target quantity, the formula for
//! each side it provides, the parameter region where that side is valid and
//! the parameter sets where it is attained with equality.

mod catalog;
pub mod constants;
mod sweep;

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::eval::{EvalContext, OrderPair};
use crate::series::Scaled;

pub use constants::{constant_c, constant_c_prime, g_of_k};
pub use sweep::{sweep, SamplePoint, SweepConfig, SweepFailure, SweepReport, Violation};

/// Distance to a domain boundary below which a point is flagged as near it.
pub const BOUNDARY_TOL: f64 = 1e-9;

/// Guard band, in units of `rel_tol·|target|`, before a failed inequality counts as a violation.
pub const GUARD_FACTOR: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Lower,
    Upper,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::Lower, Side::Upper];

    pub fn name(&self) -> &'static str {
        match self {
            Side::Lower => "lower",
            Side::Upper => "upper",
        }
    }
}

/// The quantity an inequality bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    /// t̃_{μ,ν}(x)
    LommelTTilde,
    /// b_{μ,ν}(x)
    CoeffB,
    /// I_ν t̃_{μ−1,ν−1} − I_{ν−1} t̃_{μ,ν}
    CrossProduct,
    /// h_{μ,ν}(x) = t̃_{μ,ν}/t̃_{μ−1,ν−1}
    RatioH,
    /// C(t̃_{μ,ν}) = x t̃′/t̃
    Condition,
    /// t̃_{μ,ν}(x)/t̃_{μ,ν}(y)
    RatioXY,
    /// I_ν L_{ν−1} − I_{ν−1} L_ν
    StruveCross,
    /// L_ν/L_{ν−1}
    StruveRatio,
    /// L_ν(x)
    StruveL,
    /// I_ν/I_{ν−1}
    BesselRatio,
}

impl Target {
    /// Targets that depend on ν only; μ is ignored (Struve targets set μ = ν).
    pub fn nu_only(&self) -> bool {
        matches!(
            self,
            Target::StruveCross | Target::StruveRatio | Target::StruveL | Target::BesselRatio
        )
    }

    pub fn needs_y(&self) -> bool {
        matches!(self, Target::RatioXY)
    }

    /// Orders actually used when evaluating this target at `p`.
    pub fn effective_pair(&self, p: OrderPair) -> OrderPair {
        match self {
            Target::StruveCross | Target::StruveRatio | Target::StruveL => {
                OrderPair { mu: p.nu, nu: p.nu }
            }
            _ => p,
        }
    }

    /// Whether values are reported relative to e^x above the scaling threshold.
    fn grows_like_exp(&self) -> bool {
        matches!(
            self,
            Target::LommelTTilde | Target::CrossProduct | Target::StruveCross | Target::StruveL
        )
    }

    pub fn describe(&self) -> &'static str {
        match self {
            Target::LommelTTilde => "t~_{mu,nu}(x)",
            Target::CoeffB => "b_{mu,nu}(x)",
            Target::CrossProduct => "I_nu t~_{mu-1,nu-1} - I_{nu-1} t~_{mu,nu}",
            Target::RatioH => "t~_{mu,nu}(x) / t~_{mu-1,nu-1}(x)",
            Target::Condition => "x t~'_{mu,nu}(x) / t~_{mu,nu}(x)",
            Target::RatioXY => "t~_{mu,nu}(x) / t~_{mu,nu}(y)",
            Target::StruveCross => "I_nu L_{nu-1} - I_{nu-1} L_nu",
            Target::StruveRatio => "L_nu(x) / L_{nu-1}(x)",
            Target::StruveL => "L_nu(x)",
            Target::BesselRatio => "I_nu(x) / I_{nu-1}(x)",
        }
    }
}

/// One inequality g(μ, ν) > 0 (or ≥ 0 when inclusive).
#[derive(Clone, Copy)]
pub struct Constraint {
    pub label: &'static str,
    pub g: fn(OrderPair) -> f64,
    pub inclusive: bool,
}

impl Constraint {
    pub fn holds(&self, p: OrderPair) -> bool {
        let v = (self.g)(p);
        if self.inclusive {
            v >= 0.0
        } else {
            v > 0.0
        }
    }

    pub fn near(&self, p: OrderPair) -> bool {
        (self.g)(p).abs() < BOUNDARY_TOL
    }
}

impl std::fmt::Debug for Constraint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label)
    }
}

/// A union of intersections of [`Constraint`]s.
#[derive(Debug, Clone)]
pub struct DomainRegion {
    pub regions: Vec<Vec<Constraint>>,
}

impl DomainRegion {
    pub fn all(constraints: Vec<Constraint>) -> DomainRegion {
        DomainRegion {
            regions: vec![constraints],
        }
    }

    pub fn any(regions: Vec<Vec<Constraint>>) -> DomainRegion {
        DomainRegion { regions }
    }

    pub fn contains(&self, p: OrderPair) -> bool {
        self.regions.iter().any(|r| r.iter().all(|c| c.holds(p)))
    }

    /// Membership in the closure: strict constraints are relaxed to non-strict.
    pub fn closure_contains(&self, p: OrderPair) -> bool {
        self.regions
            .iter()
            .any(|r| r.iter().all(|c| (c.g)(p) >= -BOUNDARY_TOL))
    }

    pub fn near_boundary(&self, p: OrderPair) -> bool {
        self.regions.iter().flatten().any(|c| c.near(p))
    }

    pub fn description(&self) -> String {
        self.regions
            .iter()
            .map(|r| r.iter().map(|c| c.label).collect::<Vec<_>>().join(", "))
            .collect::<Vec<_>>()
            .join("  or  ")
    }
}

/// Inputs handed to a side formula.
pub struct Inputs<'a> {
    pub ctx: &'a EvalContext,
    /// Orders after any target-specific substitution (μ = ν for Struve targets).
    pub p: OrderPair,
    pub x: f64,
    /// Second argument for two-point targets; equals `x` otherwise.
    pub y: f64,
}

impl Inputs<'_> {
    /// b_{μ,ν}(u), taken as 0 on the line μ−ν = −1 where a_{μ,ν} vanishes.
    pub fn b(&self, u: f64) -> Result<f64> {
        if (self.p.mu - self.p.nu + 1.0).abs() < crate::gamma::POLE_TOL {
            return Ok(0.0);
        }
        self.ctx.ratio_b(self.p, u)
    }

    pub fn bessel(&self, nu: f64, u: f64) -> Result<Scaled> {
        Ok(self.ctx.bessel_i_raw(nu, u)?.value)
    }

    pub fn bessel_ratio(&self, u: f64) -> Result<f64> {
        self.ctx.ratio_r(self.p.nu, u)
    }

    /// 1/(Γ((μ−ν+3)/2)Γ((μ+ν+3)/2)).
    pub fn recip_g(&self) -> Scaled {
        crate::series::recip_gamma_scaled(self.p.alpha())
            .mul(crate::series::recip_gamma_scaled(self.p.beta()))
    }

    pub fn k(&self) -> f64 {
        self.p.k_const()
    }

    /// (μ−ν+1)/2.
    pub fn c(&self) -> f64 {
        0.5 * (self.p.mu - self.p.nu + 1.0)
    }
}

pub type SideFn = fn(&Inputs) -> Result<Scaled>;

/// One side of an inequality.
#[derive(Clone)]
pub struct SideSpec {
    pub formula: &'static str,
    pub domain: DomainRegion,
    /// Strict inequality away from the declared equality cases.
    pub strict: bool,
    pub eval: SideFn,
}

/// Common interface of every catalog entry.
pub trait Bound: Send + Sync {
    fn id(&self) -> &'static str;
    fn target(&self) -> Target;
    fn side(&self, side: Side) -> Option<&SideSpec>;
    /// Parameters at which the given side is attained with equality.
    fn equality_case(&self, side: Side, p: OrderPair) -> bool;
    /// Human-readable list of equality cases.
    fn equality_description(&self) -> &'static str;

    fn evaluate_side(&self, side: Side, inp: &Inputs) -> Result<Option<Scaled>> {
        match self.side(side) {
            Some(s) => (s.eval)(inp).map(Some),
            None => Ok(None),
        }
    }
}

/// Verdict of [`check_domain`] for one side.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SideVerdict {
    pub side: Side,
    pub valid: bool,
    /// Valid only because the point is a declared equality case on the closure of the region.
    pub via_equality: bool,
    pub near_boundary: bool,
    pub description: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DomainVerdict {
    pub id: String,
    pub sides: Vec<SideVerdict>,
}

impl DomainVerdict {
    pub fn side(&self, side: Side) -> Option<&SideVerdict> {
        self.sides.iter().find(|s| s.side == side)
    }

    pub fn any_valid(&self) -> bool {
        self.sides.iter().any(|s| s.valid)
    }

    pub fn near_boundary(&self) -> bool {
        self.sides.iter().any(|s| s.near_boundary)
    }
}

/// Outcome of evaluating one catalog entry at one point.
///
/// `target_value`, `lower`, `upper` and the margins are all expressed
/// relative to e^{log_scale}.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundEvaluation {
    pub id: String,
    pub target_value: f64,
    pub log_scale: f64,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
    /// target − lower
    pub margin_lower: Option<f64>,
    /// upper − target
    pub margin_upper: Option<f64>,
    /// Margins divided by |target|.
    pub rel_margin_lower: Option<f64>,
    pub rel_margin_upper: Option<f64>,
    /// Every evaluated side lies inside its validity region.
    pub domain_ok: bool,
    pub equality_hit: bool,
    pub near_boundary: bool,
    /// Some side fails by more than the guard band.
    pub violated: bool,
    pub violated_sides: Vec<Side>,
}

/// Name → bound lookup.
#[derive(Clone, Default)]
pub struct Registry {
    entries: BTreeMap<&'static str, Arc<dyn Bound>>,
}

impl Registry {
    pub fn new() -> Registry {
        Registry::default()
    }

    /// The built-in catalog.
    pub fn standard() -> Registry {
        let mut r = Registry::new();
        for b in catalog::entries() {
            r.register(b);
        }
        r
    }

    /// Adds or replaces an entry under its id.
    pub fn register(&mut self, bound: Arc<dyn Bound>) {
        self.entries.insert(bound.id(), bound);
    }

    pub fn get(&self, id: &str) -> Result<&Arc<dyn Bound>> {
        self.entries
            .get(id)
            .ok_or_else(|| Error::UnknownBoundId(id.to_string()))
    }

    pub fn ids(&self) -> Vec<&'static str> {
        self.entries.keys().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Arc<dyn Bound>> {
        self.entries.values()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Machine-readable description of every entry.
    pub fn manifest(&self) -> Vec<ManifestRecord> {
        self.iter()
            .map(|b| ManifestRecord {
                id: b.id(),
                target: b.target(),
                target_description: b.target().describe(),
                sides: Side::BOTH
                    .iter()
                    .filter_map(|&s| {
                        b.side(s).map(|spec| ManifestSide {
                            side: s,
                            formula: spec.formula,
                            domain: spec.domain.description(),
                            strict: spec.strict,
                        })
                    })
                    .collect(),
                equality_cases: b.equality_description(),
                needs_y: b.target().needs_y(),
            })
            .collect()
    }

    pub fn manifest_json(&self) -> String {
        serde_json::to_string_pretty(&self.manifest()).expect("manifest serializes")
    }
}

/// Shared instance of [`Registry::standard`].
pub fn registry() -> &'static Registry {
    static REG: OnceLock<Registry> = OnceLock::new();
    REG.get_or_init(Registry::standard)
}

#[derive(Debug, Clone, Serialize)]
pub struct ManifestSide {
    pub side: Side,
    pub formula: &'static str,
    pub domain: String,
    pub strict: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ManifestRecord {
    pub id: &'static str,
    pub target: Target,
    pub target_description: &'static str,
    pub sides: Vec<ManifestSide>,
    pub equality_cases: &'static str,
    pub needs_y: bool,
}

fn verdict_for(b: &dyn Bound, p: OrderPair) -> DomainVerdict {
    let q = b.target().effective_pair(p);
    let sides = Side::BOTH
        .iter()
        .filter_map(|&s| {
            b.side(s).map(|spec| {
                let inside = spec.domain.contains(q);
                let eq = b.equality_case(s, q) && spec.domain.closure_contains(q);
                SideVerdict {
                    side: s,
                    valid: inside || eq,
                    via_equality: eq && !inside,
                    near_boundary: spec.domain.near_boundary(q),
                    description: spec.domain.description(),
                }
            })
        })
        .collect();
    DomainVerdict {
        id: b.id().to_string(),
        sides,
    }
}

/// Domain verdict of every side of entry `id` at `p`.
pub fn check_domain(id: &str, p: OrderPair) -> Result<DomainVerdict> {
    Ok(verdict_for(registry().get(id)?.as_ref(), p))
}

fn check_args(b: &dyn Bound, x: f64, y: Option<f64>) -> Result<f64> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(domain(format!("x must be positive and finite, got {x}")));
    }
    if b.target().needs_y() {
        match y {
            Some(y) if y > x && y.is_finite() => Ok(y),
            Some(y) => Err(domain(format!(
                "{} needs 0 < x < y, got x={x}, y={y}",
                b.id()
            ))),
            None => Err(domain(format!("{} needs a second argument y > x", b.id()))),
        }
    } else {
        Ok(x)
    }
}

/// Evaluates the target of `b` exactly (up to series truncation).
pub fn evaluate_target(b: &dyn Bound, inp: &Inputs) -> Result<Scaled> {
    let ctx = inp.ctx;
    let (p, x) = (inp.p, inp.x);
    Ok(match b.target() {
        Target::LommelTTilde | Target::StruveL => ctx.t_tilde_raw(p, x)?.value,
        Target::CoeffB => Scaled::new(ctx.ratio_b(p, x)?),
        Target::CrossProduct | Target::StruveCross => ctx.cross_product_raw(p, x)?.value,
        Target::RatioH | Target::StruveRatio => Scaled::new(ctx.ratio_h(p, x)?),
        Target::Condition => {
            Scaled::new(ctx.condition_number(crate::eval::ConditionKind::LommelTTilde, p, x)?)
        }
        Target::RatioXY => ctx
            .t_tilde_raw(p, x)?
            .value
            .div(ctx.t_tilde_raw(p, inp.y)?.value),
        Target::BesselRatio => Scaled::new(ctx.ratio_r(p.nu, x)?),
    })
}

/// Evaluates entry `id` at (μ, ν, x[, y]); only sides whose domain holds are evaluated.
pub fn evaluate_bound(
    ctx: &EvalContext,
    id: &str,
    p: OrderPair,
    x: f64,
    y: Option<f64>,
) -> Result<BoundEvaluation> {
    let b = registry().get(id)?;
    evaluate_with(ctx, b.as_ref(), p, x, y, false)
}

/// Like [`evaluate_bound`] but evaluates every side regardless of its domain.
///
/// Used to probe how an inequality fails outside its validity region.
pub fn evaluate_bound_unchecked(
    ctx: &EvalContext,
    id: &str,
    p: OrderPair,
    x: f64,
    y: Option<f64>,
) -> Result<BoundEvaluation> {
    let b = registry().get(id)?;
    evaluate_with(ctx, b.as_ref(), p, x, y, true)
}

pub(crate) fn evaluate_with(
    ctx: &EvalContext,
    b: &dyn Bound,
    p: OrderPair,
    x: f64,
    y: Option<f64>,
    force: bool,
) -> Result<BoundEvaluation> {
    let y = check_args(b, x, y)?;
    let verdict = verdict_for(b, p);
    if !force && !verdict.any_valid() {
        let desc = verdict
            .sides
            .iter()
            .map(|s| format!("{}: {}", s.side.name(), s.description))
            .collect::<Vec<_>>()
            .join("; ");
        return Err(domain(format!(
            "{} is not valid at (mu, nu) = ({}, {}); requires {desc}",
            b.id(),
            p.mu,
            p.nu
        )));
    }
    let q = b.target().effective_pair(p);
    let inp = Inputs { ctx, p: q, x, y };
    let target = evaluate_target(b, &inp)?;
    let log_scale = if b.target().grows_like_exp() && x > ctx.opts.scaling_threshold {
        x
    } else {
        0.0
    };
    let present = |v: Scaled| v.times_exp_neg(log_scale);
    let guard = GUARD_FACTOR * ctx.opts.rel_tol;

    let mut out = BoundEvaluation {
        id: b.id().to_string(),
        target_value: present(target),
        log_scale,
        lower: None,
        upper: None,
        margin_lower: None,
        margin_upper: None,
        rel_margin_lower: None,
        rel_margin_upper: None,
        domain_ok: true,
        equality_hit: false,
        near_boundary: verdict.near_boundary(),
        violated: false,
        violated_sides: Vec::new(),
    };
    for s in Side::BOTH {
        let Some(v) = verdict.side(s) else { continue };
        if !v.valid && !force {
            continue;
        }
        if !v.valid {
            out.domain_ok = false;
        }
        let Some(value) = b.evaluate_side(s, &inp)? else {
            continue;
        };
        let margin = match s {
            Side::Lower => target.sub(value),
            Side::Upper => value.sub(target),
        };
        let rel = if target.is_zero() {
            if margin.is_zero() {
                0.0
            } else {
                margin.signum() * f64::INFINITY
            }
        } else {
            margin.ratio(&target.abs())
        };
        if b.equality_case(s, q) {
            out.equality_hit = true;
        }
        if rel < -guard {
            out.violated = true;
            out.violated_sides.push(s);
        }
        match s {
            Side::Lower => {
                out.lower = Some(present(value));
                out.margin_lower = Some(present(margin));
                out.rel_margin_lower = Some(rel);
            }
            Side::Upper => {
                out.upper = Some(present(value));
                out.margin_upper = Some(present(margin));
                out.rel_margin_upper = Some(rel);
            }
        }
    }
    Ok(out)
}
