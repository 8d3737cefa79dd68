//! Modified Lommel functions of the first kind.
//!
//! The normalized function
//!
//! ```text
//! t̃_{μ,ν}(x) = Σ_k (x/2)^{μ+2k+1} / (Γ(k+(μ−ν+3)/2) Γ(k+(μ+ν+3)/2))
//! ```
//!
//! contains I_ν (μ = ν−1) and the modified Struve function L_ν (μ = ν) as
//! special cases. This crate evaluates it together with the related
//! quantities a_{μ,ν}, b_{μ,ν}, h_{μ,ν} and condition numbers, checks the
//! recurrence and integral identities it satisfies, carries a catalog of
//! two-sided inequalities with their validity regions, and regenerates the
//! relative-error tables for the sharpest of those bounds.

#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod bounds;
pub mod error;
pub mod eval;
pub mod gamma;
pub mod identities;
pub mod quadrature;
pub mod reproduction;
pub mod series;

pub use error::{Error, Result};
pub use eval::{
    bessel_i, coeff_a, condition_number, cross_product, lommel_T_tilde, lommel_t, lommel_t_tilde,
    ratio_b, ratio_h, ratio_r, struve_l, t_tilde_derivative, ConditionKind, EvalContext, Fault,
    OrderPair,
};
pub use gamma::recip_gamma;
pub use series::{EvalFlags, EvalOptions, Evaluation};
