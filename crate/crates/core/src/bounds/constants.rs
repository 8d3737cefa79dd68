//! Closed-form constants appearing in the function bounds.

use crate::error::{domain, Error, Result};
use crate::eval::OrderPair;
use crate::gamma::{nonpositive_integer, recip_gamma};

fn positive_k(p: OrderPair) -> Result<f64> {
    let k = p.k_const();
    if k > 0.0 {
        Ok(k)
    } else {
        Err(domain(format!(
            "(mu+3)^2 - nu^2 must be positive, got {k} at (mu, nu) = ({}, {})",
            p.mu, p.nu
        )))
    }
}

/// 1/(Γ((μ−ν+3)/2)Γ((μ+ν+3)/2)) as a plain float.
fn recip_g(p: OrderPair) -> f64 {
    recip_gamma(p.alpha()) * recip_gamma(p.beta())
}

/// C_{μ,ν} = K^{(μ−ν+1)/2} Γ(ν+1) / (2^{μ−ν+1} Γ((μ−ν+3)/2) Γ((μ+ν+3)/2)), K = (μ+3)²−ν².
///
/// Ratio of the upper to the lower I_ν-type bound on t̃_{μ,ν}.
pub fn constant_c(p: OrderPair) -> Result<f64> {
    if nonpositive_integer(p.nu + 1.0).is_some() {
        return Err(Error::NormalizationPole(format!(
            "Gamma(nu+1) has a pole at nu = {}",
            p.nu
        )));
    }
    let k = positive_k(p)?;
    let c = 0.5 * (p.mu - p.nu + 1.0);
    Ok(k.powf(c) / recip_gamma(p.nu + 1.0)
        * recip_g(p)
        * (-(2.0 * c) * std::f64::consts::LN_2).exp())
}

/// C′_{μ,ν} = K^{(μ−ν+1)/2} ((2ν+1)/e)^{ν+1/2} / (2^{μ+1} Γ((μ−ν+3)/2) Γ((μ+ν+3)/2)).
pub fn constant_c_prime(p: OrderPair) -> Result<f64> {
    if p.nu < -0.5 {
        return Err(domain(format!("C' needs nu >= -1/2, got {}", p.nu)));
    }
    let k = positive_k(p)?;
    let c = 0.5 * (p.mu - p.nu + 1.0);
    let h = p.nu + 0.5;
    let ln = c * k.ln()
        + if h > 0.0 {
            h * ((2.0 * h).ln() - 1.0)
        } else {
            0.0
        }
        - (p.mu + 1.0) * std::f64::consts::LN_2;
    Ok(ln.exp() * recip_g(p))
}

/// g(k) = (k+3)^{(k+1)/2} (e/2)^{k/2} / (√(2π) Γ((k+3)/2)).
///
/// Increasing on k ≥ −1/2.
pub fn g_of_k(k: f64) -> Result<f64> {
    if !(k >= -0.5) || !k.is_finite() {
        return Err(domain(format!("g(k) needs k >= -1/2, got {k}")));
    }
    let ln = 0.5 * (k + 1.0) * (k + 3.0).ln() + 0.5 * k * (1.0 - std::f64::consts::LN_2)
        - 0.5 * (2.0 * std::f64::consts::PI).ln();
    Ok(ln.exp() * recip_gamma(0.5 * (k + 3.0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g_minimum_and_growth() {
        let g0 = g_of_k(-0.5).unwrap();
        assert!((g0 - 0.5125).abs() < 5e-4, "{g0}");
        let mut prev = g0;
        for i in 1..=82 {
            let g = g_of_k(-0.5 + 0.25 * i as f64).unwrap();
            assert!(g > prev);
            prev = g;
        }
        assert!(g_of_k(-0.6).is_err());
    }

    #[test]
    fn c_prime_at_zero() {
        // C'_{0,0} = 9^{1/2} e^{-1/2} / (2 Γ(3/2)²) = 6 e^{-1/2}/π
        let c = constant_c_prime(OrderPair::new(0.0, 0.0).unwrap()).unwrap();
        let want = 6.0 * (-0.5f64).exp() / std::f64::consts::PI;
        assert!((c - want).abs() < 1e-15 * want);
    }

    #[test]
    fn c_poles_and_domain() {
        assert!(matches!(
            constant_c(OrderPair::new(0.0, -1.0).unwrap()),
            Err(Error::NormalizationPole(_))
        ));
        assert!(constant_c(OrderPair::new(-2.5, 1.0).unwrap()).is_err());
        assert!(constant_c_prime(OrderPair::new(1.0, -0.7).unwrap()).is_err());
    }
}
