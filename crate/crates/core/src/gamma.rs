//! Reciprocal gamma function and helpers.
//!
//! `recip_gamma` is total on the finite reals: it vanishes at the poles of
//! Γ and uses the reflection formula for arguments below one half.

use std::f64::consts::PI;

/// Distance below which an argument is treated as sitting exactly on a pole.
pub const POLE_TOL: f64 = 1e-12;

/// Taylor coefficients of 1/Γ(1+ε) about ε = 0, used on |ε| ≤ 1/2.
const RGAMMA1_TAYLOR: [f64; 23] = [
    1.0,
    5.772_156_649_015_328_606_1e-1,
    -6.558_780_715_202_538_810_8e-1,
    -4.200_263_503_409_523_552_9e-2,
    1.665_386_113_822_914_895e-1,
    -4.219_773_455_554_433_674_8e-2,
    -9.621_971_527_876_973_562_1e-3,
    7.218_943_246_663_099_542_4e-3,
    -1.165_167_591_859_065_112_1e-3,
    -2.152_416_741_149_509_728_2e-4,
    1.280_502_823_881_161_861_5e-4,
    -2.013_485_478_078_823_865_6e-5,
    -1.250_493_482_142_670_657_3e-6,
    1.133_027_231_981_695_882_4e-6,
    -2.056_338_416_977_607_103_5e-7,
    6.116_095_104_481_415_817_9e-9,
    5.002_007_644_469_222_930_1e-9,
    -1.181_274_570_487_020_144_6e-9,
    1.043_426_711_691_100_510_5e-10,
    7.782_263_439_905_071_254e-12,
    -3.696_805_618_642_205_708_2e-12,
    5.100_370_287_454_475_979e-13,
    -2.058_326_053_566_506_783_2e-14,
];

/// If `z` is within [`POLE_TOL`] of a nonpositive integer, returns that integer.
pub fn nonpositive_integer(z: f64) -> Option<i64> {
    let n = z.round();
    if n <= 0.0 && (z - n).abs() < POLE_TOL {
        Some(n as i64)
    } else {
        None
    }
}

/// Snaps `z` onto the nearest nonpositive integer when it is within the pole tolerance.
pub(crate) fn snap_pole(z: f64) -> f64 {
    match nonpositive_integer(z) {
        Some(n) => n as f64,
        None => z,
    }
}

/// sin(πz) with exact zeros at the integers.
pub fn sin_pi(z: f64) -> f64 {
    let n = (2.0 * z).round();
    let r = z - 0.5 * n;
    let arg = PI * r;
    match (n as i64).rem_euclid(4) {
        0 => arg.sin(),
        1 => arg.cos(),
        2 => -arg.sin(),
        _ => -arg.cos(),
    }
}

fn rgamma_near_one(eps: f64) -> f64 {
    RGAMMA1_TAYLOR
        .iter()
        .rev()
        .fold(0.0, |acc, &c| acc * eps + c)
}

/// 1/Γ(z).
///
/// Exactly zero at z ∈ {0, −1, −2, …} (within [`POLE_TOL`]).
pub fn recip_gamma(z: f64) -> f64 {
    if z.is_nan() {
        return f64::NAN;
    }
    if nonpositive_integer(z).is_some() {
        return 0.0;
    }
    if z < 0.5 {
        // 1/Γ(z) = sin(πz) Γ(1−z) / π
        let g = recip_gamma(1.0 - z);
        if g == 0.0 {
            let (lg, _) = libm::lgamma_r(1.0 - z);
            return sin_pi(z) * (lg - PI.ln()).exp();
        }
        return sin_pi(z) / (PI * g);
    }
    if z > 171.0 {
        return (-libm::lgamma(z)).exp();
    }
    let n = z.round();
    let eps = z - n;
    let mut prod = 1.0;
    let mut j = 1.0;
    while j < n {
        prod *= eps + j;
        j += 1.0;
    }
    rgamma_near_one(eps) / prod
}

/// Γ(z); infinite at the poles.
pub fn gamma(z: f64) -> f64 {
    1.0 / recip_gamma(z)
}

/// ln|Γ(z)| together with the sign of Γ(z).
pub fn ln_gamma_signed(z: f64) -> (f64, f64) {
    if (0.5..=150.0).contains(&z) {
        let g = recip_gamma(z);
        return (-g.ln(), 1.0);
    }
    let (lg, sign) = libm::lgamma_r(z);
    (lg, if sign < 0 { -1.0 } else { 1.0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn special_values() {
        assert_eq!(recip_gamma(1.0), 1.0);
        assert_eq!(recip_gamma(2.0), 1.0);
        assert_eq!(recip_gamma(0.0), 0.0);
        assert_eq!(recip_gamma(-3.0), 0.0);
        assert_eq!(recip_gamma(-7.0 + 1e-13), 0.0);
        let inv_sqrt_pi = 1.0 / PI.sqrt();
        assert!((recip_gamma(0.5) / inv_sqrt_pi - 1.0).abs() < 1e-15);
    }

    #[test]
    fn factorials() {
        let mut f = 1.0_f64;
        for n in 1..=50u32 {
            f *= n as f64;
            let g = recip_gamma(n as f64 + 1.0);
            assert!((g * f - 1.0).abs() < 1e-14, "n = {n}");
        }
    }

    #[test]
    fn half_integers_and_reflection() {
        // Γ(n + 1/2) = (2n)! √π / (4^n n!)
        let sqrt_pi = PI.sqrt();
        let mut g = sqrt_pi; // Γ(1/2)
        for n in 0..40 {
            let z = n as f64 + 0.5;
            assert!((recip_gamma(z) * g - 1.0).abs() < 1e-14, "z = {z}");
            // Γ(1/2 − n) = Γ(1/2) π / (sin(π(1/2 − n)) Γ(n + 1/2)) via reflection
            let zr = 0.5 - n as f64;
            let expected = (-1.0f64).powi(n) * g / PI; // 1/Γ(1/2 − n)
            assert!((recip_gamma(zr) / expected - 1.0).abs() < 1e-14, "z = {zr}");
            g *= z;
        }
    }

    #[test]
    fn sign_between_poles() {
        assert!(recip_gamma(-0.5) < 0.0);
        assert!(recip_gamma(-1.5) > 0.0);
        assert!(recip_gamma(-2.5) < 0.0);
    }

    #[test]
    fn sin_pi_exact_zeros() {
        for n in -5..5 {
            assert_eq!(sin_pi(n as f64), 0.0);
        }
        assert!((sin_pi(0.5) - 1.0).abs() < 1e-16);
        assert!((sin_pi(-0.25) + 0.5f64.sqrt()).abs() < 1e-16);
    }

    #[test]
    fn ln_gamma_matches_recip() {
        for &z in &[0.7, 3.3, 12.5, 40.0, 149.0] {
            let (lg, s) = ln_gamma_signed(z);
            assert_eq!(s, 1.0);
            assert!((lg + recip_gamma(z).ln()).abs() < 1e-12);
        }
        let (lg, s) = ln_gamma_signed(-0.5);
        assert_eq!(s, -1.0);
        assert!((lg - (2.0 * PI.sqrt()).ln()).abs() < 1e-14);
    }
}
