//! Complex Gamma via the Lanczos approximation (g = 7, nine coefficients) and
//! log-Gamma via the shifted Stirling series. The two kernels are independent
//! and are cross-checked against each other in the tests.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::bernoulli::bernoulli_even;
use super::{log_sin, near_nonpositive_integer, EvalResult};
use crate::error::{Error, Result};

/// Distance to a non-positive integer below which Gamma reports a pole.
pub const POLE_TOLERANCE: f64 = 1e-14;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Beyond this |Im s| the reflection formula would overflow `sin(pi s)`;
/// the value is taken from `exp(log_gamma)` instead.
const REFLECTION_IM_LIMIT: f64 = 150.0;

const STIRLING_MIN_MODULUS: f64 = 15.0;
const STIRLING_TERMS: usize = 10;

fn lanczos(s: Complex64) -> (Complex64, f64) {
    let z = s - 1.0;
    let mut x = Complex64::new(LANCZOS_COEF[0], 0.0);
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    let exponent = (z + 0.5) * t.ln() - t;
    let value = (2.0 * PI).sqrt() * exponent.exp() * x;
    // Approximation error ~1e-15 plus rounding in the exponent.
    let rel = 2e-15 + 4.0 * f64::EPSILON * (exponent.norm() + 1.0);
    (value, rel)
}

/// Gamma function for complex `s`.
///
/// Uses reflection for `Re s < 1/2`. Errors when `s` is within
/// [`POLE_TOLERANCE`] of a non-positive integer.
pub fn complex_gamma(s: Complex64) -> Result<EvalResult> {
    if near_nonpositive_integer(s) {
        return Err(Error::Pole(s));
    }
    if s.im.abs() > REFLECTION_IM_LIMIT {
        let lg = log_gamma(s)?;
        let value = lg.value.exp();
        return Ok(EvalResult::new(value, value.norm() * (lg.abs_err + f64::EPSILON)));
    }
    if s.re < 0.5 {
        let (g, rel) = lanczos(1.0 - s);
        let sine = (PI * s).sin();
        let value = PI / (sine * g);
        let rel = rel + 4.0 * f64::EPSILON * (1.0 + (PI * s).norm());
        Ok(EvalResult::new(value, rel * value.norm()))
    } else {
        let (value, rel) = lanczos(s);
        Ok(EvalResult::new(value, rel * value.norm()))
    }
}

fn stirling(w: Complex64) -> Complex64 {
    let half_ln_two_pi = 0.5 * (2.0 * PI).ln();
    let mut acc = (w - 0.5) * w.ln() - w + half_ln_two_pi;
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut power = inv;
    for k in 1..=STIRLING_TERMS {
        let two_k = 2.0 * k as f64;
        acc += bernoulli_even(k) / (two_k * (two_k - 1.0)) * power;
        power *= inv2;
    }
    acc
}

/// Logarithm of Gamma, continuous off the negative real axis.
///
/// The imaginary part is the continuous argument of `Gamma(s)` obtained by
/// summing principal logarithms along the recurrence, so it is continuous
/// along vertical lines in `Re s > 0`.
pub fn log_gamma(s: Complex64) -> Result<EvalResult> {
    if near_nonpositive_integer(s) {
        return Err(Error::Pole(s));
    }
    let mut shift = 0usize;
    while {
        let w = s + shift as f64;
        w.re < 1.0 || w.norm() < STIRLING_MIN_MODULUS
    } {
        shift += 1;
    }
    let w = s + shift as f64;
    let mut value = stirling(w);
    let mut magnitude = value.norm();
    for k in 0..shift {
        let l = (s + k as f64).ln();
        value -= l;
        magnitude += l.norm();
    }
    let abs_err = 4.0 * f64::EPSILON * (magnitude + 1.0);
    Ok(EvalResult::new(value, abs_err))
}

/// Reciprocal Gamma, an entire function; vanishes at the non-positive
/// integers.
pub fn recip_gamma(s: Complex64) -> Complex64 {
    if near_nonpositive_integer(s) {
        return Complex64::new(0.0, 0.0);
    }
    if s.re >= 0.5 {
        // log_gamma cannot fail here.
        (-log_gamma(s).map(|r| r.value).unwrap_or_default()).exp()
    } else {
        // 1/Gamma(s) = sin(pi s) Gamma(1 - s) / pi
        let lg = log_gamma(1.0 - s).map(|r| r.value).unwrap_or_default();
        (log_sin(PI * s) + lg - PI.ln()).exp()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn gamma_at_one_and_half() {
        let g1 = complex_gamma(c(1.0, 0.0)).unwrap();
        assert!((g1.value - 1.0).norm() < 1e-14);
        let gh = complex_gamma(c(0.5, 0.0)).unwrap();
        assert!((gh.value - PI.sqrt()).norm() < 1e-14);
    }

    #[test]
    fn poles_are_rejected() {
        for n in 0..5 {
            let s = c(-(n as f64), 0.0);
            assert!(matches!(complex_gamma(s), Err(Error::Pole(_))));
            assert!(matches!(log_gamma(s), Err(Error::Pole(_))));
            assert_eq!(recip_gamma(s), c(0.0, 0.0));
        }
        // Just outside the threshold is an ordinary (huge) value.
        assert!(complex_gamma(c(-2.0 + 1e-12, 0.0)).is_ok());
    }

    #[test]
    fn log_gamma_small_integers() {
        assert!(log_gamma(c(1.0, 0.0)).unwrap().value.norm() < 1e-14);
        assert!(log_gamma(c(2.0, 0.0)).unwrap().value.norm() < 1e-14);
        // 9! = 362880, log computed here rather than tabulated.
        let expected = (362_880f64).ln();
        assert!((log_gamma(c(10.0, 0.0)).unwrap().value.re - expected).abs() < 1e-13);
    }

    #[test]
    fn log_gamma_continuous_on_vertical_line() {
        let mut prev = log_gamma(c(0.25, 0.0)).unwrap().value.im;
        for k in 1..4000 {
            let t = k as f64 * 0.1;
            let im = log_gamma(c(0.25, t)).unwrap().value.im;
            // A branch slip would jump by 2 pi.
            assert!((im - prev).abs() < 1.0, "jump at t = {t}");
            prev = im;
        }
    }

    #[test]
    fn recip_gamma_matches_gamma() {
        for &(re, im) in &[(0.3, 0.2), (-1.5, 0.0), (-2.7, 4.0), (3.0, -10.0), (0.1, 60.0)] {
            let s = c(re, im);
            let g = complex_gamma(s).unwrap().value;
            assert!((recip_gamma(s) * g - 1.0).norm() < 1e-12, "s = {s}");
        }
    }
}
