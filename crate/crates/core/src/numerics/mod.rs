//! Shared special-function kernels: complex Gamma and log-Gamma, Bernoulli
//! numbers, the Euler–Maclaurin tail used by every Dirichlet-series
//! evaluator, upper incomplete Gamma, and compensated summation.

mod bernoulli;
mod euler_maclaurin;
mod gamma;
mod incgamma;
mod quadrature;
mod sum;

pub use bernoulli::{bernoulli_numbers, BERNOULLI_TABLE_SIZE};
pub use euler_maclaurin::{hurwitz_em, HurwitzParts};
pub use gamma::{complex_gamma, log_gamma, recip_gamma, POLE_TOLERANCE};
pub use incgamma::upper_incomplete_gamma;
pub use quadrature::gauss_legendre;
pub use sum::NeumaierSum;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// A complex value together with an estimated absolute error.
///
/// `abs_err` is an estimate, not a rigorous enclosure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvalResult {
    pub value: Complex64,
    pub abs_err: f64,
}

impl EvalResult {
    pub fn new(value: Complex64, abs_err: f64) -> Self {
        debug_assert!(abs_err.is_finite() && abs_err >= 0.0, "abs_err = {abs_err}");
        EvalResult { value, abs_err }
    }

    pub fn exact(value: Complex64) -> Self {
        EvalResult { value, abs_err: 0.0 }
    }

    /// Relative error estimate, `abs_err / |value|`.
    pub fn rel_err(&self) -> f64 {
        self.abs_err / self.value.norm().max(f64::MIN_POSITIVE)
    }

    /// Product with first-order error propagation.
    pub fn mul(self, other: EvalResult) -> EvalResult {
        let value = self.value * other.value;
        let abs_err = self.abs_err * other.value.norm()
            + other.abs_err * self.value.norm()
            + self.abs_err * other.abs_err
            + f64::EPSILON * value.norm();
        EvalResult::new(value, abs_err)
    }

    /// Multiply by a factor known to relative accuracy `rel`.
    pub fn scale(self, factor: Complex64, rel: f64) -> EvalResult {
        let value = self.value * factor;
        let abs_err = self.abs_err * factor.norm() + (rel + f64::EPSILON) * value.norm();
        EvalResult::new(value, abs_err)
    }
}

/// Euler–Maclaurin truncation parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EMParams {
    pub cutoff_n: usize,
    pub bernoulli_terms: usize,
}

impl EMParams {
    pub fn new(cutoff_n: usize, bernoulli_terms: usize) -> Result<Self> {
        if cutoff_n < 2 {
            return Err(Error::InvalidArgument(format!(
                "cutoff_n must be at least 2, got {cutoff_n}"
            )));
        }
        if bernoulli_terms == 0 || bernoulli_terms >= BERNOULLI_TABLE_SIZE {
            return Err(Error::InvalidArgument(format!(
                "bernoulli_terms must lie in 1..{BERNOULLI_TABLE_SIZE}, got {bernoulli_terms}"
            )));
        }
        Ok(EMParams {
            cutoff_n,
            bernoulli_terms,
        })
    }

    /// Defaults for evaluating at `s`: `max(30, ceil(1.3 |Im s|))` direct
    /// terms and 12 Bernoulli corrections.
    pub fn for_point(s: Complex64) -> Self {
        let cutoff = (1.3 * s.im.abs()).ceil() as usize;
        // |s| large with small Im s (far left real axis) also needs more terms.
        let cutoff = cutoff.max((0.5 * s.norm()).ceil() as usize).max(30);
        EMParams {
            cutoff_n: cutoff,
            bernoulli_terms: 12,
        }
    }
}

/// True when `s` lies within [`POLE_TOLERANCE`] of a non-positive integer.
pub(crate) fn near_nonpositive_integer(s: Complex64) -> bool {
    let n = s.re.round();
    n <= 0.0 && (s - Complex64::new(n, 0.0)).norm() < POLE_TOLERANCE
}

/// Complex sine computed in a form that stays finite when its logarithm is
/// needed: returns `log(sin z)` up to a multiple of `2πi`.
pub(crate) fn log_sin(z: Complex64) -> Complex64 {
    let i = Complex64::i();
    let two_i = Complex64::new(0.0, 2.0);
    if z.im >= 0.0 {
        // sin z = e^{-iz} (e^{2iz} - 1) / (2i)
        -i * z + ((two_i * z).exp() - 1.0).ln() - two_i.ln()
    } else {
        // sin z = e^{iz} (1 - e^{-2iz}) / (2i)
        i * z + (1.0 - (-two_i * z).exp()).ln() - two_i.ln()
    }
}

/// `(e^z - 1) / z`, accurate near `z = 0`.
pub(crate) fn expm1_over_z(z: Complex64) -> Complex64 {
    if z.norm() < 1e-3 {
        // 1 + z/2 + z^2/6 + z^3/24 + z^4/120
        let mut term = Complex64::new(1.0, 0.0);
        let mut acc = term;
        for k in 2..8 {
            term *= z / k as f64;
            acc += term;
        }
        acc
    } else {
        (z.exp() - 1.0) / z
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_sin_matches_direct_sine() {
        for &(re, im) in &[(0.3, 0.0), (1.2, 3.0), (-0.7, -4.5), (0.25, 40.0), (2.0, -60.0)] {
            let z = Complex64::new(re, im);
            let direct = z.sin();
            let via_log = log_sin(z).exp();
            assert!((direct - via_log).norm() <= 1e-13 * direct.norm(), "z = {z}");
        }
    }

    #[test]
    fn expm1_over_z_is_smooth_at_origin() {
        let small = Complex64::new(1e-5, -2e-5);
        let reference = Complex64::new(1.0, 0.0) + small / 2.0 + small * small / 6.0;
        assert!((expm1_over_z(small) - reference).norm() < 1e-15);
        let z = Complex64::new(0.3, 0.2);
        assert!((expm1_over_z(z) - (z.exp() - 1.0) / z).norm() < 1e-15);
    }

    #[test]
    fn em_params_validation() {
        assert!(EMParams::new(1, 4).is_err());
        assert!(EMParams::new(10, 0).is_err());
        assert!(EMParams::new(10, BERNOULLI_TABLE_SIZE).is_err());
        assert!(EMParams::new(2, 1).is_ok());
        let p = EMParams::for_point(Complex64::new(0.5, 100.0));
        assert_eq!(p.cutoff_n, 130);
        assert_eq!(p.bernoulli_terms, 12);
    }
}
