//! Epstein zeta functions of positive-definite binary quadratic forms.
//!
//! With `lambda(v) = 2 pi Q(v) / sqrt(Delta)` the completed function
//! `G(s) = (sqrt(Delta) / 2 pi)^s Gamma(s) Z(s)` is the Mellin transform of
//! a self-dual theta series. Splitting the Mellin integral at
//! `x = e^{i phi}` gives
//!
//! ```text
//! G(s) = e^{-i phi (1-s)} / (s-1) - e^{i phi s} / s
//!      + sum' [ lambda^{-s} Gamma(s, lambda e^{i phi}) + lambda^{s-1} Gamma(1-s, lambda e^{-i phi}) ]
//! ```
//!
//! for any `|phi| < pi/2`. Tilting the split point towards `sign(t) pi/2`
//! removes the `e^{-pi |t| / 2}` cancellation that the unrotated series
//! suffers at large `|t|`.

mod search;

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

pub use search::{zero_search_rectangle, RectangleRegion, RefinedZero, ZeroSearchReport};

use crate::error::{Error, Result};
use crate::numerics::{recip_gamma, upper_incomplete_gamma, EvalResult, NeumaierSum};

/// `a n^2 + b n m + c m^2` with `a > 0` and `4ac - b^2 > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct QuadraticForm {
    a: i64,
    b: i64,
    c: i64,
    delta: i64,
}

impl QuadraticForm {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        let delta = 4 * a * c - b * b;
        if a <= 0 || delta <= 0 {
            return Err(Error::NotPositiveDefinite { a, b, c });
        }
        Ok(QuadraticForm { a, b, c, delta })
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn c(&self) -> i64 {
        self.c
    }

    /// `4ac - b^2`.
    pub fn delta(&self) -> i64 {
        self.delta
    }

    pub fn eval(&self, n: i64, m: i64) -> i64 {
        self.a * n * n + self.b * n * m + self.c * m * m
    }

    /// Smallest eigenvalue of `[[a, b/2], [b/2, c]]`, so `Q(v) >= lambda_min |v|^2`.
    pub fn min_eigenvalue(&self) -> f64 {
        let (a, b, c) = (self.a as f64, self.b as f64, self.c as f64);
        0.5 * (a + c - ((a - c).powi(2) + b * b).sqrt())
    }

    /// Representation numbers `r(k) = #{v != 0 : Q(v) = k}` for `k <= max`.
    pub fn representation_counts(&self, max: i64) -> BTreeMap<i64, u64> {
        let mut counts = BTreeMap::new();
        // Q(v) >= lambda_min |v|^2 bounds the box that can reach `max`.
        let r = ((max as f64 / self.min_eigenvalue()).sqrt()).ceil() as i64 + 1;
        for n in -r..=r {
            for m in -r..=r {
                if n == 0 && m == 0 {
                    continue;
                }
                let k = self.eval(n, m);
                if k <= max {
                    *counts.entry(k).or_insert(0) += 1;
                }
            }
        }
        counts
    }
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

impl std::str::FromStr for QuadraticForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        let bad = || Error::InvalidArgument(format!("bad form {s:?}, expected a,b,c"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let nums: Vec<i64> = parts
            .iter()
            .map(|p| p.parse().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        QuadraticForm::new(nums[0], nums[1], nums[2])
    }
}

/// Lower bound on `Re s` for the direct lattice sum.
pub const DIRECT_MIN_RE: f64 = 1.1;

/// Lattice sum over the square `max(|n|, |m|) <= radius`, with a tail bound
/// from `Q(v) >= lambda_min |v|^2` folded into `abs_err`.
pub fn epstein_direct(s: Complex64, q: &QuadraticForm, radius: u32) -> Result<EvalResult> {
    if s.re <= DIRECT_MIN_RE {
        return Err(Error::OutsideConvergence(s));
    }
    let r = radius as i64;
    let mut acc = NeumaierSum::new();
    for n in -r..=r {
        let mut row = NeumaierSum::new();
        for m in -r..=r {
            if n == 0 && m == 0 {
                continue;
            }
            row.add((-s * (q.eval(n, m) as f64).ln()).exp());
        }
        acc.add(row.total());
    }
    let sigma = s.re;
    let rf = (radius as f64).max(1.0);
    let tail = 8.0 * q.min_eigenvalue().powf(-sigma) * rf.powf(2.0 - 2.0 * sigma) / (2.0 * sigma - 2.0);
    let value = acc.total();
    Ok(EvalResult::new(
        value,
        tail + 8.0 * f64::EPSILON * acc.magnitude(),
    ))
}

/// The split-point angle used for a given `t`.
pub fn default_rotation(t: f64) -> f64 {
    if t == 0.0 {
        0.0
    } else {
        t.signum() * (PI / 2.0 - 3.0 / t.abs()).max(0.0)
    }
}

/// Relative size below which omitted terms of the theta split are dropped.
const TRUNCATION_EXPONENT: f64 = 45.0;

/// `s (s - 1) G(s)` by the rotated theta split with angle `phi`.
pub fn epstein_lambda_rotated(s: Complex64, q: &QuadraticForm, phi: f64) -> Result<EvalResult> {
    if !(phi.abs() < PI / 2.0) {
        return Err(Error::InvalidArgument(format!("rotation must satisfy |phi| < pi/2, got {phi}")));
    }
    let scale = 2.0 * PI / (q.delta as f64).sqrt();
    let lambda_max =
        (TRUNCATION_EXPONENT + s.im.abs() * (PI / 2.0 - phi.abs()).max(0.0)) / phi.cos();
    let q_max = (lambda_max / scale).ceil() as i64;
    let rot = Complex64::from_polar(1.0, phi);
    let mut sum = NeumaierSum::new();
    let mut err = 0.0;
    for (k, r) in q.representation_counts(q_max) {
        let lambda = scale * k as f64;
        let ln_l = lambda.ln();
        let g1 = upper_incomplete_gamma(s, lambda * rot)?;
        let g2 = upper_incomplete_gamma(1.0 - s, lambda * rot.conj())?;
        let term = (-s * ln_l).exp() * g1.value + ((s - 1.0) * ln_l).exp() * g2.value;
        err += r as f64
            * ((-s * ln_l).exp().norm() * g1.abs_err + ((s - 1.0) * ln_l).exp().norm() * g2.abs_err);
        sum.add(r as f64 * term);
    }
    let i = Complex64::i();
    let boundary = s * (-i * phi * (1.0 - s)).exp() - (s - 1.0) * (i * phi * s).exp();
    let w = s * (s - 1.0);
    let value = boundary + w * sum.total();
    let magnitude = boundary.norm() + w.norm() * sum.magnitude();
    let abs_err = w.norm() * err + magnitude * (8.0 * f64::EPSILON + (-TRUNCATION_EXPONENT).exp());
    Ok(EvalResult::new(value, abs_err))
}

/// The entire completed function `Lambda(s) = s (s - 1) (sqrt(Delta) / 2 pi)^s Gamma(s) Z(s)`.
pub fn epstein_lambda(s: Complex64, q: &QuadraticForm) -> Result<EvalResult> {
    epstein_lambda_rotated(s, q, default_rotation(s.im))
}

/// `Z(s)` in the whole plane from the theta split; errors at the pole `s = 1`.
pub fn epstein_continued(s: Complex64, q: &QuadraticForm) -> Result<EvalResult> {
    epstein_from_lambda(s, q, epstein_lambda(s, q)?)
}

/// `Z(s) = Lambda(s) (2 pi / sqrt(Delta))^s / ((s - 1) Gamma(s + 1))`.
pub fn epstein_from_lambda(s: Complex64, q: &QuadraticForm, lambda: EvalResult) -> Result<EvalResult> {
    if (s - 1.0).norm() < 1e-12 {
        return Err(Error::Pole(s));
    }
    let scale = 2.0 * PI / (q.delta as f64).sqrt();
    let factor = (s * scale.ln()).exp() * recip_gamma(s + 1.0) / (s - 1.0);
    Ok(lambda.scale(factor, 8.0 * f64::EPSILON * (1.0 + s.norm())))
}

/// Relative residual `|Lambda(s) - Lambda(1-s)| / |Lambda(s)|`.
pub fn epstein_functional_residual(s: Complex64, q: &QuadraticForm) -> Result<f64> {
    let a = epstein_lambda(s, q)?.value;
    let b = epstein_lambda(1.0 - s, q)?.value;
    Ok((a - b).norm() / a.norm().max(1e-300))
}

/// Reduced primitive positive-definite forms of discriminant `-delta`:
/// `|b| <= a <= c`, with `b >= 0` when `|b| = a` or `a = c`.
pub fn reduced_forms(delta: u64) -> Result<Vec<QuadraticForm>> {
    if delta == 0 || !(delta % 4 == 0 || delta % 4 == 3) {
        return Err(Error::InvalidDiscriminant(delta));
    }
    let d = delta as i64;
    let mut out = Vec::new();
    let mut a = 1i64;
    // a <= sqrt(delta / 3) for reduced forms.
    while 3 * a * a <= d {
        for b in -a..=a {
            let num = b * b + d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a {
                continue;
            }
            if b < 0 && (-b == a || a == c) {
                continue;
            }
            if gcd3(a, b, c) != 1 {
                continue;
            }
            out.push(QuadraticForm::new(a, b, c)?);
        }
        a += 1;
    }
    Ok(out)
}

fn gcd3(a: i64, b: i64, c: i64) -> i64 {
    fn g(mut x: i64, mut y: i64) -> i64 {
        x = x.abs();
        y = y.abs();
        while y != 0 {
            (x, y) = (y, x % y);
        }
        x
    }
    g(g(a, b), c)
}

/// Number of reduced primitive forms of discriminant `-delta`.
pub fn class_number(delta: u64) -> Result<u64> {
    Ok(reduced_forms(delta)?.len() as u64)
}
