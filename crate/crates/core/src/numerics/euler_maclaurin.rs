use num_complex::Complex64;

use super::bernoulli::bernoulli_even;
use super::{EMParams, NeumaierSum};

/// Euler–Maclaurin evaluation of `sum_{n>=0} (n + a)^{-s}` split into the
/// part that is regular at `s = 1` and the tail point `x = N + a` that
/// carries the pole term `x^{1-s} / (s - 1)`.
#[derive(Debug, Clone, Copy)]
pub struct HurwitzParts {
    pub regular: Complex64,
    pub tail_point: f64,
    pub abs_err: f64,
}

impl HurwitzParts {
    /// The pole-carrying term `x^{1-s}/(s-1)`; infinite at `s = 1`.
    pub fn singular(&self, s: Complex64) -> Complex64 {
        ((1.0 - s) * self.tail_point.ln()).exp() / (s - 1.0)
    }
}

/// Direct terms `n = 0..N-1`, the half-term at `x = N + a`, and
/// `bernoulli_terms` derivative corrections.
pub fn hurwitz_em(s: Complex64, a: f64, params: EMParams) -> HurwitzParts {
    let n_cut = params.cutoff_n;
    let mut acc = NeumaierSum::new();
    for n in (0..n_cut).rev() {
        acc.add((-s * (n as f64 + a).ln()).exp());
    }
    let x = n_cut as f64 + a;
    let ln_x = x.ln();
    let x_pow = (-s * ln_x).exp();
    acc.add(0.5 * x_pow);

    // term_k = B_{2k}/(2k)! * s(s+1)...(s+2k-2) * x^{-s-2k+1}
    let mut rising = s; // s (s+1) ... (s + 2k - 2)
    let mut factorial = 2.0; // (2k)!
    let mut x_power = x_pow / x; // x^{-s-2k+1}
    let mut last = Complex64::new(0.0, 0.0);
    for k in 1..=params.bernoulli_terms + 1 {
        let term = bernoulli_even(k) / factorial * rising * x_power;
        if k <= params.bernoulli_terms {
            acc.add(term);
        } else {
            last = term;
        }
        let kk = 2.0 * k as f64;
        rising *= (s + (kk - 1.0)) * (s + kk);
        factorial *= (kk + 1.0) * (kk + 2.0);
        x_power /= x * x;
    }
    let abs_err = 2.0 * last.norm() + 8.0 * f64::EPSILON * acc.magnitude();
    HurwitzParts {
        regular: acc.total(),
        tail_point: x,
        abs_err,
    }
}
