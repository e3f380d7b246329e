//! Dirichlet characters and their L-functions.

mod characters;

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

pub use characters::{
    character, enumerate_characters, factorize, root_of_unity, totient, CharacterDump,
    DirichletCharacter, MAX_MODULUS,
};

use crate::error::{Error, Result};
use crate::numerics::{expm1_over_z, hurwitz_em, log_gamma, EMParams, EvalResult, NeumaierSum};
use crate::zeros::{refine_with, scan_with};

const POLE_TOLERANCE: f64 = 1e-12;
/// Euler–Maclaurin with the default correction count is trusted down to here.
/// Left edge of the Hurwitz domain. Further left the Euler–Maclaurin terms
/// `N^{1-s}` cancel and double precision no longer reaches 1e-11.
const MIN_RE: f64 = -1.0;

fn check_domain(s: Complex64) -> Result<()> {
    if s.re < MIN_RE || !s.is_finite() {
        Err(Error::OutsideConvergence(s))
    } else {
        Ok(())
    }
}

fn em_params(s: Complex64) -> EMParams {
    if s.re >= 0.5 {
        EMParams::for_point(s)
    } else {
        // A short head keeps N^{1-s} small; more corrections restore the
        // truncation accuracy.
        let cutoff = ((1.3 * s.im.abs()).ceil() as usize).max(8);
        EMParams::new(cutoff, 20).expect("valid parameters")
    }
}

/// Hurwitz zeta `sum_{n>=0} (n + a)^{-s}` for `0 < a <= 1`, continued by
/// Euler–Maclaurin to `Re s >= -1`.
pub fn hurwitz_zeta(s: Complex64, a: f64) -> Result<EvalResult> {
    if !(a > 0.0 && a <= 1.0) {
        return Err(Error::InvalidArgument(format!("Hurwitz shift must lie in (0, 1], got {a}")));
    }
    if (s - 1.0).norm() < POLE_TOLERANCE {
        return Err(Error::Pole(s));
    }
    check_domain(s)?;
    let parts = hurwitz_em(s, a, em_params(s));
    let singular = parts.singular(s);
    Ok(EvalResult::new(
        parts.regular + singular,
        parts.abs_err + 4.0 * f64::EPSILON * singular.norm(),
    ))
}

/// `L(s, chi) = q^{-s} sum_a chi(a) zeta(s, a/q)`.
///
/// For non-principal characters the pole terms of the Hurwitz values cancel;
/// they are combined analytically so `s = 1` is evaluated without loss.
pub fn l_function(s: Complex64, chi: &DirichletCharacter) -> Result<EvalResult> {
    let q = chi.modulus();
    if chi.is_principal() && (s - 1.0).norm() < POLE_TOLERANCE {
        return Err(Error::Pole(s));
    }
    check_domain(s)?;
    let params = em_params(s);
    let qf = q as f64;
    let mut regular = NeumaierSum::new();
    let mut singular = NeumaierSum::new();
    let mut err = 0.0;
    for a in 1..=q {
        let c = chi.value(a as i64);
        if c == Complex64::new(0.0, 0.0) {
            continue;
        }
        let parts = hurwitz_em(s, a as f64 / qf, params);
        regular.add(c * parts.regular);
        err += parts.abs_err;
        let ln_x = parts.tail_point.ln();
        if chi.is_principal() {
            singular.add(c * parts.singular(s));
        } else {
            // x^{1-s}/(s-1) minus the common 1/(s-1), which sums to zero.
            singular.add(-c * ln_x * expm1_over_z((1.0 - s) * ln_x));
        }
    }
    let inner = regular.total() + singular.total();
    let scale = (-s * qf.ln()).exp();
    let magnitude = regular.magnitude() + singular.magnitude();
    Ok(EvalResult::new(
        scale * inner,
        scale.norm() * (err + 8.0 * f64::EPSILON * magnitude),
    ))
}

/// Gauss sum `tau(chi) = sqrt(q) e^{i theta}` in polar form, with
/// `theta'` defined by `i^a e^{-i theta} = e^{-i theta'}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaussSumPolar {
    pub magnitude: f64,
    pub theta: f64,
    pub theta_prime: f64,
}

impl GaussSumPolar {
    pub fn value(&self) -> Complex64 {
        Complex64::from_polar(self.magnitude, self.theta)
    }
}

/// Reduces an angle to `(-pi, pi]`.
pub fn normalize_angle(x: f64) -> f64 {
    let mut y = x.rem_euclid(2.0 * PI);
    if y > PI {
        y -= 2.0 * PI;
    }
    y
}

pub fn gauss_sum(chi: &DirichletCharacter) -> GaussSumPolar {
    let q = chi.modulus();
    let mut acc = NeumaierSum::new();
    for n in 1..=q {
        acc.add(chi.value(n as i64) * root_of_unity(n, q));
    }
    let tau = acc.total();
    let theta = tau.arg();
    GaussSumPolar {
        magnitude: tau.norm(),
        theta,
        theta_prime: normalize_angle(theta - chi.parity() as f64 * PI / 2.0),
    }
}

/// `Lambda(s, chi) = (q/pi)^{(s+a)/2} Gamma((s+a)/2) L(s, chi)`.
pub fn lambda_completed(s: Complex64, chi: &DirichletCharacter) -> Result<EvalResult> {
    let w = 0.5 * (s + chi.parity() as f64);
    let lg = log_gamma(w)?;
    let log_factor = w * (chi.modulus() as f64 / PI).ln() + lg.value;
    let l = l_function(s, chi)?;
    let rel = lg.abs_err + 4.0 * f64::EPSILON * (1.0 + log_factor.norm());
    Ok(l.scale(log_factor.exp(), rel))
}

fn require_primitive(chi: &DirichletCharacter) -> Result<()> {
    if chi.is_primitive() {
        Ok(())
    } else {
        Err(Error::NotPrimitive {
            q: chi.modulus(),
            label: chi.label(),
        })
    }
}

/// Relative residual of `Lambda(1 - s, conj chi) = (i^a sqrt(q) / tau(chi)) Lambda(s, chi)`.
pub fn functional_residual_l(s: Complex64, chi: &DirichletCharacter) -> Result<f64> {
    require_primitive(chi)?;
    let lhs = lambda_completed(1.0 - s, &chi.conjugate())?.value;
    let g = gauss_sum(chi);
    let root = Complex64::i().powu(chi.parity() as u32) * (chi.modulus() as f64).sqrt() / g.value();
    let rhs = root * lambda_completed(s, chi)?.value;
    Ok((lhs - rhs).norm() / lhs.norm().max(rhs.norm()).max(1e-300))
}

/// `F(t, chi) = Lambda(1/2 + it, chi) e^{-i theta'/2}`, real for primitive chi.
pub fn f_real_chi(t: f64, chi: &DirichletCharacter) -> Result<EvalResult> {
    require_primitive(chi)?;
    let rot = Complex64::from_polar(1.0, -0.5 * gauss_sum(chi).theta_prime);
    let lam = lambda_completed(Complex64::new(0.5, t), chi)?;
    Ok(lam.scale(rot, 4.0 * f64::EPSILON))
}

fn f_chi_sign(t: f64, chi: &DirichletCharacter) -> Option<f64> {
    let v = f_real_chi(t, chi).ok()?;
    let re = v.value.re;
    if re.abs() <= v.abs_err || re == 0.0 {
        None
    } else {
        Some(re.signum())
    }
}

/// Scan range and step for L-function zeros.
pub const L_ZERO_T_MAX: f64 = 50.0;
pub const L_ZERO_STEP: f64 = 0.05;

/// Ordinates of the first `count` critical-line zeros of `L(s, chi)`,
/// counting both half-lines and ordered by `|gamma|`.
pub fn l_zero_ordinates(chi: &DirichletCharacter, count: usize, tol: f64) -> Result<Vec<f64>> {
    require_primitive(chi)?;
    if count == 0 {
        return Ok(Vec::new());
    }
    let pos_sign = |t: f64| f_chi_sign(t, chi);
    let neg_sign = |t: f64| f_chi_sign(-t, chi);
    let mut zeros = Vec::new();
    for (sign_fn, orient) in [(&pos_sign as &(dyn Fn(f64) -> Option<f64> + Sync), 1.0), (&neg_sign, -1.0)] {
        // The origin is shared by both scans; start the negative side just
        // past it so a zero at t = 0 is not counted twice.
        let start = if orient > 0.0 { 0.0 } else { L_ZERO_STEP * 0.5 };
        for b in scan_with(start, L_ZERO_T_MAX, L_ZERO_STEP, sign_fn)? {
            zeros.push(orient * refine_with(b, tol, 1, sign_fn)?.t);
        }
    }
    zeros.sort_by(|a: &f64, b: &f64| a.abs().total_cmp(&b.abs()).then(a.total_cmp(b)));
    if zeros.len() < count {
        return Err(Error::ScanExhausted {
            found: zeros.len(),
            wanted: count,
            limit: L_ZERO_T_MAX,
        });
    }
    zeros.truncate(count);
    Ok(zeros)
}

/// Three independent evaluations of `L(s, chi_1)` for the principal
/// character.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PrincipalIdentityRecord {
    pub q: u64,
    pub s: Complex64,
    /// Hurwitz-based `L(s, chi_1)`.
    pub l_value: Complex64,
    /// `zeta(s) prod_{p | q} (1 - p^{-s})`.
    pub euler_value: Complex64,
    /// `q^{-s} [q^s + |p| - 1 - sum_p p^s] zeta(s)`.
    pub closed_form_value: Complex64,
    pub residual_euler: f64,
    pub residual_closed_form: f64,
    /// The closed form disagrees with `l_value` beyond the tolerance.
    pub finding: bool,
}

/// Compares the Hurwitz evaluation of `L(s, chi_1)` against the Euler
/// factor form and against the closed form built from the prime factors
/// `p < q` of `q`.
pub fn principal_identity_audit(s: Complex64, q: u64, tol: f64) -> Result<PrincipalIdentityRecord> {
    if !(2..=MAX_MODULUS).contains(&q) {
        return Err(Error::ModulusOutOfRange(q));
    }
    let chars = enumerate_characters(q)?;
    let principal = &chars[0];
    let l_value = l_function(s, principal)?.value;
    let zeta = hurwitz_zeta(s, 1.0)?.value;
    let primes: Vec<u64> = factorize(q).iter().map(|&(p, _)| p).collect();
    let p_pow = |p: u64| (s * (p as f64).ln()).exp();
    let euler_value = primes
        .iter()
        .fold(zeta, |acc, &p| acc * (1.0 - p_pow(p).inv()));
    let nontrivial: Vec<u64> = primes.iter().copied().filter(|&p| p < q).collect();
    let bracket = p_pow(q) + nontrivial.len() as f64 - 1.0
        - nontrivial.iter().map(|&p| p_pow(p)).sum::<Complex64>();
    let closed_form_value = bracket / p_pow(q) * zeta;
    let residual_euler = (l_value - euler_value).norm();
    let residual_closed_form = (l_value - closed_form_value).norm();
    Ok(PrincipalIdentityRecord {
        q,
        s,
        l_value,
        euler_value,
        closed_form_value,
        residual_euler,
        residual_closed_form,
        finding: residual_closed_form > tol,
    })
}

/// `Lambda'/Lambda(0, chi)` against its reconstruction from zeros.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BChiRecord {
    pub q: u64,
    pub label: u64,
    pub n_zeros: usize,
    /// Finite-difference `Lambda'/Lambda(0, chi)`.
    pub b_fd: Complex64,
    /// `-1/2 sum 1/(1/4 + gamma^2)` over the zeros used.
    pub b_reconstructed: f64,
    pub gap_total: f64,
    pub gap_real: f64,
    /// Size of the omitted tail of the zero sum, from the zero density.
    pub tail_estimate: f64,
    pub zeros: Vec<f64>,
}

/// Central-difference step for [`b_chi_audit`].
pub const B_CHI_STEP: f64 = 1e-5;

/// Logarithmic derivative at 0 by Richardson-extrapolated central
/// differences.
pub fn lambda_log_derivative_at_zero(chi: &DirichletCharacter) -> Result<Complex64> {
    let lam = |x: f64| lambda_completed(Complex64::new(x, 0.0), chi).map(|r| r.value);
    let d = |h: f64| -> Result<Complex64> { Ok((lam(h)? - lam(-h)?) / (2.0 * h)) };
    let deriv = (4.0 * d(0.5 * B_CHI_STEP)? - d(B_CHI_STEP)?) / 3.0;
    Ok(deriv / lam(0.0)?)
}

/// Compares `Lambda'/Lambda(0, chi)` with the zero-sum reconstruction over
/// the first `n_zeros` zeros (by `|gamma|`).
pub fn b_chi_audit(chi: &DirichletCharacter, n_zeros: usize) -> Result<BChiRecord> {
    require_primitive(chi)?;
    if chi.modulus() == 1 {
        return Err(Error::InvalidArgument(
            "Lambda has poles at 0 and 1 for the modulus-1 character".into(),
        ));
    }
    if l_function(Complex64::new(0.0, 0.0), chi)?.value.norm() < 1e-12 {
        return Err(Error::VanishingAtZero {
            q: chi.modulus(),
            label: chi.label(),
        });
    }
    let b_fd = lambda_log_derivative_at_zero(chi)?;
    let zeros = l_zero_ordinates(chi, n_zeros, 1e-10)?;
    let b_reconstructed = -0.5 * zeros.iter().map(|g| 1.0 / (0.25 + g * g)).sum::<f64>();
    let tail_estimate = match zeros.last() {
        Some(g) if g.abs() > 0.0 => {
            let t = g.abs();
            0.5 * ((chi.modulus() as f64 * t / (2.0 * PI)).ln().max(0.0) + 1.0) / (PI * t)
        }
        _ => f64::INFINITY,
    };
    Ok(BChiRecord {
        q: chi.modulus(),
        label: chi.label(),
        n_zeros,
        b_fd,
        b_reconstructed,
        gap_total: (b_fd - b_reconstructed).norm(),
        gap_real: (b_fd.re - b_reconstructed).abs(),
        tail_estimate,
        zeros,
    })
}

/// Functional-equation residuals for every primitive character modulo each
/// `q` in `moduli`, on the points `s`.
pub fn functional_residual_grid(moduli: &[u64], points: &[Complex64]) -> Result<Vec<(u64, u64, Complex64, f64)>> {
    let chars: Vec<DirichletCharacter> = moduli
        .iter()
        .map(|&q| enumerate_characters(q))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .filter(|c| c.is_primitive())
        .collect();
    let rows: Vec<Vec<(u64, u64, Complex64, f64)>> = chars
        .par_iter()
        .map(|c| {
            points
                .iter()
                .map(|&s| Ok((c.modulus(), c.label(), s, functional_residual_l(s, c)?)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(rows.into_iter().flatten().collect())
}
