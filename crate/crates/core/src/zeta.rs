//! Riemann zeta in the whole plane, the completed function
//! `Phi(s) = Gamma(s/2) pi^{-s/2} zeta(s)`, its real restriction `F(t)` to
//! the critical line, and truncated Hadamard-product reconstructions.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{
    complex_gamma, hurwitz_em, log_gamma, log_sin, near_nonpositive_integer, recip_gamma,
    EMParams, EvalResult,
};

const ZETA_POLE_TOLERANCE: f64 = 1e-12;

/// A point strictly inside the critical strip.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalStripPoint {
    sigma: f64,
    t: f64,
}

impl CriticalStripPoint {
    pub fn new(sigma: f64, t: f64) -> Result<Self> {
        if !(sigma > 0.0 && sigma < 1.0) || !t.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "critical strip needs 0 < sigma < 1, got sigma = {sigma}, t = {t}"
            )));
        }
        Ok(CriticalStripPoint { sigma, t })
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.sigma, self.t)
    }
}

fn check_zeta_pole(s: Complex64) -> Result<()> {
    if (s - 1.0).norm() < ZETA_POLE_TOLERANCE {
        Err(Error::Pole(s))
    } else {
        Ok(())
    }
}

/// Euler–Maclaurin evaluation with no reflection, valid wherever the
/// correction series is (comfortably `Re s > -20` with the default terms).
fn zeta_em(s: Complex64, params: EMParams) -> EvalResult {
    let parts = hurwitz_em(s, 1.0, params);
    let singular = parts.singular(s);
    EvalResult::new(
        parts.regular + singular,
        parts.abs_err + 4.0 * f64::EPSILON * singular.norm(),
    )
}

/// The reflection factor `2^s pi^{s-1} sin(pi s / 2) Gamma(1 - s)` with
/// `zeta(s) = chi(s) zeta(1 - s)`.
pub fn riemann_chi(s: Complex64) -> Result<EvalResult> {
    if near_nonpositive_integer(1.0 - s) {
        return Err(Error::Pole(s));
    }
    let half_pi_s = 0.5 * PI * s;
    if s.im.abs() < 100.0 {
        let gamma = complex_gamma(1.0 - s)?;
        let prefactor = (s * 2f64.ln()).exp() * ((s - 1.0) * PI.ln()).exp() * half_pi_s.sin();
        let rel = 8.0 * f64::EPSILON * (1.0 + s.norm());
        Ok(gamma.scale(prefactor, rel))
    } else {
        let lg = log_gamma(1.0 - s)?;
        let log_value = s * 2f64.ln() + (s - 1.0) * PI.ln() + log_sin(half_pi_s) + lg.value;
        let value = log_value.exp();
        let rel = lg.abs_err + 8.0 * f64::EPSILON * (1.0 + log_value.norm());
        Ok(EvalResult::new(value, rel * value.norm()))
    }
}

/// Riemann zeta.
///
/// `Re s >= 1/2` is evaluated by Euler–Maclaurin directly; `Re s < 1/2`
/// goes through the functional equation applied to `zeta(1 - s)`. The
/// `params` govern whichever Euler–Maclaurin evaluation is performed.
pub fn zeta(s: Complex64, params: EMParams) -> Result<EvalResult> {
    check_zeta_pole(s)?;
    // Near 0 the reflection would evaluate zeta at its pole; Euler–Maclaurin
    // is accurate there directly.
    if s.re >= 0.5 || s.norm() < 0.25 {
        Ok(zeta_em(s, params))
    } else {
        let reflected = zeta_em(1.0 - s, params);
        Ok(riemann_chi(s)?.mul(reflected))
    }
}

/// [`zeta`] with [`EMParams::for_point`] defaults.
pub fn zeta_auto(s: Complex64) -> Result<EvalResult> {
    let anchor = if s.re >= 0.5 || s.norm() < 0.25 { s } else { 1.0 - s };
    zeta(s, EMParams::for_point(anchor))
}

/// `|LHS - RHS| / max(|LHS|, 1)` for `zeta(s) = chi(s) zeta(1 - s)`, with
/// both zeta values taken from the Euler–Maclaurin series directly.
pub fn functional_equation_residual(s: Complex64) -> Result<f64> {
    check_zeta_pole(s)?;
    check_zeta_pole(1.0 - s)?;
    let lhs = zeta_em(s, EMParams::for_point(s));
    let rhs = riemann_chi(s)?.mul(zeta_em(1.0 - s, EMParams::for_point(1.0 - s)));
    Ok((lhs.value - rhs.value).norm() / lhs.value.norm().max(1.0))
}

/// `Gamma(s/2) pi^{-s/2}` as a logarithm; errors at the Gamma poles.
fn log_gamma_factor(s: Complex64) -> Result<EvalResult> {
    let lg = log_gamma(0.5 * s)?;
    let value = lg.value - 0.5 * s * PI.ln();
    Ok(EvalResult::new(
        value,
        lg.abs_err + 4.0 * f64::EPSILON * value.norm(),
    ))
}

/// The completed function `Phi(s) = Gamma(s/2) pi^{-s/2} zeta(s)`.
pub fn phi(s: Complex64) -> Result<EvalResult> {
    check_zeta_pole(s)?;
    let factor = log_gamma_factor(s)?;
    let z = zeta_auto(s)?;
    let gamma_part = factor.value.exp();
    Ok(z.scale(gamma_part, factor.abs_err))
}

/// `F(t) = Phi(1/2 + it)`, real up to rounding.
pub fn big_f(t: f64) -> EvalResult {
    // Never a pole on the critical line.
    phi(Complex64::new(0.5, t)).expect("Phi is regular on the critical line")
}

/// `|Im v| / |v|`, the realness defect of an evaluation.
pub fn realness_defect(r: &EvalResult) -> f64 {
    r.value.im.abs() / r.value.norm().max(1e-300)
}

/// Riemann–Siegel theta `arg Gamma(1/4 + it/2) - (t/2) ln pi`, continuous.
pub fn riemann_siegel_theta(t: f64) -> f64 {
    let lg = log_gamma(Complex64::new(0.25, 0.5 * t)).expect("no pole on Re = 1/4");
    lg.value.im - 0.5 * t * PI.ln()
}

/// Hardy's function `Z(t) = e^{i theta(t)} zeta(1/2 + it)` with an absolute
/// error estimate. `F(t)` is `Z(t)` times the positive factor
/// `|Gamma(1/4 + it/2)| pi^{-1/4}`, so the two share their sign.
pub fn hardy_z(t: f64) -> (f64, f64) {
    let s = Complex64::new(0.5, t);
    let z = zeta_em(s, EMParams::for_point(s));
    let rotated = Complex64::from_polar(1.0, riemann_siegel_theta(t)) * z.value;
    let theta_err = 8.0 * f64::EPSILON * (t.abs() * (t.abs() + 2.0).ln() + 1.0);
    (rotated.re, z.abs_err + theta_err * z.value.norm())
}

/// `F(t)` as sign and log-magnitude, usable where `F` itself underflows.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignedLog {
    /// -1, 0 or +1.
    pub sign: f64,
    pub ln_abs: f64,
    /// `|F|` lies below its own error estimate, so the sign is unreliable.
    pub indeterminate: bool,
}

pub fn big_f_signed(t: f64) -> SignedLog {
    let (z, err) = hardy_z(t);
    let lg = log_gamma(Complex64::new(0.25, 0.5 * t)).expect("no pole on Re = 1/4");
    let ln_scale = lg.value.re - 0.25 * PI.ln();
    SignedLog {
        sign: if z > 0.0 {
            1.0
        } else if z < 0.0 {
            -1.0
        } else {
            0.0
        },
        ln_abs: z.abs().ln() + ln_scale,
        indeterminate: z.abs() <= err,
    }
}

/// Where a [`ZeroList`] came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroSource {
    Computed,
    Loaded,
}

/// Ordinates `0 < tau_1 < tau_2 < …` of critical-line zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroList {
    ordinates: Vec<f64>,
    tolerances: Vec<f64>,
    source: ZeroSource,
}

impl ZeroList {
    pub fn new(ordinates: Vec<f64>, tolerances: Vec<f64>, source: ZeroSource) -> Result<Self> {
        if ordinates.len() != tolerances.len() {
            return Err(Error::InvalidArgument(
                "ordinate and tolerance counts differ".into(),
            ));
        }
        for (k, &tau) in ordinates.iter().enumerate() {
            if !(tau > 1.0) || !tau.is_finite() {
                return Err(Error::InvalidArgument(format!(
                    "zero ordinate {tau} at position {} is not > 1",
                    k + 1
                )));
            }
            if k > 0 && !(tau > ordinates[k - 1]) {
                return Err(Error::InvalidArgument(format!(
                    "zero ordinates not strictly increasing at position {}",
                    k + 1
                )));
            }
        }
        if let Some(tol) = tolerances.iter().find(|t| !(**t > 0.0)) {
            return Err(Error::InvalidArgument(format!("non-positive tolerance {tol}")));
        }
        Ok(ZeroList {
            ordinates,
            tolerances,
            source,
        })
    }

    pub fn ordinates(&self) -> &[f64] {
        &self.ordinates
    }

    pub fn tolerances(&self) -> &[f64] {
        &self.tolerances
    }

    pub fn source(&self) -> ZeroSource {
        self.source
    }

    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }

    /// Serialized form: `index<TAB>ordinate<TAB>tolerance` per line.
    pub fn to_text(&self) -> String {
        let mut out = String::from("# index\tordinate\ttolerance\n");
        for (k, (tau, tol)) in self.ordinates.iter().zip(&self.tolerances).enumerate() {
            let _ = writeln!(out, "{}\t{}\t{}", k + 1, tau, tol);
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut ordinates = Vec::new();
        let mut tolerances = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.starts_with('#') || line.trim().is_empty() {
                continue;
            }
            let parse_err = |message: String| Error::Parse {
                line: lineno + 1,
                message,
            };
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 3 {
                return Err(parse_err(format!("expected 3 tab-separated fields, got {}", fields.len())));
            }
            let index: usize = fields[0]
                .trim()
                .parse()
                .map_err(|_| parse_err(format!("bad index {:?}", fields[0])))?;
            if index != ordinates.len() + 1 {
                return Err(parse_err(format!(
                    "index {index} out of sequence (expected {})",
                    ordinates.len() + 1
                )));
            }
            let tau: f64 = fields[1]
                .trim()
                .parse()
                .map_err(|_| parse_err(format!("bad ordinate {:?}", fields[1])))?;
            let tol: f64 = fields[2]
                .trim()
                .parse()
                .map_err(|_| parse_err(format!("bad tolerance {:?}", fields[2])))?;
            ordinates.push(tau);
            tolerances.push(tol);
        }
        ZeroList::new(ordinates, tolerances, ZeroSource::Loaded)
    }

    pub fn read(path: &Path) -> Result<Self> {
        ZeroList::parse(&std::fs::read_to_string(path)?)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }

    fn take(&self, n_pairs: usize) -> Result<&[f64]> {
        if n_pairs > self.len() {
            return Err(Error::InsufficientZeros {
                requested: n_pairs,
                available: self.len(),
            });
        }
        Ok(&self.ordinates[..n_pairs])
    }
}

/// Relative size of the omitted factors `prod_{k > n} (1 - w / (1/4 + tau_k^2))`,
/// estimated from the zero density `log(T / 2 pi) / 2 pi`.
pub fn hadamard_tail_estimate(w: Complex64, last_ordinate: f64) -> f64 {
    let tail_sum = ((last_ordinate / (2.0 * PI)).ln().max(0.0) + 1.0) / (2.0 * PI * last_ordinate);
    w.norm() * tail_sum
}

/// Truncated Hadamard product
/// `zeta(s) = pi^{s/2} / (2 (s - 1) Gamma(1 + s/2)) prod_rho (1 - s/rho)`
/// over the first `n_pairs` ordinates, each conjugate pair combined into
/// the real quadratic factor `1 - s(1-s) / (1/4 + tau^2)`.
///
/// `abs_err` includes a density-based truncation estimate.
pub fn hadamard_zeta(s: Complex64, zeros: &ZeroList, n_pairs: usize) -> Result<EvalResult> {
    check_zeta_pole(s)?;
    let taus = zeros.take(n_pairs)?;
    let prefactor = (0.5 * s * PI.ln()).exp() * recip_gamma(1.0 + 0.5 * s) / (2.0 * (s - 1.0));
    let w = s * (1.0 - s);
    let product = taus.iter().fold(Complex64::new(1.0, 0.0), |acc, &tau| {
        let m = 0.25 + tau * tau;
        acc * ((m - w) / m)
    });
    let value = prefactor * product;
    let tail = taus
        .last()
        .map(|&t| hadamard_tail_estimate(w, t))
        .unwrap_or(0.0);
    let abs_err = value.norm() * (tail + 8.0 * f64::EPSILON * (n_pairs as f64 + 4.0));
    Ok(EvalResult::new(value, abs_err))
}

/// `B(t) = prod_rho (1 - (1/2 + it)/rho)` truncated to `n_pairs`
/// conjugate pairs, multiplied out in complex arithmetic.
pub fn b_product(t: f64, zeros: &ZeroList, n_pairs: usize) -> Result<EvalResult> {
    let taus = zeros.take(n_pairs)?;
    let s = Complex64::new(0.5, t);
    let product = taus.iter().fold(Complex64::new(1.0, 0.0), |acc, &tau| {
        let rho = Complex64::new(0.5, tau);
        acc * (1.0 - s / rho) * (1.0 - s / rho.conj())
    });
    let tail = taus
        .last()
        .map(|&last| hadamard_tail_estimate(Complex64::new(0.25 + t * t, 0.0), last))
        .unwrap_or(0.0);
    let abs_err = product.norm() * (tail + 16.0 * f64::EPSILON * (n_pairs as f64 + 1.0));
    Ok(EvalResult::new(product, abs_err))
}

/// Real closed form of the paired product: `prod (tau^2 - t^2) / (1/4 + tau^2)`.
pub fn b_product_closed_form(t: f64, zeros: &ZeroList, n_pairs: usize) -> Result<f64> {
    let taus = zeros.take(n_pairs)?;
    Ok(taus
        .iter()
        .map(|&tau| (tau * tau - t * t) / (0.25 + tau * tau))
        .product())
}

/// `-B(t) / (1/4 + t^2)`, the product-side reconstruction of `F(t)`.
pub fn big_f_from_product(t: f64, zeros: &ZeroList, n_pairs: usize) -> Result<EvalResult> {
    let b = b_product(t, zeros, n_pairs)?;
    let d = 0.25 + t * t;
    Ok(b.scale(Complex64::new(-1.0 / d, 0.0), f64::EPSILON))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn first_zeros() -> ZeroList {
        // Ordinates located by this crate's own scan at tol 1e-12 are tested
        // in the integration suite; these literals only exercise the algebra.
        ZeroList::new(
            vec![14.134725141734693, 21.022039638771555, 25.010857580145688],
            vec![1e-12; 3],
            ZeroSource::Loaded,
        )
        .unwrap()
    }

    #[test]
    fn trivial_zero_and_pole() {
        let z = zeta_auto(c(-2.0, 0.0)).unwrap();
        assert!(z.value.norm() < 1e-10);
        assert!(matches!(zeta_auto(c(1.0, 0.0)), Err(Error::Pole(_))));
    }

    #[test]
    fn phi_poles() {
        assert!(phi(c(0.0, 0.0)).is_err());
        assert!(phi(c(1.0, 0.0)).is_err());
        assert!(phi(c(-4.0, 0.0)).is_err());
        assert!(phi(c(-3.0, 0.0)).is_ok());
    }

    #[test]
    fn big_f_even_and_real() {
        let a = big_f(7.5);
        let b = big_f(-7.5);
        assert!((a.value - b.value).norm() < 1e-12 * a.value.norm());
        assert!(big_f(0.0).value.im.abs() < 1e-12);
    }

    #[test]
    fn hadamard_at_origin_is_minus_half() {
        let zl = first_zeros();
        for n in 0..=3 {
            let v = hadamard_zeta(c(0.0, 0.0), &zl, n).unwrap();
            assert!((v.value - c(-0.5, 0.0)).norm() < 1e-14);
        }
        assert!(matches!(
            hadamard_zeta(c(2.0, 0.0), &zl, 4),
            Err(Error::InsufficientZeros { requested: 4, available: 3 })
        ));
    }

    #[test]
    fn hadamard_trivial_zero() {
        let zl = first_zeros();
        let v = hadamard_zeta(c(-2.0, 0.0), &zl, 3).unwrap();
        assert_eq!(v.value, c(0.0, 0.0));
    }

    #[test]
    fn pair_product_matches_closed_form() {
        let zl = first_zeros();
        for &t in &[0.0, 3.0, 14.0, 30.0] {
            let b = b_product(t, &zl, 3).unwrap();
            let closed = b_product_closed_form(t, &zl, 3).unwrap();
            assert!((b.value.re - closed).abs() < 1e-12 * closed.abs().max(1.0));
            assert!(b.value.im.abs() <= b.abs_err);
        }
    }

    #[test]
    fn zero_list_rejects_bad_input() {
        assert!(ZeroList::new(vec![0.5], vec![1e-9], ZeroSource::Loaded).is_err());
        assert!(ZeroList::new(vec![14.0, 13.0], vec![1e-9; 2], ZeroSource::Loaded).is_err());
        assert!(ZeroList::new(vec![14.0, 14.0], vec![1e-9; 2], ZeroSource::Loaded).is_err());
        assert!(ZeroList::new(vec![14.0], vec![0.0], ZeroSource::Loaded).is_err());
    }

    #[test]
    fn zero_list_text_round_trip() {
        let zl = first_zeros();
        let text = zl.to_text();
        assert!(text.starts_with('#'));
        assert!(text.contains("1\t14.134725141734693\t0.000000000001\n"));
        let back = ZeroList::parse(&text).unwrap();
        assert_eq!(back.ordinates(), zl.ordinates());
        assert_eq!(back.source(), ZeroSource::Loaded);
    }

    #[test]
    fn zero_list_parse_errors_name_the_line() {
        let err = ZeroList::parse("# c\n1\t14.1\t1e-9\n3\t21.0\t1e-9\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        let err = ZeroList::parse("1\tabc\t1e-9\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn critical_strip_point_bounds() {
        assert!(CriticalStripPoint::new(0.0, 1.0).is_err());
        assert!(CriticalStripPoint::new(1.0, 1.0).is_err());
        let p = CriticalStripPoint::new(0.5, 3.0).unwrap();
        assert_eq!(p.to_complex(), c(0.5, 3.0));
    }
}
