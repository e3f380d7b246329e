//! Quadruples of hypothetical off-line zeros, the closed-form arctangent
//! phase term, its direct complex-arithmetic counterpart, and the two
//! denominators `D(sigma, tau)` and `z(sigma, tau, t)`.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// Zeros `sigma ± i tau` and `1 - sigma ± i tau` with `0 < sigma < 1/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadrupleHypothesis {
    sigma: f64,
    tau: f64,
    alpha: f64,
}

impl QuadrupleHypothesis {
    pub fn new(sigma: f64, tau: f64) -> Result<Self> {
        if !(sigma > 0.0 && sigma < 0.5) || !(tau > 0.0) || !tau.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "quadruple needs 0 < sigma < 1/2 and tau > 0, got ({sigma}, {tau})"
            )));
        }
        let u = 0.5 - sigma;
        Ok(QuadrupleHypothesis {
            sigma,
            tau,
            alpha: u * u,
        })
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// `(1/2 - sigma)^2`.
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn zeros(&self) -> [Complex64; 4] {
        let (s, t) = (self.sigma, self.tau);
        [
            Complex64::new(s, t),
            Complex64::new(1.0 - s, -t),
            Complex64::new(s, -t),
            Complex64::new(1.0 - s, t),
        ]
    }

    /// The ordinate where the numerator factor `t^2 - tau^2 - alpha` vanishes.
    pub fn t0(&self) -> f64 {
        (self.tau * self.tau + self.alpha).sqrt()
    }
}

/// Which power of `t` multiplies `3 alpha` in the phase-term denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Variant {
    /// `3 t^3`, literally as printed.
    AsPrinted,
    /// `3 t^2`, the degree-consistent reading.
    TSquared,
}

impl Variant {
    pub const ALL: [Variant; 2] = [Variant::AsPrinted, Variant::TSquared];

    pub fn power(self) -> i32 {
        match self {
            Variant::AsPrinted => 3,
            Variant::TSquared => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Variant::AsPrinted => "as-printed",
            Variant::TSquared => "t-squared",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "as-printed" => Ok(Variant::AsPrinted),
            "t-squared" => Ok(Variant::TSquared),
            other => Err(Error::InvalidArgument(format!(
                "unknown variant {other:?} (expected as-printed or t-squared)"
            ))),
        }
    }
}

/// `prod_i (1 - (1/2 + it) / rho_i)` over the quadruple, multiplied out.
pub fn quadruple_factor_product(t: f64, h: &QuadrupleHypothesis) -> Complex64 {
    let s = Complex64::new(0.5, t);
    h.zeros()
        .iter()
        .fold(Complex64::new(1.0, 0.0), |acc, rho| acc * (1.0 - s / rho))
}

/// `z(sigma, tau, t) = (t^2 + tau^2)^2 + alpha (alpha - 3 t^k - tau^2)`.
pub fn z_denominator(sigma: f64, tau: f64, t: f64, variant: Variant) -> f64 {
    let u = 0.5 - sigma;
    let alpha = u * u;
    let r = t * t + tau * tau;
    r * r + alpha * (alpha - 3.0 * t.powi(variant.power()) - tau * tau)
}

/// Analytic `(dz/dsigma, dz/dtau, dz/dt)`.
pub fn z_gradient(sigma: f64, tau: f64, t: f64, variant: Variant) -> [f64; 3] {
    let k = variant.power();
    let u = 0.5 - sigma;
    let alpha = u * u;
    let r = t * t + tau * tau;
    let tk = t.powi(k);
    [
        (2.0 * alpha - 3.0 * tk - tau * tau) * (-2.0 * u),
        4.0 * tau * r - 2.0 * alpha * tau,
        4.0 * t * r - 3.0 * k as f64 * alpha * t.powi(k - 1),
    ]
}

/// The closed-form phase term: a single-argument arctangent of the printed
/// quotient, principal branch.
pub fn paper_phase_term(t: f64, h: &QuadrupleHypothesis, variant: Variant) -> Result<f64> {
    let (sigma, tau, alpha) = (h.sigma, h.tau, h.alpha);
    let den = z_denominator(sigma, tau, t, variant);
    let r = t * t + tau * tau;
    if den.abs() < 1e-14 * r * r {
        return Err(Error::DenominatorZero { sigma, tau, t });
    }
    let num = 2.0 * t * (1.0 - 2.0 * sigma) * (t * t - tau * tau - alpha);
    Ok((num / den).atan())
}

/// Sum of [`paper_phase_term`] over the hypotheses.
pub fn phase_sum(t: f64, hs: &[QuadrupleHypothesis], variant: Variant) -> Result<f64> {
    hs.iter().map(|h| paper_phase_term(t, h, variant)).sum()
}

/// `arg prod_h quadruple_factor_product(t, h)`, the companion of [`phase_sum`].
pub fn direct_phase(t: f64, hs: &[QuadrupleHypothesis]) -> f64 {
    hs.iter()
        .fold(Complex64::new(1.0, 0.0), |acc, h| acc * quadruple_factor_product(t, h))
        .arg()
}

/// `min_{k in -2..=2} |a - b - k pi|`.
pub fn residual_mod_pi(a: f64, b: f64) -> f64 {
    (-2..=2)
        .map(|k| (a - b - k as f64 * PI).abs())
        .fold(f64::INFINITY, f64::min)
}

/// `D(sigma, tau) = sigma^4 + sigma^2 (1 - 2 sigma + 2 tau^2) + tau^2 (1 - 2 sigma) + tau^4`.
pub fn d_denominator(sigma: f64, tau: f64) -> f64 {
    let s2 = sigma * sigma;
    let t2 = tau * tau;
    s2 * s2 + s2 * (1.0 - 2.0 * sigma + 2.0 * t2) + t2 * (1.0 - 2.0 * sigma) + t2 * t2
}

/// Analytic `(dD/dsigma, dD/dtau)`.
pub fn d_gradient(sigma: f64, tau: f64) -> [f64; 2] {
    let s2 = sigma * sigma;
    let t2 = tau * tau;
    [
        4.0 * s2 * sigma + 2.0 * sigma * (1.0 - 2.0 * sigma + 2.0 * t2) - 2.0 * s2 - 2.0 * t2,
        4.0 * s2 * tau + 2.0 * tau * (1.0 - 2.0 * sigma) + 4.0 * t2 * tau,
    ]
}

/// Finite-difference step for the critical-point scans.
pub const FD_STEP: f64 = 1e-5;

fn central<F: Fn(f64) -> f64>(f: F, x: f64) -> f64 {
    (f(x + FD_STEP) - f(x - FD_STEP)) / (2.0 * FD_STEP)
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Discrepancy between two gradients, relative to the analytic one with a
/// floor of 1.
fn gradient_discrepancy(fd: &[f64], analytic: &[f64]) -> f64 {
    let diff: Vec<f64> = fd.iter().zip(analytic).map(|(a, b)| a - b).collect();
    norm(&diff) / norm(analytic).max(1.0)
}

/// Regular grid `start, start + step, …` up to and including `end`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Axis {
    pub start: f64,
    pub end: f64,
    pub step: f64,
}

impl Axis {
    pub fn new(start: f64, end: f64, step: f64) -> Result<Self> {
        if !(step > 0.0) || !(start <= end) {
            return Err(Error::InvalidArgument(format!(
                "bad axis [{start}, {end}] step {step}"
            )));
        }
        Ok(Axis { start, end, step })
    }

    pub fn points(&self) -> Vec<f64> {
        let n = ((self.end - self.start) / self.step + 1e-9).floor() as usize;
        (0..=n).map(|k| self.start + k as f64 * self.step).collect()
    }
}

/// Scan resolution; `t` is only used for `z`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanGrid {
    pub sigma: Axis,
    pub tau: Axis,
    pub t: Axis,
}

impl Default for ScanGrid {
    fn default() -> Self {
        ScanGrid {
            sigma: Axis { start: 0.005, end: 0.995, step: 0.01 },
            tau: Axis { start: 0.1, end: 50.0, step: 0.1 },
            t: Axis { start: 0.1, end: 50.0, step: 0.1 },
        }
    }
}

/// Which denominator to scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Denominator {
    D,
    Z(Variant),
}

/// Grid-scan evidence about critical points of a denominator.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriticalPointReport {
    pub function: String,
    pub points: usize,
    /// Smallest finite-difference gradient norm and where it occurs.
    pub min_gradient_norm: f64,
    pub min_gradient_at: Vec<f64>,
    /// Smallest `|f|` and where it occurs.
    pub min_abs_value: f64,
    pub min_abs_value_at: Vec<f64>,
    /// Largest finite-difference vs analytic gradient discrepancy.
    pub max_gradient_discrepancy: f64,
}

#[derive(Clone)]
struct Acc {
    points: usize,
    grad: (f64, Vec<f64>),
    value: (f64, Vec<f64>),
    discrepancy: f64,
}

impl Acc {
    fn empty() -> Self {
        Acc {
            points: 0,
            grad: (f64::INFINITY, Vec::new()),
            value: (f64::INFINITY, Vec::new()),
            discrepancy: 0.0,
        }
    }

    fn push(mut self, at: &[f64], value: f64, fd: &[f64], analytic: &[f64]) -> Self {
        self.points += 1;
        let g = norm(fd);
        if g < self.grad.0 {
            self.grad = (g, at.to_vec());
        }
        if value.abs() < self.value.0 {
            self.value = (value.abs(), at.to_vec());
        }
        self.discrepancy = self.discrepancy.max(gradient_discrepancy(fd, analytic));
        self
    }

    // Ties resolve to the earlier grid point so the parallel reduction is
    // deterministic.
    fn merge(self, other: Acc) -> Acc {
        let pick = |a: (f64, Vec<f64>), b: (f64, Vec<f64>)| if b.0 < a.0 { b } else { a };
        Acc {
            points: self.points + other.points,
            grad: pick(self.grad, other.grad),
            value: pick(self.value, other.value),
            discrepancy: self.discrepancy.max(other.discrepancy),
        }
    }
}

/// Minimum gradient norm and minimum `|f|` of `D` or `z` over the grid,
/// with a finite-difference vs analytic gradient cross-check at every point.
pub fn critical_point_scan(f: Denominator, grid: &ScanGrid) -> CriticalPointReport {
    let sigmas = grid.sigma.points();
    let taus = grid.tau.points();
    let (name, acc) = match f {
        Denominator::D => {
            let acc = sigmas
                .par_iter()
                .map(|&s| {
                    taus.iter().fold(Acc::empty(), |acc, &tau| {
                        let fd = [
                            central(|x| d_denominator(x, tau), s),
                            central(|x| d_denominator(s, x), tau),
                        ];
                        acc.push(&[s, tau], d_denominator(s, tau), &fd, &d_gradient(s, tau))
                    })
                })
                .reduce(Acc::empty, Acc::merge);
            ("D".to_string(), acc)
        }
        Denominator::Z(variant) => {
            let ts = grid.t.points();
            let acc = sigmas
                .par_iter()
                .map(|&s| {
                    let mut acc = Acc::empty();
                    for &tau in &taus {
                        for &t in &ts {
                            let fd = [
                                central(|x| z_denominator(x, tau, t, variant), s),
                                central(|x| z_denominator(s, x, t, variant), tau),
                                central(|x| z_denominator(s, tau, x, variant), t),
                            ];
                            acc = acc.push(
                                &[s, tau, t],
                                z_denominator(s, tau, t, variant),
                                &fd,
                                &z_gradient(s, tau, t, variant),
                            );
                        }
                    }
                    acc
                })
                .reduce(Acc::empty, Acc::merge);
            (format!("z[{variant}]"), acc)
        }
    };
    CriticalPointReport {
        function: name,
        points: acc.points,
        min_gradient_norm: acc.grad.0,
        min_gradient_at: acc.grad.1,
        min_abs_value: acc.value.0,
        min_abs_value_at: acc.value.1,
        max_gradient_discrepancy: acc.discrepancy,
    }
}

/// One ledger row: a closed-form variant against the direct argument.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LedgerRecord {
    pub t: f64,
    pub sigma: f64,
    pub tau: f64,
    pub variant: Variant,
    /// `None` when the variant's denominator vanishes at this point.
    pub paper_term: Option<f64>,
    pub direct_arg: f64,
    pub residual_mod_pi: Option<f64>,
}

/// Every `(t, h, variant)` combination, ordered by `sigma`, `tau`, `t`,
/// then variant.
pub fn phase_ledger(hs: &[QuadrupleHypothesis], ts: &[f64]) -> Vec<LedgerRecord> {
    let mut out = Vec::with_capacity(hs.len() * ts.len() * 2);
    for h in hs {
        for &t in ts {
            let direct = quadruple_factor_product(t, h).arg();
            for variant in Variant::ALL {
                let term = paper_phase_term(t, h, variant).ok();
                out.push(LedgerRecord {
                    t,
                    sigma: h.sigma,
                    tau: h.tau,
                    variant,
                    paper_term: term,
                    direct_arg: direct,
                    residual_mod_pi: term.map(|p| residual_mod_pi(p, direct)),
                });
            }
        }
    }
    out
}

/// The standard audit grid: 20 values of `sigma` in `(0, 1/2)`, 20 of `tau`
/// in `(0, 50]`, and 20 samples of `t` in `[0, 47.5]`.
pub fn default_ledger_grid() -> (Vec<QuadrupleHypothesis>, Vec<f64>) {
    let mut hs = Vec::with_capacity(400);
    for i in 0..20 {
        let sigma = 0.0125 + 0.025 * i as f64;
        for j in 1..=20 {
            let tau = 2.5 * j as f64;
            hs.push(QuadrupleHypothesis::new(sigma, tau).expect("grid lies in the domain"));
        }
    }
    let ts = (0..20).map(|k| 2.5 * k as f64).collect();
    (hs, ts)
}
