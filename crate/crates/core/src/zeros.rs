//! Critical-line zeros as sign changes of the real function `F(t)`.
//!
//! Signs come from Hardy's `Z(t)`, which shares its sign with `F(t)` but does
//! not underflow at large `t`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::zeta::{hardy_z, ZeroList, ZeroSource};

/// Default sampling step for the sign scan.
pub const DEFAULT_STEP: f64 = 0.05;
/// Finer step used above `t = 100`, where zeros crowd together.
pub const HIGH_STEP: f64 = 0.02;
/// Largest count accepted by [`build_zero_list`].
pub const MAX_ZERO_COUNT: usize = 500;
/// Upper end of the search window for [`build_zero_list`].
pub const SCAN_LIMIT: f64 = 2048.0;
const INITIAL_WINDOW: f64 = 32.0;

/// A refined zero with the bracket it was isolated in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroRecord {
    pub index: usize,
    pub t: f64,
    pub bracket: (f64, f64),
    pub tol: f64,
}

/// Sign of a real function at a sample, or `None` when the magnitude lies
/// below its own error estimate.
pub type SignFn<'a> = dyn Fn(f64) -> Option<f64> + Sync + 'a;

/// Sign of `F(t)` from Hardy's function; `None` when indeterminate.
pub fn f_sign(t: f64) -> Option<f64> {
    let (z, err) = hardy_z(t);
    if z.abs() <= err || z == 0.0 {
        None
    } else {
        Some(z.signum())
    }
}

fn sample_points(t_lo: f64, t_hi: f64, step: f64) -> Vec<f64> {
    let n = ((t_hi - t_lo) / step).ceil() as usize;
    (0..=n)
        .map(|k| (t_lo + k as f64 * step).min(t_hi))
        .collect()
}

/// Turns sampled signs into brackets. Indeterminate samples are skipped, so
/// a bracket adjacent to one spans the extra step. `carry` is the last
/// determinate sample of a previous window.
fn brackets_from_samples(
    ts: &[f64],
    signs: &[Option<f64>],
    carry: &mut Option<(f64, f64)>,
) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for (&t, sign) in ts.iter().zip(signs) {
        let Some(sign) = *sign else { continue };
        if let Some((prev_t, prev_sign)) = *carry {
            if prev_sign != sign && prev_t < t {
                out.push((prev_t, t));
            }
        }
        *carry = Some((t, sign));
    }
    out
}

fn check_interval(t_lo: f64, t_hi: f64, step: f64) -> Result<()> {
    if !(t_lo >= 0.0 && t_lo < t_hi && t_hi.is_finite()) || !(step > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "scan needs 0 <= t_lo < t_hi and step > 0, got [{t_lo}, {t_hi}] step {step}"
        )));
    }
    Ok(())
}

/// Sign-change scan of an arbitrary real function. Samples are evaluated in
/// parallel; brackets are assembled in order, so the result is deterministic.
pub fn scan_with(t_lo: f64, t_hi: f64, step: f64, sign: &SignFn<'_>) -> Result<Vec<(f64, f64)>> {
    check_interval(t_lo, t_hi, step)?;
    let ts = sample_points(t_lo, t_hi, step);
    let signs: Vec<Option<f64>> = ts.par_iter().map(|&t| sign(t)).collect();
    Ok(brackets_from_samples(&ts, &signs, &mut None))
}

/// Brackets `(a, b)` across which `F` changes sign, sampled every `step`.
pub fn scan_sign_changes(t_lo: f64, t_hi: f64, step: f64) -> Result<Vec<(f64, f64)>> {
    scan_with(t_lo, t_hi, step, &f_sign)
}

/// Bisection of a sign-change bracket of an arbitrary real function.
pub fn refine_with(
    bracket: (f64, f64),
    tol: f64,
    index: usize,
    sign: &SignFn<'_>,
) -> Result<ZeroRecord> {
    let (mut lo, mut hi) = bracket;
    if !(tol > 0.0) || !(lo < hi) {
        return Err(Error::InvalidArgument(format!(
            "refinement needs lo < hi and tol > 0, got ({lo}, {hi}) tol {tol}"
        )));
    }
    let no_change = || Error::NoSignChange { lo: bracket.0, hi: bracket.1 };
    let s_lo = sign(lo).ok_or_else(no_change)?;
    let s_hi = sign(hi).ok_or_else(no_change)?;
    if s_lo == s_hi {
        return Err(no_change());
    }
    while hi - lo > 2.0 * tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        match sign(mid) {
            Some(s) if s == s_lo => lo = mid,
            Some(_) => hi = mid,
            // Inside the noise floor: the zero is here to working precision.
            None => {
                let half = tol.max(4.0 * f64::EPSILON * mid.abs());
                lo = lo.max(mid - half);
                hi = hi.min(mid + half);
                break;
            }
        }
    }
    Ok(ZeroRecord {
        index,
        t: 0.5 * (lo + hi),
        bracket: (lo, hi),
        tol,
    })
}

/// Refines a sign-change bracket of `F` to width at most `2 tol`.
pub fn refine_zero(bracket: (f64, f64), tol: f64) -> Result<ZeroRecord> {
    refine_with(bracket, tol, 1, &f_sign)
}

fn step_for(t: f64) -> f64 {
    if t <= 100.0 {
        DEFAULT_STEP
    } else {
        HIGH_STEP
    }
}

/// First `count` critical-line zero ordinates of zeta, each refined to `tol`.
///
/// The window grows geometrically from `[0, 32]` until enough sign changes
/// have been seen.
pub fn build_zero_list(count: usize, tol: f64) -> Result<ZeroList> {
    if count == 0 || count > MAX_ZERO_COUNT {
        return Err(Error::InvalidArgument(format!(
            "zero count must be in 1..={MAX_ZERO_COUNT}, got {count}"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let mut brackets = Vec::new();
    let mut carry = None;
    let mut lo = 0.0;
    let mut width = INITIAL_WINDOW;
    while brackets.len() < count {
        if lo >= SCAN_LIMIT {
            return Err(Error::ScanExhausted {
                found: brackets.len(),
                wanted: count,
                limit: SCAN_LIMIT,
            });
        }
        let hi = (lo + width).min(SCAN_LIMIT);
        let mut ts = Vec::new();
        let mut t = lo;
        while t < hi {
            ts.push(t);
            t += step_for(t);
        }
        ts.push(hi);
        let signs: Vec<Option<f64>> = ts.par_iter().map(|&t| f_sign(t)).collect();
        brackets.extend(brackets_from_samples(&ts, &signs, &mut carry));
        lo = hi;
        width *= 2.0;
    }
    brackets.truncate(count);
    let records: Vec<ZeroRecord> = brackets
        .par_iter()
        .enumerate()
        .map(|(k, &b)| refine_with(b, tol, k + 1, &f_sign))
        .collect::<Result<_>>()?;
    ZeroList::new(
        records.iter().map(|r| r.t).collect(),
        vec![tol; records.len()],
        ZeroSource::Computed,
    )
}
