//! Off-line zeros of `Z` by the argument principle applied to the entire
//! function `Lambda`, whose zeros are exactly the nontrivial zeros of `Z`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::{epstein_from_lambda, epstein_lambda, QuadraticForm};
use crate::error::{Error, Result};

/// Axis-aligned search rectangle in the `s` plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RectangleRegion {
    pub sigma_lo: f64,
    pub sigma_hi: f64,
    pub t_lo: f64,
    pub t_hi: f64,
}

impl RectangleRegion {
    pub fn new(sigma_lo: f64, sigma_hi: f64, t_lo: f64, t_hi: f64) -> Result<Self> {
        let finite = [sigma_lo, sigma_hi, t_lo, t_hi].iter().all(|x| x.is_finite());
        if !finite || !(sigma_lo < sigma_hi) || !(t_lo < t_hi) {
            return Err(Error::InvalidArgument(format!(
                "degenerate rectangle [{sigma_lo}, {sigma_hi}] x [{t_lo}, {t_hi}]"
            )));
        }
        Ok(RectangleRegion { sigma_lo, sigma_hi, t_lo, t_hi })
    }

    pub fn contains(&self, s: Complex64) -> bool {
        s.re >= self.sigma_lo && s.re <= self.sigma_hi && s.im >= self.t_lo && s.im <= self.t_hi
    }

    fn grown(&self, by: f64) -> RectangleRegion {
        RectangleRegion {
            sigma_lo: self.sigma_lo - by,
            sigma_hi: self.sigma_hi + by,
            t_lo: self.t_lo - by,
            t_hi: self.t_hi + by,
        }
    }

    fn width(&self) -> f64 {
        self.sigma_hi - self.sigma_lo
    }

    fn height(&self) -> f64 {
        self.t_hi - self.t_lo
    }

    fn center(&self) -> Complex64 {
        Complex64::new(
            0.5 * (self.sigma_lo + self.sigma_hi),
            0.5 * (self.t_lo + self.t_hi),
        )
    }

    /// Counter-clockwise boundary samples, each side split into pieces no
    /// longer than `step`. The last corner is not repeated.
    fn boundary(&self, step: f64) -> Vec<Complex64> {
        let corners = [
            Complex64::new(self.sigma_lo, self.t_lo),
            Complex64::new(self.sigma_hi, self.t_lo),
            Complex64::new(self.sigma_hi, self.t_hi),
            Complex64::new(self.sigma_lo, self.t_hi),
        ];
        let mut out = Vec::new();
        for k in 0..4 {
            let (a, b) = (corners[k], corners[(k + 1) % 4]);
            let n = ((b - a).norm() / step).ceil().max(1.0) as usize;
            for i in 0..n {
                out.push(a + (b - a) * (i as f64 / n as f64));
            }
        }
        out
    }
}

/// A zero located by Newton iteration, with the residual `|Z|` there.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RefinedZero {
    pub s: Complex64,
    pub abs_z: f64,
}

/// Outcome of a rectangle search.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZeroSearchReport {
    pub form: QuadraticForm,
    /// Rectangle actually integrated over; differs from the request only
    /// after re-jittering away from a near-zero on the boundary.
    pub region: RectangleRegion,
    pub winding: i64,
    pub boundary_points: usize,
    pub zeros: Vec<RefinedZero>,
}

const REFINEMENT_ROUNDS: usize = 2;
const MAX_JITTERS: usize = 3;
/// Boundary samples with `|Lambda|` below this fraction of the boundary
/// maximum trigger a re-jitter.
const NEAR_ZERO_FRACTION: f64 = 1e-8;

fn lambda_values(q: &QuadraticForm, pts: &[Complex64]) -> Result<Vec<Complex64>> {
    pts.par_iter()
        .map(|&s| epstein_lambda(s, q).map(|r| r.value))
        .collect()
}

enum Winding {
    Count(i64, usize),
    NearZero,
}

/// Argument-principle winding of `Lambda` around the rectangle.
fn winding(q: &QuadraticForm, region: &RectangleRegion, step: f64) -> Result<Winding> {
    let mut pts = region.boundary(step);
    let mut vals = lambda_values(q, &pts)?;
    for round in 0..=REFINEMENT_ROUNDS {
        let max = vals.iter().map(|v| v.norm()).fold(0.0, f64::max);
        if vals.iter().any(|v| v.norm() < NEAR_ZERO_FRACTION * max) {
            return Ok(Winding::NearZero);
        }
        let n = pts.len();
        let jumps: Vec<f64> = (0..n).map(|k| (vals[(k + 1) % n] / vals[k]).arg()).collect();
        let worst = jumps.iter().fold(0.0f64, |m, j| m.max(j.abs()));
        if worst < PI / 2.0 {
            let total: f64 = jumps.iter().sum();
            return Ok(Winding::Count((total / (2.0 * PI)).round() as i64, n));
        }
        if round == REFINEMENT_ROUNDS {
            return Err(Error::BoundaryTooCoarse { jump: worst });
        }
        // Halve every offending segment.
        let mids: Vec<(usize, Complex64)> = (0..n)
            .filter(|&k| jumps[k].abs() >= PI / 2.0)
            .map(|k| (k, 0.5 * (pts[k] + pts[(k + 1) % n])))
            .collect();
        let mid_pts: Vec<Complex64> = mids.iter().map(|m| m.1).collect();
        let mid_vals = lambda_values(q, &mid_pts)?;
        let mut new_pts = Vec::with_capacity(n + mids.len());
        let mut new_vals = Vec::with_capacity(n + mids.len());
        let mut next = 0;
        for k in 0..n {
            new_pts.push(pts[k]);
            new_vals.push(vals[k]);
            if next < mids.len() && mids[next].0 == k {
                new_pts.push(mid_pts[next]);
                new_vals.push(mid_vals[next]);
                next += 1;
            }
        }
        pts = new_pts;
        vals = new_vals;
    }
    unreachable!("loop returns on its last round")
}

/// Winding with outward re-jitter when the boundary grazes a zero.
fn robust_winding(
    q: &QuadraticForm,
    region: &RectangleRegion,
    step: f64,
) -> Result<(RectangleRegion, i64, usize)> {
    let mut r = *region;
    for attempt in 0..=MAX_JITTERS {
        match winding(q, &r, step)? {
            Winding::Count(w, n) => return Ok((r, w, n)),
            Winding::NearZero if attempt < MAX_JITTERS => {
                r = r.grown(0.37 * step * (attempt + 1) as f64);
            }
            Winding::NearZero => break,
        }
    }
    Err(Error::InvalidArgument(format!(
        "boundary of [{}, {}] x [{}, {}] passes through a zero after re-jittering",
        r.sigma_lo, r.sigma_hi, r.t_lo, r.t_hi
    )))
}

fn split(region: &RectangleRegion, frac: f64) -> [RectangleRegion; 2] {
    let mut a = *region;
    let mut b = *region;
    if region.width() >= region.height() {
        let cut = region.sigma_lo + frac * region.width();
        a.sigma_hi = cut;
        b.sigma_lo = cut;
    } else {
        let cut = region.t_lo + frac * region.height();
        a.t_hi = cut;
        b.t_lo = cut;
    }
    [a, b]
}

/// Damped Newton on `Lambda` with a central-difference derivative.
fn newton(q: &QuadraticForm, start: Complex64) -> Result<Complex64> {
    let f = |s: Complex64| epstein_lambda(s, q).map(|r| r.value);
    let mut s = start;
    let mut fs = f(s)?;
    for _ in 0..60 {
        let h = 1e-6 * (1.0 + s.norm());
        let d = (f(s + h)? - f(s - h)?) / (2.0 * h);
        let step = fs / d;
        let mut damp = 1.0;
        let mut accepted = false;
        for _ in 0..12 {
            let cand = s - damp * step;
            let fc = f(cand)?;
            if fc.norm() < fs.norm() {
                s = cand;
                fs = fc;
                accepted = true;
                break;
            }
            damp *= 0.5;
        }
        if !accepted || (damp * step).norm() < 1e-15 * (1.0 + s.norm()) {
            break;
        }
    }
    Ok(s)
}

fn isolate(
    q: &QuadraticForm,
    region: RectangleRegion,
    count: i64,
    step: f64,
    depth: usize,
    out: &mut Vec<RectangleRegion>,
) -> Result<()> {
    if count <= 0 {
        return Ok(());
    }
    let small = region.width().max(region.height()) < 0.05;
    if (count == 1 && region.width().max(region.height()) < 0.5) || small || depth > 40 {
        out.push(region);
        return Ok(());
    }
    // Try a few cut positions in case a cut passes through a zero.
    for attempt in 0..4 {
        let frac = 0.5 + 0.0731 * attempt as f64;
        let halves = split(&region, frac);
        let sub_step = step.min(0.125 * region.width().min(region.height()).max(1e-3));
        let mut counts = Vec::with_capacity(2);
        let mut ok = true;
        for h in &halves {
            match winding(q, h, sub_step)? {
                Winding::Count(w, _) => counts.push(w),
                Winding::NearZero => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            for (h, w) in halves.iter().zip(counts) {
                isolate(q, *h, w, step, depth + 1, out)?;
            }
            return Ok(());
        }
    }
    out.push(region);
    Ok(())
}

/// Counts zeros of `Z` inside `region` by the winding of `Lambda` along a
/// boundary sampled every `grid_step`, then locates each one by recursive
/// bisection and Newton's method.
pub fn zero_search_rectangle(
    q: &QuadraticForm,
    region: &RectangleRegion,
    grid_step: f64,
) -> Result<ZeroSearchReport> {
    if !(grid_step > 0.0) {
        return Err(Error::InvalidArgument(format!("grid step must be positive, got {grid_step}")));
    }
    RectangleRegion::new(region.sigma_lo, region.sigma_hi, region.t_lo, region.t_hi)?;
    let (used, count, n) = robust_winding(q, region, grid_step)?;
    let mut cells = Vec::new();
    isolate(q, used, count, grid_step, 0, &mut cells)?;
    let mut zeros = Vec::with_capacity(cells.len());
    for cell in cells {
        let s = newton(q, cell.center())?;
        let lambda = epstein_lambda(s, q)?;
        let z = epstein_from_lambda(s, q, lambda)?;
        zeros.push(RefinedZero { s, abs_z: z.value.norm() });
    }
    zeros.sort_by(|a, b| a.s.im.total_cmp(&b.s.im).then(a.s.re.total_cmp(&b.s.re)));
    Ok(ZeroSearchReport {
        form: *q,
        region: used,
        winding: count,
        boundary_points: n,
        zeros,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degenerate_region_rejected() {
        assert!(RectangleRegion::new(0.6, 0.6, 0.0, 1.0).is_err());
        assert!(RectangleRegion::new(0.6, 0.9, 2.0, 1.0).is_err());
    }

    #[test]
    fn boundary_is_closed_loop() {
        let r = RectangleRegion::new(0.0, 1.0, 0.0, 2.0).unwrap();
        let pts = r.boundary(0.5);
        assert_eq!(pts.len(), 2 + 4 + 2 + 4);
        assert_eq!(pts[0], Complex64::new(0.0, 0.0));
    }
}
