use num_complex::Complex64;

/// Neumaier compensated accumulator for complex values.
///
/// Real and imaginary parts are compensated independently, so the result
/// depends only on the order of `add` calls.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    sum: Complex64,
    comp: Complex64,
    abs_total: f64,
}

#[inline]
fn neumaier_add(sum: &mut f64, comp: &mut f64, v: f64) {
    let t = *sum + v;
    if sum.abs() >= v.abs() {
        *comp += (*sum - t) + v;
    } else {
        *comp += (v - t) + *sum;
    }
    *sum = t;
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, v: Complex64) {
        neumaier_add(&mut self.sum.re, &mut self.comp.re, v.re);
        neumaier_add(&mut self.sum.im, &mut self.comp.im, v.im);
        self.abs_total += v.norm();
    }

    pub fn total(&self) -> Complex64 {
        self.sum + self.comp
    }

    /// Sum of the magnitudes of everything added; scales rounding estimates.
    pub fn magnitude(&self) -> f64 {
        self.abs_total
    }
}

impl Extend<Complex64> for NeumaierSum {
    fn extend<I: IntoIterator<Item = Complex64>>(&mut self, iter: I) {
        for v in iter {
            self.add(v);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensates_cancellation() {
        let mut acc = NeumaierSum::new();
        acc.add(Complex64::new(1.0, 1e100));
        acc.add(Complex64::new(1e100, 1.0));
        acc.add(Complex64::new(1.0, -1e100));
        acc.add(Complex64::new(-1e100, 1.0));
        assert_eq!(acc.total(), Complex64::new(2.0, 2.0));
    }

    #[test]
    fn harmonic_partial_sum_is_order_insensitive_to_rounding() {
        let mut forward = NeumaierSum::new();
        let mut backward = NeumaierSum::new();
        for n in 1..=100_000 {
            forward.add(Complex64::new(1.0 / n as f64, 0.0));
        }
        for n in (1..=100_000).rev() {
            backward.add(Complex64::new(1.0 / n as f64, 0.0));
        }
        assert!((forward.total() - backward.total()).norm() < 1e-14);
    }
}
