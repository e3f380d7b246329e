use std::f64::consts::PI;

use critline::numerics::{
    bernoulli_numbers, complex_gamma, gauss_legendre, hurwitz_em, log_gamma, recip_gamma,
    upper_incomplete_gamma, NeumaierSum, BERNOULLI_TABLE_SIZE,
};
use critline::EMParams;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Exact Bernoulli numbers from `sum_{k<=m} C(m+1, k) B_k = 0`.
fn exact_bernoulli(max: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = vec![BigRational::one()];
    for m in 1..=max {
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one();
        for (k, bk) in b.iter().enumerate() {
            acc += BigRational::from_integer(binom.clone()) * bk;
            binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
    }
    b
}

#[test]
fn bernoulli_table_matches_exact_rationals() {
    let exact = exact_bernoulli(2 * (BERNOULLI_TABLE_SIZE - 1));
    let table = bernoulli_numbers(BERNOULLI_TABLE_SIZE).unwrap();
    for (k, &v) in table.iter().enumerate() {
        let want = exact[2 * k].to_f64().unwrap();
        assert!(
            ((v - want) / want).abs() < 1e-14,
            "B_{} = {v}, exact {want}",
            2 * k
        );
    }
    assert!(bernoulli_numbers(BERNOULLI_TABLE_SIZE + 1).is_err());
}

#[test]
fn gamma_known_values() {
    assert!((complex_gamma(c(5.0, 0.0)).unwrap().value - 24.0).norm() < 1e-12);
    let half = complex_gamma(c(0.5, 0.0)).unwrap().value;
    assert!((half - PI.sqrt()).norm() < 1e-14);
    // Reference value from an independent arbitrary-precision evaluation.
    let g = complex_gamma(c(0.3, 4.0)).unwrap().value;
    let want = c(0.001_164_643_684_811_490_6, 0.003_352_559_888_035_202_4);
    assert!((g - want).norm() / want.norm() < 1e-12);
    assert!(complex_gamma(c(-2.0, 0.0)).is_err());
    assert_eq!(recip_gamma(c(-3.0, 0.0)), c(0.0, 0.0));
}

proptest! {
    #[test]
    fn gamma_reflection(re in -4.5f64..4.5, im in -30.0f64..30.0) {
        let s = c(re, im);
        prop_assume!((s - s.re.round()).norm() > 1e-3);
        // Gamma(s) Gamma(1 - s) sin(pi s) = pi
        let prod = complex_gamma(s).unwrap().value
            * complex_gamma(1.0 - s).unwrap().value
            * (PI * s).sin();
        prop_assert!((prod - PI).norm() / PI < 1e-10, "s = {s}, product {prod}");
    }

    #[test]
    fn log_gamma_recurrence(re in 0.1f64..20.0, im in -200.0f64..200.0) {
        // log Gamma(s + 1) - log Gamma(s) = log s on the continuous branch.
        let s = c(re, im);
        let d = log_gamma(s + 1.0).unwrap().value - log_gamma(s).unwrap().value;
        prop_assert!((d - s.ln()).norm() < 1e-10, "s = {s}");
    }

    #[test]
    fn recip_gamma_is_inverse(re in -6.0f64..6.0, im in -10.0f64..10.0) {
        let s = c(re, im);
        prop_assume!((s - s.re.round()).norm() > 1e-2);
        let p = recip_gamma(s) * complex_gamma(s).unwrap().value;
        prop_assert!((p - 1.0).norm() < 1e-11);
    }
}

/// `Gamma(a, z)` for real `z > 0` by integrating `t^{a-1} e^{-t}` over
/// `[z, z + 60]` with composite Gauss-Legendre panels.
fn incomplete_gamma_quadrature(a: Complex64, z: f64) -> Complex64 {
    let (x, w) = gauss_legendre(20);
    let panels = 600;
    let h = 60.0 / panels as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    for p in 0..panels {
        let lo = z + p as f64 * h;
        for (xi, wi) in x.iter().zip(&w) {
            let t = lo + 0.5 * h * (xi + 1.0);
            sum += 0.5 * h * wi * ((a - 1.0) * t.ln() - t).exp();
        }
    }
    sum
}

#[test]
fn incomplete_gamma_against_quadrature() {
    for &(a, z) in &[
        (c(0.5, 2.0), 0.7),
        (c(-1.5, 3.0), 2.5),
        (c(2.0, -10.0), 5.0),
        (c(0.25, 0.0), 12.0),
        (c(-0.3, -20.0), 1.0),
    ] {
        let got = upper_incomplete_gamma(a, c(z, 0.0)).unwrap();
        let want = incomplete_gamma_quadrature(a, z);
        assert!(
            (got.value - want).norm() <= 1e-11 * want.norm().max(1e-3) + got.abs_err,
            "a = {a}, z = {z}: {} vs {want}",
            got.value
        );
    }
}

#[test]
fn incomplete_gamma_complex_argument() {
    // Reference value from an independent arbitrary-precision evaluation.
    let got = upper_incomplete_gamma(c(0.5, 2.0), c(3.0, -1.0)).unwrap().value;
    let want = c(-0.030_440_120_722_429_276, -0.025_532_340_407_736_356);
    assert!((got - want).norm() / want.norm() < 1e-11);
}

#[test]
fn hurwitz_kernel_converges_in_cutoff() {
    // The regular part plus the singular term is independent of the cutoff.
    let s = c(0.5, 3.0);
    let a = 0.3;
    let value = |n| {
        let parts = hurwitz_em(s, a, EMParams::new(n, 12).unwrap());
        parts.regular + parts.singular(s)
    };
    let want = c(-1.470_133_926_867_638_8, -1.270_023_881_690_922_6);
    for n in [10, 20, 40, 80] {
        assert!((value(n) - want).norm() < 1e-12, "cutoff {n}");
    }
}

#[test]
fn neumaier_recovers_cancelled_terms() {
    let mut s = NeumaierSum::new();
    for v in [1.0, 1e100, 1.0, -1e100] {
        s.add(c(v, -v));
    }
    assert_eq!(s.total(), c(2.0, -2.0));
}
