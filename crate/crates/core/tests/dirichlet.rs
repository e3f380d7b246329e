use std::f64::consts::PI;

use critline::dirichlet::{
    b_chi_audit, character, enumerate_characters, f_real_chi, functional_residual_l, gauss_sum,
    hurwitz_zeta, l_function, l_zero_ordinates, principal_identity_audit, totient,
    DirichletCharacter,
};
use critline::zeros::scan_with;
use critline::zeta::{realness_defect, zeta_auto};
use critline::Error;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn character_counts_and_principal_label() {
    for q in 1..=60u64 {
        let chars = enumerate_characters(q).unwrap();
        assert_eq!(chars.len() as u64, totient(q), "q = {q}");
        assert!(chars[0].is_principal());
        for n in 1..=q as i64 {
            let want = if gcd(n as u64, q) == 1 { 1.0 } else { 0.0 };
            assert_eq!(chars[0].value(n), c(want, 0.0));
        }
    }
    assert!(matches!(enumerate_characters(1001), Err(Error::ModulusOutOfRange(1001))));
    assert!(enumerate_characters(0).is_err());
}

#[test]
fn orthogonality() {
    for q in 1..=20u64 {
        let chars = enumerate_characters(q).unwrap();
        for a in &chars {
            for b in &chars {
                let sum: Complex64 = (1..=q as i64).map(|n| a.value(n) * b.value(n).conj()).sum();
                let want = if a.label() == b.label() { totient(q) as f64 } else { 0.0 };
                assert!((sum - want).norm() < 1e-10, "q = {q}, {} vs {}", a.label(), b.label());
            }
        }
    }
}

#[test]
fn multiplicativity_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for q in [5u64, 8, 12, 15, 16, 21, 24, 97, 100, 360] {
        for chi in enumerate_characters(q).unwrap() {
            for _ in 0..200 {
                let m: i64 = rng.gen_range(-1000..1000);
                let n: i64 = rng.gen_range(-1000..1000);
                let lhs = chi.value((m * n).rem_euclid(q as i64));
                assert!((lhs - chi.value(m) * chi.value(n)).norm() < 1e-12);
            }
        }
    }
}

/// Primitive iff no proper divisor `d` of `q` has `chi(n) = 1` for every
/// unit `n = 1 mod d`.
fn primitive_oracle(chi: &DirichletCharacter) -> bool {
    let q = chi.modulus();
    (1..q).filter(|d| q % d == 0).all(|d| {
        (1..=q as i64)
            .filter(|&n| gcd(n as u64, q) == 1 && (n as u64) % d == 1 % d)
            .any(|n| (chi.value(n) - 1.0).norm() > 1e-9)
    })
}

#[test]
fn primitivity_and_conductor() {
    let mut primitive_counts = Vec::new();
    for q in 1..=40u64 {
        let chars = enumerate_characters(q).unwrap();
        for chi in &chars {
            assert_eq!(chi.is_primitive(), primitive_oracle(chi), "q = {q} j = {}", chi.label());
            assert_eq!(q % chi.conductor(), 0);
            assert_eq!(chi.is_primitive(), chi.conductor() == q);
        }
        primitive_counts.push(chars.iter().filter(|c| c.is_primitive()).count());
    }
    // Number of primitive characters mod q = 1, 0, 1, 1, 3, 0, 5, 2, 4, 0, ...
    assert_eq!(&primitive_counts[..10], &[1, 0, 1, 1, 3, 0, 5, 2, 4, 0]);
}

#[test]
fn gauss_sum_magnitude_and_direct_value() {
    for q in 3..=50u64 {
        for chi in enumerate_characters(q).unwrap() {
            let direct: Complex64 = (1..=q as i64)
                .map(|a| chi.value(a) * Complex64::from_polar(1.0, 2.0 * PI * a as f64 / q as f64))
                .sum();
            let g = gauss_sum(&chi);
            assert!((g.value() - direct).norm() < 1e-10);
            if chi.is_primitive() {
                assert!(((g.magnitude - (q as f64).sqrt()) / (q as f64).sqrt()).abs() < 1e-9);
            }
        }
    }
}

#[test]
fn hurwitz_reduces_to_zeta() {
    for s in [c(2.0, 0.0), c(0.5, 14.0), c(0.3, 10.0), c(-0.9, 1.0), c(-1.0, 25.0), c(0.0, 0.5), c(3.0, -7.0)] {
        let h = hurwitz_zeta(s, 1.0).unwrap().value;
        let z = zeta_auto(s).unwrap().value;
        assert!((h - z).norm() < 1e-11, "s = {s}");
    }
    // zeta(s, 1/2) = (2^s - 1) zeta(s)
    let s = c(0.7, 3.0);
    let h = hurwitz_zeta(s, 0.5).unwrap().value;
    let z = zeta_auto(s).unwrap().value;
    assert!((h - ((s * 2f64.ln()).exp() - 1.0) * z).norm() < 1e-11);
    assert!(matches!(hurwitz_zeta(c(-1.5, 0.0), 0.5), Err(Error::OutsideConvergence(_))));
    assert!(matches!(hurwitz_zeta(c(1.0, 0.0), 0.3), Err(Error::Pole(_))));
    // Partial sums over n + 1/2 with an integral tail at s = 2.
    let n = 100_000;
    let head: f64 = (0..n).rev().map(|k| (k as f64 + 0.5).powi(-2)).sum();
    let x = n as f64 + 0.5;
    let oracle = head + 1.0 / x + 0.5 / (x * x) + 1.0 / (6.0 * x * x * x);
    assert!((hurwitz_zeta(c(2.0, 0.0), 0.5).unwrap().value.re - oracle).abs() < 1e-13);
}

#[test]
fn l_function_series_oracles() {
    // L(2, chi_4) is Catalan's constant; check against the alternating series
    // with its tail averaged.
    let chi = character(4, 2).unwrap();
    let n = 200_000;
    let partial: f64 = (0..n).rev().map(|k| {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sign / ((2 * k + 1) as f64).powi(2)
    }).sum();
    let next = if n % 2 == 0 { 1.0 } else { -1.0 } / ((2 * n + 1) as f64).powi(2);
    let oracle = partial + 0.5 * next;
    let got = l_function(c(2.0, 0.0), &chi).unwrap().value;
    assert!((got.re - oracle).abs() < 1e-13);
    assert!((got.re - 0.915_965_594_177_219_015).abs() < 1e-14);
    // Complex character mod 5 with chi(2) = i; reference value from an
    // independent arbitrary-precision evaluation.
    let chi5 = character(5, 2).unwrap();
    assert_eq!(chi5.value(2), c(0.0, 1.0));
    let got = l_function(c(0.5, 2.0), &chi5).unwrap().value;
    let want = c(1.391_449_860_155_873_5, 0.604_320_031_909_077_8);
    assert!((got - want).norm() < 1e-12);
    // The principal character mod 1 is zeta, with its pole.
    let one = character(1, 1).unwrap();
    assert!(matches!(l_function(c(1.0, 0.0), &one), Err(Error::Pole(_))));
}

#[test]
fn functional_equation_for_primitive_characters() {
    let points: Vec<Complex64> = [0.2, 0.5, 0.8]
        .iter()
        .flat_map(|&s| [0.0, 1.0, 5.0].map(|t| c(s, t)))
        .collect();
    for q in 1..=20u64 {
        for chi in enumerate_characters(q).unwrap() {
            if !chi.is_primitive() {
                assert!(matches!(
                    functional_residual_l(c(0.3, 1.0), &chi),
                    Err(Error::NotPrimitive { .. })
                ));
                continue;
            }
            for &s in &points {
                let r = functional_residual_l(s, &chi).unwrap();
                assert!(r < 1e-8, "q = {q} j = {} s = {s}: {r}", chi.label());
            }
        }
    }
}

#[test]
fn f_chi_is_real_and_changes_sign() {
    for q in 3..=12u64 {
        for chi in enumerate_characters(q).unwrap().into_iter().filter(|c| c.is_primitive()) {
            for t in 0..=20 {
                let r = realness_defect(&f_real_chi(t as f64, &chi).unwrap());
                assert!(r < 1e-8, "q = {q} j = {} t = {t}: {r}", chi.label());
            }
        }
    }
    // Dense-scan oracle: sign changes of the real part on (0, 15).
    let chi = character(4, 2).unwrap();
    let sign = |t: f64| {
        let v = f_real_chi(t, &chi).unwrap().value.re;
        (v != 0.0).then_some(v.signum())
    };
    let brackets = scan_with(0.0, 15.0, 0.01, &sign).unwrap();
    assert!(!brackets.is_empty());
    assert!(brackets[0].0 < 6.020_948_904_697_597 && 6.020_948_904_697_597 < brackets[0].1);
}

#[test]
fn first_l_zeros() {
    // Reference ordinates from an independent arbitrary-precision evaluation.
    let z4 = l_zero_ordinates(&character(4, 2).unwrap(), 2, 1e-11).unwrap();
    assert!((z4[0].abs() - 6.020_948_904_697_596_7).abs() < 1e-9);
    // Real characters have zeros symmetric about the real axis.
    assert!((z4[0] + z4[1]).abs() < 1e-9);
    let z3 = l_zero_ordinates(&character(3, 2).unwrap(), 1, 1e-11).unwrap();
    assert!((z3[0].abs() - 8.039_737_155_681_466_7).abs() < 1e-9);
    // Complex conjugate characters have mirrored zeros.
    let a = l_zero_ordinates(&character(5, 2).unwrap(), 4, 1e-11).unwrap();
    let b = l_zero_ordinates(&character(5, 2).unwrap().conjugate(), 4, 1e-11).unwrap();
    let mut neg: Vec<f64> = b.iter().map(|g| -g).collect();
    neg.sort_by(|x, y| x.abs().total_cmp(&y.abs()).then(x.total_cmp(y)));
    let mut a_sorted = a.clone();
    a_sorted.sort_by(|x, y| x.total_cmp(y));
    neg.sort_by(|x, y| x.total_cmp(y));
    for (x, y) in a_sorted.iter().zip(&neg) {
        assert!((x - y).abs() < 1e-9);
    }
}

#[test]
fn principal_identity() {
    for q in 2..=50u64 {
        for s in [c(2.0, 0.0), c(3.0, 0.0), c(0.5, 2.0)] {
            let rec = principal_identity_audit(s, q, 1e-9).unwrap();
            assert!(rec.residual_euler < 1e-9, "q = {q}, s = {s}");
        }
    }
    // q = 2: (1 - 2^{-3}) zeta(3) against the odd-term series.
    let rec = principal_identity_audit(c(3.0, 0.0), 2, 1e-9).unwrap();
    let odd: f64 = (0..100_000u64).rev().map(|k| ((2 * k + 1) as f64).powi(-3)).sum();
    assert!((rec.l_value.re - odd).abs() < 1e-10);
    assert!(matches!(principal_identity_audit(c(1.0, 0.0), 6, 1e-9), Err(Error::Pole(_))));
    assert!(principal_identity_audit(c(2.0, 0.0), 1, 1e-9).is_err());
}

#[test]
fn b_chi_gap_shrinks_with_more_zeros() {
    let chi = character(4, 2).unwrap();
    let gaps: Vec<f64> = [5, 10, 20]
        .iter()
        .map(|&n| b_chi_audit(&chi, n).unwrap().gap_real)
        .collect();
    assert!(gaps[0] > gaps[1] && gaps[1] > gaps[2], "{gaps:?}");
    let empty = b_chi_audit(&chi, 0).unwrap();
    assert_eq!(empty.b_reconstructed, 0.0);
    assert!((empty.gap_total - empty.b_fd.norm()).abs() < 1e-15);
    let chi3 = character(3, 2).unwrap();
    assert!(b_chi_audit(&chi3, 10).unwrap().gap_real.is_finite());
    // Even characters have L(0, chi) = 0.
    let even = enumerate_characters(5)
        .unwrap()
        .into_iter()
        .find(|c| c.is_primitive() && c.parity() == 0)
        .unwrap();
    assert!(matches!(b_chi_audit(&even, 5), Err(Error::VanishingAtZero { .. })));
}
