use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Number of even-index Bernoulli numbers held in the shared table
/// (`B_0, B_2, …, B_118`).
pub const BERNOULLI_TABLE_SIZE: usize = 60;

static TABLE: OnceLock<[f64; BERNOULLI_TABLE_SIZE]> = OnceLock::new();

fn table() -> &'static [f64; BERNOULLI_TABLE_SIZE] {
    TABLE.get_or_init(|| {
        let mut out = [0.0; BERNOULLI_TABLE_SIZE];
        // B_0 … B_8 are small exact rationals.
        out[..5].copy_from_slice(&[1.0, 1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0]);
        for (n, slot) in out.iter_mut().enumerate().skip(5) {
            // B_{2n} = (-1)^{n+1} 2 (2n)! zeta(2n) / (2 pi)^{2n}
            let two_n = 2 * n;
            let zeta: f64 = (1..=2000u32)
                .rev()
                .map(|k| (k as f64).powi(-(two_n as i32)))
                .sum();
            let ratio: f64 = (1..=two_n).map(|k| k as f64 / (2.0 * PI)).product();
            let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
            *slot = sign * 2.0 * ratio * zeta;
        }
        out
    })
}

/// Returns `B_0, B_2, …, B_{2(count-1)}`; the odd-index numbers beyond `B_1`
/// vanish and are omitted.
pub fn bernoulli_numbers(count: usize) -> Result<Vec<f64>> {
    if count == 0 {
        return Err(Error::InvalidArgument("bernoulli count must be positive".into()));
    }
    if count > BERNOULLI_TABLE_SIZE {
        return Err(Error::BernoulliCountTooLarge {
            requested: count,
            max: BERNOULLI_TABLE_SIZE,
        });
    }
    Ok(table()[..count].to_vec())
}

pub(crate) fn bernoulli_even(k: usize) -> f64 {
    table()[k]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leading_values() {
        let b = bernoulli_numbers(4).unwrap();
        assert_eq!(b[0], 1.0);
        assert!((b[1] - 1.0 / 6.0).abs() < 1e-16);
        assert!((b[2] + 1.0 / 30.0).abs() < 1e-16);
        assert!((b[3] - 1.0 / 42.0).abs() < 1e-16);
    }

    #[test]
    fn count_limits() {
        assert!(matches!(
            bernoulli_numbers(61),
            Err(Error::BernoulliCountTooLarge { requested: 61, .. })
        ));
        assert!(bernoulli_numbers(0).is_err());
        assert_eq!(bernoulli_numbers(60).unwrap().len(), 60);
    }

    #[test]
    fn known_b10_and_b12() {
        let b = bernoulli_numbers(7).unwrap();
        assert!((b[5] - 5.0 / 66.0).abs() < 1e-16);
        assert!((b[6] + 691.0 / 2730.0).abs() < 1e-15);
    }
}
