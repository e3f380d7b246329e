use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// Largest modulus accepted by [`enumerate_characters`].
pub const MAX_MODULUS: u64 = 1000;

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Prime factorization as `(p, k)` pairs in increasing `p`.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut k = 0;
            while n % p == 0 {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn totient(q: u64) -> u64 {
    factorize(q)
        .iter()
        .fold(q, |acc, &(p, _)| acc / p * (p - 1))
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Smallest primitive root modulo the odd prime power `p^k`.
fn primitive_root(p: u64, k: u32) -> u64 {
    let order = p - 1;
    let factors = factorize(order);
    let g = (2..p)
        .find(|&g| factors.iter().all(|&(f, _)| pow_mod(g, order / f, p) != 1))
        .unwrap_or(1);
    // A root mod p lifts to every p^k unless g^{p-1} = 1 mod p^2.
    if k >= 2 && pow_mod(g, p - 1, p * p) == 1 {
        g + p
    } else {
        g
    }
}

/// One cyclic factor of the unit group: generator, its order, and the
/// prime power it lives in.
#[derive(Debug, Clone, Copy)]
struct Cyclic {
    modulus: u64,
    generator: u64,
    order: u64,
}

fn cyclic_components(q: u64) -> Vec<Cyclic> {
    let mut out = Vec::new();
    for (p, k) in factorize(q) {
        let m = p.pow(k);
        if p == 2 {
            if k >= 2 {
                out.push(Cyclic { modulus: m, generator: m - 1, order: 2 });
            }
            if k >= 3 {
                out.push(Cyclic { modulus: m, generator: 5, order: 1 << (k - 2) });
            }
        } else {
            out.push(Cyclic {
                modulus: m,
                generator: primitive_root(p, k),
                order: m / p * (p - 1),
            });
        }
    }
    out
}

/// Discrete logarithms of every unit modulo `q` on the fixed generators;
/// `None` for non-units.
fn log_table(q: u64, comps: &[Cyclic]) -> Vec<Option<Vec<u64>>> {
    let mut table: Vec<Option<Vec<u64>>> = vec![None; q as usize];
    // Each exponent vector is mapped to its residue by tracking the residue
    // modulo every prime power separately and recombining with CRT.
    let moduli: Vec<u64> = factorize(q).iter().map(|&(p, k)| p.pow(k)).collect();
    let crt = Crt::new(&moduli);
    let total: u64 = comps.iter().map(|c| c.order).product();
    for rank in 0..total {
        let exps = unrank(rank, comps);
        let mut residues = vec![1u64; moduli.len()];
        for (c, &e) in comps.iter().zip(&exps) {
            let idx = moduli.iter().position(|&m| m == c.modulus).expect("modulus present");
            residues[idx] = residues[idx] * pow_mod(c.generator, e, c.modulus) % c.modulus;
        }
        table[(crt.combine(&residues) % q) as usize] = Some(exps);
    }
    table
}

struct Crt {
    moduli: Vec<u64>,
    /// Inverse of the product of the preceding moduli, modulo each modulus.
    inverses: Vec<u64>,
}

impl Crt {
    fn new(moduli: &[u64]) -> Self {
        let mut m = 1u64;
        let mut inverses = Vec::with_capacity(moduli.len());
        for &mi in moduli {
            inverses.push((0..mi).find(|&i| m % mi * i % mi == 1 % mi).unwrap_or(0));
            m *= mi;
        }
        Crt {
            moduli: moduli.to_vec(),
            inverses,
        }
    }

    fn combine(&self, residues: &[u64]) -> u64 {
        let mut x = 0u64;
        let mut m = 1u64;
        for ((&r, &mi), &inv) in residues.iter().zip(&self.moduli).zip(&self.inverses) {
            let t = ((r + mi - x % mi) % mi) * inv % mi;
            x += m * t;
            m *= mi;
        }
        x
    }
}

/// Mixed-radix digits of `rank`, first component most significant.
fn unrank(mut rank: u64, comps: &[Cyclic]) -> Vec<u64> {
    let mut exps = vec![0; comps.len()];
    for (i, c) in comps.iter().enumerate().rev() {
        exps[i] = rank % c.order;
        rank /= c.order;
    }
    exps
}

fn rank_of(exps: &[u64], orders: &[u64]) -> u64 {
    exps.iter().zip(orders).fold(0, |acc, (&e, &o)| acc * o + e)
}

/// `exp(2 pi i num / den)` with exact values at the quarter turns.
pub fn root_of_unity(num: u64, den: u64) -> Complex64 {
    let num = num % den;
    if num == 0 {
        return Complex64::new(1.0, 0.0);
    }
    if 4 * num % den == 0 {
        return match 4 * num / den {
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    Complex64::from_polar(1.0, 2.0 * PI * num as f64 / den as f64)
}

/// A Dirichlet character modulo `q`, stored as its table of values.
#[derive(Debug, Clone, PartialEq)]
pub struct DirichletCharacter {
    q: u64,
    label: u64,
    values: Vec<Complex64>,
    primitive: bool,
    conductor: u64,
    parity: u8,
    exponents: Vec<u64>,
    orders: Vec<u64>,
}

impl DirichletCharacter {
    pub fn modulus(&self) -> u64 {
        self.q
    }

    /// Label `j`; `1` is the principal character.
    pub fn label(&self) -> u64 {
        self.label
    }

    /// `chi(n)`, periodic in `n`.
    pub fn value(&self, n: i64) -> Complex64 {
        self.values[n.rem_euclid(self.q as i64) as usize]
    }

    /// Values at `0, 1, …, q - 1`.
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn is_primitive(&self) -> bool {
        self.primitive
    }

    pub fn is_principal(&self) -> bool {
        self.label == 1
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// `a = (1 - chi(-1)) / 2`.
    pub fn parity(&self) -> u8 {
        self.parity
    }

    /// True when every value is real.
    pub fn is_real(&self) -> bool {
        self.values.iter().all(|v| v.im == 0.0)
    }

    /// The complex-conjugate character.
    pub fn conjugate(&self) -> DirichletCharacter {
        let exps: Vec<u64> = self
            .exponents
            .iter()
            .zip(&self.orders)
            .map(|(&e, &o)| (o - e) % o)
            .collect();
        DirichletCharacter {
            q: self.q,
            label: 1 + rank_of(&exps, &self.orders),
            values: self.values.iter().map(|v| v.conj()).collect(),
            primitive: self.primitive,
            conductor: self.conductor,
            parity: self.parity,
            exponents: exps,
            orders: self.orders.clone(),
        }
    }

    /// Serializable table row.
    pub fn to_dump(&self) -> CharacterDump {
        CharacterDump {
            q: self.q,
            j: self.label,
            a: self.parity,
            primitive: self.primitive,
            values: self.values.iter().map(|v| [v.re, v.im]).collect(),
        }
    }
}

/// JSON shape of a character table row.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CharacterDump {
    pub q: u64,
    pub j: u64,
    pub a: u8,
    pub primitive: bool,
    pub values: Vec<[f64; 2]>,
}

/// Smallest `d | q` such that `chi(n) = 1` for every unit `n = 1 (mod d)`.
fn conductor_of(q: u64, values: &[Complex64]) -> u64 {
    let one = Complex64::new(1.0, 0.0);
    (1..=q)
        .filter(|d| q % d == 0)
        .find(|&d| {
            (1..q)
                .step_by(d as usize)
                .filter(|&n| gcd(n, q) == 1)
                .all(|n| values[n as usize] == one)
        })
        .unwrap_or(q)
}

/// All `phi(q)` characters modulo `q`, ordered by label.
pub fn enumerate_characters(q: u64) -> Result<Vec<DirichletCharacter>> {
    if q == 0 || q > MAX_MODULUS {
        return Err(Error::ModulusOutOfRange(q));
    }
    let comps = cyclic_components(q);
    let orders: Vec<u64> = comps.iter().map(|c| c.order).collect();
    let big_l = orders.iter().fold(1, |acc, &o| lcm(acc, o));
    let logs = log_table(q, &comps);
    let count: u64 = orders.iter().product();
    let mut out = Vec::with_capacity(count as usize);
    for rank in 0..count {
        let exps = unrank(rank, &comps);
        let values: Vec<Complex64> = logs
            .iter()
            .map(|log| match log {
                None => Complex64::new(0.0, 0.0),
                Some(e) => {
                    let num = exps
                        .iter()
                        .zip(e)
                        .zip(&orders)
                        .map(|((&c, &x), &o)| c * x % o * (big_l / o))
                        .sum::<u64>();
                    root_of_unity(num, big_l)
                }
            })
            .collect();
        let conductor = conductor_of(q, &values);
        let minus_one = values[(q - 1) as usize];
        let parity = if q > 1 && minus_one.re < 0.0 { 1 } else { 0 };
        out.push(DirichletCharacter {
            q,
            label: rank + 1,
            values,
            primitive: conductor == q,
            conductor,
            parity,
            exponents: exps,
            orders: orders.clone(),
        });
    }
    Ok(out)
}

/// The character with label `j` modulo `q`.
pub fn character(q: u64, j: u64) -> Result<DirichletCharacter> {
    enumerate_characters(q)?
        .into_iter()
        .find(|c| c.label == j)
        .ok_or_else(|| Error::InvalidArgument(format!("no character with label {j} modulo {q}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorization_and_totient() {
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(totient(1), 1);
        assert_eq!(totient(36), 12);
        assert_eq!(totient(997), 996);
    }

    #[test]
    fn modulus_one() {
        let chars = enumerate_characters(1).unwrap();
        assert_eq!(chars.len(), 1);
        assert_eq!(chars[0].value(7), Complex64::new(1.0, 0.0));
        assert!(chars[0].is_primitive());
    }

    #[test]
    fn modulus_four() {
        let chars = enumerate_characters(4).unwrap();
        assert_eq!(chars.len(), 2);
        let re: Vec<f64> = chars[0].values().iter().map(|v| v.re).collect();
        assert_eq!(re, vec![0.0, 1.0, 0.0, 1.0]);
        assert_eq!(chars[1].value(3), Complex64::new(-1.0, 0.0));
        assert_eq!(chars[1].parity(), 1);
        assert!(chars[1].is_primitive());
        assert!(!chars[0].is_primitive());
    }

    #[test]
    fn out_of_range() {
        assert!(matches!(enumerate_characters(0), Err(Error::ModulusOutOfRange(0))));
        assert!(enumerate_characters(1001).is_err());
    }

    #[test]
    fn primitive_counts() {
        // Number of primitive characters is multiplicative with
        // p -> p - 2 and p^k -> p^k (1 - 1/p)^2 for k >= 2.
        let count = |q| {
            enumerate_characters(q)
                .unwrap()
                .iter()
                .filter(|c| c.is_primitive())
                .count()
        };
        assert_eq!(count(5), 3);
        assert_eq!(count(8), 2);
        assert_eq!(count(9), 4);
        assert_eq!(count(12), 1);
        assert_eq!(count(2), 0);
        assert_eq!(count(15), 3);
    }

    #[test]
    fn conjugate_label_round_trip() {
        for c in enumerate_characters(35).unwrap() {
            let cc = c.conjugate();
            assert_eq!(cc.conjugate().label(), c.label());
            for n in 0..35 {
                assert_eq!(cc.value(n), c.value(n).conj());
            }
        }
    }
}
