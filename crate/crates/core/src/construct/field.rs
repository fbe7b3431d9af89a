//! Table-driven arithmetic in GF(p^e).
//!
//! Elements are indexed `0..q` by reading the coefficient vector of their
//! polynomial representative as a base-`p` number, so index 0 is zero and
//! index 1 is one.

use crate::error::{Error, Result};

/// `Some((p, e))` when `q = p^e` for a prime `p`.
pub fn prime_power(q: usize) -> Option<(usize, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

/// Factorization of `m` into prime powers, ascending by prime.
pub fn prime_power_factors(mut m: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            let mut q = 1;
            while m.is_multiple_of(p) {
                m /= p;
                q *= p;
            }
            out.push(q);
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

#[derive(Debug, Clone)]
pub struct GaloisField {
    q: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
}

fn digits(x: usize, p: usize, e: usize) -> Vec<usize> {
    let mut d = vec![0; e];
    let mut x = x;
    for slot in d.iter_mut() {
        *slot = x % p;
        x /= p;
    }
    d
}

fn undigits(d: &[usize], p: usize) -> usize {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Product of two polynomials (low degree first) reduced modulo the monic
/// `modulus` of degree `e`, coefficients mod `p`.
fn mul_mod(a: &[usize], b: &[usize], modulus: &[usize], p: usize) -> Vec<usize> {
    let e = modulus.len() - 1;
    let mut prod = vec![0; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for deg in (e..prod.len()).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        for (i, &m) in modulus.iter().enumerate() {
            let idx = deg - e + i;
            prod[idx] = (prod[idx] + p * p - c * m % p) % p;
        }
    }
    prod.truncate(e);
    prod.resize(e, 0);
    prod
}

/// Least monic polynomial of degree `e` whose quotient ring is a field,
/// i.e. every nonzero residue has an inverse.
fn find_irreducible(p: usize, e: usize) -> Vec<usize> {
    let q = p.pow(e as u32);
    for low in 0..q {
        let mut modulus = digits(low, p, e);
        modulus.push(1);
        let is_field = (1..q).all(|a| {
            let da = digits(a, p, e);
            (1..q).any(|b| undigits(&mul_mod(&da, &digits(b, p, e), &modulus, p), p) == 1)
        });
        if is_field {
            return modulus;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists")
}

impl GaloisField {
    pub fn new(q: usize) -> Result<Self> {
        let (p, e) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        let e = e as usize;
        let modulus = find_irreducible(p, e);
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for a in 0..q {
            let da = digits(a, p, e);
            for b in 0..q {
                let db = digits(b, p, e);
                let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = undigits(&sum, p);
                mul[a * q + b] = undigits(&mul_mod(&da, &db, &modulus, p), p);
            }
        }
        Ok(GaloisField { q, add, mul })
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_power(4), Some((2, 2)));
        assert_eq!(prime_power(27), Some((3, 3)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power_factors(360), vec![8, 9, 5]);
        assert_eq!(prime_power_factors(1), Vec::<usize>::new());
    }

    #[test]
    fn field_axioms_hold() {
        for q in [2, 3, 4, 5, 8, 9, 16, 25] {
            let f = GaloisField::new(q).unwrap();
            for a in 0..q {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                if a != 0 {
                    assert_eq!((0..q).filter(|&b| f.mul(a, b) == 1).count(), 1, "q={q} a={a}");
                }
                for b in 0..q {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..q {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
        assert!(matches!(GaloisField::new(10), Err(Error::NotPrimePower(10))));
    }
}
