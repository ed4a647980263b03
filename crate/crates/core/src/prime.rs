//! Arithmetic in the prime field GF(p).

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// A residue in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PrimeElement(u32);

impl PrimeElement {
    pub fn new(value: u64, p: u32) -> Result<Self> {
        if value >= u64::from(p) {
            return Err(Error::NotAResidue { value, p });
        }
        Ok(PrimeElement(value as u32))
    }

    /// Caller guarantees `value < p`.
    pub(crate) fn from_reduced(value: u32) -> Self {
        PrimeElement(value)
    }

    pub fn value(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl std::fmt::Display for PrimeElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

#[inline]
pub fn mod_mul(a: u32, b: u32, p: u32) -> u32 {
    ((u64::from(a) * u64::from(b)) % u64::from(p)) as u32
}

pub fn mod_pow(base: u32, mut exp: u64, p: u32) -> u32 {
    let mut result = 1 % p;
    let mut b = base % p;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mod_mul(result, b, p);
        }
        b = mod_mul(b, b, p);
        exp >>= 1;
    }
    result
}

/// Inverse via Fermat; `None` for zero.
pub fn mod_inv(a: u32, p: u32) -> Option<u32> {
    let a = a % p;
    if a == 0 {
        None
    } else {
        Some(mod_pow(a, u64::from(p) - 2, p))
    }
}

/// Legendre symbol (a/p) as -1, 0 or +1.
pub fn legendre(a: u32, p: u32) -> i8 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    if mod_pow(a, u64::from((p - 1) / 2), p) == 1 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn legendre_mod_7() {
        // squares mod 7: 1, 2, 4
        let symbols: Vec<i8> = (0..7).map(|a| legendre(a, 7)).collect();
        assert_eq!(symbols, vec![0, 1, 1, -1, 1, -1, -1]);
    }

    #[test]
    fn inverse() {
        for a in 1..11 {
            assert_eq!(mod_mul(a, mod_inv(a, 11).unwrap(), 11), 1);
        }
        assert_eq!(mod_inv(0, 11), None);
    }

    #[test]
    fn residue_range() {
        assert!(PrimeElement::new(4, 5).is_ok());
        assert_eq!(
            PrimeElement::new(5, 5),
            Err(Error::NotAResidue { value: 5, p: 5 })
        );
    }
}
