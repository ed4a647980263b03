//! Dense polynomials over GF(p), low-order coefficient first.
//!
//! Only what the irreducibility test needs: reduction, modular
//! multiplication and exponentiation, and gcd.

use crate::prime::{mod_inv, mod_mul};

pub(crate) type Poly = Vec<u32>;

fn trim(a: &mut Poly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn degree(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

/// Remainder of `a` modulo `f` (f nonzero).
pub(crate) fn rem(a: &[u32], f: &[u32], p: u32) -> Poly {
    let mut r: Poly = a.to_vec();
    trim(&mut r);
    let df = degree(f).expect("division by the zero polynomial");
    let lead_inv = mod_inv(f[df], p).expect("nonzero leading coefficient");
    while let Some(dr) = degree(&r) {
        if dr < df {
            break;
        }
        let c = mod_mul(r[dr], lead_inv, p);
        let shift = dr - df;
        for (i, &fc) in f[..=df].iter().enumerate() {
            let sub = mod_mul(c, fc, p);
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        trim(&mut r);
    }
    r
}

pub(crate) fn mul_mod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    let p64 = u64::from(p);
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + u64::from(x) * u64::from(y)) % p64;
        }
    }
    let prod: Poly = prod.into_iter().map(|c| c as u32).collect();
    rem(&prod, f, p)
}

pub(crate) fn pow_mod(base: &[u32], mut exp: u64, f: &[u32], p: u32) -> Poly {
    let mut result = rem(&[1], f, p);
    let mut b = rem(base, f, p);
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod(&result, &b, f, p);
        }
        b = mul_mod(&b, &b, f, p);
        exp >>= 1;
    }
    result
}

pub(crate) fn sub(a: &[u32], b: &[u32], p: u32) -> Poly {
    let len = a.len().max(b.len());
    let mut out: Poly = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn gcd(a: &[u32], b: &[u32], p: u32) -> Poly {
    let mut x: Poly = a.to_vec();
    let mut y: Poly = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    // normalise to monic
    if let Some(d) = degree(&x) {
        let inv = mod_inv(x[d], p).expect("nonzero lead");
        for c in x.iter_mut() {
            *c = mod_mul(*c, inv, p);
        }
    }
    x
}

fn prime_divisors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's test for a monic polynomial `f` of degree `m` over GF(p).
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let Some(m) = degree(f) else { return false };
    if m == 0 {
        return false;
    }
    if m == 1 {
        return true;
    }
    let x: Poly = vec![0, 1];
    // frob[i] = x^{p^i} mod f
    let mut frob = Vec::with_capacity(m as usize + 1);
    frob.push(rem(&x, f, p));
    for i in 0..m {
        let next = pow_mod(&frob[i], u64::from(p), f, p);
        frob.push(next);
    }
    if sub(&frob[m], &x, p) != rem(&[], f, p) {
        return false;
    }
    for r in prime_divisors(m as u32) {
        let h = sub(&frob[m / r as usize], &x, p);
        let g = gcd(f, &h, p);
        if g != vec![1] {
            return false;
        }
    }
    true
}
