//! GF(p^m) in the polynomial basis for odd p.
//!
//! A [`FieldCtx`] fixes the prime, the degree and a monic irreducible
//! modulus. Elements are dense coefficient vectors; their integer encoding
//! `sum coeffs[i] * p^i` gives the canonical ordering used everywhere else
//! in the crate (defining sets, codeword coordinates, message order).

use crate::error::{Error, Result};
use crate::poly;
use crate::prime::{is_prime, legendre, mod_mul, PrimeElement};
use serde::{Deserialize, Serialize};

/// Default bound on the number of objects any enumeration may visit.
pub const DEFAULT_CEILING: u64 = 1 << 20;
/// Default bound on q for the quadratic-cost planarity measure (3^10).
pub const DEFAULT_PLANAR_CEILING: u64 = 59_049;

/// Enumeration ceilings carried by every field context.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub enumeration: u64,
    pub planar: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enumeration: DEFAULT_CEILING,
            planar: DEFAULT_PLANAR_CEILING,
        }
    }
}

impl Limits {
    /// For work quadratic in q: `q` itself is held to the `planar` bound.
    pub fn check_quadratic(&self, what: &'static str, q: u64) -> Result<()> {
        if q > self.planar {
            Err(Error::CeilingExceeded {
                what,
                count: u128::from(q) * u128::from(q),
                ceiling: self.planar,
            })
        } else {
            Ok(())
        }
    }

    pub fn check(&self, what: &'static str, count: u128) -> Result<()> {
        if count > u128::from(self.enumeration) {
            Err(Error::CeilingExceeded {
                what,
                count,
                ceiling: self.enumeration,
            })
        } else {
            Ok(())
        }
    }
}

/// Reproducibility record of a field representation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub m: u32,
    pub modulus: Vec<u32>,
}

/// The `nth` (0-based) monic irreducible polynomial of degree `m` over GF(p),
/// ordered by the encoding `sum c_i p^i` of its non-leading coefficients.
pub fn find_irreducible_nth(p: u32, m: u32, nth: usize) -> Result<Vec<u32>> {
    validate_prime(p)?;
    if m == 0 {
        return Err(Error::ZeroDegree);
    }
    let total = u64::from(p)
        .checked_pow(m)
        .ok_or_else(|| Error::Unsupported(format!("{p}^{m} overflows")))?;
    let mut seen = 0usize;
    for enc in 0..total {
        let mut coeffs = decode_digits(enc, p, m as usize);
        coeffs.push(1);
        if poly::is_irreducible(&coeffs, p) {
            if seen == nth {
                coeffs.pop();
                return Ok(coeffs);
            }
            seen += 1;
        }
    }
    Err(Error::Unsupported(format!(
        "fewer than {} irreducible polynomials of degree {m} over GF({p})",
        nth + 1
    )))
}

/// Smallest-encoding monic irreducible polynomial of degree `m` over GF(p).
pub fn find_irreducible(p: u32, m: u32) -> Result<Vec<u32>> {
    find_irreducible_nth(p, m, 0)
}

fn validate_prime(p: u32) -> Result<()> {
    if p == 2 || !is_prime(u64::from(p)) {
        Err(Error::NotOddPrime(u64::from(p)))
    } else {
        Ok(())
    }
}

fn decode_digits(mut enc: u64, p: u32, len: usize) -> Vec<u32> {
    let p = u64::from(p);
    let mut out = Vec::with_capacity(len + 1);
    for _ in 0..len {
        out.push((enc % p) as u32);
        enc /= p;
    }
    out
}

/// An element of GF(p^m): coefficients of `1, alpha, ..., alpha^{m-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    coeffs: Vec<u32>,
    field: u64,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn field_id(&self) -> u64 {
        self.field
    }
}

/// The ambient field GF(q), q = p^m. Immutable once built.
#[derive(Debug, Clone)]
pub struct FieldCtx {
    p: u32,
    m: u32,
    q: u64,
    modulus: Vec<u32>,
    id: u64,
    // Tr(alpha^i) for i < m
    trace_basis: Vec<u32>,
    limits: Limits,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

impl Serialize for FieldCtx {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.spec().serialize(s)
    }
}

impl FieldCtx {
    /// Canonical field: smallest-encoding irreducible modulus, default limits.
    pub fn new(p: u32, m: u32) -> Result<Self> {
        Self::with_limits(p, m, Limits::default())
    }

    pub fn with_limits(p: u32, m: u32, limits: Limits) -> Result<Self> {
        Self::check_size(p, m, &limits)?;
        let modulus = find_irreducible(p, m)?;
        Self::build(p, m, modulus, limits)
    }

    /// Field with an explicit modulus `c_0..c_{m-1}` (leading 1 implicit).
    pub fn with_modulus(p: u32, m: u32, modulus: Vec<u32>, limits: Limits) -> Result<Self> {
        Self::check_size(p, m, &limits)?;
        if modulus.len() != m as usize {
            return Err(Error::ModulusLength {
                expected: m as usize,
                got: modulus.len(),
            });
        }
        if let Some(&bad) = modulus.iter().find(|&&c| c >= p) {
            return Err(Error::NotAResidue {
                value: u64::from(bad),
                p,
            });
        }
        let mut full = modulus.clone();
        full.push(1);
        if !poly::is_irreducible(&full, p) {
            return Err(Error::Reducible(modulus));
        }
        Self::build(p, m, modulus, limits)
    }

    fn check_size(p: u32, m: u32, limits: &Limits) -> Result<()> {
        validate_prime(p)?;
        if m == 0 {
            return Err(Error::ZeroDegree);
        }
        match u64::from(p).checked_pow(m) {
            Some(q) if q <= limits.enumeration => Ok(()),
            _ => Err(Error::FieldTooLarge {
                p,
                m,
                ceiling: limits.enumeration,
            }),
        }
    }

    fn build(p: u32, m: u32, modulus: Vec<u32>, limits: Limits) -> Result<Self> {
        let q = u64::from(p).pow(m);
        let mut id = 0xcbf2_9ce4_8422_2325u64;
        for v in std::iter::once(p)
            .chain(std::iter::once(m))
            .chain(modulus.iter().copied())
        {
            id ^= u64::from(v);
            id = id.wrapping_mul(0x0100_0000_01b3);
        }
        let mut ctx = FieldCtx {
            p,
            m,
            q,
            modulus,
            id,
            trace_basis: Vec::new(),
            limits,
        };
        let basis: Vec<u32> = (0..m as usize)
            .map(|i| {
                let mut coeffs = vec![0; m as usize];
                coeffs[i] = 1;
                let e = FieldElement { coeffs, field: id };
                ctx.trace(&e).value()
            })
            .collect();
        ctx.trace_basis = basis;
        Ok(ctx)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec {
            p: self.p,
            m: self.m,
            modulus: self.modulus.clone(),
        }
    }

    /// `Tr(alpha^i)` for each basis element.
    pub fn trace_basis(&self) -> &[u32] {
        &self.trace_basis
    }

    // ---- construction -------------------------------------------------

    pub fn element(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() != self.m as usize {
            return Err(Error::Invalid(format!(
                "expected {} coefficients, got {}",
                self.m,
                coeffs.len()
            )));
        }
        if let Some(&bad) = coeffs.iter().find(|&&c| c >= self.p) {
            return Err(Error::NotAResidue {
                value: u64::from(bad),
                p: self.p,
            });
        }
        Ok(self.wrap(coeffs.to_vec()))
    }

    pub fn from_encoding(&self, enc: u64) -> Result<FieldElement> {
        if enc >= self.q {
            return Err(Error::Invalid(format!(
                "encoding {enc} out of range for GF({})",
                self.q
            )));
        }
        Ok(self.decode(enc))
    }

    /// Infallible decode; caller guarantees `enc < q`.
    pub(crate) fn decode(&self, enc: u64) -> FieldElement {
        self.wrap(decode_digits(enc, self.p, self.m as usize))
    }

    pub fn encode(&self, x: &FieldElement) -> u64 {
        let p = u64::from(self.p);
        x.coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * p + u64::from(c))
    }

    fn wrap(&self, coeffs: Vec<u32>) -> FieldElement {
        FieldElement {
            coeffs,
            field: self.id,
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.wrap(vec![0; self.m as usize])
    }

    pub fn one(&self) -> FieldElement {
        self.embed(1)
    }

    /// The subfield element `a mod p`.
    pub fn embed(&self, a: u32) -> FieldElement {
        let mut coeffs = vec![0; self.m as usize];
        coeffs[0] = a % self.p;
        self.wrap(coeffs)
    }

    /// The class of `x` modulo the defining polynomial.
    pub fn alpha(&self) -> FieldElement {
        if self.m == 1 {
            // x = -c_0 in GF(p)[x]/(x + c_0)
            return self.embed((self.p - self.modulus[0]) % self.p);
        }
        let mut coeffs = vec![0; self.m as usize];
        coeffs[1] = 1;
        self.wrap(coeffs)
    }

    /// All q elements in ascending encoding order, starting at zero.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(move |e| self.decode(e))
    }

    // ---- arithmetic ---------------------------------------------------

    /// Checks that every operand belongs to this field.
    pub fn check(&self, xs: &[&FieldElement]) -> Result<()> {
        if xs.iter().all(|x| x.field == self.id) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    fn assert_owned(&self, x: &FieldElement) {
        assert!(
            x.field == self.id,
            "field element used with a different field context"
        );
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.assert_owned(a);
        self.assert_owned(b);
        let p = self.p;
        self.wrap(
            a.coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| (x + y) % p)
                .collect(),
        )
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.assert_owned(a);
        self.assert_owned(b);
        let p = self.p;
        self.wrap(
            a.coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| (x + p - y) % p)
                .collect(),
        )
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        self.assert_owned(a);
        let p = self.p;
        self.wrap(a.coeffs.iter().map(|&x| (p - x) % p).collect())
    }

    /// Multiplication by a prime-field scalar.
    pub fn scale(&self, s: u32, a: &FieldElement) -> FieldElement {
        self.assert_owned(a);
        let p = self.p;
        self.wrap(a.coeffs.iter().map(|&x| mod_mul(s % p, x, p)).collect())
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.assert_owned(a);
        self.assert_owned(b);
        self.wrap(self.mul_raw(&a.coeffs, &b.coeffs))
    }

    pub fn try_add(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.check(&[a, b])?;
        Ok(self.add(a, b))
    }

    pub fn try_mul(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.check(&[a, b])?;
        Ok(self.mul(a, b))
    }

    pub(crate) fn mul_raw(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let m = self.m as usize;
        let p = u64::from(self.p);
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] += u64::from(x) * u64::from(y);
            }
            // keep the accumulators bounded for large p
            if p > 1 << 16 {
                for c in prod.iter_mut() {
                    *c %= p;
                }
            }
        }
        // x^m = -sum c_i x^i
        for d in (m..2 * m - 1).rev() {
            let c = prod[d] % p;
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for (i, &mc) in self.modulus.iter().enumerate() {
                let sub = c * u64::from(mc) % p;
                prod[d - m + i] = (prod[d - m + i] % p + p - sub) % p;
            }
        }
        prod.truncate(m);
        prod.into_iter().map(|c| (c % p) as u32).collect()
    }

    pub fn square(&self, a: &FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    pub fn pow(&self, a: &FieldElement, mut exp: u64) -> FieldElement {
        self.assert_owned(a);
        let mut result = self.one().coeffs;
        let mut base = a.coeffs.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                result = self.mul_raw(&result, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.mul_raw(&base, &base);
            }
        }
        self.wrap(result)
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        self.check(&[a])?;
        if a.is_zero() {
            return Err(Error::InverseOfZero);
        }
        Ok(self.pow(a, self.q - 2))
    }

    pub fn frobenius(&self, a: &FieldElement) -> FieldElement {
        self.pow(a, u64::from(self.p))
    }

    // ---- trace and character -----------------------------------------

    /// Absolute trace `sum_{i<m} x^{p^i}`, computed through the Frobenius orbit.
    pub fn trace(&self, x: &FieldElement) -> PrimeElement {
        self.assert_owned(x);
        let p = self.p;
        let mut acc = x.coeffs.clone();
        let mut conj = x.clone();
        for _ in 1..self.m {
            conj = self.frobenius(&conj);
            for (a, c) in acc.iter_mut().zip(&conj.coeffs) {
                *a = (*a + c) % p;
            }
        }
        debug_assert!(acc[1..].iter().all(|&c| c == 0), "trace left GF(p)");
        PrimeElement::from_reduced(acc[0])
    }

    /// Trace via the precomputed images of the basis; agrees with [`trace`](Self::trace).
    #[inline]
    pub fn trace_linear(&self, x: &FieldElement) -> u32 {
        self.trace_coeffs(&x.coeffs)
    }

    #[inline]
    pub(crate) fn trace_coeffs(&self, coeffs: &[u32]) -> u32 {
        let p = u64::from(self.p);
        let s: u64 = coeffs
            .iter()
            .zip(&self.trace_basis)
            .map(|(&c, &t)| u64::from(c) * u64::from(t))
            .sum();
        (s % p) as u32
    }

    /// Quadratic character: +1 on nonzero squares, -1 on non-squares, 0 at zero.
    pub fn quadratic_character(&self, x: &FieldElement) -> i8 {
        if x.is_zero() {
            return 0;
        }
        let r = self.pow(x, (self.q - 1) / 2);
        if r == self.one() {
            1
        } else {
            debug_assert_eq!(r, self.embed(self.p - 1));
            -1
        }
    }

    /// Quadratic character of GF(p), written eta-bar in the literature.
    pub fn prime_character(&self, a: u32) -> i8 {
        legendre(a, self.p)
    }
}
