//! Finite fields `F_{p^r}` with `p^r <= 2^20`.
//!
//! Elements are stored as plain `u32` values using the integer encoding
//! `sum(coeffs[i] * p^i)` of their polynomial-basis coordinates. A
//! [`FieldSpec`] carries the arithmetic for those raw values; the
//! [`FieldElement`] wrapper pairs a value with its field for checked,
//! user-facing arithmetic.
//!
//! Extension fields with `q <= 2^16` use log/antilog tables (plus a Zech
//! table for addition when `p` is odd); larger extension fields fall back to
//! polynomial arithmetic modulo the defining polynomial.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;
const TABLE_LIMIT: u64 = 1 << 16;
const NO_ZECH: u32 = u32::MAX;

#[derive(Debug)]
enum Arith {
    Binary,
    Prime,
    BinaryTables { exp: Vec<u32>, log: Vec<u32> },
    ZechTables { exp: Vec<u32>, log: Vec<u32>, zech: Vec<u32> },
    Poly,
}

#[derive(Debug)]
struct FieldInner {
    p: u32,
    r: u32,
    q: u32,
    modulus: Vec<u32>,
    arith: Arith,
}

/// The finite field `F_q`, `q = p^r`. Cheap to clone.
#[derive(Clone)]
pub struct FieldSpec(Arc<FieldInner>);

/// Serializable summary of a field (used in reports and code files).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u32,
    pub r: u32,
    pub q: u32,
    /// Defining polynomial, coefficients low-to-high.
    pub modulus: Vec<u32>,
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
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

/// Dense polynomials over a prime field, coefficients low-to-high, no
/// trailing zeros (the zero polynomial is empty).
mod poly {
    pub fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    fn inv_mod(a: u32, p: u32) -> u32 {
        let mut result = 1u64;
        let mut base = a as u64 % p as u64;
        let mut e = p as u64 - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base % p as u64;
            }
            base = base * base % p as u64;
            e >>= 1;
        }
        result as u32
    }

    pub fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let len = a.len().max(b.len());
        let mut out = vec![0u32; len];
        for (i, slot) in out.iter_mut().enumerate() {
            let x = *a.get(i).unwrap_or(&0) as u64;
            let y = *b.get(i).unwrap_or(&0) as u64;
            *slot = ((x + p as u64 - y) % p as u64) as u32;
        }
        trim(&mut out);
        out
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let mut out: Vec<u32> = out.into_iter().map(|v| v as u32).collect();
        trim(&mut out);
        out
    }

    /// Remainder of `a` modulo `m` (`m` nonzero).
    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let lead_inv = inv_mod(m[dm], p) as u64;
        while r.len() > dm {
            let shift = r.len() - 1 - dm;
            let c = r[r.len() - 1] as u64 * lead_inv % p as u64;
            for (i, &mi) in m.iter().enumerate() {
                let idx = shift + i;
                r[idx] = ((r[idx] as u64 + p as u64 - c * mi as u64 % p as u64) % p as u64) as u32;
            }
            trim(&mut r);
        }
        r
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        x
    }

    pub fn mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        rem(&mul(a, b, p), m, p)
    }

    pub fn powmod(base: &[u32], mut e: u64, m: &[u32], p: u32) -> Vec<u32> {
        let mut result = vec![1u32];
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                result = mulmod(&result, &b, m, p);
            }
            b = mulmod(&b, &b, m, p);
            e >>= 1;
        }
        result
    }

    /// Irreducibility of a monic `f` of degree `r >= 1`: no factor of degree
    /// `i <= r/2`, i.e. `gcd(f, x^(p^i) - x) = 1` for each such `i`.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let r = f.len() - 1;
        if r == 1 {
            return true;
        }
        if f[0] == 0 {
            return false;
        }
        let x = vec![0u32, 1];
        let mut h = x.clone();
        for _ in 1..=r / 2 {
            h = powmod(&h, p as u64, f, p);
            let g = gcd(f, &sub(&h, &x, p), p);
            if g.len() > 1 {
                return false;
            }
        }
        true
    }
}

fn encode(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0u32, |acc, &c| acc * p + c)
}

fn decode(mut v: u32, p: u32, r: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(r as usize);
    for _ in 0..r {
        out.push(v % p);
        v /= p;
    }
    poly::trim(&mut out);
    out
}

/// Lexicographically smallest (coefficients compared low-degree first) monic
/// irreducible polynomial of degree `r` over `F_p`.
fn smallest_irreducible(p: u32, r: u32) -> Vec<u32> {
    let r = r as usize;
    let mut coeffs = vec![0u32; r];
    loop {
        let mut f = coeffs.clone();
        f.push(1);
        if poly::is_irreducible(&f, p) {
            return f;
        }
        // c_{r-1} is the least significant digit of the scan.
        let mut idx = r;
        loop {
            idx -= 1;
            coeffs[idx] += 1;
            if coeffs[idx] < p {
                break;
            }
            coeffs[idx] = 0;
            assert!(idx > 0, "an irreducible polynomial of every degree exists");
        }
    }
}

impl FieldSpec {
    /// Builds `F_{p^r}` with the deterministic choice of defining polynomial.
    pub fn new(p: u64, r: u32) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidDegree);
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let q = (p as u128).checked_pow(r).unwrap_or(u128::MAX);
        if q > MAX_FIELD_ORDER as u128 {
            return Err(Error::FieldTooLarge { p, r });
        }
        let (p, q) = (p as u32, q as u32);
        if r == 1 {
            let arith = if p == 2 { Arith::Binary } else { Arith::Prime };
            return Ok(FieldSpec(Arc::new(FieldInner { p, r, q, modulus: vec![0, 1], arith })));
        }
        let modulus = smallest_irreducible(p, r);
        let arith = if (q as u64) <= TABLE_LIMIT {
            let (exp, log) = build_log_tables(p, r, q, &modulus);
            if p == 2 {
                Arith::BinaryTables { exp, log }
            } else {
                let zech = build_zech(p, r, q, &exp, &log);
                Arith::ZechTables { exp, log, zech }
            }
        } else {
            Arith::Poly
        };
        Ok(FieldSpec(Arc::new(FieldInner { p, r, q, modulus, arith })))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }
    pub fn r(&self) -> u32 {
        self.0.r
    }
    pub fn order(&self) -> u32 {
        self.0.q
    }
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor { p: self.p(), r: self.r(), q: self.order(), modulus: self.modulus().to_vec() }
    }

    /// Rebuilds a field from a descriptor, checking the stored polynomial
    /// matches the deterministic choice.
    pub fn from_descriptor(d: &FieldDescriptor) -> Result<Self> {
        let f = FieldSpec::new(d.p as u64, d.r)?;
        if f.order() != d.q || f.modulus() != d.modulus.as_slice() {
            return Err(Error::FieldMismatch);
        }
        Ok(f)
    }

    pub fn same(&self, other: &FieldSpec) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.r == other.0.r && self.0.modulus == other.0.modulus)
    }

    #[inline]
    pub fn contains(&self, v: u32) -> bool {
        v < self.0.q
    }

    pub fn check(&self, v: u64) -> Result<u32> {
        if v < self.0.q as u64 {
            Ok(v as u32)
        } else {
            Err(Error::InvalidElement(v))
        }
    }

    /// Image of an integer under `Z -> F_p -> F_q`.
    #[inline]
    pub fn from_int(&self, k: i64) -> u32 {
        k.rem_euclid(self.0.p as i64) as u32
    }

    /// All elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.0.q
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let f = &*self.0;
        match &f.arith {
            Arith::Binary | Arith::BinaryTables { .. } => a ^ b,
            Arith::Prime => {
                let s = a as u64 + b as u64;
                (if s >= f.p as u64 { s - f.p as u64 } else { s }) as u32
            }
            Arith::ZechTables { exp, log, zech } => {
                if a == 0 {
                    return b;
                }
                if b == 0 {
                    return a;
                }
                let n = f.q - 1;
                let (i, j) = (log[a as usize], log[b as usize]);
                let k = if j >= i { j - i } else { j + n - i };
                let z = zech[k as usize];
                if z == NO_ZECH {
                    0
                } else {
                    exp[(i + z) as usize]
                }
            }
            Arith::Poly => self.digit_op(a, b, |x, y, p| (x + y) % p),
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        let f = &*self.0;
        match &f.arith {
            Arith::Binary | Arith::BinaryTables { .. } => a,
            Arith::Prime => {
                if a == 0 {
                    0
                } else {
                    f.p - a
                }
            }
            Arith::ZechTables { exp, log, .. } => {
                if a == 0 {
                    0
                } else {
                    exp[(log[a as usize] + (f.q - 1) / 2) as usize]
                }
            }
            Arith::Poly => self.digit_op(0, a, |x, y, p| (x + p - y) % p),
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        match &self.0.arith {
            Arith::Binary | Arith::BinaryTables { .. } => a ^ b,
            Arith::Prime => {
                let p = self.0.p;
                if a >= b {
                    a - b
                } else {
                    a + p - b
                }
            }
            _ => self.add(a, self.neg(b)),
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let f = &*self.0;
        match &f.arith {
            Arith::Binary => a & b,
            Arith::Prime => (a as u64 * b as u64 % f.p as u64) as u32,
            Arith::BinaryTables { exp, log } | Arith::ZechTables { exp, log, .. } => {
                if a == 0 || b == 0 {
                    0
                } else {
                    exp[(log[a as usize] + log[b as usize]) as usize]
                }
            }
            Arith::Poly => {
                let prod = poly::mulmod(&decode(a, f.p, f.r), &decode(b, f.p, f.r), &f.modulus, f.p);
                encode(&prod, f.p)
            }
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let f = &*self.0;
        Some(match &f.arith {
            Arith::Binary => 1,
            Arith::BinaryTables { exp, log } | Arith::ZechTables { exp, log, .. } => {
                exp[((f.q - 1 - log[a as usize]) % (f.q - 1)) as usize]
            }
            _ => self.pow(a, f.q as u64 - 2),
        })
    }

    pub fn div(&self, a: u32, b: u32) -> Option<u32> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    /// Square-and-multiply exponentiation (`a^0 = 1`, including `0^0`).
    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut result = 1u32;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    fn digit_op(&self, a: u32, b: u32, op: impl Fn(u32, u32, u32) -> u32) -> u32 {
        let (p, r) = (self.0.p, self.0.r);
        let (mut a, mut b) = (a, b);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..r {
            out += op(a % p, b % p, p) * place;
            a /= p;
            b /= p;
            place = place.wrapping_mul(p);
        }
        out
    }

    /// `dst[i] += c * src[i]`.
    #[inline]
    pub fn axpy(&self, dst: &mut [u32], src: &[u32], c: u32) {
        if c == 0 {
            return;
        }
        match &self.0.arith {
            Arith::Binary => {
                for (d, &s) in dst.iter_mut().zip(src) {
                    *d ^= s;
                }
            }
            Arith::Prime => {
                let p = self.0.p as u64;
                for (d, &s) in dst.iter_mut().zip(src) {
                    *d = ((*d as u64 + c as u64 * s as u64) % p) as u32;
                }
            }
            _ => {
                for (d, &s) in dst.iter_mut().zip(src) {
                    if s != 0 {
                        *d = self.add(*d, self.mul(c, s));
                    }
                }
            }
        }
    }

    #[inline]
    pub fn scale(&self, row: &mut [u32], c: u32) {
        if c == 1 {
            return;
        }
        for v in row.iter_mut() {
            *v = self.mul(*v, c);
        }
    }

    pub fn dot(&self, a: &[u32], b: &[u32]) -> u32 {
        match &self.0.arith {
            Arith::Binary => (a.iter().zip(b).fold(0u32, |acc, (&x, &y)| acc ^ (x & y))) & 1,
            Arith::Prime => {
                let p = self.0.p as u64;
                let mut acc = 0u64;
                for (&x, &y) in a.iter().zip(b) {
                    acc = (acc + x as u64 * y as u64) % p;
                }
                acc as u32
            }
            _ => a.iter().zip(b).fold(0, |acc, (&x, &y)| self.add(acc, self.mul(x, y))),
        }
    }

    pub fn element(&self, v: u64) -> Result<FieldElement> {
        Ok(FieldElement { field: self.clone(), value: self.check(v)? })
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { field: self.clone(), value: 0 }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement { field: self.clone(), value: 1 }
    }
}

fn build_log_tables(p: u32, r: u32, q: u32, modulus: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let n = (q - 1) as u64;
    let factors = prime_factors(n);
    let one = vec![1u32];
    let generator = (2..q)
        .map(|g| decode(g, p, r))
        .find(|g| factors.iter().all(|&l| poly::powmod(g, n / l, modulus, p) != one))
        .expect("the multiplicative group of a finite field is cyclic");
    let mut exp = vec![0u32; 2 * (q as usize - 1)];
    let mut log = vec![0u32; q as usize];
    let mut cur = one;
    for i in 0..(q - 1) as usize {
        let v = encode(&cur, p);
        exp[i] = v;
        exp[i + q as usize - 1] = v;
        log[v as usize] = i as u32;
        cur = poly::mulmod(&cur, &generator, modulus, p);
    }
    (exp, log)
}

fn build_zech(p: u32, r: u32, q: u32, exp: &[u32], log: &[u32]) -> Vec<u32> {
    (0..q - 1)
        .map(|k| {
            let v = exp[k as usize];
            let mut digits = decode(v, p, r);
            if digits.is_empty() {
                digits.push(0);
            }
            digits[0] = (digits[0] + 1) % p;
            let s = encode(&digits, p);
            if s == 0 {
                NO_ZECH
            } else {
                log[s as usize]
            }
        })
        .collect()
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}; modulus {:?})", self.p(), self.r(), self.modulus())
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.order())
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}
impl Eq for FieldSpec {}

/// An element together with its field.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: FieldSpec,
    value: u32,
}

impl FieldElement {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    /// Integer encoding `sum(coeffs[i] * p^i)`.
    pub fn value(&self) -> u32 {
        self.value
    }

    /// Polynomial-basis coordinates, low degree first, length `r`.
    pub fn coeffs(&self) -> Vec<u32> {
        let mut c = decode(self.value, self.field.p(), self.field.r());
        c.resize(self.field.r() as usize, 0);
        c
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn same_field(&self, other: &FieldElement) -> Result<()> {
        if self.field.same(&other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn with(&self, value: u32) -> FieldElement {
        FieldElement { field: self.field.clone(), value }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.with(self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.with(self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.with(self.field.mul(self.value, other.value)))
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        let v = self.field.div(self.value, other.value).ok_or(Error::DivisionByZero)?;
        Ok(self.with(v))
    }

    pub fn inv(&self) -> Result<FieldElement> {
        Ok(self.with(self.field.inv(self.value).ok_or(Error::DivisionByZero)?))
    }

    pub fn neg(&self) -> FieldElement {
        self.with(self.field.neg(self.value))
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        self.with(self.field.pow(self.value, e))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.value, self.field)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Monic irreducibility by exhaustive root-and-factor search, for the
    /// tiny fields the tests need.
    fn has_root(f: &[u32], p: u32) -> bool {
        (0..p).any(|x| {
            let v = f.iter().rev().fold(0u64, |acc, &c| (acc * x as u64 + c as u64) % p as u64);
            v == 0
        })
    }

    #[test]
    fn prime_fields() {
        let f2 = FieldSpec::new(2, 1).unwrap();
        assert_eq!(f2.modulus(), &[0, 1]);
        assert_eq!(f2.add(1, 1), 0);
        let f3 = FieldSpec::new(3, 1).unwrap();
        assert_eq!(f3.inv(2), Some(2));
        assert_eq!(f3.neg(1), 2);
    }

    #[test]
    fn f4_modulus_is_the_only_irreducible_quadratic() {
        let all: Vec<Vec<u32>> =
            (0..4).map(|v| vec![v & 1, v >> 1, 1]).filter(|f| !has_root(f, 2)).collect();
        assert_eq!(all, vec![vec![1, 1, 1]]);
        let f4 = FieldSpec::new(2, 2).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        // x * (x + 1) = x^2 + x = 1 mod x^2 + x + 1; x encodes as 2, x+1 as 3.
        assert_eq!(f4.mul(2, 3), 1);
    }

    #[test]
    fn f9_modulus_from_lexicographic_scan() {
        let mut first = None;
        'scan: for c0 in 0..3 {
            for c1 in 0..3 {
                let f = vec![c0, c1, 1];
                if !has_root(&f, 3) {
                    first = Some(f);
                    break 'scan;
                }
            }
        }
        assert_eq!(first, Some(vec![1, 0, 1]));
        assert_eq!(FieldSpec::new(3, 2).unwrap().modulus(), &[1, 0, 1]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(FieldSpec::new(4, 1).unwrap_err(), Error::NotPrime(4));
        assert_eq!(FieldSpec::new(2, 21).unwrap_err(), Error::FieldTooLarge { p: 2, r: 21 });
        assert_eq!(FieldSpec::new(3, 0).unwrap_err(), Error::InvalidDegree);
        assert!(FieldSpec::new(2, 20).is_ok());
    }

    #[test]
    fn element_errors() {
        let f3 = FieldSpec::new(3, 1).unwrap();
        let f5 = FieldSpec::new(5, 1).unwrap();
        let a = f3.element(1).unwrap();
        let b = f5.element(1).unwrap();
        assert_eq!(a.add(&b).unwrap_err(), Error::FieldMismatch);
        assert_eq!(a.div(&f3.zero()).unwrap_err(), Error::DivisionByZero);
        assert_eq!(f3.zero().inv().unwrap_err(), Error::DivisionByZero);
        assert!(f3.element(3).is_err());
        assert_eq!(a.add(&a).unwrap().value(), 2);
    }

    /// Table, Zech and polynomial back ends must agree.
    #[test]
    fn backends_agree() {
        for &(p, r) in &[(2u64, 3u32), (3, 2), (5, 2), (3, 3), (7, 2)] {
            let f = FieldSpec::new(p, r).unwrap();
            let (p32, r32) = (p as u32, r);
            for a in f.elements() {
                for b in f.elements() {
                    let prod = poly::mulmod(&decode(a, p32, r32), &decode(b, p32, r32), f.modulus(), p32);
                    assert_eq!(f.mul(a, b), encode(&prod, p32));
                    assert_eq!(f.add(a, b), f.digit_op(a, b, |x, y, p| (x + y) % p));
                    assert_eq!(f.sub(f.add(a, b), b), a);
                }
            }
        }
    }

    #[test]
    fn large_field_uses_polynomials() {
        let f = FieldSpec::new(2, 17).unwrap();
        assert!(matches!(f.0.arith, Arith::Poly));
        let a = 0x1_2345 % f.order();
        let ai = f.inv(a).unwrap();
        assert_eq!(f.mul(a, ai), 1);
        // Frobenius fixes F_2 and has order 17.
        assert_eq!(f.pow(a, 1 << 17), a);
    }

    #[test]
    fn field_descriptor_round_trip() {
        let f = FieldSpec::new(3, 2).unwrap();
        let d = f.descriptor();
        assert_eq!(FieldSpec::from_descriptor(&d).unwrap(), f);
        let mut bad = d.clone();
        bad.modulus = vec![2, 0, 1];
        assert!(FieldSpec::from_descriptor(&bad).is_err());
    }
}
