//! The field tower `F_p ⊆ F_q ⊆ F_{q^2}`, realized as one degree-`2e`
//! extension of `F_p`, with the involution `a ↦ a^q`.
//!
//! Elements are encoded by their canonical index `Σ a_i p^i`, where
//! `a_0, ..., a_{2e-1}` are the coordinates in the power basis
//! `1, θ, ..., θ^{2e-1}` of a root `θ` of the defining modulus. The index is
//! also the wire format used by matrix files and CLI output.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest `q^2` accepted by [`FieldSpec::new`].
pub const MAX_FIELD_SIZE: u64 = 1 << 16;

/// Fields up to this size get precomputed Cayley tables.
const TABLE_LIMIT: u32 = 1024;

/// An element of `F_{q^2}`, identified by its canonical index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct FieldElem(pub u32);

impl FieldElem {
    pub const ZERO: Self = Self(0);
    pub const ONE: Self = Self(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Which field of the tower a computation lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Level {
    /// The fixed field `F_q`.
    Base,
    /// The full field `F_{q^2}`.
    Extension,
}

struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

struct Inner {
    p: u32,
    e: u32,
    q: u32,
    size: u32,
    /// Monic modulus of degree `2e`, low-degree coefficient first.
    modulus: Vec<u32>,
    conj: Vec<u32>,
    subfield: Vec<FieldElem>,
    tables: Option<Tables>,
}

/// The field `F_{q^2}` with `q = p^e`, together with its Frobenius involution.
/// Cheap to clone.
#[derive(Clone)]
pub struct FieldSpec {
    inner: Arc<Inner>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p())
            .field("e", &self.e())
            .field("modulus", &self.inner.modulus)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p
            && self.inner.e == other.inner.e
            && self.inner.modulus == other.inner.modulus
    }
}

impl Eq for FieldSpec {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits a prime power `q = p^e` into `(p, e)`.
pub fn split_prime_power(q: u64) -> Result<(u32, u32)> {
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    let p = (2..=q)
        .find(|d| q.is_multiple_of(*d))
        .expect("q >= 2 has a divisor");
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    if rest != 1 {
        return Err(Error::NotPrimePower(q));
    }
    Ok((p as u32, e))
}

/// Shorthand for [`FieldSpec::new`].
pub fn field_make(p: u64, e: u32) -> Result<FieldSpec> {
    FieldSpec::new(p, e)
}

impl FieldSpec {
    /// Builds `F_{p^{2e}}` using the monic irreducible modulus of degree `2e`
    /// whose non-leading coefficients have the smallest canonical index.
    pub fn new(p: u64, e: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::InvalidArgument(
                "extension exponent must be >= 1".into(),
            ));
        }
        let size = (p as u128).checked_pow(2 * e).unwrap_or(u128::MAX);
        if size > MAX_FIELD_SIZE as u128 {
            return Err(Error::BoundExceeded {
                what: format!("field F_{{{p}^{}}}", 2 * e),
                projected: size.to_string(),
                bound: MAX_FIELD_SIZE,
            });
        }
        let p = p as u32;
        let size = size as u32;
        let q = p.pow(e);
        let degree = 2 * e as usize;
        let modulus = (0..size)
            .map(|idx| {
                let mut m = digits_of(idx, p, degree);
                m.push(1);
                m
            })
            .find(|m| fp::is_irreducible(m, p))
            .expect("an irreducible polynomial of every degree exists");

        let mut inner = Inner {
            p,
            e,
            q,
            size,
            modulus,
            conj: Vec::new(),
            subfield: Vec::new(),
            tables: None,
        };
        if size <= TABLE_LIMIT {
            inner.tables = Some(build_tables(&inner));
        }
        let conj: Vec<u32> = (0..size).map(|a| raw_pow(&inner, a, q as u64)).collect();
        inner.subfield = (0..size)
            .filter(|&a| conj[a as usize] == a)
            .map(FieldElem)
            .collect();
        inner.conj = conj;
        Ok(Self {
            inner: Arc::new(inner),
        })
    }

    /// Builds `F_{q^2}` from the base-field order `q`.
    pub fn from_q(q: u64) -> Result<Self> {
        let (p, e) = split_prime_power(q)?;
        Self::new(p as u64, e)
    }

    pub fn p(&self) -> u32 {
        self.inner.p
    }

    pub fn e(&self) -> u32 {
        self.inner.e
    }

    /// Order of the base field `F_q`.
    pub fn q(&self) -> u32 {
        self.inner.q
    }

    /// Order of the full field `F_{q^2}`.
    pub fn size(&self) -> u32 {
        self.inner.size
    }

    /// Order of the field at `level`.
    pub fn order(&self, level: Level) -> u32 {
        match level {
            Level::Base => self.q(),
            Level::Extension => self.size(),
        }
    }

    /// Coefficients of the defining modulus, constant term first (monic).
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn elem(&self, index: u32) -> Result<FieldElem> {
        if index < self.size() {
            Ok(FieldElem(index))
        } else {
            Err(Error::InvalidArgument(format!(
                "element index {index} out of range for a field of order {}",
                self.size()
            )))
        }
    }

    /// The image of an integer in the prime field.
    pub fn from_int(&self, v: i64) -> FieldElem {
        FieldElem(v.rem_euclid(self.p() as i64) as u32)
    }

    /// Coordinates in the power basis.
    pub fn digits(&self, a: FieldElem) -> Vec<u32> {
        digits_of(a.0, self.p(), self.degree())
    }

    pub fn from_digits(&self, digits: &[u32]) -> FieldElem {
        FieldElem(index_of(digits, self.p()))
    }

    fn degree(&self) -> usize {
        2 * self.inner.e as usize
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        match &self.inner.tables {
            Some(t) => FieldElem(t.add[(a.0 * self.size() + b.0) as usize]),
            None => FieldElem(raw_add(&self.inner, a.0, b.0)),
        }
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        match &self.inner.tables {
            Some(t) => FieldElem(t.neg[a.0 as usize]),
            None => FieldElem(raw_neg(&self.inner, a.0)),
        }
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        match &self.inner.tables {
            Some(t) => FieldElem(t.mul[(a.0 * self.size() + b.0) as usize]),
            None => FieldElem(raw_mul(&self.inner, a.0, b.0)),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: FieldElem) -> Option<FieldElem> {
        if a.is_zero() {
            return None;
        }
        Some(match &self.inner.tables {
            Some(t) => FieldElem(t.inv[a.0 as usize]),
            None => FieldElem(raw_inv(&self.inner, a.0)),
        })
    }

    /// `a / b`. Panics when `b` is zero.
    pub fn div(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.mul(a, self.inv(b).expect("division by zero"))
    }

    pub fn pow(&self, a: FieldElem, mut exp: u64) -> FieldElem {
        let mut base = a;
        let mut acc = FieldElem::ONE;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// The involution `a ↦ a^q`, written `ā`.
    pub fn conj(&self, a: FieldElem) -> FieldElem {
        FieldElem(self.inner.conj[a.0 as usize])
    }

    /// `N(a) = a ā`, which lies in `F_q`.
    pub fn norm(&self, a: FieldElem) -> FieldElem {
        self.mul(a, self.conj(a))
    }

    pub fn is_in_subfield(&self, a: FieldElem) -> bool {
        self.conj(a) == a
    }

    pub fn is_at_level(&self, a: FieldElem, level: Level) -> bool {
        level == Level::Extension || self.is_in_subfield(a)
    }

    /// All elements in canonical index order, or only the `q` elements of the
    /// fixed subfield.
    pub fn enumerate(&self, subfield_only: bool) -> Vec<FieldElem> {
        if subfield_only {
            self.inner.subfield.clone()
        } else {
            (0..self.size()).map(FieldElem).collect()
        }
    }

    pub fn elements(&self, level: Level) -> Vec<FieldElem> {
        self.enumerate(level == Level::Base)
    }

    /// Some `a` with `N(a) = target`, found by scanning in index order.
    /// `target` must be a nonzero element of `F_q`.
    pub fn norm_preimage(&self, target: FieldElem) -> Option<FieldElem> {
        (1..self.size())
            .map(FieldElem)
            .find(|&a| self.norm(a) == target)
    }
}

/// Shorthand for [`FieldSpec::conj`].
pub fn conj(spec: &FieldSpec, a: FieldElem) -> FieldElem {
    spec.conj(a)
}

/// Shorthand for [`FieldSpec::norm`].
pub fn norm(spec: &FieldSpec, a: FieldElem) -> FieldElem {
    spec.norm(a)
}

/// Shorthand for [`FieldSpec::enumerate`].
pub fn enumerate_field(spec: &FieldSpec, subfield_only: bool) -> Vec<FieldElem> {
    spec.enumerate(subfield_only)
}

fn digits_of(mut idx: u32, p: u32, len: usize) -> Vec<u32> {
    let mut d = Vec::with_capacity(len);
    for _ in 0..len {
        d.push(idx % p);
        idx /= p;
    }
    d
}

fn index_of(digits: &[u32], p: u32) -> u32 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn raw_add(f: &Inner, a: u32, b: u32) -> u32 {
    let (mut a, mut b) = (a, b);
    let mut out = 0;
    let mut place = 1;
    for _ in 0..2 * f.e {
        out += ((a % f.p + b % f.p) % f.p) * place;
        a /= f.p;
        b /= f.p;
        place *= f.p;
    }
    out
}

fn raw_neg(f: &Inner, a: u32) -> u32 {
    let d: Vec<u32> = digits_of(a, f.p, 2 * f.e as usize)
        .into_iter()
        .map(|x| (f.p - x) % f.p)
        .collect();
    index_of(&d, f.p)
}

fn raw_mul(f: &Inner, a: u32, b: u32) -> u32 {
    let n = 2 * f.e as usize;
    let prod = fp::mul(&digits_of(a, f.p, n), &digits_of(b, f.p, n), f.p);
    let (_, mut r) = fp::divrem(&prod, &f.modulus, f.p);
    r.resize(n, 0);
    index_of(&r, f.p)
}

fn raw_inv(f: &Inner, a: u32) -> u32 {
    let n = 2 * f.e as usize;
    let (g, s, _) = fp::ext_gcd(&digits_of(a, f.p, n), &f.modulus, f.p);
    // g is a nonzero constant because the modulus is irreducible
    let scale = fp::inv_mod(g[0], f.p);
    let mut r = fp::scale(&s, scale, f.p);
    r.resize(n, 0);
    index_of(&r, f.p)
}

fn raw_pow(f: &Inner, a: u32, mut exp: u64) -> u32 {
    let mul = |x: u32, y: u32| match &f.tables {
        Some(t) => t.mul[(x * f.size + y) as usize],
        None => raw_mul(f, x, y),
    };
    let mut base = a;
    let mut acc = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul(acc, base);
        }
        base = mul(base, base);
        exp >>= 1;
    }
    acc
}

fn build_tables(f: &Inner) -> Tables {
    let n = f.size as usize;
    let mut add = vec![0; n * n];
    let mut mul = vec![0; n * n];
    for a in 0..f.size {
        for b in 0..f.size {
            add[(a * f.size + b) as usize] = raw_add(f, a, b);
            mul[(a * f.size + b) as usize] = raw_mul(f, a, b);
        }
    }
    let neg = (0..f.size).map(|a| raw_neg(f, a)).collect();
    let inv = (0..f.size)
        .map(|a| if a == 0 { 0 } else { raw_inv(f, a) })
        .collect();
    Tables { add, mul, neg, inv }
}

/// Dense polynomials over the prime field `F_p`, coefficients low degree
/// first. Only used to build and operate on the defining modulus.
mod fp {
    pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn inv_mod(a: u32, p: u32) -> u32 {
        let (mut acc, mut base, mut exp) = (1u64, a as u64 % p as u64, p as u64 - 2);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p as u64;
            }
            base = base * base % p as u64;
            exp >>= 1;
        }
        acc as u32
    }

    pub fn scale(a: &[u32], c: u32, p: u32) -> Vec<u32> {
        trim(
            a.iter()
                .map(|&x| (x as u64 * c as u64 % p as u64) as u32)
                .collect(),
        )
    }

    pub fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let n = a.len().max(b.len());
        trim(
            (0..n)
                .map(|i| {
                    let x = a.get(i).copied().unwrap_or(0);
                    let y = b.get(i).copied().unwrap_or(0);
                    (x + p - y) % p
                })
                .collect(),
        )
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
        trim(out.into_iter().map(|x| x as u32).collect())
    }

    pub fn divrem(a: &[u32], b: &[u32], p: u32) -> (Vec<u32>, Vec<u32>) {
        let b = trim(b.to_vec());
        assert!(!b.is_empty(), "polynomial division by zero");
        let mut r = trim(a.to_vec());
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let lead_inv = inv_mod(*b.last().unwrap(), p) as u64;
        let mut q = vec![0u32; r.len() - b.len() + 1];
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = (*r.last().unwrap() as u64 * lead_inv % p as u64) as u32;
            q[shift] = c;
            for (i, &bi) in b.iter().enumerate() {
                let t = (c as u64 * bi as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - t) % p;
            }
            r = trim(r);
        }
        (trim(q), r)
    }

    /// Returns `(g, s, t)` with `g = s a + t b`.
    pub fn ext_gcd(a: &[u32], b: &[u32], p: u32) -> (Vec<u32>, Vec<u32>, Vec<u32>) {
        let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
        let (mut s0, mut s1) = (vec![1u32], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u32]);
        while !r1.is_empty() {
            let (quot, rem) = divrem(&r0, &r1, p);
            let s2 = sub(&s0, &mul(&quot, &s1, p), p);
            let t2 = sub(&t0, &mul(&quot, &t1, p), p);
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        (r0, s0, t0)
    }

    fn powmod(base: &[u32], mut exp: u64, m: &[u32], p: u32) -> Vec<u32> {
        let mut acc = vec![1u32];
        let mut b = divrem(base, m, p).1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = divrem(&mul(&acc, &b, p), m, p).1;
            }
            b = divrem(&mul(&b, &b, p), m, p).1;
            exp >>= 1;
        }
        acc
    }

    /// Ben-Or test: `f` of degree `d` is irreducible iff
    /// `gcd(x^{p^i} - x, f) = 1` for `1 <= i <= d / 2`.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let f = trim(f.to_vec());
        let d = f.len().saturating_sub(1);
        if d == 0 {
            return false;
        }
        let x = vec![0, 1];
        let mut h = x.clone();
        for _ in 0..d / 2 {
            h = powmod(&h, p as u64, &f, p);
            let (g, _, _) = ext_gcd(&f, &sub(&h, &x, p), p);
            if g.len() > 1 {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moduli_are_lexicographically_least() {
        assert_eq!(FieldSpec::new(3, 1).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(FieldSpec::new(5, 1).unwrap().modulus(), &[2, 0, 1]);
        assert_eq!(FieldSpec::new(2, 1).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(FieldSpec::new(4, 1), Err(Error::NotPrime(4)));
        assert!(matches!(
            FieldSpec::new(3, 20),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn split_prime_powers() {
        assert_eq!(split_prime_power(9).unwrap(), (3, 2));
        assert_eq!(split_prime_power(7).unwrap(), (7, 1));
        assert!(split_prime_power(12).is_err());
        assert!(split_prime_power(1).is_err());
    }

    #[test]
    fn f9_examples() {
        let f = FieldSpec::new(3, 1).unwrap();
        let t = FieldElem(3);
        let two_t = FieldElem(6);
        assert_eq!(f.conj(t), two_t);
        assert_eq!(f.norm(t), FieldElem::ONE);
        assert_eq!(f.norm(FieldElem::ZERO), FieldElem::ZERO);
        for c in 0..3 {
            assert_eq!(f.conj(FieldElem(c)), FieldElem(c));
        }
        let norm_one = f
            .enumerate(false)
            .into_iter()
            .filter(|&a| f.norm(a) == FieldElem::ONE)
            .count();
        assert_eq!(norm_one, 4);
        assert_eq!(f.enumerate(true).len(), 3);
        assert_eq!(f.enumerate(false).len(), 9);
        assert_eq!(
            &f.enumerate(false)[..4],
            &[FieldElem(0), FieldElem(1), FieldElem(2), FieldElem(3)]
        );
    }

    #[test]
    fn table_and_raw_arithmetic_agree() {
        let f = FieldSpec::new(5, 1).unwrap();
        for a in 0..25 {
            for b in 0..25 {
                assert_eq!(f.mul(FieldElem(a), FieldElem(b)).0, raw_mul(&f.inner, a, b));
                assert_eq!(f.add(FieldElem(a), FieldElem(b)).0, raw_add(&f.inner, a, b));
            }
        }
    }

    fn check_field_axioms(f: &FieldSpec) {
        let all = f.enumerate(false);
        let q = f.q() as usize;
        // conj is a ring automorphism of order exactly two
        assert!(all.iter().any(|&a| f.conj(a) != a));
        for &a in &all {
            assert_eq!(f.conj(f.conj(a)), a);
            if let Some(inv) = f.inv(a) {
                assert_eq!(f.mul(a, inv), FieldElem::ONE);
            }
            for &b in &all {
                assert_eq!(f.conj(f.add(a, b)), f.add(f.conj(a), f.conj(b)));
                assert_eq!(f.conj(f.mul(a, b)), f.mul(f.conj(a), f.conj(b)));
                assert_eq!(f.norm(f.mul(a, b)), f.mul(f.norm(a), f.norm(b)));
            }
        }
        let sub = f.enumerate(true);
        assert_eq!(sub.len(), q);
        for &a in &sub {
            for &b in &sub {
                assert!(f.is_in_subfield(f.add(a, b)));
                assert!(f.is_in_subfield(f.mul(a, b)));
            }
            if !a.is_zero() {
                assert!(f.is_in_subfield(f.inv(a).unwrap()));
            }
        }
        // the norm maps onto F_q and has q + 1 elements of norm one
        let mut image: Vec<_> = all.iter().map(|&a| f.norm(a)).collect();
        image.sort();
        image.dedup();
        assert_eq!(image, sub);
        let kernel = all.iter().filter(|&&a| f.norm(a) == FieldElem::ONE).count();
        assert_eq!(kernel, q + 1);
    }

    #[test]
    fn field_axioms_exhaustive() {
        for (p, e) in [(3, 1), (5, 1), (7, 1), (3, 2), (2, 1)] {
            check_field_axioms(&FieldSpec::new(p, e).unwrap());
        }
    }

    #[test]
    fn large_fields_without_tables() {
        // 3^8 = 6561 elements: arithmetic runs on coordinates directly
        let f = FieldSpec::new(3, 4).unwrap();
        assert!(f.inner.tables.is_none());
        assert_eq!(f.enumerate(true).len(), 81);
        let a = FieldElem(1234);
        assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElem::ONE);
        assert_eq!(f.conj(f.conj(a)), a);
        assert!(f.is_in_subfield(f.norm(a)));
    }
}
