//! Per-element analysis: order, Jordan decomposition, and the
//! semisimple / unipotent / central / mixed classification.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ff::FieldSpec;
use crate::group::Mat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ElementKind {
    Central,
    Unipotent,
    Semisimple,
    Mixed,
}

/// Multiplicative order of an invertible matrix.
pub fn element_order(spec: &FieldSpec, g: &Mat) -> u64 {
    let mut x = g.clone();
    let mut k = 1;
    while !x.is_identity() {
        x = x.mul(g, spec);
        k += 1;
    }
    k
}

/// `(g - I)^n = 0`.
pub fn is_unipotent(spec: &FieldSpec, g: &Mat) -> bool {
    let n = g.n();
    let nil = g.sub(&Mat::identity(n), spec);
    nil.pow(n as u64, spec).is_zero()
}

/// Order coprime to the characteristic.
pub fn is_semisimple(spec: &FieldSpec, g: &Mat) -> bool {
    !element_order(spec, g).is_multiple_of(spec.p() as u64)
}

/// Scalar matrices are central; otherwise unipotent, semisimple or mixed.
pub fn element_kind(spec: &FieldSpec, g: &Mat) -> ElementKind {
    if g.is_scalar() {
        ElementKind::Central
    } else if is_unipotent(spec, g) {
        ElementKind::Unipotent
    } else if is_semisimple(spec, g) {
        ElementKind::Semisimple
    } else {
        ElementKind::Mixed
    }
}

/// `g = g_s g_u = g_u g_s` with `g_s` of order prime to `p` and `g_u`
/// unipotent, read off from the cyclic group `⟨g⟩`: if `|g| = s p^k` with
/// `gcd(s, p) = 1`, then `g_s = g^a` and `g_u = g^b` where `a ≡ 1 (mod s)`,
/// `a ≡ 0 (mod p^k)` and `a + b ≡ 1 (mod |g|)`.
pub fn jordan_decompose(spec: &FieldSpec, g: &Mat) -> Result<(Mat, Mat)> {
    if !g.is_invertible(spec) {
        return Err(Error::Singular);
    }
    let order = element_order(spec, g);
    let p = spec.p() as u64;
    let mut ppart = 1u64;
    while (order / ppart).is_multiple_of(p) {
        ppart *= p;
    }
    let s = order / ppart;
    let n = g.n();
    if s == 1 {
        return Ok((Mat::identity(n), g.clone()));
    }
    if ppart == 1 {
        return Ok((g.clone(), Mat::identity(n)));
    }
    let a = ppart * mod_inverse(ppart % s, s) % order;
    let b = (order + 1 - a) % order;
    Ok((g.pow(a, spec), g.pow(b, spec)))
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1, "arguments must be coprime");
    old_s.rem_euclid(m as i128) as u64
}
