//! Small-field refinement: which types are realized in `GL_n(q)` and
//! `U_n(q)` once slots must be filled by distinct irreducible polynomials,
//! and the centralizer orders a type predicts.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ff::{FieldSpec, Level};
use crate::group::{
    big_pow, gl_order, gl_unipotent_centralizer_order, unipotent_centralizer_order, unitary_order,
    GroupKind, Restriction,
};
use crate::poly::{
    enumerate_irreducibles, enumerate_irreducibles_at, IrreducibleFilter, POLY_ENUM_BOUND,
};
use crate::zcount::{enumerate_types_gl, enumerate_types_u, Slot, UZType, ZType};

fn mobius(mut n: u64) -> i64 {
    let mut result = 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            result = -result;
        }
        d += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Monic irreducibles of degree `d` over `F_Q`: `(1/d) Σ_{k | d} μ(d/k) Q^k`.
pub fn necklace_count(field_order: u64, d: u32) -> BigUint {
    let mut pos = BigUint::zero();
    let mut neg = BigUint::zero();
    for k in (1..=d).filter(|k| d.is_multiple_of(*k)) {
        match mobius((d / k) as u64) {
            1 => pos += big_pow(field_order, k),
            -1 => neg += big_pow(field_order, k),
            _ => {}
        }
    }
    (pos - neg) / d
}

fn within_enum_bound(field_order: u64, d: u32) -> bool {
    (field_order as u128)
        .checked_pow(d)
        .is_some_and(|c| c <= POLY_ENUM_BOUND as u128)
}

/// Distinct characteristic-polynomial factors of degree `d` available to a
/// `GL_n(q)` type: monic irreducibles over `F_q` other than `x`. Enumerated
/// when small, otherwise from the necklace formula.
pub fn gl_supply(spec: &FieldSpec, d: u32) -> Result<u64> {
    let q = spec.q() as u64;
    let with_x = if within_enum_bound(q, d) {
        enumerate_irreducibles_at(spec, d as usize, Level::Base)?.len() as u64
    } else {
        necklace_count(q, d).to_u64().unwrap_or(u64::MAX)
    };
    Ok(with_x - u64::from(d == 1))
}

/// Self-U-reciprocal monic irreducibles of degree `d` over `F_{q^2}`, by
/// enumeration.
pub fn u_odd_supply(spec: &FieldSpec, d: u32) -> Result<u64> {
    Ok(enumerate_irreducibles(spec, d as usize, IrreducibleFilter::SelfUReciprocal)?.len() as u64)
}

/// Unordered pairs `{f, f̃}` of distinct monic irreducibles of degree `l`
/// over `F_{q^2}`, by enumeration.
pub fn u_pair_supply(spec: &FieldSpec, l: u32) -> Result<u64> {
    Ok(
        enumerate_irreducibles(spec, l as usize, IrreducibleFilter::NonSelfUReciprocalPairs)?.len()
            as u64,
    )
}

fn slots_per_degree(slots: &[Slot]) -> BTreeMap<u32, u64> {
    let mut by_degree = BTreeMap::new();
    for s in slots {
        *by_degree.entry(s.degree).or_insert(0u64) += 1;
    }
    by_degree
}

/// Memoized supplies per degree.
struct Supplies<'a> {
    spec: &'a FieldSpec,
    compute: fn(&FieldSpec, u32) -> Result<u64>,
    cache: BTreeMap<u32, u64>,
}

impl<'a> Supplies<'a> {
    fn new(spec: &'a FieldSpec, compute: fn(&FieldSpec, u32) -> Result<u64>) -> Self {
        Self {
            spec,
            compute,
            cache: BTreeMap::new(),
        }
    }

    fn covers(&mut self, slots: &[Slot]) -> Result<bool> {
        for (d, need) in slots_per_degree(slots) {
            let have = match self.cache.get(&d) {
                Some(&s) => s,
                None => {
                    let s = (self.compute)(self.spec, d)?;
                    self.cache.insert(d, s);
                    s
                }
            };
            if need > have {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `GL_n(q)` types whose slots can be filled by distinct polynomials.
pub fn realizable_types_gl(n: u32, spec: &FieldSpec) -> Result<Vec<ZType>> {
    let mut supplies = Supplies::new(spec, gl_supply);
    let mut out = Vec::new();
    for t in enumerate_types_gl(n) {
        if supplies.covers(t.slots())? {
            out.push(t);
        }
    }
    Ok(out)
}

/// `U_n(q)` types whose slots can be filled by distinct polynomials.
pub fn realizable_types_u(n: u32, spec: &FieldSpec) -> Result<Vec<UZType>> {
    let mut odd = Supplies::new(spec, u_odd_supply);
    let mut pair = Supplies::new(spec, u_pair_supply);
    let mut out = Vec::new();
    for t in enumerate_types_u(n) {
        if odd.covers(t.odd_slots())? && pair.covers(t.pair_slots())? {
            out.push(t);
        }
    }
    Ok(out)
}

fn restriction_admits(restriction: Restriction, semisimple: bool, unipotent: bool) -> bool {
    match restriction {
        Restriction::All => true,
        Restriction::Semisimple => semisimple,
        Restriction::Unipotent => unipotent,
    }
}

/// Number of realizable types of weight `n` over `F_q` for the given
/// group, restricted to semisimple or unipotent types if asked.
pub fn count_realizable_restricted(
    n: u32,
    q: u64,
    kind: GroupKind,
    restriction: Restriction,
) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be >= 1".into()));
    }
    let spec = FieldSpec::from_q(q)?;
    let count = match kind {
        GroupKind::GeneralLinear => realizable_types_gl(n, &spec)?
            .iter()
            .filter(|t| restriction_admits(restriction, t.is_semisimple(), t.is_unipotent()))
            .count(),
        GroupKind::Unitary => realizable_types_u(n, &spec)?
            .iter()
            .filter(|t| restriction_admits(restriction, t.is_semisimple(), t.is_unipotent()))
            .count(),
    };
    Ok(count as u64)
}

pub fn count_realizable(n: u32, q: u64, kind: GroupKind) -> Result<u64> {
    count_realizable_restricted(n, q, kind, Restriction::All)
}

/// `|Z(g)|` in `GL_n(q)` for `g` of type `t`: each slot `(d, λ)` contributes
/// the centralizer of a unipotent of shape `λ` in `GL_{|λ|}(q^d)`.
pub fn centralizer_order_gl(t: &ZType, q: u64) -> BigUint {
    t.slots()
        .iter()
        .map(|s| gl_unipotent_centralizer_order(&big_pow(q, s.degree), &s.shape))
        .product()
}

/// `|Z(g)|` in `U_n(q)` for `g` of type `t`: a self-U-reciprocal slot
/// `(d, λ)` contributes a unipotent centralizer in `U_{|λ|}(q^d)`, a pair
/// slot `(l, λ)` one in `GL_{|λ|}(q^{2l})`.
pub fn centralizer_order_u(t: &UZType, q: u64) -> BigUint {
    let odd: BigUint = t
        .odd_slots()
        .iter()
        .map(|s| unipotent_centralizer_order(&big_pow(q, s.degree), &s.shape))
        .product();
    let pair: BigUint = t
        .pair_slots()
        .iter()
        .map(|s| gl_unipotent_centralizer_order(&big_pow(q, 2 * s.degree), &s.shape))
        .product();
    odd * pair
}

/// `Π |GL_m(q^d)|` over the slots of a semisimple type.
pub fn semisimple_centralizer_order_gl(t: &ZType, q: u64) -> Result<BigUint> {
    if !t.is_semisimple() {
        return Err(Error::NotSemisimple);
    }
    Ok(t.slots()
        .iter()
        .map(|s| gl_order(s.shape.weight(), &big_pow(q, s.degree)))
        .product())
}

/// `Π |U_m(q^d)| · Π |GL_r(q^{2l})|` for a semisimple unitary type.
pub fn semisimple_centralizer_order_u(t: &UZType, q: u64) -> Result<BigUint> {
    if !t.is_semisimple() {
        return Err(Error::NotSemisimple);
    }
    let odd: BigUint = t
        .odd_slots()
        .iter()
        .map(|s| unitary_order(s.shape.weight(), &big_pow(q, s.degree)))
        .product();
    let pair: BigUint = t
        .pair_slots()
        .iter()
        .map(|s| gl_order(s.shape.weight(), &big_pow(q, 2 * s.degree)))
        .product();
    Ok(odd * pair)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: u64) -> FieldSpec {
        FieldSpec::from_q(q).unwrap()
    }

    #[test]
    fn necklace_agrees_with_enumeration() {
        for q in [2u64, 3, 4, 5, 9] {
            let spec = f(q);
            for d in 1..=4u32 {
                if !within_enum_bound(q, d) {
                    continue;
                }
                let n = enumerate_irreducibles_at(&spec, d as usize, Level::Base)
                    .unwrap()
                    .len();
                assert_eq!(necklace_count(q, d), BigUint::from(n), "q={q} d={d}");
            }
        }
        assert_eq!(necklace_count(2, 8), BigUint::from(30u32));
    }

    #[test]
    fn degree_one_supplies() {
        for q in [3u64, 5, 7] {
            let spec = f(q);
            assert_eq!(gl_supply(&spec, 1).unwrap(), q - 1);
            assert_eq!(u_odd_supply(&spec, 1).unwrap(), q + 1);
            // q^2 - 1 nonzero roots, q + 1 of norm one, the rest paired
            assert_eq!(u_pair_supply(&spec, 1).unwrap(), (q * q - 1 - (q + 1)) / 2);
        }
    }

    #[test]
    fn realizable_examples() {
        assert_eq!(count_realizable(2, 3, GroupKind::GeneralLinear).unwrap(), 4);
        assert_eq!(count_realizable(3, 3, GroupKind::GeneralLinear).unwrap(), 7);
        assert_eq!(count_realizable(3, 3, GroupKind::Unitary).unwrap(), 8);
        assert_eq!(count_realizable(2, 2, GroupKind::GeneralLinear).unwrap(), 3);
        let ss = |kind| count_realizable_restricted(3, 3, kind, Restriction::Semisimple).unwrap();
        assert_eq!(ss(GroupKind::GeneralLinear), 4);
        assert_eq!(ss(GroupKind::Unitary), 5);
        for kind in [GroupKind::GeneralLinear, GroupKind::Unitary] {
            assert_eq!(
                count_realizable_restricted(3, 3, kind, Restriction::Unipotent).unwrap(),
                3
            );
        }
    }

    #[test]
    fn large_supplies_realize_everything() {
        for q in [5u64, 7] {
            for n in 1..=3 {
                let all = enumerate_types_gl(n).len() as u64;
                assert_eq!(
                    count_realizable(n, q, GroupKind::GeneralLinear).unwrap(),
                    all
                );
                assert_eq!(count_realizable(n, q, GroupKind::Unitary).unwrap(), all);
            }
        }
    }

    #[test]
    fn centralizer_order_examples() {
        let t = |s: &str| s.parse::<UZType>().unwrap();
        assert_eq!(
            semisimple_centralizer_order_u(&t("o1:[1,1]"), 3).unwrap(),
            BigUint::from(96u32)
        );
        assert_eq!(
            semisimple_centralizer_order_u(&t("o1:[1] o1:[1]"), 3).unwrap(),
            BigUint::from(16u32)
        );
        assert_eq!(
            semisimple_centralizer_order_u(&t("p1:[1]"), 3).unwrap(),
            BigUint::from(8u32)
        );
        assert_eq!(
            semisimple_centralizer_order_u(&t("o1:[2]"), 3),
            Err(Error::NotSemisimple)
        );
        assert_eq!(centralizer_order_u(&t("o1:[2]"), 3), BigUint::from(12u32));
        let g: ZType = "d1:[1] d1:[1]".parse().unwrap();
        assert_eq!(
            semisimple_centralizer_order_gl(&g, 3).unwrap(),
            BigUint::from(4u32)
        );
    }

    #[test]
    fn both_centralizer_paths_agree_on_semisimple_types() {
        for n in 1..=6 {
            for t in enumerate_types_u(n).iter().filter(|t| t.is_semisimple()) {
                for q in [3u64, 5] {
                    assert_eq!(
                        centralizer_order_u(t, q),
                        semisimple_centralizer_order_u(t, q).unwrap()
                    );
                }
            }
            for t in enumerate_types_gl(n).iter().filter(|t| t.is_semisimple()) {
                assert_eq!(
                    centralizer_order_gl(t, 3),
                    semisimple_centralizer_order_gl(t, 3).unwrap()
                );
            }
        }
    }
}
