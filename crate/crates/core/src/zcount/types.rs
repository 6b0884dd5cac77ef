//! z-class types: multisets of `(degree, partition)` slots.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::combinatorics::{enumerate_partitions, Partition};
use crate::error::{Error, Result};

/// One slot: an irreducible factor of degree `degree` whose primary
/// component carries unipotent shape `shape`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Slot {
    pub degree: u32,
    pub shape: Partition,
}

impl Slot {
    pub fn new(degree: u32, shape: Partition) -> Self {
        Self { degree, shape }
    }

    pub fn weight(&self) -> u32 {
        self.degree * self.shape.weight()
    }

    pub fn is_semisimple(&self) -> bool {
        self.shape.is_all_ones()
    }

    fn parse(text: &str, tag: char) -> Result<Self> {
        let bad = || Error::Parse(format!("bad slot {text:?}"));
        let rest = text.strip_prefix(tag).ok_or_else(bad)?;
        let (deg, shape) = rest.split_once(':').ok_or_else(bad)?;
        let degree: u32 = deg.parse().map_err(|_| bad())?;
        let inner = shape
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(bad)?;
        let parts = inner
            .split(',')
            .map(|p| p.trim().parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| bad())?;
        let shape = Partition::new(parts)
            .filter(|p| !p.is_empty())
            .ok_or_else(bad)?;
        if degree == 0 {
            return Err(bad());
        }
        Ok(Self { degree, shape })
    }
}

/// Degree ascending, then larger shapes first.
impl Ord for Slot {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| other.shape.cmp(&self.shape))
    }
}

impl PartialOrd for Slot {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A `GL` type: slots of any degree, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZType {
    slots: Vec<Slot>,
}

impl ZType {
    pub fn new(mut slots: Vec<Slot>) -> Self {
        slots.sort();
        Self { slots }
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn weight(&self) -> u32 {
        self.slots.iter().map(Slot::weight).sum()
    }

    pub fn is_semisimple(&self) -> bool {
        self.slots.iter().all(Slot::is_semisimple)
    }

    /// A single degree-one slot: the type of `λ·u` with `λ` scalar and `u`
    /// unipotent.
    pub fn is_unipotent(&self) -> bool {
        self.slots.len() == 1 && self.slots[0].degree == 1
    }
}

impl fmt::Display for ZType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.slots.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "d{}:{}", s.degree, s.shape)?;
        }
        Ok(())
    }
}

impl FromStr for ZType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let slots = s
            .split_whitespace()
            .map(|t| Slot::parse(t, 'd'))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(slots))
    }
}

impl Serialize for ZType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A unitary type: slots for self-U-reciprocal factors (odd degree) and
/// slots for pairs `{f, f̃}` of factors of degree `l`, weighing `2 l |λ|`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UZType {
    odd_slots: Vec<Slot>,
    pair_slots: Vec<Slot>,
}

impl UZType {
    pub fn new(mut odd_slots: Vec<Slot>, mut pair_slots: Vec<Slot>) -> Result<Self> {
        if let Some(s) = odd_slots.iter().find(|s| s.degree % 2 == 0) {
            return Err(Error::InvalidArgument(format!(
                "self-U-reciprocal slot of even degree {}",
                s.degree
            )));
        }
        odd_slots.sort();
        pair_slots.sort();
        Ok(Self {
            odd_slots,
            pair_slots,
        })
    }

    pub fn odd_slots(&self) -> &[Slot] {
        &self.odd_slots
    }

    pub fn pair_slots(&self) -> &[Slot] {
        &self.pair_slots
    }

    pub fn weight(&self) -> u32 {
        self.odd_slots.iter().map(Slot::weight).sum::<u32>()
            + 2 * self.pair_slots.iter().map(Slot::weight).sum::<u32>()
    }

    pub fn is_semisimple(&self) -> bool {
        self.odd_slots
            .iter()
            .chain(&self.pair_slots)
            .all(Slot::is_semisimple)
    }

    pub fn is_unipotent(&self) -> bool {
        self.pair_slots.is_empty() && self.odd_slots.len() == 1 && self.odd_slots[0].degree == 1
    }
}

impl fmt::Display for UZType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let odd = self.odd_slots.iter().map(|s| ('o', s));
        let pair = self.pair_slots.iter().map(|s| ('p', s));
        for (i, (tag, s)) in odd.chain(pair).enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{tag}{}:{}", s.degree, s.shape)?;
        }
        Ok(())
    }
}

impl FromStr for UZType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut odd = Vec::new();
        let mut pair = Vec::new();
        for tok in s.split_whitespace() {
            if tok.starts_with('o') {
                odd.push(Slot::parse(tok, 'o')?);
            } else {
                pair.push(Slot::parse(tok, 'p')?);
            }
        }
        Self::new(odd, pair)
    }
}

impl Serialize for UZType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// All slots `(d, λ)` with `d ∈ degrees` and `d·|λ| ≤ n`, in slot order.
fn slot_kinds(n: u32, degrees: impl Iterator<Item = u32>) -> Vec<Slot> {
    let mut kinds = Vec::new();
    for d in degrees {
        for m in 1..=n / d {
            for shape in enumerate_partitions(m) {
                kinds.push(Slot::new(d, shape));
            }
        }
    }
    kinds.sort();
    kinds
}

/// Multisets of slots from `kinds` of total weight `target`, each listed as
/// a non-decreasing sequence of kind positions; `scale` multiplies weights.
fn slot_multisets(kinds: &[Slot], target: u32, scale: u32) -> Vec<Vec<Slot>> {
    fn go(
        kinds: &[Slot],
        from: usize,
        left: u32,
        scale: u32,
        cur: &mut Vec<Slot>,
        out: &mut Vec<Vec<Slot>>,
    ) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for (i, k) in kinds.iter().enumerate().skip(from) {
            let w = scale * k.weight();
            if w <= left {
                cur.push(k.clone());
                go(kinds, i, left - w, scale, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(kinds, 0, target, scale, &mut Vec::new(), &mut out);
    out
}

/// All `GL` types of weight `n`, in canonical order.
pub fn enumerate_types_gl(n: u32) -> Vec<ZType> {
    if n == 0 {
        return Vec::new();
    }
    let kinds = slot_kinds(n, 1..=n);
    let mut out: Vec<ZType> = slot_multisets(&kinds, n, 1)
        .into_iter()
        .map(ZType::new)
        .collect();
    out.sort();
    out
}

/// All unitary types of weight `n`, in canonical order. The weight is split
/// between a self-U-reciprocal part (odd degrees only) and a paired part
/// (even weight); each part is enumerated separately.
pub fn enumerate_types_u(n: u32) -> Vec<UZType> {
    if n == 0 {
        return Vec::new();
    }
    let odd_kinds = slot_kinds(n, (1..=n).step_by(2));
    let pair_kinds = slot_kinds(n / 2, 1..=n / 2);
    let mut out = Vec::new();
    for paired in (0..=n).step_by(2) {
        let odd_parts = slot_multisets(&odd_kinds, n - paired, 1);
        let pair_parts = slot_multisets(&pair_kinds, paired, 2);
        for o in &odd_parts {
            for p in &pair_parts {
                out.push(UZType::new(o.clone(), p.clone()).expect("odd kinds only"));
            }
        }
    }
    out.sort();
    out
}

/// The type-level correspondence between unitary and `GL` types: a
/// self-U-reciprocal slot `(d, λ)` goes to `(d, λ)` and a pair slot
/// `(l, λ)` goes to `(2l, λ)`.
pub fn pair_type(t: &UZType) -> ZType {
    let odd = t.odd_slots.iter().cloned();
    let pair = t
        .pair_slots
        .iter()
        .map(|s| Slot::new(2 * s.degree, s.shape.clone()));
    ZType::new(odd.chain(pair).collect())
}

/// Inverse of [`pair_type`].
pub fn unpair_type(t: &ZType) -> UZType {
    let (odd, even): (Vec<Slot>, Vec<Slot>) =
        t.slots.iter().cloned().partition(|s| s.degree % 2 == 1);
    let pair = even
        .into_iter()
        .map(|s| Slot::new(s.degree / 2, s.shape))
        .collect();
    UZType::new(odd, pair).expect("odd degrees only")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::z_fq_series;
    use std::collections::HashSet;

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_types_gl(1).len(), 1);
        assert_eq!(enumerate_types_gl(2).len(), 4);
        assert_eq!(enumerate_types_gl(3).len(), 8);
        assert_eq!(enumerate_types_u(1).len(), 1);
        let u2: Vec<String> = enumerate_types_u(2).iter().map(|t| t.to_string()).collect();
        let mut expect = vec!["o1:[2]", "o1:[1,1]", "o1:[1] o1:[1]", "p1:[1]"];
        expect.sort();
        let mut got = u2.clone();
        got.sort();
        assert_eq!(got, expect);
        assert_eq!(enumerate_types_u(3).len(), 8);
    }

    #[test]
    fn counts_match_series_and_pairing_is_bijective() {
        let series = z_fq_series(13);
        for n in 1..=12u32 {
            let gl = enumerate_types_gl(n);
            let u = enumerate_types_u(n);
            assert_eq!(
                num_bigint::BigUint::from(gl.len()),
                series.coeff_u(n as usize),
                "n={n}"
            );
            assert_eq!(u.len(), gl.len());
            let images: HashSet<ZType> = u.iter().map(pair_type).collect();
            assert_eq!(images.len(), u.len());
            assert_eq!(images, gl.iter().cloned().collect());
            for t in &u {
                assert_eq!(unpair_type(&pair_type(t)), *t);
                assert_eq!(t.weight(), n);
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let t: ZType = "d3:[1] d1:[1] d1:[2,1]".parse().unwrap();
        assert_eq!(t.to_string(), "d1:[2,1] d1:[1] d3:[1]");
        assert_eq!(t.weight(), 7);
        let u: UZType = "p1:[1] o1:[2]".parse().unwrap();
        assert_eq!(u.to_string(), "o1:[2] p1:[1]");
        assert_eq!(u.weight(), 4);
        assert!("o2:[1]".parse::<UZType>().is_err());
        assert!("d1:[]".parse::<ZType>().is_err());
        assert!("x1:[1]".parse::<ZType>().is_err());
        for n in 1..=6 {
            for t in enumerate_types_gl(n) {
                assert_eq!(t.to_string().parse::<ZType>().unwrap(), t);
            }
            for t in enumerate_types_u(n) {
                assert_eq!(t.to_string().parse::<UZType>().unwrap(), t);
            }
        }
    }

    #[test]
    fn canonical_order_is_sorted_and_duplicate_free() {
        for n in 1..=8 {
            let gl = enumerate_types_gl(n);
            assert!(gl.windows(2).all(|w| w[0] < w[1]));
            let u = enumerate_types_u(n);
            assert!(u.windows(2).all(|w| w[0] < w[1]));
        }
    }
}
