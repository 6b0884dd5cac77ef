//! Integer partitions: counting, enumeration and the exponent notation
//! `(1^{k_1} 2^{k_2} ... n^{k_n})`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

/// A partition of a non-negative integer, stored as a non-increasing list of
/// positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition from parts in any order. Zero parts are rejected.
    pub fn new(mut parts: Vec<u32>) -> Option<Self> {
        if parts.contains(&0) {
            return None;
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Some(Self { parts })
    }

    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    /// The partition `(1^m)`.
    pub fn ones(m: u32) -> Self {
        Self {
            parts: vec![1; m as usize],
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// True for partitions of the form `(1^m)`, the shape of a semisimple
    /// block.
    pub fn is_all_ones(&self) -> bool {
        self.parts.iter().all(|&p| p == 1)
    }

    /// Exponent form: entry `i - 1` is `k_i`, the number of parts equal to `i`.
    pub fn multiplicities(&self) -> Vec<u32> {
        let largest = self.parts.first().copied().unwrap_or(0) as usize;
        let mut k = vec![0u32; largest];
        for &p in &self.parts {
            k[p as usize - 1] += 1;
        }
        k
    }

    /// Inverse of [`Partition::multiplicities`].
    pub fn from_multiplicities(k: &[u32]) -> Self {
        let mut parts = Vec::new();
        for (i, &count) in k.iter().enumerate().rev() {
            parts.extend(std::iter::repeat_n(i as u32 + 1, count as usize));
        }
        Self { parts }
    }

    /// The conjugate (transposed Young diagram).
    pub fn conjugate(&self) -> Self {
        let largest = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=largest)
            .map(|j| self.parts.iter().filter(|&&p| p >= j).count() as u32)
            .collect();
        Self { parts }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

/// `p(n)`, computed by the coin-change recurrence over exact integers.
pub fn partition_count(n: u32) -> BigUint {
    partition_counts(n).pop().expect("table has n + 1 entries")
}

/// `p(0), ..., p(n)`.
pub fn partition_counts(n: u32) -> Vec<BigUint> {
    let n = n as usize;
    let mut table = vec![BigUint::zero(); n + 1];
    table[0] = BigUint::one();
    for part in 1..=n {
        for m in part..=n {
            let add = table[m - part].clone();
            table[m] += add;
        }
    }
    table
}

/// All partitions of `n` in reverse-lexicographic order:
/// `(3), (2,1), (1,1,1)` for `n = 3`.
pub fn enumerate_partitions(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(n, n, &mut current, &mut out);
    out
}

fn fill(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition {
            parts: current.clone(),
        });
        return;
    }
    for part in (1..=max_part.min(remaining)).rev() {
        current.push(part);
        fill(remaining - part, part, current, out);
        current.pop();
    }
}

/// Binomial coefficient `C(n, k)` over exact integers.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Number of size-`k` multisets drawn from `choices` kinds: `C(choices + k - 1, k)`.
pub fn multiset_count(choices: &BigUint, k: u64) -> BigUint {
    // The falling product stays exact: after step i the accumulator is C(c+i, i+1).
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= choices + i;
        acc /= i + 1;
    }
    acc
}


#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn conjugation_and_exponent_form(parts in proptest::collection::vec(1u32..9, 0..9)) {
            let p = Partition::new(parts).unwrap();
            let c = p.conjugate();
            prop_assert_eq!(c.weight(), p.weight());
            prop_assert_eq!(c.conjugate(), p.clone());
            prop_assert_eq!(c.len() as u32, p.parts().first().copied().unwrap_or(0));
            prop_assert_eq!(Partition::from_multiplicities(&p.multiplicities()), p);
        }

        #[test]
        fn multiset_count_is_a_binomial(c in 1u64..40, k in 0u64..12) {
            prop_assert_eq!(multiset_count(&BigUint::from(c), k), binomial(c + k - 1, k));
        }
    }
}
