//! Closed-form z-class counts.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::combinatorics::{multiset_count, partition_count, partition_counts};
use crate::error::{Error, Result};
use crate::zcount::enumerate_types_gl;

fn require_positive(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be >= 1".into()));
    }
    Ok(())
}

/// Multisets of pairs `(e, f)` with `Σ e f = n`: the coefficient of `x^n`
/// in `Π_k (1 - x^k)^{-τ(k)}`, `τ(k)` the number of divisors of `k`.
pub fn count_semisimple(n: u32) -> Result<BigUint> {
    require_positive(n)?;
    let n = n as usize;
    let mut coeffs = vec![BigUint::zero(); n + 1];
    coeffs[0] = BigUint::one();
    for k in 1..=n {
        let tau = (1..=k).filter(|d| k % d == 0).count();
        // one factor (1 - x^k)^{-1} per divisor
        for _ in 0..tau {
            for i in k..=n {
                let add = coeffs[i - k].clone();
                coeffs[i] += add;
            }
        }
    }
    Ok(coeffs.swap_remove(n))
}

/// Unipotent z-classes: one per Jordan shape, `p(n)`.
pub fn count_unipotent(n: u32) -> Result<BigUint> {
    require_positive(n)?;
    Ok(partition_count(n))
}

/// Sum over semisimple types of the number of unipotent z-classes of the
/// centralizer. A block of `k` identical semisimple slots of multiplicity
/// `m` contributes the number of size-`k` multisets of shapes of `m`.
pub fn total_z_count(n: u32) -> Result<BigUint> {
    require_positive(n)?;
    let p = partition_counts(n);
    let mut total = BigUint::zero();
    for t in enumerate_types_gl(n).iter().filter(|t| t.is_semisimple()) {
        let mut blocks: BTreeMap<(u32, u32), u64> = BTreeMap::new();
        for s in t.slots() {
            *blocks.entry((s.degree, s.shape.weight())).or_default() += 1;
        }
        total += blocks
            .iter()
            .map(|(&(_, m), &k)| multiset_count(&p[m as usize], k))
            .product::<BigUint>();
    }
    Ok(total)
}

/// z-class counts for the elliptic, hyperbolic and parabolic elements of
/// `U(n, 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperbolicCounts {
    pub elliptic: BigUint,
    pub hyperbolic: BigUint,
    /// Absent for `n = 1`.
    pub parabolic: Option<BigUint>,
}

pub fn hyperbolic_counts(n: u32) -> Result<HyperbolicCounts> {
    require_positive(n)?;
    let p = partition_counts(n);
    let elliptic = (1..=n + 1).map(|m| &p[(n + 1 - m) as usize]).sum();
    let hyperbolic = p[(n - 1) as usize].clone();
    let parabolic =
        (n >= 2).then(|| BigUint::from(2u32) + &p[(n - 1) as usize] + &p[(n - 2) as usize]);
    Ok(HyperbolicCounts {
        elliptic,
        hyperbolic,
        parabolic,
    })
}

/// z-classes of the compact unitary group `U(m)`: `p(m)`.
pub fn compact_unitary_count(m: u32) -> Result<BigUint> {
    require_positive(m)?;
    Ok(partition_count(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::enumerate_partitions;
    use crate::series::z_fq_series;

    fn b(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn semisimple_examples() {
        assert_eq!(count_semisimple(1).unwrap(), b(1));
        assert_eq!(count_semisimple(2).unwrap(), b(3));
        assert_eq!(count_semisimple(3).unwrap(), b(5));
        assert!(count_semisimple(0).is_err());
    }

    #[test]
    fn semisimple_matches_brute_multisets_and_types() {
        // multisets of (e, f) with Σ e f = n, as non-increasing sequences
        fn brute(left: u32, max: (u32, u32)) -> u64 {
            if left == 0 {
                return 1;
            }
            let mut total = 0;
            for e in 1..=left {
                for f in 1..=left / e {
                    if (e, f) <= max {
                        total += brute(left - e * f, (e, f));
                    }
                }
            }
            total
        }
        for n in 1..=12 {
            let c = count_semisimple(n).unwrap();
            assert_eq!(c, b(brute(n, (n, n))));
            let ss = enumerate_types_gl(n)
                .iter()
                .filter(|t| t.is_semisimple())
                .count();
            assert_eq!(c, b(ss as u64));
        }
    }

    #[test]
    fn unipotent_examples() {
        assert_eq!(count_unipotent(2).unwrap(), b(2));
        assert_eq!(count_unipotent(3).unwrap(), b(3));
        assert_eq!(count_unipotent(5).unwrap(), b(7));
    }

    #[test]
    fn total_matches_series() {
        assert_eq!(total_z_count(2).unwrap(), b(4));
        assert_eq!(total_z_count(5).unwrap(), b(42));
        assert_eq!(total_z_count(9).unwrap(), b(859));
        let s = z_fq_series(13);
        for n in 1..=12 {
            assert_eq!(total_z_count(n).unwrap(), s.coeff_u(n as usize));
            assert_eq!(
                total_z_count(n).unwrap(),
                b(enumerate_types_gl(n).len() as u64)
            );
        }
    }

    #[test]
    fn hyperbolic_examples() {
        let h = hyperbolic_counts(2).unwrap();
        assert_eq!(h.elliptic, b(4));
        assert_eq!(h.hyperbolic, b(1));
        assert_eq!(h.parabolic, Some(b(4)));
        let h1 = hyperbolic_counts(1).unwrap();
        assert_eq!(h1.parabolic, None);
        assert_eq!(h1.elliptic, b(2));
        assert!(hyperbolic_counts(0).is_err());
    }

    #[test]
    fn hyperbolic_and_compact_against_enumeration() {
        let p = |k: u32| enumerate_partitions(k).len() as u64;
        for n in 1..=10 {
            let h = hyperbolic_counts(n).unwrap();
            assert_eq!(h.elliptic, b((0..=n).map(p).sum()));
            assert_eq!(h.hyperbolic, b(p(n - 1)));
            if n >= 2 {
                assert_eq!(h.parabolic, Some(b(2 + p(n - 1) + p(n - 2))));
            }
            assert_eq!(compact_unitary_count(n).unwrap(), b(p(n)));
        }
        assert_eq!(compact_unitary_count(4).unwrap(), b(5));
        assert_eq!(compact_unitary_count(10).unwrap(), b(42));
    }
}
