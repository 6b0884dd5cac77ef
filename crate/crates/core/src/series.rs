//! Exact truncated integer power series and the z-class generating
//! functions over `C`, `R` and `F_q`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::combinatorics::{enumerate_partitions, multiset_count, partition_counts};

/// A power series `c_0 + c_1 x + ... + c_N x^N`, exact to order `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntSeries {
    coeffs: Vec<BigInt>,
}

impl IntSeries {
    /// Series with the given coefficients; the truncation order is
    /// `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "a series carries at least c_0");
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![BigInt::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigInt::one();
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^k`. Asking beyond the truncation order is a bug.
    pub fn coeff(&self, k: usize) -> &BigInt {
        assert!(
            k <= self.order(),
            "x^{k} is beyond truncation order {}",
            self.order()
        );
        &self.coeffs[k]
    }

    /// Coefficient of `x^k` as an unsigned integer. Panics on a negative value.
    pub fn coeff_u(&self, k: usize) -> BigUint {
        self.coeff(k)
            .to_biguint()
            .expect("coefficient is non-negative")
    }

    /// Cauchy product truncated at the smaller of the two orders.
    pub fn product(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = vec![BigInt::zero(); order + 1];
        for (i, a) in self.coeffs.iter().take(order + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(order + 1 - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self { coeffs: out }
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order());
        Self {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    /// `s(x^i)`, kept at the same truncation order.
    pub fn substitute_power(&self, i: usize) -> Self {
        assert!(i >= 1);
        let order = self.order();
        let mut out = vec![BigInt::zero(); order + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            match k.checked_mul(i) {
                Some(target) if target <= order => out[target] = c.clone(),
                _ => break,
            }
        }
        Self { coeffs: out }
    }
}

impl fmt::Display for IntSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let abs = c.abs();
            match k {
                0 => write!(f, "{abs}")?,
                1 => write!(f, "{abs}x")?,
                _ => write!(f, "{abs}x^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

/// Expansion of `1 / (1 - x^i)^k` to order `order`: the coefficient of
/// `x^{i m}` is `C(k + m - 1, m)`.
pub fn geometric_power(i: usize, k: &BigUint, order: usize) -> IntSeries {
    assert!(i >= 1, "geometric_power needs i >= 1");
    let mut s = IntSeries::zero(order);
    let mut m = 0usize;
    while i * m <= order {
        s.coeffs[i * m] = BigInt::from(multiset_count(k, m as u64));
        m += 1;
    }
    s
}

/// `z(x) = prod_{i >= 1} (1 - x^i)^{-p(i)}`, the z-class series of `GL_n` over
/// an algebraically closed field.
pub fn z_series(order: usize) -> IntSeries {
    let p = partition_counts(order as u32);
    (1..=order).fold(IntSeries::one(order), |acc, i| {
        acc.product(&geometric_power(i, &p[i], order))
    })
}

/// `z(x) z(x^2)`, the series for `GL_n(R)`.
pub fn z_real_series(order: usize) -> IntSeries {
    let z = z_series(order);
    z.product(&z.substitute_power(2))
}

/// `prod_{i >= 1} z(x^i)`, the series for `GL_n(F_q)`.
pub fn z_fq_series(order: usize) -> IntSeries {
    let z = z_series(order);
    (1..=order).fold(IntSeries::one(order), |acc, i| {
        acc.product(&z.substitute_power(i))
    })
}

/// `sum over n = (1^{k_1} ... n^{k_n}) of prod_i C(p(i) + k_i - 1, k_i)`,
/// evaluated by enumerating the partitions of `n`.
pub fn z_closed_form(n: u32) -> BigUint {
    let p = partition_counts(n);
    enumerate_partitions(n)
        .iter()
        .map(|lambda| {
            lambda
                .multiplicities()
                .iter()
                .enumerate()
                .map(|(i, &k)| multiset_count(&p[i + 1], k as u64))
                .product::<BigUint>()
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn product_examples() {
        let a = IntSeries::from_i64(&[1, 1, 0]);
        let b = IntSeries::from_i64(&[1, -1, 0]);
        assert_eq!(a.product(&b), IntSeries::from_i64(&[1, 0, -1]));
        let s = IntSeries::from_i64(&[3, -2, 7, 1]);
        assert_eq!(s.product(&IntSeries::one(3)), s);
        let geo = IntSeries::from_i64(&[1; 5]);
        // direct convolution: 5 ways to write 4 = i + j with 0 <= i, j <= 4
        assert_eq!(geo.product(&geo).coeff(4), &big(5));
    }

    #[test]
    fn mixed_orders_truncate_down() {
        let a = IntSeries::from_i64(&[1, 1, 1, 1, 1]);
        let b = IntSeries::from_i64(&[1, 1]);
        assert_eq!(a.product(&b).order(), 1);
        assert_eq!(b.product(&a).order(), 1);
    }

    #[test]
    fn geometric_power_examples() {
        let one = BigUint::one();
        assert_eq!(
            geometric_power(1, &one, 3),
            IntSeries::from_i64(&[1, 1, 1, 1])
        );
        assert_eq!(
            geometric_power(2, &one, 5),
            IntSeries::from_i64(&[1, 0, 1, 0, 1, 0])
        );
        // multisets of size 2 from 3 kinds
        assert_eq!(
            geometric_power(2, &BigUint::from(3u32), 4).coeff(4),
            &big(6)
        );
    }

    #[test]
    fn geometric_power_inverts_binomial() {
        // (1 - x^2)^3 * (1 - x^2)^{-3} = 1
        let cube = IntSeries::from_i64(&[1, 0, -3, 0, 3, 0, -1, 0, 0]);
        let inv = geometric_power(2, &BigUint::from(3u32), 8);
        assert_eq!(cube.product(&inv), IntSeries::one(8));
    }

    #[test]
    fn generating_function_examples() {
        let z = z_series(10);
        assert_eq!(z.coeff(2), &big(3));
        assert_eq!(z.coeff(4), &big(14));
        assert_eq!(z.coeff(10), &big(817));
        let zr = z_real_series(10);
        assert_eq!(zr.coeff(1), &big(1));
        assert_eq!(zr.coeff(4), &big(20));
        assert_eq!(zr.coeff(10), &big(1367));
        let zf = z_fq_series(10);
        assert_eq!(zf.coeff(2), &big(4));
        assert_eq!(zf.coeff(6), &big(103));
        assert_eq!(zf.coeff(10), &big(1784));
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(z_closed_form(0), BigUint::one());
        assert_eq!(z_closed_form(1), BigUint::one());
        assert_eq!(z_closed_form(4), BigUint::from(14u32));
        assert_eq!(z_closed_form(7), BigUint::from(111u32));
    }

    #[test]
    fn closed_form_matches_series() {
        let z = z_series(20);
        for n in 0..=20u32 {
            assert_eq!(z_closed_form(n), z.coeff_u(n as usize), "n = {n}");
        }
    }

    #[test]
    fn constant_terms_and_ordering() {
        let (z, zr, zf) = (z_series(10), z_real_series(10), z_fq_series(10));
        for s in [&z, &zr, &zf] {
            assert_eq!(s.coeff(0), &big(1));
        }
        for n in 1..=10 {
            assert!(zf.coeff(n) >= zr.coeff(n));
            assert!(zr.coeff(n) >= z.coeff(n));
        }
    }

    #[test]
    fn display() {
        let s = IntSeries::from_i64(&[1, 0, -1]);
        assert_eq!(s.to_string(), "1 - 1x^2 + O(x^3)");
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn arb_series() -> impl Strategy<Value = IntSeries> {
        proptest::collection::vec(-50i64..50, 1..12).prop_map(|c| IntSeries::from_i64(&c))
    }

    proptest! {
        #[test]
        fn product_is_commutative_and_associative(a in arb_series(), b in arb_series(), c in arb_series()) {
            prop_assert_eq!(a.product(&b), b.product(&a));
            prop_assert_eq!(a.product(&b).product(&c), a.product(&b.product(&c)));
            prop_assert_eq!(a.product(&IntSeries::one(a.order())), a.clone());
        }

        #[test]
        fn substitution_is_a_ring_map(a in arb_series(), b in arb_series(), i in 1usize..4) {
            let lhs = a.product(&b).substitute_power(i);
            let rhs = a.substitute_power(i).product(&b.substitute_power(i));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
