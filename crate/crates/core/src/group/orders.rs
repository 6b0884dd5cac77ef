//! Order formulas for `GL_n(Q)`, `U_n(q)` and centralizers of unipotent
//! elements.

use num_bigint::BigUint;
use num_traits::Pow;

use crate::combinatorics::Partition;

/// `|GL_n(Q)| = Π_{i=0}^{n-1} (Q^n - Q^i)`.
pub fn gl_order(n: u32, field_order: &BigUint) -> BigUint {
    let top: BigUint = Pow::pow(field_order, n);
    (0..n).map(|i| &top - Pow::pow(field_order, i)).product()
}

/// `|U_n(q)| = q^{n(n-1)/2} Π_{i=1}^{n} (q^i - (-1)^i)`.
pub fn unitary_order(n: u32, q: &BigUint) -> BigUint {
    let mut acc: BigUint = Pow::pow(q, n * n.saturating_sub(1) / 2);
    for i in 1..=n {
        let qi: BigUint = Pow::pow(q, i);
        acc *= if i % 2 == 0 { qi - 1u32 } else { qi + 1u32 };
    }
    acc
}

/// Exponent of `q` in the order of the unipotent radical of the centralizer
/// of a unipotent element with Jordan shape `shape`:
/// `Σ_{i≥2} (i-1) a_i^2 + 2 Σ_{i<j} i a_i a_j`, `a_i` the number of blocks of
/// size `i`.
pub fn unipotent_radical_exponent(shape: &Partition) -> u64 {
    let a: Vec<u64> = shape.multiplicities().iter().map(|&k| k as u64).collect();
    let mut exp = 0u64;
    for (idx, &ai) in a.iter().enumerate() {
        let i = idx as u64 + 1;
        exp += (i - 1) * ai * ai;
        for &aj in &a[idx + 1..] {
            exp += 2 * i * ai * aj;
        }
    }
    exp
}

/// `|Z_{U_n(q)}(u)| = |Q| · Π_i |U_{a_i}(q)|` for a unipotent `u` of Jordan
/// shape `shape`.
pub fn unipotent_centralizer_order(q: &BigUint, shape: &Partition) -> BigUint {
    let radical: BigUint = Pow::pow(q, unipotent_radical_exponent(shape));
    shape
        .multiplicities()
        .iter()
        .filter(|&&k| k > 0)
        .fold(radical, |acc, &k| acc * unitary_order(k, q))
}

/// The general linear analogue: `|Q| · Π_i |GL_{a_i}(Q)|`.
pub fn gl_unipotent_centralizer_order(field_order: &BigUint, shape: &Partition) -> BigUint {
    let radical: BigUint = Pow::pow(field_order, unipotent_radical_exponent(shape));
    shape
        .multiplicities()
        .iter()
        .filter(|&&k| k > 0)
        .fold(radical, |acc, &k| acc * gl_order(k, field_order))
}

/// `q^k` as a big integer.
pub fn big_pow(q: u64, k: u32) -> BigUint {
    Pow::pow(&BigUint::from(q), k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn classical_orders() {
        assert_eq!(gl_order(2, &b(3)), b(48));
        assert_eq!(gl_order(2, &b(9)), b(5760));
        assert_eq!(gl_order(3, &b(3)), b(11232));
        assert_eq!(gl_order(2, &b(2)), b(6));
        assert_eq!(unitary_order(1, &b(3)), b(4));
        assert_eq!(unitary_order(2, &b(3)), b(96));
        assert_eq!(unitary_order(3, &b(3)), b(24192));
        assert_eq!(unitary_order(0, &b(3)), b(1));
    }

    #[test]
    fn unipotent_centralizers_in_u() {
        let shape = |v: Vec<u32>| Partition::new(v).unwrap();
        assert_eq!(unipotent_centralizer_order(&b(3), &shape(vec![1])), b(4));
        assert_eq!(unipotent_centralizer_order(&b(3), &shape(vec![2])), b(12));
        assert_eq!(
            unipotent_centralizer_order(&b(3), &shape(vec![1, 1])),
            b(96)
        );
    }

    #[test]
    fn radical_exponent_is_sum_of_squared_conjugate_minus_squares() {
        // Σ (λ'_k)^2 - Σ a_i^2 is the classical form of the same exponent
        for n in 1..=10 {
            for lambda in crate::combinatorics::enumerate_partitions(n) {
                let conj_sq: u64 = lambda
                    .conjugate()
                    .parts()
                    .iter()
                    .map(|&c| (c as u64).pow(2))
                    .sum();
                let a_sq: u64 = lambda
                    .multiplicities()
                    .iter()
                    .map(|&a| (a as u64).pow(2))
                    .sum();
                assert_eq!(unipotent_radical_exponent(&lambda), conj_sq - a_sq);
            }
        }
    }
}
