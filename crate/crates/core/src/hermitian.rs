//! Nondegenerate hermitian forms over `F_{q^2}`.
//!
//! A Gram matrix `H` defines `B(u, v) = ᵗu · H · v̄`, and `P` carries `H`
//! to `ᵗP · H · P̄`. Over a finite field every nondegenerate form of rank `n`
//! is congruent to the identity; [`hermitian_diagonalize`] produces the
//! witness.

use crate::error::{Error, Result};
use crate::ff::{FieldElem, FieldSpec};
use crate::group::Mat;

/// A validated Gram matrix: conjugate-symmetric, nondegenerate, odd
/// characteristic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HermitianForm {
    gram: Mat,
}

impl HermitianForm {
    pub fn identity(spec: &FieldSpec, n: usize) -> Result<Self> {
        hermitian_validate(spec, Mat::identity(n))
    }

    pub fn gram(&self) -> &Mat {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.n()
    }

    /// `B(u, v) = Σ u_k H_kl v̄_l`.
    pub fn pairing(&self, spec: &FieldSpec, u: &[FieldElem], v: &[FieldElem]) -> FieldElem {
        let n = self.rank();
        let mut acc = FieldElem::ZERO;
        for k in 0..n {
            if u[k].is_zero() {
                continue;
            }
            for l in 0..n {
                let h = self.gram.get(k, l);
                if h.is_zero() || v[l].is_zero() {
                    continue;
                }
                acc = spec.add(acc, spec.mul(spec.mul(u[k], h), spec.conj(v[l])));
            }
        }
        acc
    }

    /// `ᵗP · H · P̄`.
    pub fn transform(&self, spec: &FieldSpec, p: &Mat) -> Mat {
        p.transpose().mul(&self.gram, spec).mul(&p.conj(spec), spec)
    }

    /// Membership in the unitary group of this form: `ᵗg H ḡ = H`.
    pub fn preserves(&self, spec: &FieldSpec, g: &Mat) -> bool {
        self.transform(spec, g) == self.gram
    }

    /// Gram matrix of the restriction of `B` to the span of `basis`.
    pub fn restricted_gram(&self, spec: &FieldSpec, basis: &[Vec<FieldElem>]) -> Mat {
        let k = basis.len();
        let mut m = Mat::zero(k);
        for i in 0..k {
            for j in 0..k {
                m.set(i, j, self.pairing(spec, &basis[i], &basis[j]));
            }
        }
        m
    }
}

/// Checks that `h` is conjugate-symmetric and nondegenerate over a field of
/// odd characteristic.
pub fn hermitian_validate(spec: &FieldSpec, h: Mat) -> Result<HermitianForm> {
    if spec.p() == 2 {
        return Err(Error::CharacteristicTwo);
    }
    if h.conj_transpose(spec) != h {
        return Err(Error::NotConjugateSymmetric);
    }
    if h.det(spec).is_zero() {
        return Err(Error::Singular);
    }
    Ok(HermitianForm { gram: h })
}

/// Returns `(P, D)` with `P` invertible, `ᵗP H P̄ = D` and `D` the identity.
///
/// Orthogonalization: pick a basis vector `v` with `B(v, v) ≠ 0`; if every
/// remaining vector is isotropic, replace one by `e_i + c e_j` where
/// `c = B(e_i, e_j) ≠ 0`, whose length is `2 N(c) ≠ 0`. Rescale `v` by some
/// `a` with `N(a) = B(v, v)^{-1}` (the norm is onto `F_q^*`), then project the
/// remaining vectors off `v`.
pub fn hermitian_diagonalize(spec: &FieldSpec, form: &HermitianForm) -> (Mat, HermitianForm) {
    let n = form.rank();
    let mut work: Vec<Vec<FieldElem>> = (0..n)
        .map(|i| {
            let mut e = vec![FieldElem::ZERO; n];
            e[i] = FieldElem::ONE;
            e
        })
        .collect();
    let mut done: Vec<Vec<FieldElem>> = Vec::with_capacity(n);

    while !work.is_empty() {
        let pivot = match work
            .iter()
            .position(|v| !form.pairing(spec, v, v).is_zero())
        {
            Some(i) => i,
            None => {
                let (i, j, c) = isotropic_pair(spec, form, &work);
                let repaired: Vec<FieldElem> = work[i]
                    .iter()
                    .zip(&work[j])
                    .map(|(&a, &b)| spec.add(a, spec.mul(c, b)))
                    .collect();
                work[i] = repaired;
                i
            }
        };
        let v = work.swap_remove(pivot);
        let len = form.pairing(spec, &v, &v);
        let target = spec.inv(len).expect("pivot length is nonzero");
        let a = spec
            .norm_preimage(target)
            .expect("the norm maps onto F_q^*");
        let v: Vec<FieldElem> = v.iter().map(|&x| spec.mul(a, x)).collect();
        for w in work.iter_mut() {
            // B(v, v) = 1 now, so the projection coefficient is B(w, v)
            let c = form.pairing(spec, w, &v);
            if c.is_zero() {
                continue;
            }
            for (wk, &vk) in w.iter_mut().zip(&v) {
                *wk = spec.sub(*wk, spec.mul(c, vk));
            }
        }
        done.push(v);
    }

    let p = Mat::from_columns(&done);
    let d = HermitianForm {
        gram: form.transform(spec, &p),
    };
    (p, d)
}

/// In a nondegenerate space where every listed vector is isotropic, some
/// pair pairs nontrivially.
fn isotropic_pair(
    spec: &FieldSpec,
    form: &HermitianForm,
    work: &[Vec<FieldElem>],
) -> (usize, usize, FieldElem) {
    for i in 0..work.len() {
        for j in 0..work.len() {
            if i == j {
                continue;
            }
            let c = form.pairing(spec, &work[i], &work[j]);
            if !c.is_zero() {
                return (i, j, c);
            }
        }
    }
    unreachable!("a nondegenerate restriction has a non-orthogonal pair")
}

/// Two validated forms are equivalent iff they have the same rank.
pub fn hermitian_equivalent(form1: &HermitianForm, form2: &HermitianForm) -> bool {
    form1.rank() == form2.rank()
}

/// All conjugate-symmetric `n × n` matrices over `F_{q^2}` (diagonal in `F_q`),
/// degenerate ones included.
pub fn conjugate_symmetric_matrices(spec: &FieldSpec, n: usize) -> Vec<Mat> {
    let diag = spec.enumerate(true);
    let full = spec.enumerate(false);
    let upper: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let mut out = vec![Mat::zero(n)];
    for i in 0..n {
        out = out
            .into_iter()
            .flat_map(|m| {
                diag.iter().map(move |&d| {
                    let mut m = m.clone();
                    m.set(i, i, d);
                    m
                })
            })
            .collect();
    }
    for &(i, j) in &upper {
        out = out
            .into_iter()
            .flat_map(|m| {
                full.iter().map(move |&a| {
                    let mut m = m.clone();
                    m.set(i, j, a);
                    m.set(j, i, spec.conj(a));
                    m
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f9() -> FieldSpec {
        FieldSpec::new(3, 1).unwrap()
    }

    #[test]
    fn validation_examples() {
        let f = f9();
        for n in 1..=3 {
            assert!(HermitianForm::identity(&f, n).is_ok());
        }
        let anti = Mat::from_indices(&f, 2, &[0, 1, 1, 0]).unwrap();
        assert!(hermitian_validate(&f, anti).is_ok());
        // conj(t) = 2t ≠ t
        let bad = Mat::from_indices(&f, 2, &[0, 3, 3, 0]).unwrap();
        assert_eq!(
            hermitian_validate(&f, bad),
            Err(Error::NotConjugateSymmetric)
        );
        let degenerate = Mat::from_indices(&f, 2, &[1, 1, 1, 1]).unwrap();
        assert_eq!(hermitian_validate(&f, degenerate), Err(Error::Singular));
        let f4 = FieldSpec::new(2, 1).unwrap();
        assert_eq!(
            hermitian_validate(&f4, Mat::identity(2)),
            Err(Error::CharacteristicTwo)
        );
    }

    #[test]
    fn diagonalize_examples() {
        let f = f9();
        let id = HermitianForm::identity(&f, 2).unwrap();
        let (p, d) = hermitian_diagonalize(&f, &id);
        assert!(p.is_identity());
        assert!(d.gram().is_identity());

        for idx in [[2, 0, 0, 1], [0, 1, 1, 0]] {
            let h = hermitian_validate(&f, Mat::from_indices(&f, 2, &idx).unwrap()).unwrap();
            let (p, d) = hermitian_diagonalize(&f, &h);
            assert!(p.is_invertible(&f));
            assert!(d.gram().is_identity());
            assert_eq!(h.transform(&f, &p), *d.gram());
        }
    }

    #[test]
    fn equivalence_examples() {
        let f = f9();
        let i2 = HermitianForm::identity(&f, 2).unwrap();
        let i3 = HermitianForm::identity(&f, 3).unwrap();
        assert!(hermitian_equivalent(&i2, &i2));
        assert!(!hermitian_equivalent(&i2, &i3));
    }

    #[test]
    fn census_of_2x2_forms_over_f9() {
        let f = f9();
        let all = conjugate_symmetric_matrices(&f, 2);
        assert_eq!(all.len(), 81);
        let gl2: Vec<Mat> = (0..9u32.pow(4))
            .map(|k| {
                let idx: Vec<u32> = (0..4).map(|i| (k / 9u32.pow(3 - i)) % 9).collect();
                Mat::from_indices(&f, 2, &idx).unwrap()
            })
            .filter(|m| m.is_invertible(&f))
            .collect();
        assert_eq!(gl2.len(), 5760);
        let forms: Vec<HermitianForm> = all
            .into_iter()
            .filter_map(|m| hermitian_validate(&f, m).ok())
            .collect();
        assert!(!forms.is_empty());
        let id = Mat::identity(2);
        for h in &forms {
            // brute-force congruence oracle
            let witness = gl2.iter().find(|p| h.transform(&f, p) == id);
            assert!(witness.is_some(), "no congruence to I for {:?}", h.gram());
            let (p, d) = hermitian_diagonalize(&f, h);
            assert!(p.is_invertible(&f));
            assert!(d.gram().is_identity());
            for i in 0..2 {
                assert!(f.is_in_subfield(h.gram().get(i, i)));
            }
        }
        for a in &forms {
            for b in &forms {
                assert!(hermitian_equivalent(a, b));
            }
        }
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn congruent_images_of_the_identity_reduce_back(entries in proptest::collection::vec(0u32..25, 9)) {
            let f = FieldSpec::new(5, 1).unwrap();
            let p = Mat::from_indices(&f, 3, &entries).unwrap();
            prop_assume!(p.is_invertible(&f));
            let h = HermitianForm::identity(&f, 3).unwrap().transform(&f, &p);
            let form = hermitian_validate(&f, h).unwrap();
            let (w, d) = hermitian_diagonalize(&f, &form);
            prop_assert!(w.is_invertible(&f));
            prop_assert!(d.gram().is_identity());
            prop_assert!(form.transform(&f, &w).is_identity());
        }
    }
}
