//! The type of an explicit matrix, read off from its characteristic
//! polynomial and the kernels of powers of its factors.

use crate::combinatorics::Partition;
use crate::error::{Error, Result};
use crate::ff::{FieldElem, FieldSpec, Level};
use crate::group::Mat;
use crate::hermitian::HermitianForm;
use crate::poly::{factor, u_reciprocal, Poly};
use crate::zcount::{Slot, UZType, ZType};

/// Jordan shape of `g` on the primary component of the irreducible `f`
/// (of multiplicity `mult` in the characteristic polynomial). The number of
/// parts `≥ j` is `(dim ker f(g)^j - dim ker f(g)^{j-1}) / deg f`.
fn shape_at(spec: &FieldSpec, g: &Mat, f: &Poly, mult: u32) -> Partition {
    let n = g.n();
    let deg = f.degree().expect("nonzero factor");
    let fg = g.eval_poly(f, spec);
    let mut power = Mat::identity(n);
    let mut prev = 0usize;
    let mut at_least = Vec::new();
    for _ in 0..mult {
        power = power.mul(&fg, spec);
        let dim = n - power.rank(spec);
        if dim == prev {
            break;
        }
        at_least.push(((dim - prev) / deg) as u32);
        prev = dim;
    }
    Partition::new(at_least)
        .expect("positive counts")
        .conjugate()
}

fn invertible_factors(spec: &FieldSpec, g: &Mat, level: Level) -> Result<Vec<(Poly, u32)>> {
    if !g.is_invertible(spec) {
        return Err(Error::Singular);
    }
    factor(spec, &g.charpoly(spec), level)
}

/// Type of `g ∈ GL_n(q)`.
pub fn element_type_gl(spec: &FieldSpec, g: &Mat) -> Result<ZType> {
    if !g.is_at_level(spec, Level::Base) {
        return Err(Error::NotOverBaseField);
    }
    let slots = invertible_factors(spec, g, Level::Base)?
        .into_iter()
        .map(|(f, m)| {
            Slot::new(
                f.degree().expect("nonconstant") as u32,
                shape_at(spec, g, &f, m),
            )
        })
        .collect();
    Ok(ZType::new(slots))
}

/// Type of a unitary `g`: self-U-reciprocal factors give odd slots, and
/// each pair `{f, f̃}` gives one pair slot, recorded at its smaller member.
pub fn element_type_u(spec: &FieldSpec, g: &Mat) -> Result<UZType> {
    let mut odd = Vec::new();
    let mut pair = Vec::new();
    for (f, m) in invertible_factors(spec, g, Level::Extension)? {
        let tilde = u_reciprocal(spec, &f)?;
        let slot = Slot::new(
            f.degree().expect("nonconstant") as u32,
            shape_at(spec, g, &f, m),
        );
        if tilde == f {
            odd.push(slot);
        } else if f < tilde {
            pair.push(slot);
        }
    }
    UZType::new(odd, pair)
}

/// Primary components of a unitary `g`: `ker f(g)^m` for each
/// self-U-reciprocal factor, and `ker f(g)^m ⊕ ker f̃(g)^m` for each pair.
/// Each component is returned as a basis.
pub fn primary_components(spec: &FieldSpec, g: &Mat) -> Result<Vec<Vec<Vec<FieldElem>>>> {
    let factors = invertible_factors(spec, g, Level::Extension)?;
    let kernel = |f: &Poly, m: u32| g.eval_poly(&f.pow(m, spec), spec).kernel(spec);
    let mut out = Vec::new();
    for (f, m) in &factors {
        let tilde = u_reciprocal(spec, f)?;
        if tilde == *f {
            out.push(kernel(f, *m));
        } else if *f < tilde {
            let (_, mt) = factors
                .iter()
                .find(|(h, _)| *h == tilde)
                .ok_or(Error::NotAMember)?;
            let mut basis = kernel(f, *m);
            basis.extend(kernel(&tilde, *mt));
            out.push(basis);
        }
    }
    Ok(out)
}

/// Whether the primary components of `g` are nondegenerate for `form` and
/// mutually orthogonal.
pub fn check_primary_decomposition(
    spec: &FieldSpec,
    form: &HermitianForm,
    g: &Mat,
) -> Result<bool> {
    let comps = primary_components(spec, g)?;
    for (i, a) in comps.iter().enumerate() {
        if form.restricted_gram(spec, a).rank(spec) != a.len() {
            return Ok(false);
        }
        for b in &comps[i + 1..] {
            let orthogonal = a
                .iter()
                .all(|u| b.iter().all(|v| form.pairing(spec, u, v).is_zero()));
            if !orthogonal {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_general_linear, build_unitary, BuildOptions};
    use std::collections::HashSet;

    fn f9() -> FieldSpec {
        FieldSpec::new(3, 1).unwrap()
    }

    #[test]
    fn gl_examples() {
        let f = f9();
        let t = |idx: &[u32]| {
            element_type_gl(&f, &Mat::from_indices(&f, 2, idx).unwrap())
                .unwrap()
                .to_string()
        };
        assert_eq!(t(&[1, 0, 0, 1]), "d1:[1,1]");
        assert_eq!(t(&[1, 1, 0, 1]), "d1:[2]");
        assert_eq!(t(&[1, 0, 0, 2]), "d1:[1] d1:[1]");
        assert_eq!(t(&[0, 1, 1, 0]), "d1:[1] d1:[1]");
        // x^2 + 1 is irreducible over F_3
        assert_eq!(t(&[0, 2, 1, 0]), "d2:[1]");
        let ext = Mat::from_indices(&f, 2, &[3, 0, 0, 1]).unwrap();
        assert_eq!(element_type_gl(&f, &ext), Err(Error::NotOverBaseField));
        assert_eq!(element_type_gl(&f, &Mat::zero(2)), Err(Error::Singular));
    }

    #[test]
    fn types_of_gl2_3_and_u2_3_classes() {
        let f = f9();
        let opts = BuildOptions::default();
        let gl = build_general_linear(2, &f, false, opts).unwrap();
        let types: HashSet<String> = gl
            .conjugacy_classes()
            .reps
            .iter()
            .map(|&r| element_type_gl(&f, gl.element(r)).unwrap().to_string())
            .collect();
        assert_eq!(types.len(), 4);
        let u = build_unitary(2, &f, &HermitianForm::identity(&f, 2).unwrap(), opts).unwrap();
        let types: HashSet<String> = u
            .conjugacy_classes()
            .reps
            .iter()
            .map(|&r| element_type_u(&f, u.element(r)).unwrap().to_string())
            .collect();
        let mut types: Vec<String> = types.into_iter().collect();
        types.sort();
        assert_eq!(types, ["o1:[1,1]", "o1:[1] o1:[1]", "o1:[2]", "p1:[1]"]);
    }

    #[test]
    fn primary_decomposition_on_u2_3() {
        let f = f9();
        let form = HermitianForm::identity(&f, 2).unwrap();
        let u = build_unitary(2, &f, &form, BuildOptions::default()).unwrap();
        for g in u.elements() {
            assert!(check_primary_decomposition(&f, &form, g).unwrap(), "{g:?}");
            let dims: usize = primary_components(&f, g)
                .unwrap()
                .iter()
                .map(Vec::len)
                .sum();
            assert_eq!(dims, 2);
        }
    }
}
