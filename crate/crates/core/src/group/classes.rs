//! Conjugacy classes, centralizers, subgroup conjugacy and z-classes of an
//! enumerated group.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{element_kind, ElementKind, GroupTable, Mat, Restriction};

/// Class partition of a group. Representatives are the canonical minima of
/// their classes and are listed in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClasses {
    pub class_of: Vec<usize>,
    pub reps: Vec<usize>,
    pub sizes: Vec<usize>,
}

impl ConjugacyClasses {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

/// One z-class: the conjugacy classes whose centralizers are conjugate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZClass {
    /// Element indices of the member class representatives, ascending.
    pub class_reps: Vec<usize>,
    pub centralizer_order: usize,
}

impl GroupTable {
    /// Conjugacy classes, computed once and cached.
    pub fn conjugacy_classes(&self) -> &ConjugacyClasses {
        self.classes.get_or_init(|| {
            let unassigned = usize::MAX;
            let mut class_of = vec![unassigned; self.len()];
            let mut reps = Vec::new();
            let mut sizes = Vec::new();
            for x in 0..self.len() {
                if class_of[x] != unassigned {
                    continue;
                }
                let id = reps.len();
                let mut orbit: Vec<usize> = (0..self.len())
                    .into_par_iter()
                    .map(|g| self.conjugate(g, x))
                    .collect();
                orbit.sort_unstable();
                orbit.dedup();
                for &y in &orbit {
                    class_of[y] = id;
                }
                reps.push(x);
                sizes.push(orbit.len());
            }
            ConjugacyClasses {
                class_of,
                reps,
                sizes,
            }
        })
    }

    /// Sorted indices of the elements commuting with element `x`.
    pub fn centralizer(&self, x: usize) -> Vec<usize> {
        let spec = self.spec();
        let gx = self.element(x);
        (0..self.len())
            .into_par_iter()
            .filter(|&g| {
                let h = self.element(g);
                h.mul(gx, spec) == gx.mul(h, spec)
            })
            .collect()
    }

    /// Indices of a list of member matrices.
    pub fn indices_of(&self, mats: &[Mat]) -> Result<Vec<usize>> {
        let mut out = mats
            .iter()
            .map(|m| self.index_of(m).ok_or(Error::NotAMember))
            .collect::<Result<Vec<_>>>()?;
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// A small generating set of the subgroup `sub` (sorted indices):
    /// elements are added greedily while they fall outside the subgroup
    /// generated so far.
    pub fn generators(&self, sub: &[usize]) -> Vec<usize> {
        let mut gens: Vec<usize> = Vec::new();
        let mut span: Vec<usize> = vec![self.identity()];
        for &s in sub {
            if span.binary_search(&s).is_ok() {
                continue;
            }
            gens.push(s);
            span = self.closure(&gens);
        }
        gens
    }

    fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![self.identity()];
        let mut frontier = vec![self.identity()];
        let mut member = std::collections::HashSet::from([self.identity()]);
        while let Some(x) = frontier.pop() {
            for &s in gens {
                let y = self.mul(x, s);
                if member.insert(y) {
                    seen.push(y);
                    frontier.push(y);
                }
            }
        }
        seen.sort_unstable();
        seen
    }

    /// A `g` with `g A g^{-1} = B`, or `None`. Both subgroups are sorted
    /// index lists. The first witness in canonical order is returned.
    pub fn subgroups_conjugate_idx(&self, a: &[usize], b: &[usize]) -> Option<usize> {
        let gens = self.generators(a);
        self.conjugate_with_gens(&gens, a.len(), b)
    }

    fn conjugate_with_gens(&self, gens_a: &[usize], size_a: usize, b: &[usize]) -> Option<usize> {
        if size_a != b.len() {
            return None;
        }
        // a generator set mapping into B, with |A| = |B|, maps A onto B
        let maps_into = |g: usize| {
            gens_a
                .iter()
                .all(|&s| b.binary_search(&self.conjugate(g, s)).is_ok())
        };
        if maps_into(self.identity()) {
            return Some(self.identity());
        }
        (0..self.len())
            .into_par_iter()
            .find_first(|&g| maps_into(g))
    }

    /// Matrix-level subgroup conjugacy test.
    pub fn subgroups_conjugate(&self, a: &[Mat], b: &[Mat]) -> Result<Option<Mat>> {
        let a = self.indices_of(a)?;
        let b = self.indices_of(b)?;
        Ok(self
            .subgroups_conjugate_idx(&a, &b)
            .map(|g| self.element(g).clone()))
    }

    /// z-classes among the conjugacy classes selected by `restriction`.
    ///
    /// Centralizers of the class representatives are compared pairwise up
    /// to conjugacy, after bucketing by the multiset of conjugacy classes
    /// they meet, which is a conjugation invariant.
    pub fn z_classes(&self, restriction: Restriction) -> Vec<ZClass> {
        let classes = self.conjugacy_classes();
        let spec = self.spec();
        let reps: Vec<usize> = classes
            .reps
            .iter()
            .copied()
            .filter(|&r| {
                let kind = element_kind(spec, self.element(r));
                match restriction {
                    Restriction::All => true,
                    Restriction::Semisimple => {
                        matches!(kind, ElementKind::Central | ElementKind::Semisimple)
                    }
                    Restriction::Unipotent => {
                        kind == ElementKind::Unipotent || self.element(r).is_identity()
                    }
                }
            })
            .collect();

        let cents: Vec<(Vec<usize>, Vec<usize>)> = reps
            .par_iter()
            .map(|&r| {
                let c = self.centralizer(r);
                let mut sig: Vec<usize> = c.iter().map(|&x| classes.class_of[x]).collect();
                sig.sort_unstable();
                (c, sig)
            })
            .collect();

        struct Leader {
            cent: usize,
            gens: Vec<usize>,
            zclass: usize,
        }
        let mut buckets: HashMap<&[usize], Vec<Leader>> = HashMap::new();
        let mut out: Vec<ZClass> = Vec::new();
        for (i, (cent, sig)) in cents.iter().enumerate() {
            let leaders = buckets.entry(sig.as_slice()).or_default();
            let found = leaders.iter().find(|l| {
                self.conjugate_with_gens(&l.gens, cents[l.cent].0.len(), cent)
                    .is_some()
            });
            match found {
                Some(l) => out[l.zclass].class_reps.push(reps[i]),
                None => {
                    leaders.push(Leader {
                        cent: i,
                        gens: self.generators(cent),
                        zclass: out.len(),
                    });
                    out.push(ZClass {
                        class_reps: vec![reps[i]],
                        centralizer_order: cent.len(),
                    });
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::{FieldElem, FieldSpec};
    use crate::group::{build_general_linear, build_unitary, BuildOptions};
    use crate::hermitian::HermitianForm;

    fn f9() -> FieldSpec {
        FieldSpec::new(3, 1).unwrap()
    }

    #[test]
    fn class_counts() {
        let f = f9();
        let opts = BuildOptions::default();
        let gl = build_general_linear(2, &f, false, opts).unwrap();
        // GL_2(3) has 8 conjugacy classes
        assert_eq!(gl.conjugacy_classes().len(), 8);
        let sizes: usize = gl.conjugacy_classes().sizes.iter().sum();
        assert_eq!(sizes, 48);
        let f2 = FieldSpec::new(2, 1).unwrap();
        let s3 = build_general_linear(2, &f2, false, opts).unwrap();
        assert_eq!(s3.conjugacy_classes().len(), 3);
        let u = build_unitary(2, &f, &HermitianForm::identity(&f, 2).unwrap(), opts).unwrap();
        let cl = u.conjugacy_classes();
        assert_eq!(cl.sizes.iter().sum::<usize>(), 96);
        for (k, &r) in cl.reps.iter().enumerate() {
            assert_eq!(cl.sizes[k] * u.centralizer(r).len(), 96);
        }
    }

    #[test]
    fn centralizer_examples() {
        let f = f9();
        let opts = BuildOptions::default();
        let gl = build_general_linear(2, &f, false, opts).unwrap();
        let d = gl
            .index_of(&Mat::diag(&[FieldElem(1), FieldElem(2)]))
            .unwrap();
        assert_eq!(gl.centralizer(d).len(), 4);
        let u = build_unitary(2, &f, &HermitianForm::identity(&f, 2).unwrap(), opts).unwrap();
        let cl = u.conjugacy_classes();
        let unip: Vec<usize> = cl
            .reps
            .iter()
            .copied()
            .filter(|&r| element_kind(&f, u.element(r)) == ElementKind::Unipotent)
            .collect();
        assert_eq!(unip.len(), 1);
        assert_eq!(u.centralizer(unip[0]).len(), 12);
    }

    #[test]
    fn centralizer_is_intersection_over_jordan_parts() {
        let f = f9();
        let opts = BuildOptions::default();
        let u = build_unitary(2, &f, &HermitianForm::identity(&f, 2).unwrap(), opts).unwrap();
        let gl = build_general_linear(2, &f, false, opts).unwrap();
        for g in [&gl, &u] {
            for x in 0..g.len() {
                let (s, un) = crate::group::jordan_decompose(&f, g.element(x)).unwrap();
                let cs = g.centralizer(g.index_of(&s).unwrap());
                let cu = g.centralizer(g.index_of(&un).unwrap());
                let both: Vec<usize> = cs
                    .iter()
                    .copied()
                    .filter(|y| cu.binary_search(y).is_ok())
                    .collect();
                assert_eq!(g.centralizer(x), both);
            }
        }
    }

    #[test]
    fn gl2_over_f2_has_three_z_classes() {
        let f2 = FieldSpec::new(2, 1).unwrap();
        let g = build_general_linear(2, &f2, false, BuildOptions::default()).unwrap();
        let z = g.z_classes(Restriction::All);
        assert_eq!(z.len(), 3);
    }

    #[test]
    fn small_z_counts() {
        let f = f9();
        let opts = BuildOptions::default();
        let gl = build_general_linear(2, &f, false, opts).unwrap();
        assert_eq!(gl.z_classes(Restriction::All).len(), 4);
        assert_eq!(gl.z_classes(Restriction::Unipotent).len(), 2);
        let u = build_unitary(2, &f, &HermitianForm::identity(&f, 2).unwrap(), opts).unwrap();
        assert_eq!(u.z_classes(Restriction::All).len(), 4);
        assert_eq!(u.z_classes(Restriction::Semisimple).len(), 3);
    }

    #[test]
    fn conjugate_tori_have_a_witness() {
        let f = f9();
        let gl = build_general_linear(2, &f, false, BuildOptions::default()).unwrap();
        // non-split tori of order 8: centralizers of regular elliptic elements
        let elliptic: Vec<usize> = (0..gl.len())
            .filter(|&x| gl.centralizer(x).len() == 8)
            .collect();
        let a = gl.centralizer(elliptic[0]);
        for &y in &elliptic[1..] {
            let b = gl.centralizer(y);
            let g = gl
                .subgroups_conjugate_idx(&a, &b)
                .expect("tori are conjugate");
            let mut image: Vec<usize> = a.iter().map(|&s| gl.conjugate(g, s)).collect();
            image.sort_unstable();
            assert_eq!(image, b);
        }
        // a split torus is not conjugate to a non-split one
        let d = gl
            .index_of(&Mat::diag(&[FieldElem(1), FieldElem(2)]))
            .unwrap();
        assert!(gl.subgroups_conjugate_idx(&gl.centralizer(d), &a).is_none());
        let mats: Vec<Mat> = a.iter().map(|&i| gl.element(i).clone()).collect();
        assert!(gl
            .subgroups_conjugate(&mats, &mats)
            .unwrap()
            .unwrap()
            .is_identity());
    }
}
