//! Wall's criterion: `A ∈ GL_n(q^2)` is conjugate to an element of
//! `U_n(q)` iff `A` and `ᵗĀ^{-1}` are conjugate in `GL_n(q^2)`.

use crate::error::{Error, Result};
use crate::ff::FieldSpec;
use crate::group::{build_general_linear, BuildOptions, GroupTable, Mat};

/// `GL_n(q^2)` with its classes, answering membership queries.
#[derive(Debug)]
pub struct WallOracle {
    gl: GroupTable,
}

impl WallOracle {
    pub fn new(spec: &FieldSpec, n: usize, opts: BuildOptions) -> Result<Self> {
        let gl = build_general_linear(n, spec, true, opts)?;
        gl.conjugacy_classes();
        Ok(Self { gl })
    }

    pub fn group(&self) -> &GroupTable {
        &self.gl
    }

    /// Whether `a` is conjugate in `GL_n(q^2)` to a unitary element.
    pub fn is_member(&self, a: &Mat) -> Result<bool> {
        let spec = self.gl.spec();
        let i = self.gl.index_of(a).ok_or(Error::NotAMember)?;
        let dual = a
            .conj_transpose(spec)
            .inverse(spec)
            .ok_or(Error::Singular)?;
        let j = self.gl.index_of(&dual).ok_or(Error::NotAMember)?;
        let classes = self.gl.conjugacy_classes();
        Ok(classes.class_of[i] == classes.class_of[j])
    }
}

/// One-shot form of [`WallOracle::is_member`].
pub fn wall_membership(spec: &FieldSpec, a: &Mat, opts: BuildOptions) -> Result<bool> {
    if !a.is_invertible(spec) {
        return Err(Error::Singular);
    }
    WallOracle::new(spec, a.n(), opts)?.is_member(a)
}
