//! The brute-force oracle: fully enumerated `GL_n` and `U_n` over tiny
//! fields, their conjugacy classes and centralizers, subgroup conjugacy,
//! z-classes, and Wall's membership criterion.

mod classes;
mod element;
mod mat;
mod orders;
mod table;
mod wall;

use serde::Serialize;

pub use classes::{ConjugacyClasses, ZClass};
pub use element::{
    element_kind, element_order, is_semisimple, is_unipotent, jordan_decompose, ElementKind,
};
pub use mat::{Mat, MatrixFile};
pub use orders::{
    big_pow, gl_order, gl_unipotent_centralizer_order, unipotent_centralizer_order,
    unipotent_radical_exponent, unitary_order,
};
pub use table::{
    build_general_linear, build_unitary, BuildOptions, GroupTable, DEFAULT_GROUP_BOUND,
};
pub use wall::{wall_membership, WallOracle};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupKind {
    GeneralLinear,
    Unitary,
}

/// Which elements a z-class count ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Restriction {
    All,
    Semisimple,
    Unipotent,
}
