//! Exact counting and brute-force verification of z-classes (conjugacy
//! classes of centralizers) in the general linear groups `GL_n(q)` and the
//! finite unitary groups `U_n(q)`.
//!
//! The crate has two independent sides that check each other:
//!
//! - closed forms: partition counts, truncated power series for the
//!   generating functions, and enumeration of z-class *types*
//!   ([`combinatorics`], [`series`], [`zcount`]);
//! - a brute-force oracle: explicit finite fields, polynomials, hermitian
//!   forms and fully enumerated matrix groups ([`ff`], [`poly`],
//!   [`hermitian`], [`group`]).
//!
//! The [`cli`] module drives both from the `zclass` binary.

pub mod cli;
pub mod combinatorics;
pub mod error;
pub mod ff;
pub mod group;
pub mod hermitian;
pub mod poly;
pub mod series;
pub mod zcount;

pub use error::{Error, Result};
