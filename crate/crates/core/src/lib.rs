//! Exact computations with the golden-ratio field, Coxeter groups of types
//! A4, D6, E8, H2, H3, H4, their affine extensions, the folding projections
//! between them, and the quasicrystal fragments generated by the induced
//! affine reflection groups.

pub mod affine;
pub mod coxeter;
pub mod double_ext;
pub mod error;
pub mod golden;
pub mod matrix;
pub mod projection;
pub mod quasicrystal;
mod zt;

pub use affine::{classify, extension_by_name, induce, BorderedCartan, ExtensionRecord, Quadruplet};
pub use coxeter::{
    cartan_matrix, gram_matrix, highest_root, reflect, root_system, Axis, CartanLike, GroupId, MatrixKind, RootVector,
};
pub use double_ext::{enumerate_double, DoubleExtension};
pub use error::{Error, Result};
pub use golden::{galois_conj, tau_pow, GoldenInt, GoldenRat};
pub use matrix::Matrix;
pub use projection::{lift, project, ProjectionMap, Subspace};
pub use quasicrystal::{generate_fragment, Fragment, TranslationSpec};
