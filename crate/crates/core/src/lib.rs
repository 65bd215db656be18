//! Exact homological algebra over artinian local algebras over `F_p`.
//!
//! The crate builds algebras from monomial presentations or structure
//! constants, computes with finite-dimensional modules over them
//! (Hom, tensor, Matlis duality, minimal free resolutions, Ext, Tor and
//! Tate (co)homology) and uses these to recognise semidualizing modules
//! and to check the correspondence between non-trivial semidualizing
//! modules and Gorenstein presentations by cohomologically independent
//! ideals on concrete examples.

pub mod algebra;
pub mod error;
pub mod harness;
pub mod linalg;
pub mod module;
pub mod resolution;
pub mod semidual;
pub mod tate;
pub mod trivext;

pub use algebra::{AlgebraMap, ArtinAlgebra, Ideal, QuotientAlgebra};
pub use error::{Error, Result};
pub use linalg::{Matrix, PrimeField, SparseVec, DEFAULT_PRIME};
pub use module::{FDModule, Hom, IsoResult, ModuleMap, Tensor};
