//! Exact verification and classification of paracontact metric structures
//! presented in a moving frame.
//!
//! The crate is organised bottom-up:
//!
//! - [`scalar`], [`poly`], [`linalg`]: exact arithmetic in Q(sqrt D),
//!   multivariate polynomials, and the fraction-free linear-algebra kernels.
//! - [`parse`]: the polynomial/scalar expression grammar shared by the file
//!   format and by report rendering.
//! - [`frame`]: moving frames as bracket tables plus directional derivatives,
//!   with Lie-algebra and coordinate-chart backends.
//! - [`structure`]: almost-paracontact and paracontact metric axioms, the
//!   h-tensor, and normality.
//! - [`curvature`]: Levi-Civita connection, Riemann tensor, and
//!   (kappa, mu)-nullity verification and inference.
//! - [`classify`]: rank stratification of h and the pointwise canonical basis.
//! - [`deform`]: D_c-homothetic deformations and the mu transformation law.
//! - [`catalog`]: constructors for the built-in example structures.

pub mod catalog;
pub mod classify;
pub mod curvature;
pub mod deform;
mod error;
pub mod frame;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod report;
pub mod scalar;
pub mod structure;

pub use error::{
    CanonicalError, CatalogError, DeformError, ExactError, FrameError, StructureError,
};
pub use frame::{CoordFrame, FieldVec, Frame, FrameContext, LieFrame};
pub use linalg::{ConstMatrix, LinearSolution, Matrix, PolyMatrix};
pub use poly::{Monomial, Poly};
pub use report::{AxiomCheck, AxiomReport};
pub use scalar::{Scalar, DEFAULT_RADICAND};
pub use structure::ParacontactData;
