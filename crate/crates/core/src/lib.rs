//! Double vector spaces, their automorphism groups and the bundle and Lie
//! algebra constructions built on them.

pub mod algebra;
pub mod aut;
pub mod bilinear;
pub mod bundles;
pub mod connections;
pub mod dla;
pub mod dlg;
pub mod duality;
pub mod dvs;
pub mod error;
pub mod frames;
pub mod json;
pub mod linalg;
pub mod sample;
pub mod report;
pub mod scalar;

pub use algebra::{commutator_oracle, der_bracket, der_exp, triangle_action, DvsDer};
pub use aut::{aut_apply, aut_compose, aut_factor, aut_inverse, aut_project, AutClass, DvsAut};
pub use bilinear::BilinearMap;
pub use dvs::{Dims, DvsElement, Side};
pub use error::{Error, Result};
pub use linalg::Matrix;
pub use scalar::{Rational, Scalar, ScalarKind};
