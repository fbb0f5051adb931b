//! Multivariable Askey-Wilson, Wilson, continuous Hahn and Jacobi
//! polynomials in exact Gaussian-rational arithmetic, with checks of the
//! identities they satisfy.

pub mod error;
pub mod exactnum;
mod linalg;
pub mod operators;
pub mod params;
pub mod partitions;
pub mod identities;
pub mod limits;
pub mod polynomials;
pub mod quadrature;
pub mod report;
pub mod suite;
pub mod sympoly;

pub use error::{MathError, Result};
pub use exactnum::{ExactScalar, FloatScalar, Scalar};
pub use params::{hat_parameters, Family, FamilyParams, HatParams, ParamSet};
pub use partitions::{Partition, SignedIndexSet};
pub use sympoly::{SymPoly, VariableKind};
