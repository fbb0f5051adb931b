//! Exact Gaussian-rational scalars, their float mirror, and the scalar
//! special functions (Pochhammer symbols, q-shifted factorials, gamma).

mod exact;
mod float;
mod scalar;
pub mod special;

pub use exact::ExactScalar;
pub(crate) use exact::common_denominator;
pub use float::FloatScalar;
pub use scalar::Scalar;
pub use special::{
    gamma_float, ln_gamma_float, pochhammer, pochhammer_exact, qpochhammer, qpochhammer_exact,
    qpochhammer_inf_float,
};
