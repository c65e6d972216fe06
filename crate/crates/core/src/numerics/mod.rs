//! Arbitrary-precision scalars, Taylor jets, polynomials and determinants.

mod angle;
mod bijet;
mod jet;
mod matrix;
mod poly;
mod scalar;

pub use angle::Angle;
pub use bijet::BiJet;
pub use jet::{UniJet, ValuedJet};
pub use matrix::{MinorTable, RealMatrix};
pub use poly::{Coefficient, DensePoly, DensePoly2};
pub use scalar::{check_tolerance, Scalar, DEFAULT_PRECISION};
