//! Boundary correlation functions of the six-vertex model with domain wall
//! boundary conditions, evaluated in arbitrary precision, together with an
//! exhaustive enumeration oracle and refined ASM counts.

pub mod error;
pub mod homogeneous;
pub mod inhomogeneous;
pub mod lattice;
pub mod numerics;
pub mod ortho;
pub mod sampling;
pub mod verify;

pub use error::{Error, Result};
pub use homogeneous::{HomogeneousModel, VertexWeights, WeightParams};
pub use inhomogeneous::{InhomParams, InhomogeneousModel};
pub use numerics::{Scalar, DEFAULT_PRECISION};
