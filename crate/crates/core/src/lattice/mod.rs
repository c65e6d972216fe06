//! Exhaustive enumeration of DWBC configurations: the ground truth that
//! every closed formula in this crate is checked against.

mod census;
mod grid;
mod oracle;

pub use census::{refined_census, refined_census_capped, CensusValues, RefinedCensus};
pub use grid::{
    enumerate_dwbc, enumerate_dwbc_capped, grid_to_asm, AsmMatrix, DwbcIter, Grid, VertexType,
    WeightClass, DEFAULT_SIZE_CAP,
};
pub use oracle::{
    oracle_homogeneous, oracle_inhomogeneous, oracle_inhomogeneous_capped, weight_hom,
    weight_inhom, ConfigHistogram, ConfigKey, OracleTables,
};
