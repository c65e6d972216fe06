//! Orthogonal polynomials for the weight whose moments fill the Hankel
//! matrix `Phi`, and the one- and two-point routes built on them.

mod basis;
mod identity;
mod routes;

pub use basis::{
    build_basis, delta1_poly, delta2_poly, delta_identity_deviation, moments, parity_check,
    MomentSequence, OrthoBasis, ParityReport,
};
pub use identity::{
    genfun_onepoint, genfun_twopoint, h2_identity, h2_identity_table, hnuv_numerator,
    one_point_tables, shift_scan, truncation_excess, two_point_from_one_point,
    two_point_from_one_point_with, two_point_table_from_one_point, u_minus_v, verify_hnuv,
    verify_hnuv_hom, HnuvReport, Shifts, STANDARD_SHIFTS,
};
pub use routes::{apply_at_derivative, h2_nice, h_via_ortho, OmegaRhoJets, OrthoModel};
