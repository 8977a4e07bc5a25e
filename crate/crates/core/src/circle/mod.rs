//! The circle `ℝ/ℤ`: trigonometric polynomials, scaling filters, transfer
//! operators of `d`-fold coverings, and the solenoid random walk.

pub mod filter;
pub mod solenoid;
pub mod transfer;
pub mod trig;

pub use filter::{
    cascade_phihat, periodization, pt_cylinder_mass, qmf_check, tightness_defect, translate_frame, w_from_filter,
    FilterCoeffs, QmfReport, TranslateFrame,
};
pub use solenoid::{half_weight, solenoid_covariance_exact, solenoid_covariance_mc, solenoid_walk, DyadicAngle, SolenoidEnsemble, SolenoidStart};
pub use transfer::{
    cantor_filter, cantor_filter_exact, lowpass_check, strong_invariance_check, transfer_apply, transfer_branch_sum,
    v_adjoint_check,
};
pub use trig::TrigPoly;
