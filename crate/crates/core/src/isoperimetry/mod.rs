//! Isoperimetric quantities for vertex sets: the `|∂A|·ln(2+|A|)/|A|` ratio,
//! the Coulhon–Saloff-Coste and Babai–Szegedy bounds, the Z-certificate with
//! explicit constants, the two-dimensional warm-up argument, the finite-regime
//! size threshold, and the tree branch-point check.

mod analysis;
mod branch;
mod certificate;
mod report;
mod warmup;

pub use analysis::{
    analyze_set, babai_szegedy, cs_bound, diameter, finite_applicability, iso_dimension_fit,
    DimensionFit, SetAnalysis,
};
pub use branch::{branch_point_check, BranchReport};
pub use certificate::{
    certificate_bounds_check, z_certificate, BoundaryTerm, BoundsCheck, Certificate, ProofConstants,
};
pub use report::{bound_report, write_report_csv, write_report_text, ReportOptions, SetReport};
pub use warmup::{warmup_check, WarmupReport};
