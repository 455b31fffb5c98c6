//! Θ on index-step-one edges, one-step restrictions, path sums for the
//! canonical classes and their duals, localization integrals, structure
//! constants and the checks run on every computed class.

mod paths;
mod table;
mod theta;
mod verify;

pub use paths::{
    dual_restrict, dual_row, enumerate_paths, one_step_restrictions, restrict, restrict_column, CanonicalGraph,
};
pub use table::{
    abbv_integrate, canonical_graph, canonical_table, class_values_from_json, pointwise_product,
    structure_constants, CanonicalBasis, ClassTable, Pipeline,
};
pub use theta::{
    compute_thetas, eliminate_along, index_step_edges, theta, theta_modular, theta_projection, theta_table_with,
    ThetaMethod, ThetaTable,
};
pub use verify::{
    gkm_incompatible_edges, positivity_report, robust_divisibility_report, verify_canonical, Check,
    PositivityEntry, PositivityReport, RobustEntry, RobustReport, VerificationReport,
};
