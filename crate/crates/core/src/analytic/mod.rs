//! Floating-point checks: geodesics, the (2, 3) q-series, cycle integrals,
//! winding numbers, class enumeration and the distribution of `Psi/length`.

mod classes;
mod cycle;
mod geodesic;
pub mod modular;
pub mod quadrature;

pub use classes::{
    distribution_stats, enumerate_classes, enumerate_classes_23_by_trace, numeric_checks_23, positive_representative,
    reference_cdf, ClassEntry, ClassTable, DistributionStats, EnumerationBound, NumericCheck, MAX_CANDIDATES,
};
pub use cycle::{cycle_integral_23, geodesic_winding_23, winding_number_23, CycleIntegral, Winding, MAX_PHASE_STEP};
pub use geodesic::{check_positive_hyperbolic, geodesic_data, GeodesicData};
pub use modular::log_delta_23;

use crate::group::GroupError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AnalyticError {
    #[error("precondition violated: {0}")]
    Domain(String),
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}
