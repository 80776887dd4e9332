//! Carving/surgery presentations and their FWCS structure.

mod dependency;
mod forest;
mod fwcs;
mod model;
mod optimized;

use thiserror::Error;

pub use dependency::{
    check_dependency_rules, dependency_table, matching_rule, Classification, DependencyRule, Role, Sign,
};
pub use forest::{level, CurveForest, CurveNode, DiscCurves, FlatCurve};
pub use fwcs::{
    b_circle_id, b_knot_id, b_knot_side, b_pair, build_family, check_fwcs, family_circle_id, family_knot_id,
    family_knot_side, generate_fwcs_arrows, generate_optimized_arrows, ArrowMode,
};
pub(crate) use fwcs::{prescribed_arrows, structure};
pub use model::{
    Component, ComponentKind, Family, FamilyKind, FamilyProvenance, Label, Presentation, Report, Side, Violation,
};
pub use optimized::{check_optimized, OptimizedCert};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CsError {
    #[error("not found: {0}")]
    NotFound(String),
    #[error("invalid family index {0}")]
    InvalidIndex(i64),
    #[error("invalid family data: {0}")]
    InvalidFamily(String),
    #[error("cannot check level: {0}")]
    CannotCheckLevel(String),
    #[error("arrow relation is cyclic")]
    Cyclic,
}

impl CsError {
    pub fn code(&self) -> &'static str {
        match self {
            CsError::NotFound(_) => "not-found",
            CsError::InvalidIndex(_) => "invalid-index",
            CsError::InvalidFamily(_) => "invalid-family",
            CsError::CannotCheckLevel(_) => "cannot-check-level",
            CsError::Cyclic => "cyclic",
        }
    }
}
