//! Finger|Whitney systems on `V_k = S¹×S³ # k S²×S²`.

mod algebra;
mod graph;
mod reduce;
mod system;
mod twist;

use thiserror::Error;

pub use algebra::{
    compose_factorization, concatenate, lift_to_cover, relative_twist, reverse, upside_down, winding, winding_classes,
    HandClass,
};
pub use graph::{cycle_signs, finger_graph, is_monotone, s_trivial_by_graph, FingerGraph, Monotonicity};
pub use reduce::{contract_inessential, delete_s_trivial, dual_sphere_reduce};
pub use system::{
    DiscKind, DiscRecord, DualSphere, EyeIndex, FwSystem, Incidence, Indexing, MapTag, PairCount, SphereColor,
    SphereCount, SphereRef,
};
pub use twist::{plan_twist_path, twist_add, twist_negate, twist_parity_ok, Twist};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FwError {
    #[error("invalid system: {0}")]
    InvalidSystem(String),
    #[error("invalid cover degree {0}")]
    InvalidDegree(i64),
    #[error("twist ({}, {}) has odd coordinate sum", .0.p, .0.q)]
    Parity(Twist),
    #[error("composition mismatch: {0}")]
    CompositionMismatch(String),
    #[error("invalid dual certificate: {0}")]
    InvalidDualCertificate(String),
}

impl FwError {
    /// Stable kebab-case identifier used in reports and over the wire.
    pub fn code(&self) -> &'static str {
        match self {
            FwError::InvalidSystem(_) => "invalid-system",
            FwError::InvalidDegree(_) => "invalid-degree",
            FwError::Parity(_) => "parity-error",
            FwError::CompositionMismatch(_) => "composition-mismatch",
            FwError::InvalidDualCertificate(_) => "invalid-dual-certificate",
        }
    }
}
