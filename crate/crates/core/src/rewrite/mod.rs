//! Guarded, transactional rewrites of carving/surgery presentations.

mod diff;
mod ops;

use thiserror::Error;

pub use diff::{Diff, LabelChange};
pub use ops::{
    apply, cancel_hopf, cancel_knot_circle, candidate_ops, make_abstract, make_concrete, slide, RewriteOp,
    SlideVariant, SplitFlag,
};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("mode conflict: {0}")]
    ModeConflict(String),
    #[error("{0} is not abstract")]
    NotAbstract(String),
    #[error("order conflict: {0}")]
    OrderConflict(String),
    #[error("blocked by {0}")]
    Blocked(String),
    #[error("no split Hopf witness for {0}")]
    NotSplit(String),
    #[error("variant mismatch: {0}")]
    VariantMismatch(String),
    #[error("unknown component {0}")]
    NotFound(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("result fails validation: {}", .0.join("; "))]
    InvalidResult(Vec<String>),
}

impl RewriteError {
    pub fn code(&self) -> &'static str {
        match self {
            RewriteError::ModeConflict(_) => "mode-conflict",
            RewriteError::NotAbstract(_) => "not-abstract",
            RewriteError::OrderConflict(_) => "order-conflict",
            RewriteError::Blocked(_) => "blocked",
            RewriteError::NotSplit(_) => "not-split",
            RewriteError::VariantMismatch(_) => "variant-mismatch",
            RewriteError::NotFound(_) => "not-found",
            RewriteError::InvalidArgument(_) => "invalid-argument",
            RewriteError::InvalidResult(_) => "invalid-result",
        }
    }
}
