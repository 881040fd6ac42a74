use thiserror::Error;

use crate::normalize::NormError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("type mismatch: expected {expected}, found {found}")]
    Mismatch { expected: String, found: String },
    #[error("intersection components erase differently: {left} vs {right}")]
    IntersectionMismatch { left: String, right: String },
    #[error("erased binder `{name}` occurs in the erasure of its body")]
    SideCondition { name: String },
    #[error("β cannot prove {left} ≃ {right}: operands are not convertible")]
    BetaMismatch { left: String, right: String },
    #[error("{construct} cannot have type {ty}")]
    Shape { construct: &'static str, ty: String },
    #[error("{term} of type {ty} is not a function")]
    NotAFunction { term: String, ty: String },
    #[error("{term} of type {ty} is not an intersection")]
    NotAnIntersection { term: String, ty: String },
    #[error("{term} of type {ty} is not an equation")]
    NotAnEquation { term: String, ty: String },
    #[error("{term} expects {expected}, but is applied with {found}")]
    ApplicationMode {
        term: String,
        expected: &'static str,
        found: &'static str,
    },
    #[error("ill-kinded type {ty}: {reason}")]
    IllKinded { ty: String, reason: String },
    #[error("kind mismatch for {ty}: expected {expected}, found {found}")]
    KindMismatch {
        ty: String,
        expected: String,
        found: String,
    },
    #[error("{0} is not a valid kind")]
    NotAKind(String),
    #[error("cannot infer a type for {0}; add an annotation")]
    CannotInfer(String),
    #[error("{0} is a type, not a term")]
    NotATerm(String),
    #[error(transparent)]
    Norm(#[from] NormError),
}

impl TypeError {
    /// Stable short name used by `#assert-fail` directives.
    pub fn class(&self) -> &'static str {
        match self {
            TypeError::Mismatch { .. } => "mismatch",
            TypeError::IntersectionMismatch { .. } => "intersection-mismatch",
            TypeError::SideCondition { .. } => "side-condition",
            TypeError::BetaMismatch { .. } => "beta-mismatch",
            TypeError::Shape { .. } => "shape",
            TypeError::NotAFunction { .. } => "not-a-function",
            TypeError::NotAnIntersection { .. } => "not-an-intersection",
            TypeError::NotAnEquation { .. } => "not-an-equation",
            TypeError::ApplicationMode { .. } => "application-mode",
            TypeError::IllKinded { .. } => "ill-kinded",
            TypeError::KindMismatch { .. } => "kind-mismatch",
            TypeError::NotAKind(_) => "not-a-kind",
            TypeError::CannotInfer(_) => "cannot-infer",
            TypeError::NotATerm(_) => "not-a-term",
            TypeError::Norm(_) => "fuel",
        }
    }
}
