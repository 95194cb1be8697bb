use thiserror::Error;

/// Checker failures. Terms and grades are pre-rendered so the error carries
/// no semiring reference.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum TypeError {
    #[error("unbound variable `{0}`")]
    Unbound(String),
    #[error("type mismatch in {site}: expected {expected}, found {found}")]
    Mismatch { site: String, expected: String, found: String },
    #[error("not a simple-system form: {0}")]
    NotSimple(String),
    #[error("case grade {0} does not satisfy 1 <= q")]
    CaseGrade(String),
    #[error("case branches use {0} and {1}, which have no join")]
    BranchJoin(String, String),
    #[error("`{var}` is used at {used} but only {allowed} is allowed")]
    UsageExceeded { var: String, used: String, allowed: String },
    #[error("declared usage insufficient for `{var}`: needs {needed}, declared {declared}")]
    DeclaredInsufficient { var: String, needed: String, declared: String },
    #[error("grade mismatch in {site}: expected {expected}, found {found}")]
    GradeMismatch { site: String, expected: String, found: String },
    #[error("ill-formed motive: result type {0} mentions a pattern variable")]
    IllFormedMotive(String),
    #[error("cannot infer a type for {0}; use it where its type is known")]
    CannotInfer(String),
    #[error("fuel exhausted after {0} steps")]
    Fuel(usize),
    #[error("context length mismatch")]
    ContextShape,
}

impl TypeError {
    pub fn reason(&self) -> &'static str {
        match self {
            TypeError::Unbound(_) => "unbound-variable",
            TypeError::Mismatch { .. } => "type-mismatch",
            TypeError::NotSimple(_) => "not-simple",
            TypeError::CaseGrade(_) => "case-grade",
            TypeError::BranchJoin(..) => "branch-join",
            TypeError::UsageExceeded { .. } => "usage-exceeded",
            TypeError::DeclaredInsufficient { .. } => "declared-usage-insufficient",
            TypeError::GradeMismatch { .. } => "grade-mismatch",
            TypeError::IllFormedMotive(_) => "ill-formed-motive",
            TypeError::CannotInfer(_) => "cannot-infer",
            TypeError::Fuel(_) => "fuel-exhausted",
            TypeError::ContextShape => "context-shape",
        }
    }
}
