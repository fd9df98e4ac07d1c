use thiserror::Error;

use crate::exact::geometry::{Violation, ViolationKind};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("identical lines")]
    IdenticalLines,
    #[error("unsupported tangency")]
    UnsupportedTangency,
    #[error("unsupported parabola")]
    UnsupportedParabola,
    #[error("complex intersection: {0}")]
    ComplexIntersection(String),
    #[error("non-generic projection: {0}")]
    NonGeneric(String),
    #[error("invalid arrangement: {0}")]
    Invalid(String),
    #[error("malformed skeleton: {0}")]
    MalformedSkeleton(String),
    #[error("budget exhausted after {0} steps")]
    BudgetExhausted(usize),
    #[error("event {0} is not adjacent to the basepoint")]
    NotAdjacent(usize),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("graph has first Betti number {0}, not 1")]
    NotOneCycle(i64),
    #[error("malformed input: {0}")]
    Malformed(String),
}

impl Error {
    pub fn from_violation(v: &Violation) -> Error {
        let who: Vec<String> = v.components.iter().map(|c| c.to_string()).collect();
        let who = who.join(", ");
        match v.kind {
            ViolationKind::IdenticalLines => Error::IdenticalLines,
            ViolationKind::UnsupportedTangency => Error::UnsupportedTangency,
            ViolationKind::UnsupportedParabola => Error::UnsupportedParabola,
            ViolationKind::ComplexIntersection => Error::ComplexIntersection(who),
            ViolationKind::LineThroughBranchPoint | ViolationKind::PointAtInfinity => {
                Error::NonGeneric(format!("{:?}: {who}", v.kind))
            }
            _ => Error::Invalid(format!("{:?}: {who}", v.kind)),
        }
    }

    /// `true` for errors that mean the arrangement is inadmissible.
    pub fn is_validation(&self) -> bool {
        !matches!(self, Error::Malformed(_))
    }
}
