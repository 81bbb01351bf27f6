use thiserror::Error;

/// Errors shared across the algebra modules.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("variable-set mismatch: {0} vs {1}")]
    VarSetMismatch(String, String),
    #[error("coordinate mismatch: {0} vs {1}")]
    CoordMismatch(String, String),
    #[error("variable {0} not in active variable set {1}")]
    NotInVarSet(String, String),
    #[error("contraction of a 0-form")]
    ContractZeroForm,
    #[error("Euler weight zero")]
    EulerWeightZero,
    #[error("expected a form of degree {expected}, got {got}")]
    WrongFormDegree { expected: u8, got: u8 },
    #[error("element is not homogeneous: {0}")]
    Inhomogeneous(String),
    #[error("insufficient truncation headroom: need trunc >= {needed}, have {have}")]
    Headroom { needed: u32, have: u32 },
    #[error("element violates a structural invariant: {0}")]
    Invariant(String),
    #[error("element is not in g0: offending monomial {0}")]
    NotInG0(String),
    #[error("element is not in the iota-image span")]
    NotInIotaSpan,
    #[error("closure violation: [iota(f), iota(g)] matches neither branch for f={f}, g={g}")]
    ClosureViolation { f: String, g: String },
    #[error("not a simultaneous eigenvector of {0}")]
    NotEigenvector(String),
    #[error("window exceeded: {0}")]
    WindowExceeded(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
