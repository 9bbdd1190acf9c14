//! Crate-wide error type.

use crate::bigraded::{Bidegree, Window};

pub type Result<T> = std::result::Result<T, EngineError>;

#[derive(Debug, thiserror::Error)]
pub enum EngineError {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("characteristic 2 hides sign errors; pass the explicit override to allow it")]
    CharTwoRejected,

    #[error("field element arithmetic mixed between incompatible fields")]
    FieldMismatch,

    #[error("matrix dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("linear system is inconsistent")]
    InconsistentSystem,

    #[error("invalid window: {0}")]
    InvalidWindow(String),

    #[error("window not certified: requested {requested}, certified {certified}")]
    WindowNotCertified { requested: Window, certified: Window },

    #[error("lookup outside certified window: {bidegree} not in {valid}")]
    OutOfWindow { bidegree: Bidegree, valid: Window },

    #[error("window too small: {0}")]
    WindowTooSmall(String),

    #[error("invalid algebra presentation: {0}")]
    InvalidAlgebra(String),

    #[error("invalid module presentation: {0}")]
    InvalidModule(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("algebra is not Gorenstein in the examined window: {0}")]
    NotGorenstein(String),

    #[error("degree-zero part is not commutative: generator {0} is odd")]
    NonCommutativeDegreeZero(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl EngineError {
    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        EngineError::Parse {
            line,
            msg: msg.into(),
        }
    }
}
