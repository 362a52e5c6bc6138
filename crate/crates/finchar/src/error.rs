use thiserror::Error;

/// Errors produced by workbench operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("universe mismatch: expected `{expected}`, found `{found}`")]
    UniverseMismatch { expected: String, found: String },

    #[error("universe `{universe}` has {size} elements, above the exhaustive cap {cap}")]
    CapExceeded {
        universe: String,
        size: usize,
        cap: usize,
    },

    #[error("element index {index} out of range for universe `{universe}` of size {size}")]
    IndexOutOfRange {
        universe: String,
        index: usize,
        size: usize,
    },

    #[error("universe size {size} exceeds the supported maximum {max}")]
    UniverseTooLarge { size: usize, max: usize },

    #[error("universe `{universe}` is not a product universe")]
    NotProduct { universe: String },

    #[error("universe `{universe}` is not bottom-extended")]
    NotBottomExtended { universe: String },

    #[error("relation is not a strict order: {reason}")]
    NotStrictOrder { reason: String },

    #[error("chain grammar axiom violated: {reason}")]
    GrammarViolation { reason: String },

    #[error("duplicate declaration `{name}`")]
    DuplicateName { name: String },
}

pub type Result<T> = std::result::Result<T, Error>;
