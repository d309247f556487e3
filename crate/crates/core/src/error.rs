use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("word index {index} is out of range for a sentence of {len} words")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("word {0} cannot be linked to itself")]
    SelfLink(usize),

    #[error("word {0} has an empty form")]
    EmptyForm(usize),

    #[error("word {0} has an empty category")]
    EmptyCategory(usize),

    #[error("line {line}: {message}")]
    Format { line: usize, message: String },

    #[error("duplicate form '{0}'")]
    DuplicateForm(String),

    #[error("unknown word '{form}' at position {index}")]
    UnknownWord { form: String, index: usize },

    #[error("sentence has {len} words; exhaustive enumeration is limited to {bound}")]
    TooLong { len: usize, bound: usize },

    #[error("cycle involving word {0}")]
    Cycle(usize),

    #[error("word {0} has more than one head")]
    MultipleHeads(usize),

    #[error("{0}")]
    Refused(String),
}

pub type Result<T> = std::result::Result<T, Error>;
