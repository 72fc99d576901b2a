use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("generator index {index} is out of range for an alphabet of {size} generators")]
    LetterOutOfRange { index: usize, size: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("graph is not right-angled: edge {0} has label {1}")]
    NotRightAngled(String, u32),

    #[error("invalid braid: {0}")]
    InvalidBraid(String),

    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),

    #[error("automaton is not normalized: {0}")]
    NotNormalized(String),

    #[error("invalid accepting path: {0}")]
    InvalidPath(String),

    #[error("witness verification failed: {0}")]
    WitnessVerification(String),

    #[error("wrong ambient group: expected {expected}, found {found}")]
    WrongAmbient { expected: String, found: String },

    #[error("wrong instance kind: expected {expected}, found {found}")]
    WrongKind { expected: String, found: String },

    #[error("search exceeded the cap of {limit} distinct elements")]
    ResourceLimit { limit: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
