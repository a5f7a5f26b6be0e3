use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },

    #[error("arity error at byte {pos}: `{form}` expects {expected}, found {found}")]
    Arity {
        pos: usize,
        form: String,
        expected: String,
        found: usize,
    },

    #[error("invalid ordinal `{text}`: {reason}")]
    InvalidOrdinal { text: String, reason: String },

    #[error("value {value} is not an element of {carrier}")]
    NotInCarrier { value: String, carrier: String },

    #[error("family over {domain} is not total: {reason}")]
    FamilyNotTotal { domain: String, reason: String },

    #[error("{code} has no finite enumeration")]
    NonFinitary { code: String },

    #[error("{code} has more than {bound} elements")]
    ExtensionTooLarge { code: String, bound: usize },

    #[error("level {level} out of range (tower has {levels} levels)")]
    LevelOutOfRange { level: usize, levels: usize },

    #[error("{code} is not a member of level {level}")]
    LevelViolation { code: String, level: usize },

    #[error("cannot lift from level {from} down to level {to}")]
    LiftBelow { from: usize, to: usize },

    #[error("invalid budgets: {0}")]
    InvalidBudgets(String),

    #[error("{code} is not a proposition")]
    NotAProposition { code: String },

    #[error("mismatched endpoints: {0}")]
    MismatchedEndpoints(String),

    #[error("invalid map: {0}")]
    InvalidMap(String),

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("population exceeds cap of {cap} codes")]
    PopulationCap { cap: usize },

    #[error("{0} is outside the population")]
    OutsidePopulation(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}

impl Error {
    /// Errors raised while reading input text, as opposed to semantic failures.
    pub fn is_parse_error(&self) -> bool {
        matches!(
            self,
            Error::Syntax { .. }
                | Error::Arity { .. }
                | Error::InvalidOrdinal { .. }
                | Error::NotInCarrier { .. }
                | Error::FamilyNotTotal { .. }
                | Error::InvalidDiagram(_)
        )
    }
}
