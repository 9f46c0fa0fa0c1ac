use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("constant term {0} is not a unit (expected +1 or -1)")]
    NonUnitConstant(String),

    #[error("series must have at least one coefficient")]
    EmptySeries,

    #[error("invalid q-Pochhammer spec: {0}")]
    InvalidPoch(&'static str),

    #[error("family parameters must be positive (got k={k}, m={m})")]
    InvalidFamily { k: u32, m: u32 },

    #[error("cannot divide by q^{shift}: coefficient of q^{index} is {value}")]
    NonzeroLowWindow {
        shift: usize,
        index: usize,
        value: String,
    },

    #[error("{0} is a signed series kind; expected an unsigned one")]
    SignedKind(&'static str),

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("case formula gives {formula} but the expansion has {direct} at q^{index} (n={n})")]
    CaseMismatch {
        n: u64,
        index: u64,
        formula: i64,
        direct: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
