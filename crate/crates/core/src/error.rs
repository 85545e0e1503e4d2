use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SlsError {
    #[error("dimension mismatch: expected {expected} qubits, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("cannot parse Pauli string {input:?}: {reason}")]
    PauliParse { input: String, reason: String },

    #[error("invalid code: {0}")]
    InvalidCode(String),

    #[error("center contains -I: the gauge generators are sign-inconsistent")]
    MinusIdentityInCenter,

    #[error("unsupported construction: {0}")]
    Unsupported(String),

    #[error("code has no lattice geometry")]
    MissingGeometry,

    #[error("no strip representative of the requested logical within width {max_width}")]
    NoStripRepresentative { max_width: usize },

    #[error("boundary logical admits a logical operator on a strict subset of its support")]
    SubSupportLogical,

    #[error("incompatible merge: {0}")]
    IncompatibleMerge(String),

    #[error("no stabilizer witness for merging generator {index}")]
    MissingWitness { index: usize },

    #[error("ledger mismatch on {quantity}: expected {expected}, found {found}")]
    LedgerMismatch {
        quantity: String,
        expected: i64,
        found: i64,
    },

    #[error("invalid gauge-fixing set: {0}")]
    InvalidGaugeFix(String),

    #[error("non-Hermitian operator {0}")]
    NonHermitian(String),

    #[error("invalid encoding request: {0}")]
    InvalidEncoding(String),

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("interchange format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, SlsError>;
