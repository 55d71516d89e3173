use thiserror::Error;

/// Errors raised by the library. Verification failures carry enough context
/// to reproduce the disagreement.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported field: order {0} (supported: 2, 3, 4, 5, 7, 8, 9)")]
    UnsupportedField(u32),
    #[error("invalid element code {code} for F_{q}")]
    InvalidElement { code: u32, q: u32 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("field mismatch: F_{left} vs F_{right}")]
    FieldMismatch { left: u32, right: u32 },
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("ambient dimension {0} is too large for the packed subspace representation")]
    DimensionTooLarge(usize),
    #[error("enumeration too large: {what} ({size} > cap {cap})")]
    EnumerationTooLarge { what: String, size: u128, cap: u128 },
    #[error("ambient group too large: q^(n^2) = {size} exceeds scan cap {cap}")]
    AmbientTooLarge { size: u128, cap: u128 },
    #[error("group closure is incomplete (truncated at {0} elements)")]
    IncompleteClosure(usize),
    #[error("group has no generators")]
    NoGenerators,
    #[error("subspace is not a node of the invariant lattice")]
    NotInLattice,
    #[error("subgroup is not contained in the overgroup")]
    NotSubgroup,
    #[error("subgroup is not normal in the overgroup")]
    NotNormal,
    #[error("invalid flag: {0}")]
    InvalidFlag(String),
    #[error("invalid frame: {0}")]
    InvalidFrame(String),
    #[error("empty complex")]
    EmptyComplex,
    #[error("Y is X-cr; no centre needed (X^H is not contractible)")]
    NotContractible,
    #[error("Loewy flags improper: V is a semisimple H-module")]
    LoewyImproper,
    #[error("group contains a non-unipotent element")]
    NotUnipotent,
    #[error("group is trivial")]
    TrivialGroup,
    #[error("oracle disagreement: {0}")]
    OracleDisagreement(String),
    #[error("verification failure: {0}")]
    Verification(String),
    #[error("catalog error: {0}")]
    Catalog(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
