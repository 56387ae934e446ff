use thiserror::Error;

/// Errors raised by the algebra, group and character layers.
///
/// Variants documented as "assertion-level" signal a broken internal
/// invariant (or a counterexample to a theorem the engine relies on); they
/// must never fire on valid input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero in F_{p}")]
    DivisionByZero { p: u32 },
    #[error("field mismatch: F_{left} vs F_{right}")]
    FieldMismatch { left: u32, right: u32 },
    #[error("unsupported modulus {0} (supported primes: 2, 3, 5, 7)")]
    UnsupportedModulus(u32),
    #[error("invalid cyclotomic conductor {0}")]
    InvalidConductor(u32),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("algebra is not split basic: {0}")]
    NotSplitBasic(String),
    #[error("subspace is not a bimodule over the diagonal subalgebra: {0}")]
    NotBimodule(String),
    #[error("subspace is not contained in the radical")]
    NotInsideRadical,
    #[error("{what} exceeds the configured cap ({size} > {cap})")]
    TooLarge { what: &'static str, size: u64, cap: u64 },
    #[error("spec error in `{field}`: {message}")]
    SpecError { field: String, message: String },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("characters belong to different groups")]
    GroupMismatch,
    #[error("not a subgroup of the given group")]
    NotSubgroup,
    #[error("character does not lie over the given linear character")]
    NotOverTheta,
    #[error("character is not invariant: {0}")]
    NotInvariant(String),
    #[error("precondition failed: {0}")]
    PreconditionFailure(String),
    #[error("character table lift failed: {0}")]
    LiftFailure(String),
    #[error("Clifford correspondence failed: {0}")]
    CliffordFailure(String),
    #[error("certification failed: {0}")]
    CertificationFailure(String),
    #[error("no extension of the character exists: {0}")]
    NoExtension(String),
    #[error("decomposition failed: {0}")]
    DecompositionFailure(String),
    #[error("verification failed: {0}")]
    VerificationFailure(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
