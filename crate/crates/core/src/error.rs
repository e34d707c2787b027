use thiserror::Error;

/// Errors raised by constructors and operations.
///
/// Axiom and proposition failures are *not* errors: they are reported as
/// verdicts carrying witnesses. Errors here mean malformed input or a
/// violated internal invariant.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LcrError {
    #[error("cyclic factor must be at least 1, got {0}")]
    InvalidFactor(usize),
    #[error("structural error: {0}")]
    Structural(String),
    #[error("element {0} is out of range for a carrier of order {1}")]
    OutOfRange(usize, usize),
    #[error("element {0} is not a bar-unit")]
    NotBarUnit(usize),
    #[error("element {0} is not in the additive halo")]
    NotInHalo(usize),
    #[error("the given set is not an ideal")]
    NotIdeal,
    #[error("the ideal must be proper")]
    ImproperIdeal,
    #[error("the ideal belongs to a different rng")]
    ForeignIdeal,
    #[error("no element acts as a left identity")]
    NoLeftIdentity,
    #[error("domain or codomain mismatch: {0}")]
    Mismatch(String),
    #[error("carrier order {order} exceeds the supported bound {bound}")]
    OrderTooLarge { order: usize, bound: usize },
    #[error("not a ring homomorphism: {0}")]
    NotRingHom(String),
    #[error("ring axiom violated: {0}")]
    RingAxiom(String),
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
}

pub type Result<T, E = LcrError> = std::result::Result<T, E>;
