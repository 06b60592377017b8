use thiserror::Error;

/// Errors shared by all modules of the crate.
///
/// Variants that correspond to violated preconditions (wild actions,
/// non-saturated bases, malformed input) are distinguished from internal
/// invariant failures so the CLI can map them to different exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("{q} is not a power of the prime {p}")]
    NotPowerOfPrime { q: u64, p: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("wild action: p = {p} divides the group order {order}")]
    WildAction { p: u64, order: u64 },
    #[error("action is not faithful: weights do not generate the character group")]
    NotFaithful,
    #[error("action is not small: it contains a pseudo-reflection")]
    NotSmall,
    #[error("expected a cyclic action of the form 1/n(1,a) with gcd(a,n) = 1")]
    NotCyclic,
    #[error("semigroup is not saturated; rank-2 Hom computations require a normal base")]
    NotSaturated,
    #[error("semigroup generators must span a pointed cone")]
    NotPointed,
    #[error("stability parameter theta must sum to zero")]
    ThetaSumNonzero,
    #[error("invalid G-graph: {0}")]
    InvalidGraph(String),
    #[error("invalid constellation: {0}")]
    InvalidConstellation(String),
    #[error("graph cone has empty interior")]
    EmptyConeInterior,
    #[error("fan invariant violated: {0}")]
    FanInvariant(String),
    #[error("no lattice isomorphism between the two fan lattices")]
    LatticeMismatch,
    #[error("exhaustive check refused: p^dim = {size} exceeds the bound {bound}")]
    DimensionTooLarge { size: u128, bound: u128 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// True for violated preconditions on user input, as opposed to internal
    /// invariant failures.
    pub fn is_precondition(&self) -> bool {
        !matches!(self, Error::FanInvariant(_))
    }
}
