use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("modulus is reducible over GF({p})")]
    ReducibleModulus { p: u32 },
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    SpecMismatch,
    #[error("element {0} is not a square")]
    NotASquare(u32),
    #[error("element {value} out of range for GF({q})")]
    ElementOutOfRange { value: u32, q: u32 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("group order exceeds cap {cap}")]
    OrderExceedsCap { cap: usize },
    #[error("induced degree {degree} exceeds limit {limit}")]
    DegreeTooLarge { degree: usize, limit: usize },
    #[error("H is not a subgroup of G")]
    NotASubgroup,
    #[error("index {index} exceeds limit {limit}")]
    IndexTooLarge { index: usize, limit: usize },
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },

    #[error("blocks do not all have the same size")]
    NonConstantBlockSize,
    #[error("replication number is not constant (not a 1-design)")]
    NotOneDesign,
    #[error("design needs at least {needed} blocks")]
    TooFewBlocks { needed: usize },
    #[error("chosen orbits cover every point")]
    DeltaIsOmega,
    #[error("no orbits chosen")]
    DeltaEmpty,
    #[error("group is not transitive")]
    NotTransitive,
    #[error("{orbits} stabilizer orbits exceed the search limit of {limit}")]
    TooManyOrbitCombinations { orbits: usize, limit: usize },

    #[error("group does not preserve the block multiset")]
    NotAnAutomorphismGroup,
    #[error("orbit matrix entry ({row},{col}) is not well defined")]
    IllDefinedEntry { row: usize, col: usize },
    #[error("counting identity fails for orbits ({s},{t}): {lhs} != {rhs}")]
    CountingIdentity { s: usize, t: usize, lhs: u64, rhs: u64 },
    #[error("bad orbit profile: {0}")]
    BadOrbitProfile(String),
    #[error("block orbits have unequal lengths")]
    UnequalBlockOrbitLengths,

    #[error("block intersections are not constant mod {p}")]
    NonConstantProfile { p: u32 },
    #[error("design is not weakly self-orthogonal")]
    NotWso,
    #[error("theorem {tag} does not apply: {reason}")]
    CaseMismatch { tag: String, reason: String },
    #[error("construction {tag} failed: {reason}")]
    ConstructionFailed { tag: String, reason: String },
    #[error("{words} codewords exceed budget {budget}")]
    BudgetExceeded { words: u128, budget: u64 },

    #[error("unknown table id {0:?}")]
    UnknownTable(String),
}
