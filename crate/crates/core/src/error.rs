use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong, grouped by the process exit code the CLI
/// maps it to (see [`Error::exit_code`]).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // -- input errors (exit 2)
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid JSON input: {0}")]
    Json(String),
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("self-loop at vertex `{0}`")]
    SelfLoop(String),
    #[error("duplicate edge `{0}`-`{1}`")]
    DuplicateEdge(String, String),
    #[error("vertex `{id}` has weight {weight}, weights must be <= -1")]
    NonNegativeWeight { id: String, weight: i64 },
    #[error("vertex `{id}` has negative genus {genus}")]
    NegativeGenus { id: String, genus: i64 },
    #[error("edge references unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("graph is not connected")]
    Disconnected,
    #[error("invalid arm {n}/{q}: need 0 < q < n and gcd(n, q) = 1")]
    InvalidArm { n: i64, q: i64 },
    #[error("invalid Seifert data: {0}")]
    InvalidSeifert(String),
    #[error("invalid quotient data: {0}")]
    InvalidQuotient(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    // -- precondition violations (exit 3)
    #[error("intersection form is not negative definite")]
    NotNegativeDefinite,
    #[error("singularity is not rational")]
    NotRational,
    #[error("graph is not a minimal resolution (has a rational -1 curve)")]
    NotMinimal,
    #[error("graph is not a minimal good resolution")]
    NotMinimalGood,
    #[error("graph is a rational double point")]
    RationalDoublePoint,
    #[error("round-up [L] is not effective")]
    NotEffective,
    #[error("graph is not star-shaped with chain arms: {0}")]
    NotStarShaped(String),
    #[error("h1(-(K+E)) must be supplied for non-rational input")]
    MissingOverride,
    #[error("supplied h1(-(K+E)) = {supplied} contradicts computed value {computed}")]
    OverrideMismatch { supplied: u64, computed: u64 },
    #[error("no starting curve with 2g-2+d > 0")]
    NoStartingVertex,
    #[error("sequence stuck after {0} curves")]
    SequenceStuck(usize),
    #[error("central genus {0} > 0: value not determined by degree data")]
    NotDetermined(u32),
    #[error("operation requires central genus 0 (got {0})")]
    PositiveGenus(u32),

    // -- internal identity failures (exit 4)
    #[error("{what}: iteration cap {cap} exceeded")]
    IterationCap { what: &'static str, cap: u64 },
    #[error("identity failed: {0}")]
    Identity(String),
}

impl Error {
    /// Process exit code: 2 input error, 3 precondition violation,
    /// 4 internal identity failure.
    pub fn exit_code(&self) -> i32 {
        use Error::*;
        match self {
            Parse { .. }
            | Json(_)
            | EmptyGraph
            | DuplicateVertex(_)
            | SelfLoop(_)
            | DuplicateEdge(..)
            | NonNegativeWeight { .. }
            | NegativeGenus { .. }
            | UnknownVertex(_)
            | Disconnected
            | InvalidArm { .. }
            | InvalidSeifert(_)
            | InvalidQuotient(_)
            | InvalidArgument(_) => 2,
            NotNegativeDefinite
            | NotRational
            | NotMinimal
            | NotMinimalGood
            | RationalDoublePoint
            | NotEffective
            | NotStarShaped(_)
            | MissingOverride
            | OverrideMismatch { .. }
            | NoStartingVertex
            | SequenceStuck(_)
            | NotDetermined(_)
            | PositiveGenus(_) => 3,
            IterationCap { .. } | Identity(_) => 4,
        }
    }
}
