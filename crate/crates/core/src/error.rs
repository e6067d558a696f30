use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a supported prime modulus")]
    NotPrime(u32),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("objects live over different quivers or fields")]
    QuiverMismatch,
    #[error("endpoint mismatch: {0}")]
    EndpointMismatch(String),
    #[error("not a conflation: {0}")]
    InvalidConflation(String),
    #[error("middle objects differ: {0}")]
    MiddleObjectMismatch(String),
    #[error("square does not commute")]
    SquareNotCommutative,
    #[error("Ext obstruction: the required Ext space has dimension {dim}, expected 0")]
    ExtObstruction { dim: usize },
    #[error("Ext space is zero; there is no universal extension")]
    ZeroExt,
    #[error("chain mismatch: {0}")]
    ChainMismatch(String),
    #[error("theta family violates the ordering condition: Ext(Θ({later}), Θ({earlier})) has dimension {dim}")]
    ThetaOrdering { later: usize, earlier: usize, dim: usize },
    #[error("invalid theta family: {0}")]
    InvalidTheta(String),
    #[error("invalid filtration: {0}")]
    InvalidFiltration(String),
    #[error("search bound exceeded: space of {size} elements is above the exhaustive bound {bound} and randomized search was inconclusive")]
    SearchBoundExceeded { size: String, bound: u64 },
    #[error("budget exceeded: more than {budget} search steps required")]
    BudgetExceeded { budget: u64 },
    #[error("internal invariant violated: {0}")]
    InvariantViolated(String),
}
