use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid field model: {0}")]
    InvalidModel(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("element has negative valuation {0}")]
    NegativeValuation(i64),
    #[error("precision {requested} exceeds available precision {available}")]
    PrecisionExceeded { requested: u32, available: u32 },
    #[error("no ring isomorphism between the residue rings: {0}")]
    IncompatiblePair(String),
    #[error("cocharacter {0} is not dominant")]
    NotDominant(String),
    #[error("cocharacter {0} does not sum to zero")]
    SlTraceNonzero(String),
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not in the determinant-one group")]
    DeterminantNotOne,
    #[error("enumeration of {needed} elements exceeds the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("element is not in K = G(o)")]
    NotInK,
    #[error("residue matrix does not have unit determinant")]
    NonUnitDet,
    #[error("coefficient rings differ: {0} vs {1}")]
    MixedRings(String, String),
    #[error("coefficient {0} does not lie in ring {1}")]
    NotInRing(String, String),
    #[error("insufficient closeness: need precision {needed}, have {available}")]
    InsufficientCloseness { needed: u32, available: u32 },
    #[error("lattice basis is singular")]
    SingularBasis,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("operands belong to different field models")]
    FieldMismatch,
    #[error("unsupported: {0}")]
    Unsupported(String),
}
