use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported Dynkin type `{0}`")]
    UnsupportedType(String),
    #[error("node {node} out of range for {dynkin}")]
    NodeOutOfRange { dynkin: String, node: usize },
    #[error("{0:?} is not a root")]
    NotARoot(Vec<i64>),
    #[error("node {node} of {dynkin} is not cominuscule: m_k(rho) = {coefficient}")]
    NotCominuscule {
        dynkin: String,
        node: usize,
        coefficient: i64,
    },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("index {0} out of range")]
    IndexOutOfRange(i64),
    #[error("invalid isotropic context: N = {n}, k = {k} (need 2 <= k <= N - 1)")]
    InvalidContext { n: usize, k: usize },
    #[error("triplet {0} does not label an orbit in this context")]
    InvalidTriplet(String),
    #[error("no degeneration witness from {lower} to {upper}")]
    NoWitness { lower: String, upper: String },
    #[error("no exterior-algebra model for {0}")]
    NoVectorModel(String),
    #[error("matrix is singular")]
    Singular,
    #[error("sigma is not symmetric")]
    NotSymmetric,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
