use thiserror::Error;

/// Errors surfaced by the decision engine and its supporting structures.
#[derive(Debug, Error)]
pub enum Error {
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("edge endpoint {0} is not a declared vertex")]
    UnknownVertex(usize),
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph is not 2-connected")]
    NotTwoConnected,
    #[error("graph is not planar")]
    NonPlanar,
    #[error("cluster {0:?} does not induce a connected subgraph")]
    NotCConnected(String),
    #[error("clustered graph is not c-co-connected: {0}")]
    NotCoConnected(String),
    #[error("partitions are over different ground sets")]
    MismatchedGroundSets,
    #[error("enumeration budget exceeded: {needed} rotation systems > budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("matrix has {0} columns; naive search handles at most 9")]
    TooManyColumns(usize),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    #[error("generator gave up after {0} rejection rounds")]
    GeneratorExhausted(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
