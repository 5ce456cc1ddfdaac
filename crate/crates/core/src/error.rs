use thiserror::Error;

use crate::bitset::EdgeSet;
use crate::bracelets::Bracelet;
use crate::tripartition::{ProperViolation, Side};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("edge index {edge} out of range for a graph with {edge_count} edges")]
    InvalidEdge { edge: usize, edge_count: usize },
    #[error("more than {limit} cycles; raise the cycle limit to continue")]
    CycleLimitExceeded { limit: usize },
    #[error("edge set {0:?} is not a cycle of the graph")]
    NotACycle(EdgeSet),
    #[error("cycle classes do not partition the cycles: {0}")]
    NotAPartition(String),
    #[error("balanced cycles violate the theta property: {0}")]
    ThetaViolation(Box<crate::bias::ThetaWitness>),
    #[error("improper tripartition: {0}")]
    ImproperTripartition(ProperViolation),
    #[error("improper bracelet function: {first:?} and {second:?} lie in one bracelet-graph component but differ")]
    ImproperChi { first: Bracelet, second: Bracelet },
    #[error("bracelet function is not total: missing {0:?}")]
    BraceletFunctionNotTotal(Bracelet),
    #[error("pair {0:?} is not a bracelet of the biased graph")]
    NotABracelet((EdgeSet, EdgeSet)),
    #[error("graph is disconnected")]
    DisconnectedGraph,
    #[error("biased graph is balanced")]
    GraphBalanced,
    #[error("search exceeded the size cap of {cap}")]
    SearchCapExceeded { cap: usize },
    #[error("ground set of size {size} exceeds the cap of {cap}")]
    GroundSetTooLarge { size: usize, cap: usize },
    #[error("side {0} of the tripartition is degenerate")]
    DegenerateTripartition(Side),
    #[error("edge {edge} is a loop and cannot be contracted in the graph")]
    LoopContraction { edge: usize },
    #[error("deletion and contraction sets overlap")]
    OverlappingMinorSets,
    #[error("basepoint {edge} is not a link")]
    BasepointNotLink { edge: usize },
    #[error("basepoint {edge} is not an unbalanced loop")]
    BasepointNotUnbalancedLoop { edge: usize },
    #[error("more than one satellite attached at vertex {vertex}")]
    SatelliteCollision { vertex: usize },
    #[error("edges {0:?} do not form a 4-cycle in cyclic order")]
    NotAFourCycle([usize; 4]),
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("malformed input: {0}")]
    Format(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// A stable name for the class of error, used in diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Json(_) | Error::Format(_) => "malformed_input",
            Error::InvalidGraph(_) | Error::InvalidEdge { .. } => "invalid_graph",
            Error::CycleLimitExceeded { .. } | Error::SearchCapExceeded { .. } | Error::GroundSetTooLarge { .. } => {
                "cap_exceeded"
            }
            Error::NotACycle(_) | Error::NotAPartition(_) => "invalid_partition",
            Error::ThetaViolation(_) => "theta_violation",
            Error::ImproperTripartition(ProperViolation::Meet { .. }) => "meet_violation",
            Error::ImproperTripartition(ProperViolation::Theta(_)) => "theta_violation",
            Error::ImproperChi { .. } => "improper_chi",
            Error::BraceletFunctionNotTotal(_) | Error::NotABracelet(_) => "invalid_chi",
            Error::DisconnectedGraph => "disconnected_graph",
            Error::GraphBalanced => "graph_balanced",
            Error::DegenerateTripartition(_) => "degenerate_tripartition",
            Error::LoopContraction { .. } | Error::OverlappingMinorSets => "invalid_minor",
            Error::BasepointNotLink { .. } | Error::BasepointNotUnbalancedLoop { .. } => "invalid_basepoint",
            Error::SatelliteCollision { .. } | Error::NotAFourCycle(_) | Error::ParameterOutOfRange(_) => {
                "invalid_parameter"
            }
        }
    }
}
