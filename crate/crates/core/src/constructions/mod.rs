//! Builders for projective-plane graphs, factor-stripped and
//! deletion-vector families, products, covers and the cycle blow-up.

mod bf;
mod factor;
mod families;
mod field;
mod plane;
mod products;

use serde::Serialize;
use thiserror::Error;

use crate::graph::GraphError;

pub use bf::{bf_graph, bf_graph_search, bf_labels, bf_split, HalfBlockSplit};
pub use factor::{factorize, strip_factors, FactorDecomposition};
pub use families::{
    degree_profiles, min_degree_anchor, neighborhood_deletion, spanning_profile_family, target_count, triangle_trim,
    DeletionVector, ProfileMember, ProfileMode, SpanningFamily,
};
pub use field::{prime_power, prime_powers_up_to, FiniteField};
pub use plane::{
    incidence_graph, incidence_labels, polarity_graph, polarity_graph_of, polarity_labels, projective_plane,
    ProjectivePlane,
};
pub use products::{cover_projection, cover_vertex, double_cover, double_cover_labels, lex_product, lex_product_labels};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConstructionError {
    #[error("{0} is not a prime power")]
    NotAPrimePower(u64),
    #[error("not factorizable: {0}")]
    NotFactorizable(String),
    #[error("factor index {index} out of range (max {max})")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("deletion vector out of range: {0}")]
    VectorOutOfRange(String),
    #[error("graph contains a 4-cycle")]
    NotC4Free,
    #[error("mode hypothesis violated: {0}")]
    ModeHypothesisViolated(String),
    #[error("profile degree d = {d} is below 1")]
    DegenerateDegree { d: isize },
    #[error("vector has length {found}, expected {expected}")]
    BadVectorLength { expected: usize, found: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("order {0} is even; an odd prime power is required")]
    EvenOrder(u64),
    #[error("cycle length {0} is below 3")]
    CycleTooShort(usize),
    #[error("split seed {seed} gives a disconnected graph")]
    DisconnectedSplit { seed: u64 },
    #[error("split seed {seed} gives diameter {found}, expected {expected}")]
    DiameterMismatch { seed: u64, expected: usize, found: String },
    #[error("no split seed in {first}..{end} satisfies every structural check")]
    NoValidSplit { first: u64, end: u64 },
    #[error("internal check failed: {0}")]
    Internal(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Human-readable meaning of a constructed vertex index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum VertexLabel {
    Point { coords: [u32; 3] },
    Line { coords: [u32; 3] },
    Pair { g: usize, h: usize },
    Sheet { v: usize, sheet: u8 },
    CycleBlock { u: usize, line: usize },
    CycleEdgePoint { edge: usize, point: usize },
}
