//! Constructions, cop-number certificates, an exact cops-and-robbers solver
//! and hypergraph covering bounds for graphs of large cop number.

pub mod certify;
pub mod constructions;
pub mod cover;
pub mod familylab;
pub mod game;
pub mod graph;

pub use num_rational::BigRational;
pub use certify::{BoundCertificate, CertKind, FamilyAudit, Rational};
pub use constructions::{ProjectivePlane, VertexLabel};
pub use cover::{FractionalSolution, Hypergraph};
pub use game::{Outcome, Trace, WinTable};
pub use graph::{CycleCensus, Extent, Graph, Metrics, Vertex};
