//! Profile counting and family sweeps through the certificates.

mod sweep;

use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

use crate::constructions::degree_profiles;
use crate::graph::{are_isomorphic, Graph, GraphError, Vertex, DEFAULT_ORBIT_LIMIT};

pub use sweep::{sweep, CertChoice, Family, SweepResult, SweepRow, SweepSpec};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FamilyError {
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("{needed} profiles exceed the limit {limit}")]
    BudgetExceeded { needed: String, limit: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("io: {0}")]
    Io(String),
}

/// `C(n, k)` exactly.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut c = BigUint::from(1u32);
    for i in 0..k {
        c = c * (n - i) / (i + 1);
    }
    c
}

/// `H(x) = -x log2 x - (1-x) log2 (1-x)`, with `H(0) = H(1) = 0`.
pub fn binary_entropy(x: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        return 0.0;
    }
    -x * x.log2() - (1.0 - x) * (1.0 - x).log2()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CountReport {
    pub a: u64,
    pub d: u64,
    /// `C(a+d-1, d-1)`, as a decimal string.
    #[serde(serialize_with = "ser_big")]
    pub exact_count: BigUint,
    /// `(d-1)/(a+d-1)`.
    pub beta: f64,
    pub entropy: f64,
    /// `2^((a+d-1) H(beta))`; asymptotic only.
    pub entropy_estimate: f64,
}

fn ser_big<S: serde::Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_str_radix(10))
}

pub fn profile_count(a: u64, d: u64) -> Result<CountReport, FamilyError> {
    if a == 0 || d == 0 {
        return Err(FamilyError::InvalidParameter(format!("a = {a} and d = {d} must be positive")));
    }
    let total = a + d - 1;
    let beta = (d - 1) as f64 / total as f64;
    let entropy = binary_entropy(beta);
    Ok(CountReport { a, d, exact_count: binomial(total, d - 1), beta, entropy, entropy_estimate: (total as f64 * entropy).exp2() })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CountVerification {
    pub a: usize,
    pub d: usize,
    /// Spanning subgraphs built, one per profile.
    pub generated: usize,
    /// Isomorphism classes among them.
    pub distinct: usize,
    #[serde(serialize_with = "ser_big")]
    pub required: BigUint,
    pub holds: bool,
}

/// Builds one spanning subgraph of `j` per profile (target `side_a[i]` loses
/// its `x_i` lowest-index edges, `x_i < d`), counts isomorphism classes and
/// compares with `C(a+d-1, d-1)`. `limit` caps the number of profiles.
pub fn verify_count_lower_bound(j: &Graph, side_a: &[Vertex], d: usize, limit: usize) -> Result<CountVerification, FamilyError> {
    let a = side_a.len();
    let bad = |m: String| Err(FamilyError::HypothesisViolated(m));
    if !j.is_bipartite() {
        return bad("graph is not bipartite".into());
    }
    if d == 0 || d > a {
        return bad(format!("need 1 <= d <= a, got d = {d}, a = {a}"));
    }
    if let Some(&v) = side_a.iter().find(|&&v| v >= j.order() || j.degree(v) < d) {
        return bad(format!("vertex {v} is missing or has degree below {d}"));
    }
    for (i, &u) in side_a.iter().enumerate() {
        for &v in &side_a[i + 1..] {
            if u == v || j.common_neighbor_count(u, v) > 0 {
                return bad(format!("vertices {u} and {v} share a neighbour"));
            }
        }
    }
    let required = binomial((a + d - 1) as u64, (d - 1) as u64);
    if required > BigUint::from(limit) {
        return Err(FamilyError::BudgetExceeded { needed: required.to_string(), limit });
    }
    let members: Vec<Graph> = degree_profiles(a, d)
        .map(|x| {
            let removed = side_a.iter().zip(&x).flat_map(|(&v, &k)| j.neighbors(v)[..k].iter().map(move |&w| (v, w)));
            j.without_edges(removed)
        })
        .collect();
    // class representatives; degree multisets separate most pairs cheaply
    let mut reps: Vec<(Vec<usize>, &Graph)> = Vec::new();
    for g in &members {
        let ms = g.degree_multiset();
        let mut new = true;
        for (rms, r) in &reps {
            if *rms == ms && are_isomorphic(g, r, DEFAULT_ORBIT_LIMIT.max(j.order()))? {
                new = false;
                break;
            }
        }
        if new {
            reps.push((ms, g));
        }
    }
    let distinct = reps.len();
    Ok(CountVerification { a, d, generated: members.len(), distinct, holds: BigUint::from(distinct) >= required, required })
}

/// `a` disjoint stars with `d` leaves each; centres are `0..a`.
pub fn star_forest(a: usize, d: usize) -> Graph {
    let edges = (0..a).flat_map(|c| (0..d).map(move |l| (c, a + c * d + l)));
    Graph::from_edges(a + a * d, edges).expect("star edges are distinct")
}
