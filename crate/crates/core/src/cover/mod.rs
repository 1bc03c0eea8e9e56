//! Hypergraph blocking sets (exact, fractional, greedy) and the cop-number
//! upper bounds built on them.

mod blocking;
mod dlc;
mod domination;
mod lp;

use std::io::{self, BufRead, Write};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use blocking::{blocking_exact, blocking_greedy, greedy_report, GreedyReport, DEFAULT_EXACT_LIMIT};
pub use dlc::{dlc_cover_bound, dlc_enumerate, Dlc, DlcSet};
pub use domination::{
    bucket_fractional, domination_bound, domination_certificate, open_neighborhood_hypergraph, Bucket, BucketReport,
    DominationReport,
};
pub use lp::{blocking_lp, FractionalSolution};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CoverError {
    #[error("edge {0} is empty")]
    EmptyEdge(usize),
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("search exceeded its budget: {0}")]
    BudgetExceeded(String),
    #[error("vertex {0} is isolated")]
    IsolatedVertex(usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is not regular")]
    NotRegular,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Vec<usize>>,
    incidence: Vec<Vec<usize>>,
}

impl Hypergraph {
    /// Edges are sorted and deduplicated internally; each must be nonempty.
    pub fn new(n: usize, edges: Vec<Vec<usize>>) -> Result<Self, CoverError> {
        let mut incidence = vec![Vec::new(); n];
        let mut clean = Vec::with_capacity(edges.len());
        for (i, mut e) in edges.into_iter().enumerate() {
            e.sort_unstable();
            e.dedup();
            if e.is_empty() {
                return Err(CoverError::EmptyEdge(i));
            }
            if let Some(&v) = e.iter().find(|&&v| v >= n) {
                return Err(CoverError::VertexOutOfRange { vertex: v, n });
            }
            for &v in &e {
                incidence[v].push(i);
            }
            clean.push(e);
        }
        Ok(Hypergraph { n, edges: clean, incidence })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    /// Indices of the edges containing `v`.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.incidence.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_blocking(&self, set: &[usize]) -> bool {
        let mut inside = vec![false; self.n];
        for &v in set {
            inside[v] = true;
        }
        self.edges.iter().all(|e| e.iter().any(|&v| inside[v]))
    }
}

/// Reads the `n e` header followed by `e` lines of vertex indices.
pub fn read_hypergraph<R: BufRead>(reader: R) -> Result<Hypergraph, CoverError> {
    let mut lines = reader.lines().enumerate();
    let parse_err = |line: usize, msg: &str| CoverError::Parse { line, msg: msg.to_string() };
    let (n, e) = loop {
        let Some((i, line)) = lines.next() else {
            return Err(parse_err(1, "missing header"));
        };
        let line = line.map_err(|err| parse_err(i + 1, &err.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        let nums: Vec<usize> = line.split_whitespace().map(str::parse).collect::<Result<_, _>>().map_err(|_| parse_err(i + 1, "bad header"))?;
        match nums[..] {
            [n, e] => break (n, e),
            _ => return Err(parse_err(i + 1, "header must be `n e`")),
        }
    };
    let mut edges = Vec::with_capacity(e);
    for (i, line) in lines.take(e) {
        let line = line.map_err(|err| parse_err(i + 1, &err.to_string()))?;
        let edge = line.split_whitespace().map(str::parse).collect::<Result<Vec<usize>, _>>().map_err(|_| parse_err(i + 1, "bad vertex"))?;
        edges.push(edge);
    }
    if edges.len() != e {
        return Err(parse_err(edges.len() + 2, &format!("expected {e} edges, found {}", edges.len())));
    }
    Hypergraph::new(n, edges)
}

pub fn write_hypergraph<W: Write>(h: &Hypergraph, mut w: W) -> io::Result<()> {
    writeln!(w, "{} {}", h.n, h.edges.len())?;
    for e in &h.edges {
        let row: Vec<String> = e.iter().map(usize::to_string).collect();
        writeln!(w, "{}", row.join(" "))?;
    }
    Ok(())
}

/// Exact test of `lhs <= 1 + log2(d)`, via `2^p <= d^q` for `lhs - 1 = p/q`.
pub fn within_log_factor(lhs: &BigRational, d: u64) -> bool {
    let r = lhs - BigRational::one();
    if !r.is_positive() {
        return true;
    }
    if d == 0 {
        return false;
    }
    let (p, q) = (r.numer().to_u32(), r.denom().to_u32());
    match (p, q) {
        (Some(p), Some(q)) => BigUint::from(2u32).pow(p) <= BigUint::from(d).pow(q),
        // astronomically large exponents: fall back to floating point
        _ => r.to_f64().unwrap_or(f64::INFINITY) <= (d as f64).log2(),
    }
}

/// `size <= (1 + log2 d) * tau` evaluated exactly; `tau = 0` allows only 0.
pub fn greedy_guarantee_holds(size: usize, tau: &BigRational, d: u64) -> bool {
    if tau.is_zero() {
        return size == 0;
    }
    within_log_factor(&(BigRational::from_integer(size.into()) / tau), d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let h = read_hypergraph("3 2\n0 1\n2 1 2\n".as_bytes()).unwrap();
        assert_eq!(h.edges(), &[vec![0, 1], vec![1, 2]]);
        assert_eq!(h.max_degree(), 2);
        let mut out = Vec::new();
        write_hypergraph(&h, &mut out).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "3 2\n0 1\n1 2\n");
        assert_eq!(read_hypergraph("2 1\n\n".as_bytes()), Err(CoverError::EmptyEdge(0)));
        assert!(matches!(read_hypergraph("2 1\n0 5\n".as_bytes()), Err(CoverError::VertexOutOfRange { .. })));
        assert!(matches!(read_hypergraph("2 2\n0\n".as_bytes()), Err(CoverError::Parse { .. })));
    }

    #[test]
    fn exact_log_comparison() {
        let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        assert!(within_log_factor(&r(1, 1), 1));
        assert!(!within_log_factor(&r(3, 2), 1));
        assert!(within_log_factor(&r(2, 1), 2));
        assert!(!within_log_factor(&r(201, 100), 2));
        // 1 + log2 3 = 2.58496...
        assert!(within_log_factor(&r(258, 100), 3));
        assert!(!within_log_factor(&r(259, 100), 3));
        assert!(greedy_guarantee_holds(0, &r(0, 1), 0));
        assert!(!greedy_guarantee_holds(1, &r(0, 1), 3));
    }
}
