use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use serde::Serialize;
use serde_json::json;

use super::{blocking_greedy, greedy_guarantee_holds, CoverError, Hypergraph};
use crate::certify::{BoundCertificate, CertKind};
use crate::graph::{Graph, Vertex};

/// Hypergraph on `V(G)` with one edge `N(w)` per vertex `w`; its blocking
/// sets are exactly the total dominating sets.
pub fn open_neighborhood_hypergraph(g: &Graph) -> Result<Hypergraph, CoverError> {
    if let Some(v) = g.vertices().find(|&v| g.degree(v) == 0) {
        return Err(CoverError::IsolatedVertex(v));
    }
    Hypergraph::new(g.order(), g.vertices().map(|w| g.neighbors(w).to_vec()).collect())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DominationReport {
    pub set: Vec<Vertex>,
    pub order: usize,
    pub min_degree: usize,
    pub max_degree: usize,
    /// `(n / δ) (1 + log2 Δ)`, for display.
    pub bound: f64,
    /// `|set| <= (n / δ)(1 + log2 Δ)`, decided exactly.
    pub holds: bool,
    /// Objective `n / δ` of the uniform fractional solution `x_v = 1/δ`.
    pub fractional_objective: Ratio<i64>,
    pub totally_dominating: bool,
}

fn is_totally_dominating(g: &Graph, set: &[Vertex]) -> bool {
    let mut inside = vec![false; g.order()];
    for &v in set {
        inside[v] = true;
    }
    g.vertices().all(|v| g.neighbors(v).iter().any(|&w| inside[w]))
}

/// Greedy total dominating set with the logarithmic size guarantee.
pub fn domination_bound(g: &Graph) -> Result<DominationReport, CoverError> {
    let h = open_neighborhood_hypergraph(g)?;
    let mut set = blocking_greedy(&h);
    set.sort_unstable();
    let (n, dmin, dmax) = (g.order(), g.min_degree(), g.max_degree());
    let fractional = Ratio::new(n as i64, dmin as i64);
    let tau = BigRational::new(BigInt::from(n), BigInt::from(dmin));
    Ok(DominationReport {
        holds: greedy_guarantee_holds(set.len(), &tau, dmax as u64),
        bound: n as f64 / dmin as f64 * (1.0 + (dmax as f64).log2()),
        totally_dominating: is_totally_dominating(g, &set),
        order: n,
        min_degree: dmin,
        max_degree: dmax,
        fractional_objective: fractional,
        set,
    })
}

/// Cops on a dominating set capture on their first move.
pub fn domination_certificate(g: &Graph) -> Result<BoundCertificate, CoverError> {
    let r = domination_bound(g)?;
    Ok(BoundCertificate {
        kind: CertKind::HyperUpper,
        params: BTreeMap::from([("n".into(), r.order as i64), ("delta".into(), r.min_degree as i64)]),
        bound: Ratio::from_integer(r.set.len() as i64),
        witness: json!({ "set": r.set, "guarantee": r.bound, "holds": r.holds }),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Bucket {
    pub index: usize,
    /// Degrees in `(lo, hi]`; bucket 0 also holds degree 1 and below.
    pub lo: u64,
    pub hi: u64,
    pub vertices: usize,
    #[serde(serialize_with = "ser_ratio")]
    pub weight: BigRational,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BucketReport {
    #[serde(serialize_with = "ser_ratios")]
    pub weights: Vec<BigRational>,
    #[serde(serialize_with = "ser_ratio")]
    pub objective: BigRational,
    pub buckets: Vec<Bucket>,
    /// Every open neighbourhood has weight at least 1.
    pub feasible: bool,
}

fn ser_ratio<S: serde::Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn ser_ratios<S: serde::Serializer>(x: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(x.iter().map(|v| v.to_string()))
}

/// `x_v = 1 / s(v)` with `s(v)` the least degree in `N(v)`, plus the
/// decomposition of `V` by degree into powers of `omega`.
pub fn bucket_fractional(g: &Graph, omega: u64) -> Result<BucketReport, CoverError> {
    if omega < 2 {
        return Err(CoverError::InvalidParameter(format!("omega = {omega} must be at least 2")));
    }
    let h = open_neighborhood_hypergraph(g)?;
    let weights: Vec<BigRational> = g
        .vertices()
        .map(|v| {
            let s = g.neighbors(v).iter().map(|&w| g.degree(w)).min().unwrap();
            BigRational::new(BigInt::from(1), BigInt::from(s))
        })
        .collect();
    let one = BigRational::from_integer(BigInt::from(1));
    let feasible = h.edges().iter().all(|e| e.iter().map(|&v| &weights[v]).sum::<BigRational>() >= one);
    let mut buckets: Vec<Bucket> = Vec::new();
    for v in g.vertices() {
        let d = g.degree(v) as u64;
        let (mut i, mut hi) = (0, omega);
        while d > hi {
            i += 1;
            hi = hi.saturating_mul(omega);
        }
        while buckets.len() <= i {
            let j = buckets.len() as u32;
            let lo = if j == 0 { 1 } else { omega.saturating_pow(j) };
            let zero = BigRational::from_integer(0.into());
            buckets.push(Bucket { index: j as usize, lo, hi: omega.saturating_pow(j + 1), vertices: 0, weight: zero });
        }
        buckets[i].vertices += 1;
        buckets[i].weight += &weights[v];
    }
    let objective = weights.iter().sum();
    Ok(BucketReport { weights, objective, buckets, feasible })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{incidence_graph, projective_plane};

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn domination_examples() {
        let k4 = domination_bound(&Graph::complete(4)).unwrap();
        assert!(k4.set.len() <= 2 && k4.totally_dominating && k4.holds);
        let c6 = domination_bound(&Graph::cycle(6)).unwrap();
        assert!(c6.set.len() <= 4 && c6.set.len() >= 4 && c6.totally_dominating && c6.holds);
        let star = domination_bound(&Graph::star(5)).unwrap();
        assert_eq!(star.set, vec![0, 1]);
        assert!(star.holds);
        assert_eq!(domination_bound(&Graph::empty(2)), Err(CoverError::IsolatedVertex(0)));
        let cert = domination_certificate(&Graph::petersen()).unwrap();
        assert_eq!(crate::certify::verify(&cert, &Graph::petersen()), Ok(()));
    }

    #[test]
    fn bucket_examples() {
        let reg = bucket_fractional(&Graph::petersen(), 2).unwrap();
        assert_eq!(reg.objective, r(10, 3));
        let star = bucket_fractional(&Graph::star(5), 2).unwrap();
        assert_eq!(star.objective, r(2, 1));
        assert!(star.feasible);
        assert_eq!(star.buckets.iter().map(|b| b.vertices).collect::<Vec<_>>(), vec![5, 0, 1]);
        let g = incidence_graph(&projective_plane(2).unwrap()).with_pendant(&[0]);
        assert!(bucket_fractional(&g, 2).unwrap().feasible);
        assert!(bucket_fractional(&g, 1).is_err());
    }
}
