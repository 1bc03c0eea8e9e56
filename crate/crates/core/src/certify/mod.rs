//! Cop-number bound certificates that re-verify from the graph alone, and
//! the family audit of `bound / sqrt(order)` ratios.

mod audit;

use std::collections::BTreeMap;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::game::{k_cops_win, GameError};
use crate::graph::{girth, Extent, Graph, Vertex};

pub use audit::{family_audit, read_audit_rows, AuditRow, FamilyAudit};

pub type Rational = Ratio<i64>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CertifyError {
    #[error("graph is not K_{{2,{t}}}-free")]
    NotK2TFree { t: usize },
    #[error("girth {0} is below 5")]
    GirthTooSmall(Extent),
    #[error("no degree threshold D satisfies D > k and n - k >= ceil(bound)")]
    NoValidThreshold,
    #[error("empty family")]
    EmptyFamily,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("certificate does not verify: {0}")]
    Mismatch(String),
    #[error("audit input: {0}")]
    Input(String),
    #[error(transparent)]
    Game(#[from] GameError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CertKind {
    #[serde(rename = "K2T_LOWER")]
    K2tLower,
    #[serde(rename = "GIRTH5_LOWER")]
    Girth5Lower,
    Exact,
    HyperUpper,
    DlcUpper,
}

impl CertKind {
    pub fn is_lower(self) -> bool {
        matches!(self, CertKind::K2tLower | CertKind::Girth5Lower)
    }
}

/// A bound on `c(G)` with the parameters and evidence needed to recheck it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "CertificateJson", try_from = "CertificateJson")]
pub struct BoundCertificate {
    pub kind: CertKind,
    pub params: BTreeMap<String, i64>,
    pub bound: Rational,
    pub witness: Value,
}

#[derive(Serialize, Deserialize)]
struct CertificateJson {
    kind: CertKind,
    params: BTreeMap<String, i64>,
    bound_num: i64,
    bound_den: i64,
    witness: Value,
}

impl From<BoundCertificate> for CertificateJson {
    fn from(c: BoundCertificate) -> Self {
        CertificateJson { kind: c.kind, params: c.params, bound_num: *c.bound.numer(), bound_den: *c.bound.denom(), witness: c.witness }
    }
}

impl TryFrom<CertificateJson> for BoundCertificate {
    type Error = String;
    fn try_from(c: CertificateJson) -> Result<Self, String> {
        if c.bound_den == 0 {
            return Err("zero denominator".into());
        }
        Ok(BoundCertificate { kind: c.kind, params: c.params, bound: Rational::new(c.bound_num, c.bound_den), witness: c.witness })
    }
}

impl BoundCertificate {
    /// Smallest integer number of cops the bound implies (lower kinds) or
    /// suffices (upper kinds).
    pub fn cops(&self) -> i64 {
        if self.kind.is_lower() { self.bound.ceil().to_integer() } else { self.bound.floor().to_integer() }
    }

    pub fn param(&self, key: &str) -> Option<i64> {
        self.params.get(key).copied()
    }
}

/// Number of vertices of degree below `d`.
fn low_degree_count(g: &Graph, d: usize) -> usize {
    g.vertices().filter(|&v| g.degree(v) < d).count()
}

/// Thresholds worth scanning: each degree value and `max_degree + 1`.
fn candidate_thresholds(g: &Graph) -> Vec<usize> {
    let mut ds = g.degree_multiset();
    ds.dedup();
    ds.push(g.max_degree() + 1);
    ds
}

/// `(D - k) / t` if `D` is a valid threshold.
fn threshold_bound(g: &Graph, d: usize, t: usize) -> Option<(usize, Rational)> {
    let k = low_degree_count(g, d);
    if d <= k {
        return None;
    }
    let bound = Rational::new((d - k) as i64, t as i64);
    (g.order() - k >= bound.ceil().to_integer() as usize).then_some((k, bound))
}

/// Best `(D, k, bound)` over the given thresholds, smallest `D` on ties.
fn best_threshold(g: &Graph, t: usize, d: Option<usize>) -> Result<(usize, usize, Rational), CertifyError> {
    let ds = match d {
        Some(d) => vec![d],
        None => candidate_thresholds(g),
    };
    let mut best: Option<(usize, usize, Rational)> = None;
    for d in ds {
        if let Some((k, b)) = threshold_bound(g, d, t) {
            if best.is_none_or(|(_, _, bb)| b > bb) {
                best = Some((d, k, b));
            }
        }
    }
    best.ok_or(CertifyError::NoValidThreshold)
}

fn max_common_neighbors(g: &Graph) -> usize {
    let mut best = 0;
    for u in g.vertices() {
        for v in u + 1..g.order() {
            best = best.max(g.common_neighbor_count(u, v));
        }
    }
    best
}

fn low_vertices(g: &Graph, d: usize) -> Vec<Vertex> {
    g.vertices().filter(|&v| g.degree(v) < d).collect()
}

/// Lower bound `(D - k)/t` for a `K_{2,t}`-free graph whose `n - k` vertices
/// have degree at least `D`. With `d = None` the best threshold is chosen.
pub fn k2t_certificate(g: &Graph, t: usize, d: Option<usize>) -> Result<BoundCertificate, CertifyError> {
    if t == 0 {
        return Err(CertifyError::InvalidParameter("t must be at least 1".into()));
    }
    if !g.is_k2t_free(t) {
        return Err(CertifyError::NotK2TFree { t });
    }
    let (d, k, bound) = best_threshold(g, t, d)?;
    Ok(BoundCertificate {
        kind: CertKind::K2tLower,
        params: BTreeMap::from([("t".into(), t as i64), ("D".into(), d as i64), ("k".into(), k as i64)]),
        bound,
        witness: json!({
            "order": g.order(),
            "max_common_neighbors": max_common_neighbors(g),
            "low_degree_vertices": low_vertices(g, d),
        }),
    })
}

/// Lower bound `D - k` for a graph of girth at least 5.
pub fn girth5_certificate(g: &Graph, d: Option<usize>) -> Result<BoundCertificate, CertifyError> {
    let gi = girth(g);
    if gi.finite().is_some_and(|x| x < 5) {
        return Err(CertifyError::GirthTooSmall(gi));
    }
    let (d, k, bound) = best_threshold(g, 1, d)?;
    Ok(BoundCertificate {
        kind: CertKind::Girth5Lower,
        params: BTreeMap::from([("D".into(), d as i64), ("k".into(), k as i64)]),
        bound,
        witness: json!({
            "order": g.order(),
            "girth": gi,
            "low_degree_vertices": low_vertices(g, d),
        }),
    })
}

/// Exact cop number record; `verify` re-solves for `c` and `c - 1` cops.
pub fn exact_certificate(g: &Graph, c: usize, budget: u64) -> BoundCertificate {
    BoundCertificate {
        kind: CertKind::Exact,
        params: BTreeMap::from([("c".into(), c as i64), ("budget".into(), budget.min(i64::MAX as u64) as i64)]),
        bound: Rational::from_integer(c as i64),
        witness: json!({ "order": g.order(), "method": "retrograde" }),
    }
}

fn witness_vertices(w: &Value, key: &str, n: usize) -> Result<Vec<Vertex>, CertifyError> {
    let arr = w.get(key).and_then(Value::as_array).ok_or_else(|| CertifyError::Mismatch(format!("witness lacks `{key}`")))?;
    arr.iter()
        .map(|x| x.as_u64().map(|v| v as usize).filter(|&v| v < n))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| CertifyError::Mismatch(format!("`{key}` has a bad vertex")))
}

fn need(cert: &BoundCertificate, key: &str) -> Result<usize, CertifyError> {
    cert.param(key)
        .filter(|&x| x >= 0)
        .map(|x| x as usize)
        .ok_or_else(|| CertifyError::Mismatch(format!("missing parameter `{key}`")))
}

/// Rechecks a certificate against `g` using only its kind, parameters and
/// witness.
pub fn verify(cert: &BoundCertificate, g: &Graph) -> Result<(), CertifyError> {
    let mismatch = |what: &str| Err(CertifyError::Mismatch(what.to_string()));
    match cert.kind {
        CertKind::K2tLower | CertKind::Girth5Lower => {
            let d = need(cert, "D")?;
            let redo = if cert.kind == CertKind::K2tLower {
                k2t_certificate(g, need(cert, "t")?, Some(d))?
            } else {
                girth5_certificate(g, Some(d))?
            };
            if redo.param("k") != cert.param("k") || redo.bound != cert.bound {
                return mismatch("threshold arithmetic differs");
            }
        }
        CertKind::Exact => {
            let c = need(cert, "c")?;
            let budget = need(cert, "budget")? as u64;
            if cert.bound != Rational::from_integer(c as i64) {
                return mismatch("bound differs from c");
            }
            if !k_cops_win(g, c, budget)? || (c > 1 && k_cops_win(g, c - 1, budget)?) {
                return mismatch("solver disagrees with c");
            }
        }
        CertKind::HyperUpper => {
            let set = witness_vertices(&cert.witness, "set", g.order())?;
            let covered = g.vertices().all(|v| g.neighbors(v).iter().any(|w| set.contains(w)));
            if !covered {
                return mismatch("witness set is not totally dominating");
            }
            if cert.bound != Rational::from_integer(set.len() as i64) {
                return mismatch("bound differs from witness size");
            }
        }
        CertKind::DlcUpper => {
            let chosen = cert.witness.get("chosen").and_then(Value::as_array).ok_or_else(|| CertifyError::Mismatch("witness lacks `chosen`".into()))?;
            let mut hit = vec![false; g.order()];
            for dlc in chosen {
                for v in witness_vertices(dlc, "members", g.order())? {
                    hit[v] = true;
                }
            }
            if hit.iter().any(|&h| !h) {
                return mismatch("chosen caterpillars miss a vertex");
            }
            if cert.bound != Rational::from_integer(5 * chosen.len() as i64) {
                return mismatch("bound differs from 5 * chosen");
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{factorize, incidence_graph, projective_plane, strip_factors};

    fn heawood() -> Graph {
        incidence_graph(&projective_plane(2).unwrap())
    }

    /// Max of `(D - k)/t` over every `D` in `1..=n+1`.
    fn brute_best(g: &Graph, t: usize) -> Option<Rational> {
        (1..=g.order() + 1).filter_map(|d| threshold_bound(g, d, t).map(|x| x.1)).max()
    }

    #[test]
    fn k2t_examples() {
        let c = k2t_certificate(&heawood(), 2, None).unwrap();
        assert_eq!((c.param("D"), c.param("k"), c.bound), (Some(3), Some(0), Rational::new(3, 2)));
        assert_eq!(verify(&c, &heawood()), Ok(()));

        let g = incidence_graph(&projective_plane(4).unwrap());
        let f = factorize(&g, 1).unwrap();
        let s = strip_factors(&g, &f, 1, 0.5).unwrap();
        assert_eq!(k2t_certificate(&s, 2, None).unwrap().bound, Rational::from_integer(2));

        assert_eq!(k2t_certificate(&Graph::star(5), 1, None), Err(CertifyError::NotK2TFree { t: 1 }));
        assert!(matches!(k2t_certificate(&Graph::petersen(), 2, Some(4)), Err(CertifyError::NoValidThreshold)));
    }

    #[test]
    fn girth5_examples() {
        assert_eq!(girth5_certificate(&Graph::petersen(), None).unwrap().bound, Rational::from_integer(3));
        assert_eq!(girth5_certificate(&heawood(), None).unwrap().bound, Rational::from_integer(3));
        let p = Graph::petersen().with_pendant(&[0]);
        let c = girth5_certificate(&p, None).unwrap();
        assert_eq!((c.param("D"), c.param("k"), c.bound), (Some(3), Some(1), Rational::from_integer(2)));
        assert_eq!(verify(&c, &p), Ok(()));
        assert!(matches!(girth5_certificate(&Graph::cycle(4), None), Err(CertifyError::GirthTooSmall(_))));
    }

    #[test]
    fn tampered_certificates_fail() {
        let mut c = girth5_certificate(&Graph::petersen(), None).unwrap();
        c.bound = Rational::from_integer(4);
        assert!(verify(&c, &Graph::petersen()).is_err());
    }

    #[test]
    fn json_round_trip() {
        let c = k2t_certificate(&heawood(), 2, None).unwrap();
        let s = serde_json::to_string(&c).unwrap();
        assert!(s.contains("\"kind\":\"K2T_LOWER\"") && s.contains("\"bound_num\":3") && s.contains("\"bound_den\":2"));
        let back: BoundCertificate = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn exact_certificate_checks() {
        let c = exact_certificate(&Graph::petersen(), 3, 1_000_000);
        assert_eq!(verify(&c, &Graph::petersen()), Ok(()));
        let wrong = exact_certificate(&Graph::petersen(), 2, 1_000_000);
        assert!(verify(&wrong, &Graph::petersen()).is_err());
    }

    proptest::proptest! {
        #[test]
        fn scan_is_optimal_and_monotone(n in 2usize..=9, bits in proptest::collection::vec(proptest::bool::weighted(0.35), 36)) {
            let mut edges = Vec::new();
            let mut i = 0;
            for u in 0..n { for v in u + 1..n { if bits[i] { edges.push((u, v)); } i += 1; } }
            let g = Graph::from_edges(n, edges).unwrap();
            let mut last: Option<Rational> = None;
            for t in 1..=n {
                if !g.is_k2t_free(t) { continue; }
                let got = k2t_certificate(&g, t, None).ok().map(|c| c.bound);
                proptest::prop_assert_eq!(got, brute_best(&g, t));
                if let (Some(a), Some(b)) = (last, got) { proptest::prop_assert!(b <= a); }
                if got.is_some() { last = got; }
            }
        }
    }
}
