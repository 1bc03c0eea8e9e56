use std::collections::BTreeMap;

use num_rational::Ratio;
use serde::Serialize;
use serde_json::json;

use super::{blocking_greedy, CoverError, Hypergraph};
use crate::certify::{BoundCertificate, CertKind};
use crate::graph::{bfs_distances, is_vertex_transitive, Graph, Vertex, DEFAULT_ORBIT_LIMIT};

/// A shortest path of length `diam(G)` with every neighbour of its vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Dlc {
    pub path: Vec<Vertex>,
    /// Sorted.
    pub members: Vec<Vertex>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DlcSet {
    pub diameter: usize,
    pub dlcs: Vec<Dlc>,
    /// Most caterpillars through a single vertex.
    pub mu1: usize,
    /// Fewest members of a caterpillar.
    pub mu2: usize,
}

/// One caterpillar per ordered pair `(s, t)` at distance `diam(G)`, built on
/// the lexicographically least shortest `s`-`t` path.
pub fn dlc_enumerate(g: &Graph) -> Result<DlcSet, CoverError> {
    if g.order() == 0 || !g.is_connected() {
        return Err(CoverError::Disconnected);
    }
    let n = g.order();
    let dist: Vec<Vec<usize>> = g.vertices().map(|s| bfs_distances(g, s).into_iter().map(Option::unwrap).collect()).collect();
    let diameter = dist.iter().flatten().copied().max().unwrap_or(0);
    let mut dlcs = Vec::new();
    for s in 0..n {
        for t in 0..n {
            if dist[s][t] != diameter || (s == t && diameter > 0) {
                continue;
            }
            let mut path = vec![s];
            let mut cur = s;
            while cur != t {
                cur = *g.neighbors(cur).iter().find(|&&w| dist[w][t] + 1 == dist[cur][t]).unwrap();
                path.push(cur);
            }
            let mut members: Vec<Vertex> = path.iter().flat_map(|&v| std::iter::once(v).chain(g.neighbors(v).iter().copied())).collect();
            members.sort_unstable();
            members.dedup();
            dlcs.push(Dlc { path, members });
        }
    }
    let mut count = vec![0; n];
    for d in &dlcs {
        for &v in &d.members {
            count[v] += 1;
        }
    }
    let mu1 = count.into_iter().max().unwrap_or(0);
    let mu2 = dlcs.iter().map(|d| d.members.len()).min().unwrap_or(0);
    Ok(DlcSet { diameter, dlcs, mu1, mu2 })
}

/// Upper bound `5 tau`, where `tau` caterpillars chosen greedily cover every
/// vertex and five cops guard each one. The closed form `3 n log2(d) / d`
/// with `d = m * diam` is reported alongside.
pub fn dlc_cover_bound(g: &Graph) -> Result<BoundCertificate, CoverError> {
    if g.order() == 0 || !g.is_connected() {
        return Err(CoverError::Disconnected);
    }
    let m = g.regular_degree().ok_or(CoverError::NotRegular)?;
    let set = dlc_enumerate(g)?;
    let edges: Vec<Vec<usize>> = g
        .vertices()
        .map(|v| (0..set.dlcs.len()).filter(|&i| set.dlcs[i].members.binary_search(&v).is_ok()).collect())
        .collect();
    let h = Hypergraph::new(set.dlcs.len(), edges)?;
    let mut chosen = blocking_greedy(&h);
    chosen.sort_unstable();
    let tau = chosen.len();
    let d = m * set.diameter;
    let formula = if d > 1 { 3.0 * g.order() as f64 * (d as f64).log2() / d as f64 } else { f64::NAN };
    let transitive = (g.order() <= DEFAULT_ORBIT_LIMIT).then(|| is_vertex_transitive(g, DEFAULT_ORBIT_LIMIT).ok()).flatten();
    Ok(BoundCertificate {
        kind: CertKind::DlcUpper,
        params: BTreeMap::from([("m".into(), m as i64), ("diam".into(), set.diameter as i64), ("tau".into(), tau as i64)]),
        bound: Ratio::from_integer(5 * tau as i64),
        witness: json!({
            "chosen": chosen.iter().map(|&i| &set.dlcs[i]).collect::<Vec<_>>(),
            "dlc_count": set.dlcs.len(),
            "mu1": set.mu1,
            "mu2": set.mu2,
            "d": d,
            "formula": formula,
            "vertex_transitive": transitive,
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::verify;

    #[test]
    fn enumeration_examples() {
        let p4 = dlc_enumerate(&Graph::path(4)).unwrap();
        assert_eq!(p4.diameter, 3);
        assert_eq!(p4.dlcs.len(), 2);
        assert_eq!(p4.dlcs[0].path, vec![0, 1, 2, 3]);
        assert!(p4.dlcs.iter().all(|d| d.members == vec![0, 1, 2, 3]));

        let c6 = dlc_enumerate(&Graph::cycle(6)).unwrap();
        assert_eq!(c6.diameter, 3);
        assert_eq!(c6.dlcs.len(), 6);
        assert!(c6.dlcs.iter().all(|d| d.members.len() == 6));
        assert_eq!(c6.dlcs[0].path, vec![0, 1, 2, 3]);

        let p = dlc_enumerate(&Graph::petersen()).unwrap();
        assert_eq!(p.diameter, 2);
        assert_eq!(p.dlcs.len(), 60);
        assert!(p.mu2 * 3 >= 2 * 2);
        assert_eq!(dlc_enumerate(&Graph::empty(2)), Err(CoverError::Disconnected));
    }

    #[test]
    fn cover_bound_examples() {
        let c8 = dlc_cover_bound(&Graph::cycle(8)).unwrap();
        assert_eq!(c8.witness["d"], 8);
        assert!((c8.witness["formula"].as_f64().unwrap() - 9.0).abs() < 1e-9);
        assert_eq!(verify(&c8, &Graph::cycle(8)), Ok(()));
        let p = dlc_cover_bound(&Graph::petersen()).unwrap();
        assert!((p.witness["formula"].as_f64().unwrap() - 12.92).abs() < 0.01);
        assert_eq!(p.witness["vertex_transitive"], true);
        assert!(p.cops() >= 3);
        assert_eq!(dlc_cover_bound(&Graph::path(3)).unwrap_err(), CoverError::NotRegular);
    }
}
