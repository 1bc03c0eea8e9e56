use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Graph, Vertex};

/// A length that may be unbounded: the girth of a forest or the diameter of
/// a disconnected graph.
/// Serialized as an integer, or the string `"inf"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Extent {
    Finite(usize),
    Infinite,
}

impl Extent {
    pub fn finite(self) -> Option<usize> {
        match self {
            Extent::Finite(v) => Some(v),
            Extent::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Extent::Finite(_))
    }
}

impl Serialize for Extent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Extent::Finite(v) => s.serialize_u64(*v as u64),
            Extent::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Extent {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(usize),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(v) => Ok(Extent::Finite(v)),
            Raw::S(s) if s == "inf" => Ok(Extent::Infinite),
            Raw::S(s) => Err(serde::de::Error::custom(format!("bad extent {s:?}"))),
        }
    }
}

impl fmt::Display for Extent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extent::Finite(v) => write!(f, "{v}"),
            Extent::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metrics {
    pub order: usize,
    pub size: usize,
    pub min_degree: usize,
    pub max_degree: usize,
    pub diameter: Extent,
    pub girth: Extent,
    pub connected: bool,
    pub degree_histogram: BTreeMap<usize, usize>,
}

/// BFS distances from `s`; `None` marks unreachable vertices.
pub fn bfs_distances(g: &Graph, s: Vertex) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.order()];
    dist[s] = Some(0);
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap();
        for &v in g.neighbors(u) {
            if dist[v].is_none() {
                dist[v] = Some(du + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Length of the shortest cycle through the BFS tree rooted at `s`, or
/// `None`. The minimum over all roots is the girth.
fn shortest_cycle_from(g: &Graph, s: Vertex, cap: usize) -> Option<usize> {
    let n = g.order();
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    let mut best: Option<usize> = None;
    while let Some(u) = queue.pop_front() {
        // Any cycle found from here on has length at least 2*dist[u]+1.
        if 2 * dist[u] + 1 >= best.unwrap_or(cap) {
            break;
        }
        for &v in g.neighbors(u) {
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                parent[v] = u;
                queue.push_back(v);
            } else if parent[u] != v {
                let len = dist[u] + dist[v] + 1;
                best = Some(best.map_or(len, |b| b.min(len)));
            }
        }
    }
    best
}

pub fn girth(g: &Graph) -> Extent {
    let mut best = usize::MAX;
    for s in g.vertices() {
        if let Some(c) = shortest_cycle_from(g, s, best) {
            best = best.min(c);
        }
    }
    if best == usize::MAX {
        Extent::Infinite
    } else {
        Extent::Finite(best)
    }
}

pub fn diameter(g: &Graph) -> Extent {
    let mut diam = 0;
    for s in g.vertices() {
        for d in bfs_distances(g, s) {
            match d {
                Some(d) => diam = diam.max(d),
                None => return Extent::Infinite,
            }
        }
    }
    Extent::Finite(diam)
}

pub fn metrics(g: &Graph) -> Metrics {
    let mut degree_histogram = BTreeMap::new();
    for v in g.vertices() {
        *degree_histogram.entry(g.degree(v)).or_insert(0) += 1;
    }
    let diameter = diameter(g);
    Metrics {
        order: g.order(),
        size: g.size(),
        min_degree: g.min_degree(),
        max_degree: g.max_degree(),
        diameter,
        girth: girth(g),
        connected: diameter.is_finite(),
        degree_histogram,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extent_json() {
        assert_eq!(serde_json::to_string(&Extent::Finite(5)).unwrap(), "5");
        assert_eq!(serde_json::to_string(&Extent::Infinite).unwrap(), "\"inf\"");
        for e in [Extent::Finite(0), Extent::Finite(12), Extent::Infinite] {
            assert_eq!(serde_json::from_str::<Extent>(&serde_json::to_string(&e).unwrap()).unwrap(), e);
        }
        assert!(serde_json::from_str::<Extent>("\"x\"").is_err());
    }

    /// Floyd-Warshall distances and a girth found by testing each edge for
    /// the shortest alternative route between its ends.
    fn floyd_oracle(g: &Graph) -> (Extent, Extent) {
        let n = g.order();
        let inf = usize::MAX / 4;
        let all_pairs = |skip: Option<(usize, usize)>| {
            let mut d = vec![vec![inf; n]; n];
            for u in 0..n {
                d[u][u] = 0;
            }
            for (u, v) in g.edges() {
                if Some((u, v)) != skip {
                    d[u][v] = 1;
                    d[v][u] = 1;
                }
            }
            for k in 0..n {
                for i in 0..n {
                    for j in 0..n {
                        if d[i][k] + d[k][j] < d[i][j] {
                            d[i][j] = d[i][k] + d[k][j];
                        }
                    }
                }
            }
            d
        };
        let d = all_pairs(None);
        let far = d.iter().flatten().copied().max().unwrap_or(0);
        let diam = if far >= inf { Extent::Infinite } else { Extent::Finite(far) };
        let mut girth = inf;
        for (u, v) in g.edges() {
            let alt = all_pairs(Some((u, v)))[u][v];
            girth = girth.min(alt.saturating_add(1));
        }
        let girth = if girth >= inf { Extent::Infinite } else { Extent::Finite(girth) };
        (diam, girth)
    }

    #[test]
    fn petersen() {
        let m = metrics(&Graph::petersen());
        assert_eq!(m.girth, Extent::Finite(5));
        assert_eq!(m.diameter, Extent::Finite(2));
        assert_eq!((m.min_degree, m.max_degree), (3, 3));
        assert!(m.connected);
        assert_eq!((m.diameter, m.girth), floyd_oracle(&Graph::petersen()));
    }

    #[test]
    fn single_vertex() {
        let m = metrics(&Graph::empty(1));
        assert_eq!(m.girth, Extent::Infinite);
        assert_eq!(m.diameter, Extent::Finite(0));
        assert_eq!((m.min_degree, m.max_degree), (0, 0));
    }

    #[test]
    fn disconnected_and_acyclic() {
        let g = Graph::path(3).disjoint_union(&Graph::path(2));
        let m = metrics(&g);
        assert_eq!(m.diameter, Extent::Infinite);
        assert!(!m.connected);
        assert_eq!(m.girth, Extent::Infinite);
    }

    #[test]
    fn cycles_and_complete_graphs() {
        for n in 3..12 {
            let m = metrics(&Graph::cycle(n));
            assert_eq!(m.girth, Extent::Finite(n));
            assert_eq!(m.diameter, Extent::Finite(n / 2));
        }
        assert_eq!(metrics(&Graph::complete(5)).girth, Extent::Finite(3));
        assert_eq!(metrics(&Graph::complete_bipartite(3, 4)).girth, Extent::Finite(4));
    }

    proptest::proptest! {
        #[test]
        fn agrees_with_floyd_oracle(n in 1usize..=10, bits in proptest::collection::vec(proptest::bool::weighted(0.3), 45)) {
            let mut edges = Vec::new();
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[i] { edges.push((u, v)); }
                    i += 1;
                }
            }
            let g = Graph::from_edges(n, edges).unwrap();
            let m = metrics(&g);
            proptest::prop_assert_eq!((m.diameter, m.girth), floyd_oracle(&g));
            if matches!(m.girth, Extent::Finite(x) if x >= 5) || m.girth == Extent::Infinite {
                proptest::prop_assert!(g.is_k2t_free(2));
            }
        }
    }
}
