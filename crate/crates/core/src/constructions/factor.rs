//! 1-factorizations of regular bipartite graphs and 2-factorizations of
//! regular graphs of even degree.

use serde::{Deserialize, Serialize};

use super::ConstructionError;
use crate::graph::{Graph, Vertex};

/// A partition of a host's edge set into `r`-regular spanning subgraphs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorDecomposition {
    pub r: usize,
    /// Edges `(u, v)` with `u < v`, sorted, one list per factor.
    pub factors: Vec<Vec<(Vertex, Vertex)>>,
}

impl FactorDecomposition {
    /// Checks disjointness, coverage of `host` and regularity of each factor.
    pub fn validate(&self, host: &Graph) -> Result<(), String> {
        let mut seen = std::collections::HashSet::new();
        for (i, f) in self.factors.iter().enumerate() {
            let mut deg = vec![0; host.order()];
            for &(u, v) in f {
                if !host.has_edge(u, v) {
                    return Err(format!("factor {i} uses non-edge {u}-{v}"));
                }
                if !seen.insert((u, v)) {
                    return Err(format!("edge {u}-{v} appears twice"));
                }
                deg[u] += 1;
                deg[v] += 1;
            }
            if deg.iter().any(|&d| d != self.r) {
                return Err(format!("factor {i} is not {}-regular", self.r));
            }
        }
        if seen.len() != host.size() {
            return Err(format!("factors cover {} of {} edges", seen.len(), host.size()));
        }
        Ok(())
    }
}

/// Maximum matching in a bipartite graph given as adjacency from the left
/// side (`0..left.len()`) into `0..right_n`. Returns `mate` for the left side.
fn bipartite_matching(left: &[Vec<usize>], right_n: usize) -> Vec<Option<usize>> {
    fn augment(u: usize, left: &[Vec<usize>], seen: &mut [bool], right_mate: &mut [Option<usize>]) -> bool {
        for &w in &left[u] {
            if !seen[w] {
                seen[w] = true;
                if right_mate[w].is_none_or(|x| augment(x, left, seen, right_mate)) {
                    right_mate[w] = Some(u);
                    return true;
                }
            }
        }
        false
    }
    let mut right_mate = vec![None; right_n];
    for u in 0..left.len() {
        let mut seen = vec![false; right_n];
        augment(u, left, &mut seen, &mut right_mate);
    }
    let mut mate = vec![None; left.len()];
    for (w, m) in right_mate.iter().enumerate() {
        if let Some(u) = *m {
            mate[u] = Some(w);
        }
    }
    mate
}

/// Peels perfect matchings off a regular bipartite multigraph-free
/// adjacency until it is empty. `left[u]` lists right-side neighbours.
fn peel_matchings(mut left: Vec<Vec<usize>>, right_n: usize) -> Option<Vec<Vec<(usize, usize)>>> {
    let mut out = Vec::new();
    while left.iter().any(|l| !l.is_empty()) {
        let mate = bipartite_matching(&left, right_n);
        let mut m = Vec::with_capacity(left.len());
        for (u, w) in mate.into_iter().enumerate() {
            let w = w?;
            m.push((u, w));
            left[u].retain(|&x| x != w);
        }
        out.push(m);
    }
    Some(out)
}

fn normalize(mut edges: Vec<(Vertex, Vertex)>) -> Vec<(Vertex, Vertex)> {
    for e in edges.iter_mut() {
        *e = (e.0.min(e.1), e.0.max(e.1));
    }
    edges.sort_unstable();
    edges
}

fn one_factorization(g: &Graph) -> Result<FactorDecomposition, ConstructionError> {
    let not = |why: &str| ConstructionError::NotFactorizable(why.to_string());
    let k = g.regular_degree().ok_or_else(|| not("graph is not regular"))?;
    if k == 0 {
        return Err(not("graph has no edges"));
    }
    let sides = g.bipartition().ok_or_else(|| not("graph is not bipartite"))?;
    let left: Vec<Vertex> = g.vertices().filter(|&v| sides[v] == 0).collect();
    let right: Vec<Vertex> = g.vertices().filter(|&v| sides[v] == 1).collect();
    if left.len() != right.len() {
        return Err(not("unbalanced bipartition"));
    }
    let mut pos = vec![0; g.order()];
    for (i, &v) in right.iter().enumerate() {
        pos[v] = i;
    }
    let adj = left.iter().map(|&u| g.neighbors(u).iter().map(|&w| pos[w]).collect()).collect();
    let matchings = peel_matchings(adj, right.len()).ok_or_else(|| not("no perfect matching"))?;
    let factors = matchings
        .into_iter()
        .map(|m| normalize(m.into_iter().map(|(a, b)| (left[a], right[b])).collect()))
        .collect();
    Ok(FactorDecomposition { r: 1, factors })
}

/// Orients every edge along Euler circuits, one per component.
fn euler_orientation(g: &Graph) -> Vec<(Vertex, Vertex)> {
    let n = g.order();
    let mut used = std::collections::HashSet::new();
    let mut next = vec![0usize; n];
    let mut arcs = Vec::with_capacity(g.size());
    for s in 0..n {
        if next[s] == g.degree(s) {
            continue;
        }
        // Hierholzer, recording each edge in the direction it is traversed.
        let mut stack = vec![s];
        while let Some(&u) = stack.last() {
            let nb = g.neighbors(u);
            while next[u] < nb.len() && used.contains(&(u.min(nb[next[u]]), u.max(nb[next[u]]))) {
                next[u] += 1;
            }
            if next[u] == nb.len() {
                stack.pop();
            } else {
                let v = nb[next[u]];
                used.insert((u.min(v), u.max(v)));
                arcs.push((u, v));
                stack.push(v);
            }
        }
    }
    arcs
}

fn two_factorization(g: &Graph) -> Result<FactorDecomposition, ConstructionError> {
    let not = |why: &str| ConstructionError::NotFactorizable(why.to_string());
    let k = g.regular_degree().ok_or_else(|| not("graph is not regular"))?;
    if k == 0 || k % 2 == 1 {
        return Err(not("degree must be even and positive"));
    }
    let n = g.order();
    let arcs = euler_orientation(g);
    // each vertex has k/2 out-arcs and k/2 in-arcs; split out/in copies
    let mut adj = vec![Vec::new(); n];
    for &(u, w) in &arcs {
        adj[u].push(w);
    }
    let matchings = peel_matchings(adj, n).ok_or_else(|| not("no perfect matching in split graph"))?;
    Ok(FactorDecomposition { r: 2, factors: matchings.into_iter().map(normalize).collect() })
}

/// `r = 1` needs a regular bipartite graph, `r = 2` a regular graph of even
/// degree. Other `r` (and non-bipartite 1-factorization) are refused.
pub fn factorize(g: &Graph, r: usize) -> Result<FactorDecomposition, ConstructionError> {
    let f = match r {
        1 => one_factorization(g)?,
        2 => two_factorization(g)?,
        _ => return Err(ConstructionError::NotFactorizable(format!("unsupported factor degree {r}"))),
    };
    debug_assert_eq!(f.validate(g), Ok(()));
    Ok(f)
}

/// Removes the first `i` factors. `i` must lie in `1..=floor(eps*k/r)`.
pub fn strip_factors(g: &Graph, f: &FactorDecomposition, i: usize, eps: f64) -> Result<Graph, ConstructionError> {
    let k = g.regular_degree().ok_or_else(|| ConstructionError::NotFactorizable("host is not regular".into()))?;
    if !(eps > 0.0 && eps < 1.0) {
        return Err(ConstructionError::InvalidParameter(format!("epsilon {eps} not in (0,1)")));
    }
    let max = (eps * k as f64 / f.r as f64).floor() as usize;
    if i == 0 || i > max || i > f.factors.len() {
        return Err(ConstructionError::IndexOutOfRange { index: i, max });
    }
    Ok(g.without_edges(f.factors[..i].iter().flatten().copied()))
}
