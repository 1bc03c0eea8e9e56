//! Spanning subgraphs obtained by deleting edges between the first and
//! second neighbourhoods of a minimum-degree vertex, and triangle trimming.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::ConstructionError;
use crate::graph::{bfs_distances, girth, triangles, Extent, Graph, Vertex};

/// `ceil(eps * delta)` computed so that exact products such as `0.5 * 4`
/// are not pushed up by rounding noise.
pub fn target_count(eps: f64, delta: usize) -> usize {
    let x = eps * delta as f64;
    let r = x.round();
    if (x - r).abs() < 1e-9 {
        r as usize
    } else {
        x.ceil() as usize
    }
}

fn check_eps(eps: f64) -> Result<(), ConstructionError> {
    if eps > 0.0 && eps < 1.0 {
        Ok(())
    } else {
        Err(ConstructionError::InvalidParameter(format!("epsilon {eps} not in (0,1)")))
    }
}

/// Lowest-indexed vertex of minimum degree.
pub fn min_degree_anchor(g: &Graph) -> Option<Vertex> {
    let delta = g.min_degree();
    g.vertices().find(|&v| g.degree(v) == delta)
}

fn second_neighbourhood(g: &Graph, anchor: Vertex) -> Vec<bool> {
    bfs_distances(g, anchor).into_iter().map(|d| d == Some(2)).collect()
}

/// Deletion amounts for the first `ceil(eps * delta)` neighbours of a
/// minimum-degree anchor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeletionVector {
    pub entries: Vec<usize>,
    pub anchor: Vertex,
    pub targets: Vec<Vertex>,
}

impl DeletionVector {
    /// Chooses the anchor and targets of `g` for the given `eps` and attaches
    /// `entries`, checking `0 <= x_i <= deg(v_i) - 3`.
    pub fn new(g: &Graph, eps: f64, entries: Vec<usize>) -> Result<Self, ConstructionError> {
        check_eps(eps)?;
        let anchor = min_degree_anchor(g).ok_or_else(|| ConstructionError::InvalidParameter("empty graph".into()))?;
        let a = target_count(eps, g.min_degree());
        let targets: Vec<Vertex> = g.neighbors(anchor)[..a].to_vec();
        if entries.len() != a {
            return Err(ConstructionError::VectorOutOfRange(format!("expected {a} entries, got {}", entries.len())));
        }
        let x = DeletionVector { entries, anchor, targets };
        x.check_bounds(g)?;
        Ok(x)
    }

    fn check_bounds(&self, g: &Graph) -> Result<(), ConstructionError> {
        for (&x, &v) in self.entries.iter().zip(&self.targets) {
            if x > 0 && x + 3 > g.degree(v) {
                return Err(ConstructionError::VectorOutOfRange(format!(
                    "x = {x} exceeds deg({v}) - 3 = {}",
                    g.degree(v) as isize - 3
                )));
            }
        }
        Ok(())
    }
}

/// Removes `x_i` edges from each target `v_i` into the second neighbourhood
/// of the anchor, lowest-indexed endpoints first.
pub fn neighborhood_deletion(g: &Graph, x: &DeletionVector) -> Result<Graph, ConstructionError> {
    if !g.is_c4_free() {
        return Err(ConstructionError::NotC4Free);
    }
    if g.degree(x.anchor) != g.min_degree() || x.targets.iter().any(|&t| !g.has_edge(x.anchor, t)) || x.entries.len() != x.targets.len() {
        return Err(ConstructionError::VectorOutOfRange("vector does not match this graph".into()));
    }
    x.check_bounds(g)?;
    let in_n2 = second_neighbourhood(g, x.anchor);
    let mut removed = Vec::new();
    for (&count, &v) in x.entries.iter().zip(&x.targets) {
        let outward: Vec<Vertex> = g.neighbors(v).iter().copied().filter(|&w| in_n2[w]).collect();
        if outward.len() < count + 1 {
            return Err(ConstructionError::VectorOutOfRange(format!("target {v} has only {} outward edges", outward.len())));
        }
        removed.extend(outward[..count].iter().map(|&w| (v, w)));
    }
    let out = g.without_edges(removed);
    debug_assert!(!g.is_connected() || out.is_connected());
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProfileMode {
    /// Host of girth at least 5; each target keeps `delta - 1` outward edges.
    Girth5,
    /// C4-free host; edges inside `N(v)` are dropped first and each target
    /// keeps `delta - 2` outward edges.
    C4Free,
}

/// Nondecreasing vectors of length `a` over `0..d`, lexicographically.
/// These are in bijection with the profiles `(g_0, ..., g_{d-1})` counting
/// how many coordinates take each value, so there are `C(a+d-1, d-1)`.
pub fn degree_profiles(a: usize, d: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut next = if d == 0 && a > 0 { None } else { Some(vec![0; a]) };
    std::iter::from_fn(move || {
        let cur = next.take()?;
        let mut succ = cur.clone();
        // bump the rightmost coordinate that can grow and reset its tail
        if let Some(i) = (0..a).rev().find(|&i| succ[i] + 1 < d) {
            let v = succ[i] + 1;
            succ[i..].iter_mut().for_each(|c| *c = v);
            next = Some(succ);
        }
        Some(cur)
    })
}

#[derive(Clone, Debug)]
pub struct ProfileMember {
    /// Extra deletions per target, nondecreasing.
    pub deletions: Vec<usize>,
    pub graph: Graph,
}

#[derive(Clone, Debug)]
pub struct SpanningFamily {
    pub anchor: Vertex,
    pub targets: Vec<Vertex>,
    /// Number of targets.
    pub a: usize,
    /// Outward edges kept per target before the profile deletions.
    pub d: usize,
    pub members: Vec<ProfileMember>,
}

/// One spanning subgraph per degree profile, up to `max_count`, pairwise
/// distinguished by their degree multisets.
pub fn spanning_profile_family(g: &Graph, eps: f64, mode: ProfileMode, max_count: usize) -> Result<SpanningFamily, ConstructionError> {
    check_eps(eps)?;
    match mode {
        ProfileMode::Girth5 => {
            if let Extent::Finite(len) = girth(g) {
                if len < 5 {
                    return Err(ConstructionError::ModeHypothesisViolated(format!("girth {len} is below 5")));
                }
            }
        }
        ProfileMode::C4Free => {
            if !g.is_c4_free() {
                return Err(ConstructionError::ModeHypothesisViolated("graph contains a C4".into()));
            }
        }
    }
    let delta = g.min_degree();
    let d = match mode {
        ProfileMode::Girth5 => delta as isize - 1,
        ProfileMode::C4Free => delta as isize - 2,
    };
    if d < 1 {
        return Err(ConstructionError::DegenerateDegree { d });
    }
    let d = d as usize;
    let anchor = min_degree_anchor(g).unwrap();
    let nbrs = g.neighbors(anchor).to_vec();
    let host = match mode {
        ProfileMode::Girth5 => g.clone(),
        ProfileMode::C4Free => {
            let inner: Vec<_> = nbrs.iter().flat_map(|&x| nbrs.iter().filter(move |&&y| y > x && g.has_edge(x, y)).map(move |&y| (x, y))).collect();
            g.without_edges(inner)
        }
    };
    let a = target_count(eps, delta);
    let targets = nbrs[..a].to_vec();
    let in_n2 = second_neighbourhood(&host, anchor);
    let outward: Vec<Vec<Vertex>> = targets
        .iter()
        .map(|&v| host.neighbors(v).iter().copied().filter(|&w| in_n2[w]).collect())
        .collect();
    if let Some((i, o)) = outward.iter().enumerate().find(|(_, o)| o.len() < d) {
        return Err(ConstructionError::ModeHypothesisViolated(format!("target {} has {} outward edges, need {d}", targets[i], o.len())));
    }
    let mut seen_multisets = HashSet::new();
    let mut members = Vec::new();
    for profile in degree_profiles(a, d) {
        if members.len() >= max_count {
            break;
        }
        let removed = targets.iter().zip(&outward).zip(&profile).flat_map(|((&v, out), &x)| {
            let drop = out.len() - d + x;
            out[..drop].iter().map(move |&w| (v, w))
        });
        let member = host.without_edges(removed);
        if !member.is_connected() || !seen_multisets.insert(member.degree_multiset()) {
            continue;
        }
        members.push(ProfileMember { deletions: profile, graph: member });
    }
    Ok(SpanningFamily { anchor, targets, a, d, members })
}

/// Deletes one edge from each of the first `t - t_prime` triangles (in
/// sorted-triple order). Selector 0 removes `xy`, 1 removes `yz`, 2 removes
/// `xz` for the triangle `x < y < z`.
pub fn triangle_trim(g: &Graph, t_prime: usize, selectors: &[u8]) -> Result<Graph, ConstructionError> {
    if !g.is_c4_free() {
        return Err(ConstructionError::NotC4Free);
    }
    let tris = triangles(g);
    let t = tris.len();
    if t_prime > t {
        return Err(ConstructionError::InvalidParameter(format!("t' = {t_prime} exceeds the {t} triangles")));
    }
    if selectors.len() != t - t_prime {
        return Err(ConstructionError::BadVectorLength { expected: t - t_prime, found: selectors.len() });
    }
    let mut removed = Vec::with_capacity(selectors.len());
    for (&[x, y, z], &s) in tris.iter().zip(selectors) {
        removed.push(match s {
            0 => (x, y),
            1 => (y, z),
            2 => (x, z),
            _ => return Err(ConstructionError::InvalidParameter(format!("edge selector {s} not in 0..=2"))),
        });
    }
    Ok(g.without_edges(removed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{incidence_graph, polarity_graph, projective_plane};
    use crate::graph::{are_isomorphic, cycle_census};

    fn binomial(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn profile_counts_are_binomial() {
        assert_eq!(degree_profiles(2, 2).count(), 3);
        assert_eq!(degree_profiles(3, 3).count(), 10);
        for a in 1..=6 {
            for d in 1..=6 {
                let all: Vec<_> = degree_profiles(a, d).collect();
                assert_eq!(all.len(), binomial(a + d - 1, d - 1), "a={a} d={d}");
                assert!(all.windows(2).all(|w| w[0] < w[1]));
                assert!(all.iter().all(|p| p.windows(2).all(|w| w[0] <= w[1]) && p.iter().all(|&x| x < d)));
            }
        }
    }

    #[test]
    fn deletion_on_pg23_incidence() {
        let g = incidence_graph(&projective_plane(3).unwrap());
        let x = DeletionVector::new(&g, 0.5, vec![1, 1]).unwrap();
        let out = neighborhood_deletion(&g, &x).unwrap();
        for &v in &x.targets {
            assert_eq!(out.degree(v), 3);
        }
        assert_eq!(out.size(), g.size() - 2);
        assert!(out.is_connected());

        let zero = DeletionVector::new(&g, 0.5, vec![0, 0]).unwrap();
        assert_eq!(neighborhood_deletion(&g, &zero).unwrap(), g);

        assert!(matches!(DeletionVector::new(&g, 0.5, vec![2, 0]), Err(ConstructionError::VectorOutOfRange(_))));
        assert!(matches!(DeletionVector::new(&g, 0.5, vec![0]), Err(ConstructionError::VectorOutOfRange(_))));
        let forged = DeletionVector { entries: vec![0, 0], anchor: 0, targets: x.targets.clone() };
        assert!(neighborhood_deletion(&Graph::complete_bipartite(2, 3), &forged).is_err());
        assert!(matches!(neighborhood_deletion(&Graph::cycle(4), &forged), Err(ConstructionError::NotC4Free)));
    }

    #[test]
    fn spanning_family_on_pg24_incidence() {
        let g = incidence_graph(&projective_plane(4).unwrap());
        let fam = spanning_profile_family(&g, 0.5, ProfileMode::Girth5, usize::MAX).unwrap();
        assert_eq!((fam.a, fam.d), (3, 4));
        assert_eq!(fam.members.len(), binomial(6, 3));
        for (i, a) in fam.members.iter().enumerate() {
            assert!(a.graph.is_connected());
            for b in &fam.members[i + 1..] {
                assert!(!are_isomorphic(&a.graph, &b.graph, 64).unwrap());
            }
        }
        let limited = spanning_profile_family(&g, 0.5, ProfileMode::Girth5, 5).unwrap();
        assert_eq!(limited.members.len(), 5);
    }

    #[test]
    fn spanning_family_c4free_mode_on_polarity_graph() {
        let g = polarity_graph(5).unwrap();
        assert!(matches!(spanning_profile_family(&g, 0.5, ProfileMode::Girth5, 10), Err(ConstructionError::ModeHypothesisViolated(_))));
        let fam = spanning_profile_family(&g, 0.5, ProfileMode::C4Free, usize::MAX).unwrap();
        // delta = 5, a = 3, d = 3
        assert_eq!((fam.a, fam.d), (3, 3));
        assert_eq!(fam.members.len(), 10);
        let mut ms: Vec<_> = fam.members.iter().map(|m| m.graph.degree_multiset()).collect();
        ms.dedup();
        assert_eq!(ms.len(), 10);
    }

    #[test]
    fn degenerate_degree() {
        assert!(matches!(
            spanning_profile_family(&Graph::cycle(7), 0.5, ProfileMode::C4Free, 10),
            Err(ConstructionError::DegenerateDegree { d: 0 })
        ));
    }

    #[test]
    fn triangle_trimming() {
        let bowtie = Graph::from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        let out = triangle_trim(&bowtie, 1, &[0]).unwrap();
        assert_eq!(triangles(&out), vec![[2, 3, 4]]);
        assert!(!out.has_edge(0, 1));
        assert_eq!(triangle_trim(&bowtie, 2, &[]).unwrap(), bowtie);
        assert!(matches!(triangle_trim(&bowtie, 0, &[0]), Err(ConstructionError::BadVectorLength { expected: 2, found: 1 })));
        assert!(matches!(triangle_trim(&Graph::complete(4), 0, &[]), Err(ConstructionError::NotC4Free)));

        let p = polarity_graph(3).unwrap();
        let t = cycle_census(&p).c3 as usize;
        assert!(t > 0);
        for sel in 0..3u8 {
            let out = triangle_trim(&p, 0, &vec![sel; t]).unwrap();
            assert_eq!(cycle_census(&out).c3, 0);
            assert!(2 * out.min_degree() >= p.min_degree());
        }
    }
}
