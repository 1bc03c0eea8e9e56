//! Blow-up of an oriented `m`-cycle by half-lines of `PG(2,q)`.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::plane::{projective_plane, ProjectivePlane};
use super::{ConstructionError, VertexLabel};
use crate::graph::{diameter, Extent, Graph};

/// Per-line halves `(B', B'')`, indexed like the plane's lines.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HalfBlockSplit {
    pub halves: Vec<(Vec<usize>, Vec<usize>)>,
}

/// Ranks points (seed 0: natural order, otherwise a seeded shuffle), then
/// deals each line's points alternately into `B'` and `B''` by rank.
pub fn bf_split(plane: &ProjectivePlane, seed: u64) -> HalfBlockSplit {
    let n = plane.num_points();
    let mut order: Vec<usize> = (0..n).collect();
    if seed != 0 {
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }
    let mut rank = vec![0; n];
    for (r, &p) in order.iter().enumerate() {
        rank[p] = r;
    }
    let halves = plane
        .lines()
        .iter()
        .map(|line| {
            let mut pts = line.clone();
            pts.sort_by_key(|&p| rank[p]);
            let (mut a, mut b) = (Vec::new(), Vec::new());
            for (i, p) in pts.into_iter().enumerate() {
                if i % 2 == 0 { a.push(p) } else { b.push(p) }
            }
            a.sort_unstable();
            b.sort_unstable();
            (a, b)
        })
        .collect();
    HalfBlockSplit { halves }
}

fn check_params(q: u64, m: usize) -> Result<(), ConstructionError> {
    if super::prime_power(q).is_none() {
        return Err(ConstructionError::NotAPrimePower(q));
    }
    if q.is_multiple_of(2) {
        return Err(ConstructionError::EvenOrder(q));
    }
    if m < 3 {
        return Err(ConstructionError::CycleTooShort(m));
    }
    Ok(())
}

/// Builds the graph for a given split without any structural validation.
/// Block vertex `(u, B)` is `u*L + B`; point vertex `(e_u, x)` is
/// `m*L + u*L + x`, where `e_u` is the arc `u -> u+1 (mod m)`.
fn assemble(plane: &ProjectivePlane, m: usize, split: &HalfBlockSplit) -> Graph {
    let l = plane.num_points();
    let mut edges = Vec::with_capacity(l * (plane.order() as usize + 1) * m);
    for u in 0..m {
        let prev = (u + m - 1) % m;
        for (b, (out_half, in_half)) in split.halves.iter().enumerate() {
            let block = u * l + b;
            edges.extend(out_half.iter().map(|&x| (block, m * l + u * l + x)));
            edges.extend(in_half.iter().map(|&x| (block, m * l + prev * l + x)));
        }
    }
    Graph::from_edges(2 * l * m, edges).expect("blow-up edges are distinct")
}

/// `BF(q, m)` for the split derived from `split_seed`. The output is checked
/// for order, size, regularity, C4-freeness, connectivity and diameter `2m`.
pub fn bf_graph(q: u64, m: usize, split_seed: u64) -> Result<Graph, ConstructionError> {
    check_params(q, m)?;
    let plane = projective_plane(q)?;
    let g = assemble(&plane, m, &bf_split(&plane, split_seed));
    validate(&g, q as usize, m, split_seed)?;
    Ok(g)
}

fn validate(g: &Graph, q: usize, m: usize, seed: u64) -> Result<(), ConstructionError> {
    let l = q * q + q + 1;
    let fail = |what: String| Err(ConstructionError::Internal(what));
    if g.order() != 2 * l * m {
        return fail(format!("order {} != {}", g.order(), 2 * l * m));
    }
    if g.size() != l * (q + 1) * m {
        return fail(format!("size {} != {}", g.size(), l * (q + 1) * m));
    }
    if g.regular_degree() != Some(q + 1) {
        return fail(format!("not {}-regular", q + 1));
    }
    if !g.is_c4_free() {
        return Err(ConstructionError::NotC4Free);
    }
    if !g.is_connected() {
        return Err(ConstructionError::DisconnectedSplit { seed });
    }
    match diameter(g) {
        Extent::Finite(d) if d == 2 * m => Ok(()),
        found => Err(ConstructionError::DiameterMismatch { seed, expected: 2 * m, found: found.to_string() }),
    }
}

/// Tries seeds `first_seed..first_seed+tries` and returns the first that
/// passes every check, with its graph.
pub fn bf_graph_search(q: u64, m: usize, first_seed: u64, tries: u64) -> Result<(u64, Graph), ConstructionError> {
    check_params(q, m)?;
    let plane = projective_plane(q)?;
    for seed in first_seed..first_seed + tries {
        let g = assemble(&plane, m, &bf_split(&plane, seed));
        match validate(&g, q as usize, m, seed) {
            Ok(()) => return Ok((seed, g)),
            Err(ConstructionError::DisconnectedSplit { .. } | ConstructionError::DiameterMismatch { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(ConstructionError::NoValidSplit { first: first_seed, end: first_seed + tries })
}

pub fn bf_labels(q: u64, m: usize) -> Result<Vec<VertexLabel>, ConstructionError> {
    check_params(q, m)?;
    let l = (q * q + q + 1) as usize;
    let blocks = (0..m).flat_map(|u| (0..l).map(move |line| VertexLabel::CycleBlock { u, line }));
    let points = (0..m).flat_map(|edge| (0..l).map(move |point| VertexLabel::CycleEdgePoint { edge, point }));
    Ok(blocks.chain(points).collect())
}
