use serde::{Deserialize, Serialize};

use super::{Graph, Vertex};

/// Numbers of 3-, 4- and 6-cycles contained in a graph as subgraphs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleCensus {
    pub c3: u64,
    pub c4: u64,
    pub c6: u64,
}

/// Counts cycles of length `len` once each: a cycle is enumerated only from
/// its smallest vertex, and only in the direction whose second vertex is
/// smaller than its last.
fn count_cycles(g: &Graph, len: usize) -> u64 {
    debug_assert!(len >= 3);
    let n = g.order();
    let mut on_path = vec![false; n];
    let mut path = Vec::with_capacity(len);
    let mut total = 0;
    for s in 0..n {
        path.clear();
        path.push(s);
        on_path[s] = true;
        extend(g, s, len, &mut path, &mut on_path, &mut total);
        on_path[s] = false;
    }
    total
}

fn extend(g: &Graph, s: Vertex, len: usize, path: &mut Vec<Vertex>, on_path: &mut [bool], total: &mut u64) {
    let last = *path.last().unwrap();
    if path.len() == len {
        if path[1] < last && g.has_edge(last, s) {
            *total += 1;
        }
        return;
    }
    for &v in g.neighbors(last) {
        if v > s && !on_path[v] {
            on_path[v] = true;
            path.push(v);
            extend(g, s, len, path, on_path, total);
            path.pop();
            on_path[v] = false;
        }
    }
}

pub fn cycle_census(g: &Graph) -> CycleCensus {
    CycleCensus { c3: count_cycles(g, 3), c4: count_cycles(g, 4), c6: count_cycles(g, 6) }
}

/// All triangles as sorted triples `x < y < z`, lexicographically ordered.
pub fn triangles(g: &Graph) -> Vec<[Vertex; 3]> {
    let mut out = Vec::new();
    for (x, y) in g.edges() {
        for &z in g.neighbors(y) {
            if z > y && g.has_edge(x, z) {
                out.push([x, y, z]);
            }
        }
    }
    out.sort_unstable();
    out
}
