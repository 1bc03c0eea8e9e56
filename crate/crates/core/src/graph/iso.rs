//! Isomorphism testing and automorphism orbits by backtracking over
//! individualised vertices, pruned with joint colour refinement.

use super::{Graph, GraphError, Vertex};

pub const DEFAULT_ORBIT_LIMIT: usize = 64;

type Colouring = Vec<u32>;

/// Refines two colourings in lockstep with a shared colour namespace.
/// Returns false as soon as the colour-class sizes diverge.
fn refine(g: &Graph, h: &Graph, gc: &mut Colouring, hc: &mut Colouring) -> bool {
    let mut classes = count_classes(gc);
    loop {
        let sig = |graph: &Graph, cols: &Colouring, v: Vertex| {
            let mut nb: Vec<u32> = graph.neighbors(v).iter().map(|&w| cols[w]).collect();
            nb.sort_unstable();
            (cols[v], nb)
        };
        let gs: Vec<_> = g.vertices().map(|v| sig(g, gc, v)).collect();
        let hs: Vec<_> = h.vertices().map(|v| sig(h, hc, v)).collect();
        let mut all: Vec<&(u32, Vec<u32>)> = gs.iter().chain(hs.iter()).collect();
        all.sort_unstable();
        all.dedup();
        let id = |s: &(u32, Vec<u32>)| all.binary_search(&s).unwrap() as u32;
        let new_g: Colouring = gs.iter().map(id).collect();
        let new_h: Colouring = hs.iter().map(id).collect();
        if histogram(&new_g, all.len()) != histogram(&new_h, all.len()) {
            return false;
        }
        *gc = new_g;
        *hc = new_h;
        let now = all.len();
        if now == classes {
            return true;
        }
        classes = now;
    }
}

fn count_classes(c: &Colouring) -> usize {
    let mut v = c.clone();
    v.sort_unstable();
    v.dedup();
    v.len()
}

fn histogram(c: &Colouring, k: usize) -> Vec<usize> {
    let mut h = vec![0; k];
    for &x in c {
        h[x as usize] += 1;
    }
    h
}

/// Extends equitable colourings to an isomorphism `g -> h`, if one exists.
fn search(g: &Graph, h: &Graph, gc: &Colouring, hc: &Colouring) -> Option<Vec<Vertex>> {
    let n = g.order();
    let k = gc.iter().copied().max().map_or(0, |m| m as usize + 1);
    let sizes = histogram(gc, k);
    let target = (0..k).filter(|&c| sizes[c] > 1).min_by_key(|&c| (sizes[c], c));
    let Some(cell) = target else {
        let mut map = vec![0; n];
        let mut by_colour = vec![usize::MAX; k];
        for v in h.vertices() {
            by_colour[hc[v] as usize] = v;
        }
        for v in g.vertices() {
            map[v] = by_colour[gc[v] as usize];
        }
        return g.edges().all(|(a, b)| h.has_edge(map[a], map[b])).then_some(map);
    };
    let u = g.vertices().find(|&v| gc[v] as usize == cell).unwrap();
    let fresh = k as u32;
    for v in h.vertices().filter(|&v| hc[v] as usize == cell) {
        let (mut g2, mut h2) = (gc.clone(), hc.clone());
        g2[u] = fresh;
        h2[v] = fresh;
        if refine(g, h, &mut g2, &mut h2) {
            if let Some(m) = search(g, h, &g2, &h2) {
                return Some(m);
            }
        }
    }
    None
}

fn check_limit(g: &Graph, limit: usize) -> Result<(), GraphError> {
    if g.order() > limit {
        Err(GraphError::SizeExceeded { order: g.order(), limit })
    } else {
        Ok(())
    }
}

pub fn are_isomorphic(g: &Graph, h: &Graph, limit: usize) -> Result<bool, GraphError> {
    check_limit(g, limit)?;
    check_limit(h, limit)?;
    if g.order() != h.order() || g.size() != h.size() || g.degree_multiset() != h.degree_multiset() {
        return Ok(false);
    }
    let (mut gc, mut hc) = (vec![0; g.order()], vec![0; h.order()]);
    if !refine(g, h, &mut gc, &mut hc) {
        return Ok(false);
    }
    Ok(search(g, h, &gc, &hc).is_some())
}

/// An automorphism mapping `u` to `v`, starting from an equitable colouring.
fn automorphism_mapping(g: &Graph, base: &Colouring, u: Vertex, v: Vertex) -> Option<Vec<Vertex>> {
    let (mut a, mut b) = (base.clone(), base.clone());
    let fresh = base.iter().copied().max().unwrap_or(0) + 1;
    a[u] = fresh;
    b[v] = fresh;
    if !refine(g, g, &mut a, &mut b) {
        return None;
    }
    search(g, g, &a, &b)
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Orbit partition of the full automorphism group. Orbits are sorted and
/// listed by smallest member.
pub fn vertex_orbits(g: &Graph, limit: usize) -> Result<Vec<Vec<Vertex>>, GraphError> {
    check_limit(g, limit)?;
    let n = g.order();
    let (mut base, mut other) = (vec![0; n], vec![0; n]);
    refine(g, g, &mut base, &mut other);
    let mut parent: Vec<usize> = (0..n).collect();
    for u in 0..n {
        for v in u + 1..n {
            if base[u] != base[v] || find(&mut parent, u) == find(&mut parent, v) {
                continue;
            }
            if let Some(perm) = automorphism_mapping(g, &base, u, v) {
                for (i, &j) in perm.iter().enumerate() {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
    }
    let mut orbits: Vec<Vec<Vertex>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for v in 0..n {
        let r = find(&mut parent, v);
        if slot[r] == usize::MAX {
            slot[r] = orbits.len();
            orbits.push(Vec::new());
        }
        orbits[slot[r]].push(v);
    }
    Ok(orbits)
}

pub fn is_vertex_transitive(g: &Graph, limit: usize) -> Result<bool, GraphError> {
    Ok(vertex_orbits(g, limit)?.len() <= 1)
}
