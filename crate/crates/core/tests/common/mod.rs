//! Independent oracles and sample generators shared by integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use meyniel_core::constructions::{
    double_cover, factorize, incidence_graph, lex_product, polarity_graph, projective_plane, strip_factors,
};
use meyniel_core::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random connected graphs: order uniform in `1..=max_n`, edge density
/// uniform in `[0.2, 0.8]`, resampled until connected.
pub fn random_connected(count: usize, max_n: usize, seed: u64) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.random_range(1..=max_n);
        let p: f64 = rng.random_range(0.2..0.8);
        let edges: Vec<(usize, usize)> =
            (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.random_bool(p)).collect();
        let g = Graph::from_edges(n, edges).unwrap();
        if g.is_connected() {
            out.push(g);
        }
    }
    out
}

/// Uniform random graph on `n` vertices, connected or not.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let edges: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.random_bool(p)).collect();
    Graph::from_edges(n, edges).unwrap()
}

fn rooted_code(g: &Graph, v: usize, parent: Option<usize>) -> String {
    let mut kids: Vec<String> =
        g.neighbors(v).iter().filter(|&&w| Some(w) != parent).map(|&w| rooted_code(g, w, Some(v))).collect();
    kids.sort();
    format!("({})", kids.concat())
}

/// AHU code of a free tree, rooted at its centre(s).
pub fn tree_code(g: &Graph) -> String {
    let n = g.order();
    if n <= 2 {
        return n.to_string();
    }
    let mut deg: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut layer: Vec<usize> = g.vertices().filter(|&v| deg[v] == 1).collect();
    let mut left = n;
    while left > 2 {
        left -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            deg[v] = 0;
        }
        for &v in &layer {
            for &w in g.neighbors(v) {
                if deg[w] > 0 {
                    deg[w] -= 1;
                    if deg[w] == 1 {
                        next.push(w);
                    }
                }
            }
        }
        layer = next;
    }
    layer.iter().map(|&c| rooted_code(g, c, None)).min().unwrap()
}

/// One representative per isomorphism class of trees on `n` vertices, grown
/// leaf by leaf and deduplicated by AHU code.
pub fn trees(n: usize) -> Vec<Graph> {
    let mut level = vec![Graph::empty(1)];
    for size in 2..=n {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for t in &level {
            for v in t.vertices() {
                let mut edges: Vec<(usize, usize)> = t.edges().collect();
                edges.push((v, size - 1));
                let g = Graph::from_edges(size, edges).unwrap();
                if seen.insert(tree_code(&g)) {
                    next.push(g);
                }
            }
        }
        level = next;
    }
    if n == 0 {
        Vec::new()
    } else {
        level
    }
}

/// Cop-win test by dismantling: repeatedly delete a vertex whose closed
/// neighbourhood lies inside another's.
pub fn dismantlable(g: &Graph) -> bool {
    let n = g.order();
    let mut alive = vec![true; n];
    let closed = |u: usize, alive: &[bool]| -> Vec<usize> {
        let mut s: Vec<usize> = g.neighbors(u).iter().copied().filter(|&w| alive[w]).collect();
        s.push(u);
        s
    };
    let mut left = n;
    'outer: while left > 1 {
        for u in 0..n {
            if !alive[u] {
                continue;
            }
            let nu = closed(u, &alive);
            for &v in g.neighbors(u) {
                if alive[v] && nu.iter().all(|&w| w == v || g.has_edge(v, w)) {
                    alive[u] = false;
                    left -= 1;
                    continue 'outer;
                }
            }
        }
        return false;
    }
    true
}

pub fn heawood() -> Graph {
    incidence_graph(&projective_plane(2).unwrap())
}

/// Connected circulants `C_n(S)` for `n` in the range and every nonempty
/// jump set `S ⊆ {1..n/2}`.
pub fn circulants(ns: std::ops::RangeInclusive<usize>) -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for n in ns {
        let half = n / 2;
        for mask in 1u32..(1 << half) {
            let jumps: Vec<usize> = (1..=half).filter(|j| mask >> (j - 1) & 1 == 1).collect();
            let g = Graph::circulant(n, &jumps);
            if g.is_connected() {
                out.push((format!("C{n}{jumps:?}"), g));
            }
        }
    }
    out
}

/// Named construction corpus. Every member is connected, has minimum degree
/// at least 1 and a cop number the exact solver reaches quickly.
pub fn corpus() -> Vec<(String, Graph)> {
    let mut out: Vec<(String, Graph)> = Vec::new();
    for n in 3..=12 {
        out.push((format!("C{n}"), Graph::cycle(n)));
    }
    for n in 2..=6 {
        out.push((format!("K{n}"), Graph::complete(n)));
        out.push((format!("P{n}"), Graph::path(n)));
    }
    out.push(("K3,3".into(), Graph::complete_bipartite(3, 3)));
    out.push(("K2,4".into(), Graph::complete_bipartite(2, 4)));
    out.push(("star5".into(), Graph::star(5)));
    out.push(("petersen".into(), Graph::petersen()));
    out.push(("heawood".into(), heawood()));
    for q in [2, 3] {
        out.push((format!("polarity{q}"), polarity_graph(q).unwrap()));
    }
    let host = incidence_graph(&projective_plane(3).unwrap());
    let f = factorize(&host, 1).unwrap();
    out.push(("strip3_1".into(), strip_factors(&host, &f, 1, 0.5).unwrap()));
    for (name, g) in [("C5", Graph::cycle(5)), ("C7", Graph::cycle(7)), ("K4", Graph::complete(4))] {
        out.push((format!("B({name})"), double_cover(&g)));
    }
    out.push(("B(petersen)".into(), double_cover(&Graph::petersen())));
    out.push(("C5•K2".into(), lex_product(&Graph::cycle(5), &Graph::complete(2))));
    out.push(("C6•2K1".into(), lex_product(&Graph::cycle(6), &Graph::empty(2))));
    for (name, g) in circulants(5..=9) {
        out.push((name, g));
    }
    out
}

pub fn binomial(n: u64, k: u64) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}
