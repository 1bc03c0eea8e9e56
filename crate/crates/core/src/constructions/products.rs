use super::VertexLabel;
use crate::graph::{Graph, Vertex};

/// Lexicographic product `G • H`: vertex `(u, v)` is `u * |H| + v`, and
/// `(u,v) ~ (x,y)` iff `u ~ x` in `G`, or `u = x` and `v ~ y` in `H`.
pub fn lex_product(g: &Graph, h: &Graph) -> Graph {
    let m = h.order();
    let id = |u: Vertex, v: Vertex| u * m + v;
    let mut edges = Vec::new();
    for (u, x) in g.edges() {
        for v in 0..m {
            for y in 0..m {
                edges.push((id(u, v), id(x, y)));
            }
        }
    }
    for u in g.vertices() {
        edges.extend(h.edges().map(|(v, y)| (id(u, v), id(u, y))));
    }
    Graph::from_edges(g.order() * m, edges).expect("product edges are distinct")
}

pub fn lex_product_labels(g: &Graph, h: &Graph) -> Vec<VertexLabel> {
    g.vertices().flat_map(|u| h.vertices().map(move |v| VertexLabel::Pair { g: u, h: v })).collect()
}

/// Bipartite double cover `G × K2`: vertex `(v, a)` is `a * n + v`.
pub fn double_cover(g: &Graph) -> Graph {
    let n = g.order();
    let edges = g.edges().flat_map(|(u, v)| [(u, n + v), (n + u, v)]);
    Graph::from_edges(2 * n, edges).expect("cover edges are distinct")
}

/// The covering map `(v, a) -> v`.
#[inline]
pub fn cover_projection(n: usize, x: Vertex) -> (Vertex, u8) {
    (x % n, (x / n) as u8)
}

#[inline]
pub fn cover_vertex(n: usize, v: Vertex, sheet: u8) -> Vertex {
    sheet as usize * n + v
}

pub fn double_cover_labels(g: &Graph) -> Vec<VertexLabel> {
    (0..2u8).flat_map(|a| g.vertices().map(move |v| VertexLabel::Sheet { v, sheet: a })).collect()
}
