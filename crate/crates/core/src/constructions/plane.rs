use super::field::FiniteField;
use super::{ConstructionError, VertexLabel};
use crate::graph::Graph;

/// The Desarguesian plane `PG(2,q)`.
///
/// Points are the 1-dimensional subspaces of `GF(q)^3`, stored as triples
/// whose first nonzero coordinate is 1, in lexicographic order. Line `i` is
/// the set of points orthogonal to the triple of point `i`.
#[derive(Clone, Debug)]
pub struct ProjectivePlane {
    q: u32,
    field: FiniteField,
    points: Vec<[u32; 3]>,
    lines: Vec<Vec<usize>>,
    lines_through: Vec<Vec<usize>>,
}

impl ProjectivePlane {
    pub fn new(q: u64) -> Result<Self, ConstructionError> {
        let field = FiniteField::new(q).ok_or(ConstructionError::NotAPrimePower(q))?;
        let qq = field.order();
        let mut points = Vec::new();
        for a in 0..qq {
            for b in 0..qq {
                for c in 0..qq {
                    let first = [a, b, c].into_iter().find(|&x| x != 0);
                    if first == Some(1) {
                        points.push([a, b, c]);
                    }
                }
            }
        }
        let lines: Vec<Vec<usize>> = points
            .iter()
            .map(|l| (0..points.len()).filter(|&i| field.dot(l, &points[i]) == 0).collect())
            .collect();
        let mut lines_through = vec![Vec::new(); points.len()];
        for (li, line) in lines.iter().enumerate() {
            for &p in line {
                lines_through[p].push(li);
            }
        }
        let plane = ProjectivePlane { q: qq, field, points, lines, lines_through };
        plane.verify_axioms().map_err(ConstructionError::Internal)?;
        Ok(plane)
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    /// `q^2 + q + 1`.
    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    pub fn point(&self, i: usize) -> [u32; 3] {
        self.points[i]
    }

    pub fn points(&self) -> &[[u32; 3]] {
        &self.points
    }

    /// Sorted point indices of each line.
    pub fn lines(&self) -> &[Vec<usize>] {
        &self.lines
    }

    pub fn lines_through(&self, point: usize) -> &[usize] {
        &self.lines_through[point]
    }

    /// Exhaustive check of the counting conditions and of the
    /// two-points-one-line axiom.
    pub fn verify_axioms(&self) -> Result<(), String> {
        let q = self.q as usize;
        let n = q * q + q + 1;
        if self.points.len() != n || self.lines.len() != n {
            return Err(format!("expected {n} points and lines"));
        }
        if let Some(l) = self.lines.iter().position(|l| l.len() != q + 1) {
            return Err(format!("line {l} has {} points", self.lines[l].len()));
        }
        if let Some(p) = self.lines_through.iter().position(|l| l.len() != q + 1) {
            return Err(format!("point {p} is on {} lines", self.lines_through[p].len()));
        }
        let mut on_line = vec![vec![false; n]; n];
        for (li, line) in self.lines.iter().enumerate() {
            for &p in line {
                on_line[li][p] = true;
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                let common = self.lines_through[a].iter().filter(|&&l| on_line[l][b]).count();
                if common != 1 {
                    return Err(format!("points {a} and {b} share {common} lines"));
                }
            }
        }
        Ok(())
    }
}

pub fn projective_plane(q: u64) -> Result<ProjectivePlane, ConstructionError> {
    ProjectivePlane::new(q)
}

/// Point-line incidence graph: points are vertices `0..N`, lines are
/// `N..2N` with `N = q^2+q+1`.
pub fn incidence_graph(plane: &ProjectivePlane) -> Graph {
    let n = plane.num_points();
    let edges = plane.lines().iter().enumerate().flat_map(|(li, line)| line.iter().map(move |&p| (p, n + li)));
    Graph::from_edges(2 * n, edges).expect("incidences are distinct")
}

pub fn incidence_labels(plane: &ProjectivePlane) -> Vec<VertexLabel> {
    let pts = plane.points().iter().map(|&c| VertexLabel::Point { coords: c });
    let lines = plane.points().iter().map(|&c| VertexLabel::Line { coords: c });
    pts.chain(lines).collect()
}

/// Orthogonal-polarity graph on the points of `PG(2,q)`: `x ~ y` iff
/// `x . y = 0` and `x != y`. Absolute points have degree `q`, the rest
/// `q + 1`.
pub fn polarity_graph(q: u64) -> Result<Graph, ConstructionError> {
    let plane = ProjectivePlane::new(q)?;
    Ok(polarity_graph_of(&plane))
}

pub fn polarity_graph_of(plane: &ProjectivePlane) -> Graph {
    // line i is the polar of point i
    let edges = plane
        .lines()
        .iter()
        .enumerate()
        .flat_map(|(x, line)| line.iter().filter(move |&&y| y > x).map(move |&y| (x, y)));
    Graph::from_edges(plane.num_points(), edges).expect("polarity is symmetric")
}

pub fn polarity_labels(plane: &ProjectivePlane) -> Vec<VertexLabel> {
    plane.points().iter().map(|&c| VertexLabel::Point { coords: c }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{metrics, Extent};

    #[test]
    fn plane_sizes() {
        let fano = projective_plane(2).unwrap();
        assert_eq!(fano.num_points(), 7);
        assert!(fano.lines().iter().all(|l| l.len() == 3));
        let p3 = projective_plane(3).unwrap();
        assert_eq!((p3.num_points(), p3.lines()[0].len()), (13, 4));
        let p4 = projective_plane(4).unwrap();
        assert_eq!(p4.num_points(), 21);
        assert!(matches!(projective_plane(6), Err(ConstructionError::NotAPrimePower(6))));
        assert!(matches!(projective_plane(1), Err(ConstructionError::NotAPrimePower(1))));
    }

    #[test]
    fn all_planes_up_to_sixteen_are_valid() {
        for q in crate::constructions::prime_powers_up_to(16) {
            assert!(projective_plane(q).unwrap().verify_axioms().is_ok(), "q={q}");
        }
    }

    #[test]
    fn heawood_from_fano() {
        let g = incidence_graph(&projective_plane(2).unwrap());
        let m = metrics(&g);
        assert_eq!((g.order(), g.size()), (14, 21));
        assert_eq!(m.girth, Extent::Finite(6));
        assert_eq!(m.diameter, Extent::Finite(3));
        assert_eq!(g.regular_degree(), Some(3));
        assert!(g.is_k2t_free(2));
    }

    #[test]
    fn incidence_of_pg23() {
        let plane = projective_plane(3).unwrap();
        let g = incidence_graph(&plane);
        assert_eq!((g.order(), g.size()), (26, 52));
        assert_eq!(g.regular_degree(), Some(4));
        let sides = g.bipartition().unwrap();
        assert_eq!(sides.iter().filter(|&&s| s == 0).count(), 13);
        assert_eq!(incidence_labels(&plane).len(), 26);
    }

    #[test]
    fn polarity_graphs() {
        let g2 = polarity_graph(2).unwrap();
        assert_eq!((g2.order(), g2.size()), (7, 9));
        assert_eq!(g2.min_degree(), 2);
        assert_eq!(g2.max_degree(), 3);
        for q in [3, 4, 5, 7, 8, 9] {
            let g = polarity_graph(q).unwrap();
            let q = q as usize;
            assert_eq!(g.order(), q * q + q + 1);
            assert!(g.degrees().iter().all(|&d| d == q || d == q + 1));
            assert!(g.is_k2t_free(2));
            assert_eq!(metrics(&g).diameter, Extent::Finite(2));
        }
    }
}
