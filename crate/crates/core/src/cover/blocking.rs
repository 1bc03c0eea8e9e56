use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::{blocking_lp, greedy_guarantee_holds, CoverError, Hypergraph};

pub const DEFAULT_EXACT_LIMIT: usize = 30;
const NODE_LIMIT: u64 = 50_000_000;

/// Repeatedly takes the vertex in the most unhit edges, lowest index first.
pub fn blocking_greedy(h: &Hypergraph) -> Vec<usize> {
    let mut hit = vec![false; h.edges().len()];
    let mut gain: Vec<usize> = (0..h.order()).map(|v| h.degree(v)).collect();
    let mut unhit = hit.len();
    let mut set = Vec::new();
    while unhit > 0 {
        let v = (0..h.order()).max_by_key(|&v| (gain[v], std::cmp::Reverse(v))).unwrap();
        set.push(v);
        for &e in h.incident(v) {
            if !hit[e] {
                hit[e] = true;
                unhit -= 1;
                for &w in &h.edges()[e] {
                    gain[w] -= 1;
                }
            }
        }
    }
    set
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GreedyReport {
    pub set: Vec<usize>,
    pub max_degree: usize,
    #[serde(serialize_with = "ser_ratio")]
    pub tau_star: BigRational,
    /// `(1 + log2 d) * tau*`, for display.
    pub guarantee: f64,
    /// `|set| <= (1 + log2 d) * tau*`, decided exactly.
    pub holds: bool,
}

fn ser_ratio<S: serde::Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub fn greedy_report(h: &Hypergraph) -> GreedyReport {
    let set = blocking_greedy(h);
    let tau_star = blocking_lp(h).objective;
    let d = h.max_degree();
    let log = if d == 0 { 0.0 } else { (d as f64).log2() };
    let guarantee = (1.0 + log) * tau_star.to_f64().unwrap_or(f64::NAN);
    let holds = greedy_guarantee_holds(set.len(), &tau_star, d as u64);
    GreedyReport { set, max_degree: d, tau_star, guarantee, holds }
}

struct Search<'a> {
    h: &'a Hypergraph,
    hits: Vec<u32>,
    chosen: Vec<usize>,
    best: Vec<usize>,
    nodes: u64,
}

impl Search<'_> {
    fn unhit(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.h.edges().len()).filter(|&e| self.hits[e] == 0)
    }

    fn toggle(&mut self, v: usize, on: bool) {
        for &e in self.h.incident(v) {
            if on { self.hits[e] += 1 } else { self.hits[e] -= 1 }
        }
    }

    fn go(&mut self, forbidden: &mut Vec<bool>) -> Result<(), CoverError> {
        self.nodes += 1;
        if self.nodes > NODE_LIMIT {
            return Err(CoverError::BudgetExceeded(format!("more than {NODE_LIMIT} search nodes")));
        }
        let Some(first) = self.unhit().next() else {
            if self.chosen.len() < self.best.len() {
                self.best = self.chosen.clone();
            }
            return Ok(());
        };
        // every remaining vertex hits at most `reach` unhit edges
        let unhit = self.unhit().count();
        let reach = (0..self.h.order())
            .filter(|&v| !forbidden[v])
            .map(|v| self.h.incident(v).iter().filter(|&&e| self.hits[e] == 0).count())
            .max()
            .unwrap_or(0);
        if reach == 0 || self.chosen.len() + unhit.div_ceil(reach) >= self.best.len() {
            return Ok(());
        }
        let options: Vec<usize> = self.h.edges()[first].iter().copied().filter(|&v| !forbidden[v]).collect();
        let mut newly = Vec::new();
        for v in options {
            self.chosen.push(v);
            self.toggle(v, true);
            self.go(forbidden)?;
            self.toggle(v, false);
            self.chosen.pop();
            // later branches exclude v
            forbidden[v] = true;
            newly.push(v);
        }
        for v in newly {
            forbidden[v] = false;
        }
        Ok(())
    }
}

/// Minimum blocking set by branch and bound on the first unhit edge. The
/// greedy solution is the incumbent and `ceil(tau*)` a global lower bound.
pub fn blocking_exact(h: &Hypergraph, limit: usize) -> Result<(usize, Vec<usize>), CoverError> {
    if h.order() > limit {
        return Err(CoverError::BudgetExceeded(format!("{} vertices exceed the limit {limit}", h.order())));
    }
    let greedy = blocking_greedy(h);
    let lower = blocking_lp(h).objective.ceil().to_integer().to_usize().unwrap_or(0);
    if greedy.len() <= lower {
        let mut g = greedy;
        g.sort_unstable();
        return Ok((g.len(), g));
    }
    let mut s = Search { h, hits: vec![0; h.edges().len()], chosen: Vec::new(), best: greedy, nodes: 0 };
    s.go(&mut vec![false; h.order()])?;
    let mut best = s.best;
    best.sort_unstable();
    Ok((best.len(), best))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::projective_plane;

    fn fano() -> Hypergraph {
        Hypergraph::new(7, projective_plane(2).unwrap().lines().to_vec()).unwrap()
    }

    fn brute_tau(h: &Hypergraph) -> usize {
        (0u32..1 << h.order())
            .filter(|mask| h.is_blocking(&(0..h.order()).filter(|&v| mask >> v & 1 == 1).collect::<Vec<_>>()))
            .map(u32::count_ones)
            .min()
            .unwrap() as usize
    }

    #[test]
    fn examples() {
        let single = Hypergraph::new(2, vec![vec![0, 1]]).unwrap();
        assert_eq!(blocking_exact(&single, 30).unwrap().0, 1);
        assert_eq!(blocking_exact(&fano(), 30).unwrap().0, 3);
        assert_eq!(brute_tau(&fano()), 3);
        assert_eq!(blocking_exact(&Hypergraph::new(4, vec![]).unwrap(), 30).unwrap(), (0, vec![]));

        let r = greedy_report(&fano());
        assert_eq!(r.set.len(), 3);
        assert!(r.holds && (r.guarantee - 6.03).abs() < 0.01);
        let r = greedy_report(&single);
        assert_eq!((r.set.len(), r.holds), (1, true));
        let star = Hypergraph::new(5, vec![vec![0, 1], vec![0, 2], vec![0, 3, 4]]).unwrap();
        assert_eq!(blocking_greedy(&star), vec![0]);
        assert!(matches!(blocking_exact(&Hypergraph::new(40, vec![]).unwrap(), 30), Err(CoverError::BudgetExceeded(_))));
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(64))]
        #[test]
        fn sandwich(n in 1usize..=10, raw in proptest::collection::vec(proptest::collection::vec(0usize..10, 1..5), 0..14)) {
            let edges: Vec<Vec<usize>> = raw.into_iter().map(|e| e.into_iter().map(|v| v % n).collect()).collect();
            let h = Hypergraph::new(n, edges).unwrap();
            let lp = blocking_lp(&h).objective;
            let (tau, w) = blocking_exact(&h, 30).unwrap();
            let g = greedy_report(&h);
            proptest::prop_assert!(h.is_blocking(&w) && h.is_blocking(&g.set));
            proptest::prop_assert_eq!(tau, brute_tau(&h));
            proptest::prop_assert!(lp <= BigRational::from_integer(tau.into()));
            proptest::prop_assert!(tau <= g.set.len());
            proptest::prop_assert!(g.holds);
        }
    }
}
