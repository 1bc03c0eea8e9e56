use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{GameError, WinTable};
use crate::constructions::{cover_projection, cover_vertex};
use crate::graph::{bfs_distances, girth, Graph, Vertex};

pub trait CopStrategy {
    fn name(&self) -> String;
    fn place(&mut self, g: &Graph) -> Result<Vec<Vertex>, GameError>;
    /// New cop multiset given the current one and the robber's position.
    fn step(&mut self, g: &Graph, cops: &[Vertex], robber: Vertex) -> Result<Vec<Vertex>, GameError>;
}

pub trait RobberStrategy {
    fn name(&self) -> String;
    fn place(&mut self, g: &Graph, cops: &[Vertex]) -> Result<Vertex, GameError>;
    /// Robber's next vertex (its own vertex to pass).
    fn step(&mut self, g: &Graph, cops: &[Vertex], robber: Vertex) -> Result<Vertex, GameError>;
}

/// Each cop steps to the lowest-index neighbour closer to the robber.
#[derive(Clone, Debug)]
pub struct GreedyCops {
    k: usize,
    placement: Option<Vec<Vertex>>,
}

impl GreedyCops {
    /// `k` cops, all placed on vertex 0.
    pub fn new(k: usize) -> Self {
        GreedyCops { k, placement: None }
    }

    pub fn placed(placement: Vec<Vertex>) -> Self {
        GreedyCops { k: placement.len(), placement: Some(placement) }
    }
}

impl CopStrategy for GreedyCops {
    fn name(&self) -> String {
        "greedy".into()
    }

    fn place(&mut self, _: &Graph) -> Result<Vec<Vertex>, GameError> {
        Ok(self.placement.clone().unwrap_or_else(|| vec![0; self.k]))
    }

    fn step(&mut self, g: &Graph, cops: &[Vertex], robber: Vertex) -> Result<Vec<Vertex>, GameError> {
        let dist = bfs_distances(g, robber);
        Ok(cops
            .iter()
            .map(|&c| match dist[c] {
                Some(d) if d > 0 => *g.neighbors(c).iter().find(|&&w| dist[w] == Some(d - 1)).unwrap(),
                _ => c,
            })
            .collect())
    }
}

#[derive(Clone, Debug)]
pub struct StationaryCops {
    placement: Vec<Vertex>,
}

impl StationaryCops {
    pub fn new(placement: Vec<Vertex>) -> Self {
        StationaryCops { placement }
    }
}

impl CopStrategy for StationaryCops {
    fn name(&self) -> String {
        "stationary".into()
    }

    fn place(&mut self, _: &Graph) -> Result<Vec<Vertex>, GameError> {
        Ok(self.placement.clone())
    }

    fn step(&mut self, _: &Graph, cops: &[Vertex], _: Vertex) -> Result<Vec<Vertex>, GameError> {
        Ok(cops.to_vec())
    }
}

/// Uniform random placement, then each cop moves to a uniform element of
/// its closed neighbourhood.
#[derive(Clone, Debug)]
pub struct RandomCops {
    k: usize,
    rng: ChaCha8Rng,
}

impl RandomCops {
    pub fn new(k: usize, seed: u64) -> Self {
        RandomCops { k, rng: ChaCha8Rng::seed_from_u64(seed) }
    }
}

impl CopStrategy for RandomCops {
    fn name(&self) -> String {
        "random".into()
    }

    fn place(&mut self, g: &Graph) -> Result<Vec<Vertex>, GameError> {
        Ok((0..self.k).map(|_| self.rng.random_range(0..g.order())).collect())
    }

    fn step(&mut self, g: &Graph, cops: &[Vertex], _: Vertex) -> Result<Vec<Vertex>, GameError> {
        Ok(cops
            .iter()
            .map(|&c| {
                let i = self.rng.random_range(0..=g.degree(c));
                if i == 0 { c } else { g.neighbors(c)[i - 1] }
            })
            .collect())
    }
}

/// Plays a solved winning strategy.
#[derive(Clone, Debug)]
pub struct TableCops {
    table: Arc<WinTable>,
}

impl TableCops {
    pub fn new(table: Arc<WinTable>) -> Self {
        TableCops { table }
    }
}

impl CopStrategy for TableCops {
    fn name(&self) -> String {
        "table".into()
    }

    fn place(&mut self, _: &Graph) -> Result<Vec<Vertex>, GameError> {
        self.table
            .start_position()
            .ok_or_else(|| GameError::HypothesisViolated(format!("{} cops have no winning placement", self.table.cops())))
    }

    fn step(&mut self, _: &Graph, cops: &[Vertex], robber: Vertex) -> Result<Vec<Vertex>, GameError> {
        Ok(self.table.cop_reply(cops, robber).unwrap_or_else(|| cops.to_vec()))
    }
}

#[derive(Clone, Debug)]
pub struct StationaryRobber {
    at: Option<Vertex>,
}

impl StationaryRobber {
    /// Sits on `at`, or on the highest-index free vertex when `None`.
    pub fn new(at: Option<Vertex>) -> Self {
        StationaryRobber { at }
    }
}

impl RobberStrategy for StationaryRobber {
    fn name(&self) -> String {
        "stationary".into()
    }

    fn place(&mut self, g: &Graph, cops: &[Vertex]) -> Result<Vertex, GameError> {
        Ok(self.at.unwrap_or_else(|| g.vertices().rev().find(|v| !cops.contains(v)).unwrap_or(0)))
    }

    fn step(&mut self, _: &Graph, _: &[Vertex], robber: Vertex) -> Result<Vertex, GameError> {
        Ok(robber)
    }
}

/// Keeps to vertices of degree at least `D`, always moving to the
/// lowest-index such neighbour that is neither occupied by nor adjacent to
/// a cop.
#[derive(Clone, Debug)]
pub struct EvasionRobber {
    name: &'static str,
    allowed: Vec<bool>,
}

fn threatened(g: &Graph, cops: &[Vertex], v: Vertex) -> bool {
    cops.iter().any(|&c| c == v || g.has_edge(c, v))
}

impl EvasionRobber {
    pub fn allowed(&self, v: Vertex) -> bool {
        self.allowed[v]
    }
}

impl RobberStrategy for EvasionRobber {
    fn name(&self) -> String {
        self.name.into()
    }

    fn place(&mut self, g: &Graph, cops: &[Vertex]) -> Result<Vertex, GameError> {
        g.vertices()
            .find(|&v| self.allowed[v] && !threatened(g, cops, v))
            .ok_or_else(|| GameError::HypothesisViolated(format!("every high-degree vertex is guarded by {cops:?}")))
    }

    fn step(&mut self, g: &Graph, cops: &[Vertex], robber: Vertex) -> Result<Vertex, GameError> {
        if let Some(&w) = g.neighbors(robber).iter().find(|&&w| self.allowed[w] && !threatened(g, cops, w)) {
            return Ok(w);
        }
        if !threatened(g, cops, robber) {
            return Ok(robber);
        }
        Err(GameError::HypothesisViolated(format!("no safe move from {robber} against {cops:?}")))
    }
}

/// Evasion on a `K_{2,t}`-free graph restricted to degrees `>= d`.
pub fn evasion_lowdeg(g: &Graph, t: usize, d: usize) -> Result<EvasionRobber, GameError> {
    if t == 0 || !g.is_k2t_free(t) {
        return Err(GameError::HypothesisViolated(format!("graph is not K_{{2,{t}}}-free")));
    }
    Ok(EvasionRobber { name: "evasion-lowdeg", allowed: g.vertices().map(|v| g.degree(v) >= d).collect() })
}

/// Evasion on a graph of girth at least 5 restricted to degrees `>= d`.
pub fn evasion_girth5(g: &Graph, d: usize) -> Result<EvasionRobber, GameError> {
    if girth(g).finite().is_some_and(|x| x < 5) {
        return Err(GameError::HypothesisViolated("girth is below 5".into()));
    }
    Ok(EvasionRobber { name: "evasion-girth5", allowed: g.vertices().map(|v| g.degree(v) >= d).collect() })
}

/// Evades using a solved table: stays out of cop-winning positions when it
/// can, preferring the lowest index.
#[derive(Clone, Debug)]
pub struct TableRobber {
    table: Arc<WinTable>,
}

impl TableRobber {
    pub fn new(table: Arc<WinTable>) -> Self {
        TableRobber { table }
    }

    fn check(&self, cops: &[Vertex]) -> Result<(), GameError> {
        if cops.len() == self.table.cops() {
            Ok(())
        } else {
            Err(GameError::InvalidParameter(format!("table solved for {} cops, facing {}", self.table.cops(), cops.len())))
        }
    }
}

impl RobberStrategy for TableRobber {
    fn name(&self) -> String {
        "table".into()
    }

    fn place(&mut self, g: &Graph, cops: &[Vertex]) -> Result<Vertex, GameError> {
        self.check(cops)?;
        let free = g.vertices().find(|&r| !self.table.cop_turn_win(cops, r));
        Ok(free.or_else(|| g.vertices().find(|v| !cops.contains(v))).unwrap_or(0))
    }

    fn step(&mut self, g: &Graph, cops: &[Vertex], robber: Vertex) -> Result<Vertex, GameError> {
        self.check(cops)?;
        let mut options: Vec<Vertex> = g.neighbors(robber).to_vec();
        options.push(robber);
        options.sort_unstable();
        Ok(options.into_iter().find(|&r| !cops.contains(&r) && !self.table.cop_turn_win(cops, r)).unwrap_or(robber))
    }
}

fn require_cover_hypotheses(g: &Graph) -> Result<(), GameError> {
    if !g.is_connected() {
        return Err(GameError::Disconnected);
    }
    if g.is_bipartite() {
        return Err(GameError::NotNonBipartite);
    }
    Ok(())
}

/// A robber strategy for `G` played on the double cover `B(G)`: cops are
/// projected to `G`, and a move `u -> v` there becomes `(u,a) -> (v,1-a)`.
pub struct LiftedRobber {
    base: Graph,
    inner: Box<dyn RobberStrategy>,
}

pub fn lift_robber(g: &Graph, inner: Box<dyn RobberStrategy>) -> Result<LiftedRobber, GameError> {
    require_cover_hypotheses(g)?;
    Ok(LiftedRobber { base: g.clone(), inner })
}

fn project(n: usize, cops: &[Vertex]) -> Vec<Vertex> {
    let mut p: Vec<Vertex> = cops.iter().map(|&c| cover_projection(n, c).0).collect();
    p.sort_unstable();
    p
}

impl RobberStrategy for LiftedRobber {
    fn name(&self) -> String {
        format!("lifted-{}", self.inner.name())
    }

    fn place(&mut self, _: &Graph, cops: &[Vertex]) -> Result<Vertex, GameError> {
        let n = self.base.order();
        let v = self.inner.place(&self.base, &project(n, cops))?;
        Ok(cover_vertex(n, v, 0))
    }

    fn step(&mut self, _: &Graph, cops: &[Vertex], robber: Vertex) -> Result<Vertex, GameError> {
        let n = self.base.order();
        let (u, a) = cover_projection(n, robber);
        let v = self.inner.step(&self.base, &project(n, cops), u)?;
        Ok(if v == u { robber } else { cover_vertex(n, v, 1 - a) })
    }
}

/// A cop strategy for `G` played on `B(G)` with two cops per original cop,
/// one on each sheet; the pair swaps sheets whenever it moves.
pub struct DoubledCops {
    base: Graph,
    inner: Box<dyn CopStrategy>,
    positions: Vec<Vertex>,
}

pub fn double_cops(g: &Graph, inner: Box<dyn CopStrategy>) -> Result<DoubledCops, GameError> {
    require_cover_hypotheses(g)?;
    Ok(DoubledCops { base: g.clone(), inner, positions: Vec::new() })
}

impl DoubledCops {
    fn lifted(&self) -> Vec<Vertex> {
        let n = self.base.order();
        self.positions.iter().flat_map(|&c| [cover_vertex(n, c, 0), cover_vertex(n, c, 1)]).collect()
    }
}

impl CopStrategy for DoubledCops {
    fn name(&self) -> String {
        format!("doubled-{}", self.inner.name())
    }

    fn place(&mut self, _: &Graph) -> Result<Vec<Vertex>, GameError> {
        self.positions = self.inner.place(&self.base)?;
        self.positions.sort_unstable();
        Ok(self.lifted())
    }

    fn step(&mut self, _: &Graph, _: &[Vertex], robber: Vertex) -> Result<Vec<Vertex>, GameError> {
        let u = cover_projection(self.base.order(), robber).0;
        self.positions = self.inner.step(&self.base, &self.positions, u)?;
        self.positions.sort_unstable();
        Ok(self.lifted())
    }
}

#[cfg(test)]
mod tests {
    use super::super::{simulate, solve, Outcome, DEFAULT_BUDGET};
    use super::*;
    use crate::constructions::{double_cover, incidence_graph, projective_plane};

    fn heawood() -> Graph {
        incidence_graph(&projective_plane(2).unwrap())
    }

    #[test]
    fn lowdeg_evasion_survives_one_cop_on_heawood() {
        let g = heawood();
        for start in g.vertices() {
            let mut robber = evasion_lowdeg(&g, 2, 3).unwrap();
            let t = simulate(&g, &mut GreedyCops::placed(vec![start]), &mut robber, 200).unwrap();
            assert_eq!(t.outcome, Outcome::Survived { horizon: 200 });
        }
        for seed in 0..20 {
            let mut robber = evasion_lowdeg(&g, 2, 3).unwrap();
            let t = simulate(&g, &mut RandomCops::new(1, seed), &mut robber, 200).unwrap();
            assert!(!t.captured());
        }
    }

    #[test]
    fn girth5_evasion_survives_two_cops_on_petersen() {
        let g = Graph::petersen();
        for (a, b) in [(0, 0), (0, 5), (3, 7), (9, 9)] {
            let mut robber = evasion_girth5(&g, 3).unwrap();
            let t = simulate(&g, &mut GreedyCops::placed(vec![a, b]), &mut robber, 1000).unwrap();
            assert_eq!(t.outcome, Outcome::Survived { horizon: 1000 });
        }
    }

    #[test]
    fn evasion_never_enters_low_degree_vertices() {
        // the two pendant vertices have degree 1 and are excluded by D = 3
        let g = Graph::petersen().with_pendant(&[0]).with_pendant(&[4]);
        for seed in 0..10 {
            let mut robber = evasion_girth5(&g, 3).unwrap();
            let t = simulate(&g, &mut RandomCops::new(1, seed), &mut robber, 300).unwrap();
            assert!(t.rounds.iter().all(|p| g.degree(p.robber) >= 3));
        }
    }

    #[test]
    fn table_strategies_are_optimal_on_petersen() {
        let g = Graph::petersen();
        let win = Arc::new(solve(&g, 3, DEFAULT_BUDGET).unwrap());
        let lose = Arc::new(solve(&g, 2, DEFAULT_BUDGET).unwrap());
        let t = simulate(&g, &mut TableCops::new(win.clone()), &mut TableRobber::new(win), 100).unwrap();
        assert!(t.captured());
        let t = simulate(&g, &mut GreedyCops::new(2), &mut TableRobber::new(lose), 500).unwrap();
        assert!(!t.captured());
    }

    #[test]
    fn cover_strategies() {
        let k3 = Graph::complete(3);
        let b = double_cover(&k3);
        let win = Arc::new(solve(&k3, 1, DEFAULT_BUDGET).unwrap());
        let mut cops = double_cops(&k3, Box::new(TableCops::new(win))).unwrap();
        let t = simulate(&b, &mut cops, &mut StationaryRobber::new(Some(4)), 20).unwrap();
        assert!(t.captured());
        assert!(t.rounds[0].cops.len() == 2);

        let p = Graph::petersen();
        let bp = double_cover(&p);
        let lose = Arc::new(solve(&p, 2, DEFAULT_BUDGET).unwrap());
        let mut robber = lift_robber(&p, Box::new(TableRobber::new(lose))).unwrap();
        let t = simulate(&bp, &mut GreedyCops::new(2), &mut robber, 300).unwrap();
        assert!(!t.captured());

        assert!(matches!(lift_robber(&Graph::cycle(4), Box::new(StationaryRobber::new(None))), Err(GameError::NotNonBipartite)));
    }
}
