//! Exact cop numbers and simulation of explicit strategies.

mod solver;
mod strategies;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Vertex};

pub use solver::{cop_number, k_cops_win, solve, transition_estimate, MultisetIndex, WinTable, DEFAULT_BUDGET};
pub use strategies::{
    double_cops, evasion_girth5, evasion_lowdeg, lift_robber, CopStrategy, DoubledCops, EvasionRobber, GreedyCops,
    LiftedRobber, RandomCops, RobberStrategy, StationaryCops, StationaryRobber, TableCops, TableRobber,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GameError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("solver needs about {needed} transitions, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("cops do not win with at most {kmax} cops")]
    ExceedsKmax { kmax: usize },
    #[error("illegal move: {0}")]
    IllegalMove(String),
    #[error("strategy hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("graph is bipartite; its double cover is disconnected")]
    NotNonBipartite,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Position {
    pub cops: Vec<Vertex>,
    pub robber: Vertex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Outcome {
    Captured { round: usize },
    Survived { horizon: usize },
}

/// Positions after placement (round 0) and after each round; a capture by a
/// cop move is recorded with the robber still in place.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    pub rounds: Vec<Position>,
    pub outcome: Outcome,
}

impl Trace {
    pub fn captured(&self) -> bool {
        matches!(self.outcome, Outcome::Captured { .. })
    }
}

/// Whether the cops can move from `from` to `to` in one round, each cop
/// stepping to a neighbour or staying.
pub fn legal_cop_move(g: &Graph, from: &[Vertex], to: &[Vertex]) -> bool {
    if from.len() != to.len() {
        return false;
    }
    fn augment(u: usize, from: &[Vertex], to: &[Vertex], g: &Graph, seen: &mut [bool], mate: &mut [Option<usize>]) -> bool {
        for j in 0..to.len() {
            if !seen[j] && (from[u] == to[j] || g.has_edge(from[u], to[j])) {
                seen[j] = true;
                if mate[j].is_none_or(|w| augment(w, from, to, g, seen, mate)) {
                    mate[j] = Some(u);
                    return true;
                }
            }
        }
        false
    }
    let mut mate = vec![None; to.len()];
    (0..from.len()).all(|u| augment(u, from, to, g, &mut vec![false; to.len()], &mut mate))
}

fn check_cops(g: &Graph, cops: &[Vertex], k: Option<usize>) -> Result<(), GameError> {
    if let Some(&v) = cops.iter().find(|&&v| v >= g.order()) {
        return Err(GameError::IllegalMove(format!("cop at {v} is off the graph")));
    }
    match k {
        Some(k) if cops.len() != k => Err(GameError::IllegalMove(format!("{} cops instead of {k}", cops.len()))),
        _ => Ok(()),
    }
}

/// Plays the cops' strategy against the robber's for at most `horizon`
/// rounds. Cops place first, the robber places seeing them, then each round
/// the cops move and the robber replies.
pub fn simulate(g: &Graph, cops: &mut dyn CopStrategy, robber: &mut dyn RobberStrategy, horizon: usize) -> Result<Trace, GameError> {
    let mut c = cops.place(g)?;
    c.sort_unstable();
    check_cops(g, &c, None)?;
    let k = c.len();
    let mut r = robber.place(g, &c)?;
    if r >= g.order() {
        return Err(GameError::IllegalMove(format!("robber placed off the graph at {r}")));
    }
    let mut rounds = vec![Position { cops: c.clone(), robber: r }];
    if c.contains(&r) {
        return Ok(Trace { rounds, outcome: Outcome::Captured { round: 0 } });
    }
    for round in 1..=horizon {
        let mut next = cops.step(g, &c, r)?;
        next.sort_unstable();
        check_cops(g, &next, Some(k))?;
        if !legal_cop_move(g, &c, &next) {
            return Err(GameError::IllegalMove(format!("cops {c:?} -> {next:?}")));
        }
        c = next;
        if c.contains(&r) {
            rounds.push(Position { cops: c, robber: r });
            return Ok(Trace { rounds, outcome: Outcome::Captured { round } });
        }
        let nr = robber.step(g, &c, r)?;
        if nr >= g.order() || (nr != r && !g.has_edge(r, nr)) {
            return Err(GameError::IllegalMove(format!("robber {r} -> {nr}")));
        }
        r = nr;
        rounds.push(Position { cops: c.clone(), robber: r });
        if c.contains(&r) {
            return Ok(Trace { rounds, outcome: Outcome::Captured { round } });
        }
    }
    Ok(Trace { rounds, outcome: Outcome::Survived { horizon } })
}
