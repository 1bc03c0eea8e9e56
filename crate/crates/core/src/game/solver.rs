//! Retrograde analysis of the k-cop game. Cop positions are multisets
//! ranked with the combinatorial number system.

use super::GameError;
use crate::graph::{Graph, Vertex};

pub const DEFAULT_BUDGET: u64 = 500_000_000;

/// Ranks sorted `k`-multisets over `0..n` densely in `0..C(n+k-1, k)`.
#[derive(Clone, Debug)]
pub struct MultisetIndex {
    n: usize,
    k: usize,
    /// `binom[a][b] = C(a, b)` for `a < n + k`, `b <= k`.
    binom: Vec<Vec<u64>>,
    /// All multisets, `k` entries each, in rank order.
    table: Vec<u32>,
}

impl MultisetIndex {
    pub fn count(n: usize, k: usize) -> Option<u64> {
        // C(n+k-1, k), computed incrementally; None on overflow
        if n == 0 {
            return Some(u64::from(k == 0));
        }
        let mut c: u128 = 1;
        for i in 0..k as u128 {
            c = c * (n as u128 + i) / (i + 1);
            if c > u64::MAX as u128 {
                return None;
            }
        }
        Some(c as u64)
    }

    fn new(n: usize, k: usize) -> Self {
        let rows = n + k;
        let mut binom = vec![vec![0u64; k + 1]; rows];
        for a in 0..rows {
            binom[a][0] = 1;
            for b in 1..=k.min(a) {
                binom[a][b] = binom[a - 1][b - 1] + if b < a { binom[a - 1][b] } else { 0 };
            }
        }
        let total = Self::count(n, k).unwrap() as usize;
        let mut idx = MultisetIndex { n, k, binom, table: vec![0; total * k] };
        let mut cur = vec![0u32; k];
        if k > 0 && n > 0 {
            loop {
                let r = idx.rank(&cur);
                idx.table[r * k..(r + 1) * k].copy_from_slice(&cur);
                // next nondecreasing tuple
                let mut i = k;
                while i > 0 && cur[i - 1] as usize == n - 1 {
                    i -= 1;
                }
                if i == 0 {
                    break;
                }
                let v = cur[i - 1] + 1;
                cur[i - 1..].fill(v);
            }
        }
        idx
    }

    pub fn len(&self) -> usize {
        self.table.len().checked_div(self.k).unwrap_or(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Rank of a sorted multiset.
    #[inline]
    pub fn rank(&self, sorted: &[u32]) -> usize {
        let mut r = 0;
        for (i, &c) in sorted.iter().enumerate() {
            r += self.binom[c as usize + i][i + 1];
        }
        r as usize
    }

    #[inline]
    pub fn get(&self, rank: usize) -> &[u32] {
        &self.table[rank * self.k..(rank + 1) * self.k]
    }

    pub fn order(&self) -> usize {
        self.n
    }
}

/// Solved game: which positions are won by the cops, with a cop move for
/// every winning cop-turn position.
#[derive(Clone, Debug)]
pub struct WinTable {
    n: usize,
    k: usize,
    index: MultisetIndex,
    /// Cops to move, indexed `rank * n + robber`.
    cop_win: Vec<bool>,
    /// Robber to move.
    robber_win: Vec<bool>,
    /// Rank of the cops' reply from each winning cop-turn position.
    cop_move: Vec<u32>,
    start: Option<usize>,
}

fn estimate(g: &Graph, k: usize) -> u128 {
    let states = MultisetIndex::count(g.order(), k).map_or(u128::MAX, |m| m as u128 * g.order() as u128);
    let branch = (g.max_degree() as u128 + 1).saturating_pow(k as u32);
    states.saturating_mul(branch).saturating_add(states.saturating_mul(g.max_degree() as u128 + 1))
}

/// Transitions the solver would touch for `k` cops.
pub fn transition_estimate(g: &Graph, k: usize) -> u128 {
    estimate(g, k)
}

fn closed_neighborhoods(g: &Graph) -> Vec<Vec<u32>> {
    g.vertices()
        .map(|v| {
            let mut nb: Vec<u32> = std::iter::once(v).chain(g.neighbors(v).iter().copied()).map(|x| x as u32).collect();
            nb.sort_unstable();
            nb
        })
        .collect()
}

pub fn solve(g: &Graph, k: usize, budget: u64) -> Result<WinTable, GameError> {
    if k == 0 {
        return Err(GameError::InvalidParameter("at least one cop is required".into()));
    }
    if g.order() == 0 {
        return Err(GameError::InvalidParameter("empty graph".into()));
    }
    if !g.is_connected() {
        return Err(GameError::Disconnected);
    }
    let needed = estimate(g, k);
    if needed > budget as u128 {
        return Err(GameError::BudgetExceeded { needed, budget });
    }
    let n = g.order();
    let index = MultisetIndex::new(n, k);
    let m = index.len();
    let states = m * n;
    if states > u32::MAX as usize {
        return Err(GameError::BudgetExceeded { needed, budget });
    }
    let closed = closed_neighborhoods(g);
    let mut cop_win = vec![false; states];
    let mut robber_win = vec![false; states];
    let mut cop_move = vec![u32::MAX; states];
    // robber options not yet known to lose, per robber-turn state
    let mut pending: Vec<u32> = (0..states).map(|s| closed[s % n].len() as u32).collect();
    // queue entries: state index, high bit set for cop-turn states
    const COP: u64 = 1 << 40;
    let mut queue: Vec<u64> = Vec::new();
    for rank in 0..m {
        let cops = index.get(rank);
        for (i, &c) in cops.iter().enumerate() {
            if i > 0 && cops[i - 1] == c {
                continue;
            }
            let s = rank * n + c as usize;
            robber_win[s] = true;
            cop_win[s] = true;
            cop_move[s] = rank as u32;
            queue.push(s as u64);
            queue.push(s as u64 | COP);
        }
    }
    let mut head = 0;
    let mut digits = vec![0usize; k];
    let mut tuple = vec![0u32; k];
    while head < queue.len() {
        let e = queue[head];
        head += 1;
        let s = (e & (COP - 1)) as usize;
        let (rank, r) = (s / n, s % n);
        if e & COP != 0 {
            // cop-turn (C, r) won: robber-turn (C, x) loses one option for x in N[r]
            for &x in &closed[r] {
                let t = rank * n + x as usize;
                if !robber_win[t] {
                    pending[t] -= 1;
                    if pending[t] == 0 {
                        robber_win[t] = true;
                        queue.push(t as u64);
                    }
                }
            }
        } else {
            // robber-turn (C', r) won: every cop-turn (C, r) with a move C -> C' wins
            let target = index.get(rank);
            let nbs: Vec<&[u32]> = target.iter().map(|&c| closed[c as usize].as_slice()).collect();
            digits.fill(0);
            loop {
                for i in 0..k {
                    tuple[i] = nbs[i][digits[i]];
                }
                tuple.sort_unstable();
                let t = index.rank(&tuple) * n + r;
                if !cop_win[t] {
                    cop_win[t] = true;
                    cop_move[t] = rank as u32;
                    queue.push(t as u64 | COP);
                }
                let mut i = 0;
                while i < k {
                    digits[i] += 1;
                    if digits[i] < nbs[i].len() {
                        break;
                    }
                    digits[i] = 0;
                    i += 1;
                }
                if i == k {
                    break;
                }
            }
        }
    }
    let start = (0..m).find(|&rank| (0..n).all(|r| cop_win[rank * n + r]));
    Ok(WinTable { n, k, index, cop_win, robber_win, cop_move, start })
}

fn sorted_u32(cops: &[Vertex]) -> Vec<u32> {
    let mut c: Vec<u32> = cops.iter().map(|&x| x as u32).collect();
    c.sort_unstable();
    c
}

impl WinTable {
    pub fn cops(&self) -> usize {
        self.k
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn cops_win(&self) -> bool {
        self.start.is_some()
    }

    /// Lowest-ranked placement from which the cops win against every robber
    /// placement.
    pub fn start_position(&self) -> Option<Vec<Vertex>> {
        self.start.map(|r| self.index.get(r).iter().map(|&c| c as usize).collect())
    }

    fn state(&self, cops: &[Vertex], robber: Vertex) -> usize {
        assert_eq!(cops.len(), self.k, "wrong number of cops");
        self.index.rank(&sorted_u32(cops)) * self.n + robber
    }

    /// Cops to move at `cops`, robber at `robber`.
    pub fn cop_turn_win(&self, cops: &[Vertex], robber: Vertex) -> bool {
        self.cop_win[self.state(cops, robber)]
    }

    /// Robber to move.
    pub fn robber_turn_win(&self, cops: &[Vertex], robber: Vertex) -> bool {
        self.robber_win[self.state(cops, robber)]
    }

    /// The stored winning reply, as a sorted multiset.
    pub fn cop_reply(&self, cops: &[Vertex], robber: Vertex) -> Option<Vec<Vertex>> {
        let s = self.state(cops, robber);
        self.cop_win[s].then(|| self.index.get(self.cop_move[s] as usize).iter().map(|&c| c as usize).collect())
    }

    pub fn cop_win_count(&self) -> usize {
        self.cop_win.iter().filter(|&&w| w).count()
    }

    pub fn states(&self) -> usize {
        self.cop_win.len()
    }
}

pub fn k_cops_win(g: &Graph, k: usize, budget: u64) -> Result<bool, GameError> {
    Ok(solve(g, k, budget)?.cops_win())
}

/// Least `k <= kmax` for which the cops win.
pub fn cop_number(g: &Graph, kmax: usize, budget: u64) -> Result<usize, GameError> {
    for k in 1..=kmax {
        if k_cops_win(g, k, budget)? {
            return Ok(k);
        }
    }
    Err(GameError::ExceedsKmax { kmax })
}
