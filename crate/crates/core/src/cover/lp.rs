use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::Hypergraph;

/// Optimal fractional blocking set together with a fractional matching of
/// the same value certifying optimality.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FractionalSolution {
    #[serde(serialize_with = "ser_vec")]
    pub weights: Vec<BigRational>,
    #[serde(serialize_with = "ser_one")]
    pub objective: BigRational,
    /// Edge weights `y_e` with `sum_{e ∋ v} y_e <= 1`.
    #[serde(serialize_with = "ser_vec")]
    pub dual: Vec<BigRational>,
}

fn ser_one<S: serde::Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn ser_vec<S: serde::Serializer>(x: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(x.iter().map(|v| v.to_string()))
}

impl FractionalSolution {
    /// Every edge has weight at least 1 and all weights are nonnegative.
    pub fn is_feasible(&self, h: &Hypergraph) -> bool {
        self.weights.iter().all(|w| !w.is_negative())
            && h.edges().iter().all(|e| e.iter().map(|&v| &self.weights[v]).sum::<BigRational>() >= BigRational::one())
    }

    pub fn dual_is_feasible(&self, h: &Hypergraph) -> bool {
        self.dual.iter().all(|y| !y.is_negative())
            && (0..h.order()).all(|v| h.incident(v).iter().map(|&e| &self.dual[e]).sum::<BigRational>() <= BigRational::one())
    }

    pub fn dual_objective(&self) -> BigRational {
        self.dual.iter().sum()
    }
}

fn ratio(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Solves the packing LP `max sum y_e, sum_{e ∋ v} y_e <= 1, y >= 0` with a
/// dense exact simplex (Bland's rule) from the slack basis. The optimal
/// blocking weights are the final prices of the vertex constraints.
pub fn blocking_lp(h: &Hypergraph) -> FractionalSolution {
    let (n, m) = (h.order(), h.edges().len());
    let cols = m + n;
    // rows: one per vertex, columns: edges then slacks, then rhs
    let mut t: Vec<Vec<BigRational>> = (0..n)
        .map(|v| {
            let mut row = vec![BigRational::zero(); cols + 1];
            for &e in h.incident(v) {
                row[e] = ratio(1);
            }
            row[m + v] = ratio(1);
            row[cols] = ratio(1);
            row
        })
        .collect();
    let mut z = vec![BigRational::zero(); cols + 1];
    for c in z.iter_mut().take(m) {
        *c = ratio(-1);
    }
    let mut basis: Vec<usize> = (m..m + n).collect();
    while let Some(j) = (0..cols).find(|&j| z[j].is_negative()) {
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..n {
            if t[i][j].is_positive() {
                let r = &t[i][cols] / &t[i][j];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => r < *lr || (r == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, r));
                }
            }
        }
        // the packing polytope is bounded, so some row always limits column j
        let (i, _) = leave.expect("packing LP is bounded");
        let pivot = t[i][j].clone();
        for x in t[i].iter_mut() {
            *x /= &pivot;
        }
        let prow = t[i].clone();
        for (r, row) in t.iter_mut().enumerate() {
            if r != i && !row[j].is_zero() {
                let f = row[j].clone();
                for (x, p) in row.iter_mut().zip(&prow) {
                    *x -= &f * p;
                }
            }
        }
        if !z[j].is_zero() {
            let f = z[j].clone();
            for (x, p) in z.iter_mut().zip(&prow) {
                *x -= &f * p;
            }
        }
        basis[i] = j;
    }
    let mut dual = vec![BigRational::zero(); m];
    for (i, &b) in basis.iter().enumerate() {
        if b < m {
            dual[b] = t[i][cols].clone();
        }
    }
    let weights: Vec<BigRational> = (0..n).map(|v| z[m + v].clone()).collect();
    let sol = FractionalSolution { objective: z[cols].clone(), weights, dual };
    assert!(sol.is_feasible(h), "simplex prices are not a fractional blocking set");
    assert!(sol.dual_is_feasible(h), "simplex basis is not a fractional matching");
    assert_eq!(sol.objective, sol.dual_objective(), "duality gap");
    assert_eq!(sol.objective, sol.weights.iter().sum::<BigRational>(), "duality gap");
    sol
}
