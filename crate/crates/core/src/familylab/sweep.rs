use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use super::FamilyError;
use crate::certify::{family_audit, girth5_certificate, k2t_certificate, FamilyAudit, Rational};
use crate::constructions::{bf_graph_search, factorize, incidence_graph, polarity_graph, projective_plane, strip_factors};
use crate::game::{cop_number, GameError};
use crate::graph::{metrics, write_edge_list, Graph};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum Family {
    Incidence,
    Polarity,
    /// `BF(q, m)` for each `m`, scanning `seed_tries` split seeds.
    Bf { ms: Vec<usize>, seed_tries: u64 },
    /// Incidence graph with its first `i` 1-factors removed.
    Strip { eps: f64, i: usize },
}

impl Family {
    fn name(&self) -> &'static str {
        match self {
            Family::Incidence => "incidence",
            Family::Polarity => "polarity",
            Family::Bf { .. } => "bf",
            Family::Strip { .. } => "strip",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertChoice {
    K2t { t: usize },
    Girth5,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub family: Family,
    /// Plane orders, in output order.
    pub qs: Vec<u64>,
    pub certs: Vec<CertChoice>,
    /// Also compute exact cop numbers up to this many cops.
    pub exact_kmax: Option<usize>,
    pub budget: u64,
    /// First split seed tried for `bf`.
    pub seed: u64,
    /// Where member edge lists are written, if anywhere.
    pub out_dir: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub family: String,
    pub params: String,
    pub n: u64,
    pub order: usize,
    pub edges: usize,
    pub min_degree: usize,
    pub max_degree: usize,
    pub girth: String,
    pub diameter: String,
    pub bound: Option<Rational>,
    pub exact_c: Option<usize>,
    /// `None` when the row passed.
    pub failure: Option<String>,
}

impl SweepRow {
    fn failed(family: &str, params: String, n: u64, why: String) -> Self {
        SweepRow {
            family: family.into(),
            params,
            n,
            order: 0,
            edges: 0,
            min_degree: 0,
            max_degree: 0,
            girth: String::new(),
            diameter: String::new(),
            bound: None,
            exact_c: None,
            failure: Some(why),
        }
    }

    pub fn ratio(&self) -> Option<f64> {
        let b = self.bound?;
        Some(*b.numer() as f64 / *b.denom() as f64 / (self.order as f64).sqrt())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
    /// Audit over passing rows with a bound.
    pub audit: Option<FamilyAudit>,
}

impl SweepResult {
    pub fn any_failed(&self) -> bool {
        self.rows.iter().any(|r| r.failure.is_some())
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<(), FamilyError> {
        let io = |e: csv::Error| FamilyError::Io(e.to_string());
        let mut out = csv::Writer::from_writer(w);
        out.write_record([
            "family", "params", "n", "order", "edges", "min_degree", "max_degree", "girth", "diameter", "bound_num", "bound_den", "ratio", "exact_c",
            "status",
        ])
        .map_err(io)?;
        for r in &self.rows {
            let (num, den) = r.bound.map_or((String::new(), String::new()), |b| (b.numer().to_string(), b.denom().to_string()));
            out.write_record([
                r.family.clone(),
                r.params.clone(),
                r.n.to_string(),
                r.order.to_string(),
                r.edges.to_string(),
                r.min_degree.to_string(),
                r.max_degree.to_string(),
                r.girth.clone(),
                r.diameter.clone(),
                num,
                den,
                r.ratio().map_or(String::new(), |x| format!("{x:.6}")),
                r.exact_c.map_or(String::new(), |c| c.to_string()),
                r.failure.as_ref().map_or("ok".to_string(), |f| format!("FAILED: {f}")),
            ])
            .map_err(io)?;
        }
        out.flush().map_err(|e| FamilyError::Io(e.to_string()))
    }
}

/// Members as `(params, index, graph or error)`, in spec order.
fn members(spec: &SweepSpec) -> Vec<(String, u64, Result<Graph, String>)> {
    let mut out = Vec::new();
    for &q in &spec.qs {
        match &spec.family {
            Family::Incidence => {
                let g = projective_plane(q).map(|p| incidence_graph(&p)).map_err(|e| e.to_string());
                out.push((format!("q={q}"), q, g));
            }
            Family::Polarity => out.push((format!("q={q}"), q, polarity_graph(q).map_err(|e| e.to_string()))),
            Family::Bf { ms, seed_tries } => {
                for &m in ms {
                    match bf_graph_search(q, m, spec.seed, *seed_tries) {
                        Ok((seed, g)) => out.push((format!("q={q} m={m} seed={seed}"), m as u64, Ok(g))),
                        Err(e) => out.push((format!("q={q} m={m}"), m as u64, Err(e.to_string()))),
                    }
                }
            }
            Family::Strip { eps, i } => {
                let g = projective_plane(q).map_err(|e| e.to_string()).and_then(|p| {
                    let host = incidence_graph(&p);
                    let f = factorize(&host, 1).map_err(|e| e.to_string())?;
                    strip_factors(&host, &f, *i, *eps).map_err(|e| e.to_string())
                });
                out.push((format!("q={q} i={i} eps={eps}"), q, g));
            }
        }
    }
    out
}

fn evaluate(spec: &SweepSpec, family: &str, params: String, n: u64, g: Graph) -> SweepRow {
    let m = metrics(&g);
    let mut row = SweepRow {
        family: family.into(),
        params,
        n,
        order: m.order,
        edges: m.size,
        min_degree: m.min_degree,
        max_degree: m.max_degree,
        girth: m.girth.to_string(),
        diameter: m.diameter.to_string(),
        bound: None,
        exact_c: None,
        failure: None,
    };
    for cert in &spec.certs {
        let c = match *cert {
            CertChoice::K2t { t } => k2t_certificate(&g, t, None),
            CertChoice::Girth5 => girth5_certificate(&g, None),
        };
        match c {
            Ok(c) => row.bound = row.bound.max(Some(c.bound)),
            Err(e) => {
                row.failure = Some(e.to_string());
                return row;
            }
        }
    }
    if let Some(kmax) = spec.exact_kmax {
        match cop_number(&g, kmax, spec.budget) {
            Ok(c) => row.exact_c = Some(c),
            Err(GameError::BudgetExceeded { .. } | GameError::ExceedsKmax { .. }) => {}
            Err(e) => row.failure = Some(e.to_string()),
        }
        if let (Some(b), Some(c)) = (row.bound, row.exact_c) {
            if b.ceil().to_integer() > c as i64 {
                row.failure = Some(format!("lower bound {b} exceeds exact cop number {c}"));
            }
        }
    }
    if let Some(dir) = &spec.out_dir {
        let path = dir.join(format!("{family}_{}.txt", row.params.replace([' ', '='], "_")));
        let written = File::create(&path).and_then(|f| {
            let mut w = BufWriter::new(f);
            write_edge_list(&g, &mut w)?;
            w.flush()
        });
        if let Err(e) = written {
            row.failure = Some(format!("writing {}: {e}", path.display()));
        }
    }
    row
}

/// Builds every member, certifies it and audits the family. Member errors
/// mark their row FAILED without stopping the sweep.
pub fn sweep(spec: &SweepSpec) -> Result<SweepResult, FamilyError> {
    if spec.qs.is_empty() {
        return Err(FamilyError::InvalidParameter("empty index set".into()));
    }
    if let Family::Bf { ms, .. } = &spec.family {
        if ms.is_empty() {
            return Err(FamilyError::InvalidParameter("empty cycle-length range".into()));
        }
    }
    let family = spec.family.name();
    let rows: Vec<SweepRow> = members(spec)
        .into_iter()
        .map(|(params, n, g)| match g {
            Ok(g) => evaluate(spec, family, params, n, g),
            Err(e) => SweepRow::failed(family, params, n, e),
        })
        .collect();
    let audited: Vec<_> = rows.iter().filter(|r| r.failure.is_none()).filter_map(|r| Some((r.n, r.order as u64, r.bound?))).collect();
    let audit = if audited.is_empty() { None } else { family_audit(audited).ok() };
    Ok(SweepResult { rows, audit })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    fn spec(family: Family, qs: Vec<u64>, certs: Vec<CertChoice>) -> SweepSpec {
        SweepSpec { family, qs, certs, exact_kmax: None, budget: 0, seed: 0, out_dir: None }
    }

    #[test]
    fn incidence_sweep() {
        let r = sweep(&spec(Family::Incidence, vec![2, 3, 4, 5], vec![CertChoice::Girth5])).unwrap();
        assert_eq!(r.rows.len(), 4);
        assert!(!r.any_failed());
        assert!(r.audit.unwrap().constant_at_least(Ratio::new(7, 10)));
    }

    #[test]
    fn strip_sweep_matches_factor_arithmetic() {
        let r = sweep(&spec(Family::Strip { eps: 0.5, i: 1 }, vec![3, 5], vec![CertChoice::K2t { t: 2 }])).unwrap();
        for (row, q) in r.rows.iter().zip([3i64, 5]) {
            assert_eq!(row.bound, Some(Rational::new(q, 2)));
        }
    }

    #[test]
    fn failures_do_not_stop_the_sweep() {
        let r = sweep(&spec(Family::Incidence, vec![6, 2], vec![CertChoice::Girth5])).unwrap();
        assert!(r.rows[0].failure.is_some() && r.rows[1].failure.is_none());
        let mut a = Vec::new();
        r.write_csv(&mut a).unwrap();
        let mut b = Vec::new();
        sweep(&spec(Family::Incidence, vec![6, 2], vec![CertChoice::Girth5])).unwrap().write_csv(&mut b).unwrap();
        assert_eq!(a, b);
        let text = String::from_utf8(a).unwrap();
        assert!(text.contains("FAILED: 6 is not a prime power"));
    }

    #[test]
    fn exact_column_and_files() {
        let dir = tempfile::tempdir().unwrap();
        let mut s = spec(Family::Incidence, vec![2], vec![CertChoice::K2t { t: 2 }]);
        s.exact_kmax = Some(3);
        s.budget = 10_000_000;
        s.out_dir = Some(dir.path().to_path_buf());
        let r = sweep(&s).unwrap();
        assert_eq!(r.rows[0].exact_c, Some(3));
        assert!(dir.path().join("incidence_q_2.txt").exists());
    }
}
