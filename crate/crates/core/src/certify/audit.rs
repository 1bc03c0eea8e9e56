use std::io::{Read, Write};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::{CertifyError, Rational};

/// One family member: index `n`, graph order and certified bound.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditRow {
    pub n: u64,
    pub order: u64,
    pub bound: Rational,
    /// `bound^2 / order`, the exact square of the ratio.
    pub ratio_sq: Ratio<i128>,
}

impl AuditRow {
    pub fn new(n: u64, order: u64, bound: Rational) -> Self {
        let b = Ratio::new(*bound.numer() as i128, *bound.denom() as i128);
        let ratio_sq = if order == 0 { Ratio::from_integer(0) } else { b * b / Ratio::from_integer(order as i128) };
        AuditRow { n, order, bound, ratio_sq }
    }

    pub fn ratio(&self) -> f64 {
        if self.order == 0 {
            return 0.0;
        }
        (*self.bound.numer() as f64 / *self.bound.denom() as f64) / (self.order as f64).sqrt()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FamilyAudit {
    /// Sorted by order, then index.
    pub rows: Vec<AuditRow>,
    /// Square of the family constant `min bound / sqrt(order)`, exact.
    pub constant_sq: Ratio<i128>,
}

impl FamilyAudit {
    pub fn constant(&self) -> f64 {
        (*self.constant_sq.numer() as f64 / *self.constant_sq.denom() as f64).sqrt()
    }

    /// Exact test of `constant >= c` for a rational `c >= 0`.
    pub fn constant_at_least(&self, c: Ratio<i128>) -> bool {
        self.constant_sq >= c * c
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<(), CertifyError> {
        let mut out = csv::Writer::from_writer(w);
        let io = |e: csv::Error| CertifyError::Input(e.to_string());
        out.write_record(["n", "order", "bound_num", "bound_den", "ratio", "ratio_sq"]).map_err(io)?;
        for r in &self.rows {
            out.write_record([
                r.n.to_string(),
                r.order.to_string(),
                r.bound.numer().to_string(),
                r.bound.denom().to_string(),
                format!("{:.6}", r.ratio()),
                r.ratio_sq.to_string(),
            ])
            .map_err(io)?;
        }
        out.flush().map_err(|e| CertifyError::Input(e.to_string()))
    }
}

pub fn family_audit(rows: Vec<(u64, u64, Rational)>) -> Result<FamilyAudit, CertifyError> {
    let mut rows: Vec<AuditRow> = rows.into_iter().map(|(n, order, b)| AuditRow::new(n, order, b)).collect();
    rows.sort_by_key(|r| (r.order, r.n));
    let constant_sq = rows.iter().map(|r| r.ratio_sq).min().ok_or(CertifyError::EmptyFamily)?;
    Ok(FamilyAudit { rows, constant_sq })
}

fn parse_bound(s: &str) -> Option<Rational> {
    match s.split_once('/') {
        Some((a, b)) => {
            let (num, den): (i64, i64) = (a.trim().parse().ok()?, b.trim().parse().ok()?);
            (den != 0).then(|| Rational::new(num, den))
        }
        None => s.trim().parse().ok().map(Rational::from_integer),
    }
}

/// Reads `n,order,bound` rows (header required); `bound` is an integer or
/// `p/q`.
pub fn read_audit_rows<R: Read>(r: R) -> Result<Vec<(u64, u64, Rational)>, CertifyError> {
    let mut rd = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(r);
    let mut rows = Vec::new();
    for (i, rec) in rd.records().enumerate() {
        let rec = rec.map_err(|e| CertifyError::Input(e.to_string()))?;
        let bad = || CertifyError::Input(format!("row {}: expected n,order,bound", i + 1));
        if rec.len() != 3 {
            return Err(bad());
        }
        let n = rec[0].parse().map_err(|_| bad())?;
        let order = rec[1].parse().map_err(|_| bad())?;
        let bound = parse_bound(&rec[2]).ok_or_else(bad)?;
        rows.push((n, order, bound));
    }
    Ok(rows)
}
