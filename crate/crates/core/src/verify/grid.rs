use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{discriminant, discriminant_resultant, is_irreducible, normalize, Trinomial};
use crate::index::{field_index, nup_general, IndexError, TableRow};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellFailure {
    pub a: String,
    pub b: String,
    pub reason: String,
}

impl std::fmt::Display for CellFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}): {}", self.a, self.b, self.reason)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CellOutcome {
    Checked { i_k: u64, rows: Vec<TableRow> },
    Reducible,
    NotNormalized,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GridSummary {
    pub cells: u64,
    pub checked: u64,
    pub reducible: u64,
    pub not_normalized: u64,
    pub i_k_counts: BTreeMap<u64, u64>,
    pub row_hits: BTreeMap<String, u64>,
    pub failures: u64,
}

/// Runs every oracle on one pair: both discriminants, table against engine
/// at 2 and 3, the engine at 5 and 7, and the range of `i(K)`.
pub fn check_pair(t: &Trinomial) -> Result<CellOutcome, String> {
    check_pair_masked(t, None)
}

/// [`check_pair`] with one table row treated as absent, so a pair in that
/// row reads `nu = 0` from the table.
pub fn check_pair_masked(t: &Trinomial, mask: Option<TableRow>) -> Result<CellOutcome, String> {
    if !is_irreducible(&t.a, &t.b) {
        return Ok(CellOutcome::Reducible);
    }
    if normalize(t).a != t.a {
        return Ok(CellOutcome::NotNormalized);
    }
    let d = discriminant(t);
    let dr = discriminant_resultant(t);
    if d != dr {
        return Err(format!("discriminant {d} differs from resultant {dr}"));
    }
    let report = field_index(t).map_err(|e| e.to_string())?;
    if let Some(d) = report.discrepancies.first() {
        return Err(format!("p = {}: {}", d.p, d.detail));
    }
    for r in report.primes.iter().filter(|r| mask.is_some() && r.table.row == mask) {
        if r.engine.exact() != Some(0) {
            return Err(format!(
                "p = {}: table row {} disabled gives 0, engine gives {:?}",
                r.p,
                mask.unwrap(),
                r.engine
            ));
        }
    }
    for p in [5, 7] {
        nup_general(t, p, true).map_err(|e: IndexError| e.to_string())?;
    }
    if ![1, 2, 3, 6].contains(&report.i_k) {
        return Err(format!("i(K) = {} outside {{1, 2, 3, 6}}", report.i_k));
    }
    let rows = report.primes.iter().filter_map(|r| r.table.row).collect();
    Ok(CellOutcome::Checked { i_k: report.i_k, rows })
}

/// Checks the pairs in parallel; fails with the first offending pair in
/// input order.
pub fn cross_check_pairs(pairs: &[Trinomial]) -> Result<GridSummary, CellFailure> {
    cross_check_pairs_masked(pairs, None)
}

pub fn cross_check_pairs_masked(
    pairs: &[Trinomial],
    mask: Option<TableRow>,
) -> Result<GridSummary, CellFailure> {
    let outcomes: Vec<Result<CellOutcome, String>> =
        pairs.par_iter().map(|t| check_pair_masked(t, mask)).collect();
    let mut summary = GridSummary::default();
    for (t, outcome) in pairs.iter().zip(outcomes) {
        summary.cells += 1;
        match outcome {
            Ok(CellOutcome::Checked { i_k, rows }) => {
                summary.checked += 1;
                *summary.i_k_counts.entry(i_k).or_default() += 1;
                for r in rows {
                    *summary.row_hits.entry(r.to_string()).or_default() += 1;
                }
            }
            Ok(CellOutcome::Reducible) => summary.reducible += 1,
            Ok(CellOutcome::NotNormalized) => summary.not_normalized += 1,
            Err(reason) => {
                return Err(CellFailure { a: t.a.to_string(), b: t.b.to_string(), reason });
            }
        }
    }
    Ok(summary)
}

/// [`cross_check_pairs`] over a rectangle, in `(a, b)` order. Cells with
/// `b = 0` count as reducible.
pub fn grid_cross_check(
    a_range: RangeInclusive<i64>,
    b_range: RangeInclusive<i64>,
) -> Result<GridSummary, CellFailure> {
    let mut zero_b = 0;
    let mut pairs = Vec::new();
    for a in a_range {
        for b in b_range.clone() {
            match Trinomial::from_i64(a, b) {
                Ok(t) => pairs.push(t),
                Err(_) => zero_b += 1,
            }
        }
    }
    let mut summary = cross_check_pairs(&pairs)?;
    summary.cells += zero_b;
    summary.reducible += zero_b;
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_range() {
        #[allow(clippy::reversed_empty_ranges)]
        let s = grid_cross_check(1..=0, 1..=5).unwrap();
        assert_eq!(s, GridSummary::default());
    }

    #[test]
    fn small_square() {
        let s = grid_cross_check(1..=6, -3..=3).unwrap();
        assert_eq!(s.cells, 42);
        assert_eq!(s.checked + s.reducible + s.not_normalized, s.cells);
        assert!(s.reducible >= 6);
    }
}
