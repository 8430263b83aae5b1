use std::io::Write;
use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::Serialize;

use super::report::ReportDocument;
use super::{Format, EXIT_DISCREPANCY, EXIT_OK};
use crate::arith::Trinomial;
use crate::index::{field_index, IndexError};

/// One scan record. Big integers are decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub a: String,
    pub b: String,
    pub nu2: u64,
    pub nu3: u64,
    pub i_k: u64,
    pub type2: String,
    pub type3: String,
    pub engine_agrees: bool,
}

pub(super) fn rows_from_document(doc: &ReportDocument) -> Vec<ScanRow> {
    let Some(i_k) = doc.i_k else {
        return Vec::new();
    };
    let block = |p: u64| doc.primes.iter().find(|b| b.p == p).unwrap();
    vec![ScanRow {
        a: doc.input.a.clone(),
        b: doc.input.b.clone(),
        nu2: block(2).nu,
        nu3: block(3).nu,
        i_k,
        type2: block(2).shape.clone(),
        type3: block(3).shape.clone(),
        engine_agrees: doc.discrepancies.is_empty(),
    }]
}

fn scan_cell(t: &Trinomial) -> Result<Option<ScanRow>, IndexError> {
    let r = match field_index(t) {
        Ok(r) => r,
        Err(IndexError::Reducible(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    let shape = |p: u64| r.prime(p).unwrap().local.shape.to_string();
    Ok(Some(ScanRow {
        a: t.a.to_string(),
        b: t.b.to_string(),
        nu2: r.nu(2),
        nu3: r.nu(3),
        i_k: r.i_k,
        type2: shape(2),
        type3: shape(3),
        engine_agrees: r.discrepancies.is_empty(),
    }))
}

/// Records for every irreducible pair in `(a, b)` order, with the pairs the
/// engine failed on.
pub fn scan_rows(
    a_range: RangeInclusive<i64>,
    b_range: RangeInclusive<i64>,
    only_nontrivial: bool,
) -> (Vec<ScanRow>, Vec<(Trinomial, IndexError)>) {
    let pairs: Vec<Trinomial> = a_range
        .flat_map(|a| b_range.clone().filter_map(move |b| Trinomial::from_i64(a, b).ok()))
        .collect();
    let cells: Vec<_> = pairs.par_iter().map(scan_cell).collect();
    let mut rows = Vec::new();
    let mut errors = Vec::new();
    for (t, cell) in pairs.into_iter().zip(cells) {
        match cell {
            Ok(Some(row)) if !only_nontrivial || row.i_k > 1 => rows.push(row),
            Ok(_) => {}
            Err(e) => errors.push((t, e)),
        }
    }
    (rows, errors)
}

pub(super) fn write_csv(out: &mut dyn Write, rows: &[ScanRow]) -> std::io::Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    if rows.is_empty() {
        w.write_record(["a", "b", "nu2", "nu3", "i_k", "type2", "type3", "engine_agrees"])?;
    }
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()
}

fn write_text(out: &mut dyn Write, rows: &[ScanRow]) -> std::io::Result<()> {
    let wa = rows.iter().map(|r| r.a.len()).max().unwrap_or(1).max(1);
    let wb = rows.iter().map(|r| r.b.len()).max().unwrap_or(1).max(1);
    let w2 = rows.iter().map(|r| r.type2.len()).max().unwrap_or(5).max(5);
    writeln!(out, "{:>wa$} {:>wb$} nu2 nu3 i_k {:<w2$} type3", "a", "b", "type2")?;
    for r in rows {
        writeln!(
            out,
            "{:>wa$} {:>wb$} {:>3} {:>3} {:>3} {:<w2$} {}",
            r.a, r.b, r.nu2, r.nu3, r.i_k, r.type2, r.type3
        )?;
    }
    Ok(())
}

pub(super) fn run(
    (a_range, b_range): (RangeInclusive<i64>, RangeInclusive<i64>),
    only_nontrivial: bool,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let (rows, errors) = scan_rows(a_range, b_range, only_nontrivial);
    let written = match format {
        Format::Json => rows.iter().try_for_each(|r| {
            serde_json::to_writer(&mut *out, r).map_err(std::io::Error::from)?;
            writeln!(out)
        }),
        Format::Csv => write_csv(out, &rows),
        Format::Text => write_text(out, &rows),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: {e}");
        return EXIT_DISCREPANCY;
    }
    for (t, e) in &errors {
        let _ = writeln!(err, "{t}: {e}");
    }
    let disagreements: Vec<&ScanRow> = rows.iter().filter(|r| !r.engine_agrees).collect();
    for r in &disagreements {
        let _ = writeln!(err, "({}, {}): table and engine disagree", r.a, r.b);
    }
    if errors.is_empty() && disagreements.is_empty() {
        EXIT_OK
    } else {
        EXIT_DISCREPANCY
    }
}
