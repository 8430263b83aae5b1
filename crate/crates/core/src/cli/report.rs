use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;

use super::{scan, Format, EXIT_DISCREPANCY, EXIT_OK, EXIT_REDUCIBLE, SCHEMA_VERSION};
use crate::arith::{discriminant, normalize, vp, Trinomial};
use crate::index::{field_index, Discrepancy, EngineNu, IndexError, IndexReport, Provenance};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InputBlock {
    pub a: String,
    pub b: String,
    pub normalized_a: String,
    pub normalized_b: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeBlock {
    pub p: u64,
    pub nu: u64,
    /// Sorted `[e, f]` pairs; absent when only a partial shape is known.
    pub splitting_type: Option<Vec<[u64; 2]>>,
    pub shape: String,
    pub provenance: Provenance,
    pub table_row: Option<String>,
    pub engine: EngineNu,
    pub local_index: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportDocument {
    pub schema_version: String,
    pub input: InputBlock,
    pub irreducible: bool,
    pub discriminant: String,
    pub discriminant_valuations: BTreeMap<String, Option<u64>>,
    pub primes: Vec<PrimeBlock>,
    pub i_k: Option<u64>,
    pub monogenic_obstructed: Option<bool>,
    pub discrepancies: Vec<Discrepancy>,
}

const VALUATION_PRIMES: [u64; 4] = [2, 3, 5, 7];

fn skeleton(t: &Trinomial) -> ReportDocument {
    let n = normalize(t);
    let d = discriminant(&n);
    ReportDocument {
        schema_version: SCHEMA_VERSION.to_string(),
        input: InputBlock {
            a: t.a.to_string(),
            b: t.b.to_string(),
            normalized_a: n.a.to_string(),
            normalized_b: n.b.to_string(),
        },
        irreducible: false,
        discriminant_valuations: VALUATION_PRIMES
            .iter()
            .map(|&p| (p.to_string(), vp(p, &d).finite()))
            .collect(),
        discriminant: d.to_string(),
        primes: Vec::new(),
        i_k: None,
        monogenic_obstructed: None,
        discrepancies: Vec::new(),
    }
}

fn fill(doc: &mut ReportDocument, r: &IndexReport) {
    doc.irreducible = true;
    doc.primes = r
        .primes
        .iter()
        .map(|pr| PrimeBlock {
            p: pr.p,
            nu: pr.nu,
            splitting_type: pr
                .local
                .shape
                .complete()
                .map(|s| s.pairs().iter().map(|&(e, f)| [e, f]).collect()),
            shape: pr.local.shape.to_string(),
            provenance: pr.local.provenance,
            table_row: pr.table.row.map(|row| row.to_string()),
            engine: pr.engine,
            local_index: pr.local.index,
        })
        .collect();
    doc.i_k = Some(r.i_k);
    doc.monogenic_obstructed = Some(r.monogenic_obstructed);
    doc.discrepancies = r.discrepancies.clone();
}

/// The report document, or the index error for inputs the engine rejects.
/// Reducible inputs give a document with `irreducible = false`.
pub fn report_document(t: &Trinomial) -> Result<ReportDocument, IndexError> {
    let mut doc = skeleton(t);
    match field_index(t) {
        Ok(r) => fill(&mut doc, &r),
        Err(IndexError::Reducible(_)) => {}
        Err(e) => return Err(e),
    }
    Ok(doc)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn provenance_label(p: Provenance) -> &'static str {
    match p {
        Provenance::Dedekind => "dedekind",
        Provenance::Ore => "ore",
        Provenance::Refined => "refined",
        Provenance::Partial => "partial",
    }
}

fn render_text(doc: &ReportDocument, out: &mut dyn Write) -> std::io::Result<()> {
    let i = &doc.input;
    let mut lines: Vec<(String, String)> = vec![
        ("input".into(), format!("a = {}, b = {}", i.a, i.b)),
        ("normalized".into(), format!("a = {}, b = {}", i.normalized_a, i.normalized_b)),
        ("irreducible".into(), yes_no(doc.irreducible).into()),
        ("discriminant".into(), doc.discriminant.clone()),
        (
            "v_p(disc)".into(),
            doc.discriminant_valuations
                .iter()
                .map(|(p, v)| format!("{p}: {}", v.map_or("inf".to_string(), |v| v.to_string())))
                .collect::<Vec<_>>()
                .join(", "),
        ),
    ];
    for pb in &doc.primes {
        let engine = match pb.engine {
            EngineNu::Exact { value } => format!("exact {value}"),
            EngineNu::Unknown { lower } => format!("at least {lower}"),
        };
        lines.push((
            format!("p = {}", pb.p),
            format!(
                "nu = {}, row {}, type {}, via {}, engine {engine}",
                pb.nu,
                pb.table_row.as_deref().unwrap_or("-"),
                pb.shape,
                provenance_label(pb.provenance),
            ),
        ));
    }
    if let Some(ik) = doc.i_k {
        lines.push(("i(K)".into(), ik.to_string()));
        lines.push((
            "monogenic obstructed".into(),
            yes_no(doc.monogenic_obstructed.unwrap_or(false)).into(),
        ));
        let disc = if doc.discrepancies.is_empty() {
            "none".to_string()
        } else {
            doc.discrepancies
                .iter()
                .map(|d| format!("p = {}: {}", d.p, d.detail))
                .collect::<Vec<_>>()
                .join("; ")
        };
        lines.push(("discrepancies".into(), disc));
    }
    let width = lines.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in lines {
        writeln!(out, "{k:<width$}  {v}")?;
    }
    Ok(())
}

pub(super) fn run(t: &Trinomial, format: Format, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let doc = match report_document(t) {
        Ok(doc) => doc,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_DISCREPANCY;
        }
    };
    let written = match format {
        Format::Json => serde_json::to_writer_pretty(&mut *out, &doc)
            .map_err(std::io::Error::from)
            .and_then(|_| writeln!(out)),
        Format::Text => render_text(&doc, out),
        Format::Csv => scan::write_csv(out, &scan::rows_from_document(&doc)),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: {e}");
        return EXIT_DISCREPANCY;
    }
    if !doc.irreducible {
        let _ = writeln!(err, "x^9 + ({}) x^2 + ({}) is reducible over Q", t.a, t.b);
        return EXIT_REDUCIBLE;
    }
    if !doc.discrepancies.is_empty() {
        for d in &doc.discrepancies {
            let _ = writeln!(err, "discrepancy at p = {}: {}", d.p, d.detail);
        }
        return EXIT_DISCREPANCY;
    }
    EXIT_OK
}
