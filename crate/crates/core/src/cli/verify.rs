use std::io::Write;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{Format, EXIT_DISCREPANCY, EXIT_OK};
use crate::arith::{count_monic_irreducibles, discriminant, discriminant_resultant, vp, Trinomial};
use crate::gfpoly;
use crate::index::{field_index, splitting_type, SplittingType, TableRow};
use crate::newton::PadicKind;
use crate::verify::{
    check_refinement_constant, count_irreducibles_by_sieve, cross_check_pairs_masked,
    deep_witnesses, table_witnesses, ALL_ROWS,
};

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub quick: bool,
    pub grid: i64,
    pub mask: Option<TableRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub schema_version: String,
    pub checks: Vec<CheckResult>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| !c.passed)
    }
}

fn t(a: i64, b: i64) -> Trinomial {
    Trinomial::from_i64(a, b).unwrap()
}

fn check(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> CheckResult {
    CheckResult { name: name.into(), passed, detail: detail.into() }
}

const GOLDEN_INDEX: [(i64, i64, u64); 4] = [(54, 87, 1), (64, 256, 2), (90, 19835, 3), (99, 8055028, 6)];

const GOLDEN_DISC: [(i64, i64, u64, u64); 3] = [(64, 256, 2, 70), (90, 19835, 3, 26), (99, 8055028, 3, 28)];

fn golden_types() -> Vec<(Trinomial, u64, SplittingType)> {
    vec![
        (t(99, 8055028), 2, SplittingType::new(vec![(1, 1), (1, 1), (1, 1), (1, 3), (1, 3)])),
        (t(64, 256), 2, SplittingType::new(vec![(1, 1), (1, 1), (7, 1)])),
        (t(90, 19835), 3, SplittingType::new(vec![(1, 1), (1, 1), (1, 1), (6, 1)])),
    ]
}

fn goldens(out: &mut Vec<CheckResult>) {
    for (a, b, want) in GOLDEN_INDEX {
        let (passed, detail) = match field_index(&t(a, b)) {
            Ok(r) => (r.i_k == want, format!("i(K) = {}, expected {want}", r.i_k)),
            Err(e) => (false, format!("{e}, expected i(K) = {want}")),
        };
        out.push(check(format!("index ({a}, {b})"), passed, detail));
    }
    for (a, b, p, want) in GOLDEN_DISC {
        let v = vp(p, &discriminant(&t(a, b)));
        out.push(check(format!("v_{p}(disc) ({a}, {b})"), v == want, format!("{v}, expected {want}")));
    }
    for (tr, p, want) in golden_types() {
        let (passed, detail) = match splitting_type(&tr, p) {
            Ok(s) => (s == want, format!("{s}, expected {want}")),
            Err(e) => (false, e.to_string()),
        };
        out.push(check(format!("splitting {tr} at {p}"), passed, detail));
    }
}

fn discriminant_oracle(out: &mut Vec<CheckResult>) {
    let mut rng = ChaCha8Rng::seed_from_u64(gfpoly::seed());
    let mut bad = None;
    for _ in 0..1000 {
        let a: i64 = rng.gen_range(-1000..=1000);
        let b: i64 = rng.gen_range(-1000..=1000);
        let Ok(tr) = Trinomial::from_i64(a, b) else { continue };
        if discriminant(&tr) != discriminant_resultant(&tr) {
            bad = Some(tr);
            break;
        }
    }
    out.push(match bad {
        None => check("discriminant oracle", true, "1000 random pairs"),
        Some(tr) => check("discriminant oracle", false, format!("mismatch at {tr}")),
    });
}

fn grids(opts: &SuiteOptions, out: &mut Vec<CheckResult>) {
    let n = opts.grid;
    let pairs: Vec<Trinomial> = (1..=n)
        .flat_map(|a| (1..=n).map(move |b| t(a, b)))
        .collect();
    out.push(match cross_check_pairs_masked(&pairs, opts.mask) {
        Ok(s) => check(
            format!("grid 1..{n}"),
            true,
            format!("{} pairs checked, i(K) counts {:?}", s.checked, s.i_k_counts),
        ),
        Err(f) => check(format!("grid 1..{n}"), false, f.to_string()),
    });
    let mut problems = Vec::new();
    for (row, w) in table_witnesses() {
        match w {
            None => problems.push(format!("no witness for {row}")),
            Some(w) => {
                if let Err(f) = cross_check_pairs_masked(std::slice::from_ref(&w), opts.mask) {
                    problems.push(format!("{row} {f}"));
                }
            }
        }
    }
    out.push(if problems.is_empty() {
        check("table row witnesses", true, format!("{} rows", ALL_ROWS.len()))
    } else {
        check("table row witnesses", false, problems.join("; "))
    });
}

fn refinement(out: &mut Vec<CheckResult>) {
    let mut cases: Vec<(Trinomial, u64, u32)> = vec![(t(64, 256), 2, 10), (t(90, 19835), 3, 10)];
    for kind in [PadicKind::P2Deep, PadicKind::P3DeepA, PadicKind::P3DeepB] {
        for w in deep_witnesses(kind, 60, 2) {
            cases.push((w, kind.prime(), 20));
        }
    }
    for (tr, p, prec) in cases {
        let (passed, detail) = match check_refinement_constant(&tr, p, prec) {
            Ok(true) => (true, format!("agrees mod {p}^{prec}")),
            Ok(false) => (false, format!("differs mod {p}^{prec}")),
            Err(e) => (false, e.to_string()),
        };
        out.push(check(format!("refinement constant {tr} at {p}"), passed, detail));
    }
}

fn necklaces(out: &mut Vec<CheckResult>) {
    let mut bad = Vec::new();
    for p in [2u64, 3, 5, 7] {
        for f in 1..=4u32 {
            let formula = count_monic_irreducibles(p, f);
            let sieve = count_irreducibles_by_sieve(p, f);
            if formula != BigInt::from(sieve).to_biguint().unwrap() {
                bad.push(format!("p = {p}, f = {f}: {formula} vs {sieve}"));
            }
        }
    }
    let detail = if bad.is_empty() { "p <= 7, f <= 4".to_string() } else { bad.join("; ") };
    out.push(check("irreducible counts", bad.is_empty(), detail));
}

/// Every check of the suite, in a fixed order.
pub fn run_suite(opts: &SuiteOptions) -> SuiteResult {
    let mut checks = Vec::new();
    goldens(&mut checks);
    if !opts.quick {
        discriminant_oracle(&mut checks);
        necklaces(&mut checks);
        grids(opts, &mut checks);
        refinement(&mut checks);
    }
    SuiteResult { schema_version: super::SCHEMA_VERSION.to_string(), checks }
}

pub(super) fn run(opts: &SuiteOptions, format: Format, out: &mut dyn Write) -> i32 {
    let result = run_suite(opts);
    let _ = match format {
        Format::Json => serde_json::to_writer_pretty(&mut *out, &result)
            .map_err(std::io::Error::from)
            .and_then(|_| writeln!(out)),
        Format::Text | Format::Csv => (|| {
            for c in &result.checks {
                let tag = if c.passed { "PASS" } else { "FAIL" };
                writeln!(out, "{tag} {}: {}", c.name, c.detail)?;
            }
            if let Some(c) = result.first_failure() {
                writeln!(out, "first failure: {}: {}", c.name, c.detail)?;
            }
            Ok(())
        })(),
    };
    if result.passed() {
        EXIT_OK
    } else {
        EXIT_DISCREPANCY
    }
}
