//! Splitting types, common index divisors and the field index.

mod engstrom;
mod splitting;
mod tables;

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

pub use engstrom::{
    engstrom_divides, engstrom_divides_shape, engstrom_nu, engstrom_nu_shape,
    large_prime_bound_holds, EngineNu,
};
pub use splitting::{PartialBlock, Shape, SplittingType};
pub use tables::{nu2_table, nu3_table, TableRow, TableValue};

use crate::arith::{self, discriminant, is_irreducible, normalize, ArithError, Trinomial, ZPoly};
use crate::gfpoly::{self, GfPoly};
use crate::newton::{self, NewtonError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IndexError {
    #[error("x^9 + ({a}) x^2 + ({b}) is reducible over Q", a = .0.a, b = .0.b)]
    Reducible(Trinomial),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Newton(#[from] NewtonError),
    #[error("several table rows match: {0:?}")]
    TableConflict(Vec<TableRow>),
    #[error("splitting at {p} is only known up to {shape}")]
    Undecided { p: u64, shape: String },
    #[error("inconsistent result at {p}: {detail}")]
    Consistency { p: u64, detail: String },
}

/// How the engine reached its splitting data.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// `p` does not divide the index of `Z[alpha]`; read off `F mod p`.
    Dedekind,
    /// Regular for the canonical lifts.
    Ore,
    /// Regular after moving degree-one lifts.
    Refined,
    /// Some residual factors stayed repeated; only a partial shape.
    Partial,
}

/// Dedekind's criterion for `p | (Z_K : Z[alpha])`.
pub fn dedekind_divides_poly(f: &ZPoly, p: u64) -> bool {
    let fac = gfpoly::factor_mod_p(f, p).expect("prime modulus");
    let field = crate::gfpoly::Fq::prime(p);
    let mut g = GfPoly::one(&field);
    let mut h = GfPoly::one(&field);
    for (phi, m) in &fac.factors {
        g = g.mul(phi);
        h = h.mul(&phi.pow(m - 1));
    }
    let h = h.scale(&fac.unit);
    let lifted = &ZPoly::lift(&g) * &ZPoly::lift(&h);
    let diff = f - &lifted;
    let quotient = diff.div_exact(&BigInt::from(p)).to_gf(p);
    !quotient.gcd(&g).gcd(&h).is_one()
}

pub fn dedekind_divides(t: &Trinomial, p: u64) -> bool {
    dedekind_divides_poly(&t.poly(), p)
}

/// Everything the engine knows about `p` for a polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalSplitting {
    pub shape: Shape,
    pub provenance: Provenance,
    /// `v_p((Z_K : Z[alpha]))`, when determined.
    pub index: Option<u64>,
}

/// Splitting data for any monic separable polynomial; `disc` is its
/// discriminant.
pub fn local_splitting_poly(f: &ZPoly, p: u64, disc: &BigInt) -> Result<LocalSplitting, IndexError> {
    if !dedekind_divides_poly(f, p) {
        let fac = gfpoly::factor_mod_p(f, p).expect("prime modulus");
        let pairs = fac
            .factors
            .iter()
            .map(|(g, m)| (*m as u64, g.degree().unwrap() as u64))
            .collect();
        return Ok(LocalSplitting {
            shape: Shape::Complete(SplittingType::new(pairs)),
            provenance: Provenance::Dedekind,
            index: Some(0),
        });
    }
    let la = newton::analyze_with_disc(f, p, disc)?;
    let provenance = if !la.blocks.is_empty() {
        Provenance::Partial
    } else if la.refined() {
        Provenance::Refined
    } else {
        Provenance::Ore
    };
    Ok(LocalSplitting {
        shape: la.shape(),
        provenance,
        index: la.index,
    })
}

pub fn local_splitting(t: &Trinomial, p: u64) -> Result<LocalSplitting, IndexError> {
    local_splitting_poly(&t.poly(), p, &discriminant(t))
}

/// The splitting type of `p`; fails when the engine can only give a
/// partial shape.
pub fn splitting_type(t: &Trinomial, p: u64) -> Result<SplittingType, IndexError> {
    let local = local_splitting(t, p)?;
    match local.shape {
        Shape::Complete(s) => Ok(s),
        shape => Err(IndexError::Undecided { p, shape: shape.to_string() }),
    }
}

/// `nu_p(i(K)) = 0` for `p >= 5`. With `check`, the engine recomputes the
/// splitting and confirms Engstrom's condition fails.
pub fn nup_general(t: &Trinomial, p: u64, check: bool) -> Result<u64, IndexError> {
    assert!(p >= 5, "closed form covers primes from 5 on");
    if check {
        let divides = if large_prime_bound_holds(p) {
            Some(false)
        } else {
            engstrom_divides_shape(p, &local_splitting(t, p)?.shape)
        };
        if divides != Some(false) {
            return Err(IndexError::Consistency {
                p,
                detail: format!("engine divisibility verdict {divides:?}"),
            });
        }
    }
    Ok(0)
}

/// Table and engine verdicts for one prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeReport {
    pub p: u64,
    pub nu: u64,
    pub table: TableValue,
    pub engine: EngineNu,
    pub local: LocalSplitting,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub p: u64,
    pub table: u64,
    pub engine: EngineNu,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexReport {
    pub input: Trinomial,
    pub normalized: Trinomial,
    pub discriminant: BigInt,
    pub primes: Vec<PrimeReport>,
    pub i_k: u64,
    pub monogenic_obstructed: bool,
    pub discrepancies: Vec<Discrepancy>,
}

impl IndexReport {
    pub fn prime(&self, p: u64) -> Option<&PrimeReport> {
        self.primes.iter().find(|r| r.p == p)
    }

    pub fn nu(&self, p: u64) -> u64 {
        self.prime(p).map_or(0, |r| r.nu)
    }
}

/// Table and engine for one prime of a normalized trinomial.
pub fn prime_report(t: &Trinomial, p: u64) -> Result<(PrimeReport, Option<Discrepancy>), IndexError> {
    let table = match p {
        2 => nu2_table(t)?,
        3 => nu3_table(t)?,
        _ => TableValue { nu: nup_general(t, p, false)?, row: None },
    };
    let local = local_splitting(t, p)?;
    let engine = engstrom_nu_shape(p, &local.shape);
    let discrepancy = match engine {
        EngineNu::Exact { value } if value == table.nu => None,
        EngineNu::Exact { value } => Some(format!("table gives {}, engine gives {value}", table.nu)),
        EngineNu::Unknown { lower } => Some(format!(
            "engine undecided (lower bound {lower}) on shape {}",
            local.shape
        )),
    }
    .map(|detail| Discrepancy { p, table: table.nu, engine, detail });
    Ok((PrimeReport { p, nu: table.nu, table, engine, local }, discrepancy))
}

/// The field index of `Q(alpha)`, `F(alpha) = 0`, from both paths.
pub fn field_index(t: &Trinomial) -> Result<IndexReport, IndexError> {
    if !is_irreducible(&t.a, &t.b) {
        return Err(IndexError::Reducible(t.clone()));
    }
    let n = normalize(t);
    let mut primes = Vec::new();
    let mut discrepancies = Vec::new();
    for p in [2, 3] {
        let (report, disc) = prime_report(&n, p)?;
        primes.push(report);
        discrepancies.extend(disc);
    }
    let i_k = primes.iter().map(|r| r.p.pow(r.nu as u32)).product::<u64>();
    Ok(IndexReport {
        input: t.clone(),
        discriminant: arith::discriminant(&n),
        normalized: n,
        primes,
        i_k,
        monogenic_obstructed: i_k != 1,
        discrepancies,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(a: i64, b: i64) -> Trinomial {
        Trinomial::from_i64(a, b).unwrap()
    }

    #[test]
    fn dedekind_examples() {
        assert!(!dedekind_divides(&t(1, 1), 5));
        assert!(dedekind_divides(&t(0, 4), 2));
        assert!(!dedekind_divides(&t(0, 2), 2));
    }

    #[test]
    fn dedekind_type_has_no_ramification_off_disc() {
        let s = splitting_type(&t(54, 87), 7).unwrap();
        assert_eq!(s.degree(), 9);
        assert!(s.is_unramified());
    }

    #[test]
    fn nup_for_large_primes() {
        assert_eq!(nup_general(&t(1, 3), 5, true).unwrap(), 0);
        assert_eq!(nup_general(&t(5, 7), 7, true).unwrap(), 0);
        assert_eq!(nup_general(&t(5, 7), 11, true).unwrap(), 0);
    }

    #[test]
    fn reducible_rejected() {
        assert!(matches!(field_index(&t(64, 256)), Err(IndexError::Reducible(_))));
    }
}
