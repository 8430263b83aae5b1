use num_bigint::BigUint;
use serde::Serialize;

use super::{Shape, SplittingType};
use crate::arith::count_monic_irreducibles;

/// `nu_p(i(K))` as seen through the splitting type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EngineNu {
    Exact { value: u64 },
    Unknown { lower: u64 },
}

impl EngineNu {
    pub fn exact(self) -> Option<u64> {
        match self {
            EngineNu::Exact { value } => Some(value),
            EngineNu::Unknown { .. } => None,
        }
    }
}

/// `p | i(K)` iff more primes have residue degree `f` than there are monic
/// irreducibles of degree `f` over `F_p`.
pub fn engstrom_divides(p: u64, s: &SplittingType) -> bool {
    s.residue_degrees()
        .into_iter()
        .any(|f| BigUint::from(s.count_with_f(f)) > count_monic_irreducibles(p, f as u32))
}

/// Exact valuations for the nonic types that arise in this family.
pub fn engstrom_nu(p: u64, s: &SplittingType) -> EngineNu {
    if !engstrom_divides(p, s) {
        return EngineNu::Exact { value: 0 };
    }
    let known: &[(u64, &[(u64, u64)])] = &[
        (2, &[(1, 1), (1, 1), (1, 1), (1, 3), (1, 3)]),
        (2, &[(1, 1), (1, 1), (7, 1)]),
        (3, &[(1, 1), (1, 1), (1, 1), (6, 1)]),
    ];
    if known.iter().any(|(q, pairs)| *q == p && s.pairs() == *pairs) {
        EngineNu::Exact { value: 1 }
    } else {
        EngineNu::Unknown { lower: 1 }
    }
}

/// Divisibility decided over every completion of a partial shape.
pub fn engstrom_divides_shape(p: u64, shape: &Shape) -> Option<bool> {
    let votes: Vec<bool> = shape.candidates().iter().map(|s| engstrom_divides(p, s)).collect();
    if votes.iter().all(|v| *v) {
        Some(true)
    } else if votes.iter().all(|v| !*v) {
        Some(false)
    } else {
        None
    }
}

/// [`engstrom_nu`] over every completion of a partial shape.
pub fn engstrom_nu_shape(p: u64, shape: &Shape) -> EngineNu {
    let values: Vec<EngineNu> = shape.candidates().iter().map(|s| engstrom_nu(p, s)).collect();
    if values.windows(2).all(|w| w[0] == w[1]) {
        if let Some(EngineNu::Exact { value }) = values.first() {
            return EngineNu::Exact { value: *value };
        }
    }
    let lower = match engstrom_divides_shape(p, shape) {
        Some(true) => 1,
        _ => 0,
    };
    EngineNu::Unknown { lower }
}

/// For `p >= 11` no nonic type can beat the irreducible counts:
/// `P_f <= 9 / f < N_f` for every `f`.
pub fn large_prime_bound_holds(p: u64) -> bool {
    (1..=9u32).all(|f| count_monic_irreducibles(p, f) > BigUint::from(9 / f as u64))
}
