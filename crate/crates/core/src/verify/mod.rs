//! Independent oracles and cross-check harnesses for the index engine.

mod generator;
mod grid;
mod refinement;
mod witness;

use thiserror::Error;

pub use generator::{
    candidate_polynomials, generator_minpoly, index_upper_bound, GeneratorCandidate, Minpoly,
    RegularCandidate, UpperBound,
};
pub use grid::{
    check_pair, check_pair_masked, cross_check_pairs, cross_check_pairs_masked, grid_cross_check,
    CellFailure, CellOutcome, GridSummary,
};
pub use refinement::{check_refinement_constant, deep_branch, refinement_center};
pub use witness::{deep_witnesses, table_witness, table_witnesses, ALL_ROWS};

use crate::arith::Trinomial;
use crate::index::IndexError;
use crate::newton::NewtonError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("generator polynomial has degree {0}, above 8")]
    DegreeTooLarge(usize),
    #[error("characteristic polynomial does not annihilate h(alpha) for h = {0}")]
    NotAnnihilating(String),
    #[error("no p-regular generator among {examined} candidates")]
    NoWitness { examined: usize },
    #[error("{t} is not in a deep branch at p = {p}")]
    BranchMismatch { t: Trinomial, p: u64 },
    #[error("refinement stalled at slope {reached}, short of precision {target}")]
    InsufficientPrecision { reached: String, target: u32 },
    #[error(transparent)]
    Newton(#[from] NewtonError),
    #[error(transparent)]
    Index(#[from] IndexError),
}

/// Monic irreducibles of degree `f` over `F_p`, counted by striking out
/// every product of two monic polynomials of positive degree.
pub fn count_irreducibles_by_sieve(p: u64, f: u32) -> u64 {
    let monics = |d: u32| -> Vec<Vec<u64>> {
        (0..p.pow(d))
            .map(|mut k| {
                let mut c: Vec<u64> = (0..d)
                    .map(|_| {
                        let r = k % p;
                        k /= p;
                        r
                    })
                    .collect();
                c.push(1);
                c
            })
            .collect()
    };
    let key = |c: &[u64]| c[..c.len() - 1].iter().rev().fold(0u64, |acc, &x| acc * p + x);
    let mut reducible = vec![false; p.pow(f) as usize];
    for d in 1..=f / 2 {
        let (small, large) = (monics(d), monics(f - d));
        for g in &small {
            for h in &large {
                let mut prod = vec![0u64; (f + 1) as usize];
                for (i, x) in g.iter().enumerate() {
                    for (j, y) in h.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                reducible[key(&prod) as usize] = true;
            }
        }
    }
    reducible.iter().filter(|r| !**r).count() as u64
}
