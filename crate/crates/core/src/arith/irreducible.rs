//! Irreducibility over the rationals: a degree-set sieve over small primes,
//! then Hensel lifting with factor recombination.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::Zero;

use super::ZPoly;
use crate::gfpoly::{self, GfPoly};

const SIEVE_PRIMES: usize = 25;

/// Subset sums of the factor degrees, i.e. the degrees of all monic divisors.
fn divisor_degrees(degrees: &[usize]) -> BTreeSet<usize> {
    let mut sums = BTreeSet::from([0]);
    for &d in degrees {
        let next: Vec<usize> = sums.iter().map(|s| s + d).collect();
        sums.extend(next);
    }
    sums
}

/// Decides irreducibility of a monic integer polynomial.
pub fn is_irreducible_poly(f: &ZPoly) -> bool {
    assert!(f.is_monic(), "irreducibility test expects a monic polynomial");
    let n = f.degree().unwrap();
    match n {
        0 => return false,
        1 => return true,
        _ => {}
    }
    if f.coeff(0).is_zero() {
        return false;
    }
    let disc = f.discriminant();
    if disc.is_zero() {
        // repeated factor over Q
        return false;
    }
    let mut allowed: BTreeSet<usize> = (0..=n).collect();
    let mut best: Option<(u64, Vec<GfPoly>)> = None;
    let mut used = 0;
    let mut p = 2u64;
    while used < SIEVE_PRIMES {
        p += 1;
        if !gfpoly::is_small_prime(p) || (&disc % BigInt::from(p)).is_zero() {
            continue;
        }
        used += 1;
        let fac = gfpoly::factor_with_seed(&f.to_gf(p), gfpoly::DEFAULT_SEED).unwrap();
        let factors: Vec<GfPoly> = fac.factors.into_iter().map(|(g, _)| g).collect();
        let degs: Vec<usize> = factors.iter().map(|g| g.degree().unwrap()).collect();
        allowed = allowed.intersection(&divisor_degrees(&degs)).copied().collect();
        if allowed.len() == 2 {
            return true;
        }
        if best.as_ref().is_none_or(|(_, b)| factors.len() < b.len()) {
            best = Some((p, factors));
        }
    }
    let (p, factors) = best.unwrap();
    !has_factor(f, p, &factors, &allowed)
}

/// Searches for a nontrivial monic factor among products of Hensel lifts.
fn has_factor(f: &ZPoly, p: u64, factors: &[GfPoly], allowed: &BTreeSet<usize>) -> bool {
    let n = f.degree().unwrap();
    let half = n / 2;
    // Mignotte: a monic factor of degree d has |coeff| <= C(d, d/2) * |f|_2
    let bound = binomial(BigInt::from(half), BigInt::from(half / 2))
        * BigInt::from(f.l2_norm_bound());
    let two_b = bound * 2u32 + 1u32;
    let pb = BigInt::from(p);
    let mut modulus = pb.clone();
    let mut k = 1u32;
    while modulus <= two_b {
        modulus *= &pb;
        k += 1;
    }
    let lifted = hensel_lift(f, p, factors, k);
    let r = lifted.len();
    for mask in 1u32..(1 << r) - 1 {
        let deg: usize = (0..r)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| lifted[i].degree().unwrap())
            .sum();
        if deg > half || !allowed.contains(&deg) {
            continue;
        }
        let g = (0..r)
            .filter(|i| mask >> i & 1 == 1)
            .fold(ZPoly::one(), |acc, i| (&acc * &lifted[i]).reduce_mod(&modulus))
            .symmetric_mod(&modulus);
        if f.div_exact_poly(&g).is_some() {
            return true;
        }
    }
    false
}

/// Lifts a factorization of squarefree `f mod p` into monic factors
/// modulo `p^k`.
pub(crate) fn hensel_lift(f: &ZPoly, p: u64, factors: &[GfPoly], k: u32) -> Vec<ZPoly> {
    if factors.len() == 1 {
        return vec![f.reduce_mod(&BigInt::from(p).pow(k))];
    }
    let g0 = &factors[0];
    let h0 = factors[1..]
        .iter()
        .fold(GfPoly::one(g0.field()), |acc, g| acc.mul(g));
    let (g, h) = lift_pair(f, p, g0, &h0, k);
    let mut out = vec![g];
    out.extend(hensel_lift(&h, p, &factors[1..], k));
    out
}

/// Linear Hensel lifting of `f = g h mod p` to `mod p^k`, both monic.
fn lift_pair(f: &ZPoly, p: u64, g0: &GfPoly, h0: &GfPoly, k: u32) -> (ZPoly, ZPoly) {
    let (one, s, t) = g0.xgcd(h0);
    assert!(one.is_one(), "factors must be coprime mod p");
    let pb = BigInt::from(p);
    let mut g = ZPoly::lift(g0);
    let mut h = ZPoly::lift(h0);
    let mut pj = pb.clone();
    for _ in 1..k {
        let err = (f - &(&g * &h)).div_exact(&pj);
        let e = err.to_gf(p);
        let a = e.mul(&t).rem(g0);
        let b = e.mul(&s).rem(h0);
        g = &g + &ZPoly::lift(&a).scale(&pj);
        h = &h + &ZPoly::lift(&b).scale(&pj);
        pj *= &pb;
    }
    (g.reduce_mod(&pj), h.reduce_mod(&pj))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfpoly::Fq;

    #[test]
    fn lifts_reproduce_f() {
        // x^4 + 1 splits into four linears mod 17
        let f = ZPoly::from_i64(&[1, 0, 0, 0, 1]);
        let fac = gfpoly::factor_mod_p(&f, 17).unwrap();
        let factors: Vec<_> = fac.factors.into_iter().map(|(g, _)| g).collect();
        let lifted = hensel_lift(&f, 17, &factors, 6);
        let m = BigInt::from(17).pow(6);
        let prod = lifted.iter().fold(ZPoly::one(), |acc, g| (&acc * g).reduce_mod(&m));
        assert_eq!(prod, f.reduce_mod(&m));
    }

    #[test]
    fn swinnerton_dyer_like() {
        // x^4 + 1 is irreducible over Q but reducible mod every prime
        assert!(is_irreducible_poly(&ZPoly::from_i64(&[1, 0, 0, 0, 1])));
        // (x^2 + 1)(x^2 + 2) needs recombination
        let f = &ZPoly::from_i64(&[1, 0, 1]) * &ZPoly::from_i64(&[2, 0, 1]);
        assert!(!is_irreducible_poly(&f));
    }

    #[test]
    fn degree_sets() {
        let s = divisor_degrees(&[1, 3]);
        assert_eq!(s.into_iter().collect::<Vec<_>>(), vec![0, 1, 3, 4]);
        let _ = Fq::prime(2);
    }
}
