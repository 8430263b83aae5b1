//! Polynomials over finite fields and their factorization.

mod factor;
mod field;
mod poly;

use thiserror::Error;

pub use factor::Factorization;
pub use field::{Fq, FqElem};
pub use poly::GfPoly;

use crate::arith::ZPoly;

/// Seed for equal-degree splitting when `TRINOMIAL_INDEX_SEED` is unset.
pub const DEFAULT_SEED: u64 = 0x5eed_0009;

/// Environment variable overriding [`DEFAULT_SEED`].
pub const SEED_ENV: &str = "TRINOMIAL_INDEX_SEED";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("zero polynomial has no factorization")]
    ZeroPolynomial,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("modulus is not monic irreducible over F_{0}")]
    BadModulus(u64),
}

/// The active splitting seed: the environment override if it parses,
/// otherwise [`DEFAULT_SEED`].
pub fn seed() -> u64 {
    std::env::var(SEED_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

pub(crate) fn is_small_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Checked constructor for `F_p[t]/(m)`; `modulus` is little-endian.
pub fn extension_field(p: u64, modulus: &[u64]) -> Result<Fq, GfError> {
    if !is_small_prime(p) {
        return Err(GfError::NotPrime(p));
    }
    let base = Fq::prime(p);
    let m = GfPoly::from_u64s(&base, modulus);
    if !m.is_monic() || !factor::is_irreducible(&m) {
        return Err(GfError::BadModulus(p));
    }
    let coords = m.coeffs().iter().map(|c| base.to_u64(c)).collect();
    Ok(Fq::from_modulus_unchecked(p, coords))
}

/// The residue field `F_p[x]/(phi)` for a monic irreducible `phi` over `F_p`.
pub fn residue_field(phi: &GfPoly) -> Fq {
    let f = phi.field();
    debug_assert_eq!(f.degree(), 1);
    let coords = phi.coeffs().iter().map(|c| f.to_u64(c)).collect();
    Fq::from_modulus_unchecked(f.characteristic(), coords)
}

/// Factors `f mod p` into monic irreducibles over `F_p`.
pub fn factor_mod_p(f: &ZPoly, p: u64) -> Result<Factorization, GfError> {
    if !is_small_prime(p) {
        return Err(GfError::NotPrime(p));
    }
    factor_over_extension(&f.to_gf(p))
}

/// Factors a polynomial over whatever field it is defined over.
pub fn factor_over_extension(g: &GfPoly) -> Result<Factorization, GfError> {
    factor_with_seed(g, seed())
}

pub fn factor_with_seed(g: &GfPoly, seed: u64) -> Result<Factorization, GfError> {
    if g.is_zero() {
        return Err(GfError::ZeroPolynomial);
    }
    Ok(factor::factor_nonzero(g, seed))
}

/// Squarefree test; `None` for the zero polynomial.
pub fn is_squarefree(g: &GfPoly) -> Option<bool> {
    (!g.is_zero()).then(|| g.is_squarefree())
}

pub fn is_irreducible(g: &GfPoly) -> bool {
    factor::is_irreducible(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64, c: &[i64]) -> GfPoly {
        GfPoly::from_i64s(&Fq::prime(p), c)
    }

    #[test]
    fn cubic_over_f2() {
        let fac = factor_over_extension(&fp(2, &[1, 0, 0, 1])).unwrap();
        let texts: Vec<_> = fac.factors.iter().map(|(g, m)| (g.to_text("y"), *m)).collect();
        assert_eq!(texts, vec![("1 + y".into(), 1), ("1 + y + y^2".into(), 1)]);
    }

    #[test]
    fn unit_is_kept() {
        let g = fp(3, &[1, 0, -1]);
        let fac = factor_over_extension(&g).unwrap();
        assert_eq!(fac.unit, Fq::prime(3).from_i64(-1));
        assert_eq!(fac.factors.len(), 2);
        assert_eq!(fac.product(&Fq::prime(3)), g);
    }

    #[test]
    fn ninth_power() {
        let fac = factor_over_extension(&fp(2, &[0, 0, 0, 0, 0, 0, 0, 0, 0, 1])).unwrap();
        assert_eq!(fac.factors.len(), 1);
        assert_eq!(fac.factors[0].1, 9);
    }

    #[test]
    fn inseparable_input() {
        // (y^2 + y + 1)^2 * (y + 1)^3 over F2
        let a = fp(2, &[1, 1, 1]);
        let b = fp(2, &[1, 1]);
        let g = a.pow(2).mul(&b.pow(3));
        let fac = factor_over_extension(&g).unwrap();
        assert_eq!(fac.factors, vec![(b, 3), (a, 2)]);
    }

    #[test]
    fn over_f4() {
        let f4 = extension_field(2, &[1, 1, 1]).unwrap();
        // y^2 + y + 1 splits over F4
        let g = GfPoly::from_u64s(&f4, &[1, 1, 1]);
        let fac = factor_over_extension(&g).unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert_eq!(fac.roots().len(), 2);
        assert_eq!(fac.product(&f4), g);
    }

    #[test]
    fn rejects_bad_modulus() {
        assert_eq!(extension_field(2, &[1, 0, 1]), Err(GfError::BadModulus(2)));
        assert_eq!(extension_field(4, &[1, 1, 1]), Err(GfError::NotPrime(4)));
        assert_eq!(factor_over_extension(&fp(5, &[])), Err(GfError::ZeroPolynomial));
    }

    #[test]
    fn seeds_agree() {
        let g = fp(7, &[3, 1, 4, 1, 5, 0, 2, 6, 5, 1]);
        assert_eq!(factor_with_seed(&g, 1), factor_with_seed(&g, 99));
    }
}
