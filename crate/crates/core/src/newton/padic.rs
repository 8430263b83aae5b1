use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::NewtonError;
use crate::arith::{unit_part, vp};

/// The closed-form approximations of a root used in the deep branches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PadicKind {
    /// `2 * 7^3 a_2^4 / (3^8 b_2^3)` with `a_2`, `b_2` the 2-free parts.
    P2Deep,
    /// `2 * 7^3 a_3^4 / b^3` with `a_3 = a / 9`.
    P3DeepA,
    /// `b / (20 a_3^2)` with `a_3 = a / 9`.
    P3DeepB,
}

impl PadicKind {
    pub fn prime(self) -> u64 {
        match self {
            PadicKind::P2Deep => 2,
            PadicKind::P3DeepA | PadicKind::P3DeepB => 3,
        }
    }
}

/// `a^-1 mod m`, when it exists.
pub fn inverse_mod(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// The constant as an element of `Z / p^precision`, in `[0, p^precision)`.
pub fn padic_constant(
    kind: PadicKind,
    a: &BigInt,
    b: &BigInt,
    precision: u32,
) -> Result<BigInt, NewtonError> {
    let p = kind.prime();
    let modulus = BigInt::from(p).pow(precision);
    let c343 = BigInt::from(2 * 343);
    let (num, den) = match kind {
        PadicKind::P2Deep => {
            if a.is_zero() || b.is_zero() {
                return Err(NewtonError::NonUnitDenominator);
            }
            let a2 = unit_part(2, a).unwrap();
            let b2 = unit_part(2, b).unwrap();
            (c343 * a2.pow(4), BigInt::from(6561) * b2.pow(3))
        }
        PadicKind::P3DeepA | PadicKind::P3DeepB => {
            if !a.is_multiple_of(&BigInt::from(9)) {
                return Err(NewtonError::NonUnitDenominator);
            }
            let a3: BigInt = a / 9;
            if kind == PadicKind::P3DeepA {
                (c343 * a3.pow(4), b.pow(3))
            } else {
                (b.clone(), BigInt::from(20) * a3.pow(2))
            }
        }
    };
    if vp(p, &den) != 0 {
        return Err(NewtonError::NonUnitDenominator);
    }
    let inv = inverse_mod(&den, &modulus).ok_or(NewtonError::NonUnitDenominator)?;
    Ok((num * inv).mod_floor(&modulus))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn p2_unit_case() {
        // 686 / 6561 mod 8 = 6 * 1
        assert_eq!(padic_constant(PadicKind::P2Deep, &big(64), &big(256), 3).unwrap(), big(6));
        let u = padic_constant(PadicKind::P2Deep, &big(64), &big(256), 20).unwrap();
        let m = big(1 << 20);
        assert_eq!((u * big(6561)).mod_floor(&m), big(686));
    }

    #[test]
    fn p3_constants() {
        // a_3 = 1, b = -1: (-1) * 20^-1 = 1 mod 3
        assert_eq!(padic_constant(PadicKind::P3DeepB, &big(9), &big(-1), 1).unwrap(), big(1));
        let u = padic_constant(PadicKind::P3DeepA, &big(90), &big(19835), 10).unwrap();
        let m = big(59049);
        assert_eq!((u * big(19835).pow(3)).mod_floor(&m), (big(686) * big(10).pow(4)).mod_floor(&m));
    }

    #[test]
    fn rejects_non_units() {
        assert_eq!(
            padic_constant(PadicKind::P3DeepA, &big(9), &big(3), 5),
            Err(NewtonError::NonUnitDenominator)
        );
        assert_eq!(
            padic_constant(PadicKind::P3DeepB, &big(10), &big(1), 5),
            Err(NewtonError::NonUnitDenominator)
        );
    }
}
