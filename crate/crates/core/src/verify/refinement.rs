use std::cmp::Reverse;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Zero;

use super::VerifyError;
use crate::arith::{big_pow, Trinomial, ZPoly};
use crate::newton::{analyze, padic_constant, sharpen, PadicKind};

fn residue(x: &BigInt, m: i64) -> i64 {
    x.mod_floor(&BigInt::from(m)).try_into().unwrap()
}

/// Classes `(a mod 81, b mod 81, a + b mod 243)` of the 3-adic deep branches.
const P3_BRANCHES: [((i64, i64, i64), PadicKind); 6] = [
    ((9, 71, 242), PadicKind::P3DeepA),
    ((72, 10, 1), PadicKind::P3DeepA),
    ((36, 44, 242), PadicKind::P3DeepB),
    ((45, 37, 1), PadicKind::P3DeepB),
    ((63, 17, 80), PadicKind::P3DeepB),
    ((18, 64, 163), PadicKind::P3DeepB),
];

/// The closed-form constant attached to `t` at `p`, if `t` lies in a deep branch.
pub fn deep_branch(t: &Trinomial, p: u64) -> Option<PadicKind> {
    match p {
        2 => (residue(&t.a, 128) == 64 && residue(&t.b, 512) == 256).then_some(PadicKind::P2Deep),
        3 => {
            let key = (residue(&t.a, 81), residue(&t.b, 81), residue(&(&t.a + &t.b), 243));
            P3_BRANCHES.iter().find(|(k, _)| *k == key).map(|(_, kind)| *kind)
        }
        _ => None,
    }
}

/// Center of the deepest refinement stage, sharpened until it agrees with
/// a root of `F` to `precision` digits.
pub fn refinement_center(f: &ZPoly, p: u64, precision: u32) -> Result<BigInt, VerifyError> {
    let la = analyze(f, p)?;
    let (stage, center) = la
        .stages
        .iter()
        .filter_map(|s| s.center().map(|c| (s, c)))
        .min_by_key(|(s, _)| Reverse(s.depth))
        .ok_or(VerifyError::InsufficientPrecision { reached: "0".into(), target: precision })?;
    let (center, reached) = sharpen(f, p, &center, stage.floor, precision as u64)?;
    if reached < Ratio::from_integer(precision as u64) {
        return Err(VerifyError::InsufficientPrecision { reached: reached.to_string(), target: precision });
    }
    Ok(center)
}

/// Compares the engine's refinement center with the closed-form constant
/// modulo `p^precision`.
pub fn check_refinement_constant(t: &Trinomial, p: u64, precision: u32) -> Result<bool, VerifyError> {
    let kind = deep_branch(t, p).ok_or_else(|| VerifyError::BranchMismatch { t: t.clone(), p })?;
    let expected = padic_constant(kind, &t.a, &t.b, precision)?;
    let center = refinement_center(&t.poly(), p, precision)?;
    Ok((center - expected).mod_floor(&big_pow(p, precision)).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(a: i64, b: i64) -> Trinomial {
        Trinomial::from_i64(a, b).unwrap()
    }

    #[test]
    fn branches() {
        assert_eq!(deep_branch(&t(64, 256), 2), Some(PadicKind::P2Deep));
        assert_eq!(deep_branch(&t(90, 19835), 3), Some(PadicKind::P3DeepA));
        assert_eq!(deep_branch(&t(-90, -19835), 3), Some(PadicKind::P3DeepA));
        assert_eq!(deep_branch(&t(54, 87), 2), None);
        assert_eq!(deep_branch(&t(54, 87), 5), None);
    }

    #[test]
    fn mismatch_is_an_error() {
        assert!(matches!(
            check_refinement_constant(&t(54, 87), 2, 10),
            Err(VerifyError::BranchMismatch { .. })
        ));
    }
}
