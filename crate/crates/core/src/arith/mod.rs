//! Exact integer kernels for the trinomial family `x^9 + a x^2 + b`.

mod irreducible;
mod zpoly;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

pub use irreducible::is_irreducible_poly;
pub use zpoly::{determinant, ZPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("b = 0 makes x^9 + a x^2 + b reducible")]
    ZeroConstant,
    #[error("the unit part of 0 is undefined")]
    ZeroInput,
}

/// A p-adic valuation; `Infinity` only for zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Valuation {
    Finite(u64),
    Infinity,
}

impl Valuation {
    pub fn finite(self) -> Option<u64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Valuation::Infinity
    }

    /// The finite value; panics on `Infinity`.
    pub fn unwrap(self) -> u64 {
        self.finite().expect("valuation of zero")
    }
}

impl PartialEq<u64> for Valuation {
    fn eq(&self, other: &u64) -> bool {
        *self == Valuation::Finite(*other)
    }
}

impl PartialOrd<u64> for Valuation {
    fn partial_cmp(&self, other: &u64) -> Option<Ordering> {
        Some(self.cmp(&Valuation::Finite(*other)))
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => write!(f, "inf"),
        }
    }
}

/// Largest `k` with `p^k | m`.
pub fn vp(p: u64, m: &BigInt) -> Valuation {
    if m.is_zero() {
        return Valuation::Infinity;
    }
    if p == 2 {
        return Valuation::Finite(m.trailing_zeros().unwrap());
    }
    let pb = BigInt::from(p);
    let mut k = 0;
    let mut cur = m.clone();
    loop {
        let (q, r) = cur.div_rem(&pb);
        if !r.is_zero() {
            return Valuation::Finite(k);
        }
        cur = q;
        k += 1;
    }
}

/// `m / p^vp(p, m)`, sign preserved.
pub fn unit_part(p: u64, m: &BigInt) -> Result<BigInt, ArithError> {
    let v = vp(p, m).finite().ok_or(ArithError::ZeroInput)?;
    Ok(m / BigInt::from(p).pow(v as u32))
}

/// The pair `(a, b)` defining `x^9 + a x^2 + b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Trinomial {
    pub a: BigInt,
    pub b: BigInt,
    pub normalized: bool,
}

impl Trinomial {
    pub fn new(a: BigInt, b: BigInt) -> Result<Self, ArithError> {
        if b.is_zero() {
            return Err(ArithError::ZeroConstant);
        }
        Ok(Self { a, b, normalized: false })
    }

    pub fn from_i64(a: i64, b: i64) -> Result<Self, ArithError> {
        Self::new(a.into(), b.into())
    }

    pub fn poly(&self) -> ZPoly {
        ZPoly::trinomial(&self.a, &self.b)
    }

    /// `(-a, -b)`: the polynomial of `-alpha`, same field.
    pub fn negated(&self) -> Self {
        Self { a: -&self.a, b: -&self.b, normalized: self.normalized }
    }
}

impl fmt::Display for Trinomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// `b (3^18 b^7 + 4 * 7^7 a^9)`.
pub fn discriminant(t: &Trinomial) -> BigInt {
    let c3 = BigInt::from(3u32).pow(18);
    let c7 = BigInt::from(4u32) * BigInt::from(7u32).pow(7);
    &t.b * (c3 * t.b.pow(7) + c7 * t.a.pow(9))
}

/// The discriminant from the Sylvester resultant of `F` and `F'`.
pub fn discriminant_resultant(t: &Trinomial) -> BigInt {
    t.poly().discriminant()
}

pub fn mobius(n: u64) -> i64 {
    let mut n = n;
    let mut sign = 1;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Number of monic irreducible polynomials of degree `f` over `F_p`.
pub fn count_monic_irreducibles(p: u64, f: u32) -> BigUint {
    assert!(f >= 1, "degree must be positive");
    let pb = BigInt::from(p);
    let total: BigInt = (1..=f)
        .filter(|d| f % d == 0)
        .map(|d| BigInt::from(mobius(d as u64)) * pb.pow(f / d))
        .sum();
    let (q, r) = total.div_rem(&BigInt::from(f));
    debug_assert!(r.is_zero());
    q.to_biguint().unwrap()
}

/// Removes every scaling `(a, b) -> (a/p^7, b/p^9)` available, giving the
/// same field with `vp(a) <= 6` or `vp(b) <= 8` for every prime.
pub fn normalize(t: &Trinomial) -> Trinomial {
    let (mut a, mut b) = (t.a.clone(), t.b.clone());
    let bound = if a.is_zero() {
        b.abs().nth_root(9)
    } else {
        a.abs().nth_root(7).min(b.abs().nth_root(9))
    };
    let mut d = BigInt::from(2u32);
    while d <= bound {
        let (d7, d9) = (d.pow(7), d.pow(9));
        while a.is_multiple_of(&d7) && b.is_multiple_of(&d9) {
            a /= &d7;
            b /= &d9;
        }
        d += 1u32;
    }
    Trinomial { a, b, normalized: true }
}

/// Decides irreducibility of `x^9 + a x^2 + b` over the rationals.
pub fn is_irreducible(a: &BigInt, b: &BigInt) -> bool {
    b.sign() != Sign::NoSign && is_irreducible_poly(&ZPoly::trinomial(a, b))
}

/// `p^k` as a big integer.
pub fn big_pow(p: u64, k: u32) -> BigInt {
    BigInt::from(p).pow(k)
}
