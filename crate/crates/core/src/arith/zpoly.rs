//! Dense integer polynomials, little-endian coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{vp, Valuation};
use crate::gfpoly::{Fq, GfPoly};

/// Polynomial in `Z[x]`. The coefficient vector never has a trailing zero,
/// so the zero polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ZPoly {
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `x - c`
    pub fn linear(c: &BigInt) -> Self {
        Self::new(vec![-c, BigInt::one()])
    }

    /// `x^n`
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        Self { coeffs }
    }

    /// `x^9 + a x^2 + b`
    pub fn trinomial(a: &BigInt, b: &BigInt) -> Self {
        let mut coeffs = vec![BigInt::zero(); 10];
        coeffs[0] = b.clone();
        coeffs[2] = a.clone();
        coeffs[9] = BigInt::one();
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Divides every coefficient by `k`; the caller guarantees exactness.
    pub fn div_exact(&self, k: &BigInt) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .map(|c| {
                    debug_assert!((c % k).is_zero());
                    c / k
                })
                .collect(),
        )
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// gcd of the coefficients (non-negative; zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// `self(x + c)`, by repeated synthetic division.
    pub fn taylor_shift(&self, c: &BigInt) -> Self {
        let mut a = self.coeffs.clone();
        let n = a.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let t = &a[j + 1] * c;
                a[j] += t;
            }
        }
        Self::new(a)
    }

    /// `self(g(x))` by Horner's rule.
    pub fn compose(&self, g: &ZPoly) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(ZPoly::zero(), |acc, c| &(&acc * g) + &ZPoly::constant(c.clone()))
    }

    /// Euclidean division by a monic divisor.
    pub fn div_rem_monic(&self, divisor: &ZPoly) -> (ZPoly, ZPoly) {
        assert!(divisor.is_monic(), "divisor must be monic");
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (ZPoly::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let q = rem[i + dd].clone();
            if q.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &q * d;
            }
            quot[i] = q;
        }
        rem.truncate(dd);
        (ZPoly::new(quot), ZPoly::new(rem))
    }

    /// Exact division over `Z`, or `None` when `divisor` does not divide `self`.
    pub fn div_exact_poly(&self, divisor: &ZPoly) -> Option<ZPoly> {
        let dd = divisor.degree()?;
        if self.is_zero() {
            return Some(ZPoly::zero());
        }
        let lc = divisor.leading().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return None;
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let (q, r) = rem[i + dd].div_rem(lc);
            if !r.is_zero() {
                return None;
            }
            if q.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &q * d;
            }
            quot[i] = q;
        }
        if rem.iter().all(|c| c.is_zero()) {
            Some(ZPoly::new(quot))
        } else {
            None
        }
    }

    /// Minimum p-adic valuation of the coefficients (Gauss valuation).
    pub fn gauss_valuation(&self, p: u64) -> Valuation {
        self.coeffs
            .iter()
            .map(|c| vp(p, c))
            .min()
            .unwrap_or(Valuation::Infinity)
    }

    /// Coefficients reduced into `[0, m)`.
    pub fn reduce_mod(&self, m: &BigInt) -> ZPoly {
        ZPoly::new(self.coeffs.iter().map(|c| c.mod_floor(m)).collect())
    }

    /// Coefficients reduced into the symmetric range `(-m/2, m/2]`.
    pub fn symmetric_mod(&self, m: &BigInt) -> ZPoly {
        let half: BigInt = m >> 1;
        ZPoly::new(
            self.coeffs
                .iter()
                .map(|c| {
                    let r = c.mod_floor(m);
                    if r > half {
                        r - m
                    } else {
                        r
                    }
                })
                .collect(),
        )
    }

    /// Image in `F_p[x]`.
    pub fn to_gf(&self, p: u64) -> GfPoly {
        let field = Fq::prime(p);
        let pb = BigInt::from(p);
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| field.from_u64(c.mod_floor(&pb).to_u64().unwrap()))
            .collect();
        GfPoly::new(&field, coeffs)
    }

    /// Lift of a polynomial over a prime field with coefficients in `[0, p)`.
    pub fn lift(g: &GfPoly) -> ZPoly {
        assert_eq!(g.field().degree(), 1, "lift expects a prime-field polynomial");
        ZPoly::new(
            g.coeffs()
                .iter()
                .map(|c| BigInt::from(g.field().to_u64(c)))
                .collect(),
        )
    }

    pub fn l2_norm_bound(&self) -> BigUint {
        // ceil(sqrt(sum c_i^2))
        let s: BigInt = self.coeffs.iter().map(|c| c * c).sum();
        let s = s.to_biguint().unwrap();
        let r = s.sqrt();
        if &r * &r == s {
            r
        } else {
            r + 1u32
        }
    }

    /// Resultant of two nonzero polynomials via the Sylvester determinant.
    pub fn resultant(&self, other: &ZPoly) -> BigInt {
        let (m, n) = match (self.degree(), other.degree()) {
            (Some(m), Some(n)) => (m, n),
            _ => return BigInt::zero(),
        };
        if m == 0 && n == 0 {
            return BigInt::one();
        }
        determinant(sylvester_matrix(self, other, m, n))
    }

    /// `disc(f) = (-1)^{n(n-1)/2} Res(f, f') / lc(f)`.
    pub fn discriminant(&self) -> BigInt {
        let n = self.degree().expect("discriminant of zero polynomial");
        let res = self.resultant(&self.derivative());
        let res = res / self.leading().unwrap();
        if (n * (n.saturating_sub(1)) / 2) % 2 == 0 {
            res
        } else {
            -res
        }
    }
}

fn sylvester_matrix(f: &ZPoly, g: &ZPoly, m: usize, n: usize) -> Vec<Vec<BigInt>> {
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![BigInt::zero(); size];
        for (j, c) in f.coeffs.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![BigInt::zero(); size];
        for (j, c) in g.coeffs.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Fraction-free Gaussian elimination (Bareiss).
pub fn determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

impl Add for &ZPoly {
    type Output = ZPoly;
    fn add(self, rhs: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ZPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &ZPoly {
    type Output = ZPoly;
    fn sub(self, rhs: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ZPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &ZPoly {
    type Output = ZPoly;
    fn mul(self, rhs: &ZPoly) -> ZPoly {
        if self.is_zero() || rhs.is_zero() {
            return ZPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ZPoly::new(out)
    }
}

impl Neg for &ZPoly {
    type Output = ZPoly;
    fn neg(self) -> ZPoly {
        ZPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for ZPoly {
    /// Descending powers, e.g. `x^9 + 64*x^2 + 256`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{mag}*x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn taylor_shift_matches_composition() {
        let f = ZPoly::trinomial(&big(5), &big(-3));
        let c = big(7);
        let shifted = f.taylor_shift(&c);
        let composed = f.compose(&ZPoly::from_i64(&[7, 1]));
        assert_eq!(shifted, composed);
        assert_eq!(shifted.eval(&big(2)), f.eval(&big(9)));
    }

    #[test]
    fn division_by_linear_factor() {
        // x^9 + 64x^2 + 256 has the root -2
        let f = ZPoly::trinomial(&big(64), &big(256));
        let (q, r) = f.div_rem_monic(&ZPoly::linear(&big(-2)));
        assert!(r.is_zero());
        assert_eq!(&q * &ZPoly::linear(&big(-2)), f);
        assert_eq!(f.div_exact_poly(&ZPoly::from_i64(&[2, 1])), Some(q));
        assert_eq!(f.div_exact_poly(&ZPoly::from_i64(&[3, 1])), None);
    }

    #[test]
    fn small_resultants() {
        // Res(x^2 - 2, x - 1) = (1)^2 - 2 = -1
        let f = ZPoly::from_i64(&[-2, 0, 1]);
        let g = ZPoly::from_i64(&[-1, 1]);
        assert_eq!(f.resultant(&g), big(-1));
        // disc(x^2 + b x + c) = b^2 - 4c
        let q = ZPoly::from_i64(&[3, 5, 1]);
        assert_eq!(q.discriminant(), big(25 - 12));
        // disc(x^3 + x + 1) = -4 - 27
        assert_eq!(ZPoly::from_i64(&[1, 1, 0, 1]).discriminant(), big(-31));
    }

    #[test]
    fn display_descending() {
        let f = ZPoly::trinomial(&big(-1), &big(1));
        assert_eq!(f.to_string(), "x^9 - x^2 + 1");
    }
}
