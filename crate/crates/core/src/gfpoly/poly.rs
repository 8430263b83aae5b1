use std::fmt;

use num_bigint::BigUint;

use super::field::{Fq, FqElem};

/// Polynomial over a finite field, little-endian, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GfPoly {
    field: Fq,
    coeffs: Vec<FqElem>,
}

impl GfPoly {
    pub fn new(field: &Fq, mut coeffs: Vec<FqElem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { field: field.clone(), coeffs }
    }

    /// Prime-field (or constant-coefficient) polynomial from residues.
    pub fn from_u64s(field: &Fq, coeffs: &[u64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_u64(c)).collect())
    }

    pub fn from_i64s(field: &Fq, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: &Fq) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn one(field: &Fq) -> Self {
        Self::new(field, vec![field.one()])
    }

    pub fn constant(field: &Fq, c: FqElem) -> Self {
        Self::new(field, vec![c])
    }

    /// The indeterminate.
    pub fn x(field: &Fq) -> Self {
        Self::new(field, vec![field.zero(), field.one()])
    }

    /// `x - r`
    pub fn linear(field: &Fq, root: &FqElem) -> Self {
        Self::new(field, vec![field.neg(root), field.one()])
    }

    pub fn field(&self) -> &Fq {
        &self.field
    }

    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FqElem {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> FqElem {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.field.is_one(&self.coeffs[0])
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| self.field.is_one(c))
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(&self.leading()).unwrap();
        self.scale(&inv)
    }

    pub fn scale(&self, c: &FqElem) -> Self {
        let f = &self.field;
        Self::new(f, self.coeffs.iter().map(|a| f.mul(a, c)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(f, (0..n).map(|i| f.add(&self.coeff(i), &other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(f, (0..n).map(|i| f.sub(&self.coeff(i), &other.coeff(i))).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Self::zero(f);
        }
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        Self::new(f, out)
    }

    pub fn pow(&self, n: usize) -> Self {
        (0..n).fold(Self::one(&self.field), |acc, _| acc.mul(self))
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let f = &self.field;
        let dd = divisor.degree().expect("division by zero polynomial");
        let inv = f.inv(&divisor.leading()).unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(f), self.clone());
        }
        let mut quot = vec![f.zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = f.mul(&rem[i + dd], &inv);
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = f.sub(&rem[i + j], &f.mul(&c, d));
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::new(f, quot), Self::new(f, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Monic gcd (zero when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn xgcd(&self, other: &Self) -> (Self, Self, Self) {
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(f), Self::zero(f));
        let (mut t0, mut t1) = (Self::zero(f), Self::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = f.inv(&r0.leading()).unwrap();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        Self::new(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| f.mul(c, &f.from_u64(i as u64)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &FqElem) -> FqElem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    pub fn mul_mod(&self, other: &Self, modulus: &Self) -> Self {
        self.mul(other).rem(modulus)
    }

    /// `self^exp mod modulus` by square-and-multiply.
    pub fn pow_mod(&self, exp: &BigUint, modulus: &Self) -> Self {
        let base = self.rem(modulus);
        let mut acc = Self::one(&self.field).rem(modulus);
        for i in (0..exp.bits()).rev() {
            acc = acc.mul_mod(&acc, modulus);
            if exp.bit(i) {
                acc = acc.mul_mod(&base, modulus);
            }
        }
        acc
    }

    /// True iff `gcd(g, g')` is constant.
    pub fn is_squarefree(&self) -> bool {
        assert!(!self.is_zero(), "squarefree test of zero polynomial");
        self.gcd(&self.derivative()).is_constant()
    }

    /// Ordering key used to sort factorizations deterministically.
    pub(crate) fn sort_key(&self) -> (usize, Vec<FqElem>) {
        let mut c = self.coeffs.clone();
        c.reverse();
        (self.coeffs.len(), c)
    }

    /// Canonical ascending-power text in the variable `var`, e.g. `1 + y^3`.
    pub fn to_text(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let f = &self.field;
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cs = f.format(c);
            let wrapped = if cs.contains('+') { format!("({cs})") } else { cs };
            let one = f.is_one(c);
            parts.push(match i {
                0 => wrapped,
                1 if one => var.to_string(),
                1 => format!("{wrapped}*{var}"),
                _ if one => format!("{var}^{i}"),
                _ => format!("{wrapped}*{var}^{i}"),
            });
        }
        parts.join(" + ")
    }
}

impl fmt::Display for GfPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text("x"))
    }
}
