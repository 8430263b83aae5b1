//! Finite fields `F_q = F_p[t]/(m(t))`.
//!
//! The prime field is the special case `m(t) = t`. Elements are residue
//! polynomials in `t` of degree `< deg m`, stored without trailing zeros.

use std::fmt;

use num_bigint::BigUint;
use rand::Rng;

#[inline]
pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
pub(crate) fn addmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

#[inline]
pub(crate) fn submod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        p - (b - a)
    }
}

pub(crate) fn powmod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub(crate) fn invmod(a: u64, p: u64) -> Option<u64> {
    if a % p == 0 {
        None
    } else {
        Some(powmod(a, p - 2, p))
    }
}

// Dense F_p polynomial helpers on raw coefficient vectors.

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn fp_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = addmod(out[i + j], mulmod(x, y, p), p);
        }
    }
    trim(&mut out);
    out
}

fn fp_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let inv = invmod(*m.last().unwrap(), p).expect("nonzero leading coefficient");
    while r.len() > dm {
        let top = r.len() - 1;
        let q = mulmod(r[top], inv, p);
        if q != 0 {
            for (j, &c) in m.iter().enumerate() {
                let idx = top - dm + j;
                r[idx] = submod(r[idx], mulmod(q, c, p), p);
            }
        }
        r.pop();
        trim(&mut r);
    }
    r
}

fn fp_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out: Vec<u64> = (0..n)
        .map(|i| submod(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0), p))
        .collect();
    trim(&mut out);
    out
}

fn fp_div_rem(a: &[u64], m: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    if r.len() <= dm {
        return (Vec::new(), r);
    }
    let inv = invmod(*m.last().unwrap(), p).unwrap();
    let mut q = vec![0u64; r.len() - dm];
    while r.len() > dm {
        let top = r.len() - 1;
        let c = mulmod(r[top], inv, p);
        q[top - dm] = c;
        if c != 0 {
            for (j, &mc) in m.iter().enumerate() {
                let idx = top - dm + j;
                r[idx] = submod(r[idx], mulmod(c, mc, p), p);
            }
        }
        r.pop();
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

/// Inverse of `a` modulo `m` over `F_p`, when they are coprime.
fn fp_inv_mod(a: &[u64], m: &[u64], p: u64) -> Option<Vec<u64>> {
    // extended Euclid tracking only the coefficient of `a`
    let (mut r0, mut r1) = (m.to_vec(), fp_rem(a, m, p));
    let (mut s0, mut s1): (Vec<u64>, Vec<u64>) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = fp_div_rem(&r0, &r1, p);
        let s2 = fp_sub(&s0, &fp_mul(&q, &s1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = invmod(r0[0], p)?;
    let mut out: Vec<u64> = s0.iter().map(|&x| mulmod(x, c, p)).collect();
    trim(&mut out);
    Some(fp_rem(&out, m, p))
}

/// Element of a finite field; coordinates in the power basis of `t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FqElem(Vec<u64>);

impl FqElem {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

/// The finite field `F_p[t]/(m(t))` with `m` monic irreducible over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fq {
    p: u64,
    modulus: Vec<u64>,
}

impl Fq {
    pub fn prime(p: u64) -> Self {
        assert!(p >= 2, "characteristic must be a prime");
        Self { p, modulus: vec![0, 1] }
    }

    /// Builds `F_p[t]/(m)` from raw coefficients; the caller guarantees that
    /// `m` is monic irreducible. See [`crate::gfpoly::extension_field`] for a
    /// checked constructor.
    pub(crate) fn from_modulus_unchecked(p: u64, modulus: Vec<u64>) -> Self {
        debug_assert_eq!(modulus.last(), Some(&1));
        if modulus.len() == 2 {
            return Self::prime(p);
        }
        Self { p, modulus }
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn order(&self) -> BigUint {
        BigUint::from(self.p).pow(self.degree() as u32)
    }

    pub fn zero(&self) -> FqElem {
        FqElem(Vec::new())
    }

    pub fn one(&self) -> FqElem {
        FqElem(vec![1])
    }

    pub fn from_u64(&self, c: u64) -> FqElem {
        let c = c % self.p;
        if c == 0 {
            self.zero()
        } else {
            FqElem(vec![c])
        }
    }

    pub fn from_i64(&self, c: i64) -> FqElem {
        self.from_u64(c.rem_euclid(self.p as i64) as u64)
    }

    pub fn from_coords(&self, coords: &[u64]) -> FqElem {
        let v: Vec<u64> = coords.iter().map(|c| c % self.p).collect();
        FqElem(fp_rem(&v, &self.modulus, self.p))
    }

    /// The class of `t` itself.
    pub fn generator(&self) -> FqElem {
        self.from_coords(&[0, 1])
    }

    /// Value of a prime-field element in `[0, p)`.
    pub fn to_u64(&self, a: &FqElem) -> u64 {
        assert!(a.0.len() <= 1, "not a prime-field element");
        a.0.first().copied().unwrap_or(0)
    }

    pub fn is_one(&self, a: &FqElem) -> bool {
        a.0 == [1]
    }

    pub fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let n = a.0.len().max(b.0.len());
        let mut v: Vec<u64> = (0..n)
            .map(|i| addmod(*a.0.get(i).unwrap_or(&0), *b.0.get(i).unwrap_or(&0), self.p))
            .collect();
        trim(&mut v);
        FqElem(v)
    }

    pub fn sub(&self, a: &FqElem, b: &FqElem) -> FqElem {
        FqElem(fp_sub(&a.0, &b.0, self.p))
    }

    pub fn neg(&self, a: &FqElem) -> FqElem {
        self.sub(&self.zero(), a)
    }

    pub fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        if self.degree() == 1 {
            if a.is_zero() || b.is_zero() {
                return self.zero();
            }
            return self.from_u64(mulmod(a.0[0], b.0[0], self.p));
        }
        FqElem(fp_rem(&fp_mul(&a.0, &b.0, self.p), &self.modulus, self.p))
    }

    pub fn inv(&self, a: &FqElem) -> Option<FqElem> {
        if a.is_zero() {
            return None;
        }
        if self.degree() == 1 {
            return invmod(a.0[0], self.p).map(|c| self.from_u64(c));
        }
        fp_inv_mod(&a.0, &self.modulus, self.p).map(FqElem)
    }

    pub fn pow(&self, a: &FqElem, exp: &BigUint) -> FqElem {
        let mut acc = self.one();
        for i in (0..exp.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if exp.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    /// The unique `p`-th root, `a^(q/p)`.
    pub fn pth_root(&self, a: &FqElem) -> FqElem {
        if self.degree() == 1 {
            return a.clone();
        }
        let e = self.order() / BigUint::from(self.p);
        self.pow(a, &e)
    }

    pub fn random<R: Rng>(&self, rng: &mut R) -> FqElem {
        let coords: Vec<u64> = (0..self.degree()).map(|_| rng.gen_range(0..self.p)).collect();
        self.from_coords(&coords)
    }

    /// All field elements, in a fixed order. Intended for small fields only.
    pub fn elements(&self) -> Vec<FqElem> {
        let k = self.degree();
        let total = self.order();
        assert!(total <= BigUint::from(1u64 << 20), "field too large to enumerate");
        let total: u64 = total.try_into().unwrap();
        (0..total)
            .map(|mut n| {
                let coords: Vec<u64> = (0..k)
                    .map(|_| {
                        let c = n % self.p;
                        n /= self.p;
                        c
                    })
                    .collect();
                self.from_coords(&coords)
            })
            .collect()
    }

    pub fn is_zero_elem(&self, a: &FqElem) -> bool {
        a.is_zero()
    }

    /// Renders an element: a plain residue for the prime field, otherwise an
    /// ascending polynomial in `t` such as `1+t^2`.
    pub fn format(&self, a: &FqElem) -> String {
        if self.degree() == 1 || a.0.len() <= 1 {
            return a.0.first().copied().unwrap_or(0).to_string();
        }
        let mut parts = Vec::new();
        for (i, &c) in a.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            parts.push(match (i, c) {
                (0, _) => c.to_string(),
                (1, 1) => "t".to_string(),
                (1, _) => format!("{c}*t"),
                (_, 1) => format!("t^{i}"),
                _ => format!("{c}*t^{i}"),
            });
        }
        parts.join("+")
    }
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(f, "F_{}^{}", self.p, self.degree())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_arithmetic() {
        let f4 = Fq::from_modulus_unchecked(2, vec![1, 1, 1]);
        let t = f4.generator();
        let t2 = f4.mul(&t, &t);
        // t^2 = t + 1
        assert_eq!(t2, f4.from_coords(&[1, 1]));
        assert!(f4.is_one(&f4.mul(&t, &f4.inv(&t).unwrap())));
        // t^3 = 1
        assert!(f4.is_one(&f4.pow(&t, &BigUint::from(3u32))));
        assert_eq!(f4.elements().len(), 4);
    }

    #[test]
    fn pth_root_inverts_frobenius() {
        let f9 = Fq::from_modulus_unchecked(3, vec![1, 0, 1]);
        for a in f9.elements() {
            let cube = f9.pow(&a, &BigUint::from(3u32));
            assert_eq!(f9.pth_root(&cube), a);
        }
    }

    #[test]
    fn prime_field_inverse() {
        let f7 = Fq::prime(7);
        for c in 1..7 {
            let a = f7.from_u64(c);
            assert!(f7.is_one(&f7.mul(&a, &f7.inv(&a).unwrap())));
        }
        assert!(f7.inv(&f7.zero()).is_none());
    }
}
