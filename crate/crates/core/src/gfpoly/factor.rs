//! Squarefree, distinct-degree and equal-degree factorization over `F_q`.

use num_bigint::BigUint;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::{Fq, FqElem};
use super::poly::GfPoly;

/// Complete factorization `unit * prod(factor^multiplicity)` into distinct
/// monic irreducibles, sorted by degree then coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FqElem,
    pub factors: Vec<(GfPoly, usize)>,
}

impl Factorization {
    pub fn product(&self, field: &Fq) -> GfPoly {
        self.factors
            .iter()
            .fold(GfPoly::constant(field, self.unit.clone()), |acc, (g, m)| {
                acc.mul(&g.pow(*m))
            })
    }

    /// Sum of `multiplicity * degree` over the factors.
    pub fn degree(&self) -> usize {
        self.factors
            .iter()
            .map(|(g, m)| m * g.degree().unwrap())
            .sum()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, m)| *m == 1)
    }

    /// Roots of the degree-one factors with their multiplicities.
    pub fn roots(&self) -> Vec<(FqElem, usize)> {
        self.factors
            .iter()
            .filter(|(g, _)| g.degree() == Some(1))
            .map(|(g, m)| (g.field().neg(&g.coeff(0)), *m))
            .collect()
    }
}

pub(crate) fn factor_nonzero(g: &GfPoly, seed: u64) -> Factorization {
    let unit = g.leading();
    let monic = g.monic();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut factors: Vec<(GfPoly, usize)> = Vec::new();
    for (part, mult) in squarefree_decomposition(&monic) {
        for (block, d) in distinct_degree(&part) {
            for irr in equal_degree(&block, d, &mut rng) {
                factors.push((irr, mult));
            }
        }
    }
    factors.sort_by_key(|(g, _)| g.sort_key());
    debug_assert!(factors.windows(2).all(|w| w[0].0 != w[1].0));
    Factorization { unit, factors }
}

/// Squarefree decomposition of a monic polynomial in characteristic `p`.
pub(crate) fn squarefree_decomposition(f: &GfPoly) -> Vec<(GfPoly, usize)> {
    let field = f.field().clone();
    let p = field.characteristic() as usize;
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_rem(&c).0;
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div_rem(&y).0;
        if !fac.is_one() {
            out.push((fac.monic(), i));
        }
        w = y;
        c = c.div_rem(&w).0;
        i += 1;
    }
    if !c.is_one() {
        // c is a p-th power: c(x) = r(x)^p
        let deg = c.degree().unwrap();
        let root_coeffs: Vec<FqElem> = (0..=deg / p)
            .map(|k| field.pth_root(&c.coeff(k * p)))
            .collect();
        let root = GfPoly::new(&field, root_coeffs).monic();
        for (fac, m) in squarefree_decomposition(&root) {
            out.push((fac, m * p));
        }
    }
    out
}

/// Splits a squarefree monic polynomial into products of irreducibles of
/// equal degree; yields `(product, degree)` pairs.
pub(crate) fn distinct_degree(f: &GfPoly) -> Vec<(GfPoly, usize)> {
    let field = f.field();
    let q = field.order();
    let x = GfPoly::x(field);
    let mut rest = f.clone();
    let mut h = x.rem(&rest);
    let mut out = Vec::new();
    let mut i = 1;
    while rest.degree().unwrap_or(0) >= 2 * i {
        h = h.pow_mod(&q, &rest);
        let g = rest.gcd(&h.sub(&x));
        if !g.is_one() {
            rest = rest.div_rem(&g).0;
            h = h.rem(&rest);
            out.push((g, i));
        }
        i += 1;
    }
    if !rest.is_constant() {
        let d = rest.degree().unwrap();
        out.push((rest.monic(), d));
    }
    out
}

/// Equal-degree splitting of a squarefree monic product of degree-`d`
/// irreducibles. Odd characteristic uses random powers; characteristic two
/// uses the absolute trace map.
pub(crate) fn equal_degree(f: &GfPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<GfPoly> {
    let n = f.degree().unwrap();
    if n == d {
        return vec![f.monic()];
    }
    let field = f.field().clone();
    let p = field.characteristic();
    let qd = field.order().pow(d as u32);
    let half = (&qd - BigUint::one()) >> 1;
    let trace_len = field.degree() * d;
    loop {
        let a = GfPoly::new(&field, (0..n).map(|_| field.random(rng)).collect());
        if a.is_constant() {
            continue;
        }
        let b = if p == 2 {
            let mut term = a.rem(f);
            let mut acc = term.clone();
            for _ in 1..trace_len {
                term = term.mul_mod(&term, f);
                acc = acc.add(&term);
            }
            acc
        } else {
            a.pow_mod(&half, f).sub(&GfPoly::one(&field))
        };
        let g = f.gcd(&b);
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let other = f.div_rem(&g).0.monic();
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&other, d, rng));
            return out;
        }
    }
}

/// Rabin-style irreducibility test via distinct-degree factorization.
pub(crate) fn is_irreducible(f: &GfPoly) -> bool {
    match f.degree() {
        None | Some(0) => false,
        Some(1) => true,
        Some(n) => {
            let m = f.monic();
            m.is_squarefree() && distinct_degree(&m).first().map(|(_, d)| *d) == Some(n)
        }
    }
}
