use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use super::VerifyError;
use crate::arith::{vp, Trinomial, ZPoly};
use crate::newton::analyze_with_disc;

/// Outcome of computing the characteristic polynomial of `h(alpha)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Minpoly {
    Monic(ZPoly),
    /// `h(alpha)` does not generate the field.
    Degenerate,
}

impl Minpoly {
    pub fn poly(&self) -> Option<&ZPoly> {
        match self {
            Minpoly::Monic(g) => Some(g),
            Minpoly::Degenerate => None,
        }
    }
}

/// `theta = h(alpha)` with its minimal polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorCandidate {
    pub h: ZPoly,
    pub minimal_polynomial: Minpoly,
}

/// Characteristic polynomial of `h(alpha)` as `Res_x(F(x), y - h(x))`,
/// sampled at `y = 0..=9` and interpolated.
fn char_poly(t: &Trinomial, h: &ZPoly) -> Result<ZPoly, VerifyError> {
    let deg = h.degree().unwrap_or(0);
    if deg > 8 {
        return Err(VerifyError::DegreeTooLarge(deg));
    }
    let f = t.poly();
    let points: Vec<(BigInt, BigInt)> = (0..=9)
        .map(|k| {
            let y = BigInt::from(k);
            let g = &ZPoly::constant(y.clone()) - h;
            let r = f.resultant(&g);
            (y, r)
        })
        .collect();
    let g = interpolate(&points);
    // Cayley-Hamilton: G(h(x)) must vanish modulo F.
    let image = g
        .coeffs()
        .iter()
        .rev()
        .fold(ZPoly::zero(), |acc, c| {
            (&(&acc * h) + &ZPoly::constant(c.clone())).div_rem_monic(&f).1
        });
    if !image.is_zero() {
        return Err(VerifyError::NotAnnihilating(h.to_string()));
    }
    Ok(g)
}

/// Newton interpolation through integer points, expected to land in `Z[y]`.
fn interpolate(points: &[(BigInt, BigInt)]) -> ZPoly {
    let xs: Vec<BigRational> = points.iter().map(|(x, _)| BigRational::from(x.clone())).collect();
    let mut dd: Vec<BigRational> = points.iter().map(|(_, v)| BigRational::from(v.clone())).collect();
    let n = dd.len();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    let mut coeffs = vec![BigRational::zero(); n];
    for i in (0..n).rev() {
        // coeffs <- coeffs * (y - x_i) + dd[i]
        let mut next = vec![BigRational::zero(); n];
        for (j, c) in coeffs.iter().enumerate() {
            if j + 1 < n {
                next[j + 1] += c;
            }
            next[j] -= c * &xs[i];
        }
        next[0] += &dd[i];
        coeffs = next;
    }
    ZPoly::new(
        coeffs
            .into_iter()
            .map(|c| {
                assert!(c.is_integer(), "characteristic polynomial has integer coefficients");
                c.to_integer()
            })
            .collect(),
    )
}

fn minpoly_with_disc(t: &Trinomial, h: &ZPoly) -> Result<Option<(ZPoly, BigInt)>, VerifyError> {
    let g = char_poly(t, h)?;
    let disc = g.discriminant();
    Ok((!disc.is_zero()).then_some((g, disc)))
}

/// The minimal polynomial of `h(alpha)`, or `Degenerate` when its
/// characteristic polynomial is not squarefree. `F` is assumed irreducible.
pub fn generator_minpoly(t: &Trinomial, h: &ZPoly) -> Result<Minpoly, VerifyError> {
    Ok(match minpoly_with_disc(t, h)? {
        Some((g, _)) => Minpoly::Monic(g),
        None => Minpoly::Degenerate,
    })
}

fn layer(height: u64) -> Vec<ZPoly> {
    fn fill(pos: usize, left: u64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if pos == cur.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for mag in 0..=left {
            let signs: &[i64] = if mag == 0 { &[1] } else { &[1, -1] };
            for &s in signs {
                cur[pos] = s * mag as i64;
                fill(pos + 1, left - mag, cur, out);
            }
        }
        cur[pos] = 0;
    }
    let mut raw = Vec::new();
    fill(0, height, &mut vec![0; 9], &mut raw);
    let mut polys: Vec<ZPoly> = raw
        .into_iter()
        .map(|c| ZPoly::from_i64(&c))
        .filter(|h| h.degree().unwrap_or(0) >= 1)
        .collect();
    polys.sort_by_key(order_key);
    polys
}

fn order_key(h: &ZPoly) -> (usize, Vec<(BigInt, bool)>) {
    let top_down = h.coeffs().iter().rev().map(|c| (c.abs(), c.is_negative())).collect();
    (h.degree().unwrap(), top_down)
}

/// Non-constant `h` of degree at most 8, by total coefficient height, then
/// degree, then coefficients from the top down (smaller magnitude first,
/// positive before negative).
pub fn candidate_polynomials() -> impl Iterator<Item = ZPoly> {
    (1u64..).flat_map(layer)
}

/// A candidate whose minimal polynomial is p-regular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularCandidate {
    pub h: ZPoly,
    pub minimal_polynomial: ZPoly,
    pub disc_valuation: u64,
    /// `v_p((Z_K : Z[theta]))` from Ore's theorem.
    pub index: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpperBound {
    pub value: u64,
    pub witness: RegularCandidate,
    pub examined: usize,
    pub regular: Vec<RegularCandidate>,
}

fn regular_candidate(t: &Trinomial, h: ZPoly, p: u64) -> Result<Option<RegularCandidate>, VerifyError> {
    let Some((g, disc)) = minpoly_with_disc(t, &h)? else {
        return Ok(None);
    };
    let Ok(la) = analyze_with_disc(&g, p, &disc) else {
        return Ok(None);
    };
    Ok(match (la.regular, la.index) {
        (true, Some(index)) => Some(RegularCandidate {
            h,
            disc_valuation: vp(p, &disc).unwrap(),
            minimal_polynomial: g,
            index,
        }),
        _ => None,
    })
}

const CHUNK: usize = 32;

/// Minimum of `v_p((Z_K : Z[theta]))` over the first `budget` candidates
/// whose minimal polynomial is p-regular. Stops early once a witness of
/// index zero appears.
pub fn index_upper_bound(t: &Trinomial, p: u64, budget: usize) -> Result<UpperBound, VerifyError> {
    let mut regular: Vec<RegularCandidate> = Vec::new();
    let mut examined = 0;
    let mut source = candidate_polynomials().take(budget);
    loop {
        let chunk: Vec<ZPoly> = source.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            break;
        }
        examined += chunk.len();
        let found = chunk
            .into_par_iter()
            .map(|h| regular_candidate(t, h, p))
            .collect::<Result<Vec<_>, _>>()?;
        regular.extend(found.into_iter().flatten());
        if regular.iter().any(|c| c.index == 0) {
            break;
        }
    }
    let witness = regular
        .iter()
        .min_by_key(|c| c.index)
        .cloned()
        .ok_or(VerifyError::NoWitness { examined })?;
    Ok(UpperBound { value: witness.index, witness, examined, regular })
}

#[cfg(test)]
mod tests {
    use num_traits::One;

    use super::*;

    fn t(a: i64, b: i64) -> Trinomial {
        Trinomial::from_i64(a, b).unwrap()
    }

    #[test]
    fn identity_generator_gives_f() {
        let tr = t(54, 87);
        let g = generator_minpoly(&tr, &ZPoly::from_i64(&[0, 1])).unwrap();
        assert_eq!(g, Minpoly::Monic(tr.poly()));
    }

    #[test]
    fn translate_generator() {
        let tr = t(3, 5);
        let g = generator_minpoly(&tr, &ZPoly::from_i64(&[1, 1])).unwrap();
        let shifted = tr.poly().taylor_shift(&BigInt::from(-1));
        assert_eq!(g, Minpoly::Monic(shifted));
    }

    #[test]
    fn square_generator() {
        let tr = t(54, 87);
        let g = generator_minpoly(&tr, &ZPoly::from_i64(&[0, 0, 1])).unwrap();
        let g = g.poly().unwrap();
        assert_eq!(g.degree(), Some(9));
        assert!(g.is_monic());
    }

    #[test]
    fn degenerate_when_not_primitive() {
        // alpha^9 = -2 for x^9 + 2, so alpha^3 has degree 3.
        let tr = t(0, 2);
        let g = generator_minpoly(&tr, &ZPoly::from_i64(&[0, 0, 0, 1])).unwrap();
        assert_eq!(g, Minpoly::Degenerate);
    }

    #[test]
    fn enumeration_order() {
        let h = candidate_polynomials().take(4).collect::<Vec<_>>();
        assert_eq!(h[0], ZPoly::from_i64(&[0, 1]));
        assert_eq!(h[1], ZPoly::from_i64(&[0, -1]));
        assert_eq!(layer(1).len(), 16);
        assert!(candidate_polynomials().take(300).all(|h| h.degree().unwrap() <= 8));
    }

    #[test]
    fn eisenstein_bound_is_zero() {
        let ub = index_upper_bound(&t(0, 2), 2, 50).unwrap();
        assert_eq!(ub.value, 0);
        assert_eq!(ub.witness.h, ZPoly::from_i64(&[0, 1]));
    }

    #[test]
    fn too_large_degree() {
        let h = ZPoly::monomial(9);
        assert_eq!(generator_minpoly(&t(1, 1), &h), Err(VerifyError::DegreeTooLarge(9)));
    }

    #[test]
    fn interpolates_monomial() {
        let mut c = vec![BigInt::zero(); 10];
        c[9] = BigInt::one();
        let pts: Vec<_> = (0..=9).map(|k| (BigInt::from(k), BigInt::from(k).pow(9))).collect();
        assert_eq!(interpolate(&pts), ZPoly::new(c));
    }
}
