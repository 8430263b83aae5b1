use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{principal_polygon, NewtonPolygon, PhiExpansion, Side};
use crate::arith::{vp, ZPoly};
use crate::gfpoly::{self, Fq, FqElem, GfPoly};

/// Residual polynomial of one side over `F_phi = F_p[x]/(phi)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SideResidual {
    pub side: Side,
    pub coeffs: Vec<FqElem>,
    pub poly: GfPoly,
}

/// The residue field attached to `phi`.
pub fn phi_field(phi: &ZPoly, p: u64) -> Fq {
    if phi.degree() == Some(1) {
        Fq::prime(p)
    } else {
        gfpoly::residue_field(&phi.to_gf(p))
    }
}

fn reduce(a: &ZPoly, field: &Fq) -> FqElem {
    let pb = BigInt::from(field.characteristic());
    let coords: Vec<u64> = a
        .coeffs()
        .iter()
        .map(|c| c.mod_floor(&pb).to_u64().unwrap())
        .collect();
    field.from_coords(&coords)
}

/// `c_i = (a_{s+ie} / p^{u}) mod (p, phi)` on the side's lattice points.
pub fn residual(exp: &PhiExpansion, side: &Side, p: u64) -> SideResidual {
    let field = phi_field(&exp.phi, p);
    let pb = BigInt::from(p);
    let coeffs: Vec<FqElem> = (0..=side.degree)
        .map(|i| {
            let x = side.start.0 + i * side.e;
            let y = side.start.1 - i * side.h;
            let a = &exp.coeffs[x as usize];
            if a.gauss_valuation(p) == y {
                reduce(&a.div_exact(&pb.pow(y as u32)), &field)
            } else {
                field.zero()
            }
        })
        .collect();
    let poly = GfPoly::new(&field, coeffs.clone());
    debug_assert_eq!(poly.degree(), Some(side.degree as usize));
    debug_assert!(!coeffs[0].is_zero());
    SideResidual {
        side: side.clone(),
        coeffs,
        poly,
    }
}

pub fn residuals(exp: &PhiExpansion, polygon: &NewtonPolygon, p: u64) -> Vec<SideResidual> {
    polygon
        .sides
        .iter()
        .map(|s| residual(exp, s, p))
        .collect()
}

/// Every residual polynomial of the principal polygon is squarefree.
pub fn is_phi_regular(f: &ZPoly, phi: &ZPoly, p: u64) -> bool {
    let exp = super::phi_expand(f, phi).expect("monic phi");
    let poly = principal_polygon(&exp, p);
    poly.exact_order <= 1 && residuals(&exp, &poly, p).iter().all(|r| r.poly.is_squarefree())
}

/// `F` is phi-regular for the canonical lift of every irreducible factor of
/// `F mod p`.
pub fn is_p_regular(f: &ZPoly, p: u64) -> bool {
    let fac = gfpoly::factor_mod_p(f, p).expect("F nonzero mod p");
    fac.factors
        .iter()
        .filter(|(_, m)| *m > 1)
        .all(|(g, _)| is_phi_regular(f, &ZPoly::lift(g), p))
}

/// `deg(phi)` times the lattice count under the principal polygon.
pub fn ind_phi(f: &ZPoly, phi: &ZPoly, p: u64) -> Option<u64> {
    let exp = super::phi_expand(f, phi).expect("monic phi");
    let count = principal_polygon(&exp, p).lattice_count()?;
    Some(count * phi.degree().unwrap() as u64)
}

/// Valuation of the constant coefficient of the expansion around `phi`.
pub fn constant_valuation(f: &ZPoly, phi: &ZPoly, p: u64) -> crate::arith::Valuation {
    let exp = super::phi_expand(f, phi).expect("monic phi");
    match exp.coeffs.first() {
        Some(a) if phi.degree() == Some(1) => vp(p, &a.coeff(0)),
        Some(a) => a.gauss_valuation(p),
        None => crate::arith::Valuation::Infinity,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::newton::phi_expand;

    fn tri(a: i64, b: i64) -> ZPoly {
        ZPoly::trinomial(&BigInt::from(a), &BigInt::from(b))
    }

    fn x() -> ZPoly {
        ZPoly::from_i64(&[0, 1])
    }

    #[test]
    fn cubic_residual() {
        let f = tri(8, 8);
        let exp = phi_expand(&f, &x()).unwrap();
        let np = principal_polygon(&exp, 2);
        let r = residual(&exp, &np.sides[0], 2);
        assert_eq!(r.poly.to_text("y"), "1 + y^3");
    }

    #[test]
    fn regularity() {
        assert!(is_p_regular(&tri(0, 2), 2));
        // side (0,3)-(2,1) carries 1 + y^2 = (1 + y)^2
        assert!(!is_phi_regular(&tri(2, 8), &x(), 2));
        assert!(!is_p_regular(&tri(2, 8), 2));
        assert!(is_p_regular(&tri(3, 9), 3));
    }

    #[test]
    fn indices() {
        assert_eq!(ind_phi(&tri(0, 2), &x(), 2), Some(0));
        assert_eq!(ind_phi(&tri(0, 4), &x(), 2), Some(4));
        assert_eq!(ind_phi(&tri(3, 9), &x(), 3), Some(2));
    }
}
