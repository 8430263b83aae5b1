use num_bigint::BigInt;
use num_traits::Zero;

use super::NewtonError;
use crate::arith::{vp, Valuation, ZPoly};

/// `F = sum a_i(x) phi(x)^i` with `deg a_i < deg phi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiExpansion {
    pub phi: ZPoly,
    pub coeffs: Vec<ZPoly>,
}

impl PhiExpansion {
    /// Rebuilds `F` by Horner evaluation in `phi`.
    pub fn reconstruct(&self) -> ZPoly {
        self.coeffs
            .iter()
            .rev()
            .fold(ZPoly::zero(), |acc, a| &(&acc * &self.phi) + a)
    }

    /// Gauss valuation of each coefficient.
    pub fn valuations(&self, p: u64) -> Vec<Valuation> {
        self.coeffs.iter().map(|a| a.gauss_valuation(p)).collect()
    }

    /// Integer coefficient when `phi` is linear.
    pub fn constant(&self, i: usize) -> BigInt {
        self.coeffs.get(i).map(|a| a.coeff(0)).unwrap_or_else(BigInt::zero)
    }

    pub fn constant_valuation(&self, i: usize, p: u64) -> Valuation {
        vp(p, &self.constant(i))
    }
}

/// phi-adic expansion by repeated division; linear `phi` uses a Taylor shift.
pub fn phi_expand(f: &ZPoly, phi: &ZPoly) -> Result<PhiExpansion, NewtonError> {
    if !phi.is_monic() || phi.degree().unwrap_or(0) == 0 {
        return Err(NewtonError::BadPhi);
    }
    let coeffs = if phi.degree() == Some(1) {
        let c = -phi.coeff(0);
        f.taylor_shift(&c)
            .coeffs()
            .iter()
            .map(|a| ZPoly::constant(a.clone()))
            .collect()
    } else {
        let mut out = Vec::new();
        let mut rest = f.clone();
        while !rest.is_zero() {
            let (q, r) = rest.div_rem_monic(phi);
            out.push(r);
            rest = q;
        }
        out
    };
    Ok(PhiExpansion { phi: phi.clone(), coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expansion_at_one() {
        let f = ZPoly::trinomial(&BigInt::from(5), &BigInt::from(7));
        let exp = phi_expand(&f, &ZPoly::from_i64(&[-1, 1])).unwrap();
        let got: Vec<i64> = (0..10).map(|i| exp.constant(i).try_into().unwrap()).collect();
        // a+b+1, 2a+9, a+36, 84, 126, 126, 84, 36, 9, 1
        assert_eq!(got, vec![13, 19, 41, 84, 126, 126, 84, 36, 9, 1]);
        assert_eq!(exp.reconstruct(), f);
    }

    #[test]
    fn quadratic_phi_reconstructs() {
        let f = ZPoly::trinomial(&BigInt::from(3), &BigInt::from(-11));
        let phi = ZPoly::from_i64(&[1, 1, 1]);
        let exp = phi_expand(&f, &phi).unwrap();
        assert!(exp.coeffs.iter().all(|a| a.degree().unwrap_or(0) < 2));
        assert_eq!(exp.coeffs.len(), 5);
        assert_eq!(exp.reconstruct(), f);
    }

    #[test]
    fn rejects_non_monic() {
        let f = ZPoly::trinomial(&BigInt::from(1), &BigInt::from(1));
        assert_eq!(phi_expand(&f, &ZPoly::from_i64(&[1, 2])), Err(NewtonError::BadPhi));
    }
}
