//! Ore's theorem, degree-one refinement, and the local analysis driver.

use num_bigint::BigInt;
use num_rational::Ratio;

use super::{
    phi_expand, principal_polygon, residuals, NewtonError, NewtonPolygon, Side, SideResidual,
};
use crate::arith::{vp, ZPoly};
use crate::gfpoly::{self, Factorization, FqElem};
use crate::index::{PartialBlock, Shape, SplittingType};

fn linear(c: &BigInt) -> ZPoly {
    ZPoly::linear(c)
}

fn factor_mod(f: &ZPoly, p: u64) -> Result<Factorization, NewtonError> {
    if f.to_gf(p).is_zero() {
        return Err(NewtonError::ZeroModP);
    }
    Ok(gfpoly::factor_mod_p(f, p).expect("prime modulus"))
}

/// Splitting type from Ore's theorem; fails on the first repeated residual
/// factor.
pub fn ore_factorization(f: &ZPoly, p: u64) -> Result<SplittingType, NewtonError> {
    let mut pairs = Vec::new();
    for (g, m) in factor_mod(f, p)?.factors {
        let d = g.degree().unwrap() as u64;
        if m == 1 {
            pairs.push((1, d));
            continue;
        }
        let phi = ZPoly::lift(&g);
        let exp = phi_expand(f, &phi)?;
        let poly = principal_polygon(&exp, p);
        if poly.exact_order > 0 {
            pairs.extend(std::iter::repeat_n((1, d), poly.exact_order as usize));
        }
        for r in residuals(&exp, &poly, p) {
            for (psi, mult) in gfpoly::factor_over_extension(&r.poly).unwrap().factors {
                if mult > 1 {
                    return Err(NewtonError::NotPRegular {
                        phi: phi.clone(),
                        side: r.side.clone(),
                        factor: psi,
                    });
                }
                pairs.push((r.side.e, d * psi.degree().unwrap() as u64));
            }
        }
    }
    Ok(SplittingType::new(pairs))
}

/// Replaces `phi = x - c` by `x - (c + t p^h)` for a repeated residual root
/// `t` on a side of slope `-h`.
pub fn refine(
    f: &ZPoly,
    p: u64,
    phi: &ZPoly,
    side: &Side,
    root: &FqElem,
) -> Result<ZPoly, NewtonError> {
    if phi.degree() != Some(1) || !phi.is_monic() {
        return Err(NewtonError::RefinementUnsupported("phi must be monic of degree one".into()));
    }
    if side.e != 1 {
        return Err(NewtonError::RefinementUnsupported(format!(
            "slope -{}/{} is not integral",
            side.h, side.e
        )));
    }
    let exp = phi_expand(f, phi)?;
    let r = super::residual(&exp, side, p);
    let field = r.poly.field().clone();
    if !r.poly.eval(root).is_zero() || !r.poly.derivative().eval(root).is_zero() {
        return Err(NewtonError::NotRepeated);
    }
    let c = -phi.coeff(0);
    let t = BigInt::from(field.to_u64(root));
    Ok(linear(&(c + t * BigInt::from(p).pow(side.h as u32))))
}

/// One polygon in the analysis. Only sides with `lambda > floor` belong to
/// the stage; shallower sides were handled by an ancestor.
#[derive(Clone, Debug)]
pub struct Stage {
    pub phi: ZPoly,
    pub depth: usize,
    pub floor: u64,
    pub polygon: NewtonPolygon,
    pub residuals: Vec<SideResidual>,
}

impl Stage {
    pub fn active_sides(&self) -> impl Iterator<Item = &SideResidual> {
        self.residuals
            .iter()
            .filter(move |r| r.side.lambda() > Ratio::from_integer(self.floor))
    }

    /// `c` for `phi = x - c`.
    pub fn center(&self) -> Option<BigInt> {
        (self.phi.degree() == Some(1)).then(|| -self.phi.coeff(0))
    }
}

/// Result of the local analysis of `F` at `p`.
#[derive(Clone, Debug)]
pub struct LocalAnalysis {
    pub p: u64,
    pub known: Vec<(u64, u64)>,
    pub blocks: Vec<PartialBlock>,
    pub stages: Vec<Stage>,
    /// `v_p((Z_K : Z[alpha]))` when a regular choice of lifts was found.
    pub index: Option<u64>,
    /// Whether `F` is regular for the canonical lifts (no refinement needed).
    pub regular: bool,
}

impl LocalAnalysis {
    pub fn refined(&self) -> bool {
        self.stages.iter().any(|s| s.depth > 0)
    }

    pub fn shape(&self) -> Shape {
        Shape::from_parts(self.known.clone(), self.blocks.clone())
    }

    pub fn splitting_type(&self) -> Option<SplittingType> {
        self.shape().complete().cloned()
    }
}

struct Walk<'a> {
    f: &'a ZPoly,
    p: u64,
    cap: u64,
    steps: u64,
    known: Vec<(u64, u64)>,
    blocks: Vec<PartialBlock>,
    stages: Vec<Stage>,
}

impl Walk<'_> {
    fn cluster(&mut self, center: BigInt, floor: u64, depth: usize) -> Result<(), NewtonError> {
        self.steps += 1;
        if self.steps > self.cap {
            return Err(NewtonError::IrregularUndecided { steps: self.cap });
        }
        let phi = linear(&center);
        let exp = phi_expand(self.f, &phi)?;
        let polygon = principal_polygon(&exp, self.p);
        self.known
            .extend(std::iter::repeat_n((1, 1), polygon.exact_order as usize));
        let stage = Stage {
            phi,
            depth,
            floor,
            residuals: residuals(&exp, &polygon, self.p),
            polygon,
        };
        let active: Vec<SideResidual> = stage.active_sides().cloned().collect();
        self.stages.push(stage);
        let pb = BigInt::from(self.p);
        for r in active {
            let side = &r.side;
            let fac = gfpoly::factor_over_extension(&r.poly).unwrap();
            for (psi, m) in fac.factors {
                let dpsi = psi.degree().unwrap() as u64;
                if m == 1 {
                    self.known.push((side.e, dpsi));
                } else if side.e == 1 && dpsi == 1 {
                    let t = psi.field().neg(&psi.coeff(0));
                    let t = BigInt::from(psi.field().to_u64(&t));
                    let next = &center + t * pb.pow(side.h as u32);
                    self.cluster(next, side.h, depth + 1)?;
                } else {
                    self.blocks.push(PartialBlock { e: side.e, f: dpsi, weight: m as u64 });
                }
            }
        }
        Ok(())
    }
}

/// Local analysis with the default step cap `v_p(disc F) + 2`.
pub fn analyze(f: &ZPoly, p: u64) -> Result<LocalAnalysis, NewtonError> {
    let disc = f.discriminant();
    analyze_with_disc(f, p, &disc)
}

/// As [`analyze`], with the discriminant supplied by the caller.
pub fn analyze_with_disc(f: &ZPoly, p: u64, disc: &BigInt) -> Result<LocalAnalysis, NewtonError> {
    let cap = vp(p, disc).finite().unwrap_or(64) + 2;
    let fac = factor_mod(f, p)?;
    let mut walk = Walk {
        f,
        p,
        cap,
        steps: 0,
        known: Vec::new(),
        blocks: Vec::new(),
        stages: Vec::new(),
    };
    let mut index = Some(0u64);
    let mut regular = true;
    for (g, m) in fac.factors {
        let d = g.degree().unwrap() as u64;
        if m == 1 {
            walk.known.push((1, d));
            continue;
        }
        let phi = ZPoly::lift(&g);
        let first_stage = walk.stages.len();
        let blocks_before = walk.blocks.len();
        if d == 1 {
            let root = (BigInt::from(p) - phi.coeff(0)) % BigInt::from(p);
            walk.cluster(root, 0, 0)?;
        } else {
            let exp = phi_expand(f, &phi)?;
            let polygon = principal_polygon(&exp, p);
            walk.known
                .extend(std::iter::repeat_n((1, d), polygon.exact_order as usize));
            let res = residuals(&exp, &polygon, p);
            for r in &res {
                for (psi, m) in gfpoly::factor_over_extension(&r.poly).unwrap().factors {
                    let f_ = d * psi.degree().unwrap() as u64;
                    if m == 1 {
                        walk.known.push((r.side.e, f_));
                    } else {
                        walk.blocks.push(PartialBlock { e: r.side.e, f: f_, weight: m as u64 });
                    }
                }
            }
            walk.stages.push(Stage { phi: phi.clone(), depth: 0, floor: 0, polygon, residuals: res });
        }
        let stages = &walk.stages[first_stage..];
        let clean = walk.blocks.len() == blocks_before;
        if stages.len() > 1 || !clean {
            regular = false;
        }
        let chain = stages.iter().enumerate().all(|(i, s)| s.depth == i);
        let local = if !clean || !chain {
            None
        } else {
            let last = stages.last().unwrap();
            if stages.len() == 1 {
                last.polygon.lattice_count().map(|c| c * d)
            } else if super::is_phi_regular(f, &last.phi, p) {
                super::ind_phi(f, &last.phi, p)
            } else {
                None
            }
        };
        index = index.zip(local).map(|(a, b)| a + b);
    }
    Ok(LocalAnalysis {
        p,
        known: walk.known,
        blocks: walk.blocks,
        stages: walk.stages,
        index,
        regular,
    })
}

/// Pushes a degree-one center toward a root until the steepest active side
/// has `lambda >= target`, refining through any root of its residual.
/// Returns the center and the slope reached.
pub fn sharpen(
    f: &ZPoly,
    p: u64,
    center: &BigInt,
    floor: u64,
    target: u64,
) -> Result<(BigInt, Ratio<u64>), NewtonError> {
    let pb = BigInt::from(p);
    let mut center = center.clone();
    let mut floor = floor;
    loop {
        let exp = phi_expand(f, &linear(&center))?;
        let polygon = principal_polygon(&exp, p);
        if polygon.exact_order > 0 {
            return Ok((center, Ratio::from_integer(u64::MAX)));
        }
        let steepest = polygon
            .sides
            .iter()
            .filter(|s| s.lambda() > Ratio::from_integer(floor))
            .max_by_key(|s| s.lambda())
            .cloned()
            .ok_or(NewtonError::EmptyCluster)?;
        let lambda = steepest.lambda();
        if lambda >= Ratio::from_integer(target) || steepest.e != 1 {
            return Ok((center, lambda));
        }
        let r = super::residual(&exp, &steepest, p);
        let roots = gfpoly::factor_over_extension(&r.poly).unwrap().roots();
        let Some((t, _)) = roots.first() else {
            return Ok((center, lambda));
        };
        let t = BigInt::from(r.poly.field().to_u64(t));
        center += t * pb.pow(steepest.h as u32);
        floor = steepest.h;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tri(a: i64, b: i64) -> ZPoly {
        ZPoly::trinomial(&BigInt::from(a), &BigInt::from(b))
    }

    fn st(pairs: &[(u64, u64)]) -> SplittingType {
        SplittingType::new(pairs.to_vec())
    }

    #[test]
    fn ore_examples() {
        assert_eq!(ore_factorization(&tri(8, 8), 2).unwrap(), st(&[(3, 1), (3, 2)]));
        assert_eq!(ore_factorization(&tri(0, 2), 2).unwrap(), st(&[(9, 1)]));
        assert_eq!(ore_factorization(&tri(3, 9), 3).unwrap(), st(&[(2, 1), (7, 1)]));
        match ore_factorization(&tri(2, 8), 2) {
            Err(NewtonError::NotPRegular { side, factor, .. }) => {
                assert_eq!((side.start, side.end), ((0, 3), (2, 1)));
                assert_eq!(factor.to_text("y"), "1 + y");
            }
            other => panic!("expected an irregular side, got {other:?}"),
        }
    }

    #[test]
    fn refine_moves_center() {
        // a odd, v(b) = 2: side of slope -1 with residual (y + 1)^2
        let f = tri(1, 4);
        let phi = ZPoly::from_i64(&[0, 1]);
        let exp = phi_expand(&f, &phi).unwrap();
        let poly = principal_polygon(&exp, 2);
        let side = &poly.sides[0];
        assert_eq!((side.h, side.e, side.degree), (1, 1, 2));
        let field = crate::gfpoly::Fq::prime(2);
        let next = refine(&f, 2, &phi, side, &field.one()).unwrap();
        assert_eq!(next, ZPoly::from_i64(&[-2, 1]));
        assert_eq!(refine(&tri(0, 2), 2, &phi, &principal_polygon(&phi_expand(&tri(0, 2), &phi).unwrap(), 2).sides[0], &field.one()),
            Err(NewtonError::RefinementUnsupported("slope -1/9 is not integral".into())));
    }

    #[test]
    fn analysis_of_eisenstein() {
        let la = analyze(&tri(0, 2), 2).unwrap();
        assert_eq!(la.splitting_type().unwrap(), st(&[(9, 1)]));
        assert_eq!(la.index, Some(0));
        assert!(la.regular);
    }

    #[test]
    fn analysis_tame_index() {
        assert_eq!(analyze(&tri(0, 4), 2).unwrap().index, Some(4));
        assert_eq!(analyze(&tri(3, 9), 3).unwrap().index, Some(2));
    }
}
