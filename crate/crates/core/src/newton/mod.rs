//! Newton polygons, residual polynomials and Ore's theorem, with the
//! degree-one refinement loop.

mod expansion;
mod ore;
mod padic;
mod polygon;
mod residual;

use thiserror::Error;

pub use expansion::{phi_expand, PhiExpansion};
pub use ore::{analyze, analyze_with_disc, ore_factorization, refine, sharpen, LocalAnalysis, Stage};
pub use padic::{inverse_mod, padic_constant, PadicKind};
pub use polygon::{principal_polygon, NewtonPolygon, Side};
pub use residual::{
    constant_valuation, ind_phi, is_p_regular, is_phi_regular, phi_field, residual, residuals,
    SideResidual,
};

use crate::arith::ZPoly;
use crate::gfpoly::GfPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NewtonError {
    #[error("phi must be monic of positive degree")]
    BadPhi,
    #[error("polynomial vanishes modulo p")]
    ZeroModP,
    #[error("not p-regular: residual of side {}-{} along {phi} has repeated factor {factor}", fmt_pt(side.start), fmt_pt(side.end))]
    NotPRegular {
        phi: ZPoly,
        side: Side,
        factor: GfPoly,
    },
    #[error("refinement unsupported: {0}")]
    RefinementUnsupported(String),
    #[error("root is not a repeated root of the residual polynomial")]
    NotRepeated,
    #[error("refinement did not settle within {steps} steps")]
    IrregularUndecided { steps: u64 },
    #[error("denominator is not a p-adic unit for this branch")]
    NonUnitDenominator,
    #[error("no side steeper than the refinement floor")]
    EmptyCluster,
}

fn fmt_pt(p: (u64, u64)) -> String {
    format!("({},{})", p.0, p.1)
}
