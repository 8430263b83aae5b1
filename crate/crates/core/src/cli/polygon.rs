use std::io::Write;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;

use super::{Format, EXIT_DISCREPANCY, EXIT_OK, EXIT_USAGE, SCHEMA_VERSION};
use crate::arith::{Trinomial, ZPoly};
use crate::gfpoly;
use crate::newton::{analyze, phi_expand, principal_polygon, residuals, NewtonPolygon, SideResidual};

/// Which lift to draw polygons for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PhiSpec {
    /// `x - c`
    Linear(BigInt),
    /// Every stage of the engine's analysis.
    Auto,
}

impl FromStr for PhiSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || format!("phi must be `x`, `x-<c>`, `x+<c>` or `auto`, got `{s}`");
        match s.as_str() {
            "auto" => Ok(PhiSpec::Auto),
            "x" => Ok(PhiSpec::Linear(BigInt::from(0))),
            _ => {
                let rest = s.strip_prefix('x').ok_or_else(bad)?;
                let (sign, digits) = match rest.split_at_checked(1) {
                    Some(("-", d)) => (1, d),
                    Some(("+", d)) => (-1, d),
                    _ => return Err(bad()),
                };
                let c: BigInt = digits.parse().map_err(|_| bad())?;
                Ok(PhiSpec::Linear(c * sign))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorDump {
    pub factor: String,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SideDump {
    pub start: [u64; 2],
    pub end: [u64; 2],
    pub slope: String,
    pub length: u64,
    pub degree: u64,
    pub residual: String,
    pub factors: Vec<FactorDump>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StageDump {
    pub phi: String,
    pub depth: usize,
    pub floor: u64,
    pub vertices: Vec<[u64; 2]>,
    pub sides: Vec<SideDump>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolygonDump {
    pub schema_version: String,
    pub a: String,
    pub b: String,
    pub p: u64,
    pub stages: Vec<StageDump>,
}

fn side_dump(r: &SideResidual) -> SideDump {
    let s = &r.side;
    let fac = gfpoly::factor_over_extension(&r.poly).expect("nonzero residual");
    SideDump {
        start: [s.start.0, s.start.1],
        end: [s.end.0, s.end.1],
        slope: format!("-{}/{}", s.h, s.e),
        length: s.length,
        degree: s.degree,
        residual: r.poly.to_text("y"),
        factors: fac
            .factors
            .iter()
            .map(|(g, m)| FactorDump { factor: g.to_text("y"), multiplicity: *m })
            .collect(),
    }
}

fn stage_dump(
    phi: &ZPoly,
    depth: usize,
    floor: u64,
    polygon: &NewtonPolygon,
    res: &[SideResidual],
) -> StageDump {
    StageDump {
        phi: phi.to_string(),
        depth,
        floor,
        vertices: polygon.vertices.iter().map(|&(x, y)| [x, y]).collect(),
        sides: res.iter().map(side_dump).collect(),
    }
}

/// Polygons for `phi`, or `None` when `phi mod p` does not divide `F mod p`.
pub fn polygon_dump(t: &Trinomial, p: u64, phi: &PhiSpec) -> Result<Option<PolygonDump>, String> {
    let f = t.poly();
    let stages = match phi {
        PhiSpec::Linear(c) => {
            let phi = &ZPoly::monomial(1) - &ZPoly::constant(c.clone());
            let exp = phi_expand(&f, &phi).map_err(|e| e.to_string())?;
            let polygon = principal_polygon(&exp, p);
            if polygon.is_empty() {
                return Ok(None);
            }
            let res = residuals(&exp, &polygon, p);
            vec![stage_dump(&phi, 0, 0, &polygon, &res)]
        }
        PhiSpec::Auto => analyze(&f, p)
            .map_err(|e| e.to_string())?
            .stages
            .iter()
            .map(|s| stage_dump(&s.phi, s.depth, s.floor, &s.polygon, &s.residuals))
            .collect(),
    };
    Ok(Some(PolygonDump {
        schema_version: SCHEMA_VERSION.to_string(),
        a: t.a.to_string(),
        b: t.b.to_string(),
        p,
        stages,
    }))
}

fn factor_text(factors: &[FactorDump]) -> String {
    factors
        .iter()
        .map(|f| match f.multiplicity {
            1 => format!("({})", f.factor),
            m => format!("({})^{m}", f.factor),
        })
        .collect::<Vec<_>>()
        .join("")
}

fn render_text(dump: &PolygonDump, out: &mut dyn Write) -> std::io::Result<()> {
    if dump.stages.is_empty() {
        writeln!(out, "F is squarefree modulo {}", dump.p)?;
    }
    for (i, st) in dump.stages.iter().enumerate() {
        if i > 0 {
            writeln!(out)?;
        }
        writeln!(out, "phi = {} (depth {}, floor {})", st.phi, st.depth, st.floor)?;
        for v in &st.vertices {
            writeln!(out, "({},{})", v[0], v[1])?;
        }
        for s in &st.sides {
            writeln!(out, "slope={} length={} degree={}", s.slope, s.length, s.degree)?;
            writeln!(out, "residual {} = {}", s.residual, factor_text(&s.factors))?;
        }
    }
    Ok(())
}

pub(super) fn run(
    t: &Trinomial,
    p: u64,
    phi: &str,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let spec = match phi.parse::<PhiSpec>() {
        Ok(s) => s,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    let dump = match polygon_dump(t, p, &spec) {
        Ok(Some(d)) => d,
        Ok(None) => {
            let _ = writeln!(err, "no principal part");
            return EXIT_USAGE;
        }
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_DISCREPANCY;
        }
    };
    let written = match format {
        Format::Json => serde_json::to_writer_pretty(&mut *out, &dump)
            .map_err(std::io::Error::from)
            .and_then(|_| writeln!(out)),
        Format::Text | Format::Csv => render_text(&dump, out),
    };
    match written {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_DISCREPANCY
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_specs() {
        assert_eq!("x".parse(), Ok(PhiSpec::Linear(BigInt::from(0))));
        assert_eq!("x-3".parse(), Ok(PhiSpec::Linear(BigInt::from(3))));
        assert_eq!("x + 1".parse(), Ok(PhiSpec::Linear(BigInt::from(-1))));
        assert_eq!("auto".parse(), Ok(PhiSpec::Auto));
        assert!("y-1".parse::<PhiSpec>().is_err());
        assert!("x*2".parse::<PhiSpec>().is_err());
    }
}
