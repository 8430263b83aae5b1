use num_integer::Integer;
use num_rational::Ratio;

use super::PhiExpansion;
use crate::arith::Valuation;

/// A side of slope `-h/e` from `start` to `end`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Side {
    pub start: (u64, u64),
    pub end: (u64, u64),
    pub h: u64,
    pub e: u64,
    pub length: u64,
    pub degree: u64,
}

impl Side {
    fn between(a: (u64, u64), b: (u64, u64)) -> Self {
        let length = b.0 - a.0;
        let height = a.1 - b.1;
        let g = length.gcd(&height);
        Side {
            start: a,
            end: b,
            h: height / g,
            e: length / g,
            length,
            degree: g,
        }
    }

    /// `-h/e`.
    pub fn slope(&self) -> Ratio<i64> {
        Ratio::new(-(self.h as i64), self.e as i64)
    }

    /// `h/e`, the valuation of `phi(theta)` for the roots on this side.
    pub fn lambda(&self) -> Ratio<u64> {
        Ratio::new(self.h, self.e)
    }

    /// Height of the side's supporting line at abscissa `x`.
    pub fn ordinate_at(&self, x: u64) -> Ratio<i64> {
        let dx = x as i64 - self.start.0 as i64;
        Ratio::from_integer(self.start.1 as i64) + self.slope() * dx
    }
}

/// The principal part of the phi-Newton polygon.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    /// `(i, v(a_i))` for every nonzero coefficient up to the abscissa `l`.
    pub points: Vec<(u64, u64)>,
    pub vertices: Vec<(u64, u64)>,
    /// Left to right, so slopes increase.
    pub sides: Vec<Side>,
    /// Multiplicity of `phi mod p` in `F mod p`.
    pub length: u64,
    /// Power of `phi` dividing `F` exactly (index of the first nonzero `a_i`).
    pub exact_order: u64,
}

impl NewtonPolygon {
    pub fn is_empty(&self) -> bool {
        self.length == 0
    }

    /// Lattice points `(x, y)` with `1 <= x`, `1 <= y <= N(x)`; `None` when
    /// `phi` divides `F` exactly, which makes the region unbounded.
    pub fn lattice_count(&self) -> Option<u64> {
        if self.exact_order > 0 {
            return None;
        }
        let mut count = 0;
        for x in 1..self.length {
            let side = self
                .sides
                .iter()
                .find(|s| s.start.0 <= x && x <= s.end.0)
                .expect("abscissa inside the polygon");
            let drop = ((x - side.start.0) * side.h).div_ceil(side.e);
            count += side.start.1.saturating_sub(drop);
        }
        Some(count)
    }
}

fn cross(o: (u64, u64), a: (u64, u64), b: (u64, u64)) -> i128 {
    let (ox, oy) = (o.0 as i128, o.1 as i128);
    (a.0 as i128 - ox) * (b.1 as i128 - oy) - (a.1 as i128 - oy) * (b.0 as i128 - ox)
}

/// Lower convex hull of the points `(i, v_p(a_i))` between the first
/// nonzero coefficient and the first unit coefficient.
pub fn principal_polygon(exp: &PhiExpansion, p: u64) -> NewtonPolygon {
    let vals = exp.valuations(p);
    let length = vals
        .iter()
        .position(|v| *v == 0)
        .expect("monic expansion has a unit coefficient") as u64;
    let exact_order = vals
        .iter()
        .position(|v| !v.is_infinite())
        .unwrap() as u64;
    let points: Vec<(u64, u64)> = vals
        .iter()
        .enumerate()
        .take(length as usize + 1)
        .filter_map(|(i, v)| match v {
            Valuation::Finite(k) => Some((i as u64, *k)),
            Valuation::Infinity => None,
        })
        .collect();
    if length == 0 {
        return NewtonPolygon {
            points,
            vertices: Vec::new(),
            sides: Vec::new(),
            length,
            exact_order,
        };
    }
    let mut hull: Vec<(u64, u64)> = Vec::new();
    for &pt in &points {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], pt) <= 0 {
            hull.pop();
        }
        hull.push(pt);
    }
    let sides = hull.windows(2).map(|w| Side::between(w[0], w[1])).collect();
    NewtonPolygon {
        points,
        vertices: hull,
        sides,
        length,
        exact_order,
    }
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;

    use super::*;
    use crate::arith::ZPoly;
    use crate::newton::phi_expand;

    fn polygon(a: i64, b: i64, p: u64) -> NewtonPolygon {
        let f = ZPoly::trinomial(&BigInt::from(a), &BigInt::from(b));
        principal_polygon(&phi_expand(&f, &ZPoly::from_i64(&[0, 1])).unwrap(), p)
    }

    #[test]
    fn single_side() {
        let np = polygon(8, 8, 2);
        assert_eq!(np.vertices, vec![(0, 3), (9, 0)]);
        assert_eq!(np.sides[0].slope(), Ratio::new(-1, 3));
        assert_eq!(np.sides[0].degree, 3);
    }

    #[test]
    fn two_sides() {
        let np = polygon(3, 9, 3);
        assert_eq!(np.vertices, vec![(0, 2), (2, 1), (9, 0)]);
        assert_eq!(np.lattice_count(), Some(2));
        let np = polygon(0, 4, 2);
        assert_eq!(np.lattice_count(), Some(4));
    }

    #[test]
    fn no_principal_part() {
        assert!(polygon(1, 1, 2).is_empty());
    }

    #[test]
    fn exact_factor() {
        let np = polygon(1, 0, 5);
        assert_eq!(np.exact_order, 2);
        assert_eq!(np.vertices, vec![(2, 0)]);
        assert!(np.sides.is_empty());
        assert_eq!(np.lattice_count(), None);
    }
}
