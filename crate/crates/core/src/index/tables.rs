use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use super::IndexError;
use crate::arith::{discriminant, unit_part, vp, Trinomial, Valuation};

/// A row of the closed-form congruence tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum TableRow {
    Nu2(u8),
    Nu3(u8),
}

impl fmt::Display for TableRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableRow::Nu2(r) => write!(f, "nu2.{r}"),
            TableRow::Nu3(r) => write!(f, "nu3.{r}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TableValue {
    pub nu: u64,
    pub row: Option<TableRow>,
}

fn resolve(rows: Vec<TableRow>) -> Result<TableValue, IndexError> {
    match rows.len() {
        0 => Ok(TableValue { nu: 0, row: None }),
        1 => Ok(TableValue { nu: 1, row: Some(rows[0]) }),
        _ => Err(IndexError::TableConflict(rows)),
    }
}

fn m(x: &BigInt, modulus: i64) -> i64 {
    x.mod_floor(&BigInt::from(modulus)).try_into().unwrap()
}

/// Rows are `(row, v2(a), offset, minimum v2(b))`: `v2(b) = 2k + offset`
/// with `k >= 1`, `b_2 = -a_2 mod 8`.
const NU2_LADDER: [(u8, u64, u64); 7] = [
    (1, 0, 0),
    (2, 1, 1),
    (3, 2, 2),
    (4, 3, 3),
    (5, 4, 4),
    (6, 5, 7),
    (7, 6, 8),
];

/// `nu_2(i(K))` from the congruence conditions on `a`, `b` and the
/// discriminant.
pub fn nu2_table(t: &Trinomial) -> Result<TableValue, IndexError> {
    let va = vp(2, &t.a);
    let Valuation::Finite(vb) = vp(2, &t.b) else {
        return Err(IndexError::Arith(crate::arith::ArithError::ZeroConstant));
    };
    let b2 = unit_part(2, &t.b).unwrap();
    let mut rows = Vec::new();
    if let Valuation::Finite(va) = va {
        let a2 = unit_part(2, &t.a).unwrap();
        for &(row, ra, offset) in &NU2_LADDER {
            if va == ra && vb >= offset + 2 && (vb - offset) % 2 == 0 && m(&(&b2 + &a2), 8) == 0 {
                rows.push(TableRow::Nu2(row));
            }
        }
        if va == 5 && vb == 7 && m(&(&a2 + &b2), 8) == 4 {
            rows.push(TableRow::Nu2(8));
        }
        if va == 6 && vb == 8 {
            let d = discriminant(t);
            if let Valuation::Finite(vd) = vp(2, &d) {
                let d2 = unit_part(2, &d).unwrap();
                if vd % 2 == 0 && m(&(d2 - &a2 * &b2), 8) == 0 {
                    rows.push(TableRow::Nu2(9));
                }
            }
        }
    }
    resolve(rows)
}

const NU3_ROWS: [(u8, &[(i64, i64)], i64); 4] = [
    (1, &[(9, 71), (36, 44)], 242),
    (2, &[(63, 17)], 80),
    (3, &[(18, 64)], 163),
    (4, &[(45, 37), (72, 10)], 1),
];

/// `nu_3(i(K))` from the classes of `(a, b)` mod 81, `a + b` mod 243, and
/// the discriminant.
pub fn nu3_table(t: &Trinomial) -> Result<TableValue, IndexError> {
    let d = discriminant(t);
    let disc_ok = match vp(3, &d) {
        Valuation::Finite(vd) => vd % 2 == 0 && m(&unit_part(3, &d).unwrap(), 3) == 2,
        Valuation::Infinity => false,
    };
    let class = (m(&t.a, 81), m(&t.b, 81));
    let sum = m(&(&t.a + &t.b), 243);
    let rows = NU3_ROWS
        .iter()
        .filter(|(_, classes, s)| disc_ok && classes.contains(&class) && sum == *s)
        .map(|(row, _, _)| TableRow::Nu3(*row))
        .collect();
    resolve(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(a: i64, b: i64) -> Trinomial {
        Trinomial::from_i64(a, b).unwrap()
    }

    #[test]
    fn nu2_rows() {
        assert_eq!(nu2_table(&t(99, 8055028)).unwrap().row, Some(TableRow::Nu2(1)));
        assert_eq!(nu2_table(&t(64, 256)).unwrap().row, Some(TableRow::Nu2(9)));
        assert_eq!(nu2_table(&t(54, 87)).unwrap(), TableValue { nu: 0, row: None });
        // v2(b) = 0 boundary: k must be positive
        assert_eq!(nu2_table(&t(1, 7)).unwrap().nu, 0);
        // a = 2 mod 4, v2(b) = 3, b_2 = 7 = -1 mod 8
        assert_eq!(nu2_table(&t(2, 56)).unwrap().row, Some(TableRow::Nu2(2)));
        // a = 32 mod 64, b = 128 mod 256, a_2 + b_2 = 4 mod 8
        assert_eq!(nu2_table(&t(32, 3 * 128)).unwrap().row, Some(TableRow::Nu2(8)));
    }

    #[test]
    fn nu3_rows() {
        assert_eq!(nu3_table(&t(90, 19835)).unwrap().row, Some(TableRow::Nu3(1)));
        assert_eq!(nu3_table(&t(99, 8055028)).unwrap().row, Some(TableRow::Nu3(3)));
        assert_eq!(nu3_table(&t(64, 256)).unwrap().nu, 0);
        assert_eq!(nu3_table(&t(54, 87)).unwrap().nu, 0);
    }

    #[test]
    fn row_labels() {
        assert_eq!(TableRow::Nu2(9).to_string(), "nu2.9");
        assert_eq!(TableRow::Nu3(1).to_string(), "nu3.1");
    }
}
