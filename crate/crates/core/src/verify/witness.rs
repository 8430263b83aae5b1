use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{big_pow, is_irreducible, normalize, Trinomial};
use crate::index::{nu2_table, nu3_table, TableRow};
use crate::newton::{inverse_mod, PadicKind};

pub const ALL_ROWS: [TableRow; 13] = [
    TableRow::Nu2(1),
    TableRow::Nu2(2),
    TableRow::Nu2(3),
    TableRow::Nu2(4),
    TableRow::Nu2(5),
    TableRow::Nu2(6),
    TableRow::Nu2(7),
    TableRow::Nu2(8),
    TableRow::Nu2(9),
    TableRow::Nu3(1),
    TableRow::Nu3(2),
    TableRow::Nu3(3),
    TableRow::Nu3(4),
];

fn hits(t: &Trinomial, row: TableRow) -> bool {
    let value = match row {
        TableRow::Nu2(_) => nu2_table(t),
        TableRow::Nu3(_) => nu3_table(t),
    };
    value.is_ok_and(|v| v.row == Some(row))
        && normalize(t).a == t.a
        && is_irreducible(&t.a, &t.b)
}

fn pair(a: i64, b: i64) -> Option<Trinomial> {
    Trinomial::from_i64(a, b).ok()
}

/// `(v2(a), v2(b) choices, b_2 + a_2 residue mod 8)` for the 2-adic rows.
fn nu2_shape(row: u8) -> (u32, Vec<u32>, i64) {
    match row {
        1..=5 => {
            let off = (row - 1) as u32;
            (off, vec![off + 2, off + 4, off + 6], 0)
        }
        6 => (5, vec![9, 11], 0),
        7 => (6, vec![10, 12], 0),
        8 => (5, vec![7], 4),
        _ => (6, vec![8], -1),
    }
}

fn nu2_witness(row: u8) -> Option<Trinomial> {
    let (va, vbs, sum) = nu2_shape(row);
    for a2 in (1..200i64).step_by(2) {
        for &vb in &vbs {
            for j in 0..64i64 {
                let b2 = if sum < 0 {
                    2 * j + 1
                } else {
                    (sum - a2).rem_euclid(8) + 8 * j
                };
                for s in [1, -1] {
                    let t = pair(a2 << va, s * (b2 << vb))?;
                    if hits(&t, TableRow::Nu2(row)) {
                        return Some(t);
                    }
                }
            }
        }
    }
    None
}

const NU3_CLASSES: [(u8, i64, i64, i64); 6] = [
    (1, 9, 71, 242),
    (1, 36, 44, 242),
    (2, 63, 17, 80),
    (3, 18, 64, 163),
    (4, 45, 37, 1),
    (4, 72, 10, 1),
];

fn nu3_witness(row: u8) -> Option<Trinomial> {
    for &(_, am, _, s) in NU3_CLASSES.iter().filter(|c| c.0 == row) {
        for i in 0..200 {
            let a = am + 81 * i;
            for j in (0..=200i64).flat_map(|k| [k, -k - 1]) {
                let t = pair(a, s - a + 243 * j)?;
                if hits(&t, TableRow::Nu3(row)) {
                    return Some(t);
                }
            }
        }
    }
    None
}

/// Smallest congruence-built irreducible, normalized pair landing in `row`.
pub fn table_witness(row: TableRow) -> Option<Trinomial> {
    match row {
        TableRow::Nu2(r) => nu2_witness(r),
        TableRow::Nu3(r) => nu3_witness(r),
    }
}

pub fn table_witnesses() -> Vec<(TableRow, Option<Trinomial>)> {
    ALL_ROWS.iter().map(|&r| (r, table_witness(r))).collect()
}

/// The unique `x` with `x^7 = c mod p^k` (`p` in {2, 3}, `c` a unit).
fn seventh_root(p: u64, c: &BigInt, k: u32) -> BigInt {
    let m = big_pow(p, k);
    let mut x = BigInt::one();
    for _ in 0..k + 5 {
        let fx = x.modpow(&BigInt::from(7), &m) - c;
        let dfx = BigInt::from(7) * x.modpow(&BigInt::from(6), &m);
        let inv = inverse_mod(&dfx, &m).expect("unit derivative");
        x = (x - fx * inv).mod_floor(&m);
    }
    debug_assert!((x.modpow(&BigInt::from(7), &m) - c).mod_floor(&m).is_zero());
    x
}

/// Irreducible pairs in a deep branch whose discriminant has valuation
/// near `2 * depth`, so the refinement runs at least `depth` levels.
pub fn deep_witnesses(kind: PadicKind, depth: u32, count: usize) -> Vec<Trinomial> {
    let mut out = Vec::new();
    match kind {
        PadicKind::P2Deep => {
            let m = big_pow(2, depth);
            let inv = inverse_mod(&big_pow(3, 18), &m).unwrap();
            for a2 in (1..400i64).step_by(2) {
                let a2 = BigInt::from(a2);
                let c = (-big_pow(7, 7) * a2.pow(9) * &inv).mod_floor(&m);
                let b2 = seventh_root(2, &c, depth);
                let t = Trinomial::new(&a2 * 64, b2 * 256).unwrap();
                if is_irreducible(&t.a, &t.b) {
                    out.push(t);
                }
                if out.len() >= count {
                    break;
                }
            }
        }
        PadicKind::P3DeepA | PadicKind::P3DeepB => {
            let classes: &[(i64, i64, i64)] = if kind == PadicKind::P3DeepA {
                &[(9, 71, 242), (72, 10, 1)]
            } else {
                &[(36, 44, 242), (63, 17, 80), (45, 37, 1), (18, 64, 163)]
            };
            let m = big_pow(3, depth);
            let per_class = count.div_ceil(classes.len());
            for &(am, bm, s) in classes {
                let mut found = 0;
                for i in 0..5000i64 {
                    let a3 = BigInt::from(am / 9 + 9 * i);
                    let c = (BigInt::from(-4) * big_pow(7, 7) * a3.pow(9)).mod_floor(&m);
                    let root = seventh_root(3, &c, depth);
                    let a = &a3 * 9;
                    for b in [root.clone(), &root - &m] {
                        let ok = residue(&b, 81) == bm && residue(&(&a + &b), 243) == s;
                        if ok && !b.is_zero() && is_irreducible(&a, &b) {
                            out.push(Trinomial::new(a.clone(), b).unwrap());
                            found += 1;
                        }
                    }
                    if found >= per_class {
                        break;
                    }
                }
            }
            out.truncate(count);
        }
    }
    out
}

fn residue(x: &BigInt, m: i64) -> i64 {
    x.mod_floor(&BigInt::from(m)).try_into().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{discriminant, vp};

    #[test]
    fn seventh_roots() {
        let r = seventh_root(3, &BigInt::from(2), 20);
        let m = big_pow(3, 20);
        assert_eq!(r.modpow(&BigInt::from(7), &m), BigInt::from(2));
    }

    #[test]
    fn two_adic_deep_witness_has_large_discriminant_valuation() {
        let w = deep_witnesses(PadicKind::P2Deep, 30, 2);
        assert_eq!(w.len(), 2);
        for t in &w {
            assert!(vp(2, &discriminant(t)) >= 60);
        }
    }
}
