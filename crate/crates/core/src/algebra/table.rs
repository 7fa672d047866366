use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::number::{cd_mul, MAX_LEVEL};
use crate::error::{Error, Result};

/// One entry of a multiplication table: `e_i * e_j = sign * e_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisProduct {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub sign: i8,
}

/// Octonion table in the basis `e0 = 1, e1..e3 = (i,j,k; 0), e4..e7 = (0; 1,i,j,k)`,
/// row `i`, column `j` holds `(sign, k)` for `e_i e_j`.
pub const REFERENCE_OCTONION_TABLE: [[(i8, usize); 8]; 8] = [
    [(1, 0), (1, 1), (1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (1, 7)],
    [(1, 1), (-1, 0), (1, 3), (-1, 2), (1, 5), (-1, 4), (-1, 7), (1, 6)],
    [(1, 2), (-1, 3), (-1, 0), (1, 1), (1, 6), (1, 7), (-1, 4), (-1, 5)],
    [(1, 3), (1, 2), (-1, 1), (-1, 0), (1, 7), (-1, 6), (1, 5), (-1, 4)],
    [(1, 4), (-1, 5), (-1, 6), (-1, 7), (-1, 0), (1, 1), (1, 2), (1, 3)],
    [(1, 5), (1, 4), (-1, 7), (1, 6), (-1, 1), (-1, 0), (-1, 3), (1, 2)],
    [(1, 6), (1, 7), (1, 4), (-1, 5), (-1, 2), (1, 3), (-1, 0), (-1, 1)],
    [(1, 7), (-1, 6), (1, 5), (1, 4), (-1, 3), (-1, 2), (1, 1), (-1, 0)],
];

/// All `2^level x 2^level` basis products, computed through the recursive
/// product. Entries are listed row-major (`i` outer, `j` inner).
pub fn generate_mult_table(level: u8) -> Result<Vec<BasisProduct>> {
    if level > MAX_LEVEL {
        return Err(Error::UnsupportedLevel(level));
    }
    let n = 1usize << level;
    let mut out = Vec::with_capacity(n * n);
    let unit = |k: usize| {
        let mut v = vec![0.0; n];
        v[k] = 1.0;
        v
    };
    for i in 0..n {
        for j in 0..n {
            let p = cd_mul(&unit(i), &unit(j));
            // Products of basis elements are exactly +-e_k.
            let (k, &c) = p
                .iter()
                .enumerate()
                .find(|(_, c)| **c != 0.0)
                .expect("basis product is never zero");
            debug_assert!(c == 1.0 || c == -1.0);
            debug_assert_eq!(p.iter().filter(|c| **c != 0.0).count(), 1);
            out.push(BasisProduct {
                i,
                j,
                k,
                sign: if c > 0.0 { 1 } else { -1 },
            });
        }
    }
    Ok(out)
}

/// Compares a generated level-3 table against [`REFERENCE_OCTONION_TABLE`],
/// returning every mismatching entry.
pub fn reference_table_mismatches(table: &[BasisProduct]) -> Vec<BasisProduct> {
    let mut bad = Vec::new();
    if table.len() != 64 {
        return table.to_vec();
    }
    for e in table {
        let (sign, k) = REFERENCE_OCTONION_TABLE[e.i][e.j];
        if e.sign != sign || e.k != k {
            bad.push(*e);
        }
    }
    bad
}

pub fn table_to_csv(table: &[BasisProduct]) -> String {
    let mut s = String::from("i,j,k,sign\n");
    for e in table {
        let _ = writeln!(s, "{},{},{},{}", e.i, e.j, e.k, e.sign);
    }
    s
}

/// Parses the `i,j,k,sign` CSV produced by [`table_to_csv`]. The header line is
/// optional; blank lines are skipped.
pub fn table_from_csv(text: &str) -> Result<Vec<BasisProduct>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || (lineno == 0 && line == "i,j,k,sign") {
            continue;
        }
        let err = |message: String| Error::Parse {
            line: lineno + 1,
            message,
        };
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 4 {
            return Err(err(format!("expected 4 fields, found {}", fields.len())));
        }
        let idx = |s: &str| {
            s.parse::<usize>()
                .map_err(|e| err(format!("bad index `{s}`: {e}")))
        };
        let (i, j, k) = (idx(fields[0])?, idx(fields[1])?, idx(fields[2])?);
        let sign = match fields[3] {
            "1" | "+1" => 1,
            "-1" => -1,
            other => return Err(err(format!("bad sign `{other}`"))),
        };
        let bound = 1usize << MAX_LEVEL;
        if i >= bound || j >= bound || k >= bound {
            return Err(err(format!("index out of range (max {})", bound - 1)));
        }
        out.push(BasisProduct { i, j, k, sign });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_table() {
        let t = generate_mult_table(1).unwrap();
        assert_eq!(
            t,
            vec![
                BasisProduct { i: 0, j: 0, k: 0, sign: 1 },
                BasisProduct { i: 0, j: 1, k: 1, sign: 1 },
                BasisProduct { i: 1, j: 0, k: 1, sign: 1 },
                BasisProduct { i: 1, j: 1, k: 0, sign: -1 },
            ]
        );
    }

    #[test]
    fn quaternion_table() {
        let t = generate_mult_table(2).unwrap();
        let at = |i: usize, j: usize| t[i * 4 + j];
        assert_eq!(at(1, 2), BasisProduct { i: 1, j: 2, k: 3, sign: 1 });
        assert_eq!(at(2, 1), BasisProduct { i: 2, j: 1, k: 3, sign: -1 });
        assert_eq!(at(3, 1).k, 2);
        assert_eq!(at(3, 1).sign, 1);
    }

    #[test]
    fn octonion_table_matches_reference() {
        let t = generate_mult_table(3).unwrap();
        assert!(reference_table_mismatches(&t).is_empty());
    }

    #[test]
    fn csv_round_trip() {
        let t = generate_mult_table(4).unwrap();
        assert_eq!(table_from_csv(&table_to_csv(&t)).unwrap(), t);
    }

    #[test]
    fn csv_rejects_garbage() {
        assert!(table_from_csv("1,2,3").is_err());
        assert!(table_from_csv("1,2,3,0").is_err());
        assert!(table_from_csv("1,2,99,1").is_err());
        assert!(table_from_csv("a,2,3,1").is_err());
    }

    #[test]
    fn too_deep() {
        assert_eq!(generate_mult_table(5), Err(Error::UnsupportedLevel(5)));
    }
}
