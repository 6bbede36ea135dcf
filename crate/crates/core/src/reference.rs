//! Published values the verification suites compare against.

use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::Rational;

/// `A_1 .. A_8`, the coefficients of `H` after its leading `-2 q^-1/8`.
pub const A_N: [i64; 8] = [45, 231, 770, 2277, 5796, 13915, 30843, 65550];

/// Leading coefficients of `q^(1/8) Q+(tau/8)` in powers of `q^(1/2)`.
pub const Q_PLUS_LEADING: [i64; 5] = [1, 28, 39, 196, 161];

/// `(m, n, Phi_{m,2n})` for the first non-vanishing invariants.
pub const PHI_TABLE: [(u32, u32, i64, i64); 9] = [
    (0, 0, -1, 1),
    (0, 2, -3, 16),
    (1, 1, -5, 16),
    (2, 0, -19, 16),
    (0, 4, -232, 256),
    (1, 3, -152, 256),
    (2, 2, -136, 256),
    (3, 1, -184, 256),
    (4, 0, -680, 256),
];

/// `(m, n, [(num, den)])`.
pub type ColumnRow = (u32, u32, &'static [(i64, i64)]);

/// `D_{m,2n}` as a combination of `H_0, H_1, ...`, lowest index first.
pub const COLUMN_TABLE: [ColumnRow; 9] = [
    (0, 0, &[(6, 1), (-1, 4)]),
    (0, 2, &[(-2133, 64), (9, 4), (-49, 64)]),
    (1, 1, &[(-195, 64), (1, 4), (-7, 64)]),
    (2, 0, &[(411, 64), (-1, 4), (-1, 64)]),
    (0, 4, &[(108741, 128), (44631, 1024), (2401, 128), (-14641, 1024)]),
    (1, 3, &[(-1749, 128), (10341, 1024), (-49, 128), (-1331, 1024)]),
    (2, 2, &[(-3687, 128), (2895, 1024), (-91, 128), (-121, 1024)]),
    (3, 1, &[(-753, 128), (589, 1024), (-29, 128), (-11, 1024)]),
    (4, 0, &[(1725, 128), (-505, 1024), (-7, 128), (-1, 1024)]),
];

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn phi(m: u32, n: u32) -> Option<Rational> {
    PHI_TABLE.iter().find(|r| r.0 == m && r.1 == n).map(|r| rat(r.2, r.3))
}

pub fn column(m: u32, n: u32) -> Option<Vec<Rational>> {
    COLUMN_TABLE
        .iter()
        .find(|r| r.0 == m && r.1 == n)
        .map(|r| r.2.iter().map(|&(a, b)| rat(a, b)).collect())
}
