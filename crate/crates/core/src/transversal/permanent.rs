//! Ryser's formula with Gray-code subset order.
//!
//! `per(A) = (-1)^n Σ_S (-1)^|S| ∏_i Σ_{j∈S} a_ij`. Walking subsets in
//! Gray-code order changes one column per step, so the row sums update in
//! time proportional to that column's non-zeros. Products are skipped while
//! any row sum is zero. When every term provably fits, the sweep runs in
//! `i128`; otherwise it falls back to big integers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exec::Exec;

pub const PERMANENT_MAX_N: usize = 24;

/// Subsets per parallel work unit.
const CHUNK_BITS: u32 = 14;

pub fn permanent_ryser(m: &[Vec<i64>]) -> Result<BigInt> {
    permanent_ryser_with(m, Exec::default())
}

pub fn permanent_ryser_with(m: &[Vec<i64>], exec: Exec) -> Result<BigInt> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::Parameter("permanent needs a square matrix".into()));
    }
    if n > PERMANENT_MAX_N {
        return Err(Error::size("permanent size", n as u64, PERMANENT_MAX_N as u64));
    }
    if n == 0 {
        return Ok(BigInt::one());
    }
    let columns: Vec<Vec<(usize, i64)>> = (0..n)
        .map(|j| (0..n).filter(|&i| m[i][j] != 0).map(|i| (i, m[i][j])).collect())
        .collect();

    // |Σ_S term| <= 2^n ∏ (row absolute sums).
    let mut bound_bits = n as u64;
    for row in m {
        let s: u128 = row.iter().map(|x| x.unsigned_abs() as u128).sum();
        if s == 0 {
            return Ok(BigInt::zero());
        }
        bound_bits += 128 - u64::from((s - 1).leading_zeros()).min(127);
    }
    let fits = bound_bits < 126;

    let total: u64 = 1 << n;
    let chunk: u64 = 1 << CHUNK_BITS.min(n as u32);
    let chunks = (total / chunk) as usize;
    let sum = if fits {
        let parts = exec.map_range(0..chunks, |c| sweep_i128(&columns, n, c as u64 * chunk, chunk));
        BigInt::from(parts.into_iter().sum::<i128>())
    } else {
        exec.map_range(0..chunks, |c| sweep_big(&columns, n, c as u64 * chunk, chunk))
            .into_iter()
            .sum()
    };
    Ok(if n % 2 == 1 { -sum } else { sum })
}

fn gray(k: u64) -> u64 {
    k ^ (k >> 1)
}

/// Row sums over the columns in subset `s`.
fn row_sums(columns: &[Vec<(usize, i64)>], n: usize, s: u64) -> Vec<i64> {
    let mut rows = vec![0i64; n];
    for (j, col) in columns.iter().enumerate() {
        if s >> j & 1 == 1 {
            for &(i, v) in col {
                rows[i] += v;
            }
        }
    }
    rows
}

macro_rules! sweep {
    ($name:ident, $acc:ty, $conv:expr) => {
        /// Signed terms for Gray-code positions `start..start + len`.
        fn $name(columns: &[Vec<(usize, i64)>], n: usize, start: u64, len: u64) -> $acc {
            let mut s = gray(start);
            let mut rows = row_sums(columns, n, s);
            let mut zeros = rows.iter().filter(|&&r| r == 0).count();
            let mut acc: $acc = Zero::zero();
            let mut k = start;
            loop {
                if zeros == 0 {
                    let mut term: $acc = One::one();
                    for &r in &rows {
                        term *= $conv(r);
                    }
                    if s.count_ones() % 2 == 1 {
                        acc -= term;
                    } else {
                        acc += term;
                    }
                }
                k += 1;
                if k == start + len {
                    return acc;
                }
                let j = k.trailing_zeros() as usize;
                let adding = s >> j & 1 == 0;
                s ^= 1 << j;
                for &(i, v) in &columns[j] {
                    let before = rows[i];
                    rows[i] += if adding { v } else { -v };
                    match (before == 0, rows[i] == 0) {
                        (true, false) => zeros -= 1,
                        (false, true) => zeros += 1,
                        _ => {}
                    }
                }
            }
        }
    };
}

sweep!(sweep_i128, i128, |r: i64| r as i128);
sweep!(sweep_big, BigInt, BigInt::from);

/// Permanent straight from the definition, for cross-checking small cases.
#[cfg(test)]
pub(crate) fn permanent_naive(m: &[Vec<i64>]) -> BigInt {
    fn rec(m: &[Vec<i64>], row: usize, used: &mut Vec<bool>) -> BigInt {
        if row == m.len() {
            return BigInt::one();
        }
        let mut acc = BigInt::zero();
        for j in 0..m.len() {
            if !used[j] && m[row][j] != 0 {
                used[j] = true;
                acc += BigInt::from(m[row][j]) * rec(m, row + 1, used);
                used[j] = false;
            }
        }
        acc
    }
    rec(m, 0, &mut vec![false; m.len()])
}
