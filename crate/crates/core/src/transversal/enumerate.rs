//! Brute-force count of two-sided transversals.
//!
//! Deliberately shares nothing with the coset graph: coset membership is
//! recomputed here from the multiplication table.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::group::{GroupTable, Subgroup};

/// Default cap on `|H|^n`, the number of left transversals.
pub const ENUMERATION_BUDGET: u128 = 1_000_000;

pub fn dt_enumerate(g: &GroupTable, h: &Subgroup, k: &Subgroup) -> Result<BigInt> {
    dt_enumerate_with_budget(g, h, k, ENUMERATION_BUDGET)
}

/// Number of left transversals of `H` that are also right transversals of
/// `K`: choose one element from each left coset in turn, rejecting any
/// element whose right `K`-coset is already used.
pub fn dt_enumerate_with_budget(g: &GroupTable, h: &Subgroup, k: &Subgroup, budget: u128) -> Result<BigInt> {
    if h.index() != k.index() {
        return Err(Error::Precondition("subgroups have different indices".into()));
    }
    let n = h.index();
    let leaves = (h.order() as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if leaves > budget {
        return Err(Error::size("transversal enumeration leaves", leaves, budget));
    }

    // Right coset label: the smallest element of Kx.
    let right: Vec<usize> = (0..g.order())
        .map(|x| k.elements().iter().map(|&a| g.mul(a, x)).min().unwrap())
        .collect();
    let mut label_index = vec![usize::MAX; g.order()];
    let mut next = 0;
    for x in 0..g.order() {
        if label_index[right[x]] == usize::MAX {
            label_index[right[x]] = next;
            next += 1;
        }
    }
    // Left cosets as explicit element lists.
    let mut seen = vec![false; g.order()];
    let mut cosets: Vec<Vec<usize>> = Vec::with_capacity(n);
    for x in 0..g.order() {
        if !seen[x] {
            let c: Vec<usize> = h.elements().iter().map(|&e| g.mul(x, e)).collect();
            for &y in &c {
                seen[y] = true;
            }
            cosets.push(c);
        }
    }
    let choices: Vec<Vec<usize>> = cosets
        .iter()
        .map(|c| c.iter().map(|&y| label_index[right[y]]).collect())
        .collect();

    fn dfs(choices: &[Vec<usize>], depth: usize, used: &mut [bool]) -> u64 {
        if depth == choices.len() {
            return 1;
        }
        let mut count = 0;
        for &r in &choices[depth] {
            if !used[r] {
                used[r] = true;
                count += dfs(choices, depth + 1, used);
                used[r] = false;
            }
        }
        count
    }
    let mut used = vec![false; n];
    Ok(BigInt::from(dfs(&choices, 0, &mut used)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{alternating_group, all_subgroups, make_named_family, subgroup_generated, Family};

    #[test]
    fn s3_reflection() {
        let g = make_named_family(Family::Dihedral(3)).unwrap();
        let h = subgroup_generated(&g, &[3]);
        assert_eq!(dt_enumerate(&g, &h, &h).unwrap(), BigInt::from(4));
    }

    #[test]
    fn normal_counts_everything() {
        let g = make_named_family(Family::Dihedral(4)).unwrap();
        let h = subgroup_generated(&g, &[2]);
        assert_eq!(dt_enumerate(&g, &h, &h).unwrap(), BigInt::from(16));
    }

    #[test]
    fn a4_c3() {
        let a4 = alternating_group(4).unwrap();
        let c3 = all_subgroups(&a4).unwrap().into_iter().find(|s| s.order() == 3).unwrap();
        // 3^4 * 2/9
        assert_eq!(dt_enumerate(&a4, &c3, &c3).unwrap(), BigInt::from(18));
    }

    #[test]
    fn budget() {
        // A reflection in D21 has index 21, so 2^21 left transversals.
        let g = make_named_family(Family::Dihedral(21)).unwrap();
        let h = subgroup_generated(&g, &[21]);
        assert!(dt_enumerate(&g, &h, &h).unwrap_err().is_size_limit());
        // 2^21 * 2^-10
        assert_eq!(dt_enumerate_with_budget(&g, &h, &h, 1 << 21).unwrap(), BigInt::from(1 << 11));
    }
}
