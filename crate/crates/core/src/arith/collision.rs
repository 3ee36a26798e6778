//! Exhaustive search for coincidences among products of `t!/t^t`.

use std::collections::HashMap;

use serde::Serialize;

use super::{factorial_ratio, is_prime};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::rational::{BigRational, RationalJson};

/// Largest admissible `max_sum`.
pub const COLLISION_MAX_SUM: u64 = 40;

#[derive(Clone, Debug, Serialize)]
pub struct Collision {
    pub value: RationalJson,
    /// Decreasing multisets sharing `value`, in lexicographic order.
    pub multisets: Vec<Vec<u64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CollisionReport {
    pub max_sum: u64,
    pub multisets_scanned: usize,
    pub distinct_values: usize,
    /// Values hit by a set of distinct primes and by some other multiset.
    /// The uniqueness statement says this is empty.
    pub prime_product_violations: Vec<Collision>,
    /// Every value shared by two or more multisets (informative).
    pub collisions: Vec<Collision>,
}

impl CollisionReport {
    pub fn holds(&self) -> bool {
        self.prime_product_violations.is_empty()
    }
}

pub fn prodpi_collision_scan(max_sum: u64) -> Result<CollisionReport> {
    prodpi_collision_scan_with(max_sum, Exec::default())
}

/// Enumerate every multiset of integers `>= 2` with sum at most `max_sum`,
/// evaluate `∏ t!/t^t` exactly and group equal values. The work is split by
/// largest part; merging is in a fixed order so the report is deterministic.
pub fn prodpi_collision_scan_with(max_sum: u64, exec: Exec) -> Result<CollisionReport> {
    if max_sum > COLLISION_MAX_SUM {
        return Err(Error::size("collision scan sum", max_sum, COLLISION_MAX_SUM));
    }
    let tops: Vec<u64> = (2..=max_sum).collect();
    let chunks = exec.map(&tops, |&top| {
        let mut out = Vec::new();
        let mut stack = vec![top];
        collect(&mut stack, top, max_sum - top, &mut out);
        out
    });

    let mut groups: HashMap<BigRational, Vec<Vec<u64>>> = HashMap::new();
    let mut scanned = 0;
    for (ms, value) in chunks.into_iter().flatten() {
        scanned += 1;
        groups.entry(value).or_default().push(ms);
    }

    let mut collisions: Vec<(BigRational, Vec<Vec<u64>>)> = groups
        .iter()
        .filter(|(_, v)| v.len() > 1)
        .map(|(k, v)| {
            let mut v = v.clone();
            v.sort();
            (k.clone(), v)
        })
        .collect();
    collisions.sort_by(|a, b| b.0.cmp(&a.0));
    let to_json = |(k, v): &(BigRational, Vec<Vec<u64>>)| Collision {
        value: k.into(),
        multisets: v.clone(),
    };
    let violations = collisions
        .iter()
        .filter(|(_, v)| v.iter().any(|m| is_distinct_primes(m)))
        .map(to_json)
        .collect();
    Ok(CollisionReport {
        max_sum,
        multisets_scanned: scanned,
        distinct_values: groups.len(),
        prime_product_violations: violations,
        collisions: collisions.iter().map(to_json).collect(),
    })
}

/// Extend the decreasing multiset in `stack` by parts `<= cap` with total at
/// most `room`, recording each multiset and its value.
fn collect(stack: &mut Vec<u64>, cap: u64, room: u64, out: &mut Vec<(Vec<u64>, BigRational)>) {
    let value = stack
        .iter()
        .map(|&t| factorial_ratio(t).expect("parts are >= 2"))
        .product();
    out.push((stack.clone(), value));
    for t in 2..=cap.min(room) {
        stack.push(t);
        collect(stack, t, room - t, out);
        stack.pop();
    }
}

fn is_distinct_primes(m: &[u64]) -> bool {
    m.iter().all(|&t| is_prime(t)) && m.windows(2).all(|w| w[0] != w[1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn small_scan() {
        let r = prodpi_collision_scan_with(12, Exec::Sequential).unwrap();
        assert!(r.holds());
        // Partitions of 2..=12 into parts >= 2.
        let expected: usize = [1, 1, 2, 2, 4, 4, 7, 8, 12, 14, 21].iter().sum();
        assert_eq!(r.multisets_scanned, expected);
    }

    #[test]
    fn one_ninth_only_from_two_and_three() {
        let r = prodpi_collision_scan(28).unwrap();
        assert!(r.holds());
        let ninth: RationalJson = (&ratio(1, 9)).into();
        assert!(r.collisions.iter().all(|c| c.value != ninth));
    }

    #[test]
    fn four_is_not_a_prime_product() {
        let r = prodpi_collision_scan(16).unwrap();
        let v: RationalJson = (&ratio(3, 32)).into();
        if let Some(c) = r.collisions.iter().find(|c| c.value == v) {
            assert!(c.multisets.iter().all(|m| !is_distinct_primes(m)));
        }
    }

    #[test]
    fn budget() {
        assert!(prodpi_collision_scan(41).unwrap_err().is_size_limit());
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn modes_agree() {
        let a = serde_json::to_string(&prodpi_collision_scan_with(20, Exec::Sequential).unwrap()).unwrap();
        let b = serde_json::to_string(&prodpi_collision_scan_with(20, Exec::Parallel).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}
