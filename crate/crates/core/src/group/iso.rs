//! Exact isomorphism testing for small groups.
//!
//! Cheap invariants reject most pairs; the rest go to a backtracking search
//! that maps a short generating sequence of one group into the other and
//! extends the assignment to a homomorphism word by word.

use super::subgroup::minimal_generators;
use super::GroupTable;
use crate::error::{Error, Result};

/// Default order cap for isomorphism tests.
pub const ISO_ORDER_CAP: usize = 512;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fingerprint {
    pub order: usize,
    pub abelian: bool,
    /// `(element order, count)` sorted by element order.
    pub order_histogram: Vec<(usize, usize)>,
    pub center_order: usize,
    pub derived_order: usize,
}

pub fn fingerprint(g: &GroupTable) -> Fingerprint {
    let mut hist = std::collections::BTreeMap::new();
    for o in g.element_orders() {
        *hist.entry(o).or_insert(0) += 1;
    }
    let n = g.order();
    let commutators: Vec<usize> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| g.commutator(a, b)).collect();
    let derived = super::subgroup_generated(g, &commutators);
    Fingerprint {
        order: n,
        abelian: derived.is_trivial(),
        order_histogram: hist.into_iter().collect(),
        center_order: g.center().len(),
        derived_order: derived.order(),
    }
}

pub fn is_isomorphic(a: &GroupTable, b: &GroupTable) -> Result<bool> {
    is_isomorphic_with_cap(a, b, ISO_ORDER_CAP)
}

pub fn is_isomorphic_with_cap(a: &GroupTable, b: &GroupTable, cap: usize) -> Result<bool> {
    let n = a.order().max(b.order());
    if n > cap {
        return Err(Error::size("isomorphism test order", n as u64, cap as u64));
    }
    if a.order() != b.order() {
        return Ok(false);
    }
    let (fa, fb) = (fingerprint(a), fingerprint(b));
    if fa != fb {
        return Ok(false);
    }
    // Finite abelian groups are determined by their element-order counts.
    if fa.abelian {
        return Ok(true);
    }
    Ok(find_isomorphism(a, b).is_some())
}

/// An explicit isomorphism `a -> b` as an image table, if one exists.
pub(crate) fn find_isomorphism(a: &GroupTable, b: &GroupTable) -> Option<Vec<usize>> {
    if a.order() != b.order() {
        return None;
    }
    let all: Vec<usize> = (0..a.order()).collect();
    let gens = minimal_generators(a, &all);
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&x| (0..b.order()).filter(|&y| b.element_order(y) == a.element_order(x)).collect())
        .collect();
    let mut search = Search {
        a,
        b,
        gens: &gens,
        images: Vec::with_capacity(gens.len()),
    };
    search.extend(&candidates)
}

struct Search<'a> {
    a: &'a GroupTable,
    b: &'a GroupTable,
    gens: &'a [usize],
    images: Vec<usize>,
}

impl Search<'_> {
    fn extend(&mut self, candidates: &[Vec<usize>]) -> Option<Vec<usize>> {
        let depth = self.images.len();
        if depth == self.gens.len() {
            let map = self.partial_map()?;
            return map.iter().all(|&v| v != usize::MAX).then_some(map);
        }
        for &y in &candidates[depth] {
            self.images.push(y);
            if self.partial_map().is_some() {
                if let Some(m) = self.extend(candidates) {
                    return Some(m);
                }
            }
            self.images.pop();
        }
        None
    }

    /// Extend the generator assignment over the subgroup generated by the
    /// assigned generators; `None` if it is not a well-defined injective
    /// homomorphism there.
    fn partial_map(&self) -> Option<Vec<usize>> {
        let (a, b) = (self.a, self.b);
        let k = self.images.len();
        let mut map = vec![usize::MAX; a.order()];
        let mut used = vec![false; b.order()];
        map[0] = 0;
        used[0] = true;
        let mut queue = vec![0usize];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for i in 0..k {
                let y = a.mul(x, self.gens[i]);
                let img = b.mul(map[x], self.images[i]);
                if map[y] == usize::MAX {
                    if used[img] {
                        return None;
                    }
                    map[y] = img;
                    used[img] = true;
                    queue.push(y);
                } else if map[y] != img {
                    return None;
                }
            }
        }
        Some(map)
    }
}
