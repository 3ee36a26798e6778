use std::collections::{HashMap, VecDeque};

use fixedbitset::FixedBitSet;

use super::GroupTable;
use crate::error::{Error, Result};

/// Default cap on the group order for full subgroup enumeration.
pub const SUBGROUP_CAP: usize = 256;

/// A subgroup of some parent [`GroupTable`], stored as its sorted element
/// indices. The sorted list doubles as the canonical key.
#[derive(Clone, Debug)]
pub struct Subgroup {
    parent_order: usize,
    elems: Vec<usize>,
    members: FixedBitSet,
    gens: Vec<usize>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent_order == other.parent_order && self.elems == other.elems
    }
}

impl Eq for Subgroup {}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    /// By order, then lexicographically by element list.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.elems
            .len()
            .cmp(&other.elems.len())
            .then_with(|| self.elems.cmp(&other.elems))
    }
}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.elems.hash(state);
    }
}

impl Subgroup {
    fn from_members(members: FixedBitSet, gens: Vec<usize>) -> Self {
        let elems: Vec<usize> = members.ones().collect();
        Subgroup {
            parent_order: members.len(),
            elems,
            members,
            gens,
        }
    }

    pub fn trivial(g: &GroupTable) -> Self {
        let mut m = FixedBitSet::with_capacity(g.order());
        m.insert(0);
        Self::from_members(m, Vec::new())
    }

    pub fn whole(g: &GroupTable) -> Self {
        let mut m = FixedBitSet::with_capacity(g.order());
        m.insert_range(..);
        let gens = minimal_generators(g, &(0..g.order()).collect::<Vec<_>>());
        Self::from_members(m, gens)
    }

    /// Wrap an explicit element set, checking it is a subgroup.
    pub fn from_elements(g: &GroupTable, elems: &[usize]) -> Result<Self> {
        let n = g.order();
        let mut m = FixedBitSet::with_capacity(n);
        for &x in elems {
            if x >= n {
                return Err(Error::Parameter(format!("element {x} out of range")));
            }
            m.insert(x);
        }
        if !m.contains(0) {
            return Err(Error::Parameter("subset does not contain the identity".into()));
        }
        for a in m.ones() {
            if !m.contains(g.inv(a)) {
                return Err(Error::Parameter("subset is not closed under inverses".into()));
            }
            for b in m.ones() {
                if !m.contains(g.mul(a, b)) {
                    return Err(Error::Parameter("subset is not closed under products".into()));
                }
            }
        }
        let list: Vec<usize> = m.ones().collect();
        let gens = minimal_generators(g, &list);
        Ok(Self::from_members(m, gens))
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn elements(&self) -> &[usize] {
        &self.elems
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn index(&self) -> usize {
        self.parent_order / self.elems.len()
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    /// A generating set (empty for the trivial subgroup).
    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn is_trivial(&self) -> bool {
        self.elems.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.elems.len() == self.parent_order
    }

    pub fn is_normal(&self, g: &GroupTable) -> bool {
        (0..g.order()).all(|x| self.gens.iter().all(|&h| self.contains(g.conj(h, x))))
    }

    pub fn intersection(&self, other: &Subgroup, g: &GroupTable) -> Subgroup {
        let mut m = self.members.clone();
        m.intersect_with(&other.members);
        let list: Vec<usize> = m.ones().collect();
        let gens = minimal_generators(g, &list);
        Self::from_members(m, gens)
    }
}

/// Closure of `seed` under the group law, starting from an already closed
/// `base` subgroup when one is known.
fn close(g: &GroupTable, base: Option<&Subgroup>, seed: &[usize]) -> Subgroup {
    let n = g.order();
    let (mut members, mut list, mut gens) = match base {
        Some(b) => (b.members.clone(), b.elems.clone(), b.gens.clone()),
        None => {
            let mut m = FixedBitSet::with_capacity(n);
            m.insert(0);
            (m, vec![0], Vec::new())
        }
    };
    for &s in seed {
        if members.contains(s) {
            continue;
        }
        gens.push(s);
        // Extend by the new generator: multiply every known element by all
        // generators until nothing new appears.
        let mut head = 0;
        members.insert(s);
        list.push(s);
        while head < list.len() {
            let x = list[head];
            head += 1;
            for &t in &gens {
                let y = g.mul(x, t);
                if !members.contains(y) {
                    members.insert(y);
                    list.push(y);
                }
            }
        }
    }
    Subgroup::from_members(members, gens)
}

/// Greedy generating set: repeatedly take the highest-order element outside
/// the current closure.
pub(crate) fn minimal_generators(g: &GroupTable, elems: &[usize]) -> Vec<usize> {
    let mut sorted: Vec<usize> = elems.to_vec();
    sorted.sort_by_key(|&x| (std::cmp::Reverse(g.element_order(x)), x));
    let mut cur = close(g, None, &[]);
    for x in sorted {
        if cur.order() == elems.len() {
            break;
        }
        if !cur.contains(x) {
            cur = close(g, Some(&cur), &[x]);
        }
    }
    cur.gens
}

/// `<seed>`; the identity is always included.
pub fn subgroup_generated(g: &GroupTable, seed: &[usize]) -> Subgroup {
    let s = close(g, None, seed);
    // Re-derive a small generating set for readability of reports.
    let gens = minimal_generators(g, &s.elems);
    Subgroup { gens, ..s }
}

/// `H^x = x^-1 H x`.
pub fn conjugate_subgroup(g: &GroupTable, h: &Subgroup, x: usize) -> Subgroup {
    let mut m = FixedBitSet::with_capacity(g.order());
    for &e in &h.elems {
        m.insert(g.conj(e, x));
    }
    let gens = h.gens.iter().map(|&e| g.conj(e, x)).collect();
    Subgroup::from_members(m, gens)
}

pub fn all_subgroups(g: &GroupTable) -> Result<Vec<Subgroup>> {
    all_subgroups_with_cap(g, SUBGROUP_CAP)
}

/// Every subgroup exactly once, sorted by (order, element list).
///
/// Seeds with the cyclic subgroups and extends each known subgroup by every
/// outside element until no new subgroup appears.
pub fn all_subgroups_with_cap(g: &GroupTable, cap: usize) -> Result<Vec<Subgroup>> {
    let n = g.order();
    if n > cap {
        return Err(Error::size("subgroup enumeration order", n as u64, cap as u64));
    }
    let mut found: Vec<Subgroup> = Vec::new();
    let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    let mut push = |s: Subgroup, found: &mut Vec<Subgroup>, queue: &mut VecDeque<usize>| {
        if !seen.contains_key(&s.elems) {
            seen.insert(s.elems.clone(), found.len());
            queue.push_back(found.len());
            found.push(s);
        }
    };
    push(Subgroup::trivial(g), &mut found, &mut queue);
    for x in 1..n {
        push(close(g, None, &[x]), &mut found, &mut queue);
    }
    while let Some(i) = queue.pop_front() {
        let h = found[i].clone();
        if h.order() == n {
            continue;
        }
        // <H, x> depends only on the double coset HxH.
        let mut done = h.members.clone();
        for x in 0..n {
            if done.contains(x) {
                continue;
            }
            for &a in &h.elems {
                let ax = g.mul(a, x);
                for &b in &h.elems {
                    done.insert(g.mul(ax, b));
                }
            }
            let k = close(g, Some(&h), &[x]);
            push(k, &mut found, &mut queue);
        }
    }
    found.sort();
    Ok(found)
}

#[derive(Clone, Debug)]
pub struct SubgroupRelations {
    pub normalizer: Subgroup,
    pub core: Subgroup,
    pub is_normal: bool,
}

pub fn subgroup_relations(g: &GroupTable, h: &Subgroup) -> SubgroupRelations {
    let n = g.order();
    let norm: Vec<usize> = (0..n)
        .filter(|&x| h.gens.iter().all(|&e| h.contains(g.conj(e, x))))
        .collect();
    let normalizer = close(g, None, &norm);
    let core_elems: Vec<usize> = h
        .elems
        .iter()
        .copied()
        .filter(|&e| (0..n).all(|x| h.contains(g.conj(e, x))))
        .collect();
    let core = subgroup_generated(g, &core_elems);
    let is_normal = normalizer.order() == n;
    debug_assert_eq!(is_normal, core.order() == h.order());
    SubgroupRelations {
        normalizer: subgroup_generated(g, &normalizer.elems),
        core,
        is_normal,
    }
}

/// Some `x` with `H^x = K`, smallest index first.
pub fn are_conjugate(g: &GroupTable, h: &Subgroup, k: &Subgroup) -> Option<usize> {
    if h.order() != k.order() {
        return None;
    }
    (0..g.order()).find(|&x| h.gens.iter().all(|&e| k.contains(g.conj(e, x))))
}

/// The full subgroup list of a group with lookup tables built once.
pub struct Lattice<'g> {
    group: &'g GroupTable,
    subgroups: Vec<Subgroup>,
    index: HashMap<Vec<usize>, usize>,
    normal: Vec<bool>,
    class_of: Vec<usize>,
    class_sizes: Vec<usize>,
}

impl<'g> Lattice<'g> {
    pub fn new(group: &'g GroupTable) -> Result<Self> {
        Self::with_cap(group, SUBGROUP_CAP)
    }

    pub fn with_cap(group: &'g GroupTable, cap: usize) -> Result<Self> {
        let subgroups = all_subgroups_with_cap(group, cap)?;
        let index: HashMap<Vec<usize>, usize> = subgroups
            .iter()
            .enumerate()
            .map(|(i, s)| (s.elems.clone(), i))
            .collect();
        let normal = subgroups.iter().map(|s| s.is_normal(group)).collect();
        let mut class_of = vec![usize::MAX; subgroups.len()];
        let mut class_sizes = Vec::new();
        for i in 0..subgroups.len() {
            if class_of[i] != usize::MAX {
                continue;
            }
            let cls = class_sizes.len();
            let mut size = 0;
            for x in 0..group.order() {
                let c = conjugate_subgroup(group, &subgroups[i], x);
                let j = index[&c.elems];
                if class_of[j] == usize::MAX {
                    class_of[j] = cls;
                    size += 1;
                }
            }
            class_sizes.push(size);
        }
        Ok(Lattice {
            group,
            subgroups,
            index,
            normal,
            class_of,
            class_sizes,
        })
    }

    pub fn group(&self) -> &'g GroupTable {
        self.group
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn get(&self, i: usize) -> &Subgroup {
        &self.subgroups[i]
    }

    pub fn position(&self, s: &Subgroup) -> Option<usize> {
        self.index.get(&s.elems).copied()
    }

    pub fn is_normal(&self, i: usize) -> bool {
        self.normal[i]
    }

    pub fn normal_subgroups(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.subgroups.len()).filter(|&i| self.normal[i])
    }

    pub fn is_dedekind(&self) -> bool {
        self.normal.iter().all(|&b| b)
    }

    /// Conjugacy class id of subgroup `i`; ids are assigned in subgroup order.
    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    pub fn class_count(&self) -> usize {
        self.class_sizes.len()
    }

    pub fn class_size(&self, class: usize) -> usize {
        self.class_sizes[class]
    }

    /// The first (canonically smallest) subgroup of each conjugacy class.
    pub fn class_representatives(&self) -> Vec<usize> {
        let mut reps = vec![usize::MAX; self.class_sizes.len()];
        for (i, &c) in self.class_of.iter().enumerate() {
            if reps[c] == usize::MAX {
                reps[c] = i;
            }
        }
        reps
    }

    /// Subgroups properly contained in no proper subgroup.
    pub fn maximal_subgroups(&self) -> Vec<usize> {
        let n = self.group.order();
        let proper: Vec<usize> = (0..self.len()).filter(|&i| self.subgroups[i].order() < n).collect();
        proper
            .iter()
            .copied()
            .filter(|&i| {
                !proper.iter().any(|&j| {
                    j != i
                        && self.subgroups[j].order() > self.subgroups[i].order()
                        && self.subgroups[i].is_subgroup_of(&self.subgroups[j])
                })
            })
            .collect()
    }

    /// Subgroups of subgroup `h` that are normal in `h`.
    pub fn normal_in(&self, h: usize) -> Vec<usize> {
        let hs = &self.subgroups[h];
        (0..self.len())
            .filter(|&j| {
                let n = &self.subgroups[j];
                hs.order() % n.order() == 0
                    && n.is_subgroup_of(hs)
                    && hs.gens.iter().all(|&x| n.gens.iter().all(|&e| n.contains(self.group.conj(e, x))))
            })
            .collect()
    }
}
