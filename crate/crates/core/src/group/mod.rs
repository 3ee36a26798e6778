//! Finite groups as Cayley tables.
//!
//! A [`GroupTable`] stores the full multiplication table with the identity at
//! index 0. Tables are validated once at construction and are immutable
//! afterwards, so every other routine can index freely.

mod families;
mod io;
mod iso;
mod perm;
mod product;
mod structure;
mod subgroup;

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub use families::{
    alternating_group, c2_cubed_rtimes_c7, c2_squared_rtimes_c4, c3_squared_rtimes_c4, central_product_c4_d4,
    elementary_abelian_by_cyclic, general_linear_3_2, make_named_family, matrix_action, modular_group_16, special_linear_2,
    symmetric_group, Family,
};
pub use io::{read_cayley_table, read_permutation_generators, write_cayley_table, write_permutation_generators};
pub use iso::{fingerprint, is_isomorphic, is_isomorphic_with_cap, Fingerprint, ISO_ORDER_CAP};
pub use perm::{from_permutation_generators, from_permutation_generators_with_cap, Permutation, CLOSURE_CAP};
pub use product::{direct_product, quotient_group, semidirect_product, subgroup_as_group, Action, Quotient};
pub use structure::{classify_structure, has_section, has_section_in, Section, StructureReport};
pub use subgroup::{
    all_subgroups, all_subgroups_with_cap, are_conjugate, conjugate_subgroup, subgroup_generated,
    subgroup_relations, Lattice, Subgroup, SubgroupRelations, SUBGROUP_CAP,
};

#[cfg(test)]
pub(crate) use families::metacyclic;
pub(crate) use io::group_from_permutation_text;
pub(crate) use structure::classify_structure_in;
pub(crate) use subgroup::minimal_generators;


/// Orders up to this bound are checked for associativity exhaustively.
pub const EXHAUSTIVE_ASSOC_LIMIT: usize = 512;
const RANDOM_ASSOC_TRIPLES: usize = 10_000;

/// Where a group came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Family { name: String, params: Vec<u64> },
    Generators { degree: usize, generators: Vec<Vec<usize>> },
    File(String),
    Derived(String),
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Family { name, params } => {
                write!(f, "{name}")?;
                for p in params {
                    write!(f, " {p}")?;
                }
                Ok(())
            }
            Provenance::Generators { degree, generators } => {
                write!(f, "perm {degree}")?;
                for g in generators {
                    let imgs: Vec<String> = g.iter().map(|x| x.to_string()).collect();
                    write!(f, " [{}]", imgs.join(","))?;
                }
                Ok(())
            }
            Provenance::File(p) => write!(f, "file {p}"),
            Provenance::Derived(d) => f.write_str(d),
        }
    }
}

/// A finite group given by its Cayley table.
///
/// Invariants (checked by every constructor): the table is a Latin square,
/// index 0 is the identity, every element has an inverse, and the product is
/// associative.
#[derive(Clone, Debug)]
pub struct GroupTable {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    elem_orders: Vec<u32>,
    labels: Option<Vec<String>>,
    provenance: Provenance,
}

impl PartialEq for GroupTable {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.mul == other.mul
    }
}

impl Eq for GroupTable {}

impl GroupTable {
    /// Build from row-major products: `rows[g][x] = g·x`.
    pub fn from_rows(rows: &[Vec<usize>], provenance: Provenance) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        let mut mul = Vec::with_capacity(n * n);
        for (g, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidTable(format!("row {g} has {} entries, expected {n}", row.len())));
            }
            for &x in row {
                if x >= n {
                    return Err(Error::InvalidTable(format!("entry {x} out of range in row {g}")));
                }
                mul.push(x as u32);
            }
        }
        Self::from_flat(n, mul, provenance)
    }

    pub(crate) fn from_flat(n: usize, mul: Vec<u32>, provenance: Provenance) -> Result<Self> {
        debug_assert_eq!(mul.len(), n * n);
        validate_latin(n, &mul)?;
        for x in 0..n {
            if mul[x] as usize != x || mul[x * n] as usize != x {
                return Err(Error::InvalidTable("index 0 is not the identity".into()));
            }
        }
        let mut inv = vec![u32::MAX; n];
        for (x, slot) in inv.iter_mut().enumerate() {
            let row = &mul[x * n..(x + 1) * n];
            // Latin rows contain 0 exactly once.
            let y = row.iter().position(|&v| v == 0).unwrap();
            if mul[y * n + x] != 0 {
                return Err(Error::InvalidTable(format!("element {x} has no two-sided inverse")));
            }
            *slot = y as u32;
        }
        validate_assoc(n, &mul)?;
        let mut table = GroupTable {
            order: n,
            mul,
            inv,
            elem_orders: Vec::new(),
            labels: None,
            provenance,
        };
        table.elem_orders = (0..n).map(|x| table.compute_order(x) as u32).collect();
        Ok(table)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.order);
        self.labels = Some(labels);
        self
    }

    pub(crate) fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = provenance;
        self
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `g^-1 · x · g`.
    #[inline]
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    #[inline]
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn pow(&self, x: usize, mut e: u64) -> usize {
        let mut acc = 0;
        let mut base = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    #[inline]
    pub fn element_order(&self, x: usize) -> usize {
        self.elem_orders[x] as usize
    }

    pub fn element_orders(&self) -> impl Iterator<Item = usize> + '_ {
        self.elem_orders.iter().map(|&o| o as usize)
    }

    pub fn row(&self, g: usize) -> impl Iterator<Item = usize> + '_ {
        self.mul[g * self.order..(g + 1) * self.order].iter().map(|&v| v as usize)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order;
        (0..n).all(|a| (a + 1..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Elements commuting with everything.
    pub fn center(&self) -> Vec<usize> {
        let n = self.order;
        (0..n).filter(|&z| (0..n).all(|g| self.mul(z, g) == self.mul(g, z))).collect()
    }

    fn compute_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// Re-run every table check.
    pub fn validate(&self) -> Result<()> {
        let n = self.order;
        validate_latin(n, &self.mul)?;
        for x in 0..n {
            if self.mul(0, x) != x || self.mul(x, 0) != x {
                return Err(Error::InvalidTable("index 0 is not the identity".into()));
            }
            if self.mul(x, self.inv(x)) != 0 || self.mul(self.inv(x), x) != 0 {
                return Err(Error::InvalidTable(format!("bad inverse for {x}")));
            }
        }
        validate_assoc(n, &self.mul)
    }
}

fn validate_latin(n: usize, mul: &[u32]) -> Result<()> {
    let mut seen = vec![0usize; n];
    let mut stamp = 0usize;
    for r in 0..n {
        stamp += 1;
        for c in 0..n {
            let v = mul[r * n + c] as usize;
            if v >= n || seen[v] == stamp {
                return Err(Error::InvalidTable(format!("row {r} is not a permutation")));
            }
            seen[v] = stamp;
        }
    }
    for c in 0..n {
        stamp += 1;
        for r in 0..n {
            let v = mul[r * n + c] as usize;
            if seen[v] == stamp {
                return Err(Error::InvalidTable(format!("column {c} is not a permutation")));
            }
            seen[v] = stamp;
        }
    }
    Ok(())
}

fn validate_assoc(n: usize, mul: &[u32]) -> Result<()> {
    let m = |a: usize, b: usize| mul[a * n + b] as usize;
    let fail = |a, b, c| Err(Error::InvalidTable(format!("not associative at ({a}, {b}, {c})")));
    if n <= EXHAUSTIVE_ASSOC_LIMIT {
        for a in 1..n {
            for b in 1..n {
                let ab = m(a, b);
                for c in 1..n {
                    if m(ab, c) != m(a, m(b, c)) {
                        return fail(a, b, c);
                    }
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        for _ in 0..RANDOM_ASSOC_TRIPLES {
            let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            if m(m(a, b), c) != m(a, m(b, c)) {
                return fail(a, b, c);
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> Vec<Vec<usize>> {
        (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect()
    }

    #[test]
    fn cyclic_table_is_accepted() {
        let g = GroupTable::from_rows(&z(6), Provenance::Derived("z6".into())).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.inv(2), 4);
        assert_eq!(g.element_order(2), 3);
        assert_eq!(g.pow(1, 7), 1);
        assert!(g.is_abelian());
        g.validate().unwrap();
    }

    #[test]
    fn rejects_non_latin() {
        let mut rows = z(4);
        rows[2][1] = 2;
        assert!(GroupTable::from_rows(&rows, Provenance::Derived("bad".into())).is_err());
    }

    #[test]
    fn rejects_misplaced_identity() {
        // Z3 with identity relabelled to 1.
        let rows = vec![vec![2, 0, 1], vec![0, 1, 2], vec![1, 2, 0]];
        assert!(matches!(
            GroupTable::from_rows(&rows, Provenance::Derived("bad".into())),
            Err(Error::InvalidTable(_))
        ));
    }

    #[test]
    fn rejects_non_associative_loop() {
        // A Latin square with identity 0 that is not a group (order-5 loop).
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = GroupTable::from_rows(&rows, Provenance::Derived("loop".into())).unwrap_err();
        assert!(err.to_string().contains("associative") || err.to_string().contains("inverse"));
    }
}
