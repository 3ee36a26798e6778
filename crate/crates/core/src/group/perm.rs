use std::collections::HashMap;

use super::{GroupTable, Provenance};
use crate::error::{Error, Result};

/// Default cap on the size of a permutation-group closure.
pub const CLOSURE_CAP: usize = 20_000;

/// A permutation of `0..degree` given by its image list.
///
/// Products act on the right: `(a * b)[x] = b[a[x]]`, i.e. apply `a` first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation((0..degree as u32).collect())
    }

    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in images {
            if x >= n || seen[x] {
                return Err(Error::Parameter(format!("{images:?} is not a permutation of 0..{n}")));
            }
            seen[x] = true;
        }
        Ok(Permutation(images.iter().map(|&x| x as u32).collect()))
    }

    /// Build from disjoint cycles on `0..degree`.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut img: Vec<usize> = (0..degree).collect();
        for cyc in cycles {
            for (i, &x) in cyc.iter().enumerate() {
                if x >= degree {
                    return Err(Error::Parameter(format!("point {x} outside degree {degree}")));
                }
                img[x] = cyc[(i + 1) % cyc.len()];
            }
        }
        Self::from_images(&img)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> Vec<usize> {
        self.0.iter().map(|&x| x as usize).collect()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// Cycle notation with 0-based points, `()` for the identity.
    pub fn cycle_string(&self) -> String {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut x = self.0[start] as usize;
            while x != start {
                seen[x] = true;
                cyc.push(x);
                x = self.0[x] as usize;
            }
            let parts: Vec<String> = cyc.iter().map(|c| c.to_string()).collect();
            out.push('(');
            out.push_str(&parts.join(" "));
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

pub fn from_permutation_generators(degree: usize, generators: &[Vec<usize>]) -> Result<GroupTable> {
    from_permutation_generators_with_cap(degree, generators, CLOSURE_CAP)
}

/// Close a generating set breadth-first; elements are indexed in discovery
/// order with the identity first.
pub fn from_permutation_generators_with_cap(
    degree: usize,
    generators: &[Vec<usize>],
    cap: usize,
) -> Result<GroupTable> {
    let gens = generators
        .iter()
        .map(|g| {
            if g.len() != degree {
                return Err(Error::Parameter(format!(
                    "generator has {} images, expected degree {degree}",
                    g.len()
                )));
            }
            Permutation::from_images(g)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut elems = vec![Permutation::identity(degree)];
    let mut index: HashMap<Permutation, u32> = HashMap::new();
    index.insert(elems[0].clone(), 0);
    let mut head = 0;
    while head < elems.len() {
        let cur = elems[head].clone();
        head += 1;
        for s in &gens {
            let p = cur.then(s);
            if !index.contains_key(&p) {
                if elems.len() >= cap {
                    return Err(Error::size("permutation closure", (cap + 1) as u64, cap as u64));
                }
                index.insert(p.clone(), elems.len() as u32);
                elems.push(p);
            }
        }
    }

    let n = elems.len();
    let mut mul = Vec::with_capacity(n * n);
    for a in &elems {
        for b in &elems {
            mul.push(index[&a.then(b)]);
        }
    }
    let labels = elems.iter().map(Permutation::cycle_string).collect();
    let prov = Provenance::Generators {
        degree,
        generators: generators.to_vec(),
    };
    Ok(GroupTable::from_flat(n, mul, prov)?.with_labels(labels))
}
