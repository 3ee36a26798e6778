use super::subgroup::Subgroup;
use super::{GroupTable, Provenance};
use crate::error::{Error, Result};

/// `A × B` with `(a, b)` at index `a·|B| + b`.
pub fn direct_product(a: &GroupTable, b: &GroupTable) -> GroupTable {
    let (na, nb) = (a.order(), b.order());
    let n = na * nb;
    let mut mul = Vec::with_capacity(n * n);
    for x in 0..n {
        let (xa, xb) = (x / nb, x % nb);
        for y in 0..n {
            let (ya, yb) = (y / nb, y % nb);
            mul.push((a.mul(xa, ya) * nb + b.mul(xb, yb)) as u32);
        }
    }
    let prov = Provenance::Derived(format!("dp ({}) ({})", a.provenance(), b.provenance()));
    GroupTable::from_flat(n, mul, prov).expect("direct product of groups is a group")
}

/// A homomorphism `K -> Aut(G)` acting on the right: `images[k][g]` is the
/// image of `g` under `V(k)`, and `V(k1 k2) = V(k2) ∘ V(k1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Action {
    images: Vec<Vec<usize>>,
}

impl Action {
    pub fn trivial(g: &GroupTable, k: &GroupTable) -> Self {
        Action {
            images: vec![(0..g.order()).collect(); k.order()],
        }
    }

    /// Explicit images for every element of `K`; validated against both groups.
    pub fn from_images(g: &GroupTable, k: &GroupTable, images: Vec<Vec<usize>>) -> Result<Self> {
        let act = Action { images };
        act.validate(g, k)?;
        Ok(act)
    }

    /// Extend automorphisms given on generators of `K` to all of `K` by
    /// walking words, then validate the result.
    pub fn from_generators(g: &GroupTable, k: &GroupTable, gens: &[(usize, Vec<usize>)]) -> Result<Self> {
        let (ng, nk) = (g.order(), k.order());
        let mut images: Vec<Option<Vec<usize>>> = vec![None; nk];
        images[0] = Some((0..ng).collect());
        let mut queue = vec![0usize];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for (s, aut) in gens {
                if aut.len() != ng {
                    return Err(Error::Action(format!("automorphism for {s} has wrong length")));
                }
                let y = k.mul(x, *s);
                let img: Vec<usize> = images[x].as_ref().unwrap().iter().map(|&v| aut[v]).collect();
                match &images[y] {
                    None => {
                        images[y] = Some(img);
                        queue.push(y);
                    }
                    Some(prev) if *prev != img => {
                        return Err(Error::Action("generator images are not a homomorphism".into()));
                    }
                    Some(_) => {}
                }
            }
        }
        let images = images
            .into_iter()
            .map(|i| i.ok_or_else(|| Error::Action("generators do not generate K".into())))
            .collect::<Result<Vec<_>>>()?;
        Self::from_images(g, k, images)
    }

    pub fn apply(&self, k: usize, g: usize) -> usize {
        self.images[k][g]
    }

    pub fn automorphism(&self, k: usize) -> &[usize] {
        &self.images[k]
    }

    pub fn validate(&self, g: &GroupTable, k: &GroupTable) -> Result<()> {
        let (ng, nk) = (g.order(), k.order());
        if self.images.len() != nk {
            return Err(Error::Action(format!("{} images for a group of order {nk}", self.images.len())));
        }
        for (x, aut) in self.images.iter().enumerate() {
            if aut.len() != ng {
                return Err(Error::Action(format!("image of {x} has wrong length")));
            }
            let mut seen = vec![false; ng];
            for &v in aut {
                if v >= ng || seen[v] {
                    return Err(Error::Action(format!("image of {x} is not a permutation")));
                }
                seen[v] = true;
            }
            for a in 0..ng {
                for b in 0..ng {
                    if aut[g.mul(a, b)] != g.mul(aut[a], aut[b]) {
                        return Err(Error::Action(format!("image of {x} is not an automorphism")));
                    }
                }
            }
        }
        if self.images[0].iter().enumerate().any(|(i, &v)| i != v) {
            return Err(Error::Action("identity of K does not act trivially".into()));
        }
        for k1 in 0..nk {
            for k2 in 0..nk {
                let prod = &self.images[k.mul(k1, k2)];
                for x in 0..ng {
                    if prod[x] != self.images[k2][self.images[k1][x]] {
                        return Err(Error::Action(format!("V({k1}·{k2}) != V({k2}) ∘ V({k1})")));
                    }
                }
            }
        }
        Ok(())
    }
}

/// `G ⋊ K` with product `(k1, g1)(k2, g2) = (k1 k2, V(k2)(g1) g2)`.
///
/// The pair `(g, k)` sits at index `g·|K| + k`, matching [`direct_product`]
/// for the trivial action; `G` embeds at multiples of `|K|` and `K` at
/// `0..|K|`.
pub fn semidirect_product(g: &GroupTable, k: &GroupTable, action: &Action) -> Result<GroupTable> {
    action.validate(g, k)?;
    let (ng, nk) = (g.order(), k.order());
    let n = ng * nk;
    let mut mul = Vec::with_capacity(n * n);
    for x in 0..n {
        let (g1, k1) = (x / nk, x % nk);
        for y in 0..n {
            let (g2, k2) = (y / nk, y % nk);
            let gg = g.mul(action.apply(k2, g1), g2);
            mul.push((gg * nk + k.mul(k1, k2)) as u32);
        }
    }
    let prov = Provenance::Derived(format!("sdp ({}) ({})", g.provenance(), k.provenance()));
    GroupTable::from_flat(n, mul, prov)
}

#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: GroupTable,
    /// Coset index of each element of the parent.
    pub projection: Vec<usize>,
    /// Minimal representative of each coset.
    pub reps: Vec<usize>,
}

/// `G/N`, cosets numbered by their minimal representative.
pub fn quotient_group(g: &GroupTable, n: &Subgroup) -> Result<Quotient> {
    if !n.is_normal(g) {
        return Err(Error::NotNormal);
    }
    let size = g.order();
    let mut projection = vec![usize::MAX; size];
    let mut reps = Vec::new();
    for x in 0..size {
        if projection[x] == usize::MAX {
            for &e in n.elements() {
                projection[g.mul(x, e)] = reps.len();
            }
            reps.push(x);
        }
    }
    let q = reps.len();
    let mut mul = Vec::with_capacity(q * q);
    for &a in &reps {
        for &b in &reps {
            mul.push(projection[g.mul(a, b)] as u32);
        }
    }
    let prov = Provenance::Derived(format!("({}) / <{} elements>", g.provenance(), n.order()));
    let group = GroupTable::from_flat(q, mul, prov)?;
    Ok(Quotient {
        group,
        projection,
        reps,
    })
}

/// `H` as a group in its own right; `embedding[i]` is the parent element at
/// index `i` (sorted, so the identity stays at 0).
pub fn subgroup_as_group(g: &GroupTable, h: &Subgroup) -> (GroupTable, Vec<usize>) {
    let elems = h.elements().to_vec();
    let mut local = vec![usize::MAX; g.order()];
    for (i, &e) in elems.iter().enumerate() {
        local[e] = i;
    }
    let m = elems.len();
    let mut mul = Vec::with_capacity(m * m);
    for &a in &elems {
        for &b in &elems {
            mul.push(local[g.mul(a, b)] as u32);
        }
    }
    let prov = Provenance::Derived(format!("subgroup of order {m} in ({})", g.provenance()));
    let table = GroupTable::from_flat(m, mul, prov).expect("subgroup of a group is a group");
    (table, elems)
}

/// `H/N` for `N ⊴ H ≤ G`.
pub(crate) fn section_group(g: &GroupTable, h: &Subgroup, n: &Subgroup) -> Result<GroupTable> {
    if !n.is_subgroup_of(h) {
        return Err(Error::Precondition("section needs N ≤ H".into()));
    }
    let size = g.order();
    let mut coset = vec![usize::MAX; size];
    let mut reps = Vec::new();
    for &x in h.elements() {
        if coset[x] == usize::MAX {
            for &e in n.elements() {
                coset[g.mul(x, e)] = reps.len();
            }
            reps.push(x);
        }
    }
    // N is normal in H iff left cosets are also right cosets.
    for &x in h.elements() {
        for &e in n.elements() {
            if coset[g.mul(e, x)] != coset[x] {
                return Err(Error::NotNormal);
            }
        }
    }
    let q = reps.len();
    let mut mul = Vec::with_capacity(q * q);
    for &a in &reps {
        for &b in &reps {
            mul.push(coset[g.mul(a, b)] as u32);
        }
    }
    GroupTable::from_flat(q, mul, Provenance::Derived("section".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{is_isomorphic, make_named_family, subgroup_generated, Family};

    fn fam(f: Family) -> GroupTable {
        make_named_family(f).unwrap()
    }

    #[test]
    fn direct_products() {
        let c2 = fam(Family::Cyclic(2));
        let v4 = direct_product(&c2, &c2);
        assert_eq!(v4.order(), 4);
        assert!(v4.element_orders().skip(1).all(|o| o == 2));
        let s3c5 = direct_product(&fam(Family::Dihedral(3)), &fam(Family::Cyclic(5)));
        assert_eq!(s3c5.order(), 30);
        let trivial = fam(Family::Cyclic(1));
        let s3 = fam(Family::Dihedral(3));
        assert!(is_isomorphic(&direct_product(&s3, &trivial), &s3).unwrap());
    }

    #[test]
    fn trivial_action_matches_direct_product() {
        let a = fam(Family::Dihedral(3));
        let b = fam(Family::Cyclic(4));
        let sd = semidirect_product(&a, &b, &Action::trivial(&a, &b)).unwrap();
        assert_eq!(sd, direct_product(&a, &b));
    }

    #[test]
    fn inversion_action_gives_c3_c4() {
        let c3 = fam(Family::Cyclic(3));
        let c4 = fam(Family::Cyclic(4));
        let act = Action::from_generators(&c3, &c4, &[(1, vec![0, 2, 1])]).unwrap();
        let g = semidirect_product(&c3, &c4, &act).unwrap();
        assert_eq!(g.order(), 12);
        assert!(is_isomorphic(&g, &fam(Family::CpRtimesC2n { p: 3, k: 2 })).unwrap());
    }

    #[test]
    fn invalid_actions_are_rejected() {
        let c3 = fam(Family::Cyclic(3));
        let c2 = fam(Family::Cyclic(2));
        // Not an automorphism.
        assert!(Action::from_images(&c3, &c2, vec![vec![0, 1, 2], vec![1, 0, 2]]).is_err());
        // The identity automorphism always extends.
        assert!(Action::from_generators(&c2, &c3, &[(1, vec![0, 1])]).is_ok());
        let c4 = fam(Family::Cyclic(4));
        // x -> x^3 on C4 acting via C3: order mismatch.
        assert!(Action::from_generators(&c4, &c3, &[(1, vec![0, 3, 2, 1])]).is_err());
    }

    #[test]
    fn quotients() {
        let s3 = fam(Family::Dihedral(3));
        let c3 = subgroup_generated(&s3, &[1]);
        let q = quotient_group(&s3, &c3).unwrap();
        assert_eq!(q.group.order(), 2);
        // Projection is a homomorphism with kernel C3.
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(q.projection[s3.mul(a, b)], q.group.mul(q.projection[a], q.projection[b]));
            }
            assert_eq!(q.projection[a] == 0, c3.contains(a));
        }
        let whole = subgroup_generated(&s3, &[1, 3]);
        assert_eq!(quotient_group(&s3, &whole).unwrap().group.order(), 1);
        let triv = subgroup_generated(&s3, &[]);
        assert!(is_isomorphic(&quotient_group(&s3, &triv).unwrap().group, &s3).unwrap());
        let refl = subgroup_generated(&s3, &[3]);
        assert!(matches!(quotient_group(&s3, &refl), Err(Error::NotNormal)));
    }

    #[test]
    fn subgroup_tables() {
        let s3 = fam(Family::Dihedral(3));
        let c3 = subgroup_generated(&s3, &[1]);
        let (t, emb) = subgroup_as_group(&s3, &c3);
        assert_eq!(t.order(), 3);
        assert_eq!(emb, vec![0, 1, 2]);
    }
}
