//! The coset intersection graph of a pair of subgroups.
//!
//! Vertices are the left cosets `lH` and the right cosets `Kr`; an edge
//! joins two cosets that meet, weighted by the size of the intersection.
//! Every element lies in exactly one left and one right coset, so one pass
//! over `G` yields all weights at once.

use std::fmt::Write as _;

use serde::Serialize;

use crate::arith::smallest_prime_divisor;
use crate::error::{Error, Result};
use crate::group::{conjugate_subgroup, GroupTable, Subgroup};
use crate::rational::{self, BigRational};

/// Component sizes of a coset graph, largest first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TVector {
    entries: Vec<usize>,
}

impl TVector {
    pub fn new(mut entries: Vec<usize>) -> Result<Self> {
        if entries.is_empty() || entries.contains(&0) {
            return Err(Error::Precondition("t-vector entries must be positive and non-empty".into()));
        }
        entries.sort_unstable_by(|a, b| b.cmp(a));
        Ok(TVector { entries })
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    /// The common index `n`.
    pub fn n(&self) -> usize {
        self.entries.iter().sum()
    }

    pub fn s(&self) -> usize {
        self.entries.len()
    }

    /// Number of entries equal to 1.
    pub fn ones(&self) -> usize {
        self.entries.iter().filter(|&&t| t == 1).count()
    }
}

impl std::fmt::Display for TVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|t| t.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    /// Indices into [`CosetGraph::left_reps`].
    pub left: Vec<usize>,
    /// Indices into [`CosetGraph::right_reps`].
    pub right: Vec<usize>,
    pub t: usize,
    pub weight: usize,
    /// Smallest element of the double coset `K g H` the component spans.
    pub double_coset_rep: usize,
}

#[derive(Clone, Debug)]
pub struct CosetGraph {
    n: usize,
    h_order: usize,
    left_reps: Vec<usize>,
    right_reps: Vec<usize>,
    left_of: Vec<u32>,
    right_of: Vec<u32>,
    component_of_left: Vec<u32>,
    components: Vec<Component>,
    m: usize,
    /// `|{g : H^g = K}| / |H|`.
    m_form: usize,
}

/// Left coset ids (`gH`) per element, plus minimal representatives.
pub(crate) fn left_cosets(g: &GroupTable, h: &Subgroup) -> (Vec<u32>, Vec<usize>) {
    let mut id = vec![u32::MAX; g.order()];
    let mut reps = Vec::with_capacity(h.index());
    for x in 0..g.order() {
        if id[x] == u32::MAX {
            for &e in h.elements() {
                id[g.mul(x, e)] = reps.len() as u32;
            }
            reps.push(x);
        }
    }
    (id, reps)
}

/// Right coset ids (`Kg`) per element, plus minimal representatives.
pub(crate) fn right_cosets(g: &GroupTable, k: &Subgroup) -> (Vec<u32>, Vec<usize>) {
    let mut id = vec![u32::MAX; g.order()];
    let mut reps = Vec::with_capacity(k.index());
    for x in 0..g.order() {
        if id[x] == u32::MAX {
            for &e in k.elements() {
                id[g.mul(e, x)] = reps.len() as u32;
            }
            reps.push(x);
        }
    }
    (id, reps)
}

fn check_index(h: &Subgroup, k: &Subgroup) -> Result<()> {
    if h.index() != k.index() {
        return Err(Error::Precondition(format!(
            "subgroups have different indices ({} and {})",
            h.index(),
            k.index()
        )));
    }
    Ok(())
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

pub fn build_coset_graph(g: &GroupTable, h: &Subgroup, k: &Subgroup) -> Result<CosetGraph> {
    check_index(h, k)?;
    let n = h.index();
    let (left_of, left_reps) = left_cosets(g, h);
    let (right_of, right_reps) = right_cosets(g, k);

    let mut weights = vec![0usize; n * n];
    for x in 0..g.order() {
        weights[left_of[x] as usize * n + right_of[x] as usize] += 1;
    }

    // Union-find over 2n vertices: left cosets first, then right cosets.
    let mut parent: Vec<usize> = (0..2 * n).collect();
    for i in 0..n {
        for j in 0..n {
            if weights[i * n + j] > 0 {
                let (a, b) = (find(&mut parent, i), find(&mut parent, n + j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }

    // Left cosets are numbered in order of their minimal element, so a
    // component's first left coset carries its smallest element.
    let mut slot = vec![usize::MAX; 2 * n];
    let mut components: Vec<Component> = Vec::new();
    let mut component_of_left = vec![0u32; n];
    for v in 0..2 * n {
        let root = find(&mut parent, v);
        if slot[root] == usize::MAX {
            slot[root] = components.len();
            components.push(Component {
                left: Vec::new(),
                right: Vec::new(),
                t: 0,
                weight: 0,
                double_coset_rep: usize::MAX,
            });
        }
        let c = &mut components[slot[root]];
        if v < n {
            c.left.push(v);
            component_of_left[v] = slot[root] as u32;
            c.double_coset_rep = c.double_coset_rep.min(left_reps[v]);
        } else {
            c.right.push(v - n);
        }
    }
    for c in &mut components {
        c.t = c.left.len();
        c.weight = weights[c.left[0] * n + c.right[0]];
    }

    let m = components.iter().filter(|c| c.t == 1).count();
    let m_form = (0..g.order())
        .filter(|&x| conjugate_subgroup(g, h, x) == *k)
        .count()
        / h.order();

    let graph = CosetGraph {
        n,
        h_order: h.order(),
        left_reps,
        right_reps,
        left_of,
        right_of,
        component_of_left,
        components,
        m,
        m_form,
    };
    graph.check(g, h, k, &weights)?;
    Ok(graph)
}

impl CosetGraph {
    fn check(&self, g: &GroupTable, h: &Subgroup, k: &Subgroup, weights: &[usize]) -> Result<()> {
        let n = self.n;
        let fail = |msg: String| Err(Error::Invariant(msg));
        if self.components.iter().map(|c| c.t).sum::<usize>() != n {
            return fail("component sizes do not sum to the index".into());
        }
        for (sigma, c) in self.components.iter().enumerate() {
            if c.left.len() != c.right.len() {
                return fail(format!("component {sigma} is unbalanced"));
            }
            for &i in &c.left {
                for &j in &c.right {
                    if weights[i * n + j] != c.weight {
                        return fail(format!("component {sigma} is not complete with constant weight"));
                    }
                }
            }
            if c.weight * c.t != self.h_order || self.h_order % c.t != 0 {
                return fail(format!("component {sigma}: w t != |H|"));
            }
            let hk = h.intersection(&conjugate_subgroup(g, k, c.double_coset_rep), g);
            if h.order() / hk.order() != c.t {
                return fail(format!("component {sigma}: t != (H : H ∩ K^g)"));
            }
        }
        // Cross edges carry no weight.
        for i in 0..n {
            for j in 0..n {
                let same = self.component_of_left[i] == self.component_of_right(j);
                if !same && weights[i * n + j] != 0 {
                    return fail("edge between components".into());
                }
            }
        }
        let blocks = double_cosets(g, h, k);
        if blocks.len() != self.components.len() {
            return fail(format!(
                "{} components but {} double cosets",
                self.components.len(),
                blocks.len()
            ));
        }
        for (sigma, block) in blocks.iter().enumerate() {
            if block.iter().any(|&x| self.component_of_element(x) != self.component_of_element(block[0])) {
                return fail(format!("double coset {sigma} spans several components"));
            }
        }
        if self.m != self.m_form {
            return fail(format!("m = {} but the normaliser formula gives {}", self.m, self.m_form));
        }
        Ok(())
    }

    fn component_of_right(&self, j: usize) -> u32 {
        self.component_of_left[self.left_of[self.right_reps[j]] as usize]
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of components, equal to the number of `(K, H)`-double cosets.
    pub fn s(&self) -> usize {
        self.components.len()
    }

    /// Number of single-edge components.
    pub fn m(&self) -> usize {
        self.m
    }

    /// `|{g : H^g = K}| / |H|`, which is `(N_G(H) : H)` for conjugate `H, K`
    /// and 0 otherwise. Checked against [`CosetGraph::m`] on construction.
    pub fn m_from_normaliser(&self) -> usize {
        self.m_form
    }

    pub fn h_order(&self) -> usize {
        self.h_order
    }

    pub fn left_reps(&self) -> &[usize] {
        &self.left_reps
    }

    pub fn right_reps(&self) -> &[usize] {
        &self.right_reps
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn t_vector(&self) -> TVector {
        TVector::new(self.components.iter().map(|c| c.t).collect()).expect("graph has components")
    }

    /// Left coset index of each element.
    pub fn left_coset_of(&self, x: usize) -> usize {
        self.left_of[x] as usize
    }

    /// Right coset index of each element.
    pub fn right_coset_of(&self, x: usize) -> usize {
        self.right_of[x] as usize
    }

    pub fn component_of_element(&self, x: usize) -> usize {
        self.component_of_left[self.left_of[x] as usize] as usize
    }

    /// Elements covered by component `sigma`, sorted. This is both the union
    /// of its left cosets and the union of its right cosets.
    pub fn component_elements(&self, sigma: usize) -> Vec<usize> {
        (0..self.left_of.len()).filter(|&x| self.component_of_element(x) == sigma).collect()
    }

    /// The graph in DOT format with vertices `L<i>`, `R<j>` and `weight`
    /// edge attributes.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph coset_intersection {\n");
        for (i, r) in self.left_reps.iter().enumerate() {
            writeln!(out, "  L{i} [label=\"{r}H\"];").unwrap();
        }
        for (j, r) in self.right_reps.iter().enumerate() {
            writeln!(out, "  R{j} [label=\"K{r}\"];").unwrap();
        }
        for c in &self.components {
            for &i in &c.left {
                for &j in &c.right {
                    writeln!(out, "  L{i} -- R{j} [weight={}];", c.weight).unwrap();
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// The `(K, H)`-double cosets `K g H`, each sorted, ordered by minimal
/// element.
pub fn double_cosets(g: &GroupTable, h: &Subgroup, k: &Subgroup) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.order()];
    let mut blocks = Vec::new();
    for x in 0..g.order() {
        if seen[x] {
            continue;
        }
        let mut block = Vec::new();
        for &a in k.elements() {
            let ax = g.mul(a, x);
            for &b in h.elements() {
                let y = g.mul(ax, b);
                if !seen[y] {
                    seen[y] = true;
                    block.push(y);
                }
            }
        }
        block.sort_unstable();
        blocks.push(block);
    }
    blocks
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SBounds {
    #[serde(with = "crate::rational::as_json")]
    pub lower: BigRational,
    #[serde(with = "crate::rational::as_json")]
    pub upper: BigRational,
    pub s: usize,
    pub m: usize,
    pub holds: bool,
}

/// `(n - m)/|H| + m <= s <= (n - m)/p + m`, with `p` the smallest prime
/// divisor of `|H|`. For `|H| = 1` both sides are `n`.
pub fn s_bounds_check(g: &GroupTable, h: &Subgroup, k: &Subgroup) -> Result<SBounds> {
    let graph = build_coset_graph(g, h, k)?;
    Ok(s_bounds_of(&graph))
}

pub(crate) fn s_bounds_of(graph: &CosetGraph) -> SBounds {
    let (n, m, s) = (graph.n, graph.m, graph.s());
    let rest = rational::int((n - m) as u64);
    let mr = rational::int(m as u64);
    let (lower, upper) = match smallest_prime_divisor(graph.h_order as u64) {
        Some(p) => (
            &rest / rational::int(graph.h_order as u64) + &mr,
            &rest / rational::int(p) + &mr,
        ),
        None => (rational::int(n as u64), rational::int(n as u64)),
    };
    let sr = rational::int(s as u64);
    SBounds {
        holds: lower <= sr && sr <= upper,
        lower,
        upper,
        s,
        m,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FrobeniusCheck {
    pub s: usize,
    pub n: usize,
    /// `s = 2` and `|H| = n - 1`.
    pub s2_and_size: bool,
    /// `H ∩ H^g = 1` for every `g` outside `H`.
    pub frobenius: bool,
    pub consistent: bool,
}

/// For non-normal `H`: `s = 2 ∧ |H| = n-1` forces `H` to be a Frobenius
/// complement, and for a Frobenius complement `s = 2 ⟺ |H| = n-1`.
pub fn frobenius_s2_check(g: &GroupTable, h: &Subgroup) -> Result<FrobeniusCheck> {
    if h.is_normal(g) {
        return Err(Error::Precondition("subgroup must be non-normal".into()));
    }
    let graph = build_coset_graph(g, h, h)?;
    let (s, n) = (graph.s(), graph.n());
    let size = h.order() + 1 == n;
    let s2_and_size = s == 2 && size;
    let frobenius = (0..g.order())
        .filter(|&x| !h.contains(x))
        .all(|x| h.intersection(&conjugate_subgroup(g, h, x), g).is_trivial());
    let consistent = (!s2_and_size || frobenius) && (!frobenius || ((s == 2) == size));
    Ok(FrobeniusCheck {
        s,
        n,
        s2_and_size,
        frobenius,
        consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{alternating_group, make_named_family, subgroup_generated, Family};

    fn s3() -> GroupTable {
        make_named_family(Family::Dihedral(3)).unwrap()
    }

    #[test]
    fn s3_reflection() {
        let g = s3();
        // Index 3 is the reflection s.
        let h = subgroup_generated(&g, &[3]);
        let graph = build_coset_graph(&g, &h, &h).unwrap();
        assert_eq!(graph.s(), 2);
        assert_eq!(graph.t_vector().entries(), &[2, 1]);
        let mut w: Vec<(usize, usize)> = graph.components().iter().map(|c| (c.t, c.weight)).collect();
        w.sort();
        assert_eq!(w, vec![(1, 2), (2, 1)]);
        assert_eq!(graph.m(), 1);
        assert_eq!(graph.m_from_normaliser(), 1);
    }

    #[test]
    fn normal_subgroup_graph() {
        let g = s3();
        let h = subgroup_generated(&g, &[1]);
        let graph = build_coset_graph(&g, &h, &h).unwrap();
        assert_eq!(graph.s(), 2);
        assert!(graph.components().iter().all(|c| c.t == 1 && c.weight == 3));
        assert_eq!(graph.m(), graph.n());
    }

    #[test]
    fn frobenius_complement() {
        let g = make_named_family(Family::FieldFrobenius(5)).unwrap();
        // The multiplicative complement sits at multiples of q.
        let h = subgroup_generated(&g, &[5, 10, 15]);
        assert_eq!(h.order(), 4);
        let graph = build_coset_graph(&g, &h, &h).unwrap();
        assert_eq!(graph.t_vector().entries(), &[4, 1]);
        let b = s_bounds_of(&graph);
        assert_eq!((b.lower.clone(), b.upper.clone(), b.s), (rational::int(2), rational::int(3), 2));
        assert!(b.holds);
    }

    #[test]
    fn double_coset_examples() {
        let g = s3();
        let h = subgroup_generated(&g, &[3]);
        let mut sizes: Vec<usize> = double_cosets(&g, &h, &h).iter().map(|b| b.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![2, 4]);
        let whole = Subgroup::whole(&g);
        assert_eq!(double_cosets(&g, &whole, &whole).len(), 1);
        let one = Subgroup::trivial(&g);
        assert_eq!(double_cosets(&g, &one, &one).len(), 6);
    }

    #[test]
    fn s_bounds() {
        let g = s3();
        let h = subgroup_generated(&g, &[3]);
        let b = s_bounds_check(&g, &h, &h).unwrap();
        assert_eq!((b.lower, b.upper, b.s), (rational::int(2), rational::int(2), 2));
        let one = Subgroup::trivial(&g);
        let b = s_bounds_check(&g, &one, &one).unwrap();
        assert!(b.holds && b.s == 6);
    }

    #[test]
    fn index_mismatch() {
        let g = s3();
        let h = subgroup_generated(&g, &[3]);
        let c3 = subgroup_generated(&g, &[1]);
        assert!(matches!(build_coset_graph(&g, &h, &c3), Err(Error::Precondition(_))));
    }

    #[test]
    fn frobenius_s2() {
        for q in [4, 5, 7] {
            let g = make_named_family(Family::FieldFrobenius(q)).unwrap();
            let units: Vec<usize> = (1..q - 1).map(|i| i * q).collect();
            let h = subgroup_generated(&g, &units);
            let r = frobenius_s2_check(&g, &h).unwrap();
            assert!(r.s2_and_size && r.frobenius && r.consistent, "q = {q}");
        }
        let g = s3();
        let r = frobenius_s2_check(&g, &subgroup_generated(&g, &[3])).unwrap();
        assert!(r.s2_and_size && r.frobenius && r.consistent);

        let a4 = alternating_group(4).unwrap();
        let c3 = crate::group::all_subgroups(&a4).unwrap().into_iter().find(|s| s.order() == 3).unwrap();
        let r = frobenius_s2_check(&a4, &c3).unwrap();
        assert_eq!((r.s, r.n), (2, 4));
        assert!(r.s2_and_size && r.frobenius && r.consistent);

        assert!(frobenius_s2_check(&g, &subgroup_generated(&g, &[1])).is_err());
    }

    #[test]
    fn dot_output() {
        let g = s3();
        let h = subgroup_generated(&g, &[3]);
        let dot = build_coset_graph(&g, &h, &h).unwrap().to_dot();
        assert!(dot.starts_with("graph coset_intersection {"));
        assert_eq!(dot.matches(" -- ").count(), 5);
        assert!(dot.contains("[weight=2]"));
    }
}
