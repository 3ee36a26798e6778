//! `tp` does not increase when passing to a subgroup, a quotient or a
//! section, and `P` is compatible with both operations.

use std::collections::{BTreeMap, HashMap};

use super::{tp_value, Analysis, TheoremVerdict};
use crate::arith::{factorial_ratio, prime_power};
use crate::coset_graph::build_coset_graph;
use crate::error::Result;
use crate::group::{quotient_group, subgroup_as_group, GroupTable, Subgroup};
use crate::rational::{self, BigRational};
use crate::transversal::p_from_tvector;

/// Sections `H/N` checked per group, in lattice order.
pub const SECTION_SAMPLE: usize = 48;

/// Running tally for one law across many instances.
#[derive(Default)]
struct Tally {
    instances: usize,
    failures: Vec<String>,
}

impl Tally {
    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok && self.failures.len() < 5 {
            self.failures.push(what());
        }
    }

    fn verdict(self, a: &Analysis<'_>, theorem: &str) -> TheoremVerdict {
        a.verdict(theorem, self.instances > 0, self.failures.is_empty())
            .with("instances", self.instances)
            .with("failures", self.failures.join("; "))
    }
}

/// `true` when the multiset `small` is contained in `big`.
fn sub_multiset(small: &[usize], big: &[usize]) -> bool {
    let mut counts: HashMap<usize, isize> = HashMap::new();
    for &x in big {
        *counts.entry(x).or_default() += 1;
    }
    small.iter().all(|&x| {
        let c = counts.entry(x).or_default();
        *c -= 1;
        *c >= 0
    })
}

impl Analysis<'_> {
    pub fn monotonicity(&self) -> Result<Vec<TheoremVerdict>> {
        let g = self.group();
        let lat = &self.lattice;
        let tp = &self.tp.tp;
        let reps = lat.class_representatives();
        let show = |x: &BigRational| rational::display(x);

        // tp(G) <= tp(H) for proper H; conjugate subgroups are isomorphic, so
        // one representative per class suffices.
        let mut sub = Tally::default();
        let mut sub_tables: BTreeMap<usize, (GroupTable, Vec<usize>)> = BTreeMap::new();
        for &i in &reps {
            let h = lat.get(i);
            if h.is_whole() {
                continue;
            }
            let (ht, emb) = subgroup_as_group(g, h);
            let v = tp_value(&ht, &self.opts)?;
            sub.record(*tp <= v, || format!("|H| = {}: tp(H) = {}", h.order(), show(&v)));
            sub_tables.insert(i, (ht, emb));
        }

        // tp(G) <= tp(G/N), and P_G(H) = P_{G/N}(H/N) for N <= H.
        let mut quo = Tally::default();
        let mut normal_law = Tally::default();
        for ni in lat.normal_subgroups() {
            let n = lat.get(ni);
            if n.is_trivial() || n.is_whole() {
                continue;
            }
            let q = quotient_group(g, n)?;
            let v = tp_value(&q.group, &self.opts)?;
            quo.record(*tp <= v, || format!("|N| = {}: tp(G/N) = {}", n.order(), show(&v)));
            for &i in &reps {
                let h = lat.get(i);
                if !n.is_subgroup_of(h) {
                    continue;
                }
                let image: Vec<usize> = h.elements().iter().map(|&x| q.projection[x]).collect();
                let hq = Subgroup::from_elements(&q.group, &image)?;
                let graph = build_coset_graph(&q.group, &hq, &hq)?;
                let t = graph.t_vector();
                let ok = t.entries() == self.t_vector_of(i) && p_from_tvector(&t) == *self.p_of(i);
                normal_law.record(ok, || format!("|N| = {}, |H| = {}: t = {t}", n.order(), h.order()));
            }
        }

        // tp(G) <= tp(H/N) on a deterministic sample of proper sections.
        let mut sec = Tally::default();
        'outer: for &i in &reps {
            let h = lat.get(i);
            if h.is_whole() {
                continue;
            }
            for ni in lat.normal_in(i) {
                let n = lat.get(ni);
                if n.is_trivial() || n == h {
                    continue;
                }
                if sec.instances >= SECTION_SAMPLE {
                    break 'outer;
                }
                let q = quotient_group(&sub_tables[&i].0, &local_subgroup(&sub_tables[&i], n)?)?;
                let v = tp_value(&q.group, &self.opts)?;
                sec.record(*tp <= v, || format!("|H| = {}, |N| = {}: {}", h.order(), n.order(), show(&v)));
            }
        }

        // A non-Dedekind p-group has tp <= p!/p^p.
        let pg = prime_power(g.order() as u64).filter(|_| !self.tp.dedekind);
        let bound = pg.map(|(p, _)| factorial_ratio(p)).transpose()?;
        let p_group = self
            .verdict("p-group-bound", pg.is_some(), bound.as_ref().is_none_or(|b| *tp <= *b))
            .with("bound", bound.as_ref().map_or("none".into(), show));

        // For K <= H: the components of K in H are components of K in G, so
        // P_G(K) <= P_H(K).
        let mut pgsub = Tally::default();
        for (&i, local) in &sub_tables {
            let h = lat.get(i);
            for (j, k) in lat.subgroups().iter().enumerate() {
                if !k.is_subgroup_of(h) {
                    continue;
                }
                let kl = local_subgroup(local, k)?;
                let graph = build_coset_graph(&local.0, &kl, &kl)?;
                let t = graph.t_vector();
                let ok = sub_multiset(t.entries(), self.t_vector_of(j)) && *self.p_of(j) <= p_from_tvector(&t);
                pgsub.record(ok, || format!("|H| = {}, |K| = {}: t_H = {t}", h.order(), k.order()));
            }
        }

        Ok(vec![
            sub.verdict(self, "subgroup-monotone"),
            quo.verdict(self, "quotient-monotone"),
            sec.verdict(self, "section-monotone"),
            p_group,
            pgsub.verdict(self, "pg-sub"),
            normal_law.verdict(self, "normal-quotient"),
        ])
    }
}

/// `K ≤ H` re-indexed inside the table of `H`.
fn local_subgroup(local: &(GroupTable, Vec<usize>), k: &Subgroup) -> Result<Subgroup> {
    let (table, emb) = local;
    let elems: Vec<usize> = k
        .elements()
        .iter()
        .map(|x| emb.binary_search(x).expect("K is inside H"))
        .collect();
    Subgroup::from_elements(table, &elems)
}
