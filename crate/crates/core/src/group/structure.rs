use serde::Serialize;

use super::iso::{fingerprint, is_isomorphic};
use super::product::section_group;
use super::subgroup::{subgroup_generated, Lattice, Subgroup};
use super::GroupTable;
use crate::arith::{factorize, is_prime};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub is_abelian: bool,
    pub is_dedekind: bool,
    pub is_nilpotent: bool,
    pub is_soluble: bool,
    pub is_supersoluble: bool,
    /// `None` when the derived series stalls above the trivial group.
    pub derived_length: Option<usize>,
    pub center_order: usize,
    pub derived_order: usize,
}

impl StructureReport {
    /// The implication chain abelian ⇒ Dedekind, nilpotent ⇒ supersoluble ⇒
    /// soluble, and derived length ≤ 1 ⇔ abelian.
    pub fn check_implications(&self) -> Result<()> {
        let ok = (!self.is_abelian || self.is_dedekind)
            && (!self.is_abelian || self.is_nilpotent)
            && (!self.is_nilpotent || self.is_supersoluble)
            && (!self.is_supersoluble || self.is_soluble)
            && (self.derived_length.is_some_and(|d| d <= 1) == self.is_abelian)
            && (self.derived_length.is_some() == self.is_soluble);
        if ok {
            Ok(())
        } else {
            Err(Error::Invariant(format!("inconsistent structure report {self:?}")))
        }
    }
}

/// `[H, H]`.
pub(crate) fn derived_subgroup(g: &GroupTable, h: &Subgroup) -> Subgroup {
    let e = h.elements();
    let comms: Vec<usize> = e.iter().flat_map(|&a| e.iter().map(move |&b| (a, b))).map(|(a, b)| g.commutator(a, b)).collect();
    subgroup_generated(g, &comms)
}

/// `G = D0 ≥ D1 ≥ ...` until it stabilises.
pub(crate) fn derived_series(g: &GroupTable) -> Vec<Subgroup> {
    let mut series = vec![Subgroup::whole(g)];
    loop {
        let next = derived_subgroup(g, series.last().unwrap());
        if next == *series.last().unwrap() {
            return series;
        }
        series.push(next);
    }
}

pub fn classify_structure(g: &GroupTable) -> Result<StructureReport> {
    let lattice = Lattice::new(g)?;
    classify_structure_in(&lattice)
}

pub(crate) fn classify_structure_in(lattice: &Lattice<'_>) -> Result<StructureReport> {
    let g = lattice.group();
    let n = g.order();
    let is_abelian = g.is_abelian();
    let is_dedekind = lattice.is_dedekind();

    let series = derived_series(g);
    let bottom = series.last().unwrap();
    let is_soluble = bottom.is_trivial();
    let derived_length = is_soluble.then(|| series.len() - 1);
    let derived_order = series.get(1).unwrap_or(bottom).order();

    let is_nilpotent = factorize(n as u64).iter().all(|&(p, e)| {
        let sylow = (p as usize).pow(e);
        lattice.subgroups().iter().filter(|s| s.order() == sylow).count() == 1
    });

    let chief = supersoluble_by_chief_series(lattice);
    let huppert = lattice
        .maximal_subgroups()
        .iter()
        .all(|&i| is_prime(lattice.get(i).index() as u64));
    if chief != huppert {
        return Err(Error::Invariant(format!(
            "supersolubility tests disagree (chief series: {chief}, maximal indices: {huppert})"
        )));
    }

    let report = StructureReport {
        is_abelian,
        is_dedekind,
        is_nilpotent,
        is_soluble,
        is_supersoluble: chief,
        derived_length,
        center_order: g.center().len(),
        derived_order,
    };
    report.check_implications()?;
    Ok(report)
}

/// Walk one chief series (each step a minimal normal subgroup of `G` above
/// the previous term) and require every factor to have prime order.
fn supersoluble_by_chief_series(lattice: &Lattice<'_>) -> bool {
    let normals: Vec<&Subgroup> = lattice.normal_subgroups().map(|i| lattice.get(i)).collect();
    let n = lattice.group().order();
    let mut cur = normals[0];
    while cur.order() < n {
        let next = normals
            .iter()
            .filter(|m| m.order() > cur.order() && cur.is_subgroup_of(m))
            .min_by_key(|m| m.order())
            .expect("G itself is normal");
        if !is_prime((next.order() / cur.order()) as u64) {
            return false;
        }
        cur = next;
    }
    true
}

/// A witness `H/N ≅ X`.
#[derive(Clone, Debug)]
pub struct Section {
    pub h: Subgroup,
    pub n: Subgroup,
}

pub fn has_section(g: &GroupTable, x: &GroupTable) -> Result<Option<Section>> {
    if !(1..=g.order()).any(|d| g.order() % d == 0 && d % x.order() == 0) {
        return Ok(None);
    }
    let lattice = Lattice::new(g)?;
    has_section_in(&lattice, x)
}

pub fn has_section_in(lattice: &Lattice<'_>, x: &GroupTable) -> Result<Option<Section>> {
    let g = lattice.group();
    let xo = x.order();
    if g.order() % xo != 0 {
        return Ok(None);
    }
    let target = fingerprint(x);
    for (hi, h) in lattice.subgroups().iter().enumerate() {
        if h.order() % xo != 0 {
            continue;
        }
        for ni in lattice.normal_in(hi) {
            let n = lattice.get(ni);
            if h.order() / n.order() != xo {
                continue;
            }
            let q = section_group(g, h, n)?;
            if q.order() > 1 && fingerprint(&q) != target {
                continue;
            }
            if is_isomorphic(&q, x)? {
                return Ok(Some(Section {
                    h: h.clone(),
                    n: n.clone(),
                }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{alternating_group, make_named_family, semidirect_product, symmetric_group, Action, Family};

    #[test]
    fn a4_structure() {
        let g = alternating_group(4).unwrap();
        let r = classify_structure(&g).unwrap();
        assert!(r.is_soluble && !r.is_supersoluble && !r.is_nilpotent);
        assert_eq!(r.derived_length, Some(2));
        assert_eq!(r.derived_order, 4);
        assert_eq!(r.center_order, 1);
    }

    #[test]
    fn q8_structure() {
        let g = make_named_family(Family::GeneralizedQuaternion(8)).unwrap();
        let r = classify_structure(&g).unwrap();
        assert!(r.is_dedekind && r.is_nilpotent && !r.is_abelian);
        assert_eq!(r.derived_length, Some(2));
    }

    #[test]
    fn a5_is_insoluble() {
        let g = alternating_group(5).unwrap();
        let r = classify_structure(&g).unwrap();
        assert!(!r.is_soluble);
        assert_eq!(r.derived_length, None);
        assert_eq!(r.derived_order, 60);
    }

    #[test]
    fn s3_is_supersoluble() {
        let g = make_named_family(Family::Dihedral(3)).unwrap();
        let r = classify_structure(&g).unwrap();
        assert!(r.is_supersoluble && !r.is_nilpotent);
    }

    #[test]
    fn sections() {
        let s4 = symmetric_group(4).unwrap();
        let a4 = alternating_group(4).unwrap();
        let sec = has_section(&s4, &a4).unwrap().unwrap();
        assert_eq!(sec.h.order(), 12);
        assert!(sec.n.is_trivial());

        let a5 = alternating_group(5).unwrap();
        let d5 = make_named_family(Family::Dihedral(5)).unwrap();
        assert!(has_section(&a5, &d5).unwrap().is_some());

        // C2^3 ⋊ C7 has order 56, so no section of order 12.
        let v = make_named_family(Family::ElementaryAbelian { p: 2, r: 3 }).unwrap();
        let c7 = make_named_family(Family::Cyclic(7)).unwrap();
        // Multiplication by x on GF(8) = GF(2)[x]/(x^3 + x + 1), basis 1, x, x^2.
        let times_x: Vec<usize> = (0..8)
            .map(|v: usize| {
                let shifted = v << 1;
                if shifted & 8 != 0 {
                    (shifted ^ 0b1011) & 7
                } else {
                    shifted
                }
            })
            .collect();
        let act = Action::from_generators(&v, &c7, &[(1, times_x)]).unwrap();
        let g = semidirect_product(&v, &c7, &act).unwrap();
        assert!(has_section(&g, &a4).unwrap().is_none());
    }
}
