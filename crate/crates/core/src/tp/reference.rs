//! Concrete reference groups for the `tp = 1/2` and `tp = 1/4` families.

use crate::arith::prime_power;
use crate::error::Result;
use crate::group::{
    c2_squared_rtimes_c4, central_product_c4_d4, direct_product, is_isomorphic, make_named_family, modular_group_16,
    quotient_group, GroupTable, Lattice, Family,
};

/// `k` with `order = base · 2^k`, `k >= 1`.
fn two_power_cofactor(order: usize, base: usize) -> Option<u32> {
    if order % base != 0 {
        return None;
    }
    let m = order / base;
    (m >= 2 && m.is_power_of_two()).then(|| m.trailing_zeros())
}

/// The name of the family in the `tp = 1/2` classification that `g` belongs
/// to: `C3⋊C_{2^n}`, `D4`, `Q16` or `C4⋊C4`.
pub fn half_family(g: &GroupTable) -> Result<Option<String>> {
    let n = g.order();
    if let Some(k) = two_power_cofactor(n, 3) {
        let r = make_named_family(Family::CpRtimesC2n { p: 3, k })?;
        if is_isomorphic(g, &r)? {
            return Ok(Some(format!("C3⋊C{}", 1usize << k)));
        }
    }
    let candidates: &[(&str, Family)] = match n {
        8 => &[("D4", Family::Dihedral(4))],
        16 => &[
            ("Q16", Family::GeneralizedQuaternion(16)),
            ("C4⋊C4", Family::Metacyclic { m: 4, n: 4, r: 3 }),
        ],
        _ => &[],
    };
    for (name, fam) in candidates {
        if is_isomorphic(g, &make_named_family(*fam)?)? {
            return Ok(Some((*name).into()));
        }
    }
    Ok(None)
}

fn quarter_quotients(order: usize) -> Result<Vec<(&'static str, GroupTable)>> {
    Ok(match order {
        12 => vec![("D6", make_named_family(Family::Dihedral(6))?)],
        16 => {
            let c2 = make_named_family(Family::Cyclic(2))?;
            let d4 = make_named_family(Family::Dihedral(4))?;
            vec![
                ("M4(2)", modular_group_16()?),
                ("C4∘D4", central_product_c4_d4()?),
                ("C2×D4", direct_product(&c2, &d4)),
                ("C2²⋊C4", c2_squared_rtimes_c4()?),
            ]
        }
        _ => vec![],
    })
}

/// A match against the `tp = 1/4` shapes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuarterMatch {
    pub name: String,
    /// `|M|` for a quotient match; `None` for `C5⋊C_{2^k}` itself.
    pub kernel: Option<usize>,
}

impl QuarterMatch {
    /// `G` is one of the listed groups on the nose, not just a cover of one.
    pub fn is_exact(&self) -> bool {
        self.kernel.is_none_or(|m| m == 1)
    }
}

/// The family in the `tp = 1/4` classification that `g` belongs to: either
/// `C5⋊C_{2^k}`, or `G/M` is one of `D6, M4(2), C4∘D4, C2×D4, C2²⋊C4` for a
/// normal cyclic 2-subgroup `M` (possibly trivial). Exact matches are
/// preferred over covers.
pub fn quarter_family(lattice: &Lattice<'_>) -> Result<Option<QuarterMatch>> {
    let g = lattice.group();
    let n = g.order();
    if let Some(k) = two_power_cofactor(n, 5) {
        let r = make_named_family(Family::CpRtimesC2n { p: 5, k })?;
        if is_isomorphic(g, &r)? {
            return Ok(Some(QuarterMatch {
                name: format!("C5⋊C{}", 1usize << k),
                kernel: None,
            }));
        }
    }
    // Normal subgroups come in increasing order, so M = 1 is tried first.
    for i in lattice.normal_subgroups() {
        let m = lattice.get(i);
        let mo = m.order();
        let cyclic_two = mo == 1
            || (prime_power(mo as u64).is_some_and(|(p, _)| p == 2)
                && m.elements().iter().any(|&x| g.element_order(x) == mo));
        if !cyclic_two || !matches!(n / mo, 12 | 16) {
            continue;
        }
        let refs = quarter_quotients(n / mo)?;
        let q = quotient_group(g, m)?.group;
        for (name, r) in &refs {
            if is_isomorphic(&q, r)? {
                return Ok(Some(QuarterMatch {
                    name: format!("{name} over C{mo}"),
                    kernel: Some(mo),
                }));
            }
        }
    }
    Ok(None)
}
