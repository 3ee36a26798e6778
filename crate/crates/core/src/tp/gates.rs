//! Lower bounds on `tp` that force structure: solubility, supersolubility,
//! nilpotency, derived length, and the odd-order bound.

use num_traits::One;

use super::{Analysis, TheoremVerdict};
use crate::error::Result;
use crate::group::{alternating_group, has_section_in, make_named_family, Family, GroupTable};
use crate::rational::{self, half_pow, ratio, BigRational};

/// Above this, a group is soluble or has an `A5` section.
pub fn solubility_threshold() -> BigRational {
    half_pow(40)
}

/// Above this, a group is supersoluble or has an `A4` section.
pub fn supersolubility_threshold() -> BigRational {
    half_pow(8)
}

/// `(2/9)^2`. Above this, a group is nilpotent or has a section among
/// `A4, D3, D5, D7`.
pub fn nilpotency_threshold() -> BigRational {
    ratio(4, 81)
}

impl Analysis<'_> {
    /// The first of `names` that occurs as a section, if any.
    fn find_section(&self, targets: &[(&str, GroupTable)]) -> Result<Option<String>> {
        for (name, x) in targets {
            if let Some(s) = has_section_in(&self.lattice, x)? {
                return Ok(Some(format!("{name} = H/N with |H| = {}, |N| = {}", s.h.order(), s.n.order())));
            }
        }
        Ok(None)
    }

    pub fn structure_theorems(&self) -> Result<Vec<TheoremVerdict>> {
        let tp = &self.tp.tp;
        let st = &self.structure;
        let g = self.group();
        let mut out = Vec::new();

        let dedekind = self.tp.dedekind;
        out.push(
            self.verdict("half-bound", !dedekind, *tp <= ratio(1, 2))
                .with("dedekind", dedekind)
                .with("tp_is_one", tp.is_one()),
        );

        let a5 = [("A5", alternating_group(5)?)];
        let sec = if st.is_soluble { None } else { self.find_section(&a5)? };
        let t = solubility_threshold();
        out.push(
            self.verdict("solubility-gate", *tp > t, st.is_soluble || sec.is_some())
                .with("soluble", st.is_soluble)
                .with("section", sec.as_deref().unwrap_or("none"))
                .with("on_bound", *tp == t),
        );

        let a4 = ("A4", alternating_group(4)?);
        let sec = self.find_section(std::slice::from_ref(&a4))?;
        let t = supersolubility_threshold();
        out.push(
            self.verdict("supersolubility-gate", *tp > t, st.is_supersoluble || sec.is_some())
                .with("supersoluble", st.is_supersoluble)
                .with("section", sec.as_deref().unwrap_or("none"))
                .with("on_bound", *tp == t),
        );

        let bad = [
            a4,
            ("D3", make_named_family(Family::Dihedral(3))?),
            ("D5", make_named_family(Family::Dihedral(5))?),
            ("D7", make_named_family(Family::Dihedral(7))?),
        ];
        let sec = self.find_section(&bad)?;
        let t = nilpotency_threshold();
        out.push(
            self.verdict("nilpotency-gate", *tp > t, st.is_nilpotent || sec.is_some())
                .with("nilpotent", st.is_nilpotent)
                .with("section", sec.as_deref().unwrap_or("none"))
                .with("on_bound", *tp == t),
        );

        let dl = st.derived_length.map_or("insoluble".to_string(), |d| d.to_string());
        out.push(
            self.verdict("derived-length", !st.is_abelian && *tp > t, st.derived_length == Some(2))
                .with("derived_length", dl)
                .with("on_bound", *tp == t),
        );

        out.push(
            self.verdict("odd-order", !st.is_abelian && g.order() % 2 == 1, *tp <= t)
                .with("order", g.order())
                .with("bound", rational::display(&t)),
        );
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::super::TpOptions;
    use super::*;
    use crate::group::{general_linear_3_2, metacyclic, special_linear_2, c3_squared_rtimes_c4};

    fn verdicts(g: &GroupTable) -> Vec<TheoremVerdict> {
        Analysis::new(g, &TpOptions::default()).unwrap().structure_theorems().unwrap()
    }

    fn get<'a>(v: &'a [TheoremVerdict], id: &str) -> &'a TheoremVerdict {
        v.iter().find(|x| x.theorem == id).unwrap()
    }

    #[test]
    fn sl2_3_on_nilpotency_bound() {
        let v = verdicts(&special_linear_2(3).unwrap());
        assert!(v.iter().all(|x| x.consistent));
        let nil = get(&v, "nilpotency-gate");
        assert!(!nil.hypothesis_holds);
        assert_eq!(nil.details["on_bound"], "true");
        assert_eq!(get(&v, "derived-length").details["derived_length"], "3");
    }

    #[test]
    fn c7_c3_is_sharp() {
        let v = verdicts(&metacyclic(7, 3, 2).unwrap());
        let nil = get(&v, "nilpotency-gate");
        assert!(!nil.hypothesis_holds && !nil.conclusion_holds);
        assert_eq!(nil.details["on_bound"], "true");
        assert!(get(&v, "odd-order").hypothesis_holds && get(&v, "odd-order").consistent);
    }

    #[test]
    fn c3sq_c4_is_sharp() {
        let v = verdicts(&c3_squared_rtimes_c4().unwrap());
        let s = get(&v, "supersolubility-gate");
        assert!(!s.hypothesis_holds && !s.conclusion_holds);
        assert_eq!(s.details["on_bound"], "true");
    }

    #[test]
    fn psl3_2_is_sharp() {
        let v = verdicts(&general_linear_3_2().unwrap());
        let s = get(&v, "solubility-gate");
        assert!(!s.hypothesis_holds && !s.conclusion_holds);
        assert_eq!(s.details["on_bound"], "true");
        assert!(v.iter().all(|x| x.consistent));
    }
}
