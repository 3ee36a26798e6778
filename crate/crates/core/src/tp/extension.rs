//! Upper bounds on `tp` of split extensions and direct products in terms of
//! the factors.

use num_traits::One;

use super::{tp_value, TheoremVerdict, TpOptions};
use crate::error::{Error, Result};
use crate::group::{all_subgroups_with_cap, direct_product, semidirect_product, Action, GroupTable, Subgroup};
use crate::rational::{self, BigRational};
use crate::transversal::p_g;

pub enum Extension<'a> {
    /// `G ⋊ K` with the given action.
    Semidirect {
        g: &'a GroupTable,
        k: &'a GroupTable,
        action: &'a Action,
    },
    Direct(&'a [GroupTable]),
}

/// `min_H ∏_{k∈K} P_G(H, H^k)` over all `H ≤ G`.
fn semidirect_bound(g: &GroupTable, k: &GroupTable, action: &Action, opts: &TpOptions) -> Result<BigRational> {
    let subs = all_subgroups_with_cap(g, opts.subgroup_cap)?;
    let products = opts.exec.map(&subs, |h| -> Result<BigRational> {
        let mut acc = BigRational::one();
        for kk in 0..k.order() {
            let aut = action.automorphism(kk);
            let image: Vec<usize> = h.elements().iter().map(|&x| aut[x]).collect();
            let hk = Subgroup::from_elements(g, &image)?;
            acc *= p_g(g, h, &hk)?;
        }
        Ok(acc)
    });
    let mut best: Option<BigRational> = None;
    for p in products {
        let p = p?;
        if best.as_ref().is_none_or(|b| p < *b) {
            best = Some(p);
        }
    }
    Ok(best.unwrap_or_else(BigRational::one))
}

/// Build the extension, compute its `tp` and compare with the bound from the
/// factors. The verdict records whether the bound is attained.
pub fn extension_bounds(ext: &Extension<'_>, opts: &TpOptions) -> Result<TheoremVerdict> {
    let (theorem, big, bound, shape) = match ext {
        Extension::Semidirect { g, k, action } => {
            let big = semidirect_product(g, k, action)?;
            let bound = semidirect_bound(g, k, action, opts)?;
            ("semidirect-bound", big, bound, format!("{} ⋊ {}", g.order(), k.order()))
        }
        Extension::Direct(factors) => {
            let Some((first, rest)) = factors.split_first() else {
                return Err(Error::Parameter("direct product needs at least one factor".into()));
            };
            let big = rest.iter().fold(first.clone(), |acc, x| direct_product(&acc, x));
            let m = big.order();
            let mut bound: Option<BigRational> = None;
            for f in *factors {
                let v = rational::pow(&tp_value(f, opts)?, (m / f.order()) as u64);
                if bound.as_ref().is_none_or(|b| v < *b) {
                    bound = Some(v);
                }
            }
            let orders: Vec<String> = factors.iter().map(|f| f.order().to_string()).collect();
            ("direct-bound", big, bound.expect("non-empty"), orders.join(" × "))
        }
    };
    let tp = tp_value(&big, opts)?;
    Ok(TheoremVerdict::new(theorem, &big.provenance().to_string(), true, tp <= bound)
        .with("tp", rational::display(&tp))
        .with("bound", rational::display(&bound))
        .with("equality", tp == bound)
        .with("shape", shape))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{make_named_family, Family};
    use crate::rational::{half_pow, ratio};

    fn fam(f: Family) -> GroupTable {
        make_named_family(f).unwrap()
    }

    #[test]
    fn s3_times_c5_attains_bound() {
        let factors = [fam(Family::Dihedral(3)), fam(Family::Cyclic(5))];
        let v = extension_bounds(&Extension::Direct(&factors), &TpOptions::default()).unwrap();
        assert!(v.consistent);
        assert_eq!(v.details["bound"], rational::display(&half_pow(5)));
        assert_eq!(v.details["equality"], "true");
    }

    #[test]
    fn trivial_factor() {
        let factors = [fam(Family::Dihedral(5)), fam(Family::Cyclic(1))];
        let v = extension_bounds(&Extension::Direct(&factors), &TpOptions::default()).unwrap();
        assert_eq!(v.details["equality"], "true");
    }

    #[test]
    fn c3_by_c4_inversion() {
        let c3 = fam(Family::Cyclic(3));
        let c4 = fam(Family::Cyclic(4));
        let act = Action::from_generators(&c3, &c4, &[(1, vec![0, 2, 1])]).unwrap();
        let v = extension_bounds(
            &Extension::Semidirect {
                g: &c3,
                k: &c4,
                action: &act,
            },
            &TpOptions::default(),
        )
        .unwrap();
        assert!(v.consistent);
        assert_eq!(v.details["tp"], rational::display(&ratio(1, 2)));
    }
}
