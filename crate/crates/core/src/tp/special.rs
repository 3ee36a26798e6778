//! Which values `tp` and `P_G(H)` can take, and what each value forces.

use super::reference::{half_family, quarter_family};
use super::{Analysis, TheoremVerdict};
use crate::arith::{factorial_ratio, is_prime, next_prime, prime_power};
use crate::error::Result;
use crate::group::subgroup_relations;
use crate::rational::{ratio, BigRational};

fn f(t: usize) -> BigRational {
    factorial_ratio(t as u64).expect("t >= 1")
}

/// The prime `p <= limit` with `p!/p^p = value`, if any.
fn single_prime(value: &BigRational, limit: usize) -> Option<usize> {
    (2..=limit).filter(|&p| is_prime(p as u64)).find(|&p| f(p) == *value)
}

/// Primes `p < q <= limit` with `f(p) f(q) = value`, if any.
fn prime_pair(value: &BigRational, limit: usize) -> Option<(usize, usize)> {
    let primes: Vec<usize> = (2..=limit).filter(|&p| is_prime(p as u64)).collect();
    primes
        .iter()
        .enumerate()
        .flat_map(|(i, &p)| primes[i + 1..].iter().map(move |&q| (p, q)))
        .find(|&(p, q)| f(p) * f(q) == *value)
}

impl Analysis<'_> {
    /// Non-normal class representatives with their `P`.
    fn non_normal_classes(&self) -> Vec<usize> {
        self.lattice
            .class_representatives()
            .into_iter()
            .filter(|&i| !self.lattice.is_normal(i))
            .collect()
    }

    pub fn special_values(&self) -> Result<Vec<TheoremVerdict>> {
        let g = self.group();
        let tp = &self.tp.tp;
        let half = ratio(1, 2);
        let quarter = ratio(1, 4);
        let mut out = Vec::new();

        let hf = half_family(g)?;
        let hf_name = hf.clone().unwrap_or_else(|| "none".into());
        out.push(self.verdict("tp-half-classification", *tp == half, hf.is_some()).with("family", &hf_name));
        out.push(self.verdict("tp-half-families", hf.is_some(), *tp == half).with("family", &hf_name));

        // The converse is asserted only for C5⋊C_{2^k} and the five listed
        // groups themselves: covers with M != 1 (C2×D6, D12, ...) have the
        // stated shape but smaller tp, so for them the match is only reported.
        let qf = quarter_family(&self.lattice)?;
        let qf_name = qf.as_ref().map_or("none".into(), |m| m.name.clone());
        let exact = qf.as_ref().is_some_and(|m| m.is_exact());
        out.push(self.verdict("tp-quarter-classification", *tp == quarter, qf.is_some()).with("family", &qf_name));
        out.push(
            self.verdict("tp-quarter-families", exact, *tp == quarter)
                .with("family", &qf_name)
                .with("exact_member", exact),
        );

        // No group has tp = f(p) f(q) for primes p < q. Only pairs with
        // f(p) f(q) >= tp can match; f is decreasing, so the scan stops.
        let mut hit = None;
        let mut checked = 0usize;
        let mut p = 2u64;
        while f(p as usize) * f(next_prime(p) as usize) >= *tp {
            let mut q = next_prime(p);
            loop {
                let v = f(p as usize) * f(q as usize);
                if v < *tp {
                    break;
                }
                checked += 1;
                if v == *tp {
                    hit = Some((p, q));
                }
                q = next_prime(q);
            }
            p = next_prime(p);
        }
        out.push(
            self.verdict("no-two-prime-value", true, hit.is_none())
                .with("pairs_checked", checked)
                .with("match", hit.map_or("none".into(), |(p, q)| format!("({p}, {q})"))),
        );

        // Every subgroup with P = p!/p^p: p divides |H| and either H is
        // self-normalising of index p + 1, or (N:H) = p and the index is 2p.
        let classes = self.non_normal_classes();
        let (mut seen, mut bad) = (0usize, Vec::new());
        let mut per_prime: Vec<Option<usize>> = Vec::new();
        for &i in &classes {
            let h = self.lattice.get(i);
            let (n, p_val) = (h.index(), self.p_of(i));
            let sp = single_prime(p_val, n);
            per_prime.push(sp);
            let Some(p) = sp else { continue };
            seen += 1;
            let m = subgroup_relations(g, h).normalizer.order() / h.order();
            let ok = h.order() % p == 0 && ((m == 1 && n == p + 1) || (m == p && n == 2 * p));
            if !ok {
                bad.push(format!("|H| = {}, n = {n}, m = {m}, p = {p}", h.order()));
            }
        }
        out.push(
            self.verdict("single-prime-dichotomy", seen > 0, bad.is_empty())
                .with("subgroups", seen)
                .with("failures", bad.join("; ")),
        );

        // P = f(p) f(q) forces the t-vector (q, p, 1, ..., 1) and pq | |H|.
        let (mut seen, mut bad) = (0usize, Vec::new());
        for &i in &classes {
            let h = self.lattice.get(i);
            let n = h.index();
            let Some((p, q)) = prime_pair(self.p_of(i), n) else { continue };
            seen += 1;
            let mut expected = vec![q, p];
            expected.extend(std::iter::repeat_n(1, n.saturating_sub(p + q)));
            let t = self.t_vector_of(i);
            if t != expected.as_slice() || h.order() % (p * q) != 0 {
                bad.push(format!("|H| = {}, t = {t:?}, (p, q) = ({p}, {q})", h.order()));
            }
        }
        out.push(
            self.verdict("two-prime-tvector", seen > 0, bad.is_empty())
                .with("subgroups", seen)
                .with("failures", bad.join("; ")),
        );

        // Every non-normal subgroup has P = p!/p^p for one fixed p.
        let fixed = match per_prime.first() {
            Some(&Some(p)) if per_prime.iter().all(|&x| x == Some(p)) => Some(p),
            _ => None,
        };
        out.push(
            self.verdict("classify-p", fixed.is_some(), fixed == Some(2) && hf.is_some() && *tp == half)
                .with("prime", fixed.map_or("none".into(), |p| p.to_string()))
                .with("family", &hf_name),
        );

        // 2-groups of order >= 8 whose only non-normal subgroups have index 4.
        let two_group = prime_power(g.order() as u64).is_some_and(|(p, _)| p == 2) && g.order() >= 8;
        let dagger = two_group && !classes.is_empty() && classes.iter().all(|&i| self.lattice.get(i).index() == 4);
        let in_list = hf.as_deref().is_some_and(|n| matches!(n, "D4" | "Q16" | "C4⋊C4"));
        out.push(self.verdict("dagger-groups", dagger, in_list).with("family", &hf_name));

        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::super::TpOptions;
    use super::*;
    use crate::group::{make_named_family, Family, GroupTable};

    fn verdicts(g: &GroupTable) -> Vec<TheoremVerdict> {
        Analysis::new(g, &TpOptions::default()).unwrap().special_values().unwrap()
    }

    fn get<'a>(v: &'a [TheoremVerdict], id: &str) -> &'a TheoremVerdict {
        v.iter().find(|x| x.theorem == id).unwrap()
    }

    #[test]
    fn c3_c8_half() {
        let v = verdicts(&make_named_family(Family::CpRtimesC2n { p: 3, k: 3 }).unwrap());
        assert!(v.iter().all(|x| x.consistent), "{v:#?}");
        assert!(get(&v, "tp-half-classification").hypothesis_holds);
        assert!(get(&v, "classify-p").hypothesis_holds);
    }

    #[test]
    fn d6_and_c5_c4_quarter() {
        for g in [
            make_named_family(Family::Dihedral(6)).unwrap(),
            make_named_family(Family::CpRtimesC2n { p: 5, k: 2 }).unwrap(),
        ] {
            let v = verdicts(&g);
            assert!(v.iter().all(|x| x.consistent), "{v:#?}");
            assert!(get(&v, "tp-quarter-classification").hypothesis_holds);
        }
    }

    #[test]
    fn dagger_holds_for_d4() {
        let v = verdicts(&make_named_family(Family::Dihedral(4)).unwrap());
        let d = get(&v, "dagger-groups");
        assert!(d.hypothesis_holds && d.conclusion_holds);
    }

    #[test]
    fn prime_helpers() {
        assert_eq!(single_prime(&ratio(2, 9), 5), Some(3));
        assert_eq!(single_prime(&ratio(3, 32), 5), None);
        assert_eq!(prime_pair(&ratio(1, 9), 5), Some((2, 3)));
    }
}
