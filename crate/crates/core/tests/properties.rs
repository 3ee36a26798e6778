use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tpgroup::catalog::{ActionSpec, Builder};
use tpgroup::coset_graph::{build_coset_graph, s_bounds_check};
use tpgroup::group::{
    alternating_group, c3_squared_rtimes_c4, is_isomorphic, make_named_family, special_linear_2, symmetric_group,
    Family, GroupTable, Lattice, Provenance,
};
use tpgroup::rational::{half_pow, BigRational, RationalJson};
use tpgroup::tp::{tp, tp_with, TpOptions};
use tpgroup::transversal::oracle_agreement;
use tpgroup::Exec;

fn zoo() -> Vec<GroupTable> {
    let f = |x| make_named_family(x).unwrap();
    vec![
        f(Family::Dihedral(4)),
        f(Family::Dihedral(5)),
        f(Family::Dihedral(6)),
        f(Family::GeneralizedQuaternion(8)),
        f(Family::GeneralizedQuaternion(16)),
        f(Family::CpRtimesC2n { p: 3, k: 2 }),
        f(Family::CpRtimesC2n { p: 5, k: 1 }),
        f(Family::Metacyclic { m: 4, n: 4, r: 3 }),
        f(Family::Metacyclic { m: 7, n: 3, r: 2 }),
        f(Family::FieldFrobenius(5)),
        f(Family::Cyclic(12)),
        alternating_group(4).unwrap(),
        symmetric_group(4).unwrap(),
        special_linear_2(3).unwrap(),
        c3_squared_rtimes_c4().unwrap(),
    ]
}

/// The same group with its non-identity elements shuffled.
fn relabel(g: &GroupTable, seed: u64) -> GroupTable {
    let n = g.order();
    let mut sigma: Vec<usize> = (1..n).collect();
    sigma.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    sigma.insert(0, 0);
    let mut rows = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            rows[sigma[a]][sigma[b]] = sigma[g.mul(a, b)];
        }
    }
    GroupTable::from_rows(&rows, Provenance::Derived("relabelled".into())).unwrap()
}

/// `(|H|, P)` over all classes, sorted: an isomorphism invariant.
fn class_profile(g: &GroupTable) -> Vec<(usize, usize, BigRational)> {
    let mut v: Vec<_> = tp(g)
        .unwrap()
        .table
        .into_iter()
        .map(|r| (r.order, r.class_size, r.p))
        .collect();
    v.sort();
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn tp_is_invariant_under_relabelling(i in 0usize..15, seed in any::<u64>()) {
        let g = &zoo()[i];
        let h = relabel(g, seed);
        prop_assert!(is_isomorphic(g, &h).unwrap());
        prop_assert_eq!(tp(g).unwrap().tp, tp(&h).unwrap().tp);
        prop_assert_eq!(class_profile(g), class_profile(&h));
    }

    #[test]
    fn dihedral_closed_form(n in 3usize..=30) {
        let g = make_named_family(Family::Dihedral(n)).unwrap();
        let e = if n % 2 == 1 { (n - 1) / 2 } else { (n - 2) / 2 };
        prop_assert_eq!(tp(&g).unwrap().tp, half_pow(e as u64));
    }

    #[test]
    fn graph_and_oracles_on_random_pairs(i in 0usize..15, a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let g = &zoo()[i];
        let lat = Lattice::new(g).unwrap();
        let h = lat.get(a.index(lat.len()));
        let same: Vec<_> = lat.subgroups().iter().filter(|k| k.order() == h.order()).collect();
        let k = same[b.index(same.len())];
        let graph = build_coset_graph(g, h, k).unwrap();
        let t = graph.t_vector();
        prop_assert_eq!(t.entries().iter().sum::<usize>(), h.index());
        for c in graph.components() {
            prop_assert_eq!(c.weight * c.t, h.order());
        }
        prop_assert!(s_bounds_check(g, h, k).unwrap().holds);
        prop_assert!(oracle_agreement(g, h, k, Exec::default()).unwrap().agree());
    }

    #[test]
    fn builder_spelling_round_trips(n in 1usize..20, p in prop::sample::select(vec![2usize, 3, 5, 7]), r in 1u32..4, which in 0usize..6) {
        let b = match which {
            0 => Builder::Cyclic(n),
            1 => Builder::Dihedral(n),
            2 => Builder::ElemAb(p, r),
            3 => Builder::Dp(vec![Builder::Cyclic(n), Builder::Dihedral(p)]),
            4 => Builder::Sdp(Box::new(Builder::Cyclic(p)), Box::new(Builder::Cyclic(n)), ActionSpec::Power(r as usize)),
            _ => Builder::Sdp(
                Box::new(Builder::ElemAb(p, 2)),
                Box::new(Builder::Cyclic(n)),
                ActionSpec::Matrix(vec![vec![0, 1], vec![1, 0]]),
            ),
        };
        let again: Builder = b.to_string().parse().unwrap();
        prop_assert_eq!(again, b);
    }

    #[test]
    fn rational_json_round_trips(num in any::<i64>(), den in 1i64..i64::MAX, k in 0u64..200) {
        let x = BigRational::new(num.into(), den.into()) * half_pow(k);
        let back = RationalJson::from(&x).to_rational().unwrap();
        prop_assert_eq!(back, x);
    }
}

#[test]
fn sequential_and_parallel_tables_agree() {
    for g in zoo() {
        let seq = tp_with(&g, &TpOptions { exec: Exec::Sequential, ..Default::default() }).unwrap();
        let par = tp_with(&g, &TpOptions::default()).unwrap();
        assert_eq!(seq, par);
    }
}
