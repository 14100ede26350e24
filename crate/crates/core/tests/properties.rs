use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use proptest::prelude::*;

use recforge::assembly::{
    best_window, check_witness, decompositions, dilate, l_threshold, quotient, two_pieces, NonrecurrenceWitness,
    PeriodicSet,
};
use recforge::eset::ESpec;
use recforge::f2core::BitVector;
use recforge::graphs::{brute_force_colorable, chromatic_number_exact, is_proper_total, Budget, Graph};
use recforge::rational::{fmt_rat, parse_rat, rat, Rat};
use recforge::torus::{box_intersection_lemma_check, box_tiling};

fn bit_set(d: u32, max: usize) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::btree_set(0..1u64 << d, 0..=max).prop_map(|s| s.into_iter().collect())
}

fn free_set(n: u64, s: &[u64], order: &[u64]) -> Vec<u64> {
    let top = n.saturating_sub(2 * s.iter().max().copied().unwrap_or(0));
    let mut b: Vec<u64> = Vec::new();
    for &x in order {
        let x = x % top.max(1);
        if x < top && !b.contains(&x) && b.iter().all(|&y| !s.contains(&x.abs_diff(y))) {
            b.push(x);
        }
    }
    b.sort_unstable();
    b
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn box_lemma_holds((d, a, t) in (1u32..=8).prop_flat_map(|d| (Just(d), bit_set(d, 6), 0..1u64 << d)), fine in any::<bool>()) {
        let eps = if fine { rat(1, 16) } else { rat(3, 32) };
        let pts: Vec<BitVector> = a.iter().map(|&b| BitVector::new(d, b).unwrap()).collect();
        prop_assert!(box_intersection_lemma_check(&pts, &BitVector::new(d, t).unwrap(), &eps).unwrap());
    }

    #[test]
    fn tiling_measure((d, a) in (1u32..=6).prop_flat_map(|d| (Just(d), bit_set(d, 5)))) {
        let eps = rat(1, 8);
        let pts: Vec<BitVector> = a.iter().map(|&b| BitVector::new(d, b).unwrap()).collect();
        let mu = box_tiling(&pts, d, &eps).unwrap().measure().unwrap();
        let side = rat(1, 2) - rat(2, 1) * &eps;
        prop_assert_eq!(mu, Rat::from_integer((a.len() as u64).into()) * num_traits::pow(side, d as usize));
    }

    #[test]
    fn dilate_then_quotient(s in prop::collection::vec(0u64..1000, 0..20), m in 1u64..50) {
        prop_assert_eq!(quotient(&dilate(&s, m), m), s.clone());
        let q = quotient(&s, m);
        prop_assert!(dilate(&q, m).iter().all(|x| s.contains(x)));
    }

    #[test]
    fn witness_checker_matches_naive(b in prop::collection::btree_set(0u64..40, 0..12), s in prop::collection::btree_set(1u64..10, 1..4), m in 1u64..45, num in 1i64..10) {
        let b: Vec<u64> = b.into_iter().collect();
        let s: Vec<u64> = s.into_iter().collect();
        let delta = rat(num, 20);
        let set: HashSet<u64> = b.iter().copied().collect();
        let naive = b.iter().all(|&x| x < m)
            && Rat::from_integer((b.len() as u64).into()) > &delta * Rat::from_integer(m.into())
            && b.iter().all(|&x| s.iter().all(|&y| !set.contains(&(x + y)) && x + 2 * y < m));
        let ok = check_witness(&b, m, &s, &delta).iter().all(|c| c.ok);
        prop_assert_eq!(ok, naive);
    }

    #[test]
    fn two_pieces_sound(
        m in 3u64..=30,
        e in prop::collection::btree_set(1u64..=7, 1..=2),
        order_a in prop::collection::vec(0u64..1000, 30),
        l in 3u64..=40,
        order_b in prop::collection::vec(0u64..1000, 40),
    ) {
        let e: Vec<u64> = e.into_iter().filter(|&x| 4 * x <= m.max(4)).collect();
        prop_assume!(!e.is_empty());
        let a = free_set(m, &e, &order_a);
        let f = vec![1u64];
        let b = free_set(l, &f, &order_b);
        prop_assume!(!a.is_empty() && !b.is_empty());
        let delta = Rat::new((a.len() as u64).into(), (2 * m).into());
        let eta = Rat::new((3 * b.len() as u64).into(), (4 * l).into());
        let k = e.iter().copied().chain([m]).max().unwrap();
        let l0 = l_threshold(a.len() as u64, m, &delta, &eta, k);
        prop_assume!(l0.is_some_and(|l0| l > l0));
        let we = NonrecurrenceWitness { b: a.clone(), m, s: e.clone(), delta: delta.clone() };
        let wf = NonrecurrenceWitness { b: b.clone(), m: l, s: f, delta: eta.clone() };
        let tp = two_pieces(&we, &wf).unwrap();
        prop_assert!(check_witness(&tp.witness.b, tp.witness.m, &tp.witness.s, &(rat(2, 1) * &delta * &eta)).iter().all(|c| c.ok));
        prop_assert!(a.iter().all(|x| tp.witness.b.binary_search(x).is_ok()));
        for &c in &tp.witness.b {
            prop_assert_eq!(decompositions(c + tp.t1, &a, m, &b, tp.e0, tp.f0), 1);
        }
    }

    #[test]
    fn best_window_is_best(period in 1u64..20, pattern in prop::collection::btree_set(0u64..20, 0..10), m in 0u64..50, offset in -30i64..30) {
        let pattern: Vec<u64> = pattern.into_iter().filter(|&x| x < period).collect();
        let a = PeriodicSet::new(period, pattern, offset).unwrap();
        let (t, count) = best_window(&a, m);
        prop_assert_eq!(a.window(t, m).len() as u64, count);
        for u in offset..offset + period as i64 {
            prop_assert!(a.window(u, m).len() as u64 <= count);
        }
    }

    #[test]
    fn rationals_round_trip(p in -10_000i64..10_000, q in 1i64..10_000) {
        let r = rat(p, q);
        prop_assert_eq!(parse_rat(&fmt_rat(&r)).unwrap(), r);
    }

    #[test]
    fn power_differences(x in 1u64..5_000_000) {
        let naive = (0..23).any(|a| (0..a).any(|b| (1u64 << a) - (1u64 << b) == x));
        prop_assert_eq!(ESpec::Powers { b: 2 }.in_difference_set(&BigInt::from(x)), naive);
    }

    #[test]
    fn exact_chi_matches_brute_force(n in 1usize..10, edges in prop::collection::vec((0usize..10, 0usize..10), 0..30)) {
        let edges: BTreeSet<(usize, usize)> = edges.into_iter().filter(|&(u, v)| u < n && v < n && u != v).map(|(u, v)| (u.min(v), u.max(v))).collect();
        let g = Graph::from_edges(n, edges).unwrap();
        let res = chromatic_number_exact(&g, &mut Budget::new(1_000_000));
        let chi = res.chi().unwrap();
        prop_assert!(is_proper_total(&g, &res.coloring.iter().map(|c| c - 1).collect::<Vec<_>>()));
        prop_assert!(brute_force_colorable(&g, chi));
        prop_assert!(chi == 1 || !brute_force_colorable(&g, chi - 1));
    }
}
