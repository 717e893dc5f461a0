mod common;

use fanlab_core::polymat::{
    brute_force_odd_tuples, check_output_compat, check_submodular, clamp, compare_to_extreme, elements,
    for_each_polymatroid, greedy_extreme_point, in_nonzero_region, lift_point, odd_tuple_algorithm, p2_analysis,
    permutations, restrict, DimFunction,
};
use fanlab_core::Error;
use proptest::prelude::*;

/// Random valid dimension functions with `b_[N]` of the parity of `N`.
fn dimfn_from(min_n: usize) -> impl Strategy<Value = DimFunction> {
    (min_n..=5, 1usize..=6)
        .prop_flat_map(|(n, k)| {
            (
                Just(n),
                prop::collection::vec(0u32..(1 << k), n),
                prop::collection::vec(0i64..=3, k),
                prop::option::of(0i64..=20),
            )
        })
        .prop_map(|(n, sets, weights, c)| {
            let b = common::coverage(n, &sets, &weights, c);
            if (b.total() - n as i64) % 2 != 0 {
                clamp(&b, b.total() - 1).unwrap()
            } else {
                b
            }
        })
}

fn dimfn() -> impl Strategy<Value = DimFunction> {
    dimfn_from(1)
}

fn dimfn_with_perm(min_n: usize) -> impl Strategy<Value = (DimFunction, Vec<usize>)> {
    dimfn_from(min_n).prop_flat_map(|b| {
        let n = b.n();
        (Just(b), Just((0..n).collect::<Vec<usize>>()).prop_shuffle())
    })
}

fn naive_region(b: &DimFunction, a: &[i64]) -> bool {
    (1u32..1 << b.n()).all(|m| elements(m).iter().map(|&j| a[j]).sum::<i64>() <= b.get(m))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn generator_yields_valid_functions(b in dimfn()) {
        prop_assert!(check_submodular(&b).ok());
        prop_assert_eq!((b.total() - b.n() as i64).rem_euclid(2), 0);
    }

    #[test]
    fn clamp_preserves_submodularity(b in dimfn(), c in 0i64..=24) {
        let r = check_submodular(&clamp(&b, c).unwrap());
        prop_assert!(r.submodular.is_none() && r.monotone.is_none());
    }

    #[test]
    fn lift_preserves_region((b, pi) in dimfn_with_perm(2), k_seed in 0usize..8, drops in prop::collection::vec(0i64..=3, 5)) {
        let k = k_seed % b.n();
        let keep: Vec<usize> = (0..b.n()).filter(|&i| i != k).collect();
        let sub = restrict(&b, &keep).unwrap();
        let order: Vec<usize> = pi.iter().filter(|&&e| e != k).map(|&e| keep.iter().position(|&x| x == e).unwrap()).collect();
        // The region is down-closed, so lowering a vertex keeps it inside.
        let point: Vec<i64> = greedy_extreme_point(&sub, &order).unwrap().iter().zip(&drops).map(|(&x, &d)| (x - d).max(0)).collect();
        prop_assert!(naive_region(&sub, &point));
        let lifted = lift_point(&b, &point, k).unwrap();
        prop_assert!(in_nonzero_region(&b, &lifted).unwrap().inside);
        prop_assert!(naive_region(&b, &lifted));
    }

    #[test]
    fn greedy_point_is_a_base((b, pi) in dimfn_with_perm(1)) {
        let v = greedy_extreme_point(&b, &pi).unwrap();
        prop_assert_eq!(v.iter().sum::<i64>(), b.total());
        prop_assert!(in_nonzero_region(&b, &v).unwrap().inside);
        prop_assert!(naive_region(&b, &v));
    }

    #[test]
    fn extreme_comparison_holds_on_every_trace((b, pi) in dimfn_with_perm(1)) {
        let (a, trace) = odd_tuple_algorithm(&b, &pi).unwrap();
        prop_assert!(a.iter().all(|&x| x > 0 && x % 2 == 1));
        prop_assert_eq!(a.iter().sum::<i64>(), b.total());
        prop_assert!(compare_to_extreme(&b, &a, &trace).unwrap().holds);
        let compat = check_output_compat(&b, &a, &trace).unwrap();
        prop_assert_eq!(compat.compatible, naive_region(&b, &a));
    }
}

/// Independent oracle: every odd tuple with the right sum, filtered by the
/// subset inequalities one at a time.
fn naive_odd_tuples(b: &DimFunction) -> Vec<Vec<i64>> {
    let n = b.n();
    let total = b.total();
    let mut out = Vec::new();
    let mut cur = vec![1i64; n];
    loop {
        if cur.iter().sum::<i64>() == total && naive_region(b, &cur) {
            out.push(cur.clone());
        }
        let Some(i) = (0..n).rev().find(|&i| cur[i] + 2 <= total) else { break };
        cur[i] += 2;
        for x in cur.iter_mut().skip(i + 1) {
            *x = 1;
        }
    }
    out
}

#[test]
fn brute_force_matches_naive_enumeration() {
    for n in 1..=3 {
        let mut seen = 0;
        for_each_polymatroid(n, 9, false, |b| {
            assert_eq!(brute_force_odd_tuples(b), naive_odd_tuples(b), "{b:?}");
            seen += 1;
        });
        assert!(seen > 0);
    }
}

#[test]
fn enumeration_matches_nested_loops() {
    let mut expected = Vec::new();
    for b1 in 1..=8i64 {
        for b2 in 1..=8i64 {
            for b12 in b1.max(b2).max(2)..=(b1 + b2).min(8) {
                expected.push(vec![0, b1, b2, b12]);
            }
        }
    }
    let mut got = Vec::new();
    for_each_polymatroid(2, 8, false, |b| got.push(b.values().to_vec()));
    got.sort();
    expected.sort();
    assert_eq!(got, expected);
}

#[test]
fn canonical_enumeration_covers_every_orbit() {
    let mut all = std::collections::BTreeSet::new();
    for_each_polymatroid(3, 6, false, |b| {
        all.insert(b.values().to_vec());
    });
    let mut reached = std::collections::BTreeSet::new();
    for_each_polymatroid(3, 6, true, |b| {
        for p in permutations(3) {
            reached.insert(b.relabel(&p).values().to_vec());
        }
    });
    assert_eq!(all, reached);
}

#[test]
fn algorithm_is_sound_for_small_ground_sets() {
    for n in 1..=3 {
        for_each_polymatroid(n, 9, false, |b| {
            let oracle = brute_force_odd_tuples(b);
            for pi in permutations(n) {
                match odd_tuple_algorithm(b, &pi) {
                    Ok((a, trace)) => {
                        let compat = check_output_compat(b, &a, &trace).unwrap();
                        assert_eq!(compat.compatible, oracle.contains(&a), "{b:?} {pi:?}");
                        if oracle.is_empty() {
                            assert!(!compat.compatible);
                        }
                    }
                    Err(Error::ParityMismatch { .. }) => assert!(oracle.is_empty()),
                    Err(e) => panic!("{b:?} {pi:?}: {e}"),
                }
            }
        });
    }
}

#[test]
fn pair_verdicts_match_brute_force() {
    for b1 in 1..=12i64 {
        for b2 in 1..=12i64 {
            for b12 in b1.max(b2).max(2)..=(b1 + b2).min(12) {
                for c in (2..=b12).step_by(2) {
                    let brute = (1..c).step_by(2).any(|x| x <= b1 && c - x <= b2);
                    let r = p2_analysis(b1, b2, b12, c).unwrap();
                    assert_eq!(r.exists_odd_pair, brute, "({b1}, {b2}, {b12}, {c})");
                }
            }
        }
    }
}
