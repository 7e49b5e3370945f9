mod common;

use std::collections::BTreeSet;

use common::{all_set_partitions, brute_force_nc_count, catalan, is_non_crossing};
use proptest::prelude::*;
use subord_core::ncpart::{enumerate_nc, interval_partitions, irreducible_nc};
use subord_core::{cf_mixed, cf_partition, Colouring, NcPartition};

#[test]
fn nc_counts_match_catalan_and_brute_force() {
    for n in 1..=8 {
        let listed = enumerate_nc(n).unwrap();
        assert_eq!(listed.len(), catalan(n), "n = {n}");
        assert_eq!(listed.len(), brute_force_nc_count(n), "n = {n}");
        let distinct: BTreeSet<_> = listed.iter().collect();
        assert_eq!(distinct.len(), listed.len());
    }
}

#[test]
fn enumeration_is_exactly_the_non_crossing_set_partitions() {
    for n in 1..=6 {
        let expected: BTreeSet<NcPartition> = all_set_partitions(n)
            .into_iter()
            .filter(|p| is_non_crossing(p))
            .map(|p| NcPartition::new(n, p).unwrap())
            .collect();
        let listed: BTreeSet<NcPartition> = enumerate_nc(n).unwrap().into_iter().collect();
        assert_eq!(listed, expected);
    }
}

#[test]
fn crossing_partitions_are_rejected() {
    assert!(NcPartition::new(4, vec![vec![1, 3], vec![2, 4]]).is_err());
    assert!(NcPartition::new(4, vec![vec![1, 2], vec![3]]).is_err());
}

#[test]
fn interval_and_irreducible_counts() {
    for n in 1..=8 {
        assert_eq!(interval_partitions(n).unwrap().len(), 1 << (n - 1));
        // Irreducible partitions of n are counted by Catalan(n - 1).
        assert_eq!(irreducible_nc(n).unwrap().len(), catalan(n - 1));
    }
}

#[test]
fn special_blocks_biject_onto_subsets_containing_the_outer_block() {
    for n in 1..=6 {
        let one = NcPartition::one(n);
        let all = enumerate_nc(n).unwrap();
        for pi in irreducible_nc(n).unwrap() {
            let outer = pi.outer_blocks();
            assert_eq!(outer.len(), 1);
            let v0 = outer[0];
            let images: Vec<BTreeSet<usize>> = all
                .iter()
                .filter(|rho| pi.ll(rho).unwrap() && rho.ll(&one).unwrap())
                .map(|rho| pi.special_blocks(rho).unwrap())
                .collect();
            let distinct: BTreeSet<_> = images.iter().cloned().collect();
            assert_eq!(distinct.len(), images.len(), "not injective for {pi}");
            let expected: BTreeSet<BTreeSet<usize>> = (0u32..1 << pi.len())
                .map(|mask| (0..pi.len()).filter(|b| mask >> b & 1 == 1).collect())
                .filter(|s: &BTreeSet<usize>| s.contains(&v0))
                .collect();
            assert_eq!(distinct, expected, "image mismatch for {pi}");
        }
    }
}

#[test]
fn every_partition_has_a_unique_interval_hull() {
    for n in 1..=7 {
        let intervals = interval_partitions(n).unwrap();
        for pi in enumerate_nc(n).unwrap() {
            let above: Vec<_> = intervals.iter().filter(|r| pi.ll(r).unwrap()).collect();
            assert_eq!(above.len(), 1, "{pi}");
            assert_eq!(*above[0], pi.interval_hull());
            let special = pi.special_blocks(&pi.interval_hull()).unwrap();
            let outer: BTreeSet<usize> = pi.outer_blocks().into_iter().collect();
            assert_eq!(special, outer);
        }
    }
}

#[test]
fn orders_are_partial_orders_and_ll_refines_leq() {
    let all = enumerate_nc(5).unwrap();
    for a in &all {
        assert!(a.leq(a).unwrap() && a.ll(a).unwrap());
        for b in &all {
            if a.ll(b).unwrap() {
                assert!(a.leq(b).unwrap());
            }
            if a.leq(b).unwrap() && b.leq(a).unwrap() {
                assert_eq!(a, b);
            }
        }
    }
    assert!(NcPartition::zero(3).leq(&NcPartition::one(4)).is_err());
}

#[test]
fn factorization_round_trips() {
    for n in 1..=6 {
        let all = enumerate_nc(n).unwrap();
        for rho in &all {
            for pi in all.iter().filter(|p| p.leq(rho).unwrap()) {
                let parts = pi.factor_through(rho).unwrap();
                assert_eq!(parts.len(), rho.len());
                assert_eq!(&NcPartition::glue(rho, &parts).unwrap(), pi);
                // pi << rho iff every factor is irreducible.
                let irreducible = parts.iter().all(|p| p.ll(&NcPartition::one(p.n())).unwrap());
                assert_eq!(irreducible, pi.ll(rho).unwrap(), "{pi} vs {rho}");
            }
        }
    }
}

#[test]
fn display_and_parse_agree() {
    for pi in enumerate_nc(6).unwrap() {
        let parsed: NcPartition = pi.to_string().parse().unwrap();
        assert_eq!(parsed, pi);
    }
    assert_eq!("{1,4,5}{2,3}".parse::<NcPartition>().unwrap().to_string(), "{1,4,5}{2,3}");
}

proptest! {
    #[test]
    fn colouring_expansion(
        (n, pick) in (1usize..=5).prop_flat_map(|n| (Just(n), any::<prop::sample::Index>())),
        f1 in common::series(2, 5),
        f2 in common::series(2, 5),
        letters in prop::collection::vec(1usize..=2, 5),
    ) {
        let parts = enumerate_nc(n).unwrap();
        let pi = pick.get(&parts);
        let word = subord_core::Word::new(&letters[..n], 2).unwrap();
        let mut total = subord_core::Rational::from_integer(0.into());
        for c in Colouring::all(pi.len()) {
            total += cf_mixed(&word, pi, &c, &f1, &f2).unwrap();
        }
        let sum = f1.add(&f2).unwrap();
        prop_assert_eq!(total, cf_partition(&word, pi, &sum).unwrap());
    }
}
