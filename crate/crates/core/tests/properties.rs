//! Randomized properties over small groups, run from a fixed seed.

use std::sync::Arc;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use vatican_core::design::{balance_report, cross_check, design_from_tuple};
use vatican_core::group::all_automorphisms;
use vatican_core::triangle::{expand_pseudoterrace, pseudoterrace_k, quotient_triangle, roman_k};
use vatican_core::{make_group, Arrangement, FiniteGroup, GroupDescriptor, TupleFamily};

const SEED: [u8; 32] = *b"vatican-properties-fixed-seed-01";

const GROUPS: &[&str] = &[
    "Z5", "Z6", "Z7", "Z8", "Z9", "Z10", "Z11", "Z12", "D6", "D8", "D10", "D12", "Q8", "Z2^3",
    "Z3xZ3", "Z4xZ2",
];

fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &SEED))
}

fn group(name: &str) -> Arc<FiniteGroup> {
    make_group(&name.parse().unwrap()).unwrap()
}

/// A group and an identity-first ordering of its elements.
fn arrangement() -> impl Strategy<Value = (&'static str, Vec<usize>)> {
    prop::sample::select(GROUPS).prop_flat_map(|name| {
        let t = name.parse::<GroupDescriptor>().unwrap().order().unwrap();
        (Just(name), Just((1..t).collect::<Vec<_>>()).prop_shuffle())
    })
}

fn build(name: &str, tail: &[usize]) -> Arrangement {
    let g = group(name);
    let mut seq = vec![g.identity()];
    seq.extend_from_slice(tail);
    Arrangement::new(&g, seq).unwrap()
}

/// Largest `k` with every `o_i(x, y) <= n/t`, counted straight from the rows
/// `g·a` of every member.
fn direct_design_k(family: &TupleFamily) -> usize {
    let g = family.group();
    let t = g.order();
    let mut rows = Vec::new();
    for m in family.members() {
        for h in g.elements() {
            rows.push(m.as_slice().iter().map(|&x| g.op(h, x)).collect::<Vec<_>>());
        }
    }
    let cap = rows.len() / t;
    for i in 1..t {
        let mut counts = vec![0usize; t * t];
        for row in &rows {
            for c in 0..t - i {
                counts[row[c] * t + row[c + i]] += 1;
            }
        }
        if counts.iter().any(|&c| c > cap) {
            return i - 1;
        }
    }
    t - 1
}

#[test]
fn quotient_triangles_are_left_translation_invariant() {
    runner(200)
        .run(&(arrangement(), any::<prop::sample::Index>()), |((name, tail), idx)| {
            let a = build(name, &tail);
            let h = idx.index(a.len());
            let moved = a.left_translate(h);
            let (before, after) = (quotient_triangle(&a), quotient_triangle(&moved));
            prop_assert_eq!(after.lines(), before.lines());
            prop_assert_eq!(moved.normalized(), a.normalized());
            Ok(())
        })
        .unwrap();
}

#[test]
fn singleton_scan_matches_direct_counts() {
    runner(300)
        .run(&arrangement(), |(name, tail)| {
            let family = TupleFamily::singleton(build(name, &tail));
            let k = roman_k(&family);
            prop_assert_eq!(k, direct_design_k(&family));
            prop_assert!(cross_check(&family).unwrap());
            Ok(())
        })
        .unwrap();
}

#[test]
fn random_families_agree_with_both_oracles() {
    let family = prop::sample::select(GROUPS).prop_flat_map(|name| {
        let t = name.parse::<GroupDescriptor>().unwrap().order().unwrap();
        let member = Just((1..t).collect::<Vec<_>>()).prop_shuffle();
        (Just(name), prop::collection::vec(member, 2..=3))
    });
    runner(200)
        .run(&family, |(name, tails)| {
            let members = tails.iter().map(|tail| build(name, tail)).collect();
            let family = TupleFamily::new(members).unwrap();
            let report = balance_report(&design_from_tuple(&family)).unwrap();
            prop_assert_eq!(roman_k(&family), report.max_k);
            prop_assert_eq!(report.max_k, direct_design_k(&family));
            Ok(())
        })
        .unwrap();
}

#[test]
fn expansion_is_at_least_as_balanced_as_the_pseudoterrace() {
    runner(200)
        .run(&(arrangement(), any::<prop::sample::Index>()), |((name, tail), idx)| {
            let a = build(name, &tail);
            let autos = all_automorphisms(a.group()).unwrap();
            let alpha = &autos[idx.index(autos.len())];
            let family = expand_pseudoterrace(&a, alpha).unwrap();
            prop_assert_eq!(family.fold(), alpha.order());
            prop_assert!(roman_k(&family) >= pseudoterrace_k(&a, alpha).unwrap());
            Ok(())
        })
        .unwrap();
}

#[test]
fn balance_is_invariant_under_automorphisms() {
    runner(200)
        .run(&(arrangement(), any::<prop::sample::Index>()), |((name, tail), idx)| {
            let family = TupleFamily::singleton(build(name, &tail));
            let autos = all_automorphisms(family.group()).unwrap();
            let beta = &autos[idx.index(autos.len())];
            prop_assert_eq!(roman_k(&family.map(beta).unwrap()), roman_k(&family));
            Ok(())
        })
        .unwrap();
}
