#![allow(dead_code)]

use nsize::{BlockSchedule, Boundary, Parity, SetExpr};
use proptest::prelude::*;

fn elements() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(1u64..200, 0..5)
}

fn residue_class() -> impl Strategy<Value = SetExpr> {
    (1u64..13).prop_flat_map(|a| (0..a).prop_map(move |i| SetExpr::arith_prog(a, i).unwrap()))
}

fn parity() -> impl Strategy<Value = Parity> {
    prop_oneof![Just(Parity::Even), Just(Parity::Odd)]
}

fn block_set() -> impl Strategy<Value = SetExpr> {
    prop_oneof![
        Just(SetExpr::superexp()),
        Just(SetExpr::BlockSet(BlockSchedule::BitLengthParity)),
        (1u8..10).prop_map(|d| SetExpr::BlockSet(BlockSchedule::LeadingDecimal(d))),
        (2u32..5, parity()).prop_map(|(base, include)| SetExpr::BlockSet(BlockSchedule::General {
            boundary: Boundary::Tower { base },
            include
        })),
        (2u32..6, parity()).prop_map(|(base, include)| SetExpr::BlockSet(BlockSchedule::General {
            boundary: Boundary::Geometric { base },
            include
        })),
    ]
}

/// Atoms whose counting sequences are eventually periodic.
pub fn periodic_atom() -> impl Strategy<Value = SetExpr> {
    prop_oneof![
        Just(SetExpr::Empty),
        Just(SetExpr::Full),
        elements().prop_map(|v| SetExpr::finite(v).unwrap()),
        elements().prop_map(|v| SetExpr::cofinite(v).unwrap()),
        residue_class(),
    ]
}

pub fn atom() -> impl Strategy<Value = SetExpr> {
    prop_oneof![
        4 => periodic_atom(),
        1 => (2u32..6).prop_map(SetExpr::Powers),
        1 => Just(SetExpr::Primes),
        2 => block_set(),
    ]
}

fn combine(inner: BoxedStrategy<SetExpr>) -> impl Strategy<Value = SetExpr> {
    prop_oneof![
        (inner.clone(), inner.clone()).prop_map(|(a, b)| SetExpr::union(a, b)),
        (inner.clone(), inner.clone()).prop_map(|(a, b)| SetExpr::intersection(a, b)),
        (inner.clone(), inner.clone()).prop_map(|(a, b)| SetExpr::difference(a, b)),
        inner.prop_map(SetExpr::not),
    ]
}

/// Random expression trees of depth at most 4.
pub fn expr() -> impl Strategy<Value = SetExpr> {
    atom().prop_recursive(4, 24, 2, |inner| combine(inner.boxed()))
}

/// Boolean combinations of finite, co-finite and residue-class sets.
pub fn periodic_expr() -> impl Strategy<Value = SetExpr> {
    periodic_atom().prop_recursive(3, 12, 2, |inner| combine(inner.boxed()))
}

/// Membership by direct evaluation of the tree, independent of the
/// library's enumeration code.
pub fn brute_count(e: &SetExpr, n: u64) -> u64 {
    (1..=n).filter(|&m| e.contains(m as u128)).count() as u64
}
