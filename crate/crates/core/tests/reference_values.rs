//! Values stated in the source text, asserted verbatim.

use nsize::density::{natural_density, DensityValue};
use nsize::experiments::subset_histogram;
use nsize::numerosity::{alpha_numerosity, cnum, cnum_add, cnum_compare, NumerosityAnswer, Profile};
use nsize::scales::{lottery_value, LotteryValue};
use nsize::seq::{compare_eventually, partial_sums, Verdict};
use nsize::set::enumerate_prefix;
use nsize::{AlphaExpr, BlockSchedule, Limits, SetExpr};
use num_bigint::BigUint;
use num_rational::BigRational;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[test]
fn residue_class_densities() {
    for a in 1..=12u64 {
        for i in 0..a {
            let d = natural_density(&SetExpr::arith_prog(a, i).unwrap());
            assert_eq!(d, DensityValue::Exact(q(1, a as i64)));
        }
    }
    assert_eq!(natural_density(&SetExpr::evens()), DensityValue::Exact(q(1, 2)));
    assert_eq!(natural_density(&SetExpr::odds()), DensityValue::Exact(q(1, 2)));
}

#[test]
fn sets_without_density() {
    assert_eq!(
        natural_density(&SetExpr::BlockSet(BlockSchedule::BitLengthParity)),
        DensityValue::Bounds(q(1, 3), q(2, 3))
    );
    assert_eq!(
        natural_density(&SetExpr::BlockSet(BlockSchedule::LeadingDecimal(1))),
        DensityValue::Bounds(q(1, 9), q(5, 9))
    );
    assert_eq!(
        natural_density(&SetExpr::superexp()),
        DensityValue::Bounds(q(0, 1), q(1, 1))
    );
}

#[test]
fn zero_and_one_density() {
    for e in [SetExpr::finite([1, 5, 9]).unwrap(), SetExpr::Powers(2), SetExpr::Primes] {
        assert_eq!(natural_density(&e), DensityValue::Exact(q(0, 1)));
        assert_eq!(natural_density(&SetExpr::not(e)), DensityValue::Exact(q(1, 1)));
    }
}

#[test]
fn superexp_initial_fragment() {
    let head = enumerate_prefix(&SetExpr::superexp(), 20, &Limits::default()).unwrap();
    assert_eq!(head, vec![3, 4, 17, 18, 19, 20]);
}

#[test]
fn stipulated_numerosities() {
    let canon = |e: &SetExpr| alpha_numerosity(e, Profile::Canonical).to_string();
    assert_eq!(canon(&SetExpr::Full), "exact a");
    assert_eq!(canon(&SetExpr::evens()), "exact 1/2 a");
    assert_eq!(canon(&SetExpr::arith_prog(3, 1).unwrap()), "exact 1/3 a");
    assert_eq!(canon(&SetExpr::Powers(2)), "exact sqrt(a)");
    assert_eq!(canon(&SetExpr::Powers(3)), "exact a^(1/3)");
    assert_eq!(canon(&SetExpr::not(SetExpr::Powers(2))), "exact a − sqrt(a)");
    assert_eq!(canon(&SetExpr::finite([2, 4, 8]).unwrap()), "exact 3");
    assert_eq!(canon(&SetExpr::cofinite([2, 4]).unwrap()), "exact a − 2");
}

#[test]
fn even_and_odd() {
    let free = |e: &SetExpr| alpha_numerosity(e, Profile::Free).to_string();
    assert_eq!(free(&SetExpr::evens()), "range 1/2 a − 1 .. 1/2 a");
    assert_eq!(free(&SetExpr::odds()), "range 1/2 a .. 1/2 a + 1");

    let (e, o) = (cnum(&SetExpr::evens()), cnum(&SetExpr::odds()));
    let c = cnum_compare(&e, &o, 0);
    assert_eq!(c.verdict, Verdict::WeakLess);
    assert_eq!(c.gap, Some((0, 1)));
    let total = cnum_compare(&cnum_add(&e, &o), &cnum(&SetExpr::Full), 0);
    assert_eq!(total.verdict, Verdict::Equal);
}

#[test]
fn superexp_brackets() {
    let NumerosityAnswer::Range { lower, upper } = alpha_numerosity(&SetExpr::superexp(), Profile::Free) else {
        panic!("range expected");
    };
    assert_eq!(lower.0.to_string(), "sqrt(a) − a^(1/4)");
    assert_eq!(lower.1.to_string(), "sqrt(a)");
    assert_eq!(upper.0.to_string(), "a − sqrt(a)");
    assert_eq!(upper.1.to_string(), "a − sqrt(a) + a^(1/4)");
    // bracketed between the cubes and the non-squares
    assert!(lower.0 > AlphaExpr::alpha_root(3));
    assert!(upper.1 < AlphaExpr::alpha());
}

#[test]
fn superexp_and_evens_incomparable() {
    let c = compare_eventually(&partial_sums(&SetExpr::superexp()), &partial_sums(&SetExpr::evens()), 0);
    assert_eq!(c.verdict, Verdict::Incomparable);
    let w = c.witnesses.expect("witnesses");
    assert!(!w.left_ahead_checked.is_empty() && !w.right_ahead_checked.is_empty());
}

#[test]
fn lottery_examples() {
    assert_eq!(
        lottery_value(&SetExpr::finite([7]).unwrap()).unwrap(),
        LotteryValue::V(1)
    );
    assert_eq!(lottery_value(&SetExpr::evens()).unwrap(), LotteryValue::Vinf);
    assert_eq!(lottery_value(&SetExpr::superexp()).unwrap(), LotteryValue::Vinf);
    assert_eq!(lottery_value(&SetExpr::Full).unwrap(), LotteryValue::Vminus(0));
}

#[test]
fn figure_histogram() {
    let rows = subset_histogram(10).unwrap();
    assert_eq!(rows[5].count, BigUint::from(252u32));
    assert_eq!(rows[5].relative, q(252, 1024));
    let total: BigUint = rows.iter().map(|r| r.count.clone()).sum();
    assert_eq!(total, BigUint::from(1024u32));
}
