//! Library results checked against small independent reimplementations.

use nsize::density::{natural_density, superexp_sandwich, DensityValue};
use nsize::experiments::{random_subset_trial, s_table, subset_histogram};
use nsize::primes::{is_prime, prime_pi, sieve};
use nsize::seq::{compare_eventually, partial_sums, Verdict};
use nsize::set::prefix_bits;
use nsize::{BlockSchedule, Limits, SetExpr};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Signed;
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// `n ∈ 𝕊` iff the least `k` with `n ≤ 2^(2^k)` is odd (`n ≥ 3`).
fn in_s(n: u64) -> bool {
    if n <= 2 {
        return false;
    }
    let mut k = 0u32;
    while (n as u128) > 1u128 << (1u32 << k) {
        k += 1;
    }
    k % 2 == 1
}

fn bit_length(n: u64) -> u32 {
    64 - n.leading_zeros()
}

fn leading_digit(mut n: u64) -> u64 {
    while n >= 10 {
        n /= 10;
    }
    n
}

fn trial_division(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn running_counts(limit: u64, member: impl Fn(u64) -> bool) -> Vec<u64> {
    let mut out = vec![0u64];
    for m in 1..=limit {
        out.push(out[m as usize - 1] + member(m) as u64);
    }
    out
}

const LIMIT: u64 = 1 << 16;

#[test]
fn superexp_membership_and_counts() {
    let s = SetExpr::superexp();
    let counts = running_counts(LIMIT, in_s);
    let bits = prefix_bits(&s, LIMIT, &Limits::default()).unwrap();
    for n in 1..=LIMIT {
        assert_eq!(s.contains(n as u128), in_s(n), "membership at {n}");
        assert_eq!(bits.get(n), in_s(n), "bitmap at {n}");
    }
    let f = partial_sums(&s);
    for n in (1..=LIMIT).step_by(97).chain([4, 16, 17, 255, 256, 257, LIMIT]) {
        assert_eq!(f.eval(n as u128).unwrap(), counts[n as usize] as u128, "f at {n}");
    }
    assert_eq!(counts[4], 2);
    assert_eq!(counts[16], 2);
    assert_eq!(counts[256], 242);
}

#[test]
fn superexp_large_boundaries() {
    // blocks (2^(2^(k-1)), 2^(2^k)] summed directly
    let f = partial_sums(&SetExpr::superexp());
    let block = |k: u32| (1u128 << (1u32 << k)) - (1u128 << (1u32 << (k - 1)));
    let at_32 = block(1) + block(3) + block(5);
    assert_eq!(f.eval(1u128 << 32).unwrap(), at_32);
    assert_eq!(at_32, 4_294_902_002);
    assert_eq!(f.eval(1u128 << 64).unwrap(), at_32);
    assert_eq!(f.eval((1u128 << 64) + 5).unwrap(), at_32 + 5);
    assert_eq!(f.eval(u128::MAX).unwrap(), at_32 + (u128::MAX - (1u128 << 64)));
}

#[test]
fn s_table_matches_block_sums() {
    let rows = s_table(7).unwrap();
    for r in &rows {
        let mut f = BigInt::from(0);
        for j in 1..=r.k {
            if j % 2 == 1 {
                f += (BigInt::from(1) << (1u64 << j)) - (BigInt::from(1) << (1u64 << (j - 1)));
            }
        }
        let n = BigInt::from(1) << (1u64 << r.k);
        assert_eq!(BigInt::from(r.f.clone()), f, "k = {}", r.k);
        assert_eq!(BigInt::from(r.n.clone()), n);
        assert_eq!(r.ratio, BigRational::new(f, n));
    }
}

#[test]
fn sandwich_against_floats() {
    // the exact checker agrees with a float evaluation away from equality
    for k in 3..=6 {
        let s = superexp_sandwich(k).unwrap();
        let n = (s.n as f64).ln();
        let r = (s.f_n as f64 / s.n as f64).ln();
        assert!(s.holds(), "k = {k}");
        if k % 2 == 1 {
            assert!(r.exp() < 1.0 && r.exp() > 1.0 - (-n / 2.0).exp());
        } else {
            assert!(r.exp() < (-n / 2.0).exp());
        }
    }
}

#[test]
fn block_schedules_against_direct_rules() {
    let bitodd = SetExpr::BlockSet(BlockSchedule::BitLengthParity);
    let leading = |d: u8| SetExpr::BlockSet(BlockSchedule::LeadingDecimal(d));
    let odd_len = running_counts(LIMIT, |n| bit_length(n) % 2 == 1);
    for n in 1..=LIMIT {
        assert_eq!(bitodd.contains(n as u128), bit_length(n) % 2 == 1);
        for d in 1..=9u8 {
            assert_eq!(leading(d).contains(n as u128), leading_digit(n) == d as u64);
        }
    }
    let f = partial_sums(&bitodd);
    for n in (1..=LIMIT).step_by(31) {
        assert_eq!(f.eval(n as u128).unwrap(), odd_len[n as usize] as u128);
    }
    for d in 1..=9u8 {
        let counts = running_counts(LIMIT, |n| leading_digit(n) == d as u64);
        let f = partial_sums(&leading(d));
        for n in (1..=LIMIT).step_by(53) {
            assert_eq!(f.eval(n as u128).unwrap(), counts[n as usize] as u128);
        }
    }
}

#[test]
fn block_ratio_limits() {
    // ratios at block ends approach the descriptor bounds
    let bitodd = partial_sums(&SetExpr::BlockSet(BlockSchedule::BitLengthParity));
    let DensityValue::Bounds(lo, hi) = natural_density(&SetExpr::BlockSet(BlockSchedule::BitLengthParity)) else {
        panic!("bounds expected");
    };
    assert_eq!((lo.clone(), hi.clone()), (q(1, 3), q(2, 3)));
    for j in [60u32, 61, 100, 101] {
        let n = (1u128 << j) - 1;
        let r = BigRational::new(BigInt::from(bitodd.eval(n).unwrap()), BigInt::from(n));
        let target = if j % 2 == 1 { &hi } else { &lo };
        assert!((r - target).abs() < q(1, 1 << 40), "j = {j}");
    }

    for d in 1..=9i64 {
        let expr = SetExpr::BlockSet(BlockSchedule::LeadingDecimal(d as u8));
        let DensityValue::Bounds(lo, hi) = natural_density(&expr) else {
            panic!("bounds expected");
        };
        assert_eq!((lo.clone(), hi.clone()), (q(1, 9 * d), q(10, 9 * (d + 1))));
        let f = partial_sums(&expr);
        let scale = 10u128.pow(30);
        for (n, target) in [(d as u128 * scale - 1, &lo), ((d as u128 + 1) * scale - 1, &hi)] {
            let r = BigRational::new(BigInt::from(f.eval(n).unwrap()), BigInt::from(n));
            assert!((r - target).abs() < q(1, 1 << 40), "d = {d}, n = {n}");
        }
    }
}

#[test]
fn powers_against_direct_rule() {
    for p in 2u32..=5 {
        let is_power = |n: u64| (1..).map(|r: u64| r.pow(p)).take_while(|&v| v <= n).any(|v| v == n);
        let counts = running_counts(20_000, is_power);
        let f = partial_sums(&SetExpr::Powers(p));
        for n in 1..=20_000u64 {
            assert_eq!(SetExpr::Powers(p).contains(n as u128), is_power(n));
            assert_eq!(f.eval(n as u128).unwrap(), counts[n as usize] as u128);
        }
    }
    let f = partial_sums(&SetExpr::Powers(2));
    assert_eq!(f.eval(u128::MAX).unwrap(), u64::MAX as u128);
    assert_eq!(f.eval(1u128 << 100).unwrap(), 1u128 << 50);
}

#[test]
fn primes_against_trial_division() {
    let table = sieve(LIMIT);
    let counts = running_counts(LIMIT, trial_division);
    for n in 1..=LIMIT {
        assert_eq!(table[n as usize], trial_division(n), "sieve at {n}");
        assert_eq!(is_prime(n as u128), trial_division(n), "is_prime at {n}");
    }
    let limits = Limits::default();
    for n in (1..=LIMIT).step_by(101) {
        assert_eq!(prime_pi(n as u128, &limits).unwrap(), counts[n as usize] as u128);
    }
    for n in [(1u64 << 32) - 5, (1 << 32) + 15, 1_000_000_007, 4_294_967_311] {
        assert_eq!(is_prime(n as u128), trial_division(n), "n = {n}");
    }
    assert!(is_prime((1u128 << 61) - 1));
    assert!(!is_prime((1u128 << 61) + 1));
    assert_eq!(prime_pi(1_000_000, &limits).unwrap(), 78_498);
    assert_eq!(prime_pi(10_000_000, &limits).unwrap(), 664_579);
}

#[test]
fn histogram_against_pascal() {
    let mut row = vec![BigUint::from(1u32)];
    for n in 1..=60u64 {
        let mut next = vec![BigUint::from(1u32); n as usize + 1];
        for k in 1..n as usize {
            next[k] = &row[k - 1] + &row[k];
        }
        row = next;
        if n % 2 == 0 {
            let hist = subset_histogram(n).unwrap();
            let total = BigInt::from(1) << n;
            for (k, r) in hist.iter().enumerate() {
                assert_eq!(r.count, row[k], "C({n}, {k})");
                assert_eq!(r.relative, BigRational::new(row[k].clone().into(), total.clone()));
                assert_eq!(r.fraction, q(k as i64, n as i64));
            }
        }
    }
}

#[test]
fn trials_against_direct_bit_counts() {
    let (n, trials, seed) = (1_000u64, 20u64, 42u64);
    let stats = random_subset_trial(n, trials, seed).unwrap();
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    for t in 0..trials as usize {
        let mut g = rng.clone();
        rng.jump();
        let mut ones = 0i64;
        let mut bits = 0u64;
        while bits < n {
            let word = g.next_u64();
            let take = (n - bits).min(64);
            for b in 0..take {
                ones += ((word >> b) & 1) as i64;
            }
            bits += take;
        }
        let expected = q((2 * ones - n as i64).abs(), 2 * n as i64);
        assert_eq!(stats.deviations[t], expected, "trial {t}");
    }
}

#[test]
fn periodic_comparisons_against_scans() {
    // residue classes mod 6 against each other: the exact difference
    // f(M_{6,j}) − f(M_{6,i}) is periodic, so one period decides the verdict
    for i in 0..6u64 {
        for j in 0..6u64 {
            let (a, b) = (SetExpr::arith_prog(6, i).unwrap(), SetExpr::arith_prog(6, j).unwrap());
            let diffs: Vec<i64> = (1..=60u64)
                .map(|n| {
                    let fa = (1..=n).filter(|m| m % 6 == i).count() as i64;
                    let fb = (1..=n).filter(|m| m % 6 == j).count() as i64;
                    fb - fa
                })
                .collect();
            let (lo, hi) = (*diffs[6..].iter().min().unwrap(), *diffs[6..].iter().max().unwrap());
            let expected = match (lo, hi) {
                (0, 0) => Verdict::Equal,
                (l, _) if l > 0 => Verdict::StrictLess,
                (_, h) if h < 0 => Verdict::StrictGreater,
                (0, _) => Verdict::WeakLess,
                (_, 0) => Verdict::WeakGreater,
                _ => Verdict::Incomparable,
            };
            let c = compare_eventually(&partial_sums(&a), &partial_sums(&b), 0);
            assert_eq!(c.verdict, expected, "mod 6 {i} vs mod 6 {j}");
            assert_eq!(c.gap, Some((lo as i128, hi as i128)));
        }
    }
}
