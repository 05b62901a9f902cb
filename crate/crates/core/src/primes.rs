//! Primality and the prime-counting function `π(n)`.

use std::sync::OnceLock;

use num_bigint::BigUint;

use crate::par::{self, Execution};
use crate::{Limits, Result};

/// `π(n)` is tabulated for every `n` up to this bound.
pub const PI_TABLE_LIMIT: u64 = 1 << 20;

const SEGMENT: u64 = 1 << 18;

/// Primality test.
///
/// Trial division below 2³²; Miller–Rabin above, with the first thirteen
/// prime bases, which is deterministic for `n < 3.3·10²⁴` and a strong
/// probable-prime test beyond.
pub fn is_prime(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    if n < 1 << 32 {
        return trial_division(n as u64);
    }
    for p in SMALL_BASES {
        if n.is_multiple_of(p as u128) {
            return false;
        }
    }
    miller_rabin(n)
}

const SMALL_BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

fn trial_division(n: u64) -> bool {
    if n < 4 {
        return n >= 2;
    }
    if n.is_multiple_of(2) || n.is_multiple_of(3) {
        return false;
    }
    let mut d = 5u64;
    while d * d <= n {
        if n.is_multiple_of(d) || n.is_multiple_of(d + 2) {
            return false;
        }
        d += 6;
    }
    true
}

fn miller_rabin(n: u128) -> bool {
    let big_n = BigUint::from(n);
    let n_minus_one = &big_n - 1u32;
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> s;
    'bases: for a in SMALL_BASES {
        let mut x = BigUint::from(a).modpow(&d, &big_n);
        if x == BigUint::from(1u32) || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % &big_n;
            if x == n_minus_one {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Sieve of Eratosthenes: `flags[m]` is true iff `m` is prime, `0 ≤ m ≤ limit`.
pub fn sieve(limit: u64) -> Vec<bool> {
    let len = limit as usize + 1;
    let mut flags = vec![true; len];
    flags[0] = false;
    if len > 1 {
        flags[1] = false;
    }
    let mut p = 2usize;
    while p * p < len {
        if flags[p] {
            let mut m = p * p;
            while m < len {
                flags[m] = false;
                m += p;
            }
        }
        p += 1;
    }
    flags
}

fn pi_table() -> &'static [u32] {
    static TABLE: OnceLock<Vec<u32>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let flags = sieve(PI_TABLE_LIMIT);
        let mut acc = 0u32;
        flags
            .iter()
            .map(|&is_p| {
                acc += is_p as u32;
                acc
            })
            .collect()
    })
}

/// `π(n)`: table lookup below [`PI_TABLE_LIMIT`], segmented sieve up to the
/// enumeration cap, resource error beyond.
pub fn prime_pi(n: u128, limits: &Limits) -> Result<u128> {
    prime_pi_with(n, limits, Execution::default())
}

pub fn prime_pi_with(n: u128, limits: &Limits, exec: Execution) -> Result<u128> {
    if n <= PI_TABLE_LIMIT as u128 {
        return Ok(pi_table()[n as usize] as u128);
    }
    let n = limits.check_enum(n)?;
    Ok(segmented_count(n, exec) as u128)
}

fn segmented_count(n: u64, exec: Execution) -> u64 {
    let root = integer_sqrt(n);
    let base: Vec<u64> = sieve(root)
        .iter()
        .enumerate()
        .filter_map(|(p, &f)| f.then_some(p as u64))
        .collect();
    let segments = n.div_ceil(SEGMENT) as usize;
    let counts = par::map_indexed(exec, segments, |s| {
        let lo = s as u64 * SEGMENT + 1;
        let hi = (lo + SEGMENT - 1).min(n);
        count_segment(lo, hi, &base)
    });
    counts.iter().sum()
}

fn count_segment(lo: u64, hi: u64, base: &[u64]) -> u64 {
    let mut flags = vec![true; (hi - lo + 1) as usize];
    for &p in base {
        let start = (p * p).max(lo.div_ceil(p) * p);
        let mut m = start;
        while m <= hi {
            flags[(m - lo) as usize] = false;
            m += p;
        }
    }
    if lo == 1 {
        flags[0] = false;
    }
    flags.iter().filter(|&&f| f).count() as u64
}

pub(crate) fn integer_sqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}
