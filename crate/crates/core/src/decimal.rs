//! Decimal rendering of exact rationals for tables.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Significant digits used in every table.
pub const SIGNIFICANT: usize = 12;

/// Rounds `q` half-up to `sig` significant digits.
///
/// Values with decimal exponent in `[-6, 12)` use positional notation,
/// everything else scientific (`9.33263618503e-302`). Trailing zeros are
/// kept so the width is stable.
pub fn to_decimal(q: &BigRational, sig: usize) -> String {
    if q.is_zero() {
        return "0".into();
    }
    let sign = if q.is_negative() { "-" } else { "" };
    let (num, den) = (q.numer().abs(), q.denom().clone());
    let ten = BigInt::from(10);

    let mut exp = num.to_string().len() as i64 - den.to_string().len() as i64;
    // normalise so that 10^exp ≤ num/den < 10^(exp+1)
    while cmp_scaled(&num, &den, exp) == std::cmp::Ordering::Less {
        exp -= 1;
    }
    while cmp_scaled(&num, &den, exp + 1) != std::cmp::Ordering::Less {
        exp += 1;
    }

    let shift = sig as i64 - 1 - exp;
    let (n, d) = if shift >= 0 {
        (num * ten.pow(shift as u32), den)
    } else {
        (num, den * ten.pow((-shift) as u32))
    };
    let (mut scaled, rem) = n.div_rem(&d);
    if rem * 2 >= d {
        scaled += 1;
    }
    if scaled == ten.pow(sig as u32) {
        scaled /= 10;
        exp += 1;
    }
    let digits = scaled.to_string();
    debug_assert_eq!(digits.len(), sig);

    if (-6..12).contains(&exp) {
        let body = if exp >= 0 {
            let split = (exp as usize + 1).min(digits.len());
            let (int, frac) = digits.split_at(split);
            let int = format!("{int}{}", "0".repeat(exp as usize + 1 - split));
            if frac.is_empty() {
                int
            } else {
                format!("{int}.{frac}")
            }
        } else {
            format!("0.{}{}", "0".repeat((-exp - 1) as usize), digits)
        };
        format!("{sign}{body}")
    } else {
        let (head, tail) = digits.split_at(1);
        format!("{sign}{head}.{tail}e{exp}")
    }
}

/// Compares `num/den` with `10^exp`.
fn cmp_scaled(num: &BigInt, den: &BigInt, exp: i64) -> std::cmp::Ordering {
    let p = BigInt::from(10).pow(exp.unsigned_abs() as u32);
    if exp >= 0 {
        num.cmp(&(den * p))
    } else {
        (num * p).cmp(den)
    }
}

pub(crate) fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> BigRational {
    BigRational::new(num.into(), den.into())
}
