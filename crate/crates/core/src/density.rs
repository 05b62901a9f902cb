//! Natural density, lower/upper density and the generalised-density hull.
//!
//! The prime number theorem is taken as an axiom: `d(primes) = 0`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::decimal::{to_decimal, SIGNIFICANT};
use crate::seq::{self, SizeSequence};
use crate::{BlockSchedule, Error, Limits, Result, SetExpr};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DensityValue {
    Exact(BigRational),
    /// Distinct lower and upper density.
    Bounds(BigRational, BigRational),
    Unknown,
}

impl DensityValue {
    fn from_limits(lo: Option<BigRational>, hi: Option<BigRational>) -> Self {
        match (lo, hi) {
            (Some(lo), Some(hi)) if lo == hi => DensityValue::Exact(lo),
            (Some(lo), Some(hi)) => DensityValue::Bounds(lo, hi),
            _ => DensityValue::Unknown,
        }
    }

    pub fn exact(&self) -> Option<&BigRational> {
        match self {
            DensityValue::Exact(q) => Some(q),
            _ => None,
        }
    }

    /// Density of the complement.
    pub fn complement(&self) -> Self {
        let one = BigRational::one();
        match self {
            DensityValue::Exact(q) => DensityValue::Exact(&one - q),
            DensityValue::Bounds(lo, hi) => DensityValue::Bounds(&one - hi, &one - lo),
            DensityValue::Unknown => DensityValue::Unknown,
        }
    }

    /// `exact,1,5` / `bounds,1,9,5,9` / `unknown`.
    pub fn to_csv(&self) -> String {
        let pair = |q: &BigRational| format!("{},{}", q.numer(), q.denom());
        match self {
            DensityValue::Exact(q) => format!("exact,{}", pair(q)),
            DensityValue::Bounds(lo, hi) => format!("bounds,{},{}", pair(lo), pair(hi)),
            DensityValue::Unknown => "unknown".into(),
        }
    }
}

/// `exact 1/5` / `bounds 1/9 5/9` / `unknown`.
impl fmt::Display for DensityValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DensityValue::Exact(q) => write!(f, "exact {q}"),
            DensityValue::Bounds(lo, hi) => write!(f, "bounds {lo} {hi}"),
            DensityValue::Unknown => f.write_str("unknown"),
        }
    }
}

pub fn natural_density(expr: &SetExpr) -> DensityValue {
    let d = seq::descriptor(expr);
    DensityValue::from_limits(d.liminf_density, d.limsup_density)
}

/// The interval of values any free-ultrafilter limit of `f_n/n` can take.
/// It collapses to the natural density when that exists.
pub fn generalized_hull(expr: &SetExpr) -> DensityValue {
    natural_density(expr)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfileRow {
    pub n: u128,
    pub f_n: u128,
    pub ratio: BigRational,
}

pub fn density_profile(expr: &SetExpr, checkpoints: &[u128], limits: Limits) -> Result<Vec<ProfileRow>> {
    if checkpoints.is_empty() {
        return Err(Error::Precondition("at least one checkpoint is required".into()));
    }
    if checkpoints.contains(&0) {
        return Err(Error::Precondition("checkpoints must be at least 1".into()));
    }
    let seq = SizeSequence::new(expr.clone(), limits);
    checkpoints
        .iter()
        .map(|&n| {
            let f_n = seq.eval(n)?;
            Ok(ProfileRow {
                n,
                f_n,
                ratio: BigRational::new(BigInt::from(f_n), BigInt::from(n)),
            })
        })
        .collect()
}

pub const PROFILE_HEADER: &str = "n,f_n,density_num,density_den,density_decimal";

pub fn profile_csv(rows: &[ProfileRow]) -> String {
    let mut out = format!("{PROFILE_HEADER}\n");
    for r in rows {
        out += &format!(
            "{},{},{},{},{}\n",
            r.n,
            r.f_n,
            r.ratio.numer(),
            r.ratio.denom(),
            to_decimal(&r.ratio, SIGNIFICANT)
        );
    }
    out
}

/// Exact check of the bounds on `f_n(𝕊)/n` at `n = 2^(2^k)`:
/// for odd `k`, `1 − n^{-1/2} < f_n/n < 1 − n^{-1/2} + n^{-3/4}`;
/// for even `k`, `n^{-1/2} − n^{-3/4} < f_n/n < n^{-1/2}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sandwich {
    pub k: u32,
    pub n: u128,
    pub f_n: u128,
    pub ratio: BigRational,
    pub lower_holds: bool,
    pub upper_holds: bool,
}

impl Sandwich {
    pub fn holds(&self) -> bool {
        self.lower_holds && self.upper_holds
    }
}

/// Evaluates the bounds for `1 ≤ k ≤ 6`. Fourth roots are avoided by
/// comparing fourth powers: for `x` rational, `x < n^{-3/4}` iff `x ≤ 0`
/// or `x⁴ < n^{-3}`.
pub fn superexp_sandwich(k: u32) -> Result<Sandwich> {
    if !(1..=6).contains(&k) {
        return Err(Error::Precondition(format!("k must lie in 1..=6, got {k}")));
    }
    let m = 1u32 << k;
    let n = 1u128 << m;
    let f_n = BlockSchedule::SuperExp.count_upto(n);
    let ratio = BigRational::new(BigInt::from(f_n), BigInt::from(n));
    let inv_sqrt = BigRational::new(BigInt::one(), BigInt::one() << (m / 2));
    let inv_n_cubed = BigRational::new(BigInt::one(), BigInt::one() << (3 * m));
    let below_three_quarters = |x: &BigRational| !x.is_positive() || x.pow(4) < inv_n_cubed;
    let one = BigRational::one();
    let (lower_holds, upper_holds) = if k % 2 == 1 {
        (
            ratio > &one - &inv_sqrt,
            below_three_quarters(&(&ratio - &one + &inv_sqrt)),
        )
    } else {
        (below_three_quarters(&(&inv_sqrt - &ratio)), ratio < inv_sqrt)
    };
    Ok(Sandwich {
        k,
        n,
        f_n,
        ratio,
        lower_holds,
        upper_holds,
    })
}
