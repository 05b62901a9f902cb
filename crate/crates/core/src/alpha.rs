//! Symbolic non-Archimedean terms `Σ c_j · α^{q_j}`.
//!
//! Coefficients are exact rationals and exponents are non-negative
//! rationals. The normal form keeps one term per exponent and drops zero
//! coefficients, so structural equality is value equality. Ordering is by
//! leading-term dominance: `α` is larger than every standard number, and
//! `α^q` dominates every finite multiple of `α^r` for `r < q`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

pub type Exponent = Ratio<u64>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct AlphaExpr {
    terms: BTreeMap<Exponent, BigRational>,
}

impl AlphaExpr {
    pub fn zero() -> Self {
        AlphaExpr::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        AlphaExpr::term(BigRational::from_integer(c.into()), Exponent::zero())
    }

    /// `α` itself.
    pub fn alpha() -> Self {
        AlphaExpr::term(BigRational::one(), Exponent::one())
    }

    /// `α^q`.
    pub fn alpha_pow(q: Exponent) -> Self {
        AlphaExpr::term(BigRational::one(), q)
    }

    /// `α^(1/p)`.
    pub fn alpha_root(p: u64) -> Self {
        AlphaExpr::alpha_pow(Exponent::new(1, p))
    }

    pub fn term(coefficient: BigRational, exponent: Exponent) -> Self {
        let mut terms = BTreeMap::new();
        if !coefficient.is_zero() {
            terms.insert(exponent, coefficient);
        }
        AlphaExpr { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigRational)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, exponent: &Exponent) -> BigRational {
        self.terms.get(exponent).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn max_exponent(&self) -> Option<Exponent> {
        self.terms.keys().next_back().copied()
    }

    /// Standard (α⁰) part.
    pub fn constant_part(&self) -> BigRational {
        self.coefficient(&Exponent::zero())
    }

    /// True when the value is a standard rational (no α terms).
    pub fn is_standard(&self) -> bool {
        self.max_exponent().is_none_or(|e| e.is_zero())
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        if factor.is_zero() {
            return AlphaExpr::zero();
        }
        AlphaExpr {
            terms: self.terms.iter().map(|(e, c)| (*e, c * factor)).collect(),
        }
    }

    /// Sign of the leading coefficient, i.e. the sign of the value.
    pub fn signum(&self) -> Ordering {
        match self.terms.values().next_back() {
            None => Ordering::Equal,
            Some(c) if c.is_positive() => Ordering::Greater,
            Some(_) => Ordering::Less,
        }
    }
}

impl From<i64> for AlphaExpr {
    fn from(v: i64) -> Self {
        AlphaExpr::constant(v)
    }
}

impl Add for &AlphaExpr {
    type Output = AlphaExpr;

    fn add(self, rhs: &AlphaExpr) -> AlphaExpr {
        let mut terms = self.terms.clone();
        for (e, c) in &rhs.terms {
            let sum = terms.remove(e).unwrap_or_else(BigRational::zero) + c;
            if !sum.is_zero() {
                terms.insert(*e, sum);
            }
        }
        AlphaExpr { terms }
    }
}

impl Add for AlphaExpr {
    type Output = AlphaExpr;

    fn add(self, rhs: AlphaExpr) -> AlphaExpr {
        &self + &rhs
    }
}

impl Neg for &AlphaExpr {
    type Output = AlphaExpr;

    fn neg(self) -> AlphaExpr {
        AlphaExpr {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for AlphaExpr {
    type Output = AlphaExpr;

    fn neg(self) -> AlphaExpr {
        -&self
    }
}

impl Sub for &AlphaExpr {
    type Output = AlphaExpr;

    fn sub(self, rhs: &AlphaExpr) -> AlphaExpr {
        self + &(-rhs)
    }
}

impl Sub for AlphaExpr {
    type Output = AlphaExpr;

    fn sub(self, rhs: AlphaExpr) -> AlphaExpr {
        &self - &rhs
    }
}

impl Ord for AlphaExpr {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum()
    }
}

impl PartialOrd for AlphaExpr {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order by leading-term dominance.
pub fn alpha_compare(x: &AlphaExpr, y: &AlphaExpr) -> Ordering {
    x.cmp(y)
}

/// `st(x/α)`: the coefficient of `α¹`, discarding infinitesimal terms.
pub fn standard_part_ratio(x: &AlphaExpr) -> Result<BigRational> {
    match x.max_exponent() {
        Some(e) if e > Exponent::one() => Err(Error::InfiniteRatio(render_exponent(&e))),
        _ => Ok(x.coefficient(&Exponent::one())),
    }
}

fn render_exponent(e: &Exponent) -> String {
    if e.is_integer() {
        e.numer().to_string()
    } else {
        format!("{}/{}", e.numer(), e.denom())
    }
}

pub(crate) fn render_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn render_power(e: &Exponent) -> String {
    if *e == Exponent::one() {
        "a".into()
    } else if *e == Exponent::new(1, 2) {
        "sqrt(a)".into()
    } else if e.is_integer() {
        format!("a^{}", e.numer())
    } else {
        format!("a^({}/{})", e.numer(), e.denom())
    }
}

/// Rendering: terms by descending exponent joined with ` + ` / ` − `,
/// coefficients as reduced fractions (`1` omitted before a power of `a`),
/// `a^(1/2)` written `sqrt(a)`. Example: `a − sqrt(a) + a^(1/4)`.
impl fmt::Display for AlphaExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("−")?,
                (0, false) => {}
                (_, true) => f.write_str(" − ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            if e.is_zero() {
                f.write_str(&render_rational(&mag))?;
            } else if mag.is_one() {
                f.write_str(&render_power(e))?;
            } else {
                write!(f, "{} {}", render_rational(&mag), render_power(e))?;
            }
        }
        Ok(())
    }
}
