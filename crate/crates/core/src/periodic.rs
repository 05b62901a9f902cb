//! Eventually periodic sets: a residue pattern plus finitely many
//! exceptional points.
//!
//! Every Boolean combination of finite sets, co-finite sets and residue
//! classes has this shape, which makes finiteness, densities, counting and
//! eventual comparison exactly decidable for them.

use std::collections::BTreeSet;

use num_rational::BigRational;

use crate::set::{lcm, Fin, SetExpr};

/// Periods above this are not tracked symbolically.
pub(crate) const MAX_PERIOD: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Periodic {
    pub period: u64,
    /// `pattern[r]`: membership of `n ≡ r (mod period)` away from exceptions.
    pub pattern: Vec<bool>,
    /// `prefix[r]` = number of true entries among `pattern[1..=r]`.
    prefix: Vec<u64>,
    /// Members where the pattern says no.
    pub plus: Vec<u64>,
    /// Non-members where the pattern says yes.
    pub minus: Vec<u64>,
}

impl Periodic {
    fn new(period: u64, pattern: Vec<bool>, plus: Vec<u64>, minus: Vec<u64>) -> Self {
        let mut prefix = Vec::with_capacity(pattern.len());
        let mut acc = 0;
        for (r, &b) in pattern.iter().enumerate() {
            if r > 0 {
                acc += b as u64;
            }
            prefix.push(acc);
        }
        Periodic {
            period,
            pattern,
            prefix,
            plus,
            minus,
        }
    }

    fn uniform(value: bool) -> Self {
        Periodic::new(1, vec![value], vec![], vec![])
    }

    fn is_uniform(&self, value: bool) -> bool {
        self.pattern.iter().all(|&b| b == value)
    }

    /// Members per period.
    pub fn gain(&self) -> u64 {
        self.pattern.iter().filter(|&&b| b).count() as u64
    }

    /// Largest exceptional point; the pattern alone is exact beyond it.
    pub fn preperiod(&self) -> u64 {
        self.plus.iter().chain(&self.minus).copied().max().unwrap_or(0)
    }

    fn pattern_count(&self, n: u128) -> u128 {
        let p = self.period as u128;
        let (q, rem) = (n / p, (n % p) as usize);
        q * self.gain() as u128 + self.prefix[rem] as u128
    }

    /// Exact `f_n`.
    pub fn count_upto(&self, n: u128) -> u128 {
        let below = |v: &[u64]| v.iter().filter(|&&m| m as u128 <= n).count() as u128;
        self.pattern_count(n) + below(&self.plus) - below(&self.minus)
    }

    /// Extremes of `count_upto(n) − gain·n/period` over all large `n`.
    pub(crate) fn offset_hull(&self) -> (BigRational, BigRational) {
        let shift = self.plus.len() as i64 - self.minus.len() as i64;
        let (p, g) = (self.period as i64, self.gain() as i64);
        let offsets = (1..=p).map(|n| BigRational::new((p * (self.prefix_at(n) + shift) - g * n).into(), p.into()));
        let lo = offsets.clone().min().expect("period ≥ 1");
        let hi = offsets.max().expect("period ≥ 1");
        (lo, hi)
    }

    fn prefix_at(&self, n: i64) -> i64 {
        self.pattern_count(n as u128) as i64
    }

    pub(crate) fn finiteness(&self) -> Fin {
        if self.is_uniform(false) {
            Fin::Finite(self.plus.clone())
        } else if self.is_uniform(true) {
            Fin::CoFinite(self.minus.clone())
        } else {
            Fin::Infinite
        }
    }

    fn complement(self) -> Self {
        let pattern = self.pattern.iter().map(|b| !b).collect();
        Periodic::new(self.period, pattern, self.minus, self.plus)
    }
}

#[derive(Clone, Copy)]
enum Op {
    Union,
    Intersection,
    Difference,
}

impl Op {
    fn apply(self, a: bool, b: bool) -> bool {
        match self {
            Op::Union => a || b,
            Op::Intersection => a && b,
            Op::Difference => a && !b,
        }
    }
}

/// Periodic description of `expr`, when one is derivable.
pub(crate) fn periodic_form(expr: &SetExpr) -> Option<Periodic> {
    match expr {
        SetExpr::Empty => Some(Periodic::uniform(false)),
        SetExpr::Full => Some(Periodic::uniform(true)),
        SetExpr::Finite(v) => Some(Periodic::new(1, vec![false], v.clone(), vec![])),
        SetExpr::CoFinite(v) => Some(Periodic::new(1, vec![true], vec![], v.clone())),
        SetExpr::ArithProg { modulus, residue } => {
            if *modulus > MAX_PERIOD {
                return None;
            }
            let pattern = (0..*modulus).map(|r| r == *residue).collect();
            Some(Periodic::new(*modulus, pattern, vec![], vec![]))
        }
        SetExpr::Powers(_) | SetExpr::Primes | SetExpr::BlockSet(_) => None,
        SetExpr::Complement(a) => periodic_form(a).map(Periodic::complement),
        SetExpr::Union(a, b) => combine(expr, Op::Union, a, b),
        SetExpr::Intersection(a, b) => combine(expr, Op::Intersection, a, b),
        SetExpr::Difference(a, b) => combine(expr, Op::Difference, a, b),
    }
}

fn combine(expr: &SetExpr, op: Op, a: &SetExpr, b: &SetExpr) -> Option<Periodic> {
    let (pa, pb) = (periodic_form(a), periodic_form(b));
    let members_of = |candidates: BTreeSet<u64>| -> Vec<u64> {
        candidates.into_iter().filter(|&m| expr.contains(m as u128)).collect()
    };
    match (pa, pb) {
        (Some(pa), Some(pb)) => {
            let period = lcm(pa.period, pb.period).filter(|&p| p <= MAX_PERIOD)?;
            let pattern: Vec<bool> = (0..period)
                .map(|r| {
                    op.apply(
                        pa.pattern[(r % pa.period) as usize],
                        pb.pattern[(r % pb.period) as usize],
                    )
                })
                .collect();
            let candidates: BTreeSet<u64> = [&pa.plus, &pa.minus, &pb.plus, &pb.minus]
                .into_iter()
                .flatten()
                .copied()
                .collect();
            let mut plus = vec![];
            let mut minus = vec![];
            for m in candidates {
                let expected = pattern[(m % period) as usize];
                match (expr.contains(m as u128), expected) {
                    (true, false) => plus.push(m),
                    (false, true) => minus.push(m),
                    _ => {}
                }
            }
            Some(Periodic::new(period, pattern, plus, minus))
        }
        (Some(p), None) | (None, Some(p)) => {
            let left = periodic_form(a).is_some();
            // A uniform operand can force the result regardless of the other side.
            let forced = match op {
                Op::Union if p.is_uniform(true) => Some(true),
                Op::Intersection if p.is_uniform(false) => Some(false),
                Op::Difference if left && p.is_uniform(false) => Some(false),
                Op::Difference if !left && p.is_uniform(true) => Some(false),
                _ => None,
            }?;
            let candidates: BTreeSet<u64> = p.plus.iter().chain(&p.minus).copied().collect();
            if forced {
                let minus = candidates.into_iter().filter(|&m| !expr.contains(m as u128)).collect();
                Some(Periodic::new(1, vec![true], vec![], minus))
            } else {
                Some(Periodic::new(1, vec![false], members_of(candidates), vec![]))
            }
        }
        (None, None) => None,
    }
}
