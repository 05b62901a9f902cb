//! Symbolic subsets of `ℕ = {1, 2, 3, …}`.
//!
//! A [`SetExpr`] is a tree of atoms (finite and co-finite sets, residue
//! classes, perfect powers, primes, block sets) joined by Boolean
//! combinators. Membership is exact and total for every tree; prefixes
//! `S ∩ {1,…,n}` are enumerated through word-level bitmaps.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;

use crate::periodic;
use crate::primes;
use crate::{Error, Limits, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SetExpr {
    Empty,
    /// All of `ℕ`.
    Full,
    /// Strictly increasing, every element at least 1.
    Finite(Vec<u64>),
    /// `ℕ` minus a strictly increasing list of excluded elements.
    CoFinite(Vec<u64>),
    /// `M_{a,i} = { n ∈ ℕ : n mod a = i }` with `0 ≤ i < a`.
    ArithProg {
        modulus: u64,
        residue: u64,
    },
    /// `{ n^p : n ∈ ℕ }`, `p ≥ 2`.
    Powers(u32),
    Primes,
    BlockSet(BlockSchedule),
    Union(Box<SetExpr>, Box<SetExpr>),
    Intersection(Box<SetExpr>, Box<SetExpr>),
    Complement(Box<SetExpr>),
    Difference(Box<SetExpr>, Box<SetExpr>),
}

/// Membership rules that alternate over ever longer stretches of `ℕ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BlockSchedule {
    /// `n` belongs iff `k = ⌈log₂ log₂ n⌉` is odd; same as
    /// `General { boundary: Tower { base: 2 }, include: Odd }`.
    SuperExp,
    /// `n` belongs iff its binary expansion has odd length; same as
    /// `General { boundary: Geometric { base: 2 }, include: Even }`.
    BitLengthParity,
    /// `n` belongs iff its decimal expansion starts with the digit (1–9).
    LeadingDecimal(u8),
    /// Blocks `(b_{j-1}, b_j]` with `b_{-1} = 0`, block `j` included iff
    /// `j` has the given parity.
    General { boundary: Boundary, include: Parity },
}

/// Strictly increasing, unbounded block boundaries `b_0 < b_1 < …`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Boundary {
    /// `b_j = base^(base^j)`.
    Tower { base: u32 },
    /// `b_j = base^(j+1) − 1`.
    Geometric { base: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn matches(self, j: u32) -> bool {
        match self {
            Parity::Even => j.is_multiple_of(2),
            Parity::Odd => j % 2 == 1,
        }
    }

    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

impl Boundary {
    /// `b_j`, or `None` once it no longer fits in a `u128`.
    pub fn at(self, j: u32) -> Option<u128> {
        match self {
            Boundary::Tower { base } => {
                let exp = (base as u128).checked_pow(j)?;
                let exp = u32::try_from(exp).ok()?;
                (base as u128).checked_pow(exp)
            }
            Boundary::Geometric { base } => Some((base as u128).checked_pow(j + 1)? - 1),
        }
    }

    fn base(self) -> u32 {
        match self {
            Boundary::Tower { base } | Boundary::Geometric { base } => base,
        }
    }
}

impl BlockSchedule {
    /// Boundary/parity form, when the schedule has one.
    pub fn as_general(self) -> Option<(Boundary, Parity)> {
        match self {
            BlockSchedule::SuperExp => Some((Boundary::Tower { base: 2 }, Parity::Odd)),
            BlockSchedule::BitLengthParity => Some((Boundary::Geometric { base: 2 }, Parity::Even)),
            BlockSchedule::LeadingDecimal(_) => None,
            BlockSchedule::General { boundary, include } => Some((boundary, include)),
        }
    }

    pub fn validate(self) -> Result<()> {
        match self {
            BlockSchedule::LeadingDecimal(d) if !(1..=9).contains(&d) => {
                Err(Error::Precondition(format!("leading digit must be in 1..=9, got {d}")))
            }
            BlockSchedule::General { boundary, .. } if boundary.base() < 2 => Err(Error::Precondition(format!(
                "block base must be at least 2, got {}",
                boundary.base()
            ))),
            _ => Ok(()),
        }
    }

    pub fn contains(self, n: u128) -> bool {
        match self {
            BlockSchedule::LeadingDecimal(d) => leading_digit(n) == d as u128,
            _ => {
                let (boundary, include) = self.as_general().expect("general form");
                include.matches(block_index(boundary, n))
            }
        }
    }

    /// Number of members in `{1,…,n}`, by summing whole blocks.
    pub fn count_upto(self, n: u128) -> u128 {
        match self {
            BlockSchedule::LeadingDecimal(d) => {
                let d = d as u128;
                let mut count = 0u128;
                let mut scale = 1u128;
                while let Some(lo) = d.checked_mul(scale).filter(|&lo| lo <= n) {
                    let hi = (d + 1).checked_mul(scale).map(|v| v - 1).unwrap_or(u128::MAX);
                    count += hi.min(n) - lo + 1;
                    match scale.checked_mul(10) {
                        Some(s) => scale = s,
                        None => break,
                    }
                }
                count
            }
            _ => {
                let (boundary, include) = self.as_general().expect("general form");
                let mut count = 0u128;
                let mut prev = 0u128;
                let mut j = 0u32;
                loop {
                    match boundary.at(j) {
                        Some(b) if b < n => {
                            if include.matches(j) {
                                count += b - prev;
                            }
                            prev = b;
                        }
                        _ => {
                            if include.matches(j) {
                                count += n - prev;
                            }
                            return count;
                        }
                    }
                    j += 1;
                }
            }
        }
    }

    /// Calls `f(lo, hi)` for each maximal run `[lo, hi] ⊆ [1, n]` of members.
    pub(crate) fn for_each_run(self, n: u128, mut f: impl FnMut(u128, u128)) {
        match self {
            BlockSchedule::LeadingDecimal(d) => {
                let d = d as u128;
                let mut scale = 1u128;
                while let Some(lo) = d.checked_mul(scale) {
                    if lo > n {
                        break;
                    }
                    let hi = (d + 1).checked_mul(scale).map(|v| v - 1).unwrap_or(u128::MAX);
                    f(lo, hi.min(n));
                    match scale.checked_mul(10) {
                        Some(s) => scale = s,
                        None => break,
                    }
                }
            }
            _ => {
                let (boundary, include) = self.as_general().expect("general form");
                let mut prev = 0u128;
                let mut j = 0u32;
                while prev < n {
                    let b = boundary.at(j).unwrap_or(u128::MAX).min(n);
                    if include.matches(j) {
                        f(prev + 1, b);
                    }
                    prev = b;
                    j += 1;
                }
            }
        }
    }
}

/// Smallest `j` with `n ≤ b_j`.
pub fn block_index(boundary: Boundary, n: u128) -> u32 {
    let mut j = 0;
    while let Some(b) = boundary.at(j) {
        if n <= b {
            return j;
        }
        j += 1;
    }
    j
}

fn leading_digit(mut n: u128) -> u128 {
    while n >= 10 {
        n /= 10;
    }
    n
}

/// Exact `⌊n^{1/p}⌋`.
pub fn integer_root(n: u128, p: u32) -> u128 {
    if n < 2 || p == 1 {
        return n;
    }
    let mut r = (n as f64).powf(1.0 / p as f64).round() as u128;
    let fits = |r: u128| r.checked_pow(p).is_some_and(|v| v <= n);
    while r > 0 && !fits(r) {
        r -= 1;
    }
    while fits(r + 1) {
        r += 1;
    }
    r
}

/// Finiteness of a set, with exact element counts where known.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FinitenessClass {
    Finite(u64),
    /// Co-finite with this many excluded elements.
    CoFinite(u64),
    InfiniteCoInfinite,
    Unknown,
}

/// `finite 3`, `cofinite 2`, `infinite-coinfinite`, `unknown`.
impl fmt::Display for FinitenessClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FinitenessClass::Finite(k) => write!(f, "finite {k}"),
            FinitenessClass::CoFinite(k) => write!(f, "cofinite {k}"),
            FinitenessClass::InfiniteCoInfinite => f.write_str("infinite-coinfinite"),
            FinitenessClass::Unknown => f.write_str("unknown"),
        }
    }
}

/// Classification carrying the exceptional elements themselves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Fin {
    Finite(Vec<u64>),
    CoFinite(Vec<u64>),
    Infinite,
    Unknown,
}

impl Fin {
    fn complement(self) -> Fin {
        match self {
            Fin::Finite(v) => Fin::CoFinite(v),
            Fin::CoFinite(v) => Fin::Finite(v),
            other => other,
        }
    }

    pub(crate) fn class(&self) -> FinitenessClass {
        match self {
            Fin::Finite(v) => FinitenessClass::Finite(v.len() as u64),
            Fin::CoFinite(v) => FinitenessClass::CoFinite(v.len() as u64),
            Fin::Infinite => FinitenessClass::InfiniteCoInfinite,
            Fin::Unknown => FinitenessClass::Unknown,
        }
    }
}

impl SetExpr {
    pub fn finite<I: IntoIterator<Item = u64>>(elements: I) -> Result<SetExpr> {
        Ok(SetExpr::Finite(checked_elements(elements)?))
    }

    pub fn cofinite<I: IntoIterator<Item = u64>>(excluded: I) -> Result<SetExpr> {
        Ok(SetExpr::CoFinite(checked_elements(excluded)?))
    }

    pub fn arith_prog(modulus: u64, residue: u64) -> Result<SetExpr> {
        if modulus == 0 || residue >= modulus {
            return Err(Error::Precondition(format!(
                "residue class needs 0 ≤ i < a, got a = {modulus}, i = {residue}"
            )));
        }
        Ok(SetExpr::ArithProg { modulus, residue })
    }

    pub fn powers(p: u32) -> Result<SetExpr> {
        if p < 2 {
            return Err(Error::Precondition(format!("power must be at least 2, got {p}")));
        }
        Ok(SetExpr::Powers(p))
    }

    pub fn blocks(schedule: BlockSchedule) -> Result<SetExpr> {
        schedule.validate()?;
        Ok(SetExpr::BlockSet(schedule))
    }

    pub fn superexp() -> SetExpr {
        SetExpr::BlockSet(BlockSchedule::SuperExp)
    }

    pub fn evens() -> SetExpr {
        SetExpr::ArithProg { modulus: 2, residue: 0 }
    }

    pub fn odds() -> SetExpr {
        SetExpr::ArithProg { modulus: 2, residue: 1 }
    }

    pub fn union(a: SetExpr, b: SetExpr) -> SetExpr {
        SetExpr::Union(Box::new(a), Box::new(b))
    }

    pub fn intersection(a: SetExpr, b: SetExpr) -> SetExpr {
        SetExpr::Intersection(Box::new(a), Box::new(b))
    }

    pub fn difference(a: SetExpr, b: SetExpr) -> SetExpr {
        SetExpr::Difference(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: SetExpr) -> SetExpr {
        SetExpr::Complement(Box::new(a))
    }

    /// Checks constructor invariants throughout the tree.
    pub fn validate(&self) -> Result<()> {
        match self {
            SetExpr::Finite(v) | SetExpr::CoFinite(v) => {
                if v.first() == Some(&0) || v.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(Error::Precondition(
                        "element lists must be strictly increasing and ≥ 1".into(),
                    ));
                }
                Ok(())
            }
            SetExpr::ArithProg { modulus, residue } => SetExpr::arith_prog(*modulus, *residue).map(|_| ()),
            SetExpr::Powers(p) => SetExpr::powers(*p).map(|_| ()),
            SetExpr::BlockSet(s) => s.validate(),
            SetExpr::Union(a, b) | SetExpr::Intersection(a, b) | SetExpr::Difference(a, b) => {
                a.validate()?;
                b.validate()
            }
            SetExpr::Complement(a) => a.validate(),
            SetExpr::Empty | SetExpr::Full | SetExpr::Primes => Ok(()),
        }
    }

    /// `χ_n(S)`: whether `n ∈ S`. Pure and total; `n = 0` is never a member.
    pub fn contains(&self, n: u128) -> bool {
        if n == 0 {
            return false;
        }
        match self {
            SetExpr::Empty => false,
            SetExpr::Full => true,
            SetExpr::Finite(v) => u64::try_from(n).is_ok_and(|n| v.binary_search(&n).is_ok()),
            SetExpr::CoFinite(v) => !u64::try_from(n).is_ok_and(|n| v.binary_search(&n).is_ok()),
            SetExpr::ArithProg { modulus, residue } => n % *modulus as u128 == *residue as u128,
            SetExpr::Powers(p) => integer_root(n, *p).pow(*p) == n,
            SetExpr::Primes => primes::is_prime(n),
            SetExpr::BlockSet(s) => s.contains(n),
            SetExpr::Union(a, b) => a.contains(n) || b.contains(n),
            SetExpr::Intersection(a, b) => a.contains(n) && b.contains(n),
            SetExpr::Complement(a) => !a.contains(n),
            SetExpr::Difference(a, b) => a.contains(n) && !b.contains(n),
        }
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            SetExpr::Union(a, b) | SetExpr::Intersection(a, b) | SetExpr::Difference(a, b) => 1 + a.size() + b.size(),
            SetExpr::Complement(a) => 1 + a.size(),
            _ => 1,
        }
    }
}

fn checked_elements<I: IntoIterator<Item = u64>>(elements: I) -> Result<Vec<u64>> {
    let set: BTreeSet<u64> = elements.into_iter().collect();
    if set.contains(&0) {
        return Err(Error::Precondition("ℕ starts at 1; 0 is not an element".into()));
    }
    Ok(set.into_iter().collect())
}

/// `χ_n(S)` as a bit.
pub fn membership(expr: &SetExpr, n: u128) -> u8 {
    expr.contains(n) as u8
}

/// `S ∩ {1,…,n}` in increasing order.
pub fn enumerate_prefix(expr: &SetExpr, n: u64, limits: &Limits) -> Result<Vec<u64>> {
    let bits = prefix_bits(expr, n, limits)?;
    Ok(bits.iter_ones().collect())
}

/// Membership bitmap over `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixBits {
    n: u64,
    words: Vec<u64>,
}

impl PrefixBits {
    fn zeros(n: u64) -> Self {
        PrefixBits {
            n,
            words: vec![0; (n as usize + 1).div_ceil(64)],
        }
    }

    fn ones(n: u64) -> Self {
        let mut b = PrefixBits {
            n,
            words: vec![u64::MAX; (n as usize + 1).div_ceil(64)],
        };
        b.mask();
        b
    }

    /// Clears bit 0 and everything above `n`.
    fn mask(&mut self) {
        self.words[0] &= !1;
        let tail = (self.n as usize + 1) % 64;
        if tail != 0 {
            let last = self.words.len() - 1;
            self.words[last] &= (1u64 << tail) - 1;
        }
    }

    fn set(&mut self, m: u64) {
        self.words[(m / 64) as usize] |= 1 << (m % 64);
    }

    fn clear(&mut self, m: u64) {
        self.words[(m / 64) as usize] &= !(1 << (m % 64));
    }

    pub fn get(&self, m: u64) -> bool {
        m <= self.n && self.words[(m / 64) as usize] >> (m % 64) & 1 == 1
    }

    pub fn len(&self) -> u64 {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as u64;
                w &= w - 1;
                Some(i as u64 * 64 + t)
            })
        })
    }

    /// `counts[m] = |S ∩ {1,…,m}|` for `0 ≤ m ≤ n`.
    pub fn cumulative(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.n as usize + 1);
        let mut acc = 0u64;
        for m in 0..=self.n {
            acc += self.get(m) as u64;
            out.push(acc);
        }
        out
    }

    fn zip(mut self, other: &PrefixBits, op: impl Fn(u64, u64) -> u64) -> Self {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a = op(*a, *b);
        }
        self.mask();
        self
    }
}

/// Bitmap of `S ∩ {1,…,n}`, built atom by atom with word-level combinators.
pub fn prefix_bits(expr: &SetExpr, n: u64, limits: &Limits) -> Result<PrefixBits> {
    limits.check_enum(n as u128)?;
    Ok(build_bits(expr, n))
}

fn build_bits(expr: &SetExpr, n: u64) -> PrefixBits {
    match expr {
        SetExpr::Empty => PrefixBits::zeros(n),
        SetExpr::Full => PrefixBits::ones(n),
        SetExpr::Finite(v) => {
            let mut b = PrefixBits::zeros(n);
            v.iter().take_while(|&&m| m <= n).for_each(|&m| b.set(m));
            b
        }
        SetExpr::CoFinite(v) => {
            let mut b = PrefixBits::ones(n);
            v.iter().take_while(|&&m| m <= n).for_each(|&m| b.clear(m));
            b
        }
        SetExpr::ArithProg { modulus, residue } => {
            let mut b = PrefixBits::zeros(n);
            let first = if *residue == 0 { *modulus } else { *residue };
            let mut m = first;
            while m <= n {
                b.set(m);
                m += modulus;
            }
            b
        }
        SetExpr::Powers(p) => {
            let mut b = PrefixBits::zeros(n);
            let mut base = 1u64;
            while let Some(v) = base.checked_pow(*p).filter(|&v| v <= n) {
                b.set(v);
                base += 1;
            }
            b
        }
        SetExpr::Primes => {
            let mut b = PrefixBits::zeros(n);
            for (m, &is_p) in primes::sieve(n).iter().enumerate() {
                if is_p {
                    b.set(m as u64);
                }
            }
            b
        }
        SetExpr::BlockSet(s) => {
            let mut b = PrefixBits::zeros(n);
            s.for_each_run(n as u128, |lo, hi| {
                for m in lo as u64..=hi as u64 {
                    b.set(m);
                }
            });
            b
        }
        SetExpr::Union(x, y) => build_bits(x, n).zip(&build_bits(y, n), |a, b| a | b),
        SetExpr::Intersection(x, y) => build_bits(x, n).zip(&build_bits(y, n), |a, b| a & b),
        SetExpr::Difference(x, y) => build_bits(x, n).zip(&build_bits(y, n), |a, b| a & !b),
        SetExpr::Complement(x) => {
            let inner = build_bits(x, n);
            PrefixBits::ones(n).zip(&inner, |a, b| a & !b)
        }
    }
}

/// Exact finiteness class where a symbolic rule certifies it.
pub fn classify_finiteness(expr: &SetExpr) -> FinitenessClass {
    classify(expr).class()
}

pub(crate) fn classify(expr: &SetExpr) -> Fin {
    match classify_raw(expr) {
        Fin::Unknown => {}
        fin => return fin,
    }
    match classify_raw(&normalize(expr)) {
        Fin::Unknown => {}
        fin => return fin,
    }
    if let fin @ (Fin::Finite(_) | Fin::CoFinite(_) | Fin::Infinite) = classify_raw(&complement_of(normalize(expr))) {
        return fin.complement();
    }
    let d = decompose(expr);
    let exceptions = |core: Vec<u64>, extra: &[u64], keep: bool| -> Vec<u64> {
        let all: BTreeSet<u64> = core.into_iter().chain(extra.iter().copied()).collect();
        all.into_iter().filter(|&m| expr.contains(m as u128) == keep).collect()
    };
    match classify_raw(&d.core) {
        Fin::Finite(v) => Fin::Finite(exceptions(v, &d.plus, true)),
        Fin::CoFinite(v) => Fin::CoFinite(exceptions(v, &d.minus, false)),
        fin => fin,
    }
}

fn classify_raw(expr: &SetExpr) -> Fin {
    if let Some(p) = periodic::periodic_form(expr) {
        return p.finiteness();
    }
    match expr {
        SetExpr::Empty => Fin::Finite(vec![]),
        SetExpr::Full => Fin::CoFinite(vec![]),
        SetExpr::Finite(v) => Fin::Finite(v.clone()),
        SetExpr::CoFinite(v) => Fin::CoFinite(v.clone()),
        SetExpr::ArithProg { modulus: 1, .. } => Fin::CoFinite(vec![]),
        SetExpr::ArithProg { .. } | SetExpr::Powers(_) | SetExpr::Primes | SetExpr::BlockSet(_) => Fin::Infinite,
        SetExpr::Complement(a) => classify_raw(a).complement(),
        SetExpr::Union(a, b) => match (classify_raw(a), classify_raw(b)) {
            (Fin::CoFinite(e), _) => Fin::CoFinite(filter_out(&e, b)),
            (_, Fin::CoFinite(e)) => Fin::CoFinite(filter_out(&e, a)),
            (Fin::Finite(f1), Fin::Finite(f2)) => Fin::Finite(merge(&f1, &f2)),
            (Fin::Finite(_), Fin::Infinite) | (Fin::Infinite, Fin::Finite(_)) => Fin::Infinite,
            _ => intersect_class(&complement_of(normalize(a)), &complement_of(normalize(b)), false).complement(),
        },
        SetExpr::Intersection(a, b) => intersect_class(a, b, false),
        SetExpr::Difference(a, b) => intersect_class(a, b, true),
    }
}

/// Classifies `a ∩ b` (or `a ∖ b` when `negate_b`).
fn intersect_class(a: &SetExpr, b: &SetExpr, negate_b: bool) -> Fin {
    if let SetExpr::Complement(inner) = b {
        return intersect_class(a, inner, !negate_b);
    }
    let ca = classify_raw(a);
    let cb = if negate_b {
        classify_raw(b).complement()
    } else {
        classify_raw(b)
    };
    let in_b = |m: u64| b.contains(m as u128) != negate_b;
    match (ca, cb) {
        (Fin::Finite(f), _) => Fin::Finite(f.into_iter().filter(|&m| in_b(m)).collect()),
        (_, Fin::Finite(f)) => Fin::Finite(f.into_iter().filter(|&m| a.contains(m as u128)).collect()),
        (Fin::CoFinite(e1), Fin::CoFinite(e2)) => Fin::CoFinite(merge(&e1, &e2)),
        (Fin::CoFinite(_), Fin::Infinite) | (Fin::Infinite, Fin::CoFinite(_)) => Fin::Infinite,
        (Fin::Infinite, Fin::Infinite) if runs_meet_period(a, b) || runs_meet_period(b, a) => Fin::Infinite,
        (Fin::Infinite, Fin::Infinite) => match (a, b, negate_b) {
            (SetExpr::Powers(_), SetExpr::Powers(_), false) => Fin::Infinite,
            (SetExpr::Powers(p), SetExpr::Powers(q), true) if p % q == 0 => Fin::Finite(vec![]),
            (SetExpr::Powers(_), SetExpr::Powers(_), true) => Fin::Infinite,
            (SetExpr::Primes, SetExpr::Powers(_), false) | (SetExpr::Powers(_), SetExpr::Primes, false) => {
                Fin::Finite(vec![])
            }
            (SetExpr::Primes, SetExpr::Powers(_), true) | (SetExpr::Powers(_), SetExpr::Primes, true) => Fin::Infinite,
            _ => Fin::Unknown,
        },
        _ => Fin::Unknown,
    }
}

/// Blocks grow without bound, so a block set or its complement meets every
/// infinite periodic set infinitely often.
fn runs_meet_period(runs: &SetExpr, period: &SetExpr) -> bool {
    let blocky = match runs {
        SetExpr::BlockSet(_) => true,
        SetExpr::Complement(x) => matches!(**x, SetExpr::BlockSet(_)),
        _ => false,
    };
    blocky && periodic::periodic_form(period).is_some()
}

fn filter_out(excluded: &[u64], other: &SetExpr) -> Vec<u64> {
    excluded
        .iter()
        .copied()
        .filter(|&m| !other.contains(m as u128))
        .collect()
}

fn merge(a: &[u64], b: &[u64]) -> Vec<u64> {
    let set: BTreeSet<u64> = a.iter().chain(b).copied().collect();
    set.into_iter().collect()
}

/// Applies sound Boolean rewrites bottom-up; membership is preserved.
///
/// Complements are pushed to the leaves (De Morgan), `Empty`/`Full` are
/// absorbed, finite and co-finite operands are merged, idempotent and
/// complementary pairs collapse.
pub fn normalize(expr: &SetExpr) -> SetExpr {
    match expr {
        SetExpr::Finite(v) if v.is_empty() => SetExpr::Empty,
        SetExpr::CoFinite(v) if v.is_empty() => SetExpr::Full,
        SetExpr::ArithProg { modulus: 1, .. } => SetExpr::Full,
        SetExpr::Complement(a) => complement_of(normalize(a)),
        SetExpr::Union(a, b) => union_of(normalize(a), normalize(b)),
        SetExpr::Intersection(a, b) => intersection_of(normalize(a), normalize(b)),
        SetExpr::Difference(a, b) => difference_of(normalize(a), normalize(b)),
        other => other.clone(),
    }
}

fn finite_of(v: Vec<u64>) -> SetExpr {
    if v.is_empty() {
        SetExpr::Empty
    } else {
        SetExpr::Finite(v)
    }
}

fn cofinite_of(v: Vec<u64>) -> SetExpr {
    if v.is_empty() {
        SetExpr::Full
    } else {
        SetExpr::CoFinite(v)
    }
}

/// Complement of an already normalized expression.
fn complement_of(a: SetExpr) -> SetExpr {
    match a {
        SetExpr::Empty => SetExpr::Full,
        SetExpr::Full => SetExpr::Empty,
        SetExpr::Finite(v) => cofinite_of(v),
        SetExpr::CoFinite(v) => finite_of(v),
        SetExpr::Complement(inner) => *inner,
        SetExpr::Union(x, y) => intersection_of(complement_of(*x), complement_of(*y)),
        SetExpr::Intersection(x, y) => union_of(complement_of(*x), complement_of(*y)),
        SetExpr::Difference(x, y) => union_of(complement_of(*x), *y),
        other => SetExpr::not(other),
    }
}

fn is_complement_pair(a: &SetExpr, b: &SetExpr) -> bool {
    matches!(a, SetExpr::Complement(x) if **x == *b) || matches!(b, SetExpr::Complement(y) if **y == *a)
}

fn union_of(a: SetExpr, b: SetExpr) -> SetExpr {
    match (a, b) {
        (SetExpr::Empty, x) | (x, SetExpr::Empty) => x,
        (SetExpr::Full, _) | (_, SetExpr::Full) => SetExpr::Full,
        (SetExpr::Finite(f1), SetExpr::Finite(f2)) => finite_of(merge(&f1, &f2)),
        (SetExpr::CoFinite(e1), SetExpr::CoFinite(e2)) => {
            cofinite_of(e1.into_iter().filter(|m| e2.binary_search(m).is_ok()).collect())
        }
        (SetExpr::CoFinite(e), x) | (x, SetExpr::CoFinite(e)) => cofinite_of(filter_out(&e, &x)),
        (x, y) if x == y => x,
        (x, y) if is_complement_pair(&x, &y) => SetExpr::Full,
        (x, y) => SetExpr::union(x, y),
    }
}

fn intersection_of(a: SetExpr, b: SetExpr) -> SetExpr {
    match (a, b) {
        (SetExpr::Empty, _) | (_, SetExpr::Empty) => SetExpr::Empty,
        (SetExpr::Full, x) | (x, SetExpr::Full) => x,
        (SetExpr::Finite(f), x) | (x, SetExpr::Finite(f)) => {
            finite_of(f.into_iter().filter(|&m| x.contains(m as u128)).collect())
        }
        (SetExpr::CoFinite(e1), SetExpr::CoFinite(e2)) => cofinite_of(merge(&e1, &e2)),
        (x, y) if x == y => x,
        (x, y) if is_complement_pair(&x, &y) => SetExpr::Empty,
        (x, y) => SetExpr::intersection(x, y),
    }
}

fn difference_of(a: SetExpr, b: SetExpr) -> SetExpr {
    match (a, b) {
        (SetExpr::Empty, _) | (_, SetExpr::Full) => SetExpr::Empty,
        (x, SetExpr::Empty) => x,
        (SetExpr::Full, y) => complement_of(y),
        (SetExpr::Finite(f), y) => finite_of(f.into_iter().filter(|&m| !y.contains(m as u128)).collect()),
        (x, SetExpr::Finite(f)) => intersection_of(x, cofinite_of(f)),
        (x, SetExpr::CoFinite(e)) => intersection_of(x, finite_of(e)),
        (x, y) if x == y => SetExpr::Empty,
        (x, SetExpr::Complement(y)) => intersection_of(x, *y),
        (x, y) if is_complement_pair(&x, &y) => x,
        (x, y) => SetExpr::difference(x, y),
    }
}

/// `expr = (core ∪ plus) ∖ minus` with `plus ∩ core = ∅` and `minus ⊆ core`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Decomposition {
    pub core: SetExpr,
    pub plus: Vec<u64>,
    pub minus: Vec<u64>,
}

impl Decomposition {
    /// Eventual value of `f_n(expr) − f_n(core)`.
    pub fn offset(&self) -> i128 {
        self.plus.len() as i128 - self.minus.len() as i128
    }
}

/// Splits off the finitely many points where `expr` differs from a
/// structurally simpler core.
pub(crate) fn decompose(expr: &SetExpr) -> Decomposition {
    match expr {
        SetExpr::Finite(v) => Decomposition {
            core: SetExpr::Empty,
            plus: v.clone(),
            minus: vec![],
        },
        SetExpr::CoFinite(v) => Decomposition {
            core: SetExpr::Full,
            plus: vec![],
            minus: v.clone(),
        },
        SetExpr::Complement(a) => {
            let d = decompose(a);
            Decomposition {
                core: complement_of(d.core),
                plus: d.minus,
                minus: d.plus,
            }
        }
        SetExpr::Union(a, b) | SetExpr::Intersection(a, b) | SetExpr::Difference(a, b) => {
            let (da, db) = (decompose(a), decompose(b));
            let core = match expr {
                SetExpr::Union(..) => union_of(da.core, db.core),
                SetExpr::Intersection(..) => intersection_of(da.core, db.core),
                _ => difference_of(da.core, db.core),
            };
            let candidates: BTreeSet<u64> = [da.plus, da.minus, db.plus, db.minus].into_iter().flatten().collect();
            let mut plus = vec![];
            let mut minus = vec![];
            for m in candidates {
                match (expr.contains(m as u128), core.contains(m as u128)) {
                    (true, false) => plus.push(m),
                    (false, true) => minus.push(m),
                    _ => {}
                }
            }
            Decomposition { core, plus, minus }
        }
        other => Decomposition {
            core: other.clone(),
            plus: vec![],
            minus: vec![],
        },
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> Option<u64> {
    let g = a.gcd(&b);
    (a / g).checked_mul(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn superexp_membership_examples() {
        let s = SetExpr::superexp();
        assert_eq!(membership(&s, 3), 1);
        assert_eq!(membership(&s, 2), 0);
        assert_eq!(membership(&s, 1), 0);
        assert_eq!(membership(&s, 16), 0);
        assert_eq!(membership(&s, 17), 1);
        assert_eq!(membership(&s, 256), 1);
        assert_eq!(membership(&s, 257), 0);
        // boundary 2^(2^k) belongs iff k odd
        for k in 0..7u32 {
            let n = 1u128 << (1u32 << k);
            assert_eq!(s.contains(n), k % 2 == 1, "k = {k}");
        }
    }

    #[test]
    fn arith_and_complement() {
        let e = SetExpr::evens();
        assert_eq!(membership(&e, 7), 0);
        assert_eq!(membership(&SetExpr::not(e), 7), 1);
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(
            enumerate_prefix(&SetExpr::superexp(), 20, &lim()).unwrap(),
            vec![3, 4, 17, 18, 19, 20]
        );
        assert_eq!(
            enumerate_prefix(&SetExpr::arith_prog(3, 1).unwrap(), 10, &lim()).unwrap(),
            vec![1, 4, 7, 10]
        );
        let u = SetExpr::union(SetExpr::finite([5, 9]).unwrap(), SetExpr::Powers(2));
        let brute: Vec<u64> = (1..=10u64)
            .filter(|&m| (m == 5 || m == 9) || [1, 4, 9].contains(&m))
            .collect();
        assert_eq!(enumerate_prefix(&u, 10, &lim()).unwrap(), brute);
        assert_eq!(brute, vec![1, 4, 5, 9]);
    }

    #[test]
    fn enumeration_cap() {
        let small = Limits { max_enum: 100 };
        let err = enumerate_prefix(&SetExpr::Primes, 101, &small).unwrap_err();
        assert!(err.is_resource());
        assert_eq!(enumerate_prefix(&SetExpr::Primes, 100, &small).unwrap().len(), 25);
    }

    #[test]
    fn named_blocks() {
        let bits = SetExpr::BlockSet(BlockSchedule::BitLengthParity);
        let got = enumerate_prefix(&bits, 20, &lim()).unwrap();
        assert_eq!(got, vec![1, 4, 5, 6, 7, 16, 17, 18, 19, 20]);
        let lead = SetExpr::BlockSet(BlockSchedule::LeadingDecimal(1));
        let got = enumerate_prefix(&lead, 120, &lim()).unwrap();
        let brute: Vec<u64> = (1..=120u64).filter(|m| m.to_string().starts_with('1')).collect();
        assert_eq!(got, brute);
    }

    #[test]
    fn general_forms_agree_with_named() {
        let tower = SetExpr::BlockSet(BlockSchedule::General {
            boundary: Boundary::Tower { base: 2 },
            include: Parity::Odd,
        });
        let geo = SetExpr::BlockSet(BlockSchedule::General {
            boundary: Boundary::Geometric { base: 2 },
            include: Parity::Even,
        });
        for n in 1..5000u128 {
            assert_eq!(tower.contains(n), SetExpr::superexp().contains(n));
            assert_eq!(
                geo.contains(n),
                SetExpr::BlockSet(BlockSchedule::BitLengthParity).contains(n)
            );
        }
    }

    #[test]
    fn block_counts_match_bitmaps() {
        let schedules = [
            BlockSchedule::SuperExp,
            BlockSchedule::BitLengthParity,
            BlockSchedule::LeadingDecimal(1),
            BlockSchedule::LeadingDecimal(7),
            BlockSchedule::General {
                boundary: Boundary::Geometric { base: 3 },
                include: Parity::Odd,
            },
            BlockSchedule::General {
                boundary: Boundary::Tower { base: 3 },
                include: Parity::Even,
            },
        ];
        for s in schedules {
            let cum = prefix_bits(&SetExpr::BlockSet(s), 70_000, &lim()).unwrap().cumulative();
            for n in 1..=70_000u64 {
                assert_eq!(s.count_upto(n as u128), cum[n as usize] as u128, "{s:?} at {n}");
            }
        }
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify_finiteness(&SetExpr::finite([1, 2]).unwrap()),
            FinitenessClass::Finite(2)
        );
        let disjoint = SetExpr::intersection(SetExpr::evens(), SetExpr::odds());
        assert_eq!(classify_finiteness(&disjoint), FinitenessClass::Finite(0));
        assert_eq!(
            classify_finiteness(&SetExpr::cofinite([5]).unwrap()),
            FinitenessClass::CoFinite(1)
        );
        assert_eq!(
            classify_finiteness(&SetExpr::superexp()),
            FinitenessClass::InfiniteCoInfinite
        );
        let prime_squares = SetExpr::intersection(SetExpr::Primes, SetExpr::Powers(2));
        assert_eq!(classify_finiteness(&prime_squares), FinitenessClass::Finite(0));
        let open = SetExpr::intersection(SetExpr::Primes, SetExpr::superexp());
        assert_eq!(classify_finiteness(&open), FinitenessClass::Unknown);
        let non_squares = SetExpr::difference(SetExpr::Powers(3), SetExpr::Powers(2));
        assert_eq!(classify_finiteness(&non_squares), FinitenessClass::InfiniteCoInfinite);
        let empty = SetExpr::difference(SetExpr::Powers(4), SetExpr::Powers(2));
        assert_eq!(classify_finiteness(&empty), FinitenessClass::Finite(0));
        let fin = SetExpr::intersection(SetExpr::Primes, SetExpr::finite([2, 4, 5, 9]).unwrap());
        assert_eq!(classify_finiteness(&fin), FinitenessClass::Finite(2));
        let cof = SetExpr::union(SetExpr::superexp(), SetExpr::cofinite([3, 5, 6]).unwrap());
        assert_eq!(classify_finiteness(&cof), FinitenessClass::CoFinite(2));
        let runs = SetExpr::union(SetExpr::superexp(), SetExpr::arith_prog(3, 1).unwrap());
        assert_eq!(classify_finiteness(&runs), FinitenessClass::InfiniteCoInfinite);
    }

    #[test]
    fn normalize_examples() {
        let dbl = SetExpr::not(SetExpr::not(SetExpr::Primes));
        assert_eq!(normalize(&dbl), SetExpr::Primes);
        let u = SetExpr::union(SetExpr::finite([2]).unwrap(), SetExpr::finite([3, 5]).unwrap());
        assert_eq!(normalize(&u), SetExpr::Finite(vec![2, 3, 5]));
        let i = SetExpr::intersection(SetExpr::superexp(), SetExpr::Full);
        assert_eq!(normalize(&i), SetExpr::superexp());
        let x = SetExpr::union(SetExpr::Primes, SetExpr::not(SetExpr::Primes));
        assert_eq!(normalize(&x), SetExpr::Full);
    }

    #[test]
    fn decomposition_recovers_core() {
        let s = SetExpr::difference(SetExpr::superexp(), SetExpr::finite([3, 4, 5]).unwrap());
        let d = decompose(&s);
        assert_eq!(d.core, SetExpr::superexp());
        assert_eq!(d.plus, Vec::<u64>::new());
        assert_eq!(d.minus, vec![3, 4]);
        let t = SetExpr::not(SetExpr::union(SetExpr::Powers(2), SetExpr::finite([2]).unwrap()));
        let d = decompose(&t);
        assert_eq!(d.core, SetExpr::not(SetExpr::Powers(2)));
        assert_eq!(d.minus, vec![2]);
    }

    #[test]
    fn integer_roots() {
        assert_eq!(integer_root(1 << 64, 2), 1 << 32);
        assert_eq!(integer_root((1 << 64) - 1, 2), (1 << 32) - 1);
        assert_eq!(integer_root(u128::MAX, 2), u64::MAX as u128);
        assert_eq!(integer_root(26, 3), 2);
        assert_eq!(integer_root(27, 3), 3);
    }

    #[test]
    fn constructor_validation() {
        assert!(SetExpr::arith_prog(3, 3).is_err());
        assert!(SetExpr::arith_prog(0, 0).is_err());
        assert!(SetExpr::powers(1).is_err());
        assert!(SetExpr::finite([0, 1]).is_err());
        assert_eq!(SetExpr::finite([3, 1, 3]).unwrap(), SetExpr::Finite(vec![1, 3]));
        assert!(SetExpr::blocks(BlockSchedule::LeadingDecimal(0)).is_err());
    }
}
