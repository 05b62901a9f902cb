//! c-numerosity (counting sequences modulo the co-finite filter) and
//! symbolic α-numerosity.
//!
//! No ultrafilter is ever built. Where the value of `num(S)` depends on the
//! choice of ultrafilter, the answer is a [`NumerosityAnswer::Range`]: the
//! hull of what every admissible choice can produce.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::alpha::AlphaExpr;
use crate::periodic::periodic_form;
use crate::seq::{self, compare_sums, EventualComparison, SeqSum, SizeSequence};
use crate::set::{classify, decompose, Fin};
use crate::{BlockSchedule, Boundary, Limits, Parity, SetExpr};

/// `[f(S)]_ℱ`, represented by any sequence eventually equal to `f(S)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnumClass {
    repr: SeqSum,
}

impl CnumClass {
    pub fn representative(&self) -> &SeqSum {
        &self.repr
    }

    /// The zero class, `cnum(∅)`.
    pub fn zero() -> Self {
        CnumClass { repr: SeqSum::zero() }
    }

    /// Same class, with the first terms of the representative replaced.
    pub fn with_prefix(self, values: Vec<u128>) -> Self {
        CnumClass {
            repr: self.repr.with_prefix(values),
        }
    }

    pub fn eval(&self, n: u128) -> crate::Result<u128> {
        self.repr.eval(n)
    }
}

pub fn cnum(expr: &SetExpr) -> CnumClass {
    cnum_with(expr, Limits::default())
}

pub fn cnum_with(expr: &SetExpr, limits: Limits) -> CnumClass {
    CnumClass {
        repr: SeqSum::single(SizeSequence::new(expr.clone(), limits)),
    }
}

/// Componentwise sum.
pub fn cnum_add(a: &CnumClass, b: &CnumClass) -> CnumClass {
    CnumClass {
        repr: a.repr.add(&b.repr),
    }
}

pub fn cnum_compare(a: &CnumClass, b: &CnumClass, horizon: u128) -> EventualComparison {
    compare_sums(&a.repr, &b.repr, horizon)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Profile {
    /// `num(M_{a,i}) = α/a` and `num(powers p) = α^{1/p}` stipulated.
    Canonical,
    /// Only the four axioms.
    Free,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NumerosityAnswer {
    Exact(AlphaExpr),
    /// Every admissible value lies in `[lower.0, lower.1]` or in
    /// `[upper.0, upper.1]`, depending on the ultrafilter.
    Range {
        lower: (AlphaExpr, AlphaExpr),
        upper: (AlphaExpr, AlphaExpr),
    },
    Unknown,
}

impl NumerosityAnswer {
    /// Range between two single values.
    fn between(lo: AlphaExpr, hi: AlphaExpr) -> Self {
        NumerosityAnswer::Range {
            lower: (lo.clone(), lo),
            upper: (hi.clone(), hi),
        }
    }

    pub fn exact(&self) -> Option<&AlphaExpr> {
        match self {
            NumerosityAnswer::Exact(x) => Some(x),
            _ => None,
        }
    }

    fn map(self, f: impl Fn(&AlphaExpr) -> AlphaExpr) -> Self {
        match self {
            NumerosityAnswer::Exact(x) => NumerosityAnswer::Exact(f(&x)),
            NumerosityAnswer::Range { lower, upper } => NumerosityAnswer::Range {
                lower: (f(&lower.0), f(&lower.1)),
                upper: (f(&upper.0), f(&upper.1)),
            },
            NumerosityAnswer::Unknown => NumerosityAnswer::Unknown,
        }
    }

    fn shift(self, k: i128) -> Self {
        let k = AlphaExpr::constant(k);
        self.map(|x| x + &k)
    }

    /// `α − x`, which reverses the brackets.
    fn mirror(self) -> Self {
        let a = AlphaExpr::alpha();
        match self.map(|x| &a - x) {
            NumerosityAnswer::Range { lower, upper } => NumerosityAnswer::Range {
                lower: (upper.1, upper.0),
                upper: (lower.1, lower.0),
            },
            other => other,
        }
    }
}

/// `exact 1/2 a`, `range 1/2 a − 1 .. 1/2 a`,
/// `range [sqrt(a) − a^(1/4), sqrt(a)] .. [a − sqrt(a), a − sqrt(a) + a^(1/4)]`.
impl fmt::Display for NumerosityAnswer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NumerosityAnswer::Exact(x) => write!(f, "exact {x}"),
            NumerosityAnswer::Range { lower, upper } if lower.0 == lower.1 && upper.0 == upper.1 => {
                write!(f, "range {} .. {}", lower.0, upper.0)
            }
            NumerosityAnswer::Range { lower, upper } => {
                write!(f, "range [{}, {}] .. [{}, {}]", lower.0, lower.1, upper.0, upper.1)
            }
            NumerosityAnswer::Unknown => f.write_str("unknown"),
        }
    }
}

pub fn alpha_numerosity(expr: &SetExpr, profile: Profile) -> NumerosityAnswer {
    match profile {
        Profile::Canonical => match canonical(expr, CANONICAL_DEPTH) {
            Some(x) => NumerosityAnswer::Exact(x),
            None => match free(expr) {
                r @ NumerosityAnswer::Range { .. } if !has_periodic_part(expr) => r,
                NumerosityAnswer::Exact(x) => NumerosityAnswer::Exact(x),
                _ => NumerosityAnswer::Unknown,
            },
        },
        Profile::Free => free(expr),
    }
}

/// Ranges of periodic sets are superseded by the canonical stipulation.
fn has_periodic_part(expr: &SetExpr) -> bool {
    periodic_form(&decompose(expr).core).is_some()
}

fn alpha_times(q: BigRational) -> AlphaExpr {
    AlphaExpr::alpha().scale(&q)
}

const CANONICAL_DEPTH: u32 = 12;

fn canonical(expr: &SetExpr, depth: u32) -> Option<AlphaExpr> {
    if depth == 0 {
        return None;
    }
    match classify(expr) {
        Fin::Finite(v) => return Some(AlphaExpr::constant(v.len() as i64)),
        Fin::CoFinite(v) => return Some(AlphaExpr::alpha() - AlphaExpr::constant(v.len() as i64)),
        _ => {}
    }
    if let Some(p) = periodic_form(expr) {
        let offset = p.plus.len() as i64 - p.minus.len() as i64;
        return Some(alpha_times(BigRational::new(p.gain().into(), p.period.into())) + AlphaExpr::constant(offset));
    }
    let d = decompose(expr);
    if d.core != *expr {
        return Some(canonical(&d.core, depth - 1)? + AlphaExpr::constant(d.offset()));
    }
    let next = depth - 1;
    match expr {
        SetExpr::Powers(p) => Some(AlphaExpr::alpha_root(*p as u64)),
        SetExpr::Complement(a) => Some(AlphaExpr::alpha() - canonical(a, next)?),
        SetExpr::Union(a, b) => {
            let meet = canonical_meet(a, b, next)?;
            Some(canonical(a, next)? + canonical(b, next)? - meet)
        }
        SetExpr::Intersection(a, b) => canonical_meet(a, b, next),
        SetExpr::Difference(a, b) => Some(canonical(a, next)? - canonical_meet(a, b, next)?),
        _ => None,
    }
}

fn canonical_meet(a: &SetExpr, b: &SetExpr, depth: u32) -> Option<AlphaExpr> {
    if depth == 0 {
        return None;
    }
    if let Some(m) = seq::simple_intersection(a, b) {
        if !matches!(m, SetExpr::Intersection(..)) {
            return canonical(&m, depth - 1);
        }
    }
    let meet = SetExpr::intersection(a.clone(), b.clone());
    if matches!(classify(&meet), Fin::Finite(_) | Fin::CoFinite(_)) || periodic_form(&meet).is_some() {
        return canonical(&meet, depth - 1);
    }
    match (a, b) {
        (x, SetExpr::Complement(y)) | (SetExpr::Complement(y), x) => {
            Some(canonical(x, depth - 1)? - canonical_meet(x, y, depth - 1)?)
        }
        (SetExpr::Union(x, y), z) | (z, SetExpr::Union(x, y)) => {
            let xz = SetExpr::intersection((**x).clone(), z.clone());
            let yz = SetExpr::intersection((**y).clone(), z.clone());
            canonical(&SetExpr::union(xz, yz), depth - 1)
        }
        _ => None,
    }
}

fn free(expr: &SetExpr) -> NumerosityAnswer {
    match classify(expr) {
        Fin::Finite(v) => return NumerosityAnswer::Exact(AlphaExpr::constant(v.len() as i64)),
        Fin::CoFinite(v) => return NumerosityAnswer::Exact(AlphaExpr::alpha() - AlphaExpr::constant(v.len() as i64)),
        _ => {}
    }
    match expr {
        SetExpr::ArithProg { modulus, residue } => {
            let base = alpha_times(BigRational::new(BigInt::one(), (*modulus).into()));
            let one = AlphaExpr::constant(1);
            return match (modulus, residue) {
                (2, 0) => NumerosityAnswer::between(&base - &one, base),
                (2, 1) => NumerosityAnswer::between(base.clone(), &base + &one),
                _ => NumerosityAnswer::between(&base - &one, &base + &one),
            };
        }
        SetExpr::Powers(p) => {
            let root = AlphaExpr::alpha_root(*p as u64);
            return NumerosityAnswer::between(&root - &AlphaExpr::constant(1), root);
        }
        SetExpr::BlockSet(s) if is_superexp(*s) => return superexp_brackets(),
        SetExpr::Complement(a) => return free(a).mirror(),
        _ => {}
    }
    if let Some(p) = periodic_form(expr) {
        let (lo, hi) = p.offset_hull();
        let base = alpha_times(BigRational::new(p.gain().into(), p.period.into()));
        let lo = AlphaExpr::constant(lo.floor().to_integer());
        let hi = AlphaExpr::constant(hi.ceil().to_integer());
        return NumerosityAnswer::between(&base + &lo, &base + &hi);
    }
    let d = decompose(expr);
    if d.core != *expr {
        return free(&d.core).shift(d.offset());
    }
    NumerosityAnswer::Unknown
}

fn is_superexp(s: BlockSchedule) -> bool {
    s.as_general() == Some((Boundary::Tower { base: 2 }, Parity::Odd))
}

/// `num(𝕊)` lies in `(√α − α^{1/4}, √α)` or in `(α − √α, α − √α + α^{1/4})`,
/// according to the parity of `κ` in `α = 2^(2^κ)`.
fn superexp_brackets() -> NumerosityAnswer {
    let a = AlphaExpr::alpha();
    let sqrt = AlphaExpr::alpha_root(2);
    let fourth = AlphaExpr::alpha_root(4);
    NumerosityAnswer::Range {
        lower: (&sqrt - &fourth, sqrt.clone()),
        upper: (&a - &sqrt, &(&a - &sqrt) + &fourth),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Supervaluation {
    /// Every admissible assignment agrees.
    Super(AlphaExpr),
    NoSuper(NumerosityAnswer),
}

/// `super 3` / `nosuper range 1/2 a − 1 .. 1/2 a`.
impl fmt::Display for Supervaluation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Supervaluation::Super(x) => write!(f, "super {x}"),
            Supervaluation::NoSuper(a) => write!(f, "nosuper {a}"),
        }
    }
}

/// Unique values exist for exactly the finite and co-finite sets.
pub fn supervaluation(expr: &SetExpr) -> Supervaluation {
    match free(expr) {
        NumerosityAnswer::Exact(x) => Supervaluation::Super(x),
        other => Supervaluation::NoSuper(other),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alpha::standard_part_ratio;
    use crate::seq::Verdict;
    use num_traits::Zero;

    fn canon(e: &SetExpr) -> String {
        alpha_numerosity(e, Profile::Canonical).to_string()
    }

    fn fr(e: &SetExpr) -> String {
        alpha_numerosity(e, Profile::Free).to_string()
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(canon(&SetExpr::cofinite([1, 2]).unwrap()), "exact a − 2");
        assert_eq!(canon(&SetExpr::evens()), "exact 1/2 a");
        assert_eq!(canon(&SetExpr::Powers(2)), "exact sqrt(a)");
        assert_eq!(canon(&SetExpr::Primes), "unknown");
        assert_eq!(canon(&SetExpr::finite([4, 9]).unwrap()), "exact 2");
        let u = SetExpr::union(SetExpr::Powers(2), SetExpr::Powers(3));
        assert_eq!(canon(&u), "exact sqrt(a) + a^(1/3) − a^(1/6)");
        let d = SetExpr::difference(SetExpr::evens(), SetExpr::finite([2]).unwrap());
        assert_eq!(canon(&d), "exact 1/2 a − 1");
        assert_eq!(canon(&SetExpr::not(SetExpr::Powers(2))), "exact a − sqrt(a)");
        let pp = SetExpr::intersection(SetExpr::Powers(2), SetExpr::Primes);
        assert_eq!(canon(&pp), "exact 0");
    }

    #[test]
    fn free_examples() {
        assert_eq!(fr(&SetExpr::evens()), "range 1/2 a − 1 .. 1/2 a");
        assert_eq!(fr(&SetExpr::odds()), "range 1/2 a .. 1/2 a + 1");
        assert_eq!(fr(&SetExpr::arith_prog(3, 1).unwrap()), "range 1/3 a − 1 .. 1/3 a + 1");
        assert_eq!(
            fr(&SetExpr::superexp()),
            "range [sqrt(a) − a^(1/4), sqrt(a)] .. [a − sqrt(a), a − sqrt(a) + a^(1/4)]"
        );
        assert_eq!(fr(&SetExpr::not(SetExpr::superexp())), fr(&SetExpr::superexp()));
        assert_eq!(canon(&SetExpr::superexp()), fr(&SetExpr::superexp()));
        assert_eq!(fr(&SetExpr::Primes), "unknown");
        assert_eq!(fr(&SetExpr::not(SetExpr::evens())), fr(&SetExpr::odds()));
    }

    #[test]
    fn supervaluations() {
        assert_eq!(
            supervaluation(&SetExpr::finite([1, 2, 3]).unwrap()).to_string(),
            "super 3"
        );
        assert_eq!(
            supervaluation(&SetExpr::cofinite([7]).unwrap()).to_string(),
            "super a − 1"
        );
        assert_eq!(
            supervaluation(&SetExpr::evens()).to_string(),
            "nosuper range 1/2 a − 1 .. 1/2 a"
        );
    }

    #[test]
    fn cnum_examples() {
        let e = cnum(&SetExpr::evens());
        let o = cnum(&SetExpr::odds());
        let sum = cnum_add(&e, &o);
        let full = cnum(&SetExpr::Full);
        assert_eq!(cnum_compare(&sum, &full, 1000).verdict, Verdict::Equal);
        assert_eq!(cnum_compare(&e, &o, 1000).verdict, Verdict::WeakLess);
        let s = cnum(&SetExpr::superexp());
        assert_eq!(cnum_compare(&s, &e, 1000).verdict, Verdict::Incomparable);
        let minus = cnum(&SetExpr::difference(SetExpr::evens(), SetExpr::finite([2]).unwrap()));
        assert_eq!(cnum_compare(&e, &minus, 1000).verdict, Verdict::StrictGreater);
        let q = cnum_add(
            &cnum(&SetExpr::arith_prog(4, 0).unwrap()),
            &cnum(&SetExpr::arith_prog(4, 2).unwrap()),
        );
        assert_eq!(cnum_compare(&q, &e, 1000).verdict, Verdict::Equal);
        assert_eq!(
            cnum_compare(&cnum_add(&s, &CnumClass::zero()), &s, 10).verdict,
            Verdict::Equal
        );
    }

    #[test]
    fn standard_parts_match_densities() {
        for (e, d) in [
            (SetExpr::evens(), BigRational::new(1.into(), 2.into())),
            (SetExpr::Powers(3), BigRational::zero()),
            (SetExpr::cofinite([3]).unwrap(), BigRational::one()),
        ] {
            let x = alpha_numerosity(&e, Profile::Canonical);
            assert_eq!(standard_part_ratio(x.exact().unwrap()).unwrap(), d);
        }
    }
}
