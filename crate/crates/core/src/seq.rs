//! Counting sequences `f_n(S) = |S ∩ {1,…,n}|` and their eventual
//! comparison modulo the Fréchet (co-finite) filter.
//!
//! Verdicts are only ever *decided* from a symbolic certificate: an
//! eventually periodic structure, a finite symmetric difference, exact
//! densities, block-schedule extremes or growth classes. Anything else is
//! reported as [`Verdict::Unknown`] together with the evidence of a finite
//! scan, since no finite prefix determines eventual behaviour.

use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::decimal::ratio;
use crate::par::{self, Execution};
use crate::periodic::{periodic_form, MAX_PERIOD};
use crate::primes;
use crate::set::{self, classify, decompose, integer_root, lcm, normalize, Fin};
use crate::{BlockSchedule, Boundary, Limits, Parity, Result, SetExpr};

pub use crate::periodic::Periodic;

/// Default scan horizon for unresolved comparisons.
pub const DEFAULT_HORIZON: u128 = 1 << 20;

/// How many members of a witness family are checked exactly.
const WITNESS_SAMPLES: usize = 8;

/// Closed-form evaluators for `f_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClosedForm {
    /// Count of `M_{a,i} ∩ {1,…,n}`.
    FloorLinear {
        modulus: u64,
        residue: u64,
    },
    /// `⌊n^{1/p}⌋`.
    RootFloor(u32),
    /// Whole-block sums over a block schedule.
    BlockSum(BlockSchedule),
    /// `π(n)`.
    PrimePi,
    Periodic(Periodic),
    /// `n − g_n`.
    Complement(Box<ClosedForm>),
    /// `g_n + #{m ∈ plus : m ≤ n} − #{m ∈ minus : m ≤ n}`.
    Adjusted {
        base: Box<ClosedForm>,
        plus: Vec<u64>,
        minus: Vec<u64>,
    },
    /// Integer combination `Σ k·g_n` (inclusion–exclusion).
    Combination(Vec<(i64, ClosedForm)>),
}

impl ClosedForm {
    pub fn eval(&self, n: u128, limits: &Limits) -> Result<u128> {
        Ok(match self {
            ClosedForm::FloorLinear { modulus, residue } => {
                let (a, i) = (*modulus as u128, *residue as u128);
                if i == 0 {
                    n / a
                } else if n < i {
                    0
                } else {
                    (n - i) / a + 1
                }
            }
            ClosedForm::RootFloor(p) => integer_root(n, *p),
            ClosedForm::BlockSum(s) => s.count_upto(n),
            ClosedForm::PrimePi => primes::prime_pi(n, limits)?,
            ClosedForm::Periodic(p) => p.count_upto(n),
            ClosedForm::Complement(inner) => n - inner.eval(n, limits)?,
            ClosedForm::Adjusted { base, plus, minus } => {
                let below = |v: &[u64]| v.iter().filter(|&&m| m as u128 <= n).count() as u128;
                base.eval(n, limits)? + below(plus) - below(minus)
            }
            ClosedForm::Combination(parts) => {
                let mut total: i128 = 0;
                for (k, part) in parts {
                    total += *k as i128 * part.eval(n, limits)? as i128;
                }
                total as u128
            }
        })
    }

    fn describe(&self) -> String {
        match self {
            ClosedForm::FloorLinear { modulus, residue: 0 } => format!("floor(n/{modulus})"),
            ClosedForm::FloorLinear { modulus, residue } => format!("floor((n-{residue})/{modulus})+1"),
            ClosedForm::RootFloor(p) => format!("floor(n^(1/{p}))"),
            ClosedForm::BlockSum(_) => "block sum".into(),
            ClosedForm::PrimePi => "pi(n)".into(),
            ClosedForm::Periodic(p) => format!("periodic (period {}, gain {})", p.period, p.gain()),
            ClosedForm::Complement(inner) => format!("n - [{}]", inner.describe()),
            ClosedForm::Adjusted { base, plus, minus } => {
                format!("[{}] + {} - {} exceptions", base.describe(), plus.len(), minus.len())
            }
            ClosedForm::Combination(parts) => parts
                .iter()
                .map(|(k, p)| format!("{k:+}·[{}]", p.describe()))
                .collect::<Vec<_>>()
                .join(" "),
        }
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// Eventual periodicity of `χ`: after `preperiod`, each window of `period`
/// consecutive indices contains exactly `gain` members.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PeriodicSummary {
    pub preperiod: u64,
    pub period: u64,
    pub gain: u64,
}

/// Extremal limit points of `f_n(S)/n`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GrowthDescriptor {
    pub liminf_density: Option<BigRational>,
    pub limsup_density: Option<BigRational>,
    pub eventually_periodic: Option<PeriodicSummary>,
}

impl GrowthDescriptor {
    fn exact(d: BigRational) -> Self {
        GrowthDescriptor {
            liminf_density: Some(d.clone()),
            limsup_density: Some(d),
            eventually_periodic: None,
        }
    }

    fn bounds(lo: BigRational, hi: BigRational) -> Self {
        GrowthDescriptor {
            liminf_density: Some(lo),
            limsup_density: Some(hi),
            eventually_periodic: None,
        }
    }

    fn unknown() -> Self {
        GrowthDescriptor::default()
    }

    /// The natural density, when liminf and limsup agree.
    pub fn exact_density(&self) -> Option<&BigRational> {
        match (&self.liminf_density, &self.limsup_density) {
            (Some(lo), Some(hi)) if lo == hi => Some(lo),
            _ => None,
        }
    }

    fn is_null(&self) -> bool {
        self.limsup_density.as_ref().is_some_and(Zero::is_zero)
    }

    fn is_conull(&self) -> bool {
        self.liminf_density.as_ref().is_some_and(One::is_one)
    }

    fn complement(&self) -> Self {
        let one = BigRational::one();
        GrowthDescriptor {
            liminf_density: self.limsup_density.as_ref().map(|d| &one - d),
            limsup_density: self.liminf_density.as_ref().map(|d| &one - d),
            eventually_periodic: None,
        }
    }
}

/// Descriptor bounds of a block schedule: the limits of `f_n/n` at the
/// ends of excluded and included blocks respectively.
pub fn block_density_bounds(schedule: BlockSchedule) -> (BigRational, BigRational) {
    match schedule {
        BlockSchedule::LeadingDecimal(d) => {
            let d = d as i64;
            (ratio(1, 9 * d), ratio(10, 9 * (d + 1)))
        }
        _ => match schedule.as_general().expect("general form").0 {
            Boundary::Tower { .. } => (BigRational::zero(), BigRational::one()),
            Boundary::Geometric { base } => {
                let b = base as i64;
                (ratio(1, b + 1), ratio(b, b + 1))
            }
        },
    }
}

/// Exact liminf/limsup of `f_n(S)/n` where the rule table covers `expr`.
pub fn descriptor(expr: &SetExpr) -> GrowthDescriptor {
    let normal = normalize(expr);
    let d = descriptor_of(&normal);
    if d.liminf_density.is_some() {
        return d;
    }
    let core = decompose(expr).core;
    if core != normal {
        let d = strip(descriptor_of(&core));
        if d.liminf_density.is_some() {
            return d;
        }
    }
    let dual = descriptor_of(&normalize(&SetExpr::not(normal.clone())));
    if dual.liminf_density.is_some() {
        return dual.complement();
    }
    match classify(&normal) {
        Fin::Finite(_) => GrowthDescriptor::exact(BigRational::zero()),
        Fin::CoFinite(_) => GrowthDescriptor::exact(BigRational::one()),
        _ => d,
    }
}

fn descriptor_of(expr: &SetExpr) -> GrowthDescriptor {
    if let Some(p) = periodic_form(expr) {
        let mut d = GrowthDescriptor::exact(ratio(p.gain(), p.period));
        d.eventually_periodic = Some(PeriodicSummary {
            preperiod: p.preperiod(),
            period: p.period,
            gain: p.gain(),
        });
        return d;
    }
    match expr {
        SetExpr::Powers(_) | SetExpr::Primes => GrowthDescriptor::exact(BigRational::zero()),
        SetExpr::BlockSet(s) => {
            let (lo, hi) = block_density_bounds(*s);
            GrowthDescriptor::bounds(lo, hi)
        }
        SetExpr::Complement(a) => descriptor_of(a).complement(),
        SetExpr::Union(a, b) => {
            let (da, db) = (descriptor_of(a), descriptor_of(b));
            if da.is_conull() || db.is_conull() {
                GrowthDescriptor::exact(BigRational::one())
            } else if db.is_null() {
                strip(da)
            } else if da.is_null() {
                strip(db)
            } else {
                GrowthDescriptor::unknown()
            }
        }
        SetExpr::Intersection(a, b) => meet(descriptor_of(a), descriptor_of(b)),
        SetExpr::Difference(a, b) => meet(descriptor_of(a), descriptor_of(b).complement()),
        _ => GrowthDescriptor::unknown(),
    }
}

fn meet(da: GrowthDescriptor, db: GrowthDescriptor) -> GrowthDescriptor {
    if da.is_null() || db.is_null() {
        GrowthDescriptor::exact(BigRational::zero())
    } else if db.is_conull() {
        strip(da)
    } else if da.is_conull() {
        strip(db)
    } else {
        GrowthDescriptor::unknown()
    }
}

fn strip(mut d: GrowthDescriptor) -> GrowthDescriptor {
    d.eventually_periodic = None;
    d
}

/// Index families along which `f_n/n` approaches the upper and the lower
/// density respectively.
pub(crate) fn extremal_families(expr: &SetExpr) -> Option<(IndexFamily, IndexFamily)> {
    let swap = |(hi, lo)| (lo, hi);
    match expr {
        SetExpr::BlockSet(BlockSchedule::LeadingDecimal(d)) => Some((
            IndexFamily::DecimalEnds { digit: *d, high: true },
            IndexFamily::DecimalEnds { digit: *d, high: false },
        )),
        SetExpr::BlockSet(s) => {
            let (boundary, include) = s.as_general()?;
            Some((
                IndexFamily::BlockEnds {
                    boundary,
                    parity: include,
                },
                IndexFamily::BlockEnds {
                    boundary,
                    parity: include.flip(),
                },
            ))
        }
        SetExpr::Complement(a) => extremal_families(a).map(swap),
        SetExpr::Union(a, b) => {
            if descriptor(b).is_null() {
                extremal_families(a)
            } else if descriptor(a).is_null() {
                extremal_families(b)
            } else {
                None
            }
        }
        SetExpr::Intersection(a, b) => {
            if descriptor(b).is_conull() {
                extremal_families(a)
            } else if descriptor(a).is_conull() {
                extremal_families(b)
            } else {
                None
            }
        }
        SetExpr::Difference(a, b) => {
            if descriptor(b).is_null() {
                extremal_families(a)
            } else if descriptor(a).is_conull() {
                extremal_families(b).map(swap)
            } else {
                None
            }
        }
        _ => None,
    }
}

/// Symbolic families of indices, used as incomparability witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IndexFamily {
    /// Block boundaries `b_k` with `k` of the given parity.
    BlockEnds {
        boundary: Boundary,
        parity: Parity,
    },
    /// `(d+1)·10^m − 1` when `high`, else `d·10^m − 1`, for `m ≥ 1`.
    DecimalEnds {
        digit: u8,
        high: bool,
    },
    /// `n ≡ r (mod period)` for `r` in `residues`, `n > after`.
    Residues {
        period: u64,
        residues: Vec<u64>,
        after: u64,
    },
    Explicit(Vec<u128>),
}

impl IndexFamily {
    /// The first `count` members that fit in a `u128`, increasing.
    pub fn members(&self, count: usize) -> Vec<u128> {
        match self {
            IndexFamily::BlockEnds { boundary, parity } => (0..)
                .filter(|&k| parity.matches(k))
                .map_while(|k| boundary.at(k))
                .take(count)
                .collect(),
            IndexFamily::DecimalEnds { digit, high } => {
                let mult = if *high { *digit as u128 + 1 } else { *digit as u128 };
                (1u32..)
                    .map_while(|m| 10u128.checked_pow(m)?.checked_mul(mult).map(|v| v - 1))
                    .take(count)
                    .collect()
            }
            IndexFamily::Residues {
                period,
                residues,
                after,
            } => {
                let mut out = vec![];
                let mut n = *after as u128 + 1;
                while out.len() < count && !residues.is_empty() {
                    if residues.contains(&((n % *period as u128) as u64)) {
                        out.push(n);
                    }
                    n += 1;
                }
                out
            }
            IndexFamily::Explicit(v) => v.iter().take(count).copied().collect(),
        }
    }
}

impl fmt::Display for IndexFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexFamily::BlockEnds {
                boundary: Boundary::Tower { base },
                parity,
            } => write!(f, "n = {base}^({base}^k), k {parity}"),
            IndexFamily::BlockEnds {
                boundary: Boundary::Geometric { base },
                parity,
            } => write!(f, "n = {base}^(k+1) - 1, k {parity}"),
            IndexFamily::DecimalEnds { digit, high: true } => write!(f, "n = {}*10^m - 1, m >= 1", digit + 1),
            IndexFamily::DecimalEnds { digit, high: false } => write!(f, "n = {digit}*10^m - 1, m >= 1"),
            IndexFamily::Residues {
                period,
                residues,
                after,
            } => {
                let rs: Vec<String> = residues.iter().map(u64::to_string).collect();
                write!(f, "n mod {period} in {{{}}}, n > {after}", rs.join(","))
            }
            IndexFamily::Explicit(v) => {
                let vs: Vec<String> = v.iter().map(u128::to_string).collect();
                write!(f, "n in {{{}}}", vs.join(","))
            }
        }
    }
}

/// `f(S)` together with the best closed form and descriptor available.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SizeSequence {
    source: SetExpr,
    closed_form: Option<ClosedForm>,
    descriptor: GrowthDescriptor,
    limits: Limits,
}

impl SizeSequence {
    pub fn new(source: SetExpr, limits: Limits) -> Self {
        let closed_form = closed_form_of(&source);
        let descriptor = descriptor(&source);
        SizeSequence {
            source,
            closed_form,
            descriptor,
            limits,
        }
    }

    pub fn source(&self) -> &SetExpr {
        &self.source
    }

    pub fn closed_form(&self) -> Option<&ClosedForm> {
        self.closed_form.as_ref()
    }

    pub fn descriptor(&self) -> &GrowthDescriptor {
        &self.descriptor
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    /// Exact `f_n`, from the closed form when there is one.
    pub fn eval(&self, n: u128) -> Result<u128> {
        if n == 0 {
            return Ok(0);
        }
        match &self.closed_form {
            Some(cf) => cf.eval(n, &self.limits),
            None => Ok(set::prefix_bits(&self.source, self.limits.check_enum(n)?, &self.limits)?.count_ones() as u128),
        }
    }

    /// `[f_0, f_1, …, f_upto]` by enumeration.
    pub fn prefix_counts(&self, upto: u64) -> Result<Vec<u64>> {
        Ok(set::prefix_bits(&self.source, upto, &self.limits)?.cumulative())
    }
}

/// `f(S)` with default limits.
pub fn partial_sums(expr: &SetExpr) -> SizeSequence {
    SizeSequence::new(expr.clone(), Limits::default())
}

pub fn partial_sums_with(expr: &SetExpr, limits: Limits) -> SizeSequence {
    SizeSequence::new(expr.clone(), limits)
}

pub fn eval_f(seq: &SizeSequence, n: u128) -> Result<u128> {
    seq.eval(n)
}

fn closed_form_of(expr: &SetExpr) -> Option<ClosedForm> {
    if let SetExpr::ArithProg { modulus, residue } = expr {
        return Some(ClosedForm::FloorLinear {
            modulus: *modulus,
            residue: *residue,
        });
    }
    if let Some(p) = periodic_form(expr) {
        return Some(ClosedForm::Periodic(p));
    }
    match expr {
        SetExpr::Powers(p) => return Some(ClosedForm::RootFloor(*p)),
        SetExpr::Primes => return Some(ClosedForm::PrimePi),
        SetExpr::BlockSet(s) => return Some(ClosedForm::BlockSum(*s)),
        SetExpr::Complement(a) => return closed_form_of(a).map(|c| ClosedForm::Complement(Box::new(c))),
        _ => {}
    }
    let d = decompose(expr);
    if !(d.plus.is_empty() && d.minus.is_empty()) && d.core != *expr {
        let base = closed_form_of(&d.core)?;
        return Some(ClosedForm::Adjusted {
            base: Box::new(base),
            plus: d.plus,
            minus: d.minus,
        });
    }
    match expr {
        SetExpr::Union(a, b) => {
            let meet = simple_intersection(a, b)?;
            Some(ClosedForm::Combination(vec![
                (1, closed_form_of(a)?),
                (1, closed_form_of(b)?),
                (-1, closed_form_of(&meet)?),
            ]))
        }
        SetExpr::Intersection(a, b) => {
            if let Some(meet) = simple_intersection(a, b) {
                return closed_form_of(&meet);
            }
            match (&**a, &**b) {
                (x, SetExpr::Complement(y)) | (SetExpr::Complement(y), x) => without(x, y),
                _ => None,
            }
        }
        SetExpr::Difference(a, b) => without(a, b),
        _ => None,
    }
}

/// `f(x ∖ y) = f(x) − f(x ∩ y)`.
fn without(x: &SetExpr, y: &SetExpr) -> Option<ClosedForm> {
    let meet = simple_intersection(x, y)?;
    Some(ClosedForm::Combination(vec![
        (1, closed_form_of(x)?),
        (-1, closed_form_of(&meet)?),
    ]))
}

/// `a ∩ b` rewritten as a set with a direct closed form, when a rule applies.
pub(crate) fn simple_intersection(a: &SetExpr, b: &SetExpr) -> Option<SetExpr> {
    let meet = SetExpr::intersection(a.clone(), b.clone());
    if periodic_form(&meet).is_some() {
        return Some(meet);
    }
    let norm = normalize(&meet);
    match (&norm, a, b) {
        (SetExpr::Empty, ..) => Some(SetExpr::Empty),
        (_, SetExpr::Powers(p), SetExpr::Powers(q)) => Some(SetExpr::Powers(lcm(*p as u64, *q as u64)? as u32)),
        (_, SetExpr::Powers(_), SetExpr::Primes) | (_, SetExpr::Primes, SetExpr::Powers(_)) => Some(SetExpr::Empty),
        (n, ..) if !matches!(n, SetExpr::Intersection(..)) && n.size() < meet.size() => Some(norm),
        _ => None,
    }
}

/// Verdict of an eventual comparison between `left` and `right`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Equal,
    /// `left < right` eventually.
    StrictLess,
    StrictGreater,
    /// `left ≤ right` eventually, but neither `=` nor `<` eventually.
    WeakLess,
    WeakGreater,
    Incomparable,
    Unknown,
}

impl Verdict {
    fn swap(self) -> Verdict {
        match self {
            Verdict::StrictLess => Verdict::StrictGreater,
            Verdict::StrictGreater => Verdict::StrictLess,
            Verdict::WeakLess => Verdict::WeakGreater,
            Verdict::WeakGreater => Verdict::WeakLess,
            v => v,
        }
    }

    /// `(leq, geq, eq)` eventual facts implied by the verdict.
    fn facts(self) -> (Option<bool>, Option<bool>, Option<bool>) {
        match self {
            Verdict::Equal => (Some(true), Some(true), Some(true)),
            Verdict::StrictLess | Verdict::WeakLess => (Some(true), Some(false), Some(false)),
            Verdict::StrictGreater | Verdict::WeakGreater => (Some(false), Some(true), Some(false)),
            Verdict::Incomparable => (Some(false), Some(false), Some(false)),
            Verdict::Unknown => (None, None, None),
        }
    }

    /// Verdict from the eventual range `[lo, hi]` of `right − left`.
    fn from_gap(lo: i128, hi: i128) -> Verdict {
        match (lo.cmp(&0), hi.cmp(&0)) {
            (Ordering::Equal, Ordering::Equal) => Verdict::Equal,
            (Ordering::Greater, _) => Verdict::StrictLess,
            (_, Ordering::Less) => Verdict::StrictGreater,
            (Ordering::Equal, Ordering::Greater) => Verdict::WeakLess,
            (Ordering::Less, Ordering::Equal) => Verdict::WeakGreater,
            _ => Verdict::Incomparable,
        }
    }

    pub fn is_decided(self) -> bool {
        self != Verdict::Unknown
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Index families where each side is strictly ahead, with the sampled
/// members that were checked exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witnesses {
    pub left_ahead: IndexFamily,
    pub right_ahead: IndexFamily,
    pub left_ahead_checked: Vec<u128>,
    pub right_ahead_checked: Vec<u128>,
}

/// Sign counts of `left − right` over a finite prefix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ScanEvidence {
    pub scanned_to: u128,
    pub less: u64,
    pub equal: u64,
    pub greater: u64,
    pub last_less: Option<u128>,
    pub last_equal: Option<u128>,
    pub last_greater: Option<u128>,
}

impl ScanEvidence {
    fn swap(self) -> Self {
        ScanEvidence {
            less: self.greater,
            greater: self.less,
            last_less: self.last_greater,
            last_greater: self.last_less,
            ..self
        }
    }
}

/// How a verdict was certified.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Certificate {
    Identical,
    Periodic,
    FiniteDifference,
    /// Proper inclusion of the source sets.
    Subset,
    Bounded,
    CoFinite,
    Density,
    BlockSchedule,
    PowerGrowth,
    /// Nothing certified; only scan evidence.
    None,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventualComparison {
    pub verdict: Verdict,
    pub leq_eventually: Option<bool>,
    pub geq_eventually: Option<bool>,
    pub eq_eventually: Option<bool>,
    /// Eventual range of `right − left`, when bounded and known.
    pub gap: Option<(i128, i128)>,
    pub witnesses: Option<Witnesses>,
    pub evidence: Option<ScanEvidence>,
    pub certificate: Certificate,
}

pub type PartialOrderResult = EventualComparison;

impl EventualComparison {
    fn decided(verdict: Verdict, certificate: Certificate) -> Self {
        let (leq, geq, eq) = verdict.facts();
        EventualComparison {
            verdict,
            leq_eventually: leq,
            geq_eventually: geq,
            eq_eventually: eq,
            gap: None,
            witnesses: None,
            evidence: None,
            certificate,
        }
    }

    fn with_gap(lo: i128, hi: i128, certificate: Certificate) -> Self {
        let mut c = EventualComparison::decided(Verdict::from_gap(lo, hi), certificate);
        c.gap = Some((lo, hi));
        c
    }

    /// The same comparison with the arguments exchanged.
    pub fn swap(self) -> Self {
        let (leq, geq, eq) = self.verdict.swap().facts();
        EventualComparison {
            verdict: self.verdict.swap(),
            leq_eventually: if self.verdict.is_decided() { leq } else { None },
            geq_eventually: if self.verdict.is_decided() { geq } else { None },
            eq_eventually: if self.verdict.is_decided() { eq } else { None },
            gap: self.gap.map(|(lo, hi)| (-hi, -lo)),
            witnesses: self.witnesses.map(|w| Witnesses {
                left_ahead: w.right_ahead,
                right_ahead: w.left_ahead,
                left_ahead_checked: w.right_ahead_checked,
                right_ahead_checked: w.left_ahead_checked,
            }),
            evidence: self.evidence.map(ScanEvidence::swap),
            certificate: self.certificate,
        }
    }
}

/// A sum of counting sequences, optionally with finitely many leading
/// terms overridden. This is a representative of a c-numerosity class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeqSum {
    terms: Vec<SizeSequence>,
    prefix: Vec<u128>,
}

impl SeqSum {
    pub fn single(seq: SizeSequence) -> Self {
        SeqSum {
            terms: vec![seq],
            prefix: vec![],
        }
    }

    /// The zero sequence.
    pub fn zero() -> Self {
        SeqSum {
            terms: vec![],
            prefix: vec![],
        }
    }

    pub fn terms(&self) -> &[SizeSequence] {
        &self.terms
    }

    /// Componentwise sum; prefix overrides are dropped.
    pub fn add(&self, other: &SeqSum) -> SeqSum {
        SeqSum {
            terms: self.terms.iter().chain(&other.terms).cloned().collect(),
            prefix: vec![],
        }
    }

    /// Replaces `f_1, …, f_k` by the given values.
    pub fn with_prefix(mut self, values: Vec<u128>) -> SeqSum {
        self.prefix = values;
        self
    }

    pub fn eval(&self, n: u128) -> Result<u128> {
        if n >= 1 && n <= self.prefix.len() as u128 {
            return Ok(self.prefix[n as usize - 1]);
        }
        let mut total = 0u128;
        for t in &self.terms {
            total += t.eval(n)?;
        }
        Ok(total)
    }

    fn limits(&self) -> Limits {
        self.terms.first().map(|t| *t.limits()).unwrap_or_default()
    }

    fn counts(&self, upto: u64) -> Result<Vec<u128>> {
        let parts = par::map_slice(Execution::default(), &self.terms, |t| t.prefix_counts(upto));
        let mut out = vec![0u128; upto as usize + 1];
        for part in parts {
            for (o, v) in out.iter_mut().zip(part?) {
                *o += v as u128;
            }
        }
        for (i, v) in self.prefix.iter().enumerate() {
            if i < upto as usize {
                out[i + 1] = *v;
            }
        }
        Ok(out)
    }

    fn sorted_sources(&self) -> Vec<SetExpr> {
        let mut v: Vec<SetExpr> = self.terms.iter().map(|t| normalize(t.source())).collect();
        v.sort();
        v
    }

    /// `(liminf, limsup, index of the single non-exact term)`.
    fn density_bounds(&self) -> Option<(BigRational, BigRational, Option<usize>)> {
        let mut lo = BigRational::zero();
        let mut hi = BigRational::zero();
        let mut loose = None;
        for (i, t) in self.terms.iter().enumerate() {
            let d = t.descriptor();
            match (d.exact_density(), &d.liminf_density, &d.limsup_density) {
                (Some(x), ..) => {
                    lo += x;
                    hi += x;
                }
                (None, Some(l), Some(h)) if loose.is_none() => {
                    lo += l;
                    hi += h;
                    loose = Some(i);
                }
                _ => return None,
            }
        }
        Some((lo, hi, loose))
    }
}

/// Linear-periodic summary of a sum: beyond `start`, `g(n + period) =
/// g(n) + gain`.
struct LinPeriodic {
    period: u64,
    gain: u64,
    start: u64,
}

fn lin_periodic(sum: &SeqSum) -> Option<LinPeriodic> {
    let mut period = 1u64;
    let mut start = sum.prefix.len() as u64;
    let forms: Vec<_> = sum
        .terms
        .iter()
        .map(|t| periodic_form(t.source()))
        .collect::<Option<_>>()?;
    for p in &forms {
        period = lcm(period, p.period).filter(|&l| l <= MAX_PERIOD)?;
        start = start.max(p.preperiod());
    }
    let gain = forms.iter().map(|p| p.gain() * (period / p.period)).sum();
    Some(LinPeriodic { period, gain, start })
}

/// Eventual comparison of two counting sequences.
pub fn compare_eventually(a: &SizeSequence, b: &SizeSequence, horizon: u128) -> EventualComparison {
    compare_sums(&SeqSum::single(a.clone()), &SeqSum::single(b.clone()), horizon)
}

/// Eventual comparison of two sums of counting sequences.
pub fn compare_sums(a: &SeqSum, b: &SeqSum, horizon: u128) -> EventualComparison {
    let forward = decide(a, b);
    let backward = decide(b, a).map(|c| c.swap());
    let strength = |c: &EventualComparison| (c.gap.is_none(), c.certificate as u8);
    match (forward, backward) {
        (Some(f), Some(g)) => return if strength(&g) < strength(&f) { g } else { f },
        (Some(c), None) | (None, Some(c)) => return c,
        (None, None) => {}
    }
    let mut c = EventualComparison::decided(Verdict::Unknown, Certificate::None);
    c.evidence = scan(a, b, horizon).ok();
    c
}

fn decide(a: &SeqSum, b: &SeqSum) -> Option<EventualComparison> {
    if a.sorted_sources() == b.sorted_sources() {
        return Some(EventualComparison::with_gap(0, 0, Certificate::Identical));
    }
    if let (Some(pa), Some(pb)) = (lin_periodic(a), lin_periodic(b)) {
        return decide_periodic(a, b, &pa, &pb);
    }
    if let Some(c) = decide_finite_difference(a, b) {
        return Some(c);
    }
    if let Some(c) = decide_subset(a, b) {
        return Some(c);
    }
    if let Some(c) = decide_bounded(a, b) {
        return Some(c);
    }
    if let Some(c) = decide_cofinite(a, b) {
        return Some(c);
    }
    let (da, db) = (a.density_bounds(), b.density_bounds());
    if let (Some((alo, ahi, None)), Some((blo, bhi, None))) = (&da, &db) {
        debug_assert!(alo == ahi && blo == bhi);
        if alo != blo {
            let v = if alo < blo {
                Verdict::StrictLess
            } else {
                Verdict::StrictGreater
            };
            return Some(EventualComparison::decided(v, Certificate::Density));
        }
    }
    if let (Some((alo, ahi, Some(i))), Some((d, _, None))) = (&da, &db) {
        if alo < d && d < ahi {
            if let Some((high, low)) = extremal_families(a.terms[*i].source()) {
                let mut c = EventualComparison::decided(Verdict::Incomparable, Certificate::BlockSchedule);
                c.witnesses = Some(Witnesses {
                    left_ahead_checked: checked_members(&high, a, b),
                    right_ahead_checked: checked_members(&low, b, a),
                    left_ahead: high,
                    right_ahead: low,
                });
                return Some(c);
            }
        }
    }
    if let ([x], [y]) = (a.terms.as_slice(), b.terms.as_slice()) {
        if let (SetExpr::Powers(p), SetExpr::Powers(q)) = (x.source(), y.source()) {
            if p != q {
                let v = if p > q {
                    Verdict::StrictLess
                } else {
                    Verdict::StrictGreater
                };
                return Some(EventualComparison::decided(v, Certificate::PowerGrowth));
            }
        }
    }
    None
}

/// Members of `family` at which `ahead > behind` holds exactly.
fn checked_members(family: &IndexFamily, ahead: &SeqSum, behind: &SeqSum) -> Vec<u128> {
    family
        .members(WITNESS_SAMPLES)
        .into_iter()
        .filter(|&n| matches!((ahead.eval(n), behind.eval(n)), (Ok(x), Ok(y)) if x > y))
        .collect()
}

fn decide_periodic(a: &SeqSum, b: &SeqSum, pa: &LinPeriodic, pb: &LinPeriodic) -> Option<EventualComparison> {
    let period = lcm(pa.period, pb.period).filter(|&l| l <= MAX_PERIOD)?;
    let ga = pa.gain as u128 * (period / pa.period) as u128;
    let gb = pb.gain as u128 * (period / pb.period) as u128;
    if ga != gb {
        let v = if ga < gb {
            Verdict::StrictLess
        } else {
            Verdict::StrictGreater
        };
        return Some(EventualComparison::decided(v, Certificate::Periodic));
    }
    let start = pa.start.max(pb.start);
    let mut lo = i128::MAX;
    let mut hi = i128::MIN;
    let mut left_res = vec![];
    let mut right_res = vec![];
    for n in start + 1..=start + period {
        let diff = b.eval(n as u128).ok()? as i128 - a.eval(n as u128).ok()? as i128;
        lo = lo.min(diff);
        hi = hi.max(diff);
        match diff.cmp(&0) {
            Ordering::Less => left_res.push(n % period),
            Ordering::Greater => right_res.push(n % period),
            Ordering::Equal => {}
        }
    }
    let mut c = EventualComparison::with_gap(lo, hi, Certificate::Periodic);
    if c.verdict == Verdict::Incomparable {
        left_res.sort_unstable();
        right_res.sort_unstable();
        let left = IndexFamily::Residues {
            period,
            residues: left_res,
            after: start,
        };
        let right = IndexFamily::Residues {
            period,
            residues: right_res,
            after: start,
        };
        c.witnesses = Some(Witnesses {
            left_ahead_checked: checked_members(&left, a, b),
            right_ahead_checked: checked_members(&right, b, a),
            left_ahead: left,
            right_ahead: right,
        });
    }
    Some(c)
}

fn decide_finite_difference(a: &SeqSum, b: &SeqSum) -> Option<EventualComparison> {
    let parts = |s: &SeqSum| {
        let mut cores = vec![];
        let mut offset = 0i128;
        for t in &s.terms {
            let d = decompose(t.source());
            offset += d.offset();
            cores.push(normalize(&d.core));
        }
        cores.sort();
        (cores, offset)
    };
    let (ca, oa) = parts(a);
    let (cb, ob) = parts(b);
    (ca == cb).then(|| EventualComparison::with_gap(ob - oa, ob - oa, Certificate::FiniteDifference))
}

/// Scan bound for a point of `T ∖ S` once `S ⊆ T` is known.
const SUBSET_WITNESS_SCAN: u64 = 1 << 16;

/// `S ⊊ T` gives `f_n(T) − f_n(S) ≥ 1` from the first point of `T ∖ S` on.
fn decide_subset(a: &SeqSum, b: &SeqSum) -> Option<EventualComparison> {
    let ([x], [y]) = (a.terms.as_slice(), b.terms.as_slice()) else {
        return None;
    };
    let (s, t) = (x.source(), y.source());
    if !included(s, t) {
        return None;
    }
    let rest = SetExpr::difference(t.clone(), s.clone());
    let upto = SUBSET_WITNESS_SCAN.min(x.limits().max_enum);
    let bits = set::prefix_bits(&rest, upto, x.limits()).ok()?;
    (bits.count_ones() > 0).then(|| EventualComparison::decided(Verdict::StrictLess, Certificate::Subset))
}

/// Sound but incomplete structural test for `s ⊆ t`.
pub(crate) fn included(s: &SetExpr, t: &SetExpr) -> bool {
    if s == t || matches!(s, SetExpr::Empty) || matches!(t, SetExpr::Full) {
        return true;
    }
    match (s, t) {
        (SetExpr::Finite(v), _) => v.iter().all(|&m| t.contains(m as u128)),
        (SetExpr::Union(p, q), _) => included(p, t) && included(q, t),
        (_, SetExpr::Intersection(p, q)) => included(s, p) && included(s, q),
        (_, SetExpr::Union(p, q)) if included(s, p) || included(s, q) => true,
        (SetExpr::Intersection(p, q), _) if included(p, t) || included(q, t) => true,
        (SetExpr::Difference(p, _), _) if included(p, t) => true,
        (SetExpr::Complement(p), SetExpr::Complement(q)) => included(q, p),
        (SetExpr::Powers(p), SetExpr::Powers(q)) => p % q == 0,
        _ => match (periodic_form(s), periodic_form(t)) {
            (Some(ps), Some(pt)) => periodic_included(&ps, &pt),
            _ => false,
        },
    }
}

fn periodic_included(s: &Periodic, t: &Periodic) -> bool {
    let Some(period) = lcm(s.period, t.period).filter(|&l| l <= MAX_PERIOD) else {
        return false;
    };
    let horizon = period as u128 + s.preperiod().max(t.preperiod()) as u128;
    let member = |p: &Periodic, n: u128| {
        let in_pattern = p.pattern[(n % p.period as u128) as usize];
        let m = n as u64;
        (in_pattern && !p.minus.contains(&m)) || p.plus.contains(&m)
    };
    (1..=horizon).all(|n| !member(s, n) || member(t, n))
}

/// A sum of finite sets is eventually constant.
fn decide_bounded(a: &SeqSum, b: &SeqSum) -> Option<EventualComparison> {
    let total = |s: &SeqSum| -> Option<i128> {
        s.terms
            .iter()
            .map(|t| match classify(t.source()) {
                Fin::Finite(v) => Some(v.len() as i128),
                _ => None,
            })
            .sum()
    };
    let unbounded = |s: &SeqSum| {
        s.terms
            .iter()
            .any(|t| matches!(classify(t.source()), Fin::Infinite | Fin::CoFinite(_)))
    };
    let ka = total(a)?;
    if let Some(kb) = total(b) {
        return Some(EventualComparison::with_gap(kb - ka, kb - ka, Certificate::Bounded));
    }
    unbounded(b).then(|| EventualComparison::decided(Verdict::StrictLess, Certificate::Bounded))
}

/// A co-finite set eventually exceeds every co-infinite one.
fn decide_cofinite(a: &SeqSum, b: &SeqSum) -> Option<EventualComparison> {
    let ([x], [y]) = (a.terms.as_slice(), b.terms.as_slice()) else {
        return None;
    };
    match (classify(x.source()), classify(y.source())) {
        (Fin::CoFinite(_), Fin::Infinite) => Some(EventualComparison::decided(
            Verdict::StrictGreater,
            Certificate::CoFinite,
        )),
        _ => None,
    }
}

fn scan(a: &SeqSum, b: &SeqSum, horizon: u128) -> Result<ScanEvidence> {
    let cap = a.limits().max_enum.min(b.limits().max_enum) as u128;
    let upto = horizon.min(cap) as u64;
    let (ca, cb) = (a.counts(upto)?, b.counts(upto)?);
    let mut ev = ScanEvidence {
        scanned_to: upto as u128,
        ..Default::default()
    };
    for n in 1..=upto as usize {
        let idx = Some(n as u128);
        match ca[n].cmp(&cb[n]) {
            Ordering::Less => {
                ev.less += 1;
                ev.last_less = idx;
            }
            Ordering::Equal => {
                ev.equal += 1;
                ev.last_equal = idx;
            }
            Ordering::Greater => {
                ev.greater += 1;
                ev.last_greater = idx;
            }
        }
    }
    Ok(ev)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(e: SetExpr) -> SizeSequence {
        partial_sums(&e)
    }

    fn q(n: i64, d: i64) -> BigRational {
        ratio(n, d)
    }

    #[test]
    fn partial_sum_examples() {
        assert_eq!(seq(SetExpr::evens()).eval(7).unwrap(), 3);
        assert_eq!(seq(SetExpr::superexp()).eval(4).unwrap(), 2);
        assert_eq!(seq(SetExpr::Primes).eval(10).unwrap(), 4);
        assert_eq!(seq(SetExpr::Full).eval(17).unwrap(), 17);
        assert_eq!(seq(SetExpr::cofinite([1]).unwrap()).eval(10).unwrap(), 9);
    }

    #[test]
    fn superexp_at_256_matches_enumeration() {
        let s = seq(SetExpr::superexp());
        let brute = (1..=256u128).filter(|&n| SetExpr::superexp().contains(n)).count() as u128;
        assert_eq!(brute, 242);
        assert_eq!(s.eval(256).unwrap(), brute);
        assert_eq!(-2 + 4 - 16 + 256, 242);
    }

    #[test]
    fn superexp_closed_form_at_2_pow_32() {
        let s = seq(SetExpr::superexp());
        let oracle: i128 = (0..=5)
            .map(|l| if l % 2 == 0 { -1 } else { 1 } * (1i128 << (1 << l)))
            .sum();
        assert_eq!(oracle, 4_294_902_002);
        assert_eq!(s.eval(1 << 32).unwrap() as i128, oracle);
    }

    #[test]
    fn closed_forms_attached() {
        assert!(matches!(
            seq(SetExpr::evens()).closed_form(),
            Some(ClosedForm::FloorLinear { .. })
        ));
        assert!(matches!(
            seq(SetExpr::Powers(3)).closed_form(),
            Some(ClosedForm::RootFloor(3))
        ));
        assert!(matches!(seq(SetExpr::Primes).closed_form(), Some(ClosedForm::PrimePi)));
        assert!(matches!(
            seq(SetExpr::superexp()).closed_form(),
            Some(ClosedForm::BlockSum(_))
        ));
        assert!(matches!(
            seq(SetExpr::finite([1, 2]).unwrap()).closed_form(),
            Some(ClosedForm::Periodic(_))
        ));
        let u = SetExpr::union(SetExpr::Powers(2), SetExpr::Powers(3));
        assert!(matches!(seq(u).closed_form(), Some(ClosedForm::Combination(_))));
    }

    #[test]
    fn descriptor_examples() {
        let d = descriptor(&SetExpr::superexp());
        assert_eq!((d.liminf_density, d.limsup_density), (Some(q(0, 1)), Some(q(1, 1))));
        let d = descriptor(&SetExpr::BlockSet(BlockSchedule::BitLengthParity));
        assert_eq!((d.liminf_density, d.limsup_density), (Some(q(1, 3)), Some(q(2, 3))));
        let d = descriptor(&SetExpr::BlockSet(BlockSchedule::LeadingDecimal(1)));
        assert_eq!((d.liminf_density, d.limsup_density), (Some(q(1, 9)), Some(q(5, 9))));
        let d = descriptor(&SetExpr::not(SetExpr::superexp()));
        assert_eq!((d.liminf_density, d.limsup_density), (Some(q(0, 1)), Some(q(1, 1))));
        let d = descriptor(&SetExpr::arith_prog(6, 5).unwrap());
        assert_eq!(d.exact_density(), Some(&q(1, 6)));
        assert_eq!(
            d.eventually_periodic,
            Some(PeriodicSummary {
                preperiod: 0,
                period: 6,
                gain: 1
            })
        );
        let d = descriptor(&SetExpr::union(SetExpr::evens(), SetExpr::Powers(2)));
        assert_eq!(d.exact_density(), Some(&q(1, 2)));
        let d = descriptor(&SetExpr::union(SetExpr::evens(), SetExpr::superexp()));
        assert_eq!(d, GrowthDescriptor::default());
    }

    #[test]
    fn evens_weakly_below_odds() {
        let c = compare_eventually(&seq(SetExpr::evens()), &seq(SetExpr::odds()), 1000);
        assert_eq!(c.verdict, Verdict::WeakLess);
        assert_eq!(
            (c.leq_eventually, c.geq_eventually, c.eq_eventually),
            (Some(true), Some(false), Some(false))
        );
        assert_eq!(c.gap, Some((0, 1)));
    }

    #[test]
    fn superexp_incomparable_with_evens() {
        let c = compare_eventually(&seq(SetExpr::superexp()), &seq(SetExpr::evens()), 1000);
        assert_eq!(c.verdict, Verdict::Incomparable);
        let w = c.witnesses.unwrap();
        assert_eq!(w.left_ahead.to_string(), "n = 2^(2^k), k odd");
        assert_eq!(w.right_ahead.to_string(), "n = 2^(2^k), k even");
        assert!(w.left_ahead_checked.contains(&256));
        assert!(w.left_ahead_checked.contains(&(1 << 32)));
        assert!(w.right_ahead_checked.contains(&16));
        assert!(w.right_ahead_checked.contains(&65536));
    }

    #[test]
    fn proper_subsets_are_strictly_smaller() {
        let p = SetExpr::Primes;
        let sp = SetExpr::intersection(SetExpr::Primes, SetExpr::superexp());
        let c = compare_eventually(&seq(sp.clone()), &seq(p.clone()), 10);
        assert_eq!((c.verdict, c.certificate), (Verdict::StrictLess, Certificate::Subset));
        let c = compare_eventually(&seq(p), &seq(sp), 10);
        assert_eq!(c.verdict, Verdict::StrictGreater);
        assert!(included(&SetExpr::Powers(6), &SetExpr::Powers(2)));
        assert!(included(&SetExpr::arith_prog(4, 2).unwrap(), &SetExpr::evens()));
        assert!(!included(&SetExpr::arith_prog(4, 1).unwrap(), &SetExpr::evens()));
    }

    #[test]
    fn strict_by_density() {
        let c = compare_eventually(&seq(SetExpr::arith_prog(4, 0).unwrap()), &seq(SetExpr::evens()), 100);
        assert_eq!(c.verdict, Verdict::StrictLess);
        let cum_a = seq(SetExpr::arith_prog(4, 0).unwrap()).prefix_counts(10_000).unwrap();
        let cum_b = seq(SetExpr::evens()).prefix_counts(10_000).unwrap();
        assert!((4..=10_000).all(|n| cum_a[n] < cum_b[n]));
    }

    #[test]
    fn reflexive_on_everything() {
        for e in [
            SetExpr::Primes,
            SetExpr::superexp(),
            SetExpr::union(SetExpr::Primes, SetExpr::superexp()),
        ] {
            let c = compare_eventually(&seq(e.clone()), &seq(e), 10);
            assert_eq!(c.verdict, Verdict::Equal);
        }
    }

    #[test]
    fn unresolved_gives_evidence() {
        let c = compare_eventually(&seq(SetExpr::Primes), &seq(SetExpr::Powers(2)), 10_000);
        assert_eq!(c.verdict, Verdict::Unknown);
        assert_eq!(c.leq_eventually, None);
        let ev = c.evidence.unwrap();
        assert_eq!(ev.scanned_to, 10_000);
        assert_eq!(ev.less + ev.equal + ev.greater, 10_000);
        assert!(ev.greater > 9_000);
    }

    #[test]
    fn growth_rules() {
        let fin = seq(SetExpr::finite([1, 2, 3]).unwrap());
        let c = compare_eventually(&fin, &seq(SetExpr::Primes), 10);
        assert_eq!(c.verdict, Verdict::StrictLess);
        let c = compare_eventually(&seq(SetExpr::Powers(3)), &seq(SetExpr::Powers(2)), 10);
        assert_eq!(c.verdict, Verdict::StrictLess);
        let c = compare_eventually(&seq(SetExpr::cofinite([2]).unwrap()), &seq(SetExpr::superexp()), 10);
        assert_eq!(c.verdict, Verdict::StrictGreater);
    }

    #[test]
    fn finite_difference_rule() {
        let s = SetExpr::superexp();
        let t = SetExpr::difference(s.clone(), SetExpr::finite([17]).unwrap());
        let c = compare_eventually(&seq(t), &seq(s), 10);
        assert_eq!(c.verdict, Verdict::StrictLess);
        assert_eq!(c.certificate, Certificate::FiniteDifference);
        assert_eq!(c.gap, Some((1, 1)));
    }

    #[test]
    fn swap_symmetry() {
        let pairs = [
            (SetExpr::evens(), SetExpr::odds()),
            (SetExpr::superexp(), SetExpr::evens()),
            (SetExpr::Primes, SetExpr::Powers(2)),
            (SetExpr::arith_prog(3, 1).unwrap(), SetExpr::arith_prog(3, 2).unwrap()),
        ];
        for (x, y) in pairs {
            let ab = compare_eventually(&seq(x.clone()), &seq(y.clone()), 1000);
            let ba = compare_eventually(&seq(y), &seq(x), 1000);
            assert_eq!(ab.clone().swap().verdict, ba.verdict);
            assert_eq!(ab.swap().gap, ba.gap);
        }
    }

    #[test]
    fn periodic_incomparable() {
        // M_{3,1} and M_{3,2} leapfrog: f(M_{3,1}) − f(M_{3,2}) ∈ {0, 1} → WeakGreater
        let c = compare_eventually(
            &seq(SetExpr::arith_prog(3, 1).unwrap()),
            &seq(SetExpr::arith_prog(3, 2).unwrap()),
            100,
        );
        assert_eq!(c.verdict, Verdict::WeakGreater);
        // {1} ∪ M_{2,0} vs M_{2,1}: gaps −1 and 0 → WeakGreater; shift to get crossing
        let a = SetExpr::union(SetExpr::arith_prog(4, 0).unwrap(), SetExpr::arith_prog(4, 1).unwrap());
        let b = SetExpr::union(SetExpr::arith_prog(4, 2).unwrap(), SetExpr::arith_prog(4, 3).unwrap());
        let c = compare_eventually(&seq(a), &seq(b), 100);
        // f_a − f_b over one period: n≡1:+1, n≡2:0, n≡3:−1, n≡0:0
        assert_eq!(c.verdict, Verdict::Incomparable);
        let w = c.witnesses.unwrap();
        assert_eq!(
            w.left_ahead,
            IndexFamily::Residues {
                period: 4,
                residues: vec![1],
                after: 0
            }
        );
        assert_eq!(
            w.right_ahead,
            IndexFamily::Residues {
                period: 4,
                residues: vec![3],
                after: 0
            }
        );
        assert_eq!(w.left_ahead_checked, vec![1, 5, 9, 13, 17, 21, 25, 29]);
    }

    #[test]
    fn prefix_override_ignored_by_decisions() {
        let a = SeqSum::single(seq(SetExpr::evens())).with_prefix(vec![9; 50]);
        let b = SeqSum::single(seq(SetExpr::odds()));
        assert_eq!(compare_sums(&a, &b, 1000).verdict, Verdict::WeakLess);
        assert_eq!(a.eval(3).unwrap(), 9);
        assert_eq!(a.eval(51).unwrap(), 25);
    }
}
