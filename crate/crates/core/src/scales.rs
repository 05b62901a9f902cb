//! Cardinality, infinite lottery valuations and the combined size report.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Zero};

use crate::density::{generalized_hull, natural_density, DensityValue};
use crate::numerosity::{alpha_numerosity, cnum, cnum_compare, NumerosityAnswer, Profile};
use crate::seq::Verdict;
use crate::set::{classify, Fin};
use crate::{AlphaExpr, Error, Result, SetExpr};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CardinalityClass {
    FiniteCard(u64),
    Aleph0,
}

impl fmt::Display for CardinalityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CardinalityClass::FiniteCard(k) => write!(f, "finite {k}"),
            CardinalityClass::Aleph0 => f.write_str("aleph0"),
        }
    }
}

/// Valuations ordered `V0 < V1 < … < Vinf < … < V-1 < V-0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LotteryValue {
    /// Sets with `n` elements.
    V(u64),
    /// Sets missing exactly `n` elements.
    Vminus(u64),
    /// Infinite co-infinite sets.
    Vinf,
}

impl LotteryValue {
    fn key(self) -> (u8, i128) {
        match self {
            LotteryValue::V(n) => (0, n as i128),
            LotteryValue::Vinf => (1, 0),
            LotteryValue::Vminus(n) => (2, -(n as i128)),
        }
    }

    /// Valuation of the complement.
    pub fn mirror(self) -> Self {
        match self {
            LotteryValue::V(n) => LotteryValue::Vminus(n),
            LotteryValue::Vminus(n) => LotteryValue::V(n),
            LotteryValue::Vinf => LotteryValue::Vinf,
        }
    }
}

impl Ord for LotteryValue {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for LotteryValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for LotteryValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LotteryValue::V(n) => write!(f, "V{n}"),
            LotteryValue::Vminus(n) => write!(f, "V-{n}"),
            LotteryValue::Vinf => f.write_str("Vinf"),
        }
    }
}

fn finiteness(expr: &SetExpr) -> Result<Fin> {
    match classify(expr) {
        Fin::Unknown => Err(Error::CannotClassify(crate::dsl::render(expr))),
        fin => Ok(fin),
    }
}

pub fn cardinality(expr: &SetExpr) -> Result<CardinalityClass> {
    Ok(match finiteness(expr)? {
        Fin::Finite(v) => CardinalityClass::FiniteCard(v.len() as u64),
        _ => CardinalityClass::Aleph0,
    })
}

pub fn lottery_value(expr: &SetExpr) -> Result<LotteryValue> {
    Ok(match finiteness(expr)? {
        Fin::Finite(v) => LotteryValue::V(v.len() as u64),
        Fin::CoFinite(v) => LotteryValue::Vminus(v.len() as u64),
        _ => LotteryValue::Vinf,
    })
}

pub fn lottery_compare(u: LotteryValue, v: LotteryValue) -> Ordering {
    u.cmp(&v)
}

/// A decided c-numerosity comparison against a reference set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnumNote {
    pub reference: &'static str,
    pub verdict: Verdict,
}

impl fmt::Display for CnumNote {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} vs {}", self.verdict, self.reference)
    }
}

/// All six measures for one set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SizeReport {
    pub expr: String,
    pub cardinality: Option<CardinalityClass>,
    pub lottery: Option<LotteryValue>,
    pub density: DensityValue,
    pub hull: DensityValue,
    pub alpha_canonical: NumerosityAnswer,
    pub alpha_free: NumerosityAnswer,
    pub cnum_notes: Vec<CnumNote>,
}

const REFERENCES: [&str; 5] = ["empty", "finite{1}", "mod 2 0", "mod 2 1", "all"];

pub const REPORT_HEADER: &str = "expr,cardinality,lottery,density,hull,alpha_canonical,alpha_free,cnum_notes";

pub fn size_report(expr: &SetExpr) -> SizeReport {
    let own = cnum(expr);
    let cnum_notes = REFERENCES
        .iter()
        .filter_map(|&reference| {
            let r = crate::dsl::parse(reference).expect("reference sets parse");
            let verdict = cnum_compare(&own, &cnum(&r), 0).verdict;
            verdict.is_decided().then_some(CnumNote { reference, verdict })
        })
        .collect();
    let report = SizeReport {
        expr: crate::dsl::render(expr),
        cardinality: cardinality(expr).ok(),
        lottery: lottery_value(expr).ok(),
        density: natural_density(expr),
        hull: generalized_hull(expr),
        alpha_canonical: alpha_numerosity(expr, Profile::Canonical),
        alpha_free: alpha_numerosity(expr, Profile::Free),
        cnum_notes,
    };
    debug_assert_eq!(report.check(), Ok(()));
    report
}

fn show<T: fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "unknown".into(), T::to_string)
}

fn show_answer(a: &NumerosityAnswer) -> String {
    match a {
        NumerosityAnswer::Exact(x) => x.to_string(),
        other => other.to_string(),
    }
}

impl SizeReport {
    fn fields(&self) -> [(&'static str, String); 8] {
        let notes: Vec<String> = self.cnum_notes.iter().map(ToString::to_string).collect();
        [
            ("expr", self.expr.clone()),
            ("cardinality", show(&self.cardinality)),
            ("lottery", show(&self.lottery)),
            ("density", self.density.to_string()),
            ("hull", self.hull.to_string()),
            ("alpha_canonical", show_answer(&self.alpha_canonical)),
            ("alpha_free", show_answer(&self.alpha_free)),
            ("cnum_notes", notes.join("; ")),
        ]
    }

    /// One `field: value` line per measure.
    pub fn to_text(&self) -> String {
        self.fields().iter().map(|(k, v)| format!("{k}: {v}\n")).collect()
    }

    /// One CSV row in [`REPORT_HEADER`] order, every field quoted.
    pub fn to_csv_row(&self) -> String {
        let cells: Vec<String> = self
            .fields()
            .iter()
            .map(|(_, v)| format!("\"{}\"", v.replace('"', "\"\"")))
            .collect();
        cells.join(",")
    }

    /// Cross-measure consistency: a finite set of size `k` has valuation
    /// `V(k)`, density 0 and numerosity `k`; co-finite sets mirror this.
    pub fn check(&self) -> std::result::Result<(), String> {
        let fail = |what: &str| Err(format!("inconsistent report for `{}`: {what}", self.expr));
        match (self.cardinality, self.lottery) {
            (Some(CardinalityClass::FiniteCard(k)), Some(LotteryValue::V(j))) if k == j => {
                if self.density.exact().is_none_or(|d| !d.is_zero()) {
                    return fail("finite set without density 0");
                }
                if self.alpha_canonical != NumerosityAnswer::Exact(AlphaExpr::constant(k)) {
                    return fail("finite set without numerosity k");
                }
            }
            (Some(CardinalityClass::FiniteCard(_)), _) => return fail("finite cardinality with other valuation"),
            (Some(CardinalityClass::Aleph0), Some(LotteryValue::V(_))) => return fail("infinite set valued as finite"),
            (Some(CardinalityClass::Aleph0), Some(LotteryValue::Vminus(k))) => {
                if self.density.exact().is_none_or(|d| !d.is_one()) {
                    return fail("co-finite set without density 1");
                }
                if self.alpha_canonical != NumerosityAnswer::Exact(AlphaExpr::alpha() - AlphaExpr::constant(k)) {
                    return fail("co-finite set without numerosity α − k");
                }
            }
            (None, Some(_)) | (Some(_), None) => return fail("cardinality and valuation disagree on decidability"),
            _ => {}
        }
        if self.density != self.hull && matches!(self.density, DensityValue::Exact(_)) {
            return fail("exact density but different hull");
        }
        Ok(())
    }
}
