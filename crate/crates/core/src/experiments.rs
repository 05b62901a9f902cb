//! Binomial subset histograms, the boundary table of 𝕊 and seeded
//! random-subset trials.
//!
//! Random bits come from xoshiro256++ seeded with `seed_from_u64(seed)`.
//! Trial `t` uses that generator advanced by `t` jumps of `2^128` steps,
//! so streams never overlap and every trial is reproducible on its own.

use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::decimal::{to_decimal, SIGNIFICANT};
use crate::par::{self, Execution};
use crate::{Error, Result};

/// Largest `n` accepted by [`subset_histogram`].
pub const MAX_HISTOGRAM_N: u64 = 100_000;
/// Largest `N · trials` accepted by [`random_subset_trial`].
pub const MAX_TRIAL_BITS: u128 = 1_000_000_000;
/// Largest trial count; deviations are kept as exact rationals.
pub const MAX_TRIALS: u64 = 1 << 20;
/// Largest `k` accepted by [`s_table`]: `2^(2^7) = 2^128`.
pub const MAX_S_TABLE_K: u32 = 7;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HistogramRow {
    pub k: u64,
    /// `C(n, k)`.
    pub count: BigUint,
    /// `k/n`.
    pub fraction: BigRational,
    /// `C(n, k) / 2^n`.
    pub relative: BigRational,
}

/// Number of subsets of an `n`-element set with each size `k`.
pub fn subset_histogram(n: u64) -> Result<Vec<HistogramRow>> {
    subset_histogram_with(n, Execution::default())
}

pub fn subset_histogram_with(n: u64, exec: Execution) -> Result<Vec<HistogramRow>> {
    if n < 2 || n % 2 == 1 {
        return Err(Error::Precondition(format!("n must be even and at least 2, got {n}")));
    }
    if n > MAX_HISTOGRAM_N {
        return Err(Error::TooLarge {
            what: format!("histogram size n = {n}"),
            limit: MAX_HISTOGRAM_N.to_string(),
        });
    }
    let mut counts = Vec::with_capacity(n as usize + 1);
    let mut c = BigUint::one();
    counts.push(c.clone());
    for k in 1..=n {
        c = c * (n - k + 1) / k;
        counts.push(c.clone());
    }
    let total = BigInt::one() << n;
    let rows = par::map_indexed(exec, counts.len(), |k| HistogramRow {
        k: k as u64,
        count: counts[k].clone(),
        fraction: BigRational::new(BigInt::from(k), BigInt::from(n)),
        relative: BigRational::new(BigInt::from(counts[k].clone()), total.clone()),
    });
    Ok(rows)
}

pub const HISTOGRAM_HEADER: &str = "k,count,fraction_num,fraction_den,relative_decimal";

pub fn histogram_csv(rows: &[HistogramRow]) -> String {
    let lines = par::map_slice(Execution::default(), rows, |r| {
        format!(
            "{},{},{},{},{}\n",
            r.k,
            r.count,
            r.fraction.numer(),
            r.fraction.denom(),
            to_decimal(&r.relative, SIGNIFICANT)
        )
    });
    format!("{HISTOGRAM_HEADER}\n{}", lines.concat())
}

/// Exact probability mass of the bins with `|k/n − 1/2| ≤ tolerance`.
pub fn central_mass(rows: &[HistogramRow], tolerance: &BigRational) -> BigRational {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    rows.iter()
        .filter(|r| (&r.fraction - &half).abs() <= *tolerance)
        .fold(BigRational::zero(), |acc, r| acc + &r.relative)
}

/// `log₂ x` for a positive big integer, to double precision.
fn log2(x: &BigUint) -> f64 {
    let bits = x.bits();
    let shift = bits.saturating_sub(53);
    let top = (x >> shift).to_f64().unwrap_or(f64::MAX);
    top.log2() + shift as f64
}

/// Bar chart of `log₂ C(n, k)` against `k/n`, as a standalone SVG document.
pub fn histogram_svg(rows: &[HistogramRow]) -> String {
    const W: f64 = 800.0;
    const H: f64 = 400.0;
    const PAD: f64 = 40.0;
    let n = rows.len().saturating_sub(1).max(1) as f64;
    let peak = rows.iter().map(|r| log2(&r.count)).fold(1.0, f64::max);
    let bar = (W - 2.0 * PAD) / (n + 1.0);
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
    );
    let _ = writeln!(svg, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    for r in rows {
        let h = (log2(&r.count) / peak) * (H - 2.0 * PAD);
        let x = PAD + r.k as f64 * bar;
        let _ = writeln!(
            svg,
            r#"<rect x="{x:.3}" y="{:.3}" width="{:.3}" height="{h:.3}" fill="steelblue"/>"#,
            H - PAD - h,
            bar.max(0.5)
        );
    }
    let axis = H - PAD;
    let _ = writeln!(
        svg,
        r#"<line x1="{PAD}" y1="{axis}" x2="{}" y2="{axis}" stroke="black"/>"#,
        W - PAD
    );
    for (label, frac) in [("0", 0.0), ("1/2", 0.5), ("1", 1.0)] {
        let x = PAD + frac * n * bar + bar / 2.0;
        let _ = writeln!(
            svg,
            r#"<text x="{x:.3}" y="{}" font-size="12" text-anchor="middle">{label}</text>"#,
            axis + 16.0
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="20" font-size="14" text-anchor="middle">log2 C({}, k) against k/n</text>"#,
        W / 2.0,
        rows.len() - 1
    );
    svg.push_str("</svg>\n");
    svg
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct STableRow {
    pub k: u32,
    /// `2^(2^k)`.
    pub n: BigUint,
    pub f: BigUint,
    pub ratio: BigRational,
}

/// `f_n(𝕊)` at the boundaries `n = 2^(2^k)`, `1 ≤ k ≤ k_max`, from the
/// alternating sum `Σ_{l ≤ K} (−1)^{l+1} 2^(2^l)` with `K = k` for odd
/// `k` and `K = k − 1` for even `k`.
pub fn s_table(k_max: u32) -> Result<Vec<STableRow>> {
    if !(1..=MAX_S_TABLE_K).contains(&k_max) {
        return Err(Error::Precondition(format!(
            "k_max must lie in 1..={MAX_S_TABLE_K}, got {k_max}"
        )));
    }
    Ok((1..=k_max)
        .map(|k| {
            let top = if k % 2 == 1 { k } else { k - 1 };
            let f: BigInt = (0..=top)
                .map(|l| {
                    let term = BigInt::one() << (1u64 << l);
                    if l % 2 == 0 {
                        -term
                    } else {
                        term
                    }
                })
                .sum();
            let n = BigInt::one() << (1u64 << k);
            STableRow {
                k,
                n: n.to_biguint().expect("positive"),
                f: f.to_biguint().expect("non-negative"),
                ratio: BigRational::new(f, n),
            }
        })
        .collect())
}

pub const S_TABLE_HEADER: &str = "k,n,f,ratio_num,ratio_den,ratio_decimal";

pub fn s_table_csv(rows: &[STableRow]) -> String {
    let mut out = format!("{S_TABLE_HEADER}\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            r.k,
            r.n,
            r.f,
            r.ratio.numer(),
            r.ratio.denom(),
            to_decimal(&r.ratio, SIGNIFICANT)
        );
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialStats {
    pub n: u64,
    pub trials: u64,
    pub seed: u64,
    /// `|f_N/N − 1/2|` per trial, in trial order.
    pub deviations: Vec<BigRational>,
    pub max_deviation: BigRational,
}

pub fn random_subset_trial(n: u64, trials: u64, seed: u64) -> Result<TrialStats> {
    random_subset_trial_with(n, trials, seed, Execution::default())
}

pub fn random_subset_trial_with(n: u64, trials: u64, seed: u64, exec: Execution) -> Result<TrialStats> {
    if n == 0 || trials == 0 {
        return Err(Error::Precondition(format!(
            "N and trials must be at least 1, got N = {n}, trials = {trials}"
        )));
    }
    if n as u128 * trials as u128 > MAX_TRIAL_BITS {
        return Err(Error::TooLarge {
            what: format!("N * trials = {}", n as u128 * trials as u128),
            limit: MAX_TRIAL_BITS.to_string(),
        });
    }
    if trials > MAX_TRIALS {
        return Err(Error::TooLarge {
            what: format!("trials = {trials}"),
            limit: MAX_TRIALS.to_string(),
        });
    }
    let mut streams = Vec::with_capacity(trials as usize);
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    for _ in 0..trials {
        streams.push(rng.clone());
        rng.jump();
    }
    let counts = par::map_slice(exec, &streams, |g| count_ones(g.clone(), n));
    let deviations: Vec<BigRational> = counts
        .into_iter()
        .map(|f| {
            let gap = (2 * f as i128 - n as i128).abs();
            BigRational::new(BigInt::from(gap), BigInt::from(2 * n as i128))
        })
        .collect();
    let max_deviation = deviations.iter().max().cloned().expect("trials ≥ 1");
    Ok(TrialStats {
        n,
        trials,
        seed,
        deviations,
        max_deviation,
    })
}

/// Number of set bits among the first `n` bits of the stream.
fn count_ones(mut g: Xoshiro256PlusPlus, n: u64) -> u64 {
    let mut ones = 0u64;
    let full = n / 64;
    for _ in 0..full {
        ones += g.next_u64().count_ones() as u64;
    }
    let rest = n % 64;
    if rest > 0 {
        ones += (g.next_u64() & ((1u64 << rest) - 1)).count_ones() as u64;
    }
    ones
}

pub const TRIALS_HEADER: &str = "trial,deviation_decimal";

pub fn trials_csv(stats: &TrialStats) -> String {
    let mut out = format!("{TRIALS_HEADER}\n");
    for (t, d) in stats.deviations.iter().enumerate() {
        let _ = writeln!(out, "{t},{}", to_decimal(d, SIGNIFICANT));
    }
    out
}
