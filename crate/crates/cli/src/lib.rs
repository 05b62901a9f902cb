//! The `nsize` command line.
//!
//! Data goes to `out`, diagnostics to `err`. Exit codes: 0 success,
//! 2 parse or usage error, 3 precondition error, 4 resource cap.

use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use nsize::alpha::alpha_compare;
use nsize::density::{self, DensityValue};
use nsize::dsl::{self, ParseError};
use nsize::experiments;
use nsize::numerosity::{self, NumerosityAnswer, Profile};
use nsize::scales;
use nsize::seq::{EventualComparison, SizeSequence, Verdict, DEFAULT_HORIZON};
use nsize::set::classify_finiteness;
use nsize::{decimal, Error, Limits, SetExpr};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_RESOURCE: i32 = 4;
const EXIT_IO: i32 = 1;

#[derive(Parser, Debug)]
#[command(
    name = "nsize",
    version,
    about = "Exact size measures for subsets of the natural numbers"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Canonical,
    Free,
    Cnum,
    Super,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Measure {
    Cnum,
    Density,
    Alpha,
    Lottery,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Finite, co-finite or infinite co-infinite.
    Classify { expr: String },
    /// Natural density, or lower/upper density when it does not exist.
    Density {
        expr: String,
        /// Also print f_n and f_n/n at these n.
        #[arg(long, value_delimiter = ',')]
        profile_checkpoints: Vec<u128>,
    },
    /// α-numerosity, c-numerosity or supervaluation.
    Numerosity {
        expr: String,
        #[arg(long, value_enum)]
        mode: Mode,
    },
    /// Compare two sets under one measure.
    Compare {
        a: String,
        b: String,
        #[arg(long, value_enum)]
        measure: Measure,
        /// Scan length for comparisons no rule decides.
        #[arg(long, default_value_t = DEFAULT_HORIZON)]
        horizon: u128,
    },
    /// χ_n, f_n and f_n/n at the given n.
    Table {
        expr: String,
        #[arg(long, value_delimiter = ',', required = true)]
        at: Vec<u128>,
    },
    /// All measures for one set.
    Report { expr: String },
    /// Subset-size histogram of an n-element set.
    Hist {
        #[arg(long)]
        n: u64,
        /// Also write the histogram as SVG to this file.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// f_n(superexp) at n = 2^(2^k) for k = 1..=kmax.
    STable {
        #[arg(long)]
        kmax: u32,
    },
    /// Density deviation of seeded random subsets of {1..N}.
    SampleRandom {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
    },
}

#[derive(Debug)]
enum Failure {
    Parse { input: String, error: ParseError },
    Lib(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = std::result::Result<(), Failure>;

struct Ctx<'a> {
    format: Format,
    limits: Limits,
    out: &'a mut dyn Write,
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I, limits: Limits, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_PARSE
                }
            };
        }
    };
    let mut ctx = Ctx {
        format: cli.format,
        limits,
        out,
    };
    match dispatch(&mut ctx, cli.command) {
        Ok(()) => EXIT_OK,
        Err(f) => report_failure(f, err),
    }
}

fn report_failure(f: Failure, err: &mut dyn Write) -> i32 {
    let (code, msg) = match f {
        Failure::Parse { input, error } => {
            let caret = format!(
                "{}{}",
                " ".repeat(input[..error.span.start].chars().count()),
                "^".repeat(input[error.span.start..error.span.end].chars().count().max(1))
            );
            (EXIT_PARSE, format!("error: {error}\n  {input}\n  {caret}"))
        }
        Failure::Lib(Error::Parse(e)) => (EXIT_PARSE, format!("error: {e}")),
        Failure::Lib(e) if e.is_resource() => (EXIT_RESOURCE, format!("error: {e}")),
        Failure::Lib(e) => (EXIT_PRECONDITION, format!("error: {e}")),
        Failure::Io(e) => (EXIT_IO, format!("error: {e}")),
    };
    let _ = writeln!(err, "{msg}");
    code
}

fn parse_expr(text: &str) -> std::result::Result<SetExpr, Failure> {
    dsl::parse(text).map_err(|error| Failure::Parse {
        input: text.to_string(),
        error,
    })
}

fn csv_cell(v: &str) -> String {
    if v.contains([',', '"', '\n']) || v.contains(' ') {
        format!("\"{}\"", v.replace('"', "\"\""))
    } else {
        v.to_string()
    }
}

fn dispatch(ctx: &mut Ctx<'_>, command: Command) -> Outcome {
    match command {
        Command::Classify { expr } => classify(ctx, &parse_expr(&expr)?),
        Command::Density {
            expr,
            profile_checkpoints,
        } => density(ctx, &parse_expr(&expr)?, &profile_checkpoints),
        Command::Numerosity { expr, mode } => numerosity(ctx, &parse_expr(&expr)?, mode),
        Command::Compare { a, b, measure, horizon } => {
            let (a, b) = (parse_expr(&a)?, parse_expr(&b)?);
            compare(ctx, &a, &b, measure, horizon)
        }
        Command::Table { expr, at } => table(ctx, &parse_expr(&expr)?, &at),
        Command::Report { expr } => report(ctx, &parse_expr(&expr)?),
        Command::Hist { n, svg } => hist(ctx, n, svg),
        Command::STable { kmax } => s_table(ctx, kmax),
        Command::SampleRandom { n, trials, seed } => sample_random(ctx, n, trials, seed),
    }
}

fn classify(ctx: &mut Ctx<'_>, e: &SetExpr) -> Outcome {
    let class = classify_finiteness(e);
    match ctx.format {
        Format::Text => writeln!(ctx.out, "{class}")?,
        Format::Csv => {
            let text = class.to_string();
            let (kind, count) = text.split_once(' ').unwrap_or((&text, ""));
            write!(ctx.out, "class,count\n{kind},{count}\n")?;
        }
    }
    Ok(())
}

fn density(ctx: &mut Ctx<'_>, e: &SetExpr, checkpoints: &[u128]) -> Outcome {
    let d = density::natural_density(e);
    let rows = if checkpoints.is_empty() {
        None
    } else {
        Some(density::density_profile(e, checkpoints, ctx.limits)?)
    };
    match (ctx.format, rows) {
        (Format::Text, rows) => {
            writeln!(ctx.out, "{d}")?;
            for r in rows.iter().flatten() {
                writeln!(
                    ctx.out,
                    "n {} f_n {} ratio {} ~ {}",
                    r.n,
                    r.f_n,
                    r.ratio,
                    decimal::to_decimal(&r.ratio, decimal::SIGNIFICANT)
                )?;
            }
        }
        (Format::Csv, None) => writeln!(ctx.out, "{}", d.to_csv())?,
        (Format::Csv, Some(rows)) => write!(ctx.out, "{}", density::profile_csv(&rows))?,
    }
    Ok(())
}

const CNUM_PREVIEW: u128 = 10;

fn numerosity(ctx: &mut Ctx<'_>, e: &SetExpr, mode: Mode) -> Outcome {
    let (label, value) = match mode {
        Mode::Canonical => (
            "canonical",
            numerosity::alpha_numerosity(e, Profile::Canonical).to_string(),
        ),
        Mode::Free => ("free", numerosity::alpha_numerosity(e, Profile::Free).to_string()),
        Mode::Super => ("super", numerosity::supervaluation(e).to_string()),
        Mode::Cnum => {
            let seq = SizeSequence::new(e.clone(), ctx.limits);
            let form = seq
                .closed_form()
                .map_or_else(|| "enumeration".to_string(), ToString::to_string);
            let terms = (1..=CNUM_PREVIEW)
                .map(|n| seq.eval(n).map(|v| v.to_string()))
                .collect::<nsize::Result<Vec<_>>>()?;
            ("cnum", format!("cnum [f_n = {form}] f_1.. = {},...", terms.join(",")))
        }
    };
    match ctx.format {
        Format::Text => writeln!(ctx.out, "{value}")?,
        Format::Csv => write!(ctx.out, "mode,answer\n{label},{}\n", csv_cell(&value))?,
    }
    Ok(())
}

/// Short names for sets with conventional letters.
fn letter(e: &SetExpr, fallback: &'static str) -> &'static str {
    match dsl::render(e).as_str() {
        "mod 2 0" => "E",
        "mod 2 1" => "O",
        "all" => "N",
        "superexp" => "S",
        _ => fallback,
    }
}

fn cnum_note(a: &SetExpr, b: &SetExpr, c: &EventualComparison, limits: Limits) -> Option<String> {
    let (na, nb) = (letter(a, "A"), letter(b, "B"));
    let (na, nb) = if na == nb { ("A", "B") } else { (na, nb) };
    let plus = |k: i128| if k == 0 { String::new() } else { format!("+{k}") };
    let mut note = match (c.verdict, c.gap) {
        (Verdict::Equal, _) => format!("cnum({na}) = cnum({nb})"),
        (Verdict::WeakLess, Some((_, hi))) => format!("cnum({na}) ≤ cnum({nb}) ≤ cnum({na}){}", plus(hi)),
        (Verdict::WeakGreater, Some((lo, _))) => format!("cnum({nb}) ≤ cnum({na}) ≤ cnum({nb}){}", plus(-lo)),
        (Verdict::StrictLess, Some((lo, hi))) if lo == hi => format!("cnum({nb}) = cnum({na}){}", plus(lo)),
        (Verdict::StrictGreater, Some((lo, hi))) if lo == hi => format!("cnum({na}) = cnum({nb}){}", plus(-lo)),
        _ => return None,
    };
    let sum = numerosity::cnum_add(&numerosity::cnum_with(a, limits), &numerosity::cnum_with(b, limits));
    let full = numerosity::cnum_with(&SetExpr::Full, limits);
    if numerosity::cnum_compare(&sum, &full, 0).verdict == Verdict::Equal {
        note.push_str("; sum = a");
    }
    Some(note)
}

fn density_order(a: &DensityValue, b: &DensityValue) -> &'static str {
    match (a, b) {
        (DensityValue::Exact(x), DensityValue::Exact(y)) => ordering_name(x.cmp(y)),
        (DensityValue::Unknown, _) | (_, DensityValue::Unknown) => "Unknown",
        _ => {
            let hull = |d: &DensityValue| match d {
                DensityValue::Exact(x) => (x.clone(), x.clone()),
                DensityValue::Bounds(lo, hi) => (lo.clone(), hi.clone()),
                DensityValue::Unknown => unreachable!(),
            };
            let ((alo, ahi), (blo, bhi)) = (hull(a), hull(b));
            if ahi < blo {
                "Less"
            } else if bhi < alo {
                "Greater"
            } else {
                "Incomparable"
            }
        }
    }
}

fn ordering_name(o: std::cmp::Ordering) -> &'static str {
    match o {
        std::cmp::Ordering::Less => "Less",
        std::cmp::Ordering::Equal => "Equal",
        std::cmp::Ordering::Greater => "Greater",
    }
}

fn alpha_order(a: &NumerosityAnswer, b: &NumerosityAnswer) -> &'static str {
    let hull = |x: &NumerosityAnswer| match x {
        NumerosityAnswer::Exact(v) => Some((v.clone(), v.clone())),
        NumerosityAnswer::Range { lower, upper } => Some((lower.0.clone(), upper.1.clone())),
        NumerosityAnswer::Unknown => None,
    };
    match (a, b, hull(a), hull(b)) {
        (NumerosityAnswer::Exact(x), NumerosityAnswer::Exact(y), ..) => ordering_name(alpha_compare(x, y)),
        (_, _, Some((_, ahi)), Some((blo, _))) if ahi < blo => "Less",
        (_, _, Some((alo, _)), Some((_, bhi))) if bhi < alo => "Greater",
        _ => "Unknown",
    }
}

fn compare(ctx: &mut Ctx<'_>, a: &SetExpr, b: &SetExpr, measure: Measure, horizon: u128) -> Outcome {
    match measure {
        Measure::Cnum => {
            let c = numerosity::cnum_compare(
                &numerosity::cnum_with(a, ctx.limits),
                &numerosity::cnum_with(b, ctx.limits),
                horizon,
            );
            let note = cnum_note(a, b, &c, ctx.limits);
            write_cnum(ctx, &c, note)
        }
        Measure::Density => {
            let (da, db) = (density::natural_density(a), density::natural_density(b));
            let verdict = density_order(&da, &db);
            match ctx.format {
                Format::Text => writeln!(ctx.out, "verdict {verdict}\nleft {da}\nright {db}")?,
                Format::Csv => write!(
                    ctx.out,
                    "measure,verdict,left,right\ndensity,{verdict},{},{}\n",
                    csv_cell(&da.to_string()),
                    csv_cell(&db.to_string())
                )?,
            }
            Ok(())
        }
        Measure::Alpha => {
            let xa = numerosity::alpha_numerosity(a, Profile::Canonical);
            let xb = numerosity::alpha_numerosity(b, Profile::Canonical);
            let verdict = alpha_order(&xa, &xb);
            match ctx.format {
                Format::Text => writeln!(ctx.out, "verdict {verdict}\nleft {xa}\nright {xb}")?,
                Format::Csv => write!(
                    ctx.out,
                    "measure,verdict,left,right\nalpha,{verdict},{},{}\n",
                    csv_cell(&xa.to_string()),
                    csv_cell(&xb.to_string())
                )?,
            }
            Ok(())
        }
        Measure::Lottery => {
            let (la, lb) = (scales::lottery_value(a)?, scales::lottery_value(b)?);
            let verdict = ordering_name(scales::lottery_compare(la, lb));
            match ctx.format {
                Format::Text => writeln!(ctx.out, "verdict {verdict}\nleft {la}\nright {lb}")?,
                Format::Csv => write!(ctx.out, "measure,verdict,left,right\nlottery,{verdict},{la},{lb}\n")?,
            }
            Ok(())
        }
    }
}

fn opt_bool(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "true",
        Some(false) => "false",
        None => "unknown",
    }
}

fn write_cnum(ctx: &mut Ctx<'_>, c: &EventualComparison, note: Option<String>) -> Outcome {
    let gap = c.gap.map(|(lo, hi)| (lo.to_string(), hi.to_string()));
    match ctx.format {
        Format::Text => {
            let mut s = format!(
                "verdict {}\nleq {}\ngeq {}\neq {}\ncertificate {:?}\n",
                c.verdict,
                opt_bool(c.leq_eventually),
                opt_bool(c.geq_eventually),
                opt_bool(c.eq_eventually),
                c.certificate
            );
            if let Some((lo, hi)) = &gap {
                let _ = writeln!(s, "gap {lo} {hi}");
            }
            if let Some(w) = &c.witnesses {
                let join = |v: &[u128]| v.iter().map(u128::to_string).collect::<Vec<_>>().join(",");
                let _ = writeln!(
                    s,
                    "left_ahead {}; checked {}",
                    w.left_ahead,
                    join(&w.left_ahead_checked)
                );
                let _ = writeln!(
                    s,
                    "right_ahead {}; checked {}",
                    w.right_ahead,
                    join(&w.right_ahead_checked)
                );
            }
            if let Some(ev) = &c.evidence {
                let last = |v: Option<u128>| v.map_or_else(|| "-".to_string(), |n| n.to_string());
                let _ = writeln!(
                    s,
                    "scan n <= {}: less {} equal {} greater {}; last less {} equal {} greater {}",
                    ev.scanned_to,
                    ev.less,
                    ev.equal,
                    ev.greater,
                    last(ev.last_less),
                    last(ev.last_equal),
                    last(ev.last_greater)
                );
            }
            if let Some(n) = note {
                let _ = writeln!(s, "note {n}");
            }
            ctx.out.write_all(s.as_bytes())?;
        }
        Format::Csv => {
            let (lo, hi) = gap.unwrap_or_default();
            write!(
                ctx.out,
                "measure,verdict,leq,geq,eq,gap_lo,gap_hi,note\ncnum,{},{},{},{},{lo},{hi},{}\n",
                c.verdict,
                opt_bool(c.leq_eventually),
                opt_bool(c.geq_eventually),
                opt_bool(c.eq_eventually),
                csv_cell(&note.unwrap_or_default())
            )?;
        }
    }
    Ok(())
}

fn table(ctx: &mut Ctx<'_>, e: &SetExpr, at: &[u128]) -> Outcome {
    let rows = density::density_profile(e, at, ctx.limits)?;
    match ctx.format {
        Format::Text => {
            for r in &rows {
                writeln!(ctx.out, "{} {} {} {}", r.n, u8::from(e.contains(r.n)), r.f_n, r.ratio)?;
            }
        }
        Format::Csv => {
            writeln!(ctx.out, "n,chi,f_n,ratio_num,ratio_den,ratio_decimal")?;
            for r in &rows {
                writeln!(
                    ctx.out,
                    "{},{},{},{},{},{}",
                    r.n,
                    u8::from(e.contains(r.n)),
                    r.f_n,
                    r.ratio.numer(),
                    r.ratio.denom(),
                    decimal::to_decimal(&r.ratio, decimal::SIGNIFICANT)
                )?;
            }
        }
    }
    Ok(())
}

fn report(ctx: &mut Ctx<'_>, e: &SetExpr) -> Outcome {
    let r = scales::size_report(e);
    match ctx.format {
        Format::Text => ctx.out.write_all(r.to_text().as_bytes())?,
        Format::Csv => writeln!(ctx.out, "{}\n{}", scales::REPORT_HEADER, r.to_csv_row())?,
    }
    Ok(())
}

fn hist(ctx: &mut Ctx<'_>, n: u64, svg: Option<PathBuf>) -> Outcome {
    let rows = experiments::subset_histogram(n)?;
    match ctx.format {
        Format::Text => {
            for r in &rows {
                writeln!(
                    ctx.out,
                    "{} {} {}",
                    r.k,
                    r.count,
                    decimal::to_decimal(&r.relative, decimal::SIGNIFICANT)
                )?;
            }
        }
        Format::Csv => ctx.out.write_all(experiments::histogram_csv(&rows).as_bytes())?,
    }
    if let Some(path) = svg {
        std::fs::write(path, experiments::histogram_svg(&rows))?;
    }
    Ok(())
}

fn s_table(ctx: &mut Ctx<'_>, kmax: u32) -> Outcome {
    let rows = experiments::s_table(kmax)?;
    match ctx.format {
        Format::Text => {
            for r in &rows {
                writeln!(ctx.out, "{} {} {} {}", r.k, r.n, r.f, r.ratio)?;
            }
        }
        Format::Csv => ctx.out.write_all(experiments::s_table_csv(&rows).as_bytes())?,
    }
    Ok(())
}

fn sample_random(ctx: &mut Ctx<'_>, n: u64, trials: u64, seed: u64) -> Outcome {
    let stats = experiments::random_subset_trial(n, trials, seed)?;
    match ctx.format {
        Format::Text => writeln!(
            ctx.out,
            "seed {seed}\nN {n}\ntrials {trials}\nmax_deviation {} ({})",
            decimal::to_decimal(&stats.max_deviation, decimal::SIGNIFICANT),
            stats.max_deviation
        )?,
        Format::Csv => ctx.out.write_all(experiments::trials_csv(&stats).as_bytes())?,
    }
    Ok(())
}
