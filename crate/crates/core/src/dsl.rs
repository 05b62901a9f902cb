//! Text syntax for set expressions.
//!
//! ```text
//! expr   := term { ("|" | "\") term }
//! term   := factor { "&" factor }
//! factor := "~" factor | "(" expr ")" | atom
//! atom   := "empty" | "all" | "finite" "{" ints "}" | "cofinite" "{" ints "}"
//!         | "mod" int int | "powers" int | "primes" | "superexp"
//!         | "bitodd" | "leading1" | "leading" int
//!         | "blocks" ("tower" | "geometric") int ("odd" | "even")
//! ```
//!
//! `|` is union, `\` difference, `&` intersection and `~` complement.
//! Binary operators are left-associative; whitespace is insignificant.

use std::fmt;

use crate::set::normalize;
use crate::{BlockSchedule, Boundary, Parity, SetExpr};

/// Byte offsets into the input, `start ≤ end`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub span: SourceSpan,
    pub message: String,
    pub expected: Vec<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at {}..{}: {}",
            self.span.start, self.span.end, self.message
        )?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(" or "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(u64),
    Sym(char),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(v) => format!("integer {v}"),
            Tok::Sym(c) => format!("`{c}`"),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, SourceSpan)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = vec![];
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let tok = if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let v = text[start..i].parse().map_err(|_| ParseError {
                span: SourceSpan { start, end: i },
                message: "integer does not fit in 64 bits".into(),
                expected: vec![],
            })?;
            Tok::Int(v)
        } else if c.is_ascii_alphabetic() {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            Tok::Ident(text[start..i].to_ascii_lowercase())
        } else if b"()|&\\~{},".contains(&c) {
            i += 1;
            Tok::Sym(c as char)
        } else {
            let ch = text[start..].chars().next().expect("non-empty");
            return Err(ParseError {
                span: SourceSpan {
                    start,
                    end: start + ch.len_utf8(),
                },
                message: format!("unexpected character `{ch}`"),
                expected: vec![],
            });
        };
        out.push((tok, SourceSpan { start, end: i }));
    }
    out.push((
        Tok::End,
        SourceSpan {
            start: text.len(),
            end: text.len(),
        },
    ));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, SourceSpan)>,
    pos: usize,
}

const ATOMS: [&str; 12] = [
    "empty", "all", "finite", "cofinite", "mod", "powers", "primes", "superexp", "bitodd", "leading1", "leading",
    "blocks",
];

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> SourceSpan {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, SourceSpan) {
        let t = self.toks[self.pos].clone();
        if t.0 != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, message: impl Into<String>, expected: &[&str]) -> Result<T, ParseError> {
        Err(ParseError {
            span: self.span(),
            message: message.into(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        })
    }

    fn unexpected<T>(&self, expected: &[&str]) -> Result<T, ParseError> {
        self.fail(format!("unexpected {}", self.peek().describe()), expected)
    }

    fn expect_sym(&mut self, c: char) -> Result<(), ParseError> {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            Ok(())
        } else {
            self.unexpected(&[&format!("`{c}`")])
        }
    }

    fn int(&mut self, what: &str) -> Result<u64, ParseError> {
        match self.peek() {
            Tok::Int(v) => {
                let v = *v;
                self.bump();
                Ok(v)
            }
            _ => self.unexpected(&[what]),
        }
    }

    fn expr(&mut self) -> Result<SetExpr, ParseError> {
        let mut left = self.term()?;
        loop {
            match self.peek() {
                Tok::Sym('|') => {
                    self.bump();
                    left = SetExpr::union(left, self.term()?);
                }
                Tok::Sym('\\') => {
                    self.bump();
                    left = SetExpr::difference(left, self.term()?);
                }
                _ => return Ok(left),
            }
        }
    }

    fn term(&mut self) -> Result<SetExpr, ParseError> {
        let mut left = self.factor()?;
        while *self.peek() == Tok::Sym('&') {
            self.bump();
            left = SetExpr::intersection(left, self.factor()?);
        }
        Ok(left)
    }

    fn factor(&mut self) -> Result<SetExpr, ParseError> {
        match self.peek() {
            Tok::Sym('~') => {
                self.bump();
                Ok(SetExpr::not(self.factor()?))
            }
            Tok::Sym('(') => {
                self.bump();
                let e = self.expr()?;
                self.expect_sym(')')?;
                Ok(e)
            }
            Tok::Ident(_) => self.atom(),
            _ => self.unexpected(&["`~`", "`(`", "set atom"]),
        }
    }

    fn int_list(&mut self) -> Result<Vec<u64>, ParseError> {
        self.expect_sym('{')?;
        let mut v = vec![];
        if *self.peek() == Tok::Sym('}') {
            self.bump();
            return Ok(v);
        }
        loop {
            v.push(self.int("integer")?);
            match self.peek() {
                Tok::Sym(',') => {
                    self.bump();
                }
                Tok::Sym('}') => {
                    self.bump();
                    return Ok(v);
                }
                _ => return self.unexpected(&["`,`", "`}`"]),
            }
        }
    }

    fn atom(&mut self) -> Result<SetExpr, ParseError> {
        let (tok, start) = self.bump();
        let Tok::Ident(name) = tok else {
            unreachable!("atom called on identifier")
        };
        let built = match name.as_str() {
            "empty" => Ok(SetExpr::Empty),
            "all" => Ok(SetExpr::Full),
            "primes" => Ok(SetExpr::Primes),
            "superexp" => Ok(SetExpr::superexp()),
            "bitodd" => Ok(SetExpr::BlockSet(BlockSchedule::BitLengthParity)),
            "leading1" => Ok(SetExpr::BlockSet(BlockSchedule::LeadingDecimal(1))),
            "leading" => {
                let d = self.int("digit 1-9")?;
                u8::try_from(d)
                    .map_err(|_| crate::Error::Precondition(format!("leading digit must be 1-9, got {d}")))
                    .and_then(|d| SetExpr::blocks(BlockSchedule::LeadingDecimal(d)))
            }
            "finite" => SetExpr::finite(self.int_list()?),
            "cofinite" => SetExpr::cofinite(self.int_list()?),
            "mod" => {
                let a = self.int("modulus")?;
                let i = self.int("second integer (residue)")?;
                SetExpr::arith_prog(a, i)
            }
            "powers" => {
                let p = self.int("exponent")?;
                u32::try_from(p)
                    .map_err(|_| crate::Error::Precondition(format!("power {p} too large")))
                    .and_then(SetExpr::powers)
            }
            "blocks" => {
                let kind = match self.peek() {
                    Tok::Ident(k) if k == "tower" || k == "geometric" => k.clone(),
                    _ => return self.unexpected(&["`tower`", "`geometric`"]),
                };
                self.bump();
                let base = self.int("base")?;
                let include = match self.peek() {
                    Tok::Ident(p) if p == "odd" => Parity::Odd,
                    Tok::Ident(p) if p == "even" => Parity::Even,
                    _ => return self.unexpected(&["`odd`", "`even`"]),
                };
                self.bump();
                u32::try_from(base)
                    .map_err(|_| crate::Error::Precondition(format!("base {base} too large")))
                    .and_then(|base| {
                        let boundary = if kind == "tower" {
                            Boundary::Tower { base }
                        } else {
                            Boundary::Geometric { base }
                        };
                        SetExpr::blocks(BlockSchedule::General { boundary, include })
                    })
            }
            _ => {
                return Err(ParseError {
                    span: start,
                    message: format!("unknown atom `{name}`"),
                    expected: ATOMS.iter().map(|a| format!("`{a}`")).collect(),
                })
            }
        };
        let end = self.toks[self.pos.saturating_sub(1)].1.end;
        built.map_err(|e| ParseError {
            span: SourceSpan {
                start: start.start,
                end,
            },
            message: match e {
                crate::Error::Precondition(m) => m,
                other => other.to_string(),
            },
            expected: vec![],
        })
    }
}

/// Parses the whole input; trailing tokens are an error.
pub fn parse(text: &str) -> Result<SetExpr, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.unexpected(&["`|`", "`\\`", "`&`", "end of input"]);
    }
    Ok(e)
}

/// Text of `normalize(expr)`; parsing it back yields `normalize(expr)`.
pub fn render(expr: &SetExpr) -> String {
    normalize(expr).to_string()
}

fn precedence(e: &SetExpr) -> u8 {
    match e {
        SetExpr::Union(..) | SetExpr::Difference(..) => 1,
        SetExpr::Intersection(..) => 2,
        _ => 3,
    }
}

fn list(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

/// Faithful text of the tree as given, with the minimum of parentheses.
impl fmt::Display for SetExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let binary = |f: &mut fmt::Formatter<'_>, a: &SetExpr, op: &str, b: &SetExpr| {
            let level = precedence(self);
            if precedence(a) < level {
                write!(f, "({a})")?;
            } else {
                write!(f, "{a}")?;
            }
            write!(f, " {op} ")?;
            if precedence(b) <= level {
                write!(f, "({b})")
            } else {
                write!(f, "{b}")
            }
        };
        match self {
            SetExpr::Empty => f.write_str("empty"),
            SetExpr::Full => f.write_str("all"),
            SetExpr::Finite(v) => write!(f, "finite{{{}}}", list(v)),
            SetExpr::CoFinite(v) => write!(f, "cofinite{{{}}}", list(v)),
            SetExpr::ArithProg { modulus, residue } => write!(f, "mod {modulus} {residue}"),
            SetExpr::Powers(p) => write!(f, "powers {p}"),
            SetExpr::Primes => f.write_str("primes"),
            SetExpr::BlockSet(s) => match s {
                BlockSchedule::SuperExp => f.write_str("superexp"),
                BlockSchedule::BitLengthParity => f.write_str("bitodd"),
                BlockSchedule::LeadingDecimal(1) => f.write_str("leading1"),
                BlockSchedule::LeadingDecimal(d) => write!(f, "leading {d}"),
                BlockSchedule::General { boundary, include } => match boundary {
                    Boundary::Tower { base } => write!(f, "blocks tower {base} {include}"),
                    Boundary::Geometric { base } => write!(f, "blocks geometric {base} {include}"),
                },
            },
            SetExpr::Union(a, b) => binary(f, a, "|", b),
            SetExpr::Difference(a, b) => binary(f, a, "\\", b),
            SetExpr::Intersection(a, b) => binary(f, a, "&", b),
            SetExpr::Complement(a) if precedence(a) < 3 => write!(f, "~({a})"),
            SetExpr::Complement(a) => write!(f, "~{a}"),
        }
    }
}
