//! Line-oriented problem files.
//!
//! ```text
//! field Fp 2          # or `field Q`, `field Fps 3`
//! p 1 1 1             # coefficients low to high: 1 + t + t^2
//! q 1 1 1
//! mode quotient       # or `mode difference`
//! matrix 2
//! 0 1
//! 1 1
//! ```
//!
//! `a <n>` and `b <n>` blocks carry a candidate pair for `verify`. Blank
//! lines and `#` comments are ignored. Rational entries are `a/b` or `a`;
//! entries over `F_p(s)` are `num/den` or `num` with polynomials in `s`
//! such as `s^2+s+1` or `(s+1)/(s^2+2)`.

use std::fmt;

use num_bigint::BigInt;
use pqdecomp_core::classify::Mode;
use pqdecomp_core::field::{is_prime, BaseField, Field, FieldDescriptor, Fp, RatFunc, Rational, Ring};
use pqdecomp_core::{Matrix, Poly};
use thiserror::Error;

/// A syntax or well-formedness error at a 1-based position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// A parsed problem over a concrete field.
#[derive(Clone, Debug)]
pub struct Problem<F: Field> {
    pub ctx: F::Ctx,
    pub p: Poly<F>,
    pub q: Poly<F>,
    pub mode: Mode,
    pub matrix: Option<Matrix<F>>,
    pub a: Option<Matrix<F>>,
    pub b: Option<Matrix<F>>,
}

/// A problem over whichever field the file names.
#[derive(Clone, Debug)]
pub enum AnyProblem {
    Prime(Problem<Fp>),
    Rationals(Problem<Rational>),
    RationalFunctions(Problem<RatFunc>),
}

/// Entry syntax for each supported field.
pub trait EntryField: BaseField {
    fn parse_entry(ctx: &Self::Ctx, text: &str) -> Result<Self, String>;

    /// Inverse of [`EntryField::parse_entry`], with no whitespace.
    fn render_entry(&self) -> String {
        self.to_string()
    }
}

impl EntryField for Fp {
    fn parse_entry(ctx: &u64, text: &str) -> Result<Self, String> {
        let v: BigInt = text.parse().map_err(|_| format!("expected an integer, found `{text}`"))?;
        let r = (v % BigInt::from(*ctx) + BigInt::from(*ctx)) % BigInt::from(*ctx);
        Ok(Fp::new(i64::try_from(r).expect("residue fits"), *ctx))
    }
}

impl EntryField for Rational {
    fn parse_entry(_ctx: &(), text: &str) -> Result<Self, String> {
        let bad = || format!("expected `a` or `a/b`, found `{text}`");
        let (n, d) = match text.split_once('/') {
            Some((n, d)) => (n, d),
            None => (text, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d == BigInt::from(0) {
            return Err(format!("zero denominator in `{text}`"));
        }
        Ok(Rational::from_bigints(n, d))
    }
}

impl EntryField for RatFunc {
    fn parse_entry(ctx: &u64, text: &str) -> Result<Self, String> {
        let (n, d) = split_fraction(text)?;
        let num = parse_s_poly(*ctx, n)?;
        let den = match d {
            Some(d) => parse_s_poly(*ctx, d)?,
            None => Poly::one(ctx),
        };
        if den.is_zero() {
            return Err(format!("zero denominator in `{text}`"));
        }
        Ok(RatFunc::new(num, den))
    }
}

/// Splits `num/den` at the top-level slash.
fn split_fraction(text: &str) -> Result<(&str, Option<&str>), String> {
    let mut depth = 0i32;
    let mut slash = None;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '/' if depth == 0 => {
                if slash.is_some() {
                    return Err(format!("more than one `/` in `{text}`"));
                }
                slash = Some(i);
            }
            _ => {}
        }
        if depth < 0 {
            return Err(format!("unbalanced parentheses in `{text}`"));
        }
    }
    if depth != 0 {
        return Err(format!("unbalanced parentheses in `{text}`"));
    }
    Ok(match slash {
        Some(i) => (&text[..i], Some(&text[i + 1..])),
        None => (text, None),
    })
}

/// Parses `s^2+2s+1`, `-s`, `3*s^4-1`, optionally wrapped in parentheses.
fn parse_s_poly(prime: u64, text: &str) -> Result<Poly<Fp>, String> {
    let bad = |why: &str| format!("bad polynomial in s `{text}`: {why}");
    let mut body = text;
    if let Some(inner) = body.strip_prefix('(').and_then(|b| b.strip_suffix(')')) {
        body = inner;
    }
    if body.is_empty() {
        return Err(bad("empty"));
    }
    let mut coeffs: Vec<Fp> = Vec::new();
    let mut rest = body;
    let mut first = true;
    while !rest.is_empty() {
        let mut negative = false;
        if let Some(r) = rest.strip_prefix('+') {
            rest = r;
        } else if let Some(r) = rest.strip_prefix('-') {
            negative = true;
            rest = r;
        } else if !first {
            return Err(bad("expected `+` or `-` between terms"));
        }
        first = false;
        let end = rest[1.min(rest.len())..].find(['+', '-']).map_or(rest.len(), |i| i + 1);
        let term = &rest[..end];
        rest = &rest[end..];
        let (c, k) = parse_term(term).ok_or_else(|| bad(&format!("cannot read term `{term}`")))?;
        let mut c = Fp::parse_entry(&prime, &c)?;
        if negative {
            c = c.neg();
        }
        if coeffs.len() <= k {
            coeffs.resize(k + 1, Fp::zero(&prime));
        }
        coeffs[k] = coeffs[k].add(&c);
    }
    Ok(Poly::new(&prime, coeffs))
}

/// `c`, `s`, `c*s`, `cs`, `s^k`, `c*s^k` → (coefficient text, exponent).
fn parse_term(term: &str) -> Option<(String, usize)> {
    let Some(pos) = term.find('s') else {
        return term.chars().all(|c| c.is_ascii_digit()).then(|| (term.to_string(), 0)).filter(|_| !term.is_empty());
    };
    let coef = term[..pos].strip_suffix('*').unwrap_or(&term[..pos]);
    let coef = if coef.is_empty() { "1" } else { coef };
    if !coef.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let tail = &term[pos + 1..];
    let k = if tail.is_empty() {
        1
    } else {
        let e = tail.strip_prefix('^')?;
        if e.is_empty() || !e.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        e.parse().ok()?
    };
    Some((coef.to_string(), k))
}

/// One whitespace-separated word with its 1-based column.
#[derive(Clone, Copy, Debug)]
struct Word<'a> {
    text: &'a str,
    column: usize,
}

#[derive(Clone, Debug)]
struct Line<'a> {
    number: usize,
    words: Vec<Word<'a>>,
    /// Column just past the last word, for "missing value" errors.
    end: usize,
}

fn lex(src: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let mut words = Vec::new();
        let mut start = None;
        for (j, ch) in content.char_indices().chain(std::iter::once((content.len(), ' '))) {
            if ch.is_whitespace() {
                if let Some(s) = start.take() {
                    words.push(Word { text: &content[s..j], column: content[..s].chars().count() + 1 });
                }
            } else if start.is_none() {
                start = Some(j);
            }
        }
        if !words.is_empty() {
            let end = content.trim_end().chars().count() + 1;
            out.push(Line { number: i + 1, words, end });
        }
    }
    out
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, column, message: message.into() }
}

/// Parse a problem file.
pub fn parse(src: &str) -> Result<AnyProblem, ParseError> {
    let lines = lex(src);
    let Some(first) = lines.first() else {
        return Err(err(1, 1, "empty input: expected `field`"));
    };
    if first.words[0].text != "field" {
        return Err(err(first.number, first.words[0].column, "the first statement must be `field`"));
    }
    let desc = parse_field(first)?;
    let rest = &lines[1..];
    Ok(match desc {
        FieldDescriptor::PrimeField(p) => AnyProblem::Prime(parse_body(&p, rest, first)?),
        FieldDescriptor::Rationals => AnyProblem::Rationals(parse_body(&(), rest, first)?),
        FieldDescriptor::RationalFunctionField(p) => AnyProblem::RationalFunctions(parse_body(&p, rest, first)?),
    })
}

fn parse_field(line: &Line<'_>) -> Result<FieldDescriptor, ParseError> {
    let w = &line.words;
    let kind = w.get(1).ok_or_else(|| err(line.number, line.end, "expected `Fp <prime>`, `Q` or `Fps <prime>`"))?;
    let prime = |required: bool| -> Result<u64, ParseError> {
        let word = w.get(2).ok_or_else(|| err(line.number, line.end, "expected a prime"))?;
        let p: u64 = word.text.parse().map_err(|_| err(line.number, word.column, "expected a prime"))?;
        if required && (!is_prime(p) || p > u32::MAX as u64) {
            return Err(err(line.number, word.column, format!("{p} is not a supported prime")));
        }
        Ok(p)
    };
    let (desc, len) = match kind.text {
        "Fp" => (FieldDescriptor::PrimeField(prime(true)?), 3),
        "Fps" => (FieldDescriptor::RationalFunctionField(prime(true)?), 3),
        "Q" => (FieldDescriptor::Rationals, 2),
        other => return Err(err(line.number, kind.column, format!("unknown field `{other}`"))),
    };
    if let Some(extra) = w.get(len) {
        return Err(err(line.number, extra.column, "unexpected trailing input"));
    }
    Ok(desc)
}

fn parse_body<F: EntryField>(ctx: &F::Ctx, lines: &[Line<'_>], field: &Line<'_>) -> Result<Problem<F>, ParseError> {
    let mut p = None;
    let mut q = None;
    let mut mode = None;
    let mut mats: [Option<Matrix<F>>; 3] = [None, None, None];
    let mut i = 0;
    while i < lines.len() {
        let line = &lines[i];
        let head = line.words[0];
        let once = |seen: bool| {
            if seen {
                Err(err(line.number, head.column, format!("duplicate `{}` statement", head.text)))
            } else {
                Ok(())
            }
        };
        match head.text {
            "p" | "q" => {
                let slot = if head.text == "p" { &mut p } else { &mut q };
                once(slot.is_some())?;
                *slot = Some(parse_quadratic(ctx, line)?);
            }
            "mode" => {
                once(mode.is_some())?;
                let w = line
                    .words
                    .get(1)
                    .ok_or_else(|| err(line.number, line.end, "expected `difference` or `quotient`"))?;
                mode = Some(match w.text {
                    "difference" => Mode::Difference,
                    "quotient" => Mode::Quotient,
                    other => return Err(err(line.number, w.column, format!("unknown mode `{other}`"))),
                });
                if let Some(extra) = line.words.get(2) {
                    return Err(err(line.number, extra.column, "unexpected trailing input"));
                }
            }
            "matrix" | "a" | "b" => {
                let k = ["matrix", "a", "b"].iter().position(|s| *s == head.text).unwrap();
                once(mats[k].is_some())?;
                let (m, used) = parse_matrix(ctx, &lines[i..])?;
                mats[k] = Some(m);
                i += used;
                continue;
            }
            "field" => return Err(err(line.number, head.column, "duplicate `field` statement")),
            other => return Err(err(line.number, head.column, format!("unknown statement `{other}`"))),
        }
        i += 1;
    }
    let end = lines.last().unwrap_or(field);
    let missing = |what: &str| err(end.number + 1, 1, format!("missing `{what}` statement"));
    let [matrix, a, b] = mats;
    let size = matrix.as_ref().map(|m| m.rows());
    for m in [&a, &b].into_iter().flatten() {
        if size.is_some_and(|n| n != m.rows()) {
            return Err(err(end.number + 1, 1, "`a` and `b` must have the size of `matrix`"));
        }
    }
    Ok(Problem {
        ctx: ctx.clone(),
        p: p.ok_or_else(|| missing("p"))?,
        q: q.ok_or_else(|| missing("q"))?,
        mode: mode.ok_or_else(|| missing("mode"))?,
        matrix,
        a,
        b,
    })
}

fn parse_quadratic<F: EntryField>(ctx: &F::Ctx, line: &Line<'_>) -> Result<Poly<F>, ParseError> {
    let coeffs = line.words[1..]
        .iter()
        .map(|w| F::parse_entry(ctx, w.text).map_err(|m| err(line.number, w.column, m)))
        .collect::<Result<Vec<F>, _>>()?;
    let name = line.words[0].text;
    if coeffs.len() != 3 {
        let col = line.words.get(4).map_or(line.end, |w| w.column);
        return Err(err(
            line.number,
            col,
            format!("`{name}` must be monic of degree 2: expected 3 coefficients, found {}", coeffs.len()),
        ));
    }
    if !coeffs[2].is_one() {
        return Err(err(
            line.number,
            line.words[3].column,
            format!("`{name}` must be monic: leading coefficient is not 1"),
        ));
    }
    Ok(Poly::new(ctx, coeffs))
}

/// Parses a `<keyword> <n>` header and its rows; returns the number of lines used.
fn parse_matrix<F: EntryField>(ctx: &F::Ctx, lines: &[Line<'_>]) -> Result<(Matrix<F>, usize), ParseError> {
    let head = &lines[0];
    let size_word = head.words.get(1).ok_or_else(|| err(head.number, head.end, "expected the matrix size"))?;
    let n: usize = size_word
        .text
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| err(head.number, size_word.column, "the matrix size must be a positive integer"))?;
    if let Some(extra) = head.words.get(2) {
        return Err(err(head.number, extra.column, "unexpected trailing input"));
    }
    let mut rows = Vec::with_capacity(n);
    for k in 0..n {
        let Some(line) = lines.get(k + 1) else {
            let after = lines.last().unwrap();
            return Err(err(after.number + 1, 1, format!("expected {n} rows, found {k}")));
        };
        if line.words.len() != n {
            let col = line.words.get(n).map_or(line.end, |w| w.column);
            return Err(err(line.number, col, format!("expected {n} entries, found {}", line.words.len())));
        }
        let row = line
            .words
            .iter()
            .map(|w| F::parse_entry(ctx, w.text).map_err(|m| err(line.number, w.column, m)))
            .collect::<Result<Vec<F>, _>>()?;
        rows.push(row);
    }
    Ok((Matrix::from_rows(ctx, rows), n + 1))
}

/// Renders a problem back into the file format, `a` and `b` included.
pub struct Render<'a, F: EntryField>(pub &'a Problem<F>);

fn write_matrix<F: EntryField>(f: &mut fmt::Formatter<'_>, name: &str, m: &Matrix<F>) -> fmt::Result {
    writeln!(f, "{name} {}", m.rows())?;
    for row in m.to_rows() {
        let words: Vec<String> = row.iter().map(|x| x.render_entry()).collect();
        writeln!(f, "{}", words.join(" "))?;
    }
    Ok(())
}

/// Space-separated coefficients, low to high.
pub fn coefficient_words<F: EntryField>(p: &Poly<F>) -> String {
    let words: Vec<String> = (0..=p.degree().unwrap_or(0)).map(|i| p.coeff(i).render_entry()).collect();
    words.join(" ")
}

impl<F: EntryField> fmt::Display for Render<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pr = self.0;
        writeln!(f, "field {}", F::descriptor(&pr.ctx))?;
        writeln!(f, "p {}", coefficient_words(&pr.p))?;
        writeln!(f, "q {}", coefficient_words(&pr.q))?;
        writeln!(f, "mode {}", pr.mode)?;
        for (name, m) in [("matrix", &pr.matrix), ("a", &pr.a), ("b", &pr.b)] {
            if let Some(m) = m {
                write_matrix(f, name, m)?;
            }
        }
        Ok(())
    }
}
