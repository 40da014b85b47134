//! Text format for numerals.
//!
//! ```text
//! number   := [sign] term { sign term } ;
//! term     := digit [ "*" "G" [ "^" power ] ] | "G" [ "^" power ] ;
//! power    := integer | rational | "(" number ")" ;
//! digit    := decimal | rational ;
//! rational := integer "/" positive-integer ;
//! sign     := "+" | "-" ;
//! ```
//!
//! `G` stands for grossone. Whitespace between tokens is ignored. The
//! canonical printer writes reduced rationals so that its output parses back
//! to the same value; [`print_decimal`] is for display only.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::number::{normalize_with_limit, GrossNumber, Rational, DEFAULT_DEPTH_LIMIT};

/// Parses a numeral with the default grosspower depth limit.
pub fn parse(text: &str) -> Result<GrossNumber> {
    parse_with_limit(text, DEFAULT_DEPTH_LIMIT)
}

pub fn parse_with_limit(text: &str, depth_limit: usize) -> Result<GrossNumber> {
    let mut p = Parser::new(text, depth_limit);
    let n = p.number()?;
    p.expect_end()?;
    Ok(n)
}

/// Parses a single grossdigit: an optionally signed decimal or `p/q` literal.
pub fn parse_digit(text: &str) -> Result<Rational> {
    let mut p = Parser::new(text, 0);
    p.skip_ws();
    let negative = p.sign();
    let mut r = p.literal()?;
    if negative {
        r = -r;
    }
    p.expect_end()?;
    Ok(r)
}

pub(crate) struct Parser<'a> {
    src: &'a str,
    pos: usize,
    depth_limit: usize,
}

impl<'a> Parser<'a> {
    pub(crate) fn new(src: &'a str, depth_limit: usize) -> Self {
        Parser {
            src,
            pos: 0,
            depth_limit,
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) {
        if let Some(c) = self.peek() {
            self.pos += c.len_utf8();
        }
    }

    pub(crate) fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::syntax(self.pos, message)
    }

    fn unexpected(&self, wanted: &str) -> Error {
        match self.peek() {
            Some(c) => self.error(format!("expected {wanted}, found {c:?}")),
            None => self.error(format!("expected {wanted}, found end of input")),
        }
    }

    fn expect_end(&mut self) -> Result<()> {
        self.skip_ws();
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.unexpected("end of input")),
        }
    }

    /// Consumes a `+` or `-` if present; true for `-`.
    fn sign(&mut self) -> bool {
        self.skip_ws();
        match self.peek() {
            Some('-') => {
                self.bump();
                true
            }
            Some('+') => {
                self.bump();
                false
            }
            _ => false,
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        (self.pos > start).then(|| &self.src[start..self.pos])
    }

    /// Unsigned integer or decimal literal at the cursor, with its byte length.
    pub(crate) fn decimal(&mut self) -> Result<(Rational, usize)> {
        let start = self.pos;
        let Some(int_part) = self.digits() else {
            return Err(self.unexpected("a number"));
        };
        let int_part: BigInt = int_part.parse().expect("ascii digits");
        if self.peek() != Some('.') {
            return Ok((Rational::from_integer(int_part), self.pos - start));
        }
        self.bump();
        let Some(frac) = self.digits() else {
            return Err(self.unexpected("digits after the decimal point"));
        };
        let scale = pow10(frac.len());
        let frac: BigInt = frac.parse().expect("ascii digits");
        Ok((
            Rational::new(int_part * &scale + frac, scale),
            self.pos - start,
        ))
    }

    /// Unsigned decimal (`304.21`) or rational (`30421/100`) literal.
    fn literal(&mut self) -> Result<Rational> {
        self.skip_ws();
        let (value, _) = self.decimal()?;
        if !value.is_integer() {
            return Ok(value);
        }
        let int_part = value.to_integer();
        let save = self.pos;
        self.skip_ws();
        if self.peek() == Some('/') {
            self.bump();
            self.skip_ws();
            let den_pos = self.pos;
            let Some(den) = self.digits() else {
                return Err(self.unexpected("a positive integer denominator"));
            };
            let den: BigInt = den.parse().expect("ascii digits");
            if den.is_zero() {
                return Err(Error::syntax(den_pos, "zero denominator"));
            }
            return Ok(Rational::new(int_part, den));
        }
        self.pos = save;
        Ok(Rational::from_integer(int_part))
    }

    pub(crate) fn number(&mut self) -> Result<GrossNumber> {
        let mut terms = Vec::new();
        let mut negative = self.sign();
        loop {
            let (digit, power) = self.term()?;
            terms.push((if negative { -digit } else { digit }, power));
            self.skip_ws();
            match self.peek() {
                Some('+') | Some('-') => negative = self.sign(),
                _ => break,
            }
        }
        normalize_with_limit(terms, self.depth_limit)
    }

    fn term(&mut self) -> Result<(Rational, GrossNumber)> {
        self.skip_ws();
        if self.peek() == Some('G') {
            self.bump();
            let power = self.power_suffix()?;
            return Ok((Rational::one(), power));
        }
        let digit = self.literal()?;
        if self.eat('*') {
            self.skip_ws();
            if self.peek() != Some('G') {
                return Err(self.unexpected("'G'"));
            }
            self.bump();
            let power = self.power_suffix()?;
            Ok((digit, power))
        } else {
            Ok((digit, GrossNumber::zero()))
        }
    }

    fn power_suffix(&mut self) -> Result<GrossNumber> {
        if !self.eat('^') {
            return Ok(GrossNumber::one());
        }
        if self.eat('(') {
            let inner = self.number()?;
            if !self.eat(')') {
                return Err(self.unexpected("')'"));
            }
            return Ok(inner);
        }
        let negative = self.sign();
        let p = self.literal()?;
        Ok(GrossNumber::from_rational(if negative { -p } else { p }))
    }
}

/// `p/q`, or just `p` when the denominator is one.
pub fn print_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Canonical, round-trippable text for a numeral.
pub fn print_canonical(a: &GrossNumber) -> String {
    print_with(a, &|r| print_rational(r), &print_canonical)
}

/// Display form with grossdigits as decimals carrying at most `digits`
/// fractional places. Values that do not terminate within that many places
/// are rounded half-to-even and marked with a leading `~`.
pub fn print_decimal(a: &GrossNumber, digits: usize) -> String {
    let digits = digits.max(1);
    print_with(a, &|r| format_decimal(r, digits), &|p| {
        print_decimal(p, digits)
    })
}

fn print_with(
    a: &GrossNumber,
    digit_fmt: &dyn Fn(&Rational) -> String,
    power_fmt: &dyn Fn(&GrossNumber) -> String,
) -> String {
    if a.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, t) in a.terms().iter().enumerate() {
        let negative = t.digit.is_negative();
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let mag = t.digit.abs();
        if t.power.is_zero() {
            out.push_str(&digit_fmt(&mag));
            continue;
        }
        if t.power.is_one() && mag.is_one() {
            out.push('G');
            continue;
        }
        out.push_str(&digit_fmt(&mag));
        out.push_str("*G");
        if t.power.is_one() {
            continue;
        }
        out.push('^');
        match t.power.as_rational() {
            Some(p) if p.is_integer() => out.push_str(&p.numer().to_string()),
            _ => {
                out.push('(');
                out.push_str(&power_fmt(&t.power));
                out.push(')');
            }
        }
    }
    out
}

fn format_decimal(r: &Rational, digits: usize) -> String {
    let sign = if r.is_negative() { "-" } else { "" };
    let mag = r.abs();
    match terminating_places(mag.denom()) {
        Some(places) if places <= digits => {
            let scaled = (mag * Rational::from_integer(pow10(places))).to_integer();
            format!("{sign}{}", fixed_point(&scaled, places))
        }
        _ => {
            let scaled = round_half_even(&(mag * Rational::from_integer(pow10(digits))));
            format!("{sign}~{}", fixed_point(&scaled, digits))
        }
    }
}

/// Number of decimal places needed to write `1/den` exactly, if finite.
fn terminating_places(den: &BigInt) -> Option<usize> {
    let mut d = den.clone();
    let (two, five) = (BigInt::from(2), BigInt::from(5));
    let mut twos = 0;
    let mut fives = 0;
    while d.is_even() {
        d /= &two;
        twos += 1;
    }
    while (&d % &five).is_zero() {
        d /= &five;
        fives += 1;
    }
    d.is_one().then_some(twos.max(fives))
}

fn pow10(n: usize) -> BigInt {
    BigInt::from(10u32).pow(n as u32)
}

fn round_half_even(x: &Rational) -> BigInt {
    let floor = x.floor().to_integer();
    let frac = x - Rational::from_integer(floor.clone());
    let half = Rational::new(1.into(), 2.into());
    if frac > half || (frac == half && floor.is_odd()) {
        floor + 1
    } else {
        floor
    }
}

fn fixed_point(scaled: &BigInt, places: usize) -> String {
    if places == 0 {
        return scaled.to_string();
    }
    let s = format!("{:0>width$}", scaled.to_string(), width = places + 1);
    let (int, frac) = s.split_at(s.len() - places);
    format!("{int}.{frac}")
}

impl fmt::Display for GrossNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_canonical(self))
    }
}

impl FromStr for GrossNumber {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}
