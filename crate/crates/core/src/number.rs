//! The grossone numeral: a finite sum of terms `c·①^p`, where the grossdigit
//! `c` is an exact rational and the grosspower `p` is itself a numeral.
//!
//! Values are kept in a unique normal form: grosspowers strictly decreasing,
//! no zero digits, zero as the empty term list. Equality of values is
//! therefore structural equality of the term lists.

use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact arbitrary-precision fraction, always stored in lowest terms.
pub type Rational = num_rational::BigRational;

/// Default bound on how deeply grosspowers may nest.
pub const DEFAULT_DEPTH_LIMIT: usize = 2;

/// One addend `digit·①^power` of a numeral.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub digit: Rational,
    pub power: GrossNumber,
}

impl Term {
    pub fn new(digit: Rational, power: GrossNumber) -> Self {
        Term { digit, power }
    }
}

/// A number written in the positional system with radix grossone.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GrossNumber {
    terms: Vec<Term>,
}

/// Brings an arbitrary list of `(digit, grosspower)` pairs into normal form,
/// rejecting grosspowers nested deeper than `depth_limit`.
pub fn normalize_with_limit<I>(terms: I, depth_limit: usize) -> Result<GrossNumber>
where
    I: IntoIterator<Item = (Rational, GrossNumber)>,
{
    let mut raw: Vec<Term> = Vec::new();
    for (digit, power) in terms {
        let depth = power.depth();
        if depth > depth_limit {
            return Err(Error::DepthExceeded {
                depth,
                limit: depth_limit,
            });
        }
        raw.push(Term { digit, power });
    }
    Ok(GrossNumber::from_unsorted(raw))
}

/// [`normalize_with_limit`] with the default depth limit.
pub fn normalize<I>(terms: I) -> Result<GrossNumber>
where
    I: IntoIterator<Item = (Rational, GrossNumber)>,
{
    normalize_with_limit(terms, DEFAULT_DEPTH_LIMIT)
}

impl GrossNumber {
    pub fn zero() -> Self {
        GrossNumber { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    /// The unit ① itself.
    pub fn grossone() -> Self {
        Self::monomial(Rational::one(), Self::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::monomial(r, Self::zero())
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    /// `digit·①^power`; zero when `digit` is zero.
    pub fn monomial(digit: Rational, power: GrossNumber) -> Self {
        if digit.is_zero() {
            Self::zero()
        } else {
            GrossNumber {
                terms: vec![Term { digit, power }],
            }
        }
    }

    /// `①^n` for an integer `n`.
    pub fn grossone_pow(n: i64) -> Self {
        Self::monomial(Rational::one(), Self::from_integer(n))
    }

    fn from_unsorted(mut raw: Vec<Term>) -> Self {
        raw.sort_by(|a, b| b.power.cmp(&a.power));
        let mut terms: Vec<Term> = Vec::with_capacity(raw.len());
        for t in raw {
            match terms.last_mut() {
                Some(last) if last.power == t.power => last.digit += t.digit,
                _ => terms.push(t),
            }
        }
        terms.retain(|t| !t.digit.is_zero());
        GrossNumber { terms }
    }

    pub(crate) fn from_sorted_terms(terms: Vec<Term>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].power > w[1].power));
        debug_assert!(terms.iter().all(|t| !t.digit.is_zero()));
        GrossNumber { terms }
    }

    /// Terms in strictly decreasing grosspower order.
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_one())
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_digit(&self) -> Option<&Rational> {
        self.terms.first().map(|t| &t.digit)
    }

    pub fn leading_power(&self) -> Option<&GrossNumber> {
        self.terms.first().map(|t| &t.power)
    }

    /// -1, 0 or 1: the sign of the leading grossdigit.
    pub fn signum(&self) -> i32 {
        match self.leading_digit() {
            None => 0,
            Some(d) if d.is_positive() => 1,
            Some(_) => -1,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> GrossNumber {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// The value as a plain rational, if it has no grossone component.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [t] if t.power.is_zero() => Some(t.digit.clone()),
            _ => None,
        }
    }

    /// The value as a machine integer, if it is one.
    pub fn as_i64(&self) -> Option<i64> {
        self.as_rational()
            .filter(|r| r.is_integer())
            .and_then(|r| r.to_integer().to_i64())
    }

    /// Structural nesting depth: 0 for rationals, 1 for numerals whose
    /// grosspowers are all rational, and so on.
    pub fn depth(&self) -> usize {
        self.terms
            .iter()
            .map(|t| {
                if t.power.is_zero() {
                    0
                } else {
                    1 + t.power.depth()
                }
            })
            .max()
            .unwrap_or(0)
    }

    /// Fails with `DepthExceeded` if some grosspower nests deeper than `limit`.
    pub fn check_depth(&self, limit: usize) -> Result<()> {
        for t in &self.terms {
            let depth = t.power.depth();
            if depth > limit {
                return Err(Error::DepthExceeded { depth, limit });
            }
            t.power.check_depth(limit)?;
        }
        Ok(())
    }

    /// Multiplies by the single term `digit·①^power`. Adding the same
    /// grosspower to every term preserves their order, so no re-sort is needed.
    pub fn mul_monomial(&self, digit: &Rational, power: &GrossNumber) -> GrossNumber {
        if digit.is_zero() {
            return GrossNumber::zero();
        }
        GrossNumber {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    digit: &t.digit * digit,
                    power: &t.power + power,
                })
                .collect(),
        }
    }

    /// Integer power. Negative exponents are only available for single-term
    /// numerals: the inverse of anything longer never terminates.
    pub fn pow_int(&self, n: i64) -> Result<GrossNumber> {
        if n == 0 {
            return Ok(GrossNumber::one());
        }
        let base = if n < 0 {
            match self.terms.as_slice() {
                [] => return Err(Error::DivisionByZero),
                [t] => GrossNumber::monomial(t.digit.recip(), -&t.power),
                _ => {
                    return Err(Error::InexactInverse {
                        terms: self.terms.len(),
                    })
                }
            }
        } else {
            self.clone()
        };
        let mut exp = n.unsigned_abs();
        let mut acc = GrossNumber::one();
        let mut sq = base;
        loop {
            if exp & 1 == 1 {
                acc = &acc * &sq;
            }
            exp >>= 1;
            if exp == 0 {
                break;
            }
            sq = &sq * &sq;
        }
        Ok(acc)
    }

    /// The grossdigit at grosspower zero.
    pub fn finite_part(&self) -> Rational {
        self.terms
            .iter()
            .find(|t| t.power.is_zero())
            .map(|t| t.digit.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Terms with a positive grosspower.
    pub fn infinite_part(&self) -> GrossNumber {
        self.filter_terms(|p| p.is_positive())
    }

    /// Terms with a negative grosspower.
    pub fn infinitesimal_part(&self) -> GrossNumber {
        self.filter_terms(|p| p.is_negative())
    }

    fn filter_terms(&self, keep: impl Fn(&GrossNumber) -> bool) -> GrossNumber {
        GrossNumber {
            terms: self
                .terms
                .iter()
                .filter(|t| keep(&t.power))
                .cloned()
                .collect(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.infinite_part().is_zero()
    }

    pub fn is_infinitesimal(&self) -> bool {
        !self.is_zero() && self.terms.iter().all(|t| t.power.is_negative())
    }

    /// Parity of an integer-valued numeral. Every term `c·①^p` with `p ≥ 1`
    /// is even because ① is divisible by every finite natural, so only the
    /// finite part decides.
    pub fn is_even(&self) -> Result<bool> {
        for t in &self.terms {
            if !t.digit.is_integer() {
                return Err(Error::NotIntegerValued(format!(
                    "grossdigit {} is not an integer",
                    t.digit
                )));
            }
            let integral_power = t
                .power
                .as_rational()
                .is_some_and(|p| p.is_integer() && !p.is_negative());
            if !integral_power {
                return Err(Error::NotIntegerValued(
                    "grosspowers must be nonnegative integers".into(),
                ));
            }
        }
        Ok(self.finite_part().to_integer().is_even())
    }
}

impl Ord for GrossNumber {
    /// Sign of `self - other`, read off the first place where the two
    /// normal forms differ.
    fn cmp(&self, other: &Self) -> Ordering {
        let zero = Rational::zero();
        let mut lhs = self.terms.iter();
        let mut rhs = other.terms.iter();
        loop {
            match (lhs.next(), rhs.next()) {
                (None, None) => return Ordering::Equal,
                (Some(a), None) => return a.digit.cmp(&zero),
                (None, Some(b)) => return zero.cmp(&b.digit),
                (Some(a), Some(b)) => match a.power.cmp(&b.power) {
                    Ordering::Greater => return a.digit.cmp(&zero),
                    Ordering::Less => return zero.cmp(&b.digit),
                    Ordering::Equal => match a.digit.cmp(&b.digit) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    },
                },
            }
        }
    }
}

impl PartialOrd for GrossNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Rational> for GrossNumber {
    fn from(r: Rational) -> Self {
        GrossNumber::from_rational(r)
    }
}

impl From<i64> for GrossNumber {
    fn from(n: i64) -> Self {
        GrossNumber::from_integer(n)
    }
}

impl Neg for &GrossNumber {
    type Output = GrossNumber;

    fn neg(self) -> GrossNumber {
        GrossNumber {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    digit: -&t.digit,
                    power: t.power.clone(),
                })
                .collect(),
        }
    }
}

impl Neg for GrossNumber {
    type Output = GrossNumber;

    fn neg(mut self) -> GrossNumber {
        for t in &mut self.terms {
            t.digit = -std::mem::take(&mut t.digit);
        }
        self
    }
}

impl Add for &GrossNumber {
    type Output = GrossNumber;

    /// Merge of two sorted term lists; shared grosspowers add their digits.
    fn add(self, rhs: &GrossNumber) -> GrossNumber {
        let mut terms = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let mut i = 0;
        let mut j = 0;
        while i < self.terms.len() && j < rhs.terms.len() {
            let (a, b) = (&self.terms[i], &rhs.terms[j]);
            match a.power.cmp(&b.power) {
                Ordering::Greater => {
                    terms.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    terms.push(b.clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let digit = &a.digit + &b.digit;
                    if !digit.is_zero() {
                        terms.push(Term {
                            digit,
                            power: a.power.clone(),
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend_from_slice(&self.terms[i..]);
        terms.extend_from_slice(&rhs.terms[j..]);
        GrossNumber { terms }
    }
}

impl Sub for &GrossNumber {
    type Output = GrossNumber;

    fn sub(self, rhs: &GrossNumber) -> GrossNumber {
        self + &(-rhs)
    }
}

impl Mul for &GrossNumber {
    type Output = GrossNumber;

    fn mul(self, rhs: &GrossNumber) -> GrossNumber {
        if self.is_zero() || rhs.is_zero() {
            return GrossNumber::zero();
        }
        let (short, long) = if self.terms.len() <= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        if short.terms.len() == 1 {
            let t = &short.terms[0];
            return long.mul_monomial(&t.digit, &t.power);
        }
        let mut raw = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for a in &self.terms {
            for b in &rhs.terms {
                raw.push(Term {
                    digit: &a.digit * &b.digit,
                    power: &a.power + &b.power,
                });
            }
        }
        GrossNumber::from_unsorted(raw)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<GrossNumber> for GrossNumber {
            type Output = GrossNumber;
            fn $method(self, rhs: GrossNumber) -> GrossNumber {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&GrossNumber> for GrossNumber {
            type Output = GrossNumber;
            fn $method(self, rhs: &GrossNumber) -> GrossNumber {
                (&self).$method(rhs)
            }
        }
        impl $tr<GrossNumber> for &GrossNumber {
            type Output = GrossNumber;
            fn $method(self, rhs: GrossNumber) -> GrossNumber {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl std::iter::Sum for GrossNumber {
    fn sum<I: Iterator<Item = GrossNumber>>(iter: I) -> Self {
        iter.fold(GrossNumber::zero(), |acc, x| acc + x)
    }
}
