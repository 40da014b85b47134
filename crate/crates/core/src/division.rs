//! Long division of numerals with an explicit accuracy cutoff.

use crate::error::{Error, Result};
use crate::number::{GrossNumber, Term};

/// Upper bound on emitted quotient terms. Only reachable when the divisor's
/// grosspower gaps are infinitesimal, so the cutoff is never crossed.
pub const MAX_DIVISION_STEPS: usize = 10_000;

/// Outcome of [`divide`]: `dividend = quotient·divisor + remainder` holds exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisionResult {
    pub quotient: GrossNumber,
    pub remainder: GrossNumber,
    pub exact: bool,
}

/// Divides `dividend` by `divisor`, emitting quotient terms from the highest
/// grosspower down. Each step takes the ratio of the leading terms of the
/// current partial remainder and the divisor, then subtracts that term times
/// the divisor. Stops at a zero remainder, or when the next quotient
/// grosspower would fall below `min_power`.
pub fn divide(
    dividend: &GrossNumber,
    divisor: &GrossNumber,
    min_power: &GrossNumber,
) -> Result<DivisionResult> {
    let lead = divisor.leading_term().ok_or(Error::DivisionByZero)?;
    let mut quotient_terms = Vec::new();
    let mut remainder = dividend.clone();
    for _ in 0..MAX_DIVISION_STEPS {
        let Some(top) = remainder.leading_term() else {
            return Ok(DivisionResult {
                quotient: from_sorted(quotient_terms),
                remainder,
                exact: true,
            });
        };
        let power = &top.power - &lead.power;
        if &power < min_power {
            return Ok(DivisionResult {
                quotient: from_sorted(quotient_terms),
                remainder,
                exact: false,
            });
        }
        let digit = &top.digit / &lead.digit;
        remainder = &remainder - &divisor.mul_monomial(&digit, &power);
        quotient_terms.push((digit, power));
    }
    Err(Error::DivisionStepLimit(MAX_DIVISION_STEPS))
}

// quotient grosspowers are emitted strictly decreasing with nonzero digits
fn from_sorted(terms: Vec<(crate::Rational, GrossNumber)>) -> GrossNumber {
    GrossNumber::from_sorted_terms(terms.into_iter().map(|(d, p)| Term::new(d, p)).collect())
}

/// Quotient of a division expected to terminate, or `None` if it does not.
/// An exact quotient's lowest grosspower is the difference of the operands'
/// lowest grosspowers, so the long division is cut off right there.
pub fn divide_exact(dividend: &GrossNumber, divisor: &GrossNumber) -> Result<Option<GrossNumber>> {
    let low = |n: &GrossNumber| n.terms().last().map(|t| t.power.clone());
    let Some(divisor_low) = low(divisor) else {
        return Err(Error::DivisionByZero);
    };
    let Some(dividend_low) = low(dividend) else {
        return Ok(Some(GrossNumber::zero()));
    };
    let r = divide(dividend, divisor, &(&dividend_low - &divisor_low))?;
    Ok(r.exact.then_some(r.quotient))
}

impl GrossNumber {
    /// Method form of [`divide`].
    pub fn div_rem(
        &self,
        divisor: &GrossNumber,
        min_power: &GrossNumber,
    ) -> Result<DivisionResult> {
        divide(self, divisor, min_power)
    }

    /// Method form of [`divide_exact`].
    pub fn checked_div(&self, divisor: &GrossNumber) -> Result<Option<GrossNumber>> {
        divide_exact(self, divisor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn int(n: i64) -> GrossNumber {
        GrossNumber::from_integer(n)
    }

    fn g() -> GrossNumber {
        GrossNumber::grossone()
    }

    fn gp(n: i64) -> GrossNumber {
        GrossNumber::grossone_pow(n)
    }

    #[test]
    fn exact_polynomial_division() {
        // (①+1)(①+2)
        let c = &(&gp(2) + &(&int(3) * &g())) + &int(2);
        let b = &g() + &int(1);
        let r = divide(&c, &b, &int(-10)).unwrap();
        assert!(r.exact);
        assert!(r.remainder.is_zero());
        assert_eq!(r.quotient, &g() + &int(2));
        assert_eq!(&(&r.quotient * &b) + &r.remainder, c);
    }

    #[test]
    fn inverse_of_grossone() {
        for cutoff in [-1, -5, 0] {
            let r = divide(&int(1), &g(), &int(cutoff)).unwrap();
            if cutoff <= -1 {
                assert!(r.exact);
                assert_eq!(r.quotient, gp(-1));
            } else {
                assert!(!r.exact);
                assert!(r.quotient.is_zero());
                assert_eq!(r.remainder, int(1));
            }
        }
    }

    #[test]
    fn truncated_geometric_expansion() {
        let b = &g() + &int(1);
        let r = divide(&int(1), &b, &int(-3)).unwrap();
        assert!(!r.exact);
        assert_eq!(r.quotient, &(&gp(-1) - &gp(-2)) + &gp(-3));
        assert_eq!(r.remainder, -gp(-3));
        assert_eq!(&(&r.quotient * &b) + &r.remainder, int(1));
    }

    #[test]
    fn exact_division_detects_termination() {
        let b = &g() + &int(1);
        let c = &(&b * &b) * &(&gp(-2) - &int(3));
        assert_eq!(
            divide_exact(&c, &b).unwrap(),
            Some(&b * &(&gp(-2) - &int(3)))
        );
        assert_eq!(divide_exact(&int(1), &b).unwrap(), None);
        assert_eq!(
            divide_exact(&GrossNumber::zero(), &b).unwrap(),
            Some(GrossNumber::zero())
        );
        assert_eq!(
            divide_exact(&int(1), &GrossNumber::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(
            divide(&int(1), &GrossNumber::zero(), &int(-8)),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn infinite_power_gap_stops_immediately() {
        // 1/(①^① + 1): the first quotient term would sit at -①, far below -8
        let big = &GrossNumber::monomial(Rational::from_integer(1.into()), g()) + &int(1);
        let r = divide(&int(1), &big, &int(-8)).unwrap();
        assert!(!r.exact);
        assert!(r.quotient.is_zero());
    }
}
