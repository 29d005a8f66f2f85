use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;

use super::{Field, FieldError, FieldSpec};

/// Arbitrary-precision rationals, always in lowest terms.
pub type Q = BigRational;

impl Field for BigRational {
    fn supports(spec: &FieldSpec) -> bool {
        matches!(spec, FieldSpec::Rationals)
    }

    fn from_int(_spec: &FieldSpec, n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn parse(spec: &FieldSpec, text: &str) -> Result<Self, FieldError> {
        if !Self::supports(spec) {
            return Err(FieldError::Unsupported(spec.clone()));
        }
        parse_rational(text)
    }

    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn field_of(&self) -> Option<FieldSpec> {
        Some(FieldSpec::Rationals)
    }

    fn sample<R: Rng + ?Sized>(_spec: &FieldSpec, rng: &mut R) -> Self {
        BigRational::from_integer(BigInt::from(rng.gen_range(-4i64..=4)))
    }

    fn enumerate(_spec: &FieldSpec, _limit: u128) -> Option<Vec<Self>> {
        None
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *self -= a * b;
    }

    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *self += a * b;
    }
}

/// Parses `"-3/7"`, `"5"` or a terminating decimal such as `"-0.25"`.
pub(crate) fn parse_rational(text: &str) -> Result<BigRational, FieldError> {
    let t = text.trim();
    let err = |reason: &str| FieldError::Parse { text: text.to_string(), reason: reason.to_string() };
    if t.is_empty() {
        return Err(err("empty"));
    }
    if let Some((int_part, frac_part)) = t.split_once('.') {
        if t.contains('/') {
            return Err(err("mixed decimal and fraction"));
        }
        let negative = int_part.starts_with('-');
        let digits = format!("{}{}", int_part.trim_start_matches(['-', '+']), frac_part);
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(err("invalid decimal"));
        }
        let num = BigInt::from_str(&digits).map_err(|e| err(&e.to_string()))?;
        let den = num_traits::pow(BigInt::from(10), frac_part.len());
        let value = BigRational::new(num, den);
        return Ok(if negative { -value } else { value });
    }
    BigRational::from_str(t).map_err(|e| err(&e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Q {
        Q::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn parses_fractions_and_decimals() {
        let spec = FieldSpec::Rationals;
        assert_eq!(Q::parse(&spec, "-3/7").unwrap(), q(-3, 7));
        assert_eq!(Q::parse(&spec, "6/-4").unwrap(), q(-3, 2));
        assert_eq!(Q::parse(&spec, "-0.25").unwrap(), q(-1, 4));
        assert_eq!(Q::parse(&spec, " 12 ").unwrap(), q(12, 1));
        assert!(Q::parse(&spec, "1/0").is_err());
        assert!(Q::parse(&spec, "abc").is_err());
        assert!(Q::parse(&FieldSpec::Prime { p: 3 }, "1").is_err());
    }

    #[test]
    fn lowest_terms_with_positive_denominator() {
        let v = Q::parse(&FieldSpec::Rationals, "4/-6").unwrap();
        assert_eq!(v.numer(), &BigInt::from(-2));
        assert_eq!(v.denom(), &BigInt::from(3));
    }

    #[test]
    fn inverse_and_pow() {
        assert_eq!(q(2, 3).inverse(), Some(q(3, 2)));
        assert_eq!(Q::zero().inverse(), None);
        assert_eq!(q(-1, 2).pow(3), q(-1, 8));
    }
}
