//! Exact scalar fields.
//!
//! Every algebra carries a [`FieldSpec`] describing its ground field at
//! runtime; scalar types implement [`Field`] and know how to build
//! constants and parse text for a given spec.

mod finite;
mod rational;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use finite::{is_irreducible, is_prime, Gf, GfContext};
pub use rational::Q;

/// Largest admissible characteristic (exclusive).
pub const MAX_PRIME: u64 = 1 << 31;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is out of range (need a prime below 2^31)")]
    ModulusOutOfRange(u64),
    #[error("minimal polynomial must be monic of degree 2..=4, got {0:?}")]
    BadMinPoly(Vec<u64>),
    #[error("minimal polynomial {0:?} is reducible over F_{1}")]
    Reducible(Vec<u64>, u64),
    #[error("cannot parse scalar {text:?}: {reason}")]
    Parse { text: String, reason: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("scalar type does not support field {0}")]
    Unsupported(FieldSpec),
    #[error("field mismatch: {0} vs {1}")]
    Mismatch(FieldSpec, FieldSpec),
}

/// Runtime description of a ground field.
///
/// Minimal polynomials are stored lowest degree first, so `[1, 1, 1]`
/// is `1 + a + a^2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FieldSpec {
    Rationals,
    Prime { p: u64 },
    Extension { p: u64, min_poly: Vec<u64> },
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        let spec = FieldSpec::Prime { p };
        spec.validate()?;
        Ok(spec)
    }

    pub fn extension(p: u64, min_poly: Vec<u64>) -> Result<Self, FieldError> {
        let spec = FieldSpec::Extension { p, min_poly };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), FieldError> {
        match self {
            FieldSpec::Rationals => Ok(()),
            FieldSpec::Prime { p } => check_prime(*p),
            FieldSpec::Extension { p, min_poly } => {
                check_prime(*p)?;
                let deg = min_poly.len().wrapping_sub(1);
                if !(2..=4).contains(&deg) || min_poly[deg] != 1 || min_poly.iter().any(|c| c >= p) {
                    return Err(FieldError::BadMinPoly(min_poly.clone()));
                }
                if !is_irreducible(*p, min_poly) {
                    return Err(FieldError::Reducible(min_poly.clone(), *p));
                }
                Ok(())
            }
        }
    }

    /// Characteristic, 0 for the rationals.
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime { p } | FieldSpec::Extension { p, .. } => *p,
        }
    }

    /// Degree over the prime field (1 for the rationals).
    pub fn degree(&self) -> usize {
        match self {
            FieldSpec::Extension { min_poly, .. } => min_poly.len() - 1,
            _ => 1,
        }
    }

    /// Number of elements, `None` when infinite or too large for `u128`.
    pub fn order(&self) -> Option<u128> {
        match self {
            FieldSpec::Rationals => None,
            _ => (self.characteristic() as u128).checked_pow(self.degree() as u32),
        }
    }
}

fn check_prime(p: u64) -> Result<(), FieldError> {
    if p >= MAX_PRIME {
        return Err(FieldError::ModulusOutOfRange(p));
    }
    if !is_prime(p) {
        return Err(FieldError::NotPrime(p));
    }
    Ok(())
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime { p } => write!(f, "F_{p}"),
            FieldSpec::Extension { p, min_poly } => {
                write!(f, "F_{}^{} (min_poly {:?})", p, min_poly.len() - 1, min_poly)
            }
        }
    }
}

/// An exact field.
///
/// `zero()` and `one()` are available without a spec; every other constant
/// goes through [`Field::from_int`] so finite-field values carry their
/// context.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Whether this scalar type can represent `spec`.
    fn supports(spec: &FieldSpec) -> bool;

    fn from_int(spec: &FieldSpec, n: i64) -> Self;

    fn parse(spec: &FieldSpec, text: &str) -> Result<Self, FieldError>;

    /// Multiplicative inverse, `None` for zero.
    fn inverse(&self) -> Option<Self>;

    /// Field of a tagged value; `None` for untagged constants.
    fn field_of(&self) -> Option<FieldSpec>;

    /// Uniform element for finite fields, small integer for the rationals.
    fn sample<R: Rng + ?Sized>(spec: &FieldSpec, rng: &mut R) -> Self;

    /// Every element, when the field has at most `limit` of them.
    fn enumerate(spec: &FieldSpec, limit: u128) -> Option<Vec<Self>>;

    fn add_ref(&self, rhs: &Self) -> Self {
        self.clone() + rhs.clone()
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self.clone() - rhs.clone()
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self.clone() * rhs.clone()
    }

    /// `self -= a * b`.
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        let prod = a.mul_ref(b);
        *self = self.sub_ref(&prod);
    }

    /// `self += a * b`.
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        let prod = a.mul_ref(b);
        *self = self.add_ref(&prod);
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            base = base.mul_ref(&base);
            e >>= 1;
        }
        acc
    }
}

/// `(-1)^k` as a field constant.
pub fn sign<F: Field>(spec: &FieldSpec, k: usize) -> F {
    F::from_int(spec, if k % 2 == 0 { 1 } else { -1 })
}
