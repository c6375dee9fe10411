//! Ground fields: the rationals and prime fields GF(p).
//!
//! Scalars travel through the public API as [`Scalar`] (an arbitrary-precision
//! rational). Over GF(p) a canonical scalar is an integer in `0..p`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::LinalgError;

/// Field element in canonical form for some [`FieldSpec`].
pub type Scalar = BigRational;

/// Default characteristic for prime-field runs.
pub const DEFAULT_PRIME: u32 = 32003;

/// The ground field `K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    Prime(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldKind {
    Rationals,
    PrimeField,
}

impl FieldSpec {
    /// GF(p), rejecting composite or oversized characteristics.
    pub fn prime(p: u32) -> Result<Self, LinalgError> {
        if p >= (1 << 31) || !is_prime(p) {
            return Err(LinalgError::InvalidCharacteristic(p));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn default_prime() -> Self {
        FieldSpec::Prime(DEFAULT_PRIME)
    }

    pub fn kind(&self) -> FieldKind {
        match self {
            FieldSpec::Rationals => FieldKind::Rationals,
            FieldSpec::Prime(_) => FieldKind::PrimeField,
        }
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(&self) -> Scalar {
        Scalar::one()
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        self.reduce(&Scalar::from_integer(BigInt::from(v)))
    }

    /// Maps an arbitrary rational into the field. Panics if the denominator
    /// vanishes modulo `p`.
    pub fn reduce(&self, q: &Scalar) -> Scalar {
        match self {
            FieldSpec::Rationals => q.clone(),
            FieldSpec::Prime(p) => Scalar::from_integer(BigInt::from(self.residue(q).unwrap_or_else(
                || panic!("denominator of {q} is divisible by the characteristic {p}"),
            ))),
        }
    }

    /// Residue of a rational modulo `p`, `None` when the denominator is not invertible.
    pub fn residue(&self, q: &Scalar) -> Option<u32> {
        let p = match self {
            FieldSpec::Rationals => return None,
            FieldSpec::Prime(p) => *p,
        };
        let pb = BigInt::from(p);
        let num = q.numer().mod_floor(&pb).to_u64()?;
        let den = q.denom().mod_floor(&pb).to_u64()?;
        if den == 0 {
            return None;
        }
        Some(((num * inv_mod(den, p as u64)) % p as u64) as u32)
    }

    /// Whether `q` can be mapped into this field.
    pub fn admits(&self, q: &Scalar) -> bool {
        match self {
            FieldSpec::Rationals => true,
            FieldSpec::Prime(_) => self.residue(q).is_some(),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(&(a + b))
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(&(a - b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(&(a * b))
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        self.reduce(&-a)
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if a.is_zero() {
            return None;
        }
        match self {
            FieldSpec::Rationals => Some(a.recip()),
            FieldSpec::Prime(p) => {
                let r = self.residue(a)? as u64;
                Some(Scalar::from_integer(BigInt::from(inv_mod(r, *p as u64))))
            }
        }
    }

    /// Short textual form used in reports and workspace files (`Q`, `GF(p)`).
    pub fn label(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

pub(crate) fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let p = p as u64;
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a % p, p - 2, p)
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    acc
}

/// Signed integer view of a scalar, used for compact printing.
pub fn scalar_to_string(q: &Scalar) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else if q.is_negative() {
        format!("-{}/{}", q.numer().abs(), q.denom())
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
