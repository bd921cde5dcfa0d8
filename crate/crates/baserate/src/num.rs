//! Scalar abstraction and validated probability values.

use core::fmt;

use num_traits::{Float, FromPrimitive, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Floating point scalar the library is generic over.
pub trait Real:
    Float
    + FromPrimitive
    + ToPrimitive
    + Serialize
    + DeserializeOwned
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
{
    /// Significand width in bits, counting the implicit leading bit.
    /// Every integer up to `2^MANTISSA_DIGITS` is exactly representable.
    const MANTISSA_DIGITS: u32;
}

impl Real for f32 {
    const MANTISSA_DIGITS: u32 = f32::MANTISSA_DIGITS;
}

impl Real for f64 {
    const MANTISSA_DIGITS: u32 = f64::MANTISSA_DIGITS;
}

/// Largest population or cell count `R` can tally without rounding.
pub fn max_exact_count<R: Real>() -> u64 {
    1u64 << R::MANTISSA_DIGITS
}

/// A number validated to lie in `[0, 1]`.
///
/// Validation happens exactly once, here. Operations taking a `Probability`
/// rely on the bound and never re-check it, so `NaN` and out-of-range values
/// are rejected at construction.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Probability<R: Real>(R);

impl<R: Real> Probability<R> {
    pub fn new(value: R) -> Result<Self> {
        Self::named(value, "probability")
    }

    /// Like [`Probability::new`], reporting `name` in the error so callers
    /// validating a field of a larger type can point at the field.
    pub fn named(value: R, name: &'static str) -> Result<Self> {
        if value >= R::zero() && value <= R::one() {
            Ok(Self(value))
        } else {
            Err(Error::InvalidProbability {
                name,
                value: value.to_f64().unwrap_or(f64::NAN),
            })
        }
    }

    pub fn zero() -> Self {
        Self(R::zero())
    }

    pub fn one() -> Self {
        Self(R::one())
    }

    pub fn get(self) -> R {
        self.0
    }
}

impl<R: Real> fmt::Display for Probability<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl<R: Real> Serialize for Probability<R> {
    fn serialize<S: Serializer>(&self, serializer: S) -> core::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de, R: Real> Deserialize<'de> for Probability<R> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> core::result::Result<Self, D::Error> {
        let value = R::deserialize(deserializer)?;
        Probability::new(value).map_err(serde::de::Error::custom)
    }
}
