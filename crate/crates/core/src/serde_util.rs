//! Serde adapters for exact numbers.
//!
//! Integers are written as JSON numbers while they fit in an `i64` and as
//! decimal strings beyond that; rationals are written as `"p/q"` strings.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::{self, Visitor};
use serde::{Deserializer, Serializer};

use crate::exactnum::{BigRational, QuadRat};

pub mod int {
    use super::*;

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        match x.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&x.to_string()),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        d.deserialize_any(IntVisitor)
    }
}

pub mod int_vec {
    use super::*;
    use serde::ser::SerializeSeq;
    use serde::Deserialize;

    pub fn serialize<S: Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&Int(x.clone()))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let v: Vec<Int> = Vec::deserialize(d)?;
        Ok(v.into_iter().map(|i| i.0).collect())
    }
}

pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        d.deserialize_any(RationalVisitor)
    }
}

pub mod rational_vec {
    use super::*;
    use serde::ser::SerializeSeq;
    use serde::Deserialize;

    pub fn serialize<S: Serializer>(xs: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&x.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        let v: Vec<Rat> = Vec::deserialize(d)?;
        Ok(v.into_iter().map(|r| r.0).collect())
    }
}

pub mod quad {
    use super::*;

    pub fn serialize<S: Serializer>(x: &QuadRat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<QuadRat, D::Error> {
        let s: String = serde::Deserialize::deserialize(d)?;
        s.parse().map_err(de::Error::custom)
    }
}

/// Owned integer wrapper using the [`int`] encoding.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(transparent)]
pub struct Int(#[serde(with = "int")] pub BigInt);

/// Owned rational wrapper using the [`rational`] encoding.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(transparent)]
pub struct Rat(#[serde(with = "rational")] pub BigRational);

struct IntVisitor;

impl<'de> Visitor<'de> for IntVisitor {
    type Value = BigInt;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a decimal integer string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<BigInt, E> {
        Ok(BigInt::from(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<BigInt, E> {
        Ok(BigInt::from(v))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<BigInt, E> {
        v.trim().parse().map_err(E::custom)
    }
}

struct RationalVisitor;

impl<'de> Visitor<'de> for RationalVisitor {
    type Value = BigRational;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a \"p/q\" string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<BigRational, E> {
        Ok(BigRational::from_integer(BigInt::from(v)))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<BigRational, E> {
        Ok(BigRational::from_integer(BigInt::from(v)))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<BigRational, E> {
        v.trim().parse().map_err(E::custom)
    }
}
