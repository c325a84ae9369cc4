//! Serde helpers for big integers and rationals.
//!
//! Integers are written as JSON numbers when they fit in an `i64` and as
//! decimal strings otherwise; both forms are accepted on input. Rationals
//! are always strings (`"p"` or `"p/q"`).

use serde::de::{self, Deserializer, Visitor};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::lattice::{fmt_rational, parse_rational, Int, Rational};

pub fn serialize<S: Serializer>(v: &Int, s: S) -> Result<S::Ok, S::Error> {
    match crate::lattice::int_to_i64(v) {
        Some(x) => s.serialize_i64(x),
        None => s.serialize_str(&v.to_string()),
    }
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Int, D::Error> {
    struct IntVisitor;
    impl Visitor<'_> for IntVisitor {
        type Value = Int;
        fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
            f.write_str("an integer or a decimal integer string")
        }
        fn visit_i64<E: de::Error>(self, v: i64) -> Result<Int, E> {
            Ok(Int::from(v))
        }
        fn visit_u64<E: de::Error>(self, v: u64) -> Result<Int, E> {
            Ok(Int::from(v))
        }
        fn visit_str<E: de::Error>(self, v: &str) -> Result<Int, E> {
            v.trim().parse().map_err(|_| E::custom(format!("not an integer: {v:?}")))
        }
    }
    d.deserialize_any(IntVisitor)
}

/// Newtype used to route collections through the helpers above.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntRepr(pub Int);

impl Serialize for IntRepr {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serialize(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for IntRepr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        deserialize(d).map(IntRepr)
    }
}

pub mod vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Int], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| IntRepr(x.clone())))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Int>, D::Error> {
        let v: Vec<IntRepr> = Vec::deserialize(d)?;
        Ok(v.into_iter().map(|x| x.0).collect())
    }
}

pub mod option {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<Int>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(x) => super::serialize(x, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Int>, D::Error> {
        let v: Option<IntRepr> = Option::deserialize(d)?;
        Ok(v.map(|x| x.0))
    }
}

pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rational(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = RationalRepr::deserialize(d)?;
        Ok(s.0)
    }
}

pub mod option_rational {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(q) => s.serialize_str(&fmt_rational(q)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        let v: Option<RationalRepr> = Option::deserialize(d)?;
        Ok(v.map(|x| x.0))
    }
}

/// A rational that deserializes from a string (`"1/2"`, `"0.25"`) or a
/// JSON integer. Floats are rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalRepr(pub Rational);

impl Serialize for RationalRepr {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for RationalRepr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct RatVisitor;
        impl Visitor<'_> for RatVisitor {
            type Value = RationalRepr;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("an exact rational string such as \"1/2\" or an integer")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<RationalRepr, E> {
                Ok(RationalRepr(Rational::from_integer(Int::from(v))))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<RationalRepr, E> {
                Ok(RationalRepr(Rational::from_integer(Int::from(v))))
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> Result<RationalRepr, E> {
                Err(E::custom(format!(
                    "floating point value {v} rejected; write exact rationals as strings"
                )))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<RationalRepr, E> {
                parse_rational(v).map(RationalRepr).map_err(|e| E::custom(e.to_string()))
            }
        }
        d.deserialize_any(RatVisitor)
    }
}
