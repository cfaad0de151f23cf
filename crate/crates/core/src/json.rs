//! Wire format. Integers travel as decimal strings; on input, plain JSON
//! numbers are accepted as well. Rationals are `"num/den"` strings.

use std::fmt::Display;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::PairError;
use crate::pairs::WeightedPair;
use crate::scalar::Weight;
use crate::ExactRational;

fn value_to_string(value: Value) -> Result<String, String> {
    match value {
        Value::String(s) => Ok(s.trim().to_string()),
        Value::Number(n) if n.is_u64() || n.is_i64() => Ok(n.to_string()),
        other => Err(format!("expected an integer or a decimal string, got {other}")),
    }
}

/// Parses a nonnegative decimal integer.
pub fn parse_weight<T: Weight>(text: &str) -> Result<T, PairError> {
    let digits = text.trim();
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(PairError::Parse(text.to_string()));
    }
    T::from_str_radix(digits, 10).map_err(|_| PairError::Parse(text.to_string()))
}

/// `T` as a decimal string.
pub mod decimal {
    use super::*;

    pub fn serialize<T: Display, S: Serializer>(value: &T, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(value)
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<T, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        let text = value_to_string(Value::deserialize(d)?).map_err(de::Error::custom)?;
        text.parse().map_err(de::Error::custom)
    }
}

/// `Vec<T>` as a list of decimal strings.
pub mod decimal_vec {
    use super::*;

    pub fn serialize<T: Display, S: Serializer>(values: &[T], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(values.iter().map(ToString::to_string))
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<Vec<T>, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        Vec::<Value>::deserialize(d)?
            .into_iter()
            .map(|v| {
                let text = value_to_string(v).map_err(de::Error::custom)?;
                text.parse().map_err(de::Error::custom)
            })
            .collect()
    }
}

/// `Option<Vec<T>>` as null or a list of decimal strings.
pub mod decimal_opt_vec {
    use super::*;

    pub fn serialize<T: Display, S: Serializer>(values: &Option<Vec<T>>, s: S) -> Result<S::Ok, S::Error> {
        match values {
            Some(v) => super::decimal_vec::serialize(v, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<Option<Vec<T>>, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        match Option::<Vec<Value>>::deserialize(d)? {
            None => Ok(None),
            Some(list) => list
                .into_iter()
                .map(|v| {
                    let text = value_to_string(v).map_err(de::Error::custom)?;
                    text.parse().map_err(de::Error::custom)
                })
                .collect::<Result<Vec<T>, _>>()
                .map(Some),
        }
    }
}

pub fn rational_to_string(r: &ExactRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(text: &str) -> Result<ExactRational, String> {
    let text = text.trim();
    let (num, den) = text.split_once('/').unwrap_or((text, "1"));
    let num: BigInt = num.trim().parse().map_err(|_| format!("bad numerator in {text:?}"))?;
    let den: BigInt = den.trim().parse().map_err(|_| format!("bad denominator in {text:?}"))?;
    if den == BigInt::from(0) {
        return Err(format!("zero denominator in {text:?}"));
    }
    Ok(ExactRational::new(num, den))
}

/// [`ExactRational`] as `"num/den"`.
pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(value: &ExactRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rational_to_string(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<ExactRational, D::Error> {
        let text = value_to_string(Value::deserialize(d)?).map_err(de::Error::custom)?;
        parse_rational(&text).map_err(de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct PairWire {
    degrees: Vec<Value>,
    weights: Vec<Value>,
}

impl<T: Weight> Serialize for WeightedPair<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let list = |v: &[T]| v.iter().map(|x| Value::String(x.to_string())).collect();
        PairWire {
            degrees: list(self.degrees()),
            weights: list(self.weights()),
        }
        .serialize(s)
    }
}

impl<'de, T: Weight> Deserialize<'de> for WeightedPair<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let wire = PairWire::deserialize(d)?;
        let list = |v: Vec<Value>| -> Result<Vec<T>, D::Error> {
            v.into_iter()
                .map(|x| {
                    let text = value_to_string(x).map_err(de::Error::custom)?;
                    parse_weight(&text).map_err(de::Error::custom)
                })
                .collect()
        };
        WeightedPair::new(list(wire.degrees)?, list(wire.weights)?).map_err(de::Error::custom)
    }
}

/// Reads `{"degrees":[...],"weights":[...]}`.
pub fn parse_pair<T: Weight>(text: &str) -> Result<WeightedPair<T>, PairError> {
    serde_json::from_str(text).map_err(|e| PairError::InvalidJson(e.to_string()))
}
