//! Exact rational scalars.
//!
//! Coefficients, evaluation results and certificate payloads are all
//! arbitrary-precision rationals; nothing in this crate ever rounds.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator (guaranteed by the underlying representation).
pub type Rational = num_rational::BigRational;

/// Parses `p` or `p/q` with an optional leading sign. Rejects zero
/// denominators.
pub fn parse_rational(text: &str) -> Result<Rational, Error> {
    let bad = || Error::BadRational(text.to_string());
    let (num_str, den_str) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (text.trim(), None),
    };
    let numer: BigInt = num_str.parse().map_err(|_| bad())?;
    let denom: BigInt = match den_str {
        Some(d) => d.parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(numer, denom))
}

/// Least common multiple of the denominators, used to clear a rational
/// solution vector to integers.
pub fn denominator_lcm(values: &[Rational]) -> BigInt {
    values
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Scales a rational vector by the LCM of its denominators, returning the
/// resulting integer vector.
pub fn clear_denominators(values: &[Rational]) -> Vec<BigInt> {
    let lcm = denominator_lcm(values);
    values
        .iter()
        .map(|v| v.numer() * (&lcm / v.denom()))
        .collect()
}

/// `base^exp` for integer `exp`; `base` must be nonzero when `exp < 0`.
pub fn rational_pow(base: &Rational, exp: i64) -> Rational {
    if exp == 0 {
        return Rational::one();
    }
    let mag = num_traits::pow(base.clone(), exp.unsigned_abs() as usize);
    if exp > 0 {
        mag
    } else {
        mag.recip()
    }
}

pub fn is_strictly_positive(r: &Rational) -> bool {
    r.is_positive()
}

/// Serde adapters: rationals travel through reports as canonical strings
/// (`"-3/2"`, `"5"`) so that JSON stays exact and human-readable.
pub mod serde_rational {
    use super::{parse_rational, Rational};
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(de::Error::custom)
    }
}

pub mod serde_rational_vec {
    use super::{parse_rational, Rational};
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|r| r.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let texts = Vec::<String>::deserialize(d)?;
        texts
            .iter()
            .map(|t| parse_rational(t).map_err(de::Error::custom))
            .collect()
    }
}

pub mod serde_bigint_vec {
    use num_bigint::BigInt;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|n| n.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let texts = Vec::<String>::deserialize(d)?;
        texts
            .iter()
            .map(|t| t.parse().map_err(de::Error::custom))
            .collect()
    }
}

pub mod serde_bigint_vec_opt {
    use num_bigint::BigInt;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Vec<BigInt>>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(values) => s.collect_seq(values.iter().map(|n| n.to_string())),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<Option<Vec<BigInt>>, D::Error> {
        let texts = Option::<Vec<String>>::deserialize(d)?;
        match texts {
            None => Ok(None),
            Some(texts) => texts
                .iter()
                .map(|t| t.parse().map_err(de::Error::custom))
                .collect::<Result<Vec<_>, _>>()
                .map(Some),
        }
    }
}
