//! Exact rational scalars and their string form (`"p/q"`, or `"p"` when the
//! denominator is one).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn from_big(n: BigInt) -> Q {
    Q::from_integer(n)
}

pub fn is_integer(x: &Q) -> bool {
    x.denom().is_one()
}

pub fn parse_q(s: &str) -> Result<Q> {
    let t = s.trim();
    t.parse::<Q>()
        .map_err(|_| Error::Parse(format!("not a rational number: {t:?}")))
}

pub fn to_string(x: &Q) -> String {
    x.to_string()
}

/// Least common multiple of the denominators; one for an empty slice.
pub fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a Q>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// gcd with the convention gcd(0, x) = |x|.
pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

pub fn gcd_all<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    xs.into_iter().fold(BigInt::zero(), |acc, x| acc.gcd(x))
}

pub fn half() -> Q {
    frac(1, 2)
}

pub fn abs(x: &Q) -> Q {
    x.abs()
}

/// Serde adapters that encode rationals as strings.
pub mod serde_q {
    use super::{parse_q, Q};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let raw = StrOrInt::deserialize(d)?;
        raw.into_q().map_err(serde::de::Error::custom)
    }

    /// Accept both `"3/2"` and bare JSON integers.
    #[derive(Deserialize)]
    #[serde(untagged)]
    pub(crate) enum StrOrInt {
        Str(String),
        Int(i64),
    }

    impl StrOrInt {
        pub(crate) fn into_q(self) -> crate::error::Result<Q> {
            match self {
                StrOrInt::Str(s) => parse_q(&s),
                StrOrInt::Int(i) => Ok(super::q(i)),
            }
        }
    }

    pub mod vec {
        use super::{Q, StrOrInt};
        use serde::ser::SerializeSeq;
        use serde::{Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(xs: &[Q], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(xs.len()))?;
            for x in xs {
                seq.serialize_element(&x.to_string())?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
            let raw = Vec::<StrOrInt>::deserialize(d)?;
            raw.into_iter()
                .map(|r| r.into_q().map_err(serde::de::Error::custom))
                .collect()
        }
    }

    pub mod matrix {
        use super::Q;
        use serde::ser::SerializeSeq;
        use serde::Serializer;

        pub fn serialize<S: Serializer>(rows: &[Vec<Q>], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(rows.len()))?;
            for row in rows {
                let strs: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                seq.serialize_element(&strs)?;
            }
            seq.end()
        }
    }
}
