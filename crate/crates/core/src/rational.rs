//! Exact rational scalars and their textual form.
//!
//! Every number that crosses a serialization boundary is written either as an
//! integer (`"3"`) or as a reduced fraction (`"5/2"`).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

pub fn format(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Lossy conversion for human-readable tables only.
pub fn to_f64(q: &Rational) -> f64 {
    let n: f64 = q.numer().to_string().parse().unwrap_or(f64::NAN);
    let d: f64 = q.denom().to_string().parse().unwrap_or(f64::NAN);
    n / d
}

pub fn sum<'a>(it: impl IntoIterator<Item = &'a Rational>) -> Rational {
    it.into_iter().fold(zero(), |acc, v| acc + v)
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(zero(), |acc, (x, y)| acc + x * y)
}

/// Scale a rational vector to coprime integers, keeping its sign pattern.
pub fn clear_denominators(v: &[Rational]) -> Vec<BigInt> {
    use num_integer::Integer;
    let lcm = v.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = v.iter().map(|q| (q * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        ints
    } else {
        ints.into_iter().map(|x| x / &g).collect()
    }
}

pub fn is_nonneg(q: &Rational) -> bool {
    !q.is_negative()
}

/// Serde adapter for a single rational.
pub mod serde_q {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        format(q).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let raw = QText::deserialize(d)?;
        raw.into_rational().map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for a vector of rationals.
pub mod serde_qvec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        v.iter().map(format).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
        let raw = Vec::<QText>::deserialize(d)?;
        raw.into_iter()
            .map(|q| q.into_rational().map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Serde adapter for an optional vector of rationals.
pub mod serde_opt_qvec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<Vec<Rational>>, s: S) -> std::result::Result<S::Ok, S::Error> {
        v.as_ref()
            .map(|v| v.iter().map(format).collect::<Vec<_>>())
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Vec<Rational>>, D::Error> {
        let raw = Option::<Vec<QText>>::deserialize(d)?;
        raw.map(|v| {
            v.into_iter()
                .map(|q| q.into_rational().map_err(serde::de::Error::custom))
                .collect()
        })
        .transpose()
    }
}

/// Serde adapter for an optional rational.
pub mod serde_opt_q {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
        q.as_ref().map(format).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Rational>, D::Error> {
        Option::<QText>::deserialize(d)?
            .map(|q| q.into_rational().map_err(serde::de::Error::custom))
            .transpose()
    }
}

/// Accepts both `"p/q"` strings and bare JSON integers.
#[derive(Deserialize)]
#[serde(untagged)]
enum QText {
    Int(i64),
    Text(String),
}

impl QText {
    fn into_rational(self) -> Result<Rational> {
        match self {
            QText::Int(v) => Ok(int(v)),
            QText::Text(s) => parse(&s),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_and_parse() {
        assert_eq!(format(&ratio(10, 4)), "5/2");
        assert_eq!(format(&ratio(-6, 3)), "-2");
        assert_eq!(parse("5/2").unwrap(), ratio(5, 2));
        assert_eq!(parse(" -4 / 6 ").unwrap(), ratio(-2, 3));
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }

    #[test]
    fn clear_denominators_is_coprime() {
        let v = vec![ratio(1, 2), ratio(1, 2), ratio(3, 4)];
        let ints: Vec<i64> = clear_denominators(&v)
            .into_iter()
            .map(|x| x.try_into().unwrap())
            .collect();
        assert_eq!(ints, vec![2, 2, 3]);
        let v = vec![int(4), int(-6), zero()];
        let ints: Vec<i64> = clear_denominators(&v)
            .into_iter()
            .map(|x| x.try_into().unwrap())
            .collect();
        assert_eq!(ints, vec![2, -3, 0]);
    }

    #[test]
    fn serde_accepts_ints_and_strings() {
        #[derive(Serialize, Deserialize)]
        struct W {
            #[serde(with = "serde_qvec")]
            v: Vec<Rational>,
        }
        let w: W = serde_json::from_str(r#"{"v":[1,"2/3","-4"]}"#).unwrap();
        assert_eq!(w.v, vec![int(1), ratio(2, 3), int(-4)]);
        assert_eq!(serde_json::to_string(&w).unwrap(), r#"{"v":["1","2/3","-4"]}"#);
    }
}
