//! Exact rationals and their text/JSON forms (`"num/den"` or an integer).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Q {
    Q::zero()
}

pub fn one() -> Q {
    Q::one()
}

/// `"3"` for integers, `"-1/2"` otherwise.
pub fn format_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).ok()?;
            let d = BigInt::from_str(d.trim()).ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Q::new(n, d))
            }
        }
        None => BigInt::from_str(s).ok().map(Q::from_integer),
    }
}

/// Serde wrapper accepting integers or `"num/den"` strings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JsonQ(pub Q);

impl Serialize for JsonQ {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_q(&self.0))
    }
}

impl<'de> Deserialize<'de> for JsonQ {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = JsonQ;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a \"num/den\" string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<JsonQ, E> {
                Ok(JsonQ(q(v)))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<JsonQ, E> {
                Ok(JsonQ(Q::from_integer(BigInt::from(v))))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<JsonQ, E> {
                parse_q(v)
                    .map(JsonQ)
                    .ok_or_else(|| E::custom(format!("not a rational: {v:?}")))
            }
        }
        d.deserialize_any(V)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_forms() {
        assert_eq!(format_q(&q(2)), "2");
        assert_eq!(format_q(&frac(-2, 4)), "-1/2");
        assert_eq!(parse_q("6/4"), Some(frac(3, 2)));
        assert_eq!(parse_q(" -7 "), Some(q(-7)));
        assert_eq!(parse_q("1/0"), None);
        assert_eq!(parse_q("x"), None);
    }

    #[test]
    fn json_forms() {
        let v: Vec<JsonQ> = serde_json::from_str(r#"[3, "1/3", "-2"]"#).unwrap();
        assert_eq!(v, vec![JsonQ(q(3)), JsonQ(frac(1, 3)), JsonQ(q(-2))]);
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"["3","1/3","-2"]"#);
        assert!(serde_json::from_str::<JsonQ>("1.5").is_err());
    }
}
