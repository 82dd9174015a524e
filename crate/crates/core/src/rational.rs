//! Exact rationals and their canonical `"p/q"` text form.

use crate::error::{Error, Result};
use num_rational::Ratio;
use num_traits::{Signed, Zero};

pub type Rational = Ratio<i64>;

pub fn ratio(num: i64, den: i64) -> Rational {
    Ratio::new(num, den)
}

/// Parses `"p/q"` or a bare integer.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::InvalidArgument(format!("cannot parse rational {text:?}"));
    let (num, den) = match text.split_once('/') {
        Some((p, q)) => (p.trim().parse::<i64>().map_err(|_| bad())?, q.trim().parse::<i64>().map_err(|_| bad())?),
        None => (text.parse::<i64>().map_err(|_| bad())?, 1),
    };
    if den == 0 {
        return Err(bad());
    }
    Ok(Ratio::new(num, den))
}

/// Canonical lowest-terms form, always with an explicit denominator.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Compares `count / total` against `bound` without division.
pub fn fraction_le(count: usize, total: usize, bound: &Rational) -> bool {
    (count as i128) * (*bound.denom() as i128) <= (*bound.numer() as i128) * (total as i128)
}

pub fn fraction(count: usize, total: usize) -> Rational {
    Ratio::new(count as i64, total as i64)
}

pub fn in_unit_interval(r: &Rational) -> bool {
    !r.is_negative() && *r <= Ratio::from_integer(1)
}

pub fn to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

pub fn abs_diff(a: &Rational, b: &Rational) -> Rational {
    let d = a - b;
    if d < Rational::zero() { -d } else { d }
}

/// Serde adapter writing rationals as `"p/q"` strings.
pub mod serde_str {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

pub mod serde_str_vec {
    use super::*;
    use serde::ser::SerializeSeq;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(rs: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(rs.len()))?;
        for r in rs {
            seq.serialize_element(&format_rational(r))?;
        }
        seq.end()
    }
}
