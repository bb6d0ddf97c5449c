//! Arbitrary-precision rationals.
//!
//! `Rat` is `num_rational::BigRational`, which already maintains the
//! canonical form we require: numerator and denominator coprime, the
//! denominator positive, and zero stored as `0/1`. This module adds the
//! `"p/q"` text form shared by all CLI flags and JSON files (`"p"` is
//! accepted and produced when the denominator is 1), plus serde adapters.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serializer};
use std::fmt::Write as _;
use std::str::FromStr;

pub type Rat = BigRational;

/// Integer-valued rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational `p/q`. Panics on `q == 0`.
pub fn ratq(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Renders in the canonical `"p/q"` form, omitting `/q` when `q == 1`.
pub fn format_rat(r: &Rat) -> String {
    let mut s = String::new();
    write!(s, "{}", r.numer()).unwrap();
    if !r.denom().is_one() {
        write!(s, "/{}", r.denom()).unwrap();
    }
    s
}

/// Parses `"p"` or `"p/q"` with optional sign on `p`.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    match s.split_once('/') {
        None => BigInt::from_str(s)
            .map(Rat::from_integer)
            .map_err(|e| format!("bad rational {s:?}: {e}")),
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|e| format!("bad numerator {p:?}: {e}"))?;
            let q = BigInt::from_str(q.trim()).map_err(|e| format!("bad denominator {q:?}: {e}"))?;
            if q.is_zero() {
                return Err(format!("zero denominator in {s:?}"));
            }
            Ok(Rat::new(p, q))
        }
    }
}

/// True when `r` is a square in Q; returns the nonnegative square root.
pub fn sqrt_rat(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer(), r.denom());
    let sn = n.sqrt();
    let sd = d.sqrt();
    if &(&sn * &sn) == n && &(&sd * &sd) == d {
        Some(Rat::new(sn, sd))
    } else {
        None
    }
}

/// Serde adapter: rationals as `"p/q"` strings.
///
/// Use as `#[serde(with = "crate::exactalg::rat::serde_str")]`.
pub mod serde_str {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rat, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&format_rat(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(de)?;
        parse_rat(&s).map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "7", "-3", "1/2", "-22/7"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(format_rat(&r), s);
        }
        // non-canonical inputs normalize
        assert_eq!(format_rat(&parse_rat("4/6").unwrap()), "2/3");
        assert_eq!(format_rat(&parse_rat("3/-6").unwrap()), "-1/2");
        assert_eq!(format_rat(&parse_rat("5/1").unwrap()), "5");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn rational_square_roots() {
        assert_eq!(sqrt_rat(&ratq(4, 9)), Some(ratq(2, 3)));
        assert_eq!(sqrt_rat(&rat(0)), Some(rat(0)));
        assert_eq!(sqrt_rat(&rat(2)), None);
        assert_eq!(sqrt_rat(&rat(-4)), None);
    }
}
