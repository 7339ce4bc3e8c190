//! Exact rationals and the rational-or-infinite type used for contacts and radii.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub type Q = BigRational;

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// `n/d`, reduced. Panics on `d == 0`.
pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qu(n: u64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Denominator of a reduced rational as `u64`.
pub fn denom_u64(x: &Q) -> u64 {
    x.denom().to_u64().expect("denominator fits in u64")
}

pub fn is_integer(x: &Q) -> bool {
    x.denom().is_one()
}

/// Canonical text form: `"7"` or `"5/2"`.
pub fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse rational from {0:?}")]
pub struct ParseRationalError(pub String);

pub fn parse_q(s: &str) -> Result<Q, ParseRationalError> {
    let err = || ParseRationalError(s.to_string());
    let t = s.trim();
    match t.split_once('/') {
        None => BigInt::from_str(t).map(Q::from_integer).map_err(|_| err()),
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| err())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(Q::new(n, d))
        }
    }
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Smallest `n >= 1` with `d * nu^2 * n` an integer; this is the denominator of
/// `d` divided by its common part with `nu^2`.
pub fn n_for(d: &Q, nu: u64) -> u64 {
    let den = denom_u64(d);
    let nu2 = nu * nu;
    den / den.gcd(&nu2)
}

/// A rational number or `+inf`. Finite values sort below `Inf`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ext {
    Fin(Q),
    Inf,
}

impl Ext {
    pub fn int(n: i64) -> Self {
        Ext::Fin(qi(n))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Ext::Fin(qf(n, d))
    }

    pub fn is_inf(&self) -> bool {
        matches!(self, Ext::Inf)
    }

    pub fn fin(&self) -> Option<&Q> {
        match self {
            Ext::Fin(q) => Some(q),
            Ext::Inf => None,
        }
    }

    /// Finite value or panic; use only where finiteness is an invariant.
    pub fn expect_fin(&self) -> &Q {
        self.fin().expect("finite value expected")
    }

    pub fn min_of(a: &Ext, b: &Ext) -> Ext {
        if a <= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    pub fn parse(s: &str) -> Result<Self, ParseRationalError> {
        match s.trim() {
            "inf" | "∞" | "+inf" => Ok(Ext::Inf),
            t => parse_q(t).map(Ext::Fin),
        }
    }
}

impl From<Q> for Ext {
    fn from(q: Q) -> Self {
        Ext::Fin(q)
    }
}

impl PartialEq<Q> for Ext {
    fn eq(&self, other: &Q) -> bool {
        matches!(self, Ext::Fin(q) if q == other)
    }
}

impl PartialOrd<Q> for Ext {
    fn partial_cmp(&self, other: &Q) -> Option<std::cmp::Ordering> {
        Some(match self {
            Ext::Fin(q) => q.cmp(other),
            Ext::Inf => std::cmp::Ordering::Greater,
        })
    }
}

impl fmt::Display for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ext::Fin(q) => f.write_str(&fmt_q(q)),
            Ext::Inf => f.write_str("inf"),
        }
    }
}

impl Serialize for Ext {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Ext {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Ext::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Rational with string serialization, for report documents.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat(pub Q);

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_q(&self.0))
    }
}

impl From<Q> for Rat {
    fn from(q: Q) -> Self {
        Rat(q)
    }
}

impl From<&Q> for Rat {
    fn from(q: &Q) -> Self {
        Rat(q.clone())
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_q(&self.0))
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_q(&s).map(Rat).map_err(serde::de::Error::custom)
    }
}

/// A rational or `-inf`; the maximal polar quotient of a Morse germ probed
/// by one of its own branches is `-inf`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LowerExt {
    NegInf,
    Fin(Q),
}

impl LowerExt {
    pub fn fin(&self) -> Option<&Q> {
        match self {
            LowerExt::Fin(q) => Some(q),
            LowerExt::NegInf => None,
        }
    }
}

impl fmt::Display for LowerExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LowerExt::Fin(q) => f.write_str(&fmt_q(q)),
            LowerExt::NegInf => f.write_str("-inf"),
        }
    }
}

impl Serialize for LowerExt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for LowerExt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        match s.trim() {
            "-inf" | "-∞" => Ok(LowerExt::NegInf),
            t => parse_q(t).map(LowerExt::Fin).map_err(serde::de::Error::custom),
        }
    }
}

/// Integer part helpers used by the Newton code.
pub fn q_to_i64(x: &Q) -> Option<i64> {
    if is_integer(x) {
        x.numer().to_i64()
    } else {
        None
    }
}

pub fn q_abs(x: &Q) -> Q {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_q("5/2").unwrap(), qf(5, 2));
        assert_eq!(parse_q("7/1").unwrap(), qi(7));
        assert_eq!(parse_q(" -4/6 ").unwrap(), qf(-2, 3));
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
        assert_eq!(fmt_q(&qi(7)), "7");
        assert_eq!(fmt_q(&qf(10, 4)), "5/2");
    }

    #[test]
    fn ext_order() {
        assert!(Ext::int(3) < Ext::Inf);
        assert!(Ext::frac(5, 2) < Ext::int(3));
        assert_eq!(Ext::parse("inf").unwrap(), Ext::Inf);
        assert_eq!(Ext::min_of(&Ext::Inf, &Ext::int(2)), Ext::int(2));
        assert!(LowerExt::NegInf < LowerExt::Fin(qi(-100)));
    }

    #[test]
    fn serde_strings() {
        let v = serde_json::to_string(&(Ext::frac(13, 8), Ext::Inf, Rat(qi(4)))).unwrap();
        assert_eq!(v, r#"["13/8","inf","4"]"#);
        let back: (Ext, Ext, Rat) = serde_json::from_str(&v).unwrap();
        assert_eq!(back, (Ext::frac(13, 8), Ext::Inf, Rat(qi(4))));
    }

    #[test]
    fn minimal_n() {
        assert_eq!(n_for(&qf(5, 2), 1), 2);
        assert_eq!(n_for(&qi(2), 1), 1);
        assert_eq!(n_for(&qf(13, 8), 2), 2);
        assert_eq!(n_for(&qf(7, 4), 2), 1);
    }
}
