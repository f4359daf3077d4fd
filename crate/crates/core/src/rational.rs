//! Exact interval endpoints: rationals extended with signed infinities.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rat = Rational64;

/// A point of `ℚ ∪ {−∞, +∞}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Endpoint {
    NegInf,
    Fin(Rat),
    PosInf,
}

impl Endpoint {
    pub fn int(n: i64) -> Self {
        Endpoint::Fin(Rat::from_integer(n))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Endpoint::Fin(Rat::new(n, d))
    }

    pub fn zero() -> Self {
        Endpoint::Fin(Rat::zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Endpoint::Fin(_))
    }

    pub fn finite(&self) -> Option<Rat> {
        match self {
            Endpoint::Fin(r) => Some(*r),
            _ => None,
        }
    }

    /// Sum of two endpoints; `−∞ + +∞` has no value.
    pub fn checked_add(self, other: Endpoint) -> Option<Endpoint> {
        use Endpoint::*;
        match (self, other) {
            (Fin(a), Fin(b)) => num_traits::CheckedAdd::checked_add(&a, &b).map(Fin),
            (NegInf, PosInf) | (PosInf, NegInf) => None,
            (NegInf, _) | (_, NegInf) => Some(NegInf),
            (PosInf, _) | (_, PosInf) => Some(PosInf),
        }
    }

    pub fn neg(self) -> Endpoint {
        match self {
            Endpoint::NegInf => Endpoint::PosInf,
            Endpoint::PosInf => Endpoint::NegInf,
            Endpoint::Fin(r) => Endpoint::Fin(-r),
        }
    }

    pub fn max(self, other: Endpoint) -> Endpoint {
        std::cmp::max(self, other)
    }

    pub fn min(self, other: Endpoint) -> Endpoint {
        std::cmp::min(self, other)
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Endpoint::NegInf => true,
            Endpoint::PosInf => false,
            Endpoint::Fin(r) => r.is_negative(),
        }
    }

    pub fn to_unicode(&self) -> String {
        match self {
            Endpoint::NegInf => "-∞".into(),
            Endpoint::PosInf => "∞".into(),
            Endpoint::Fin(r) => fmt_rat(r),
        }
    }
}

pub fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endpoint::NegInf => f.write_str("-inf"),
            Endpoint::PosInf => f.write_str("+inf"),
            Endpoint::Fin(r) => f.write_str(&fmt_rat(r)),
        }
    }
}

/// Parses `p`, `p/q`, `-inf`, `+inf` (also `inf`, `∞`, `-∞`).
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse { line: 0, col: 0, message: format!("not a rational: {s:?}") };
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Rat::new(n, d))
        }
        None => Ok(Rat::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl FromStr for Endpoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "-inf" | "-∞" => Ok(Endpoint::NegInf),
            "+inf" | "inf" | "∞" | "+∞" => Ok(Endpoint::PosInf),
            other => parse_rat(other).map(Endpoint::Fin),
        }
    }
}

impl Serialize for Endpoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Endpoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses a comma separated grid such as `0,1/4,1/2`; output is sorted and deduplicated.
pub fn parse_grid(s: &str) -> Result<Vec<Rat>> {
    let mut grid = s.split(',').filter(|t| !t.trim().is_empty()).map(parse_rat).collect::<Result<Vec<_>>>()?;
    grid.sort();
    grid.dedup();
    Ok(grid)
}

pub fn cmp_endpoints(a: &Endpoint, b: &Endpoint) -> Ordering {
    a.cmp(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_puts_infinities_outside() {
        assert!(Endpoint::NegInf < Endpoint::int(-1000));
        assert!(Endpoint::int(1000) < Endpoint::PosInf);
        assert!(Endpoint::ratio(1, 3) < Endpoint::ratio(1, 2));
    }

    #[test]
    fn addition_with_infinity() {
        assert_eq!(Endpoint::NegInf.checked_add(Endpoint::int(3)), Some(Endpoint::NegInf));
        assert_eq!(Endpoint::NegInf.checked_add(Endpoint::PosInf), None);
        assert_eq!(Endpoint::ratio(1, 2).checked_add(Endpoint::int(-1)), Some(Endpoint::ratio(-1, 2)));
    }

    #[test]
    fn display_and_parse() {
        for s in ["-inf", "+inf", "0", "1/2", "-3/4", "7"] {
            let e: Endpoint = s.parse().unwrap();
            assert_eq!(e.to_string(), s);
        }
        assert_eq!("2/4".parse::<Endpoint>().unwrap(), Endpoint::ratio(1, 2));
        assert!("1/0".parse::<Endpoint>().is_err());
    }

    #[test]
    fn grid_is_sorted() {
        let g = parse_grid("1, 0, 1/2, 1/2").unwrap();
        assert_eq!(g, vec![Rat::from_integer(0), Rat::new(1, 2), Rat::from_integer(1)]);
    }
}
