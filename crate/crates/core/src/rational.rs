//! Exact rational numbers for densities and thresholds.
//!
//! Every density in this crate is a ratio of small integers, and the local
//! search compares them against bounds such as `d / (d + k + 1)` that have no
//! finite binary expansion. [`Rational`] keeps those comparisons exact. Values
//! are always stored in lowest terms with a positive denominator, and they
//! print and parse as `"p/q"` strings.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// An exact rational number in lowest terms.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational(Ratio<i64>);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid integer in rational literal {0:?}")]
    BadInteger(String),
    #[error("zero denominator in rational literal {0:?}")]
    ZeroDenominator(String),
}

impl Rational {
    pub const ZERO: Rational = Rational(Ratio::new_raw(0, 1));

    /// Builds `numer / denom` and reduces it.
    ///
    /// Panics if `denom` is zero.
    pub fn new(numer: i64, denom: i64) -> Self {
        Rational(Ratio::new(numer, denom))
    }

    pub fn from_integer(value: i64) -> Self {
        Rational(Ratio::from_integer(value))
    }

    /// `2 * edges / vertices`, the average degree of a subgraph.
    pub fn average_degree(edges: usize, vertices: usize) -> Self {
        Rational::new(2 * edges as i64, vertices as i64)
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.denom() == 1
    }

    /// Largest integer not above `self`.
    pub fn floor(&self) -> i64 {
        self.0.floor().to_integer()
    }

    /// Smallest integer not below `self`.
    pub fn ceil(&self) -> i64 {
        self.0.ceil().to_integer()
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::ZERO
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        Rational(self.0 + rhs.0)
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        Rational(self.0 - rhs.0)
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        Rational(self.0 * rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl From<i64> for Rational {
    fn from(value: i64) -> Self {
        Rational::from_integer(value)
    }
}

impl fmt::Display for Rational {
    /// Always `p/q`, including integers (`3/1`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = ParseRationalError;

    /// Accepts `p/q` or a bare integer `p`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseRationalError::Empty);
        }
        let (numer, denom) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let numer: i64 = numer
            .parse()
            .map_err(|_| ParseRationalError::BadInteger(s.to_string()))?;
        let denom: i64 = denom
            .parse()
            .map_err(|_| ParseRationalError::BadInteger(s.to_string()))?;
        if denom == 0 {
            return Err(ParseRationalError::ZeroDenominator(s.to_string()));
        }
        Ok(Rational::new(numer, denom))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reduces_to_lowest_terms() {
        let r = Rational::new(6, -4);
        assert_eq!(r.numer(), -3);
        assert_eq!(r.denom(), 2);
        assert_eq!(r.to_string(), "-3/2");
    }

    #[test]
    fn integers_print_with_unit_denominator() {
        assert_eq!(Rational::from_integer(3).to_string(), "3/1");
        assert_eq!(Rational::average_degree(6, 4).to_string(), "3/1");
    }

    #[test]
    fn parses_both_forms() {
        assert_eq!("10/3".parse::<Rational>().unwrap(), Rational::new(10, 3));
        assert_eq!("4".parse::<Rational>().unwrap(), Rational::from_integer(4));
        assert_eq!(" 2/4 ".parse::<Rational>().unwrap(), Rational::new(1, 2));
        assert!(matches!(
            "1/0".parse::<Rational>(),
            Err(ParseRationalError::ZeroDenominator(_))
        ));
        assert!(matches!(
            "x/2".parse::<Rational>(),
            Err(ParseRationalError::BadInteger(_))
        ));
    }

    #[test]
    fn floor_and_ceil() {
        let r = Rational::new(10, 3);
        assert_eq!(r.floor(), 3);
        assert_eq!(r.ceil(), 4);
        assert_eq!(Rational::from_integer(3).ceil(), 3);
    }

    #[test]
    fn serde_uses_strings() {
        let json = serde_json::to_string(&Rational::new(16, 3)).unwrap();
        assert_eq!(json, "\"16/3\"");
        let back: Rational = serde_json::from_str(&json).unwrap();
        assert_eq!(back, Rational::new(16, 3));
    }

    proptest! {
        #[test]
        fn display_parse_round_trip(n in -1000i64..1000, d in 1i64..1000) {
            let r = Rational::new(n, d);
            prop_assert_eq!(r.to_string().parse::<Rational>().unwrap(), r);
        }

        #[test]
        fn order_matches_cross_multiplication(a in -50i64..50, b in 1i64..50, c in -50i64..50, e in 1i64..50) {
            let lhs = Rational::new(a, b);
            let rhs = Rational::new(c, e);
            prop_assert_eq!(lhs.cmp(&rhs), (a * e).cmp(&(c * b)));
        }
    }
}
