//! Exact rationals and edge-indexed rational vectors.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Sub};
use std::str::FromStr;

use num::bigint::BigInt;
use num::{BigRational, One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::EdgeSet;

/// Arbitrary precision rational, always kept in lowest terms.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `p/q`, an integer, or a finite decimal such as `-0.25`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::Document(format!("not a rational number: {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.trim_start().starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        if !whole_digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = format!("{}{}", if whole_digits.is_empty() { "0" } else { whole_digits }, frac);
        let mut numer = BigInt::from_str(&digits).map_err(|_| bad())?;
        if negative {
            numer = -numer;
        }
        let denom = num::pow(BigInt::from(10), frac.len());
        return Ok(Rational::new(numer, denom));
    }
    BigInt::from_str(s).map(Rational::from_integer).map_err(|_| bad())
}

/// `p` for integers, `p/q` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Exact decimal rendering when the denominator has only factors 2 and 5.
pub fn exact_decimal(r: &Rational) -> Option<String> {
    if r.is_integer() {
        return Some(r.numer().to_string());
    }
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    let mut den = r.denom().clone();
    let (mut twos, mut fives) = (0usize, 0usize);
    while (&den % &two).is_zero() {
        den /= &two;
        twos += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        fives += 1;
    }
    if !den.is_one() {
        return None;
    }
    let places = twos.max(fives);
    let scaled = r * Rational::from_integer(num::pow(BigInt::from(10), places));
    debug_assert!(scaled.is_integer());
    let digits = scaled.numer().abs().to_string();
    let digits = format!("{:0>width$}", digits, width = places + 1);
    let (whole, frac) = digits.split_at(digits.len() - places);
    let sign = if r.is_negative() { "-" } else { "" };
    Some(format!("{sign}{whole}.{frac}"))
}

pub(crate) mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let raw = RationalRepr::deserialize(d)?;
        raw.into_rational().map_err(serde::de::Error::custom)
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    pub(crate) enum RationalRepr {
        Text(String),
        Int(i64),
    }

    impl RationalRepr {
        pub(crate) fn into_rational(self) -> Result<Rational> {
            match self {
                RationalRepr::Text(t) => parse_rational(&t),
                RationalRepr::Int(i) => Ok(int(i)),
            }
        }
    }
}

/// Dense exact vector indexed by edge id.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QPoint(Vec<Rational>);

impl QPoint {
    pub fn zeros(dim: usize) -> Self {
        QPoint(vec![Rational::zero(); dim])
    }

    pub fn new(coords: Vec<Rational>) -> Self {
        QPoint(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        QPoint(coords.iter().map(|&c| int(c)).collect())
    }

    /// Characteristic vector of an edge set.
    pub fn indicator(dim: usize, edges: &EdgeSet) -> Self {
        let mut p = QPoint::zeros(dim);
        for e in edges.iter() {
            p.0[e] = Rational::one();
        }
        p
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = &Rational> {
        self.0.iter()
    }

    /// Edges whose coordinate equals `value` (the support at level `value`).
    pub fn support_at(&self, value: &Rational) -> EdgeSet {
        EdgeSet::from_sorted(
            self.0
                .iter()
                .enumerate()
                .filter(|(_, c)| *c == value)
                .map(|(e, _)| e)
                .collect(),
        )
    }

    /// Edges with a nonzero coordinate.
    pub fn nonzero_support(&self) -> EdgeSet {
        EdgeSet::from_sorted(
            self.0
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(e, _)| e)
                .collect(),
        )
    }

    pub fn sum_over(&self, edges: &EdgeSet) -> Rational {
        edges.iter().fold(Rational::zero(), |acc, e| acc + &self.0[e])
    }

    pub fn total(&self) -> Rational {
        self.0.iter().fold(Rational::zero(), |acc, c| acc + c)
    }

    pub fn dot(&self, other: &QPoint) -> Rational {
        self.0
            .iter()
            .zip(&other.0)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn scale(&self, factor: &Rational) -> QPoint {
        QPoint(self.0.iter().map(|c| c * factor).collect())
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|c| !c.is_negative())
    }

    pub fn check_dim(&self, expected: usize) -> Result<()> {
        if self.dim() == expected {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected,
                found: self.dim(),
            })
        }
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(format_rational).collect()
    }

    pub fn from_strings<S: AsRef<str>>(items: &[S]) -> Result<Self> {
        items
            .iter()
            .map(|s| parse_rational(s.as_ref()))
            .collect::<Result<Vec<_>>>()
            .map(QPoint)
    }
}

impl Index<usize> for QPoint {
    type Output = Rational;
    fn index(&self, e: usize) -> &Rational {
        &self.0[e]
    }
}

impl IndexMut<usize> for QPoint {
    fn index_mut(&mut self, e: usize) -> &mut Rational {
        &mut self.0[e]
    }
}

impl Add for &QPoint {
    type Output = QPoint;
    fn add(self, rhs: &QPoint) -> QPoint {
        assert_eq!(self.dim(), rhs.dim(), "point dimension mismatch");
        QPoint(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &QPoint {
    type Output = QPoint;
    fn sub(self, rhs: &QPoint) -> QPoint {
        assert_eq!(self.dim(), rhs.dim(), "point dimension mismatch");
        QPoint(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for QPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.to_strings().join(", "))
    }
}

impl Serialize for QPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for QPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<serde_rational::RationalRepr>::deserialize(d)?;
        raw.into_iter()
            .map(|r| r.into_rational())
            .collect::<Result<Vec<_>>>()
            .map(QPoint)
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fraction_integer_and_decimal() {
        assert_eq!(parse_rational("3/6").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("-7").unwrap(), int(-7));
        assert_eq!(parse_rational("0.25").unwrap(), ratio(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), ratio(-3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.").is_err());
    }

    #[test]
    fn decimal_rendering_only_when_exact() {
        assert_eq!(exact_decimal(&ratio(1, 4)).as_deref(), Some("0.25"));
        assert_eq!(exact_decimal(&ratio(-3, 2)).as_deref(), Some("-1.5"));
        assert_eq!(exact_decimal(&ratio(1, 80)).as_deref(), Some("0.0125"));
        assert_eq!(exact_decimal(&int(12)).as_deref(), Some("12"));
        assert_eq!(exact_decimal(&ratio(2, 3)), None);
    }

    #[test]
    fn support_levels() {
        let p = QPoint::new(vec![int(1), ratio(1, 2), int(0), int(1)]);
        assert_eq!(p.support_at(&int(1)).to_vec(), vec![0, 3]);
        assert_eq!(p.support_at(&int(0)).to_vec(), vec![2]);
        assert_eq!(p.nonzero_support().to_vec(), vec![0, 1, 3]);
        assert_eq!(p.total(), ratio(5, 2));
    }

    #[test]
    fn json_uses_exact_strings() {
        let p = QPoint::new(vec![ratio(2, 3), int(1)]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"["2/3","1"]"#);
        let back: QPoint = serde_json::from_str(r#"["2/3", 1]"#).unwrap();
        assert_eq!(back, p);
    }
}
