//! Exact membership grades and the `(γ, δ)` threshold pair.
//!
//! Every grade is a rational in `[0, 1]` kept in lowest terms. Comparison is
//! by cross-multiplication, so no operation in this crate ever rounds.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradeError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("grade {0} lies outside [0, 1]")]
    OutOfRange(String),
    #[error("cannot parse {0:?} as an exact fraction or terminating decimal")]
    Parse(String),
    #[error("thresholds need gamma < delta, got gamma={gamma}, delta={delta}")]
    Thresholds { gamma: Grade, delta: Grade },
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// A membership value `num/den` with `0 <= num <= den`, in lowest terms.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Grade {
    num: u64,
    den: u64,
}

impl Grade {
    pub const ZERO: Grade = Grade { num: 0, den: 1 };
    pub const ONE: Grade = Grade { num: 1, den: 1 };

    pub fn new(num: u64, den: u64) -> Result<Self, GradeError> {
        if den == 0 {
            return Err(GradeError::ZeroDenominator);
        }
        if num > den {
            return Err(GradeError::OutOfRange(format!("{num}/{den}")));
        }
        let g = gcd(num, den).max(1);
        Ok(Grade {
            num: num / g,
            den: den / g,
        })
    }

    pub fn numer(self) -> u64 {
        self.num
    }

    pub fn denom(self) -> u64 {
        self.den
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    pub fn to_rational(self) -> Rational64 {
        Rational64::new(self.num as i64, self.den as i64)
    }

    pub fn from_rational(r: Rational64) -> Result<Self, GradeError> {
        if *r.numer() < 0 || r.numer() > r.denom() {
            return Err(GradeError::OutOfRange(r.to_string()));
        }
        Grade::new(*r.numer() as u64, *r.denom() as u64)
    }

    /// `(self ∨ lo) ∧ hi`.
    #[inline]
    pub fn clamp_to(self, lo: Grade, hi: Grade) -> Grade {
        self.max(lo).min(hi)
    }
}

impl Ord for Grade {
    #[inline]
    fn cmp(&self, other: &Self) -> Ordering {
        if self.den == other.den {
            return self.num.cmp(&other.num);
        }
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl PartialOrd for Grade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `p/q`, an integer, or a terminating decimal such as `0.25`.
pub fn parse_rational(s: &str) -> Result<Rational64, GradeError> {
    let err = || GradeError::Parse(s.to_string());
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: i64 = p.trim().parse().map_err(|_| err())?;
        let q: i64 = q.trim().parse().map_err(|_| err())?;
        if q == 0 {
            return Err(GradeError::ZeroDenominator);
        }
        return Ok(Rational64::new(p, q));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    if !int_part.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return Err(err());
    }
    if frac_part.len() > 15 {
        return Err(err());
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: i64 = if digits.is_empty() { 0 } else { digits.parse().map_err(|_| err())? };
    let denom = 10i64.pow(frac_part.len() as u32);
    let r = Rational64::new(numer, denom);
    Ok(if neg { -r } else { r })
}

impl FromStr for Grade {
    type Err = GradeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Grade::from_rational(parse_rational(s)?)
    }
}

impl Serialize for Grade {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&format!("{}/{}", self.num, self.den))
    }
}

impl<'de> Deserialize<'de> for Grade {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The pair `(γ, δ)` with `0 <= γ < δ <= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Thresholds {
    gamma: Grade,
    delta: Grade,
}

impl Thresholds {
    pub fn new(gamma: Grade, delta: Grade) -> Result<Self, GradeError> {
        if gamma >= delta {
            return Err(GradeError::Thresholds { gamma, delta });
        }
        Ok(Thresholds { gamma, delta })
    }

    /// `γ = 0, δ = 1`: the thresholds under which the generalized notions
    /// collapse to the classical fuzzy ones.
    pub fn classical() -> Self {
        Thresholds {
            gamma: Grade::ZERO,
            delta: Grade::ONE,
        }
    }

    pub fn gamma(&self) -> Grade {
        self.gamma
    }

    pub fn delta(&self) -> Grade {
        self.delta
    }

    /// `(g ∨ γ) ∧ δ`
    #[inline]
    pub fn clamp(&self, g: Grade) -> Grade {
        g.clamp_to(self.gamma, self.delta)
    }

    /// All pairs `γ < δ` drawn from `{0, 1/d, …, 1}`, ordered by `γ` then `δ`.
    pub fn grid(den: u64) -> Vec<Thresholds> {
        let mut out = Vec::new();
        for g in 0..=den {
            for d in (g + 1)..=den {
                out.push(Thresholds {
                    gamma: Grade::new(g, den).expect("grid point"),
                    delta: Grade::new(d, den).expect("grid point"),
                });
            }
        }
        out
    }
}

impl<'de> Deserialize<'de> for Thresholds {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            gamma: Grade,
            delta: Grade,
        }
        let raw = Raw::deserialize(deserializer)?;
        Thresholds::new(raw.gamma, raw.delta).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Thresholds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(γ={}, δ={})", self.gamma, self.delta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> Grade {
        s.parse().unwrap()
    }

    #[test]
    fn lowest_terms_and_order() {
        assert_eq!(Grade::new(2, 4).unwrap(), Grade::new(1, 2).unwrap());
        assert_eq!(Grade::new(6, 10).unwrap().numer(), 3);
        assert!(g("1/3") < g("0.34"));
        assert!(g("0.3") > g("1/4"));
        assert_eq!(g("0").cmp(&Grade::ZERO), Ordering::Equal);
    }

    #[test]
    fn parsing() {
        assert_eq!(g("0.25"), Grade::new(1, 4).unwrap());
        assert_eq!(g(".5"), Grade::new(1, 2).unwrap());
        assert_eq!(g("1"), Grade::ONE);
        assert_eq!(g(" 3/10 "), Grade::new(3, 10).unwrap());
        assert!("1.5".parse::<Grade>().is_err());
        assert!("-0.1".parse::<Grade>().is_err());
        assert!("abc".parse::<Grade>().is_err());
        assert!("1/0".parse::<Grade>().is_err());
        assert!("0.1e3".parse::<Grade>().is_err());
        assert!(".".parse::<Grade>().is_err());
    }

    #[test]
    fn thresholds_must_be_strict() {
        assert!(Thresholds::new(g("1/2"), g("1/2")).is_err());
        assert!(Thresholds::new(g("0.6"), g("0.2")).is_err());
        let th = Thresholds::new(g("1/5"), g("3/5")).unwrap();
        assert_eq!(th.clamp(g("0.1")), g("1/5"));
        assert_eq!(th.clamp(g("0.9")), g("3/5"));
        assert_eq!(th.clamp(g("0.3")), g("0.3"));
    }

    #[test]
    fn grid_size() {
        // C(d+1, 2) pairs
        assert_eq!(Thresholds::grid(4).len(), 10);
        assert!(Thresholds::grid(4).contains(&Thresholds::classical()));
        assert!(Thresholds::grid(4).contains(&Thresholds::new(Grade::ZERO, g("1/2")).unwrap()));
    }

    #[test]
    fn serde_as_fraction_string() {
        let s = serde_json::to_string(&g("0.3")).unwrap();
        assert_eq!(s, "\"3/10\"");
        let back: Grade = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g("3/10"));
    }
}
