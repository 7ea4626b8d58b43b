//! Fuzzy subsets of a finite carrier and their exact algebra.
//!
//! Besides the pointwise lattice and sup-min composition this module hosts
//! the threshold-clamped ("starred") operators:
//!
//! ```text
//! μ*(x)       = (μ(x) ∨ γ) ∧ δ
//! (μ ∧* ν)(x) = ((μ ∧ ν)(x) ∨ γ) ∧ δ
//! (μ ∨* ν)(x) = ((μ ∨ ν)(x) ∨ γ) ∧ δ
//! (μ ∗ ν)(x)  = ((μ ∘ ν)(x) ∨ γ) ∧ δ
//! ```
//!
//! Composition is neither associative nor commutative here, matching the
//! underlying magma.

use std::fmt;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::crisp::CrispSubset;
use crate::grade::{Grade, GradeError, Thresholds};
use crate::magma::CayleyTable;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FuzzyError {
    #[error("carrier mismatch: expected order {expected}, found {found}")]
    CarrierMismatch { expected: usize, found: usize },
    #[error("level {0} must lie in (0, 1]")]
    ZeroLevel(Grade),
    #[error("{0} needs a second operand")]
    MissingOperand(StarKind),
    #[error("{0} needs a Cayley table")]
    MissingTable(StarKind),
    #[error("fuzzy subset file: {0}")]
    Format(String),
    #[error(transparent)]
    Grade(#[from] GradeError),
}

/// A map from `0..n` to `[0, 1]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FuzzySubset {
    grades: Vec<Grade>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeOp {
    Meet,
    Join,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StarKind {
    Star,
    MeetStar,
    JoinStar,
    ProdStar,
}

impl fmt::Display for StarKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StarKind::Star => "μ*",
            StarKind::MeetStar => "∧*",
            StarKind::JoinStar => "∨*",
            StarKind::ProdStar => "∗",
        })
    }
}

impl FuzzySubset {
    pub fn new(grades: Vec<Grade>) -> Self {
        FuzzySubset { grades }
    }

    /// Grades `nums[i] / den`.
    pub fn from_fractions(den: u64, nums: &[u64]) -> Result<Self, FuzzyError> {
        let grades = nums.iter().map(|&k| Grade::new(k, den)).collect::<Result<_, _>>()?;
        Ok(FuzzySubset { grades })
    }

    pub fn constant(order: usize, c: Grade) -> Self {
        FuzzySubset {
            grades: vec![c; order],
        }
    }

    /// The constant subset `1`.
    pub fn one(order: usize) -> Self {
        Self::constant(order, Grade::ONE)
    }

    /// The characteristic function `χ_A`.
    pub fn characteristic(a: &CrispSubset) -> Self {
        FuzzySubset {
            grades: (0..a.order())
                .map(|x| if a.contains(x) { Grade::ONE } else { Grade::ZERO })
                .collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.grades.len()
    }

    pub fn grades(&self) -> &[Grade] {
        &self.grades
    }

    #[inline]
    pub fn at(&self, x: usize) -> Grade {
        self.grades[x]
    }

    fn same_carrier(&self, other: &FuzzySubset) -> Result<(), FuzzyError> {
        if self.order() != other.order() {
            return Err(FuzzyError::CarrierMismatch {
                expected: self.order(),
                found: other.order(),
            });
        }
        Ok(())
    }

    fn zip_with(&self, other: &FuzzySubset, f: impl Fn(Grade, Grade) -> Grade) -> FuzzySubset {
        FuzzySubset {
            grades: self.grades.iter().zip(&other.grades).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    pub fn meet(&self, other: &FuzzySubset) -> Result<FuzzySubset, FuzzyError> {
        self.same_carrier(other)?;
        Ok(self.zip_with(other, Grade::min))
    }

    pub fn join(&self, other: &FuzzySubset) -> Result<FuzzySubset, FuzzyError> {
        self.same_carrier(other)?;
        Ok(self.zip_with(other, Grade::max))
    }

    /// Pointwise `≤`; carriers must agree.
    pub fn le(&self, other: &FuzzySubset) -> bool {
        self.order() == other.order() && self.grades.iter().zip(&other.grades).all(|(a, b)| a <= b)
    }

    /// First element where `self(x) > other(x)`.
    pub fn first_exceeding(&self, other: &FuzzySubset) -> Option<usize> {
        self.grades.iter().zip(&other.grades).position(|(a, b)| a > b)
    }

    /// `μ*`
    pub fn star(&self, th: &Thresholds) -> FuzzySubset {
        FuzzySubset {
            grades: self.grades.iter().map(|&g| th.clamp(g)).collect(),
        }
    }

    /// `{ x : μ(x) ≥ level }` for `level ∈ (0, 1]`.
    pub fn level_set(&self, level: Grade) -> Result<CrispSubset, FuzzyError> {
        if level.is_zero() {
            return Err(FuzzyError::ZeroLevel(level));
        }
        let xs = (0..self.order()).filter(|&x| self.grades[x] >= level);
        Ok(CrispSubset::from_elements(self.order(), xs).expect("indices in range"))
    }

    /// Support of the subset, `{ x : μ(x) > 0 }`.
    pub fn support(&self) -> CrispSubset {
        CrispSubset::from_elements(self.order(), (0..self.order()).filter(|&x| !self.grades[x].is_zero()))
            .expect("indices in range")
    }

    /// Reads the `{"den": d, "num": [..]}` file format.
    pub fn from_json(text: &str) -> Result<Self, FuzzyError> {
        let raw: FuzzyFile = serde_json::from_str(text).map_err(|e| FuzzyError::Format(e.to_string()))?;
        raw.try_into()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&FuzzyFile::from(self)).expect("serializes")
    }

    pub fn display_with(&self, t: &CayleyTable) -> String {
        let items: Vec<String> = (0..self.order()).map(|x| format!("{}:{}", t.label(x), self.grades[x])).collect();
        format!("({})", items.join(", "))
    }
}

impl fmt::Debug for FuzzySubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.grades.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

#[derive(Serialize, Deserialize)]
struct FuzzyFile {
    den: u64,
    num: Vec<u64>,
}

fn lcm(a: u64, b: u64) -> u64 {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        let r = x % y;
        x = y;
        y = r;
    }
    a / x * b
}

impl From<&FuzzySubset> for FuzzyFile {
    fn from(mu: &FuzzySubset) -> Self {
        let den = mu.grades.iter().fold(1, |acc, g| lcm(acc, g.denom()));
        FuzzyFile {
            den,
            num: mu.grades.iter().map(|g| g.numer() * (den / g.denom())).collect(),
        }
    }
}

impl TryFrom<FuzzyFile> for FuzzySubset {
    type Error = FuzzyError;

    fn try_from(raw: FuzzyFile) -> Result<Self, Self::Error> {
        if raw.den == 0 {
            return Err(FuzzyError::Format("den must be positive".into()));
        }
        if let Some((i, k)) = raw.num.iter().enumerate().find(|(_, &k)| k > raw.den) {
            return Err(FuzzyError::Format(format!("num[{i}] = {k} exceeds den = {}", raw.den)));
        }
        FuzzySubset::from_fractions(raw.den, &raw.num)
    }
}

impl Serialize for FuzzySubset {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        FuzzyFile::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FuzzySubset {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        FuzzyFile::deserialize(deserializer)?
            .try_into()
            .map_err(serde::de::Error::custom)
    }
}

pub fn pointwise_lattice(op: LatticeOp, mu: &FuzzySubset, nu: &FuzzySubset) -> Result<FuzzySubset, FuzzyError> {
    match op {
        LatticeOp::Meet => mu.meet(nu),
        LatticeOp::Join => mu.join(nu),
    }
}

/// Sup-min composition `μ ∘ ν`; elements that are not a product get 0.
pub fn compose(t: &CayleyTable, mu: &FuzzySubset, nu: &FuzzySubset) -> Result<FuzzySubset, FuzzyError> {
    for s in [mu, nu] {
        if s.order() != t.order() {
            return Err(FuzzyError::CarrierMismatch {
                expected: t.order(),
                found: s.order(),
            });
        }
    }
    Ok(compose_unchecked(t, mu, nu))
}

#[inline]
pub(crate) fn compose_unchecked(t: &CayleyTable, mu: &FuzzySubset, nu: &FuzzySubset) -> FuzzySubset {
    let n = t.order();
    let mut out = vec![Grade::ZERO; n];
    for y in 0..n {
        let my = mu.grades[y];
        if my.is_zero() {
            continue;
        }
        for z in 0..n {
            let v = my.min(nu.grades[z]);
            let x = t.mul(y, z);
            if v > out[x] {
                out[x] = v;
            }
        }
    }
    FuzzySubset { grades: out }
}

/// The starred operators. `nu` is required for every kind except
/// [`StarKind::Star`]; `t` only for [`StarKind::ProdStar`].
pub fn star_ops(
    kind: StarKind,
    mu: &FuzzySubset,
    nu: Option<&FuzzySubset>,
    t: Option<&CayleyTable>,
    th: &Thresholds,
) -> Result<FuzzySubset, FuzzyError> {
    let need_nu = || nu.ok_or(FuzzyError::MissingOperand(kind));
    let raw = match kind {
        StarKind::Star => mu.clone(),
        StarKind::MeetStar => mu.meet(need_nu()?)?,
        StarKind::JoinStar => mu.join(need_nu()?)?,
        StarKind::ProdStar => {
            let t = t.ok_or(FuzzyError::MissingTable(kind))?;
            compose(t, mu, need_nu()?)?
        }
    };
    Ok(raw.star(th))
}

/// Shorthands used by the theorem checks; carriers are assumed to agree.
pub(crate) mod ops {
    use super::*;

    #[inline]
    pub fn meet_star(mu: &FuzzySubset, nu: &FuzzySubset, th: &Thresholds) -> FuzzySubset {
        FuzzySubset {
            grades: mu
                .grades
                .iter()
                .zip(&nu.grades)
                .map(|(&a, &b)| th.clamp(a.min(b)))
                .collect(),
        }
    }

    #[inline]
    pub fn join_star(mu: &FuzzySubset, nu: &FuzzySubset, th: &Thresholds) -> FuzzySubset {
        FuzzySubset {
            grades: mu
                .grades
                .iter()
                .zip(&nu.grades)
                .map(|(&a, &b)| th.clamp(a.max(b)))
                .collect(),
        }
    }

    #[inline]
    pub fn prod_star(t: &CayleyTable, mu: &FuzzySubset, nu: &FuzzySubset, th: &Thresholds) -> FuzzySubset {
        let mut p = compose_unchecked(t, mu, nu);
        for g in p.grades.iter_mut() {
            *g = th.clamp(*g);
        }
        p
    }

    #[inline]
    pub fn meet(mu: &FuzzySubset, nu: &FuzzySubset) -> FuzzySubset {
        mu.zip_with(nu, Grade::min)
    }

    #[inline]
    pub fn join(mu: &FuzzySubset, nu: &FuzzySubset) -> FuzzySubset {
        mu.zip_with(nu, Grade::max)
    }
}

/// Relations between a fuzzy point `x_t` and a fuzzy subset `μ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RelationFlags {
    /// `μ(x) ≥ t > γ`
    pub in_gamma: bool,
    /// `μ(x) + t > 2δ`
    pub q_delta: bool,
    pub in_or_q: bool,
    pub not_in_gamma: bool,
    pub not_q_delta: bool,
    /// Negation of `in_or_q`.
    pub not_in_or_q: bool,
}

pub fn point_relation(mu: &FuzzySubset, x: usize, t: Grade, th: &Thresholds) -> RelationFlags {
    let value = mu.at(x);
    let in_gamma = value >= t && t > th.gamma();
    let two_delta = th.delta().to_rational() * Rational64::from_integer(2);
    let q_delta = value.to_rational() + t.to_rational() > two_delta;
    let in_or_q = in_gamma || q_delta;
    RelationFlags {
        in_gamma,
        q_delta,
        in_or_q,
        not_in_gamma: !in_gamma,
        not_q_delta: !q_delta,
        not_in_or_q: !in_or_q,
    }
}
