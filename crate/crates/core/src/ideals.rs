//! Classification of fuzzy subsets as `(∈_γ, ∈_γ∨q_δ)`-fuzzy ideals.
//!
//! Two deciders are provided for each [`IdealKind`]:
//!
//! * [`check_inequality_form`] evaluates the clamped inequalities, e.g.
//!   `μ(ab) ∨ γ ≥ μ(a) ∧ μ(b) ∧ δ` for LA-subsemigroups;
//! * [`check_point_form`] decides the fuzzy-point implication itself. For a
//!   fixed choice of elements the thresholds `t` that break the implication
//!   form the interval `(max(γ, v), min(m, 2δ − v)]`, where `m` bounds the
//!   antecedent points and `v` is the grade of the consequent element, so the
//!   universally quantified statement is decided exactly.
//!
//! The two are meant to agree; keeping both catches regressions in either.

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fuzzy::{point_relation, FuzzySubset};
use crate::grade::{Grade, Thresholds};
use crate::magma::CayleyTable;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("carrier mismatch: table has order {table}, fuzzy subset has {subset}")]
    CarrierMismatch { table: usize, subset: usize },
    #[error("unknown ideal kind {0:?}")]
    UnknownKind(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum IdealKind {
    #[serde(rename = "la-subsemigroup")]
    LaSubsemigroup,
    #[serde(rename = "left-ideal")]
    LeftIdeal,
    #[serde(rename = "right-ideal")]
    RightIdeal,
    #[serde(rename = "two-sided-ideal")]
    TwoSidedIdeal,
    #[serde(rename = "generalized-bi-ideal")]
    GeneralizedBiIdeal,
    #[serde(rename = "bi-ideal")]
    BiIdeal,
    #[serde(rename = "interior-ideal")]
    InteriorIdeal,
    #[serde(rename = "quasi-ideal")]
    QuasiIdeal,
}

impl IdealKind {
    pub const ALL: [IdealKind; 8] = [
        IdealKind::LaSubsemigroup,
        IdealKind::LeftIdeal,
        IdealKind::RightIdeal,
        IdealKind::TwoSidedIdeal,
        IdealKind::GeneralizedBiIdeal,
        IdealKind::BiIdeal,
        IdealKind::InteriorIdeal,
        IdealKind::QuasiIdeal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdealKind::LaSubsemigroup => "la-subsemigroup",
            IdealKind::LeftIdeal => "left-ideal",
            IdealKind::RightIdeal => "right-ideal",
            IdealKind::TwoSidedIdeal => "two-sided-ideal",
            IdealKind::GeneralizedBiIdeal => "generalized-bi-ideal",
            IdealKind::BiIdeal => "bi-ideal",
            IdealKind::InteriorIdeal => "interior-ideal",
            IdealKind::QuasiIdeal => "quasi-ideal",
        }
    }

    fn conditions(self) -> &'static [Condition] {
        use Condition::*;
        match self {
            IdealKind::LaSubsemigroup => &[Closed],
            IdealKind::LeftIdeal => &[AbsorbLeft],
            IdealKind::RightIdeal => &[AbsorbRight],
            IdealKind::TwoSidedIdeal => &[AbsorbLeft, AbsorbRight],
            IdealKind::GeneralizedBiIdeal => &[Sandwich],
            IdealKind::BiIdeal => &[Closed, Sandwich],
            IdealKind::InteriorIdeal => &[Closed, Interior],
            IdealKind::QuasiIdeal => &[Quasi],
        }
    }
}

impl fmt::Display for IdealKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdealKind {
    type Err = ClassifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        IdealKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| ClassifyError::UnknownKind(s.to_string()))
    }
}

/// The atomic quantified conditions the kinds are built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Condition {
    /// `∀a,b`: consequent `ab`, antecedent `μ(a) ∧ μ(b)`.
    Closed,
    /// `∀a,b`: consequent `ab`, antecedent `μ(b)`.
    AbsorbLeft,
    /// `∀a,b`: consequent `ab`, antecedent `μ(a)`.
    AbsorbRight,
    /// `∀a,s,b`: consequent `(as)b`, antecedent `μ(a) ∧ μ(b)`.
    Sandwich,
    /// `∀a,c,b`: consequent `(ac)b`, antecedent `μ(c)`.
    Interior,
    /// `∀x`: consequent `x`, antecedent `(μ∘1)(x) ∧ (1∘μ)(x)`.
    Quasi,
}

/// `(μ∘1)(x)` and `(1∘μ)(x)` for every `x`.
fn one_products(t: &CayleyTable, mu: &FuzzySubset) -> (Vec<Grade>, Vec<Grade>) {
    let n = t.order();
    let mut left = vec![Grade::ZERO; n];
    let mut right = vec![Grade::ZERO; n];
    for y in 0..n {
        for z in 0..n {
            let x = t.mul(y, z);
            left[x] = left[x].max(mu.at(y));
            right[x] = right[x].max(mu.at(z));
        }
    }
    (left, right)
}

/// Visits `(elements, antecedent bound, consequent element)` for one condition
/// in lexicographic element order. The visitor returns `false` to stop early.
fn visit_instances(
    cond: Condition,
    t: &CayleyTable,
    mu: &FuzzySubset,
    mut f: impl FnMut(&[usize], Grade, usize) -> bool,
) {
    let n = t.order();
    match cond {
        Condition::Closed | Condition::AbsorbLeft | Condition::AbsorbRight => {
            for a in 0..n {
                for b in 0..n {
                    let m = match cond {
                        Condition::Closed => mu.at(a).min(mu.at(b)),
                        Condition::AbsorbLeft => mu.at(b),
                        _ => mu.at(a),
                    };
                    if !f(&[a, b], m, t.mul(a, b)) {
                        return;
                    }
                }
            }
        }
        Condition::Sandwich | Condition::Interior => {
            for a in 0..n {
                for s in 0..n {
                    let as_ = t.mul(a, s);
                    for b in 0..n {
                        let m = if cond == Condition::Sandwich {
                            mu.at(a).min(mu.at(b))
                        } else {
                            mu.at(s)
                        };
                        if !f(&[a, s, b], m, t.mul(as_, b)) {
                            return;
                        }
                    }
                }
            }
        }
        Condition::Quasi => {
            let (left, right) = one_products(t, mu);
            for x in 0..n {
                if !f(&[x], left[x].min(right[x]), x) {
                    return;
                }
            }
        }
    }
}

fn check_carrier(t: &CayleyTable, mu: &FuzzySubset) -> Result<(), ClassifyError> {
    if t.order() != mu.order() {
        return Err(ClassifyError::CarrierMismatch {
            table: t.order(),
            subset: mu.order(),
        });
    }
    Ok(())
}

/// A failing instance of the inequality form: `lhs < rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzyViolation {
    pub elements: Vec<usize>,
    /// The clamped consequent, e.g. `μ(ab) ∨ γ`.
    pub lhs: Grade,
    /// The clamped antecedent, e.g. `μ(a) ∧ μ(b) ∧ δ`.
    pub rhs: Grade,
}

/// Verdict for one kind. `violations` holds at most the first violation in
/// lexicographic element order; `count` is the total number of violations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KindVerdict {
    pub kind: IdealKind,
    pub verdict: bool,
    pub violations: Vec<FuzzyViolation>,
    pub count: usize,
}

impl KindVerdict {
    pub fn first_violation(&self) -> Option<&FuzzyViolation> {
        self.violations.first()
    }
}

pub fn check_inequality_form(
    kind: IdealKind,
    t: &CayleyTable,
    mu: &FuzzySubset,
    th: &Thresholds,
) -> Result<KindVerdict, ClassifyError> {
    check_carrier(t, mu)?;
    let mut all = Vec::new();
    for &cond in kind.conditions() {
        visit_instances(cond, t, mu, |elements, m, x| {
            let lhs = mu.at(x).max(th.gamma());
            let rhs = m.min(th.delta());
            if lhs < rhs {
                all.push(FuzzyViolation {
                    elements: elements.to_vec(),
                    lhs,
                    rhs,
                });
            }
            true
        });
    }
    let count = all.len();
    let first = all.into_iter().min_by(|a, b| a.elements.cmp(&b.elements));
    Ok(KindVerdict {
        kind,
        verdict: count == 0,
        violations: first.into_iter().collect(),
        count,
    })
}

/// Short-circuiting inequality-form test without carrier checks or reports.
pub fn passes(kind: IdealKind, t: &CayleyTable, mu: &FuzzySubset, th: &Thresholds) -> bool {
    kind.conditions().iter().all(|&cond| {
        let mut ok = true;
        visit_instances(cond, t, mu, |_, m, x| {
            ok = mu.at(x).max(th.gamma()) >= m.min(th.delta());
            ok
        });
        ok
    })
}

/// Does `v` re-evaluate to a genuine violation of `kind` for `μ`?
pub fn recheck_violation(
    kind: IdealKind,
    t: &CayleyTable,
    mu: &FuzzySubset,
    th: &Thresholds,
    v: &FuzzyViolation,
) -> bool {
    if v.lhs >= v.rhs {
        return false;
    }
    kind.conditions().iter().any(|&cond| {
        let mut found = false;
        visit_instances(cond, t, mu, |elements, m, x| {
            if elements == v.elements.as_slice() {
                found = mu.at(x).max(th.gamma()) == v.lhs && m.min(th.delta()) == v.rhs;
            }
            !found
        });
        found
    })
}

/// A failing instance of the fuzzy-point implication together with a
/// threshold `t` for which antecedent points belong but the consequent
/// point is neither `∈_γ` nor `q_δ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointViolation {
    pub elements: Vec<usize>,
    pub witness: Grade,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointVerdict {
    pub kind: IdealKind,
    pub verdict: bool,
    pub first: Option<PointViolation>,
    pub count: usize,
}

/// Antecedent fuzzy points of one instantiation: `(subset, element)` pairs
/// that must all satisfy `x_t ∈_γ`.
struct PointInstance<'a> {
    elements: Vec<usize>,
    antecedents: Vec<(&'a FuzzySubset, usize)>,
    consequent: usize,
}

fn point_instances<'a>(
    cond: Condition,
    t: &CayleyTable,
    mu: &'a FuzzySubset,
    ones: &'a (FuzzySubset, FuzzySubset),
) -> Vec<PointInstance<'a>> {
    let n = t.order();
    let mut out = Vec::new();
    match cond {
        Condition::Closed | Condition::AbsorbLeft | Condition::AbsorbRight => {
            for a in 0..n {
                for b in 0..n {
                    let antecedents = match cond {
                        Condition::Closed => vec![(mu, a), (mu, b)],
                        Condition::AbsorbLeft => vec![(mu, b)],
                        _ => vec![(mu, a)],
                    };
                    out.push(PointInstance {
                        elements: vec![a, b],
                        antecedents,
                        consequent: t.mul(a, b),
                    });
                }
            }
        }
        Condition::Sandwich | Condition::Interior => {
            for a in 0..n {
                for s in 0..n {
                    for b in 0..n {
                        let antecedents = if cond == Condition::Sandwich {
                            vec![(mu, a), (mu, b)]
                        } else {
                            vec![(mu, s)]
                        };
                        out.push(PointInstance {
                            elements: vec![a, s, b],
                            antecedents,
                            consequent: t.mul(t.mul(a, s), b),
                        });
                    }
                }
            }
        }
        Condition::Quasi => {
            for x in 0..n {
                out.push(PointInstance {
                    elements: vec![x],
                    antecedents: vec![(&ones.0, x), (&ones.1, x)],
                    consequent: x,
                });
            }
        }
    }
    out
}

/// Decides the fuzzy-point definition of `kind` exactly.
pub fn check_point_form(
    kind: IdealKind,
    t: &CayleyTable,
    mu: &FuzzySubset,
    th: &Thresholds,
) -> Result<PointVerdict, ClassifyError> {
    check_carrier(t, mu)?;
    let (l, r) = one_products(t, mu);
    let ones = (FuzzySubset::new(l), FuzzySubset::new(r));
    let gamma = th.gamma().to_rational();
    let two_delta = th.delta().to_rational() * Rational64::from_integer(2);
    let mut failures: Vec<PointViolation> = Vec::new();
    for &cond in kind.conditions() {
        for inst in point_instances(cond, t, mu, &ones) {
            // Points x_t with t ∈ (γ, 1] belong to a subset iff t ≤ its grade,
            // and t ∧ r sweeps (γ, min grade], so the antecedent bound is the
            // smallest antecedent grade.
            let bound = inst
                .antecedents
                .iter()
                .map(|(s, x)| s.at(*x).to_rational())
                .min()
                .expect("at least one antecedent");
            let v = mu.at(inst.consequent).to_rational();
            // The consequent fails iff t > v (not ∈_γ) and v + t ≤ 2δ (not q_δ).
            let lo = gamma.max(v);
            let hi = bound.min(two_delta - v);
            if lo >= hi {
                continue;
            }
            let witness = Grade::from_rational((lo + hi) / Rational64::from_integer(2))
                .expect("witness lies in (γ, 1]");
            debug_assert!(inst
                .antecedents
                .iter()
                .all(|(s, x)| point_relation(s, *x, witness, th).in_gamma));
            debug_assert!(point_relation(mu, inst.consequent, witness, th).not_in_or_q);
            failures.push(PointViolation {
                elements: inst.elements,
                witness,
            });
        }
    }
    let count = failures.len();
    let first = failures.into_iter().min_by(|a, b| a.elements.cmp(&b.elements));
    Ok(PointVerdict {
        kind,
        verdict: count == 0,
        first,
        count,
    })
}

/// Is `w` a genuine point-form failure for `μ`? Checked with the fuzzy-point
/// relations directly.
pub fn recheck_point_violation(
    kind: IdealKind,
    t: &CayleyTable,
    mu: &FuzzySubset,
    th: &Thresholds,
    w: &PointViolation,
) -> bool {
    if w.witness <= th.gamma() {
        return false;
    }
    let (l, r) = one_products(t, mu);
    let ones = (FuzzySubset::new(l), FuzzySubset::new(r));
    kind.conditions().iter().any(|&cond| {
        point_instances(cond, t, mu, &ones).into_iter().any(|inst| {
            inst.elements == w.elements
                && inst
                    .antecedents
                    .iter()
                    .all(|(s, x)| point_relation(s, *x, w.witness, th).in_gamma)
                && point_relation(mu, inst.consequent, w.witness, th).not_in_or_q
        })
    })
}

/// Inequality-form verdicts for every kind, in [`IdealKind::ALL`] order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzyClassReport {
    pub thresholds: Thresholds,
    pub kinds: Vec<KindVerdict>,
}

impl FuzzyClassReport {
    pub fn get(&self, kind: IdealKind) -> &KindVerdict {
        self.kinds.iter().find(|k| k.kind == kind).expect("all kinds present")
    }

    pub fn holds(&self, kind: IdealKind) -> bool {
        self.get(kind).verdict
    }
}

pub fn classify_fuzzy(t: &CayleyTable, mu: &FuzzySubset, th: &Thresholds) -> Result<FuzzyClassReport, ClassifyError> {
    let kinds = IdealKind::ALL
        .iter()
        .map(|&k| check_inequality_form(k, t, mu, th))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FuzzyClassReport {
        thresholds: *th,
        kinds,
    })
}

/// The classical fuzzy notions (no thresholds).
pub mod classical {
    use super::*;

    /// `μ(xy) ≥ μ(x) ∧ μ(y)`
    pub fn is_subsemigroup(t: &CayleyTable, mu: &FuzzySubset) -> bool {
        t.elements()
            .all(|x| t.elements().all(|y| mu.at(t.mul(x, y)) >= mu.at(x).min(mu.at(y))))
    }

    /// `μ(xy) ≥ μ(y)`
    pub fn is_left_ideal(t: &CayleyTable, mu: &FuzzySubset) -> bool {
        t.elements().all(|x| t.elements().all(|y| mu.at(t.mul(x, y)) >= mu.at(y)))
    }

    /// `μ(xy) ≥ μ(x)`
    pub fn is_right_ideal(t: &CayleyTable, mu: &FuzzySubset) -> bool {
        t.elements().all(|x| t.elements().all(|y| mu.at(t.mul(x, y)) >= mu.at(x)))
    }

    /// `μ((xy)z) ≥ μ(x) ∧ μ(z)`
    pub fn is_generalized_bi_ideal(t: &CayleyTable, mu: &FuzzySubset) -> bool {
        t.elements().all(|x| {
            t.elements().all(|y| {
                t.elements()
                    .all(|z| mu.at(t.mul(t.mul(x, y), z)) >= mu.at(x).min(mu.at(z)))
            })
        })
    }

    pub fn is_bi_ideal(t: &CayleyTable, mu: &FuzzySubset) -> bool {
        is_subsemigroup(t, mu) && is_generalized_bi_ideal(t, mu)
    }

    /// The classical predicate matching `kind`, where one exists.
    pub fn predicate(kind: IdealKind) -> Option<fn(&CayleyTable, &FuzzySubset) -> bool> {
        match kind {
            IdealKind::LaSubsemigroup => Some(is_subsemigroup),
            IdealKind::LeftIdeal => Some(is_left_ideal),
            IdealKind::RightIdeal => Some(is_right_ideal),
            IdealKind::TwoSidedIdeal => Some(|t, mu| is_left_ideal(t, mu) && is_right_ideal(t, mu)),
            IdealKind::GeneralizedBiIdeal => Some(is_generalized_bi_ideal),
            IdealKind::BiIdeal => Some(is_bi_ideal),
            IdealKind::InteriorIdeal | IdealKind::QuasiIdeal => None,
        }
    }
}
