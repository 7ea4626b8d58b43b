//! Identity checking and regularity classification of a single table.

use serde::Serialize;

use crate::magma::CayleyTable;

/// Outcome of checking one universally quantified identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawCheck {
    pub holds: bool,
    /// First violating tuple in lexicographic order.
    pub violation: Option<Vec<usize>>,
}

impl LawCheck {
    fn from_violation(violation: Option<Vec<usize>>) -> Self {
        LawCheck {
            holds: violation.is_none(),
            violation,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawReport {
    /// `(ab)c = (cb)a`
    pub left_invertive: LawCheck,
    /// `(ab)(cd) = (ac)(bd)`
    pub medial: LawCheck,
    /// `(ab)(cd) = (db)(ca)`
    pub paramedial: LawCheck,
    /// `a(bc) = b(ac)`
    pub extended: LawCheck,
    /// Every `e` with `e·a = a` for all `a`.
    pub left_identities: Vec<usize>,
    /// Paramedial and extended laws are only guaranteed for LA-semigroups
    /// with a left identity; they are reported regardless.
    pub identity_laws_guaranteed: bool,
}

impl LawReport {
    pub fn is_la_semigroup(&self) -> bool {
        self.left_invertive.holds
    }
}

fn first_triple(n: usize, pred: impl Fn(usize, usize, usize) -> bool) -> Option<Vec<usize>> {
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if !pred(a, b, c) {
                    return Some(vec![a, b, c]);
                }
            }
        }
    }
    None
}

fn first_quad(n: usize, pred: impl Fn(usize, usize, usize, usize) -> bool) -> Option<Vec<usize>> {
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    if !pred(a, b, c, d) {
                        return Some(vec![a, b, c, d]);
                    }
                }
            }
        }
    }
    None
}

/// First triple violating the left invertive law, if any.
pub fn left_invertive_violation(t: &CayleyTable) -> Option<(usize, usize, usize)> {
    let m = |x, y| t.mul(x, y);
    first_triple(t.order(), |a, b, c| m(m(a, b), c) == m(m(c, b), a)).map(|v| (v[0], v[1], v[2]))
}

pub fn is_la_semigroup(t: &CayleyTable) -> bool {
    left_invertive_violation(t).is_none()
}

pub fn left_identities(t: &CayleyTable) -> Vec<usize> {
    t.elements().filter(|&e| t.elements().all(|a| t.mul(e, a) == a)).collect()
}

pub fn check_laws(t: &CayleyTable) -> LawReport {
    let n = t.order();
    let m = |x, y| t.mul(x, y);
    let left_invertive = LawCheck::from_violation(first_triple(n, |a, b, c| m(m(a, b), c) == m(m(c, b), a)));
    let medial = LawCheck::from_violation(first_quad(n, |a, b, c, d| m(m(a, b), m(c, d)) == m(m(a, c), m(b, d))));
    let paramedial =
        LawCheck::from_violation(first_quad(n, |a, b, c, d| m(m(a, b), m(c, d)) == m(m(d, b), m(c, a))));
    let extended = LawCheck::from_violation(first_triple(n, |a, b, c| m(a, m(b, c)) == m(b, m(a, c))));
    let left_identities = left_identities(t);
    let identity_laws_guaranteed = left_invertive.holds && !left_identities.is_empty();
    LawReport {
        left_invertive,
        medial,
        paramedial,
        extended,
        left_identities,
        identity_laws_guaranteed,
    }
}

/// Per-element solvability of `a = (ax)a`, `a = (x·a²)y` and `a = (ax)(ay)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegularityReport {
    pub regular: bool,
    pub regular_witnesses: Vec<Option<usize>>,
    pub intra_regular: bool,
    pub intra_witnesses: Vec<Option<(usize, usize)>>,
    pub weakly_regular: bool,
    pub weak_witnesses: Vec<Option<(usize, usize)>>,
}

pub fn regular_witness(t: &CayleyTable, a: usize) -> Option<usize> {
    t.elements().find(|&x| t.mul(t.mul(a, x), a) == a)
}

pub fn intra_witness(t: &CayleyTable, a: usize) -> Option<(usize, usize)> {
    let sq = t.mul(a, a);
    for x in t.elements() {
        let xa2 = t.mul(x, sq);
        for y in t.elements() {
            if t.mul(xa2, y) == a {
                return Some((x, y));
            }
        }
    }
    None
}

pub fn weak_witness(t: &CayleyTable, s: usize) -> Option<(usize, usize)> {
    for x in t.elements() {
        let sx = t.mul(s, x);
        for y in t.elements() {
            if t.mul(sx, t.mul(s, y)) == s {
                return Some((x, y));
            }
        }
    }
    None
}

pub fn is_regular(t: &CayleyTable) -> bool {
    t.elements().all(|a| regular_witness(t, a).is_some())
}

pub fn is_intra_regular(t: &CayleyTable) -> bool {
    t.elements().all(|a| intra_witness(t, a).is_some())
}

pub fn is_weakly_regular(t: &CayleyTable) -> bool {
    t.elements().all(|a| weak_witness(t, a).is_some())
}

pub fn regularity(t: &CayleyTable) -> RegularityReport {
    let regular_witnesses: Vec<_> = t.elements().map(|a| regular_witness(t, a)).collect();
    let intra_witnesses: Vec<_> = t.elements().map(|a| intra_witness(t, a)).collect();
    let weak_witnesses: Vec<_> = t.elements().map(|a| weak_witness(t, a)).collect();
    RegularityReport {
        regular: regular_witnesses.iter().all(Option::is_some),
        regular_witnesses,
        intra_regular: intra_witnesses.iter().all(Option::is_some),
        intra_witnesses,
        weakly_regular: weak_witnesses.iter().all(Option::is_some),
        weak_witnesses,
    }
}
