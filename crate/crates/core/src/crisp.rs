//! Crisp subsets, their products, and the ideal taxonomy.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::magma::{CayleyTable, MAX_ORDER};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CrispError {
    #[error("element {element} is outside a carrier of order {order}")]
    OutOfRange { element: usize, order: usize },
    #[error("carrier mismatch: expected order {expected}, found {found}")]
    CarrierMismatch { expected: usize, found: usize },
    #[error("ideal classification needs a non-empty subset")]
    Empty,
    #[error("carrier order {0} is not supported")]
    Order(usize),
}

/// A subset of `0..order` stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CrispSubset {
    order: usize,
    mask: u64,
}

impl CrispSubset {
    pub fn empty(order: usize) -> Self {
        assert!(order <= MAX_ORDER);
        CrispSubset { order, mask: 0 }
    }

    pub fn full(order: usize) -> Self {
        assert!(order <= MAX_ORDER);
        let mask = if order == 64 { u64::MAX } else { (1u64 << order) - 1 };
        CrispSubset { order, mask }
    }

    pub fn from_mask(order: usize, mask: u64) -> Result<Self, CrispError> {
        if order > MAX_ORDER {
            return Err(CrispError::Order(order));
        }
        let full = CrispSubset::full(order).mask;
        if mask & !full != 0 {
            return Err(CrispError::OutOfRange {
                element: (mask & !full).trailing_zeros() as usize,
                order,
            });
        }
        Ok(CrispSubset { order, mask })
    }

    pub fn from_elements(order: usize, elements: impl IntoIterator<Item = usize>) -> Result<Self, CrispError> {
        if order > MAX_ORDER {
            return Err(CrispError::Order(order));
        }
        let mut mask = 0u64;
        for e in elements {
            if e >= order {
                return Err(CrispError::OutOfRange { element: e, order });
            }
            mask |= 1 << e;
        }
        Ok(CrispSubset { order, mask })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        x < self.order && self.mask >> x & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.order).filter(move |&x| self.contains(x))
    }

    pub fn insert(&mut self, x: usize) {
        assert!(x < self.order);
        self.mask |= 1 << x;
    }

    pub fn is_subset(&self, other: &CrispSubset) -> bool {
        self.mask & !other.mask == 0
    }

    pub fn intersection(&self, other: &CrispSubset) -> CrispSubset {
        CrispSubset {
            order: self.order,
            mask: self.mask & other.mask,
        }
    }

    pub fn union(&self, other: &CrispSubset) -> CrispSubset {
        CrispSubset {
            order: self.order,
            mask: self.mask | other.mask,
        }
    }

    /// All `2^n - 1` non-empty subsets, ordered by mask.
    pub fn all_nonempty(order: usize) -> impl Iterator<Item = CrispSubset> {
        assert!(order < 32, "subset enumeration is for small carriers");
        (1u64..(1u64 << order)).map(move |mask| CrispSubset { order, mask })
    }

    fn check_order(&self, order: usize) -> Result<(), CrispError> {
        if self.order != order {
            return Err(CrispError::CarrierMismatch {
                expected: order,
                found: self.order,
            });
        }
        Ok(())
    }

    /// Display using the table's labels.
    pub fn display_with(&self, t: &CayleyTable) -> String {
        let items: Vec<String> = self.iter().map(|x| t.label(x)).collect();
        format!("{{{}}}", items.join(","))
    }
}

impl fmt::Debug for CrispSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for CrispSubset {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Raw {
            order: usize,
            elements: Vec<usize>,
        }
        Raw {
            order: self.order,
            elements: self.iter().collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CrispSubset {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            order: usize,
            elements: Vec<usize>,
        }
        let raw = Raw::deserialize(deserializer)?;
        CrispSubset::from_elements(raw.order, raw.elements).map_err(serde::de::Error::custom)
    }
}

/// `{ a·b : a ∈ A, b ∈ B }`
pub fn subset_product(t: &CayleyTable, a: &CrispSubset, b: &CrispSubset) -> Result<CrispSubset, CrispError> {
    a.check_order(t.order())?;
    b.check_order(t.order())?;
    Ok(product_unchecked(t, a, b))
}

pub(crate) fn product_unchecked(t: &CayleyTable, a: &CrispSubset, b: &CrispSubset) -> CrispSubset {
    let mut out = CrispSubset::empty(t.order());
    for x in a.iter() {
        for y in b.iter() {
            out.mask |= 1 << t.mul(x, y);
        }
    }
    out
}

/// Why a subset fails one of the ideal conditions: the factors involved and
/// the product that escapes the subset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrispViolation {
    pub factors: Vec<usize>,
    pub product: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassFlag {
    pub holds: bool,
    pub violation: Option<CrispViolation>,
}

impl ClassFlag {
    fn from(violation: Option<CrispViolation>) -> Self {
        ClassFlag {
            holds: violation.is_none(),
            violation,
        }
    }

    fn and(a: &ClassFlag, b: &ClassFlag) -> Self {
        ClassFlag::from(a.violation.clone().or_else(|| b.violation.clone()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrispClassReport {
    pub la_subsemigroup: ClassFlag,
    pub left_ideal: ClassFlag,
    pub right_ideal: ClassFlag,
    pub two_sided_ideal: ClassFlag,
    pub bi_ideal: ClassFlag,
    pub generalized_bi_ideal: ClassFlag,
    pub quasi_ideal: ClassFlag,
    pub interior_ideal: ClassFlag,
}

impl CrispClassReport {
    pub fn flag(&self, kind: crate::ideals::IdealKind) -> &ClassFlag {
        use crate::ideals::IdealKind::*;
        match kind {
            LaSubsemigroup => &self.la_subsemigroup,
            LeftIdeal => &self.left_ideal,
            RightIdeal => &self.right_ideal,
            TwoSidedIdeal => &self.two_sided_ideal,
            BiIdeal => &self.bi_ideal,
            GeneralizedBiIdeal => &self.generalized_bi_ideal,
            QuasiIdeal => &self.quasi_ideal,
            InteriorIdeal => &self.interior_ideal,
        }
    }
}

fn pair_violation(t: &CayleyTable, a: &CrispSubset, left: &CrispSubset, right: &CrispSubset) -> Option<CrispViolation> {
    for x in left.iter() {
        for y in right.iter() {
            let p = t.mul(x, y);
            if !a.contains(p) {
                return Some(CrispViolation {
                    factors: vec![x, y],
                    product: p,
                });
            }
        }
    }
    None
}

/// `(x·s)·y ∉ A` with `x ∈ outer_left`, `s ∈ middle`, `y ∈ outer_right`.
fn triple_violation(
    t: &CayleyTable,
    a: &CrispSubset,
    first: &CrispSubset,
    second: &CrispSubset,
    third: &CrispSubset,
) -> Option<CrispViolation> {
    for x in first.iter() {
        for s in second.iter() {
            let xs = t.mul(x, s);
            for y in third.iter() {
                let p = t.mul(xs, y);
                if !a.contains(p) {
                    return Some(CrispViolation {
                        factors: vec![x, s, y],
                        product: p,
                    });
                }
            }
        }
    }
    None
}

fn quasi_violation(t: &CayleyTable, a: &CrispSubset) -> Option<CrispViolation> {
    let s = CrispSubset::full(t.order());
    let as_ = product_unchecked(t, a, &s);
    let sa = product_unchecked(t, &s, a);
    let escaped = as_.intersection(&sa).mask & !a.mask;
    if escaped == 0 {
        return None;
    }
    let x = escaped.trailing_zeros() as usize;
    let (p, q) = a
        .iter()
        .flat_map(|p| s.iter().map(move |q| (p, q)))
        .find(|&(p, q)| t.mul(p, q) == x)
        .expect("x ∈ AS");
    let (u, v) = s
        .iter()
        .flat_map(|u| a.iter().map(move |v| (u, v)))
        .find(|&(u, v)| t.mul(u, v) == x)
        .expect("x ∈ SA");
    Some(CrispViolation {
        factors: vec![p, q, u, v],
        product: x,
    })
}

pub fn classify_crisp(t: &CayleyTable, a: &CrispSubset) -> Result<CrispClassReport, CrispError> {
    a.check_order(t.order())?;
    if a.is_empty() {
        return Err(CrispError::Empty);
    }
    let s = CrispSubset::full(t.order());
    let la_subsemigroup = ClassFlag::from(pair_violation(t, a, a, a));
    let left_ideal = ClassFlag::from(pair_violation(t, a, &s, a));
    let right_ideal = ClassFlag::from(pair_violation(t, a, a, &s));
    let two_sided_ideal = ClassFlag::and(&left_ideal, &right_ideal);
    let generalized_bi_ideal = ClassFlag::from(triple_violation(t, a, a, &s, a));
    let bi_ideal = ClassFlag::and(&la_subsemigroup, &generalized_bi_ideal);
    let quasi_ideal = ClassFlag::from(quasi_violation(t, a));
    let interior_ideal = ClassFlag::and(&la_subsemigroup, &ClassFlag::from(triple_violation(t, a, &s, a, &s)));
    Ok(CrispClassReport {
        la_subsemigroup,
        left_ideal,
        right_ideal,
        two_sided_ideal,
        bi_ideal,
        generalized_bi_ideal,
        quasi_ideal,
        interior_ideal,
    })
}

/// Allocation-free predicates for exhaustive scans.
pub mod predicates {
    use super::*;

    pub fn is_left_ideal(t: &CayleyTable, a: &CrispSubset) -> bool {
        !a.is_empty() && pair_violation(t, a, &CrispSubset::full(t.order()), a).is_none()
    }

    pub fn is_right_ideal(t: &CayleyTable, a: &CrispSubset) -> bool {
        !a.is_empty() && pair_violation(t, a, a, &CrispSubset::full(t.order())).is_none()
    }

    pub fn is_quasi_ideal(t: &CayleyTable, a: &CrispSubset) -> bool {
        !a.is_empty() && quasi_violation(t, a).is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::magma::samples;

    fn set(order: usize, xs: &[usize]) -> CrispSubset {
        CrispSubset::from_elements(order, xs.iter().copied()).unwrap()
    }

    #[test]
    fn product_with_full_carrier() {
        let t = samples::example_table();
        let p = subset_product(&t, &CrispSubset::full(4), &set(4, &[0])).unwrap();
        assert_eq!(p, set(4, &[2, 3]));
    }

    #[test]
    fn product_with_empty_factor() {
        let t = samples::example_table();
        assert!(subset_product(&t, &CrispSubset::empty(4), &CrispSubset::full(4)).unwrap().is_empty());
        assert!(subset_product(&t, &CrispSubset::full(4), &CrispSubset::empty(4)).unwrap().is_empty());
    }

    #[test]
    fn product_in_z2() {
        let t = samples::cyclic(2);
        assert_eq!(subset_product(&t, &set(2, &[0]), &set(2, &[1])).unwrap(), set(2, &[1]));
    }

    #[test]
    fn product_carrier_mismatch() {
        let t = samples::cyclic(2);
        assert!(matches!(
            subset_product(&t, &set(3, &[0]), &set(2, &[1])),
            Err(CrispError::CarrierMismatch { .. })
        ));
    }

    #[test]
    fn example_ideal_134() {
        let t = samples::example_table();
        let r = classify_crisp(&t, &set(4, &[0, 2, 3])).unwrap();
        assert!(r.left_ideal.holds && r.right_ideal.holds && r.two_sided_ideal.holds);
    }

    #[test]
    fn example_singleton_4_not_left_ideal() {
        let t = samples::example_table();
        let r = classify_crisp(&t, &set(4, &[3])).unwrap();
        assert!(!r.left_ideal.holds);
        // 2·4 = 1 ∉ {4} in 1-based names
        assert_eq!(
            r.left_ideal.violation,
            Some(CrispViolation {
                factors: vec![1, 3],
                product: 0
            })
        );
        assert!(!r.two_sided_ideal.holds);
    }

    #[test]
    fn full_carrier_is_everything() {
        let t = samples::example_table();
        let r = classify_crisp(&t, &CrispSubset::full(4)).unwrap();
        for f in [
            &r.la_subsemigroup,
            &r.left_ideal,
            &r.right_ideal,
            &r.two_sided_ideal,
            &r.bi_ideal,
            &r.generalized_bi_ideal,
            &r.quasi_ideal,
            &r.interior_ideal,
        ] {
            assert!(f.holds);
        }
    }

    #[test]
    fn empty_subset_rejected() {
        let t = samples::example_table();
        assert_eq!(classify_crisp(&t, &CrispSubset::empty(4)), Err(CrispError::Empty));
    }

    #[test]
    fn violations_are_genuine() {
        let t = samples::example_table();
        for a in CrispSubset::all_nonempty(4) {
            let r = classify_crisp(&t, &a).unwrap();
            for f in [&r.la_subsemigroup, &r.left_ideal, &r.right_ideal, &r.generalized_bi_ideal, &r.quasi_ideal] {
                if let Some(v) = &f.violation {
                    assert!(!a.contains(v.product));
                    let prod = match v.factors.len() {
                        2 => t.mul(v.factors[0], v.factors[1]),
                        3 => t.mul(t.mul(v.factors[0], v.factors[1]), v.factors[2]),
                        4 => {
                            assert_eq!(t.mul(v.factors[2], v.factors[3]), v.product);
                            t.mul(v.factors[0], v.factors[1])
                        }
                        _ => unreachable!(),
                    };
                    assert_eq!(prod, v.product);
                }
            }
        }
    }

    #[test]
    fn out_of_range_elements() {
        assert!(matches!(
            CrispSubset::from_elements(3, [0, 3]),
            Err(CrispError::OutOfRange { element: 3, order: 3 })
        ));
        assert!(CrispSubset::from_mask(2, 0b100).is_err());
    }
}
