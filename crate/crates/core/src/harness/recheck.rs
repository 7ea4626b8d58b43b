//! Re-evaluation of counterexample bundles with the exact operations and
//! the fuzzy-point classifier, independent of the dense evaluator.

use super::catalog::{Body, Role, Statement};
use super::verify::{char_identity_failure, crisp_claim_witness, Counterexample, Direction};
use crate::crisp::{predicates, CrispSubset};
use crate::fuzzy::{self, FuzzySubset};
use crate::grade::Thresholds;
use crate::ideals::{self, IdealKind};
use crate::magma::CayleyTable;

fn is_kind(kind: IdealKind, t: &CayleyTable, mu: &FuzzySubset, th: &Thresholds) -> bool {
    ideals::check_point_form(kind, t, mu, th).is_ok_and(|v| v.verdict)
}

fn plays(role: Role, t: &CayleyTable, mu: &FuzzySubset, th: &Thresholds) -> bool {
    match role {
        Role::Any => mu.order() == t.order(),
        Role::Kind(k) => is_kind(k, t, mu, th),
    }
}

/// Does a violation of `kind` exist at exactly `elements` with these sides?
fn violation_at(kind: IdealKind, t: &CayleyTable, mu: &FuzzySubset, th: &Thresholds, b: &Counterexample) -> bool {
    let (Some(lhs), Some(rhs)) = (b.lhs, b.rhs) else {
        return false;
    };
    let v = ideals::FuzzyViolation {
        elements: b.elements.clone(),
        lhs,
        rhs,
    };
    ideals::recheck_violation(kind, t, mu, th, &v)
}

impl Statement {
    /// True iff the bundle describes a genuine failure of this statement.
    pub fn recheck(&self, b: &Counterexample) -> bool {
        let t = &b.table;
        if self.hypotheses.missing(t).is_some() && self.stated.missing(t).is_some() {
            return false;
        }
        let fz = |i: usize| b.fuzzy.get(i).map(|n| &n.subset).filter(|m| m.order() == t.order());
        let cr = |i: usize| b.crisp.get(i).map(|n| n.subset).filter(|a| a.order() == t.order());
        match &self.body {
            Body::Crisp { property, claim } => {
                let witness = crisp_claim_witness(t, *claim);
                match b.direction {
                    Direction::Forward => {
                        property.holds(t)
                            && witness.is_some()
                            && b.crisp.iter().all(|n| !n.subset.is_empty())
                            && crisp_subsets_refute(t, *claim, &b.crisp.iter().map(|n| n.subset).collect::<Vec<_>>())
                    }
                    Direction::Converse => !property.holds(t) && witness.is_none(),
                }
            }
            Body::CharIdentity(claim) => {
                let (Some(th), Some(l), Some(r)) = (b.thresholds, cr(0), cr(1)) else {
                    return false;
                };
                if l.is_empty() || r.is_empty() {
                    return false;
                }
                char_identity_failure(t, *claim, &l, &r, &th)
                    .is_some_and(|(x, lhs, rhs)| b.elements == [x] && b.lhs == Some(lhs) && b.rhs == Some(rhs))
            }
            Body::CharIdeal(kind) => {
                let (Some(th), Some(a)) = (b.thresholds, cr(0)) else {
                    return false;
                };
                let crisp = match kind {
                    IdealKind::LeftIdeal => predicates::is_left_ideal(t, &a),
                    IdealKind::RightIdeal => predicates::is_right_ideal(t, &a),
                    IdealKind::QuasiIdeal => predicates::is_quasi_ideal(t, &a),
                    _ => return false,
                };
                !a.is_empty() && crisp != is_kind(*kind, t, &FuzzySubset::characteristic(&a).star(&th), &th)
            }
            Body::Implication { premise, conclusion } => {
                let (Some(th), Some(mu)) = (b.thresholds, fz(0)) else {
                    return false;
                };
                is_kind(*premise, t, mu, &th) && violation_at(*conclusion, t, mu, &th, b)
            }
            Body::ProductIdeal => {
                let (Some(th), Some(mu), Some(nu)) = (b.thresholds, fz(0), fz(1)) else {
                    return false;
                };
                let prod = fuzzy::compose_unchecked(t, mu, nu);
                is_kind(IdealKind::LeftIdeal, t, mu, &th)
                    && is_kind(IdealKind::RightIdeal, t, nu, &th)
                    && violation_at(IdealKind::TwoSidedIdeal, t, &prod, &th, b)
            }
            Body::StarProjection(cmp) => {
                let (Some(th), Some(mu)) = (b.thresholds, fz(0)) else {
                    return false;
                };
                let [x, y] = b.elements[..] else {
                    return false;
                };
                let s = mu.star(&th);
                let (lhs, rhs) = (s.at(t.mul(x, y)), s.at(x).min(s.at(y)));
                is_kind(IdealKind::LaSubsemigroup, t, mu, &th) && !cmp.holds(lhs, rhs) && b.lhs == Some(lhs) && b.rhs == Some(rhs)
            }
            Body::Identity(id) => {
                let Some(th) = b.thresholds else {
                    return false;
                };
                match b.direction {
                    Direction::Forward => {
                        if b.fuzzy.len() != id.roles.len() || id.property.is_some_and(|p| !p.holds(t)) {
                            return false;
                        }
                        let vars: Option<Vec<&FuzzySubset>> = (0..id.roles.len()).map(fz).collect();
                        let Some(vars) = vars else {
                            return false;
                        };
                        if !id.roles.iter().zip(&vars).all(|(&r, m)| plays(r, t, m, &th)) {
                            return false;
                        }
                        let [x] = b.elements[..] else {
                            return false;
                        };
                        if x >= t.order() {
                            return false;
                        }
                        let l = id.left.eval(t, &vars, &th).at(x);
                        let r = id.right.eval(t, &vars, &th).at(x);
                        !id.cmp.holds(l, r) && b.lhs == Some(l) && b.rhs == Some(r)
                    }
                    Direction::Converse => {
                        let Some(p) = id.property else {
                            return false;
                        };
                        if p.holds(t) {
                            return false;
                        }
                        // no starred characteristic witness may violate the identity
                        let pools: Vec<Vec<FuzzySubset>> = id
                            .roles
                            .iter()
                            .map(|&r| {
                                CrispSubset::all_nonempty(t.order())
                                    .map(|a| FuzzySubset::characteristic(&a).star(&th))
                                    .filter(|m| plays(r, t, m, &th))
                                    .collect()
                            })
                            .collect();
                        let mut idx = vec![0usize; pools.len()];
                        if pools.iter().any(|p| p.is_empty()) {
                            return true;
                        }
                        loop {
                            let vars: Vec<&FuzzySubset> = idx.iter().zip(&pools).map(|(&i, p)| &p[i]).collect();
                            let l = id.left.eval(t, &vars, &th);
                            let r = id.right.eval(t, &vars, &th);
                            if (0..t.order()).any(|x| !id.cmp.holds(l.at(x), r.at(x))) {
                                return false;
                            }
                            let mut k = idx.len();
                            loop {
                                if k == 0 {
                                    return true;
                                }
                                k -= 1;
                                idx[k] += 1;
                                if idx[k] < pools[k].len() {
                                    break;
                                }
                                idx[k] = 0;
                            }
                        }
                    }
                }
            }
        }
    }
}

/// Checks the reported crisp witnesses directly.
fn crisp_subsets_refute(t: &CayleyTable, claim: super::catalog::CrispClaim, subs: &[CrispSubset]) -> bool {
    use super::catalog::CrispClaim::*;
    use crate::crisp::subset_product;
    let full = CrispSubset::full(t.order());
    let prod = |a: &CrispSubset, b: &CrispSubset| subset_product(t, a, b).expect("same carrier");
    match (claim, subs) {
        (MeetIsProduct | MeetInProduct | MeetIsReversedProduct, [l, r]) => {
            predicates::is_left_ideal(t, l)
                && predicates::is_right_ideal(t, r)
                && match claim {
                    MeetIsProduct => l.intersection(r) != prod(l, r),
                    MeetInProduct => !l.intersection(r).is_subset(&prod(l, r)),
                    _ => l.intersection(r) != prod(r, l),
                }
        }
        (QuasiIdempotent, [q]) => predicates::is_quasi_ideal(t, q) && prod(q, q) != *q,
        (QuasiSandwich, [a]) => predicates::is_quasi_ideal(t, a) && prod(&prod(a, &full), a) != *a,
        _ => false,
    }
}
