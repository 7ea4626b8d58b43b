mod common;

use std::sync::OnceLock;

use agfuzz::enumerate::up_to_iso;
use agfuzz::fuzzy::point_relation;
use agfuzz::ideals::{self, recheck_point_violation, recheck_violation};
use agfuzz::{
    check_inequality_form, check_point_form, compose, star_ops, CayleyTable, CrispSubset, FuzzySubset, Grade,
    IdealKind, StarKind, Thresholds,
};
use common::*;
use proptest::prelude::*;

fn structures() -> &'static [CayleyTable] {
    static CELL: OnceLock<Vec<CayleyTable>> = OnceLock::new();
    CELL.get_or_init(|| up_to_iso(4).unwrap())
}

/// An LA-semigroup of order ≤ 4 under a random relabeling.
fn table() -> impl Strategy<Value = CayleyTable> {
    (0..structures().len())
        .prop_flat_map(|i| {
            let t = &structures()[i];
            (Just(i), Just((0..t.order()).collect::<Vec<_>>()).prop_shuffle())
        })
        .prop_map(|(i, perm)| structures()[i].relabel(&perm))
}

fn fuzzy(n: usize, den: u64) -> impl Strategy<Value = FuzzySubset> {
    prop::collection::vec(0..=den, n).prop_map(move |nums| FuzzySubset::from_fractions(den, &nums).unwrap())
}

fn thresholds() -> impl Strategy<Value = Thresholds> {
    (0u64..10, 1u64..=10)
        .prop_filter("γ < δ", |(a, b)| a < b)
        .prop_map(|(a, b)| Thresholds::new(Grade::new(a, 10).unwrap(), Grade::new(b, 10).unwrap()).unwrap())
}

fn table_and(k: usize) -> impl Strategy<Value = (CayleyTable, Vec<FuzzySubset>, Thresholds)> {
    table().prop_flat_map(move |t| {
        let n = t.order();
        (Just(t), prop::collection::vec(fuzzy(n, 10), k), thresholds())
    })
}

fn crisp(n: usize) -> impl Strategy<Value = CrispSubset> {
    (1u64..1 << n).prop_map(move |m| CrispSubset::from_mask(n, m).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn relabeled_tables_stay_left_invertive(t in table()) {
        prop_assert!(is_left_invertive(&t));
    }

    #[test]
    fn composition_matches_definition((t, v, _) in table_and(2)) {
        let got = compose(&t, &v[0], &v[1]).unwrap();
        let want = naive_compose(&t, &v[0], &v[1]);
        prop_assert_eq!(got.grades(), want.as_slice());
    }

    #[test]
    fn composition_is_monotone((t, v, _) in table_and(4)) {
        let (mu, nu) = (&v[0], &v[1]);
        let mu2 = mu.join(&v[2]).unwrap();
        let nu2 = nu.join(&v[3]).unwrap();
        let small = compose(&t, mu, nu).unwrap();
        let big = compose(&t, &mu2, &nu2).unwrap();
        prop_assert!(small.le(&big));
    }

    #[test]
    fn level_sets_shrink_as_level_rises(mu in fuzzy(4, 10), a in 1u64..=10, b in 1u64..=10) {
        let (lo, hi) = (a.min(b), a.max(b));
        let big = mu.level_set(Grade::new(lo, 10).unwrap()).unwrap();
        let small = mu.level_set(Grade::new(hi, 10).unwrap()).unwrap();
        prop_assert!(small.is_subset(&big));
    }

    #[test]
    fn point_form_agrees_with_inequality_form((t, v, th) in table_and(1)) {
        for kind in IdealKind::ALL {
            let p = check_point_form(kind, &t, &v[0], &th).unwrap();
            let q = check_inequality_form(kind, &t, &v[0], &th).unwrap();
            prop_assert_eq!(p.verdict, q.verdict, "{} on {:?} at {}", kind, v[0], th);
        }
    }

    #[test]
    fn violations_reverify((t, v, th) in table_and(1)) {
        let mu = &v[0];
        for kind in IdealKind::ALL {
            let q = check_inequality_form(kind, &t, mu, &th).unwrap();
            for w in &q.violations {
                prop_assert!(recheck_violation(kind, &t, mu, &th, w));
            }
            let p = check_point_form(kind, &t, mu, &th).unwrap();
            if let Some(w) = &p.first {
                prop_assert!(recheck_point_violation(kind, &t, mu, &th, w));
                // the witness itself is a valid threshold above γ
                prop_assert!(w.witness > th.gamma() && w.witness <= Grade::ONE);
            }
        }
    }

    #[test]
    fn classical_reduction_at_zero_one((t, v, _) in table_and(1)) {
        let th = Thresholds::new(Grade::ZERO, Grade::ONE).unwrap();
        for kind in IdealKind::ALL {
            let fuzzy = check_inequality_form(kind, &t, &v[0], &th).unwrap().verdict;
            prop_assert_eq!(fuzzy, classical::holds(kind, &t, &v[0]), "{}", kind);
            if let Some(p) = ideals::classical::predicate(kind) {
                prop_assert_eq!(fuzzy, p(&t, &v[0]), "{}", kind);
            }
        }
    }

    /// A classical fuzzy ideal of any kind is one for every threshold pair.
    #[test]
    fn classical_implies_thresholded((t, v, th) in table_and(1)) {
        for kind in IdealKind::ALL {
            if classical::holds(kind, &t, &v[0]) {
                prop_assert!(check_inequality_form(kind, &t, &v[0], &th).unwrap().verdict, "{}", kind);
            }
        }
    }

    #[test]
    fn star_of_subsemigroup_is_classical((t, v, th) in table_and(1)) {
        let mu = &v[0];
        if check_inequality_form(IdealKind::LaSubsemigroup, &t, mu, &th).unwrap().verdict {
            let s = FuzzySubset::new(star(mu, &th));
            prop_assert!(classical::holds(IdealKind::LaSubsemigroup, &t, &s));
        }
    }

    #[test]
    fn one_sided_ideals_are_quasi((t, v, th) in table_and(1)) {
        let mu = &v[0];
        let left = check_inequality_form(IdealKind::LeftIdeal, &t, mu, &th).unwrap().verdict;
        let right = check_inequality_form(IdealKind::RightIdeal, &t, mu, &th).unwrap().verdict;
        if left || right {
            prop_assert!(check_inequality_form(IdealKind::QuasiIdeal, &t, mu, &th).unwrap().verdict);
        }
    }

    #[test]
    fn crisp_ideals_match_starred_characteristic(
        (t, a, th) in table().prop_flat_map(|t| { let n = t.order(); (Just(t), crisp(n), thresholds()) })
    ) {
        let report = agfuzz::classify_crisp(&t, &a).unwrap();
        let chi_star = FuzzySubset::characteristic(&a).star(&th);
        for kind in [IdealKind::LeftIdeal, IdealKind::RightIdeal, IdealKind::QuasiIdeal] {
            let fuzzy = check_inequality_form(kind, &t, &chi_star, &th).unwrap().verdict;
            prop_assert_eq!(fuzzy, report.flag(kind).holds, "{} on {}", kind, a.display_with(&t));
        }
    }

    #[test]
    fn starred_meet_and_join_distribute((_t, v, th) in table_and(2)) {
        let (mu, nu) = (&v[0], &v[1]);
        let (ms, ns) = (star(mu, &th), star(nu, &th));
        let meet = star_ops(StarKind::MeetStar, mu, Some(nu), None, &th).unwrap();
        let join = star_ops(StarKind::JoinStar, mu, Some(nu), None, &th).unwrap();
        for x in 0..mu.order() {
            prop_assert_eq!(meet.at(x), ms[x].min(ns[x]));
            prop_assert_eq!(join.at(x), ms[x].max(ns[x]));
        }
    }

    /// `μ∗ν = μ*∘ν*` wherever `x` has a factorization, and everywhere when
    /// `γ = 0`; at a non-product element with `γ > 0` the sides are `γ` and 0.
    #[test]
    fn starred_product_distributes_at_products((t, v, th) in table_and(2)) {
        let (mu, nu) = (&v[0], &v[1]);
        let lhs = star_ops(StarKind::ProdStar, mu, Some(nu), Some(&t), &th).unwrap();
        let rhs = naive_compose(&t, &FuzzySubset::new(star(mu, &th)), &FuzzySubset::new(star(nu, &th)));
        for x in 0..t.order() {
            if factorizable(&t, x) || th.gamma() == Grade::ZERO {
                prop_assert_eq!(lhs.at(x), rhs[x]);
            } else {
                prop_assert_eq!((lhs.at(x), rhs[x]), (th.gamma(), Grade::ZERO));
            }
        }
    }

    #[test]
    fn point_relation_definitions(mu in fuzzy(3, 10), x in 0usize..3, k in 0u64..=10, th in thresholds()) {
        let t = Grade::new(k, 10).unwrap();
        let r = point_relation(&mu, x, t, &th);
        let v = mu.at(x);
        prop_assert_eq!(r.in_gamma, v >= t && t > th.gamma());
        // μ(x) + t > 2δ, on tenths
        let tenths = |g: Grade| g.numer() * (10 / g.denom());
        prop_assert_eq!(r.q_delta, tenths(v) + k > 2 * tenths(th.delta()));
        prop_assert_eq!(r.in_or_q, r.in_gamma || r.q_delta);
        prop_assert_eq!(r.not_in_or_q, !r.in_or_q);
    }
}
