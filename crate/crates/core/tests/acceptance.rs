//! Acceptance suite: one PASS/FAIL line per criterion. Every tolerance is
//! exact; nothing here is calibrated after the fact.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use agfuzz::enumerate::up_to_iso;
use agfuzz::harness::{self, worked_example, search_statement, verify, Scope, Status, FAMILIES};
use agfuzz::magma::samples;
use agfuzz::{
    canonical_key, check_inequality_form, check_point_form, enumerate, star_ops, CayleyTable, CrispSubset,
    EnumSpec, FuzzySubset, Grade, IdealKind, SplitMix64, StarKind, Thresholds,
};
use common::*;

type Outcome = Result<String, String>;

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("example replay", example_replay),
        ("star-lemma suite", star_lemma_suite),
        ("characteristic-function suite", characteristic_suite),
        ("classifier agreement", classifier_agreement),
        ("classical reduction", classical_reduction),
        ("theorem harness regression", harness_regression),
        ("enumeration dual oracle", enumeration_dual_oracle),
        ("mutation self-test", mutation_self_test),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {}. {name}: {detail} ({secs:.2}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {}. {name}: {detail} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn level(mu: &FuzzySubset, t: Grade) -> BTreeSet<usize> {
    (0..mu.order()).filter(|&x| mu.at(x) >= t).collect()
}

/// Example table, exact values and the eight level bands.
fn example_replay() -> Outcome {
    let start = Instant::now();
    let t = samples::example_table();
    let mu = FuzzySubset::from_fractions(10, &[3, 2, 6, 3]).unwrap();
    let nu = FuzzySubset::from_fractions(10, &[4, 3, 4, 5]).unwrap();
    let mut triples = 0;
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                triples += usize::from(t.mul(t.mul(a, b), c) == t.mul(t.mul(c, b), a));
            }
        }
    }
    ensure(triples == 64, || format!("{triples}/64 left invertive triples"))?;
    let prod = naive_compose(&t, &mu, &nu);
    let meet = mu.at(3).min(nu.at(3));
    ensure(prod[3] == g("1/2"), || format!("(μ∘ν)(4) = {}", prod[3]))?;
    ensure(meet == g("3/10"), || format!("(μ∧ν)(4) = {meet}"))?;
    ensure(prod[3] > meet, || "μ∘ν ≤ μ∧ν at 4".into())?;

    // bands as listed, 1-based element names
    let bands: [(&FuzzySubset, &str, &str, &[usize]); 8] = [
        (&mu, "0", "1/5", &[1, 2, 3, 4]),
        (&mu, "1/5", "3/10", &[1, 3, 4]),
        (&mu, "3/10", "3/5", &[3]),
        (&mu, "3/5", "1", &[]),
        (&nu, "0", "3/10", &[1, 2, 3, 4]),
        (&nu, "3/10", "2/5", &[1, 3, 4]),
        (&nu, "2/5", "1/2", &[4]),
        (&nu, "3/5", "1", &[]),
    ];
    for (f, lo, hi, names) in bands {
        let want: BTreeSet<usize> = names.iter().map(|k| k - 1).collect();
        for k in 1..=100 {
            let s = Grade::new(k, 100).unwrap();
            if g(lo) < s && s <= g(hi) {
                let got = level(f, s);
                ensure(got == want, || format!("U at t={s}: {got:?} ≠ {want:?}"))?;
                let lib: BTreeSet<usize> = f.level_set(s).unwrap().iter().collect();
                ensure(lib == want, || format!("library U at t={s}: {lib:?}"))?;
            }
        }
    }
    let bundle = worked_example();
    ensure(bundle.all_pass(), || "built-in golden bundle has a failing check".into())?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "64/64 triples, (μ∘ν)(4)=1/2, (μ∧ν)(4)=3/10, 8 bands exact, {} golden checks",
        bundle.checks.len()
    ))
}

/// `μ∧*ν = μ*∧ν*`, `μ∨*ν = μ*∨ν*`, `μ∗ν = μ*∘ν*` for every pair on the
/// 4-grid, every structure of order ≤ 3 and every grid threshold pair.
fn star_lemma_suite() -> Outcome {
    let tables = up_to_iso(3).unwrap();
    let ths = threshold_grid(4);
    let mut checked = 0u64;
    let mut failures = [0u64; 3];
    let mut first: Option<String> = None;
    for t in &tables {
        let pool = grid(t.order(), 4);
        for th in &ths {
            let stars: Vec<FuzzySubset> = pool.iter().map(|m| FuzzySubset::new(star(m, th))).collect();
            for (i, mu) in pool.iter().enumerate() {
                for (j, nu) in pool.iter().enumerate() {
                    checked += 1;
                    let (ms, ns) = (&stars[i], &stars[j]);
                    let meet = star_ops(StarKind::MeetStar, mu, Some(nu), None, th).unwrap();
                    let join = star_ops(StarKind::JoinStar, mu, Some(nu), None, th).unwrap();
                    let prod = star_ops(StarKind::ProdStar, mu, Some(nu), Some(t), th).unwrap();
                    let rhs_prod = naive_compose(t, ms, ns);
                    for x in 0..t.order() {
                        let bad = [
                            meet.at(x) != ms.at(x).min(ns.at(x)),
                            join.at(x) != ms.at(x).max(ns.at(x)),
                            prod.at(x) != rhs_prod[x],
                        ];
                        for (k, &b) in bad.iter().enumerate() {
                            if b {
                                failures[k] += 1;
                                first.get_or_insert_with(|| {
                                    format!(
                                        "clause ({}) at element {} of {:?}, μ={:?}, ν={:?}, {th}",
                                        ["i", "ii", "iii"][k],
                                        x + 1,
                                        t.rows(),
                                        mu,
                                        nu
                                    )
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    let summary = format!(
        "{checked} pairs over {} structures, failures (i)={} (ii)={} (iii)={}",
        tables.len(),
        failures[0],
        failures[1],
        failures[2]
    );
    match first {
        None => Ok(summary),
        Some(f) => Err(format!("{summary}; first: {f}")),
    }
}

fn crisp_left(t: &CayleyTable, a: &CrispSubset) -> bool {
    naive_product(t, &CrispSubset::full(t.order()), a).is_subset(a)
}

fn crisp_right(t: &CayleyTable, a: &CrispSubset) -> bool {
    naive_product(t, a, &CrispSubset::full(t.order())).is_subset(a)
}

fn crisp_quasi(t: &CayleyTable, a: &CrispSubset) -> bool {
    let s = CrispSubset::full(t.order());
    naive_product(t, a, &s).intersection(&naive_product(t, &s, a)).is_subset(a)
}

/// Characteristic identities for all subset pairs and the crisp/fuzzy ideal
/// correspondences, on every structure of order ≤ 4.
fn characteristic_suite() -> Outcome {
    let tables = up_to_iso(4).unwrap();
    let ths = threshold_grid(4);
    let mut pairs = 0u64;
    let mut singles = 0u64;
    for t in &tables {
        let n = t.order();
        let subsets = all_subsets(n);
        let chis: Vec<FuzzySubset> = subsets.iter().map(|a| FuzzySubset::new(chi(a))).collect();
        for th in &ths {
            for (a, ca) in subsets.iter().zip(&chis) {
                singles += 1;
                let cs = FuzzySubset::new(star(ca, th));
                for (kind, crisp) in [
                    (IdealKind::LeftIdeal, crisp_left(t, a)),
                    (IdealKind::RightIdeal, crisp_right(t, a)),
                    (IdealKind::QuasiIdeal, crisp_quasi(t, a)),
                ] {
                    let fuzzy = check_inequality_form(kind, t, &cs, th).unwrap().verdict;
                    ensure(fuzzy == crisp, || {
                        format!("{kind}: crisp {crisp} vs χ* {fuzzy} for A={a:?} in {:?} at {th}", t.rows())
                    })?;
                }
                for (b, cb) in subsets.iter().zip(&chis) {
                    pairs += 1;
                    let meet = star_ops(StarKind::MeetStar, ca, Some(cb), None, th).unwrap();
                    let join = star_ops(StarKind::JoinStar, ca, Some(cb), None, th).unwrap();
                    let prod = star_ops(StarKind::ProdStar, ca, Some(cb), Some(t), th).unwrap();
                    let want = [
                        clamp_all(&chi(&a.intersection(b)), th),
                        clamp_all(&chi(&a.union(b)), th),
                        clamp_all(&chi(&naive_product(t, a, b)), th),
                    ];
                    for (k, got) in [meet, join, prod].iter().enumerate() {
                        ensure(got.grades() == want[k].as_slice(), || {
                            format!(
                                "clause ({}) for L={a:?}, R={b:?} in {:?} at {th}",
                                ["i", "ii", "iii"][k],
                                t.rows()
                            )
                        })?;
                    }
                }
            }
        }
    }
    Ok(format!(
        "{pairs} subset pairs and {singles} single subsets over {} structures, all exact",
        tables.len()
    ))
}

/// Point form and inequality form agree everywhere in scope.
fn classifier_agreement() -> Outcome {
    let ths = threshold_grid(4);
    let mut exhaustive = 0u64;
    for t in up_to_iso(3).unwrap() {
        for mu in grid(t.order(), 4) {
            for th in &ths {
                for kind in IdealKind::ALL {
                    exhaustive += 1;
                    let p = check_point_form(kind, &t, &mu, th).unwrap().verdict;
                    let q = check_inequality_form(kind, &t, &mu, th).unwrap().verdict;
                    ensure(p == q, || format!("{kind} on {:?}, μ={mu:?}, {th}: point {p}, inequality {q}", t.rows()))?;
                }
            }
        }
    }
    let order4: Vec<CayleyTable> = up_to_iso(4).unwrap().into_iter().filter(|t| t.order() == 4).collect();
    let mut rng = SplitMix64::new(0x5EED_0004);
    let spots = 10_000;
    for _ in 0..spots {
        let t = &order4[rng.below(order4.len() as u64) as usize];
        let nums: Vec<u64> = (0..4).map(|_| rng.below(5)).collect();
        let mu = FuzzySubset::from_fractions(4, &nums).unwrap();
        let th = &ths[rng.below(ths.len() as u64) as usize];
        for kind in IdealKind::ALL {
            let p = check_point_form(kind, t, &mu, th).unwrap().verdict;
            let q = check_inequality_form(kind, t, &mu, th).unwrap().verdict;
            ensure(p == q, || format!("{kind} on {:?}, μ={mu:?}, {th}: point {p}, inequality {q}", t.rows()))?;
        }
    }
    Ok(format!(
        "0 disagreements in {exhaustive} exhaustive checks (order ≤ 3) and {} random checks at order 4",
        spots * IdealKind::ALL.len()
    ))
}

/// At γ = 0, δ = 1 the thresholded classifiers are the classical ones.
fn classical_reduction() -> Outcome {
    let th = Thresholds::new(Grade::ZERO, Grade::ONE).unwrap();
    let mut checked = 0u64;
    for t in up_to_iso(3).unwrap() {
        for mu in grid(t.order(), 4) {
            for kind in IdealKind::ALL {
                checked += 1;
                let fuzzy = check_inequality_form(kind, &t, &mu, &th).unwrap().verdict;
                let point = check_point_form(kind, &t, &mu, &th).unwrap().verdict;
                let want = classical::holds(kind, &t, &mu);
                ensure(fuzzy == want && point == want, || {
                    format!("{kind} on {:?}, μ={mu:?}: classical {want}, inequality {fuzzy}, point {point}", t.rows())
                })?;
            }
        }
    }
    Ok(format!("0 disagreements in {checked} checks"))
}

/// Every catalog family on the default scope.
fn harness_regression() -> Outcome {
    let scope = Scope::default();
    let mut lines = Vec::new();
    let mut refuted = Vec::new();
    for id in FAMILIES {
        let v = verify(id, &scope).map_err(|e| format!("{id}: {e}"))?;
        lines.push(format!("{id}={}", v.status.name()));
        if v.status == Status::Refuted {
            let b = v.counterexample.as_ref().ok_or_else(|| format!("{id}: refuted without a bundle"))?;
            let st = harness::verify::lookup(&b.statement).map_err(|e| e.to_string())?.remove(0);
            refuted.push(format!(
                "{} at element {} of {:?}, {} vs {} under {} (bundle re-verifies: {})",
                b.statement,
                b.elements.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(","),
                b.table.rows(),
                b.lhs.map(|g| g.to_string()).unwrap_or_default(),
                b.rhs.map(|g| g.to_string()).unwrap_or_default(),
                b.thresholds.map(|t| t.to_string()).unwrap_or_default(),
                st.recheck(b)
            ));
        }
    }
    if refuted.is_empty() {
        Ok(lines.join(" "))
    } else {
        Err(format!("refuted: {}; all: {}", refuted.join("; "), lines.join(" ")))
    }
}

/// Backtracking against the naive scan, and class keys against raw keys.
fn enumeration_dual_oracle() -> Outcome {
    let mut counts = Vec::new();
    for n in 1..=3 {
        let raw = enumerate(&EnumSpec::new(n).raw()).unwrap();
        let naive = naive_la_tables(n);
        let got: BTreeSet<Vec<Vec<usize>>> = raw.tables.iter().map(|t| t.rows()).collect();
        let want: BTreeSet<Vec<Vec<usize>>> = naive.iter().map(|t| t.rows()).collect();
        ensure(got == want && raw.raw_count == naive.len(), || {
            format!("order {n}: backtracking {} vs naive {}", raw.raw_count, naive.len())
        })?;
        let classes = enumerate(&EnumSpec::new(n)).unwrap();
        let keys: Vec<_> = classes.tables.iter().map(canonical_key).collect();
        let distinct: BTreeSet<_> = keys.iter().cloned().collect();
        ensure(distinct.len() == keys.len(), || format!("order {n}: repeated canonical key"))?;
        let raw_keys: BTreeSet<_> = naive.iter().map(canonical_key).collect();
        ensure(raw_keys == distinct, || format!("order {n}: class keys do not cover raw keys"))?;
        counts.push(format!("n={n}: {} raw, {} classes", naive.len(), keys.len()));
    }
    Ok(counts.join("; "))
}

/// A reversed inequality must be caught, reproducibly.
fn mutation_self_test() -> Outcome {
    let st = harness::verify::lookup("P-STAR").map_err(|e| e.to_string())?.remove(0);
    let bad = st.flipped().ok_or("statement has no inequality")?;
    let first = search_statement(&bad, 4, None).map_err(|e| e.to_string())?;
    let b = first.as_ref().ok_or("no counterexample found for the mutant")?;
    ensure(bad.recheck(b), || "bundle does not re-verify".into())?;
    let again = search_statement(&bad, 4, None).map_err(|e| e.to_string())?;
    ensure(again == first, || "second run differs".into())?;
    Ok(format!(
        "{} reversed: counterexample on order {} at ({}) with {} vs {}, re-verified, identical on rerun",
        st.name(),
        b.table.order(),
        b.elements.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(","),
        b.lhs.unwrap(),
        b.rhs.unwrap()
    ))
}
