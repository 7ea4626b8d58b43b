//! The order-4 worked example: a table, two fuzzy subsets and the values
//! they are known to produce.

use serde::Serialize;

use crate::crisp::CrispSubset;
use crate::fuzzy::{compose, pointwise_lattice, FuzzySubset, LatticeOp};
use crate::grade::{Grade, Thresholds};
use crate::ideals::{check_inequality_form, IdealKind};
use crate::laws;
use crate::magma::{samples, CayleyTable};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoldenCheck {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExampleBundle {
    pub table: CayleyTable,
    pub mu: FuzzySubset,
    pub nu: FuzzySubset,
    pub checks: Vec<GoldenCheck>,
}

impl ExampleBundle {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn check(&self, name: &str) -> Option<&GoldenCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn g(s: &str) -> Grade {
    s.parse().expect("literal grade")
}

fn golden(name: impl Into<String>, expected: impl ToString, actual: impl ToString) -> GoldenCheck {
    let (expected, actual) = (expected.to_string(), actual.to_string());
    GoldenCheck {
        name: name.into(),
        ok: expected == actual,
        expected,
        actual,
    }
}

/// `U(μ; t)` is `expected` for every `t = k/100` in `(lo, hi]`.
fn band(t: &CayleyTable, name: &str, mu: &FuzzySubset, lo: &str, hi: &str, expected: &[usize]) -> GoldenCheck {
    let (lo, hi) = (g(lo), g(hi));
    let want = CrispSubset::from_elements(4, expected.iter().copied()).expect("in range");
    let mismatch = (1..=100)
        .map(|k| Grade::new(k, 100).expect("grid"))
        .filter(|&s| lo < s && s <= hi)
        .map(|s| (s, mu.level_set(s).expect("positive level")))
        .find(|(_, u)| *u != want);
    let actual = match mismatch {
        Some((s, u)) => format!("{} at t={s}", u.display_with(t)),
        None => want.display_with(t),
    };
    golden(format!("U({name};t) for {lo}<t≤{hi}"), want.display_with(t), actual)
}

pub fn worked_example() -> ExampleBundle {
    let t = samples::example_table();
    let mu = FuzzySubset::from_fractions(10, &[3, 2, 6, 3]).expect("grades in range");
    let nu = FuzzySubset::from_fractions(10, &[4, 3, 4, 5]).expect("grades in range");
    let mut checks = Vec::new();

    let mut ok_triples = 0;
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                if t.mul(t.mul(a, b), c) == t.mul(t.mul(c, b), a) {
                    ok_triples += 1;
                }
            }
        }
    }
    checks.push(golden("left invertive triples", 64, ok_triples));
    checks.push(golden("left identities", "none", {
        let ids = laws::left_identities(&t);
        if ids.is_empty() {
            "none".to_string()
        } else {
            format!("{ids:?}")
        }
    }));

    let four = 3;
    let prod = compose(&t, &mu, &nu).expect("same carrier");
    let meet = pointwise_lattice(LatticeOp::Meet, &mu, &nu).expect("same carrier");
    let mut minima: Vec<Grade> = Vec::new();
    for y in 0..4 {
        for z in 0..4 {
            if t.mul(y, z) == four {
                minima.push(mu.at(y).min(nu.at(z)));
            }
        }
    }
    minima.sort();
    minima.dedup();
    let minima: Vec<String> = minima.iter().map(Grade::to_string).collect();
    // row 2 never produces 4, so 1/5 does not occur among the minima
    checks.push(golden("factorization minima at 4", "3/10 2/5 1/2", minima.join(" ")));
    checks.push(golden("(μ∘ν)(4)", "1/2", prod.at(four)));
    checks.push(golden("(μ∧ν)(4)", "3/10", meet.at(four)));
    checks.push(golden("product not ≤ meet", true, !prod.le(&meet)));

    checks.push(band(&t, "μ", &mu, "0", "1/5", &[0, 1, 2, 3]));
    checks.push(band(&t, "μ", &mu, "1/5", "3/10", &[0, 2, 3]));
    checks.push(band(&t, "μ", &mu, "3/10", "3/5", &[2]));
    checks.push(band(&t, "μ", &mu, "3/5", "1", &[]));
    checks.push(band(&t, "ν", &nu, "0", "3/10", &[0, 1, 2, 3]));
    checks.push(band(&t, "ν", &nu, "3/10", "2/5", &[0, 2, 3]));
    checks.push(band(&t, "ν", &nu, "2/5", "1/2", &[3]));
    checks.push(band(&t, "ν", &nu, "3/5", "1", &[]));

    let th = Thresholds::new(Grade::ZERO, g("3/10")).expect("γ < δ");
    for (name, f) in [("μ", &mu), ("ν", &nu)] {
        for kind in [IdealKind::LeftIdeal, IdealKind::RightIdeal] {
            let v = check_inequality_form(kind, &t, f, &th).expect("same carrier");
            checks.push(golden(format!("{name} {kind} at {th}"), true, v.verdict));
        }
    }

    ExampleBundle {
        table: t,
        mu,
        nu,
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_golden_value_matches() {
        let b = worked_example();
        for c in &b.checks {
            assert!(c.ok, "{}: expected {}, got {}", c.name, c.expected, c.actual);
        }
        assert_eq!(b.checks.len(), 18);
    }

    #[test]
    fn band_detects_mismatch() {
        let t = samples::example_table();
        let mu = FuzzySubset::from_fractions(10, &[3, 2, 6, 3]).unwrap();
        let c = band(&t, "μ", &mu, "1/5", "2/5", &[0, 2, 3]);
        assert!(!c.ok);
        assert!(c.actual.contains("t=31/100"));
    }
}
