//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the library's own algebra beyond constructing values.
#![allow(dead_code)]

use agfuzz::{CayleyTable, CrispSubset, FuzzySubset, Grade, Thresholds};

pub fn g(s: &str) -> Grade {
    s.parse().expect("grade literal")
}

pub fn th(gamma: &str, delta: &str) -> Thresholds {
    Thresholds::new(g(gamma), g(delta)).expect("γ < δ")
}

/// `(μ∘ν)(x)` straight from the definition: sup over all `x = yz`, else 0.
pub fn naive_compose(t: &CayleyTable, mu: &FuzzySubset, nu: &FuzzySubset) -> Vec<Grade> {
    let n = t.order();
    (0..n)
        .map(|x| {
            let mut best = Grade::ZERO;
            for y in 0..n {
                for z in 0..n {
                    if t.mul(y, z) == x {
                        best = best.max(mu.at(y).min(nu.at(z)));
                    }
                }
            }
            best
        })
        .collect()
}

pub fn factorizable(t: &CayleyTable, x: usize) -> bool {
    (0..t.order()).any(|y| (0..t.order()).any(|z| t.mul(y, z) == x))
}

/// `(g ∨ γ) ∧ δ`
pub fn clamp(v: Grade, th: &Thresholds) -> Grade {
    v.max(th.gamma()).min(th.delta())
}

pub fn clamp_all(v: &[Grade], th: &Thresholds) -> Vec<Grade> {
    v.iter().map(|&x| clamp(x, th)).collect()
}

pub fn star(mu: &FuzzySubset, th: &Thresholds) -> Vec<Grade> {
    clamp_all(mu.grades(), th)
}

pub fn naive_product(t: &CayleyTable, a: &CrispSubset, b: &CrispSubset) -> CrispSubset {
    let mut out = CrispSubset::empty(t.order());
    for x in a.iter() {
        for y in b.iter() {
            out.insert(t.mul(x, y));
        }
    }
    out
}

pub fn chi(a: &CrispSubset) -> Vec<Grade> {
    (0..a.order())
        .map(|x| if a.contains(x) { Grade::ONE } else { Grade::ZERO })
        .collect()
}

/// Every grade vector of length `n` on `{0, 1/d, …, 1}`.
pub fn grid(n: usize, d: u64) -> Vec<FuzzySubset> {
    let mut out = Vec::new();
    let mut digits = vec![0u64; n];
    loop {
        out.push(FuzzySubset::new(
            digits.iter().map(|&k| Grade::new(k, d).unwrap()).collect(),
        ));
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if digits[i] < d {
                digits[i] += 1;
                break;
            }
            digits[i] = 0;
        }
    }
}

/// All pairs `γ < δ` from `{0, 1/d, …, 1}`.
pub fn threshold_grid(d: u64) -> Vec<Thresholds> {
    let mut out = Vec::new();
    for a in 0..=d {
        for b in a + 1..=d {
            out.push(Thresholds::new(Grade::new(a, d).unwrap(), Grade::new(b, d).unwrap()).unwrap());
        }
    }
    out
}

pub fn all_subsets(n: usize) -> Vec<CrispSubset> {
    (1u64..1 << n).map(|m| CrispSubset::from_mask(n, m).unwrap()).collect()
}

pub fn is_left_invertive(t: &CayleyTable) -> bool {
    let n = t.order();
    (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| t.mul(t.mul(a, b), c) == t.mul(t.mul(c, b), a))))
}

/// Every `n×n` table over `0..n` that satisfies the left invertive law,
/// found by scanning all `n^(n²)` tables.
pub fn naive_la_tables(n: usize) -> Vec<CayleyTable> {
    let cells = n * n;
    let mut digits = vec![0usize; cells];
    let mut out = Vec::new();
    loop {
        let ok = (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|c| {
                    let ab = digits[a * n + b];
                    let cb = digits[c * n + b];
                    digits[ab * n + c] == digits[cb * n + a]
                })
            })
        });
        if ok {
            let rows = digits.chunks(n).map(|r| r.to_vec()).collect();
            out.push(CayleyTable::from_rows(rows).unwrap());
        }
        let mut i = cells;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if digits[i] + 1 < n {
                digits[i] += 1;
                break;
            }
            digits[i] = 0;
        }
    }
}

/// Classical fuzzy predicates written out from their definitions.
pub mod classical {
    use super::*;
    use agfuzz::IdealKind;

    fn all2(n: usize, f: impl Fn(usize, usize) -> bool) -> bool {
        (0..n).all(|x| (0..n).all(|y| f(x, y)))
    }

    pub fn holds(kind: IdealKind, t: &CayleyTable, mu: &FuzzySubset) -> bool {
        let n = t.order();
        let m = |x: usize| mu.at(x);
        let sub = all2(n, |x, y| m(t.mul(x, y)) >= m(x).min(m(y)));
        let left = all2(n, |x, y| m(t.mul(x, y)) >= m(y));
        let right = all2(n, |x, y| m(t.mul(x, y)) >= m(x));
        let genbi = (0..n).all(|x| all2(n, |y, z| m(t.mul(t.mul(x, y), z)) >= m(x).min(m(z))));
        match kind {
            IdealKind::LaSubsemigroup => sub,
            IdealKind::LeftIdeal => left,
            IdealKind::RightIdeal => right,
            IdealKind::TwoSidedIdeal => left && right,
            IdealKind::GeneralizedBiIdeal => genbi,
            IdealKind::BiIdeal => sub && genbi,
            // μ((xa)y) ≥ μ(a)
            IdealKind::InteriorIdeal => sub && (0..n).all(|x| all2(n, |a, y| m(t.mul(t.mul(x, a), y)) >= m(a))),
            // μ(x) ≥ (μ∘1)(x) ∧ (1∘μ)(x)
            IdealKind::QuasiIdeal => {
                let one = FuzzySubset::one(n);
                let l = naive_compose(t, mu, &one);
                let r = naive_compose(t, &one, mu);
                (0..n).all(|x| m(x) >= l[x].min(r[x]))
            }
        }
    }
}
