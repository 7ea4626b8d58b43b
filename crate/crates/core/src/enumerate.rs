//! Exhaustive generation of LA-semigroup tables of small order.
//!
//! Cells are filled in row-major order with values in ascending order. After
//! every assignment the left invertive law is propagated: whenever `ab`,
//! `(ab)c` and `cb` are known, the cell `(cb)a` is forced to `(ab)c`. A
//! clash prunes the branch.

use std::collections::BTreeMap;

use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

use crate::laws;
use crate::magma::CayleyTable;

/// Orders above this are refused; the search space explodes long before.
pub const MAX_ENUM_ORDER: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("order must be between 1 and {max}, got {order}")]
    Order { order: usize, max: usize },
    #[error("cell budget must be positive")]
    ZeroBudget,
    #[error("cell budget of {budget} exhausted after {progress}")]
    BudgetExhausted { budget: u64, progress: EnumProgress },
}

/// How far a search got before it stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EnumProgress {
    pub nodes: u64,
    pub accepted: usize,
}

impl std::fmt::Display for EnumProgress {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} nodes ({} tables accepted)", self.nodes, self.accepted)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct EnumFilter {
    pub regular: bool,
    pub intra_regular: bool,
    pub weakly_regular: bool,
}

impl EnumFilter {
    pub fn accepts(&self, t: &CayleyTable) -> bool {
        (!self.regular || laws::is_regular(t))
            && (!self.intra_regular || laws::is_intra_regular(t))
            && (!self.weakly_regular || laws::is_weakly_regular(t))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnumSpec {
    pub order: usize,
    pub require_left_identity: bool,
    pub filter: EnumFilter,
    pub isomorph_reject: bool,
    /// Maximum number of cell assignments tried.
    pub cell_budget: Option<u64>,
}

impl EnumSpec {
    /// All tables of `order`, one per isomorphism class, no budget.
    pub fn new(order: usize) -> Self {
        EnumSpec {
            order,
            require_left_identity: false,
            filter: EnumFilter::default(),
            isomorph_reject: true,
            cell_budget: None,
        }
    }

    pub fn raw(mut self) -> Self {
        self.isomorph_reject = false;
        self
    }

    pub fn left_identity(mut self) -> Self {
        self.require_left_identity = true;
        self
    }

    pub fn with_filter(mut self, filter: EnumFilter) -> Self {
        self.filter = filter;
        self
    }

    pub fn validate(&self) -> Result<(), EnumError> {
        if self.order == 0 || self.order > MAX_ENUM_ORDER {
            return Err(EnumError::Order {
                order: self.order,
                max: MAX_ENUM_ORDER,
            });
        }
        if self.cell_budget == Some(0) {
            return Err(EnumError::ZeroBudget);
        }
        Ok(())
    }

    fn accepts(&self, t: &CayleyTable) -> bool {
        (!self.require_left_identity || !laws::left_identities(t).is_empty()) && self.filter.accepts(t)
    }
}

/// Result of a completed search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    /// Raw tables in lexicographic order, or canonical representatives in
    /// ascending key order when isomorphs are rejected.
    pub tables: Vec<CayleyTable>,
    /// Number of accepted labelled tables.
    pub raw_count: usize,
    pub nodes: u64,
}

/// Lexicographically least row-major table over all relabelings.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey(pub Vec<u8>);

pub fn canonical_form(t: &CayleyTable) -> CayleyTable {
    let n = t.order();
    (0..n)
        .permutations(n)
        .map(|p| t.relabel(&p))
        .min_by(|a, b| a.cells().cmp(b.cells()))
        .expect("at least one permutation")
}

pub fn canonical_key(t: &CayleyTable) -> CanonicalKey {
    CanonicalKey(canonical_form(t).cells().to_vec())
}

const UNSET: u8 = u8::MAX;

struct Search<'a> {
    spec: &'a EnumSpec,
    n: usize,
    cells: Vec<u8>,
    trail: Vec<usize>,
    nodes: u64,
    raw: Vec<CayleyTable>,
    raw_count: usize,
    classes: BTreeMap<CanonicalKey, CayleyTable>,
}

impl<'a> Search<'a> {
    fn new(spec: &'a EnumSpec) -> Self {
        let n = spec.order;
        Search {
            spec,
            n,
            cells: vec![UNSET; n * n],
            trail: Vec::new(),
            nodes: 0,
            raw: Vec::new(),
            raw_count: 0,
            classes: BTreeMap::new(),
        }
    }

    fn progress(&self) -> EnumProgress {
        EnumProgress {
            nodes: self.nodes,
            accepted: self.raw_count,
        }
    }

    fn set(&mut self, idx: usize, v: u8) {
        self.cells[idx] = v;
        self.trail.push(idx);
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let idx = self.trail.pop().expect("non-empty trail");
            self.cells[idx] = UNSET;
        }
    }

    /// Forces cells implied by the law until nothing changes. Returns false
    /// on a contradiction.
    fn propagate(&mut self) -> bool {
        let n = self.n;
        loop {
            let mut changed = false;
            for a in 0..n {
                for b in 0..n {
                    let ab = self.cells[a * n + b];
                    if ab == UNSET {
                        continue;
                    }
                    for c in 0..n {
                        let abc = self.cells[ab as usize * n + c];
                        let cb = self.cells[c * n + b];
                        if abc == UNSET || cb == UNSET {
                            continue;
                        }
                        let idx = cb as usize * n + a;
                        match self.cells[idx] {
                            UNSET => {
                                self.set(idx, abc);
                                changed = true;
                            }
                            v if v != abc => return false,
                            _ => {}
                        }
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn leaf(&mut self) {
        let t = CayleyTable::from_cells_unchecked(self.n, self.cells.clone());
        debug_assert!(laws::is_la_semigroup(&t));
        if !self.spec.accepts(&t) {
            return;
        }
        self.raw_count += 1;
        if self.spec.isomorph_reject {
            let form = canonical_form(&t);
            self.classes.entry(CanonicalKey(form.cells().to_vec())).or_insert(form);
        } else {
            self.raw.push(t);
        }
    }

    fn run(&mut self, pos: usize) -> Result<(), EnumError> {
        let n = self.n;
        let Some(idx) = (pos..n * n).find(|&i| self.cells[i] == UNSET) else {
            self.leaf();
            return Ok(());
        };
        for v in 0..n as u8 {
            self.nodes += 1;
            if let Some(budget) = self.spec.cell_budget {
                if self.nodes > budget {
                    return Err(EnumError::BudgetExhausted {
                        budget,
                        progress: self.progress(),
                    });
                }
            }
            let mark = self.trail.len();
            self.set(idx, v);
            if self.propagate() {
                self.run(idx + 1)?;
            }
            self.undo_to(mark);
        }
        Ok(())
    }
}

pub fn enumerate(spec: &EnumSpec) -> Result<Enumeration, EnumError> {
    spec.validate()?;
    let mut s = Search::new(spec);
    s.run(0)?;
    Ok(finish(spec, vec![s]))
}

fn finish(spec: &EnumSpec, parts: Vec<Search<'_>>) -> Enumeration {
    let nodes = parts.iter().map(|s| s.nodes).sum();
    let raw_count = parts.iter().map(|s| s.raw_count).sum();
    let tables = if spec.isomorph_reject {
        let mut all = BTreeMap::new();
        for s in parts {
            all.extend(s.classes);
        }
        all.into_values().collect()
    } else {
        parts.into_iter().flat_map(|s| s.raw).collect()
    };
    Enumeration {
        tables,
        raw_count,
        nodes,
    }
}

/// Same output as [`enumerate`], with the tree split on the value of the
/// first cell and explored by up to `workers` threads. The cell budget is
/// applied per branch.
pub fn enumerate_parallel(spec: &EnumSpec, workers: usize) -> Result<Enumeration, EnumError> {
    spec.validate()?;
    if workers <= 1 || spec.order == 1 {
        return enumerate(spec);
    }
    let n = spec.order;
    let branches: Vec<u8> = (0..n as u8).collect();
    let results: Vec<Result<Search<'_>, EnumError>> = std::thread::scope(|scope| {
        let chunks: Vec<Vec<u8>> = (0..workers.min(n))
            .map(|w| branches.iter().copied().skip(w).step_by(workers.min(n)).collect())
            .collect();
        let handles: Vec<_> = chunks
            .into_iter()
            .map(|chunk| {
                scope.spawn(move || {
                    chunk
                        .into_iter()
                        .map(|v| {
                            let mut s = Search::new(spec);
                            s.nodes = 1;
                            s.set(0, v);
                            if s.propagate() {
                                s.run(1)?;
                            }
                            Ok((v, s))
                        })
                        .collect::<Result<Vec<_>, EnumError>>()
                })
            })
            .collect();
        let mut out: Vec<(u8, Search<'_>)> = Vec::new();
        let mut errors = Vec::new();
        for h in handles {
            match h.join().expect("enumeration worker panicked") {
                Ok(v) => out.extend(v),
                Err(e) => errors.push(e),
            }
        }
        if let Some(e) = errors.into_iter().next() {
            return vec![Err(e)];
        }
        out.sort_by_key(|(v, _)| *v);
        out.into_iter().map(|(_, s)| Ok(s)).collect()
    });
    let parts = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(finish(spec, parts))
}

/// All LA-semigroups of orders `1..=max_order`, one per isomorphism class,
/// ordered by order and then by canonical key.
pub fn up_to_iso(max_order: usize) -> Result<Vec<CayleyTable>, EnumError> {
    let mut out = Vec::new();
    for n in 1..=max_order {
        out.extend(enumerate(&EnumSpec::new(n))?.tables);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::magma::samples;

    #[test]
    fn order_one() {
        let e = enumerate(&EnumSpec::new(1).raw()).unwrap();
        assert_eq!(e.tables.len(), 1);
        assert_eq!(e.raw_count, 1);
    }

    #[test]
    fn order_two_counts() {
        let raw = enumerate(&EnumSpec::new(2).raw()).unwrap();
        let iso = enumerate(&EnumSpec::new(2)).unwrap();
        assert_eq!(raw.raw_count, raw.tables.len());
        assert_eq!(iso.raw_count, raw.tables.len());
        assert!(iso.tables.len() < raw.tables.len());
        assert!(raw.tables.windows(2).all(|w| w[0].cells() < w[1].cells()));
    }

    #[test]
    fn keys_are_sorted_and_distinct() {
        let iso = enumerate(&EnumSpec::new(3)).unwrap();
        let keys: Vec<_> = iso.tables.iter().map(canonical_key).collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
        for t in &iso.tables {
            assert_eq!(canonical_form(t), *t);
        }
    }

    #[test]
    fn z3_in_filtered_stream() {
        let spec = EnumSpec::new(3).left_identity().with_filter(EnumFilter {
            regular: true,
            weakly_regular: true,
            ..Default::default()
        });
        let e = enumerate(&spec).unwrap();
        let key = canonical_key(&samples::cyclic(3));
        assert!(e.tables.iter().any(|t| canonical_key(t) == key));
    }

    #[test]
    fn constant_key_is_its_bytes() {
        let t = samples::constant(3);
        assert_eq!(canonical_key(&t).0, t.cells().to_vec());
        assert_ne!(canonical_key(&samples::constant(2)), canonical_key(&samples::cyclic(2)));
    }

    #[test]
    fn budget_is_enforced() {
        let mut spec = EnumSpec::new(4);
        spec.cell_budget = Some(50);
        match enumerate(&spec) {
            Err(EnumError::BudgetExhausted { budget: 50, progress }) => assert_eq!(progress.nodes, 51),
            other => panic!("unexpected {other:?}"),
        }
        spec.cell_budget = Some(0);
        assert_eq!(enumerate(&spec), Err(EnumError::ZeroBudget));
        assert!(enumerate(&EnumSpec::new(0)).is_err());
        assert!(enumerate(&EnumSpec::new(7)).is_err());
    }

    #[test]
    fn parallel_matches_sequential() {
        for n in 1..=3 {
            for iso in [false, true] {
                let mut spec = EnumSpec::new(n);
                spec.isomorph_reject = iso;
                let a = enumerate(&spec).unwrap();
                let b = enumerate_parallel(&spec, 3).unwrap();
                assert_eq!(a.tables, b.tables);
                assert_eq!(a.raw_count, b.raw_count);
            }
        }
    }
}
