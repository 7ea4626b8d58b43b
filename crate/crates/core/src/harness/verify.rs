//! Running statements over a scope of structures, thresholds and samples.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::catalog::{self, Body, CharClaim, CrispClaim, Hypotheses, Identity, Property, Role, Statement};
use super::expr::{Machine, Program, Scale, VAR_NAMES};
use crate::crisp::{self, predicates, CrispSubset};
use crate::enumerate::{self, EnumError};
use crate::fuzzy::{self, FuzzySubset};
use crate::grade::{Grade, Thresholds};
use crate::ideals::{self, IdealKind};
use crate::magma::CayleyTable;
use crate::sample::{sample_fuzzy, SampleError, SampleSpec, SplitMix64};

pub const DEFAULT_SEED: u64 = 0x00C0_FFEE_5EED;
pub const DEFAULT_GRID: u64 = 4;
pub const DEFAULT_MAX_ORDER: usize = 4;
/// Largest `(d+1)^n` that is enumerated in full; above it the grid is
/// sampled with this many subsets.
pub const EXHAUSTIVE_GRID_LIMIT: u64 = 10_000;
/// Tuples of fuzzy subsets are enumerated in full when the product of the
/// pool sizes is at most this, and sampled otherwise.
pub const DEFAULT_TUPLE_LIMIT: u64 = 200_000;
pub const DEFAULT_TUPLE_SAMPLES: u64 = 20_000;
/// Environment variable read for the default worker count.
pub const WORKERS_ENV: &str = "AGFUZZ_WORKERS";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("unknown theorem id {id:?}; known ids: {}", known.join(", "))]
    UnknownTheorem { id: String, known: Vec<String> },
    #[error("{statement}: structure #{index} does not satisfy the hypothesis: {missing}")]
    HypothesisMismatch {
        statement: String,
        index: usize,
        missing: String,
    },
    #[error("budget of {budget} evaluations exceeded: the scope needs {planned}")]
    BudgetExceeded { planned: u64, budget: u64 },
    #[error("thresholds {0} are not representable on the sampling grid")]
    Scale(Thresholds),
    #[error("scope contains no thresholds")]
    NoThresholds,
    #[error(transparent)]
    Enumeration(#[from] EnumError),
    #[error(transparent)]
    Sample(#[from] SampleError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StructureSource {
    /// All LA-semigroups of orders `1..=n`, one per isomorphism class.
    UpTo(usize),
    Explicit(Vec<CayleyTable>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FuzzySource {
    /// Every grade vector on the `d`-grid when there are at most
    /// [`EXHAUSTIVE_GRID_LIMIT`] of them, else that many seeded draws.
    Grid(u64),
    Random { den: u64, seed: u64, count: u64 },
    /// A fixed spot set, used in full. Subsets are only paired with
    /// structures of the same order.
    Explicit(Vec<FuzzySubset>),
}

fn lcm(a: u64, b: u64) -> u64 {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

impl FuzzySource {
    /// Common denominator of every grade the source can produce.
    pub fn den(&self) -> u64 {
        match self {
            FuzzySource::Grid(d) => *d,
            FuzzySource::Random { den, .. } => *den,
            FuzzySource::Explicit(subsets) => subsets
                .iter()
                .flat_map(|m| m.grades().iter().map(|g| g.denom()))
                .fold(1, lcm),
        }
    }

    /// The sampling stream for carrier `n`; `None` for a spot set.
    pub fn spec(&self, n: usize, seed: u64) -> Option<SampleSpec> {
        match *self {
            FuzzySource::Grid(d) => {
                let spec = SampleSpec::exhaustive(n, d);
                Some(match spec.grid_size() {
                    Some(size) if size <= EXHAUSTIVE_GRID_LIMIT => spec,
                    _ => SampleSpec::random(n, d, seed ^ n as u64, EXHAUSTIVE_GRID_LIMIT),
                })
            }
            FuzzySource::Random { den, seed, count } => Some(SampleSpec::random(n, den, seed, count)),
            FuzzySource::Explicit(_) => None,
        }
    }

    fn samples(&self, n: usize, seed: u64) -> Result<(Vec<FuzzySubset>, bool), HarnessError> {
        match self {
            FuzzySource::Explicit(subsets) => Ok((subsets.iter().filter(|m| m.order() == n).cloned().collect(), true)),
            _ => {
                let spec = self.spec(n, seed).expect("sampled source");
                Ok((sample_fuzzy(&spec)?.collect(), spec.is_exhaustive()))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scope {
    pub structures: StructureSource,
    pub fuzzy: FuzzySource,
    pub thresholds: Vec<Thresholds>,
    pub tuple_limit: u64,
    pub tuple_samples: u64,
    pub seed: u64,
    /// Cap on planned evaluations; exceeding it is an error, never a
    /// partial verdict.
    pub budget: Option<u64>,
    /// Use the hypotheses as stated instead of those the proofs need.
    pub stated_hypotheses: bool,
    pub workers: usize,
}

impl Default for Scope {
    fn default() -> Self {
        Scope {
            structures: StructureSource::UpTo(DEFAULT_MAX_ORDER),
            fuzzy: FuzzySource::Grid(DEFAULT_GRID),
            thresholds: Thresholds::grid(DEFAULT_GRID),
            tuple_limit: DEFAULT_TUPLE_LIMIT,
            tuple_samples: DEFAULT_TUPLE_SAMPLES,
            seed: DEFAULT_SEED,
            budget: None,
            stated_hypotheses: false,
            workers: default_workers(),
        }
    }
}

/// Worker count from [`WORKERS_ENV`], else 1.
pub fn default_workers() -> usize {
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .filter(|&w| w > 0)
        .unwrap_or(1)
}

impl Scope {
    pub fn up_to(n: usize) -> Self {
        Scope {
            structures: StructureSource::UpTo(n),
            ..Scope::default()
        }
    }

    pub fn explicit(tables: Vec<CayleyTable>) -> Self {
        Scope {
            structures: StructureSource::Explicit(tables),
            ..Scope::default()
        }
    }

    pub fn digest(&self) -> String {
        let structures = match &self.structures {
            StructureSource::UpTo(n) => format!("orders 1..={n} up to isomorphism"),
            StructureSource::Explicit(ts) => format!("{} explicit table(s)", ts.len()),
        };
        let fuzzy = match &self.fuzzy {
            FuzzySource::Grid(d) => format!("grid d={d}"),
            FuzzySource::Random { den, seed, count } => format!("random d={den} seed={seed} count={count}"),
            FuzzySource::Explicit(m) => format!("{} explicit fuzzy subset(s)", m.len()),
        };
        format!(
            "{structures}; {fuzzy}; {} threshold pair(s); tuples exhaustive up to {}, else {} draws; seed {}{}",
            self.thresholds.len(),
            self.tuple_limit,
            self.tuple_samples,
            self.seed,
            if self.stated_hypotheses { "; stated hypotheses" } else { "" }
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    ConfirmedExhaustive,
    ConfirmedSampled,
    Refuted,
}

impl Status {
    fn merge(self, other: Status) -> Status {
        self.max(other)
    }

    pub fn name(self) -> &'static str {
        match self {
            Status::ConfirmedExhaustive => "confirmed_exhaustive",
            Status::ConfirmedSampled => "confirmed_sampled",
            Status::Refuted => "refuted",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// The structural property holds (or there is none) and the claim fails.
    Forward,
    /// The structural property fails, yet no witness refutes the claim.
    Converse,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedFuzzy {
    pub name: String,
    pub subset: FuzzySubset,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedCrisp {
    pub name: String,
    pub subset: CrispSubset,
}

/// Everything needed to reproduce a failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub statement: String,
    pub direction: Direction,
    pub table: CayleyTable,
    pub thresholds: Option<Thresholds>,
    pub fuzzy: Vec<NamedFuzzy>,
    pub crisp: Vec<NamedCrisp>,
    /// The failing element (or element tuple).
    pub elements: Vec<usize>,
    pub lhs: Option<Grade>,
    pub rhs: Option<Grade>,
    /// The relation that should have held.
    pub expected: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coverage {
    /// How the fuzzy quantifiers were covered.
    pub fuzzy: String,
    /// How the crisp quantifiers were covered.
    pub crisp: String,
    pub tuples_checked: u64,
    /// Size of the full tuple space over the same pools (saturating).
    pub tuples_total: u64,
    pub thresholds: usize,
    pub forward_structures: usize,
    pub converse_structures: usize,
    /// Restriction used for converse directions, if any.
    pub converse_witnesses: Option<String>,
    pub hypotheses: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariantVerdict {
    pub name: String,
    pub label: Option<String>,
    pub status: Status,
    pub samples: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremVerdict {
    pub id: String,
    pub status: Status,
    pub structures: usize,
    pub samples: u64,
    pub coverage: Coverage,
    pub counterexample: Option<Counterexample>,
    pub scope: String,
    pub variants: Vec<VariantVerdict>,
}

impl TheoremVerdict {
    pub fn is_confirmed(&self) -> bool {
        self.status != Status::Refuted
    }
}

pub fn lookup(id: &str) -> Result<Vec<Statement>, HarnessError> {
    catalog::lookup(id).ok_or_else(|| HarnessError::UnknownTheorem {
        id: id.to_string(),
        known: catalog::FAMILIES.iter().map(|s| s.to_string()).collect(),
    })
}

/// Verifies every variant of a family (or one variant) over `scope`.
pub fn verify(id: &str, scope: &Scope) -> Result<TheoremVerdict, HarnessError> {
    let statements = lookup(id)?;
    verify_statements(id, &statements, scope)
}

pub fn verify_statements(id: &str, statements: &[Statement], scope: &Scope) -> Result<TheoremVerdict, HarnessError> {
    let mut runs = Vec::new();
    for st in statements {
        runs.push(verify_statement(st, scope)?);
    }
    let status = runs.iter().map(|r| r.status).fold(Status::ConfirmedExhaustive, Status::merge);
    let first_refuted = runs.iter().find(|r| r.counterexample.is_some());
    let merged = |f: fn(&StatementRun) -> u64| runs.iter().map(f).sum::<u64>();
    let any = |f: fn(&Coverage) -> bool| runs.iter().any(|r| f(&r.coverage));
    let first = &runs[0].coverage;
    let coverage = Coverage {
        fuzzy: if any(|c| c.fuzzy.starts_with("sampled")) {
            runs.iter()
                .map(|r| r.coverage.fuzzy.clone())
                .find(|f| f.starts_with("sampled"))
                .expect("some sampled")
        } else {
            first.fuzzy.clone()
        },
        crisp: first.crisp.clone(),
        tuples_checked: merged(|r| r.coverage.tuples_checked),
        tuples_total: runs.iter().fold(0u64, |a, r| a.saturating_add(r.coverage.tuples_total)),
        thresholds: first.thresholds,
        forward_structures: runs.iter().map(|r| r.coverage.forward_structures).max().unwrap_or(0),
        converse_structures: runs.iter().map(|r| r.coverage.converse_structures).max().unwrap_or(0),
        converse_witnesses: first.converse_witnesses.clone(),
        hypotheses: first.hypotheses.clone(),
    };
    Ok(TheoremVerdict {
        id: id.to_string(),
        status,
        structures: runs.iter().map(|r| r.structures).max().unwrap_or(0),
        samples: merged(|r| r.samples),
        coverage,
        counterexample: first_refuted.and_then(|r| r.counterexample.clone()),
        scope: scope.digest(),
        variants: statements
            .iter()
            .zip(&runs)
            .map(|(s, r)| VariantVerdict {
                name: s.name(),
                label: s.label.map(str::to_string),
                status: r.status,
                samples: r.samples,
            })
            .collect(),
    })
}

/// Outcome of one statement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatementRun {
    pub status: Status,
    pub structures: usize,
    pub samples: u64,
    pub coverage: Coverage,
    pub counterexample: Option<Counterexample>,
}

pub(crate) fn scope_structures(st: &Statement, scope: &Scope) -> Result<Vec<CayleyTable>, HarnessError> {
    let hyp = if scope.stated_hypotheses {
        st.stated
    } else {
        st.hypotheses
    };
    match &scope.structures {
        StructureSource::UpTo(n) => Ok(enumerate::up_to_iso(*n)?
            .into_iter()
            .filter(|t| hyp.missing(t).is_none())
            .collect()),
        StructureSource::Explicit(ts) => {
            for (index, t) in ts.iter().enumerate() {
                if let Some(missing) = hyp.missing(t) {
                    return Err(HarnessError::HypothesisMismatch {
                        statement: st.name(),
                        index,
                        missing: missing.to_string(),
                    });
                }
            }
            Ok(ts.clone())
        }
    }
}

/// Which candidates a tuple pool indexes into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Candidates {
    Samples,
    Chars,
}

#[derive(Debug)]
struct Unit {
    th_index: usize,
    direction: Direction,
    candidates: Candidates,
    pools: Vec<Vec<usize>>,
    exhaustive: bool,
    planned: u64,
    total: u64,
}

struct StructurePlan {
    samples: Vec<FuzzySubset>,
    grid_exhaustive: bool,
    /// `χ*_A` for every non-empty `A`, per threshold pair.
    chars: Vec<Vec<FuzzySubset>>,
    units: Vec<Unit>,
    converse: bool,
    crisp_planned: u64,
}

fn pool_for(role: Role, t: &CayleyTable, cands: &[FuzzySubset], th: &Thresholds) -> Vec<usize> {
    match role {
        Role::Any => (0..cands.len()).collect(),
        Role::Kind(k) => (0..cands.len()).filter(|&i| ideals::passes(k, t, &cands[i], th)).collect(),
    }
}

fn tuple_unit(
    scope: &Scope,
    th_index: usize,
    direction: Direction,
    candidates: Candidates,
    pools: Vec<Vec<usize>>,
    force_exhaustive: bool,
) -> Unit {
    let total = pools.iter().fold(1u64, |acc, p| acc.saturating_mul(p.len() as u64));
    let exhaustive = force_exhaustive || total <= scope.tuple_limit;
    let planned = if exhaustive { total } else { scope.tuple_samples };
    Unit {
        th_index,
        direction,
        candidates,
        pools,
        exhaustive,
        planned,
        total,
    }
}

fn all_chars(n: usize, th: &Thresholds) -> Vec<FuzzySubset> {
    CrispSubset::all_nonempty(n)
        .map(|a| FuzzySubset::characteristic(&a).star(th))
        .collect()
}

fn plan_structure(st: &Statement, scope: &Scope, t: &CayleyTable) -> Result<StructurePlan, HarnessError> {
    let n = t.order();
    let needs_samples = matches!(
        st.body,
        Body::Implication { .. } | Body::ProductIdeal | Body::Identity(_) | Body::StarProjection(_)
    );
    let (samples, grid_exhaustive) = if needs_samples {
        scope.fuzzy.samples(n, scope.seed)?
    } else {
        (Vec::new(), true)
    };
    let mut plan = StructurePlan {
        samples,
        grid_exhaustive,
        chars: Vec::new(),
        units: Vec::new(),
        converse: false,
        crisp_planned: 0,
    };
    let nonempty = (1u64 << n) - 1;
    match &st.body {
        Body::Crisp { .. } => plan.crisp_planned = nonempty * nonempty,
        Body::CharIdentity(_) | Body::CharIdeal(_) => {}
        Body::Implication { premise, .. } => {
            for (k, th) in scope.thresholds.iter().enumerate() {
                let pool = pool_for(Role::Kind(*premise), t, &plan.samples, th);
                plan.units
                    .push(tuple_unit(scope, k, Direction::Forward, Candidates::Samples, vec![pool], true));
            }
        }
        Body::StarProjection(_) => {
            for (k, th) in scope.thresholds.iter().enumerate() {
                let pool = pool_for(Role::Kind(IdealKind::LaSubsemigroup), t, &plan.samples, th);
                plan.units
                    .push(tuple_unit(scope, k, Direction::Forward, Candidates::Samples, vec![pool], true));
            }
        }
        Body::ProductIdeal => {
            for (k, th) in scope.thresholds.iter().enumerate() {
                let pools = vec![
                    pool_for(Role::Kind(IdealKind::LeftIdeal), t, &plan.samples, th),
                    pool_for(Role::Kind(IdealKind::RightIdeal), t, &plan.samples, th),
                ];
                plan.units
                    .push(tuple_unit(scope, k, Direction::Forward, Candidates::Samples, pools, false));
            }
        }
        Body::Identity(id) => {
            let forward = id.property.is_none_or(|p| p.holds(t));
            plan.converse = !forward;
            for (k, th) in scope.thresholds.iter().enumerate() {
                if forward {
                    let pools = id.roles.iter().map(|&r| pool_for(r, t, &plan.samples, th)).collect();
                    plan.units
                        .push(tuple_unit(scope, k, Direction::Forward, Candidates::Samples, pools, false));
                } else {
                    let chars = all_chars(n, th);
                    let pools = id.roles.iter().map(|&r| pool_for(r, t, &chars, th)).collect();
                    plan.chars.push(chars);
                    plan.units
                        .push(tuple_unit(scope, k, Direction::Converse, Candidates::Chars, pools, true));
                }
            }
        }
    }
    if let Body::CharIdentity(_) = st.body {
        plan.crisp_planned = nonempty * nonempty * scope.thresholds.len() as u64;
    }
    if let Body::CharIdeal(_) = st.body {
        plan.crisp_planned = nonempty * scope.thresholds.len() as u64;
    }
    Ok(plan)
}

impl StructurePlan {
    fn planned(&self) -> u64 {
        self.units.iter().map(|u| u.planned).sum::<u64>() + self.crisp_planned
    }
}

/// Per-structure outcome.
#[derive(Debug, Default)]
struct StructureResult {
    evaluated: u64,
    total: u64,
    exhaustive: bool,
    converse: bool,
    failure: Option<Counterexample>,
}

/// Visits tuples of pool indices in lexicographic order, or `samples`
/// seeded draws. Stops at the first tuple for which `check` reports a
/// failure. Returns the number of tuples visited.
fn run_tuples<F>(
    pools: &[Vec<usize>],
    exhaustive: bool,
    samples: u64,
    seed: u64,
    mut check: impl FnMut(&[usize]) -> Option<F>,
) -> (u64, Option<F>) {
    if pools.iter().any(|p| p.is_empty()) {
        return (0, None);
    }
    let k = pools.len();
    let mut tuple: Vec<usize> = pools.iter().map(|p| p[0]).collect();
    let mut visited = 0u64;
    if exhaustive {
        let mut idx = vec![0usize; k];
        loop {
            visited += 1;
            if let Some(f) = check(&tuple) {
                return (visited, Some(f));
            }
            let mut i = k;
            loop {
                if i == 0 {
                    return (visited, None);
                }
                i -= 1;
                idx[i] += 1;
                if idx[i] < pools[i].len() {
                    tuple[i] = pools[i][idx[i]];
                    break;
                }
                idx[i] = 0;
                tuple[i] = pools[i][0];
            }
        }
    } else {
        let mut rng = SplitMix64::new(seed);
        for _ in 0..samples {
            for (slot, p) in tuple.iter_mut().zip(pools) {
                *slot = p[rng.below(p.len() as u64) as usize];
            }
            visited += 1;
            if let Some(f) = check(&tuple) {
                return (visited, Some(f));
            }
        }
        (visited, None)
    }
}

fn unit_seed(scope: &Scope, structure: usize, th_index: usize) -> u64 {
    let mut r = SplitMix64::new(scope.seed ^ ((structure as u64) << 20) ^ th_index as u64);
    r.next_u64()
}

fn fuzzy_names(roles: usize) -> impl Iterator<Item = String> {
    VAR_NAMES.iter().take(roles).map(|s| s.to_string())
}

fn run_structure(st: &Statement, scope: &Scope, index: usize, t: &CayleyTable, plan: &StructurePlan) -> StructureResult {
    let mut res = StructureResult {
        exhaustive: plan.grid_exhaustive,
        converse: plan.converse,
        ..Default::default()
    };
    let name = st.name();
    let bundle = |direction, thresholds: Option<Thresholds>| Counterexample {
        statement: name.clone(),
        direction,
        table: t.clone(),
        thresholds,
        fuzzy: Vec::new(),
        crisp: Vec::new(),
        elements: Vec::new(),
        lhs: None,
        rhs: None,
        expected: String::new(),
    };
    match &st.body {
        Body::Crisp { property, claim } => {
            res.exhaustive = true;
            res.evaluated = plan.crisp_planned;
            res.total = plan.crisp_planned;
            let lhs = property.holds(t);
            let rhs = crisp_claim_witness(t, *claim);
            if lhs != rhs.is_none() {
                let mut b = bundle(
                    if lhs {
                        Direction::Forward
                    } else {
                        Direction::Converse
                    },
                    None,
                );
                b.expected = format!("S {} ⟺ claim", property.name());
                b.crisp = rhs.unwrap_or_default();
                res.failure = Some(b);
            }
        }
        Body::CharIdentity(claim) => {
            res.exhaustive = true;
            let n = t.order();
            'outer: for th in &scope.thresholds {
                for l in CrispSubset::all_nonempty(n) {
                    for r in CrispSubset::all_nonempty(n) {
                        res.evaluated += 1;
                        if let Some((x, lhs, rhs)) = char_identity_failure(t, *claim, &l, &r, th) {
                            let mut b = bundle(Direction::Forward, Some(*th));
                            b.crisp = vec![
                                NamedCrisp {
                                    name: "L".into(),
                                    subset: l,
                                },
                                NamedCrisp {
                                    name: "R".into(),
                                    subset: r,
                                },
                            ];
                            b.elements = vec![x];
                            b.lhs = Some(lhs);
                            b.rhs = Some(rhs);
                            b.expected = st.describe();
                            res.failure = Some(b);
                            break 'outer;
                        }
                    }
                }
            }
            res.total = plan.crisp_planned;
        }
        Body::CharIdeal(kind) => {
            res.exhaustive = true;
            'outer: for th in &scope.thresholds {
                for a in CrispSubset::all_nonempty(t.order()) {
                    res.evaluated += 1;
                    let crisp = crisp_kind(t, *kind, &a);
                    let fuzzy = ideals::passes(*kind, t, &FuzzySubset::characteristic(&a).star(th), th);
                    if crisp != fuzzy {
                        let mut b = bundle(Direction::Forward, Some(*th));
                        b.crisp = vec![NamedCrisp {
                            name: "A".into(),
                            subset: a,
                        }];
                        b.expected = st.describe();
                        res.failure = Some(b);
                        break 'outer;
                    }
                }
            }
            res.total = plan.crisp_planned;
        }
        _ => {
            for unit in &plan.units {
                let th = scope.thresholds[unit.th_index];
                let cands: &[FuzzySubset] = match unit.candidates {
                    Candidates::Samples => &plan.samples,
                    Candidates::Chars => {
                        let pos = plan.units.iter().take_while(|u| u.th_index != unit.th_index).count();
                        &plan.chars[pos]
                    }
                };
                res.exhaustive &= unit.exhaustive;
                res.total = res.total.saturating_add(unit.total);
                let seed = unit_seed(scope, index, unit.th_index);
                let (visited, failure) = run_unit(st, t, &th, unit, cands, seed, scope.tuple_samples);
                res.evaluated += visited;
                if let Some(mut b) = failure {
                    b.statement = name.clone();
                    res.failure = Some(b);
                    break;
                }
            }
        }
    }
    res
}

fn crisp_kind(t: &CayleyTable, kind: IdealKind, a: &CrispSubset) -> bool {
    match kind {
        IdealKind::LeftIdeal => predicates::is_left_ideal(t, a),
        IdealKind::RightIdeal => predicates::is_right_ideal(t, a),
        IdealKind::QuasiIdeal => predicates::is_quasi_ideal(t, a),
        other => crisp::classify_crisp(t, a)
            .map(|r| r.flag(other).holds)
            .unwrap_or(false),
    }
}

/// Witness subsets refuting the crisp claim, if any.
pub(crate) fn crisp_claim_witness(t: &CayleyTable, claim: CrispClaim) -> Option<Vec<NamedCrisp>> {
    let n = t.order();
    let full = CrispSubset::full(n);
    let named = |pairs: Vec<(&str, CrispSubset)>| {
        pairs
            .into_iter()
            .map(|(name, subset)| NamedCrisp {
                name: name.into(),
                subset,
            })
            .collect()
    };
    let lefts: Vec<CrispSubset> = CrispSubset::all_nonempty(n)
        .filter(|a| predicates::is_left_ideal(t, a))
        .collect();
    let rights: Vec<CrispSubset> = CrispSubset::all_nonempty(n)
        .filter(|a| predicates::is_right_ideal(t, a))
        .collect();
    let quasis = || CrispSubset::all_nonempty(n).filter(|a| predicates::is_quasi_ideal(t, a));
    match claim {
        CrispClaim::MeetIsProduct | CrispClaim::MeetInProduct | CrispClaim::MeetIsReversedProduct => {
            for l in &lefts {
                for r in &rights {
                    let meet = l.intersection(r);
                    let ok = match claim {
                        CrispClaim::MeetIsProduct => meet == crisp::product_unchecked(t, l, r),
                        CrispClaim::MeetInProduct => meet.is_subset(&crisp::product_unchecked(t, l, r)),
                        _ => meet == crisp::product_unchecked(t, r, l),
                    };
                    if !ok {
                        return Some(named(vec![("L", *l), ("R", *r)]));
                    }
                }
            }
            None
        }
        CrispClaim::QuasiIdempotent => quasis()
            .find(|q| crisp::product_unchecked(t, q, q) != *q)
            .map(|q| named(vec![("Q", q)])),
        CrispClaim::QuasiSandwich => quasis()
            .find(|q| crisp::product_unchecked(t, &crisp::product_unchecked(t, q, &full), q) != *q)
            .map(|q| named(vec![("A", q)])),
    }
}

/// First element where the characteristic identity fails, with both sides.
pub(crate) fn char_identity_failure(
    t: &CayleyTable,
    claim: CharClaim,
    l: &CrispSubset,
    r: &CrispSubset,
    th: &Thresholds,
) -> Option<(usize, Grade, Grade)> {
    let (cl, cr) = (FuzzySubset::characteristic(l), FuzzySubset::characteristic(r));
    let (lhs, rhs) = match claim {
        CharClaim::Meet => (
            fuzzy::ops::meet_star(&cl, &cr, th),
            FuzzySubset::characteristic(&l.intersection(r)).star(th),
        ),
        CharClaim::Join => (
            fuzzy::ops::join_star(&cl, &cr, th),
            FuzzySubset::characteristic(&l.union(r)).star(th),
        ),
        CharClaim::Product => (
            fuzzy::ops::prod_star(t, &cl, &cr, th),
            FuzzySubset::characteristic(&crisp::product_unchecked(t, l, r)).star(th),
        ),
    };
    (0..t.order())
        .find(|&x| lhs.at(x) != rhs.at(x))
        .map(|x| (x, lhs.at(x), rhs.at(x)))
}

fn run_unit(
    st: &Statement,
    t: &CayleyTable,
    th: &Thresholds,
    unit: &Unit,
    cands: &[FuzzySubset],
    seed: u64,
    samples: u64,
) -> (u64, Option<Counterexample>) {
    let bundle = |fuzzy: Vec<NamedFuzzy>| Counterexample {
        statement: String::new(),
        direction: unit.direction,
        table: t.clone(),
        thresholds: Some(*th),
        fuzzy,
        crisp: Vec::new(),
        elements: Vec::new(),
        lhs: None,
        rhs: None,
        expected: st.describe(),
    };
    let named = |tuple: &[usize]| -> Vec<NamedFuzzy> {
        fuzzy_names(tuple.len())
            .zip(tuple)
            .map(|(name, &i)| NamedFuzzy {
                name,
                subset: cands[i].clone(),
            })
            .collect()
    };
    match &st.body {
        Body::Implication { conclusion, .. } => run_tuples(&unit.pools, true, 0, seed, |tu| {
            let mu = &cands[tu[0]];
            if ideals::passes(*conclusion, t, mu, th) {
                return None;
            }
            let v = ideals::check_inequality_form(*conclusion, t, mu, th).expect("carrier matches");
            let first = v.violations[0].clone();
            let mut b = bundle(named(tu));
            b.elements = first.elements;
            b.lhs = Some(first.lhs);
            b.rhs = Some(first.rhs);
            b.expected = format!("μ is a {conclusion}");
            Some(b)
        }),
        Body::StarProjection(cmp) => run_tuples(&unit.pools, true, 0, seed, |tu| {
            let s = cands[tu[0]].star(th);
            for a in t.elements() {
                for c in t.elements() {
                    let (lhs, rhs) = (s.at(t.mul(a, c)), s.at(a).min(s.at(c)));
                    if !cmp.holds(lhs, rhs) {
                        let mut b = bundle(named(tu));
                        b.elements = vec![a, c];
                        b.lhs = Some(lhs);
                        b.rhs = Some(rhs);
                        b.expected = format!("μ*(ab) {} μ*(a) ∧ μ*(b)", cmp.symbol());
                        return Some(b);
                    }
                }
            }
            None
        }),
        Body::ProductIdeal => run_tuples(&unit.pools, unit.exhaustive, samples, seed, |tu| {
            let prod = fuzzy::compose_unchecked(t, &cands[tu[0]], &cands[tu[1]]);
            if ideals::passes(IdealKind::TwoSidedIdeal, t, &prod, th) {
                return None;
            }
            let v = ideals::check_inequality_form(IdealKind::TwoSidedIdeal, t, &prod, th).expect("carrier matches");
            let first = v.violations[0].clone();
            let mut b = bundle(named(tu));
            b.elements = first.elements;
            b.lhs = Some(first.lhs);
            b.rhs = Some(first.rhs);
            b.expected = "μ ∘ ν is a two-sided-ideal".into();
            Some(b)
        }),
        Body::Identity(id) => run_identity(id, t, th, unit, cands, seed, samples, bundle, named),
        _ => unreachable!("handled per structure"),
    }
}

#[allow(clippy::too_many_arguments)]
fn run_identity(
    id: &Identity,
    t: &CayleyTable,
    th: &Thresholds,
    unit: &Unit,
    cands: &[FuzzySubset],
    seed: u64,
    samples: u64,
    bundle: impl Fn(Vec<NamedFuzzy>) -> Counterexample,
    named: impl Fn(&[usize]) -> Vec<NamedFuzzy>,
) -> (u64, Option<Counterexample>) {
    let dens = cands.iter().flat_map(|c| c.grades().iter().map(|g| g.denom()));
    let scale = Scale::new(th, dens).expect("grid and thresholds share a small denominator");
    let dense: Vec<Vec<u32>> = cands.iter().map(|c| scale.dense(c).expect("on scale")).collect();
    let (lp, rp): (Program, Program) = (id.left.compile(), id.right.compile());
    let mut lm = Machine::new(t, scale, &lp);
    let mut rm = Machine::new(t, scale, &rp);
    let expected = format!("{} {} {}", id.left, id.cmp.symbol(), id.right);
    let failing = |tu: &[usize], lm: &mut Machine, rm: &mut Machine| {
        let mut buf: [&[u32]; 3] = [&[]; 3];
        for (slot, &i) in buf.iter_mut().zip(tu) {
            *slot = &dense[i];
        }
        let vars = &buf[..tu.len()];
        let l = lm.run(&lp, vars);
        let r = rm.run(&rp, vars);
        (0..t.order())
            .find(|&x| !id.cmp.holds(l[x], r[x]))
            .map(|x| (x, l[x], r[x]))
    };
    match unit.direction {
        Direction::Forward => run_tuples(&unit.pools, unit.exhaustive, samples, seed, |tu| {
            let (x, l, r) = failing(tu, &mut lm, &mut rm)?;
            let mut b = bundle(named(tu));
            b.elements = vec![x];
            b.lhs = Some(scale.grade(l));
            b.rhs = Some(scale.grade(r));
            b.expected = expected.clone();
            Some(b)
        }),
        Direction::Converse => {
            // the converse holds at these thresholds once some witness fails
            let (visited, found) = run_tuples(&unit.pools, true, 0, seed, |tu| {
                failing(tu, &mut lm, &mut rm).map(|_| ())
            });
            if found.is_some() {
                return (visited, None);
            }
            let mut b = bundle(Vec::new());
            b.expected = format!(
                "some starred characteristic witnesses violate {expected} since S is not {}",
                id.property.map(Property::name).unwrap_or("")
            );
            (visited, Some(b))
        }
    }
}

fn verify_statement(st: &Statement, scope: &Scope) -> Result<StatementRun, HarnessError> {
    if scope.thresholds.is_empty() {
        return Err(HarnessError::NoThresholds);
    }
    for th in &scope.thresholds {
        if Scale::new(th, [scope.fuzzy.den()]).is_none() {
            return Err(HarnessError::Scale(*th));
        }
    }
    let structures = scope_structures(st, scope)?;
    let mut plans = Vec::with_capacity(structures.len());
    let mut planned = 0u64;
    for t in &structures {
        let p = plan_structure(st, scope, t)?;
        planned = planned.saturating_add(p.planned());
        plans.push(p);
    }
    if let Some(budget) = scope.budget {
        if planned > budget {
            return Err(HarnessError::BudgetExceeded { planned, budget });
        }
    }
    let results = execute(st, scope, &structures, &plans);

    let hyp = if scope.stated_hypotheses {
        st.stated
    } else {
        st.hypotheses
    };
    let mut coverage = Coverage {
        fuzzy: String::new(),
        crisp: "exhaustive".into(),
        tuples_checked: 0,
        tuples_total: 0,
        thresholds: scope.thresholds.len(),
        forward_structures: 0,
        converse_structures: 0,
        converse_witnesses: None,
        hypotheses: Hypotheses::names(&hyp).into_iter().map(str::to_string).collect(),
    };
    let mut exhaustive = true;
    let mut counterexample = None;
    let mut checked_structures = 0;
    for r in results {
        checked_structures += 1;
        exhaustive &= r.exhaustive;
        coverage.tuples_checked += r.evaluated;
        coverage.tuples_total = coverage.tuples_total.saturating_add(r.total);
        if r.converse {
            coverage.converse_structures += 1;
        } else {
            coverage.forward_structures += 1;
        }
        if r.failure.is_some() {
            counterexample = r.failure;
            break;
        }
    }
    let fuzzy_quantified = matches!(
        st.body,
        Body::Implication { .. } | Body::ProductIdeal | Body::Identity(_) | Body::StarProjection(_)
    );
    coverage.fuzzy = if !fuzzy_quantified {
        "none".into()
    } else if exhaustive {
        match &scope.fuzzy {
            FuzzySource::Explicit(m) => format!("exhaustive: spot set of {}", m.len()),
            other => format!("exhaustive: d={} grid", other.den()),
        }
    } else {
        format!(
            "sampled: {}/{} tuples",
            coverage.tuples_checked, coverage.tuples_total
        )
    };
    if matches!(st.body, Body::Identity(Identity { property: Some(_), .. })) {
        coverage.converse_witnesses =
            Some("starred characteristic functions χ*_A of non-empty subsets passing each role".into());
    }
    let status = if counterexample.is_some() {
        Status::Refuted
    } else if exhaustive {
        Status::ConfirmedExhaustive
    } else {
        Status::ConfirmedSampled
    };
    let _ = checked_structures;
    Ok(StatementRun {
        status,
        structures: structures.len(),
        samples: coverage.tuples_checked,
        coverage,
        counterexample,
    })
}

/// Runs every structure, stopping after the first failure in structure
/// order. With several workers all structures are run and the results are
/// truncated the same way, so the output does not depend on scheduling.
fn execute(st: &Statement, scope: &Scope, structures: &[CayleyTable], plans: &[StructurePlan]) -> Vec<StructureResult> {
    let workers = scope.workers.max(1).min(structures.len().max(1));
    let mut results: Vec<StructureResult> = if workers == 1 {
        let mut out = Vec::new();
        for (i, (t, p)) in structures.iter().zip(plans).enumerate() {
            let r = run_structure(st, scope, i, t, p);
            let stop = r.failure.is_some();
            out.push(r);
            if stop {
                break;
            }
        }
        out
    } else {
        let mut slots: Vec<Option<StructureResult>> = (0..structures.len()).map(|_| None).collect();
        std::thread::scope(|s| {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    s.spawn(move || {
                        (w..structures.len())
                            .step_by(workers)
                            .map(|i| (i, run_structure(st, scope, i, &structures[i], &plans[i])))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            for h in handles {
                for (i, r) in h.join().expect("harness worker panicked") {
                    slots[i] = Some(r);
                }
            }
        });
        slots.into_iter().map(|r| r.expect("every structure ran")).collect()
    };
    if let Some(pos) = results.iter().position(|r| r.failure.is_some()) {
        results.truncate(pos + 1);
    }
    results
}
