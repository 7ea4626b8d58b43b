//! An executable catalog of the lemmas and characterization theorems,
//! checked over enumerated structures and sampled fuzzy subsets.

pub mod catalog;
pub mod example;
pub mod expr;
pub mod recheck;
pub mod search;
pub mod verify;

pub use catalog::{catalog, Body, Cmp, Hypotheses, Property, Role, Statement, FAMILIES};
pub use example::{worked_example, ExampleBundle, GoldenCheck};
pub use search::{search_counterexample, search_statement, DEFAULT_SEARCH_BUDGET};
pub use verify::{
    verify, verify_statements, Counterexample, Coverage, Direction, FuzzySource, HarnessError, Scope, Status,
    StructureSource, TheoremVerdict, DEFAULT_SEED,
};
