//! Falsification runs: the first counterexample by structure order, then
//! threshold order, then sample order.

use super::catalog::Statement;
use super::verify::{lookup, scope_structures, verify_statements, Counterexample, HarnessError, Scope, StructureSource};
use crate::enumerate::MAX_ENUM_ORDER;

/// Default cap on evaluations for a search.
pub const DEFAULT_SEARCH_BUDGET: u64 = 1_000_000_000;

/// Searches every variant of `id` over orders `1..=max_order`.
pub fn search_counterexample(
    id: &str,
    max_order: usize,
    budget: Option<u64>,
) -> Result<Option<Counterexample>, HarnessError> {
    let statements = lookup(id)?;
    search_in(&statements, max_order, budget)
}

pub fn search_statement(
    st: &Statement,
    max_order: usize,
    budget: Option<u64>,
) -> Result<Option<Counterexample>, HarnessError> {
    search_in(std::slice::from_ref(st), max_order, budget)
}

fn search_in(
    statements: &[Statement],
    max_order: usize,
    budget: Option<u64>,
) -> Result<Option<Counterexample>, HarnessError> {
    if max_order > MAX_ENUM_ORDER {
        return Err(crate::enumerate::EnumError::Order {
            order: max_order,
            max: MAX_ENUM_ORDER,
        }
        .into());
    }
    let budget = budget.unwrap_or(DEFAULT_SEARCH_BUDGET);
    let mut spent = 0u64;
    for n in 1..=max_order {
        for st in statements {
            let all = scope_structures(
                st,
                &Scope {
                    structures: StructureSource::UpTo(n),
                    ..Scope::default()
                },
            )?;
            let tables: Vec<_> = all.into_iter().filter(|t| t.order() == n).collect();
            if tables.is_empty() {
                continue;
            }
            let scope = Scope {
                budget: Some(budget - spent),
                ..Scope::explicit(tables)
            };
            let v = verify_statements(&st.name(), std::slice::from_ref(st), &scope).map_err(|e| match e {
                HarnessError::BudgetExceeded { planned, .. } => HarnessError::BudgetExceeded {
                    planned: spent.saturating_add(planned),
                    budget,
                },
                other => other,
            })?;
            spent += v.samples;
            if v.counterexample.is_some() {
                return Ok(v.counterexample);
            }
        }
    }
    Ok(None)
}
