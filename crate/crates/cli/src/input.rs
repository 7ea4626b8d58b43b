//! Reading tables, subsets and grades from files or inline arguments.

use std::fmt;
use std::fs;
use std::path::Path;

use agfuzz::{CayleyTable, CrispSubset, FuzzySubset, Grade};
use serde_json::Value;

/// A user-facing input error; maps to exit code 1.
#[derive(Debug)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn read(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

pub fn load_table(path: &Path) -> Result<CayleyTable, InputError> {
    CayleyTable::from_json(&read(path)?).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

pub fn load_fuzzy(path: &Path) -> Result<FuzzySubset, InputError> {
    FuzzySubset::from_json(&read(path)?).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

/// A crisp subset given as a file path or inline JSON: either an array of
/// 0-based indices or `{"order": n, "elements": [...]}`.
pub fn load_subset(arg: &str, order: usize) -> Result<CrispSubset, InputError> {
    let path = Path::new(arg);
    let (origin, text) = if path.is_file() {
        (path.display().to_string(), read(path)?)
    } else {
        ("subset argument".to_string(), arg.to_string())
    };
    let err = |msg: String| InputError(format!("{origin}: {msg}"));
    let value: Value = serde_json::from_str(&text).map_err(|e| err(e.to_string()))?;
    match value {
        Value::Array(items) => {
            let mut elements = Vec::with_capacity(items.len());
            for (i, v) in items.iter().enumerate() {
                let x = v
                    .as_u64()
                    .ok_or_else(|| err(format!("item {i}: expected a non-negative integer, got {v}")))?;
                elements.push(x as usize);
            }
            CrispSubset::from_elements(order, elements).map_err(|e| err(e.to_string()))
        }
        other => serde_json::from_value(other).map_err(|e| err(e.to_string())),
    }
}

pub fn parse_grade(field: &str, s: &str) -> Result<Grade, InputError> {
    s.parse()
        .map_err(|e| InputError(format!("--{field} {s:?}: {e} (use p/q or a terminating decimal)")))
}

/// `seed,count`
pub fn parse_seed_count(s: &str) -> Result<(u64, u64), String> {
    let (a, b) = s.split_once(',').ok_or("expected SEED,COUNT")?;
    let seed = a.trim().parse().map_err(|_| format!("bad seed {a:?}"))?;
    let count = b.trim().parse().map_err(|_| format!("bad count {b:?}"))?;
    Ok((seed, count))
}
