//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Every export takes and returns strings: either `{"ok": ...}` or
//! `{"error": "..."}`, so the page never has to catch exceptions.

use agfuzz::enumerate::enumerate;
use agfuzz::magma::samples;
use agfuzz::{check_laws, classify_fuzzy, regularity, CayleyTable, EnumFilter, EnumSpec, FuzzySubset, Thresholds};
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

/// Orders above this are too slow to enumerate interactively.
pub const MAX_DEMO_ORDER: usize = 4;

fn reply(r: Result<Value, String>) -> String {
    match r {
        Ok(v) => json!({ "ok": v }),
        Err(e) => json!({ "error": e }),
    }
    .to_string()
}

/// The order-4 example table as magma JSON.
#[wasm_bindgen]
pub fn example_table() -> String {
    samples::example_table().to_json()
}

/// Laws and regularity of a table given as magma JSON.
#[wasm_bindgen]
pub fn check_table(table_json: &str) -> String {
    reply(CayleyTable::from_json(table_json).map_err(|e| e.to_string()).map(|t| {
        let laws = check_laws(&t);
        json!({
            "la_semigroup": laws.is_la_semigroup(),
            "laws": laws,
            "regularity": regularity(&t),
        })
    }))
}

/// Classify grades `num[i] / den` on a table at thresholds `γ < δ`,
/// both written as `p/q` or a terminating decimal.
#[wasm_bindgen]
pub fn classify(table_json: &str, den: u64, num: Vec<u64>, gamma: &str, delta: &str) -> String {
    let run = || -> Result<Value, String> {
        let t = CayleyTable::from_json(table_json).map_err(|e| e.to_string())?;
        let mu = FuzzySubset::from_fractions(den, &num).map_err(|e| e.to_string())?;
        let g = gamma.parse().map_err(|e| format!("γ: {e}"))?;
        let d = delta.parse().map_err(|e| format!("δ: {e}"))?;
        let th = Thresholds::new(g, d).map_err(|e| e.to_string())?;
        let report = classify_fuzzy(&t, &mu, &th).map_err(|e| e.to_string())?;
        serde_json::to_value(report).map_err(|e| e.to_string())
    };
    reply(run())
}

/// Labelled and up-to-isomorphism counts for one order.
#[wasm_bindgen]
pub fn enumerate_counts(order: usize, left_identity: bool, weakly_regular: bool) -> String {
    let run = || -> Result<Value, String> {
        if order > MAX_DEMO_ORDER {
            return Err(format!("the demo enumerates orders 1 to {MAX_DEMO_ORDER}"));
        }
        let mut spec = EnumSpec::new(order).with_filter(EnumFilter {
            weakly_regular,
            ..EnumFilter::default()
        });
        if left_identity {
            spec = spec.left_identity();
        }
        let e = enumerate(&spec).map_err(|e| e.to_string())?;
        Ok(json!({
            "order": order,
            "raw": e.raw_count,
            "up_to_iso": e.tables.len(),
            "tables": e.tables.iter().map(|t| t.rows()).collect::<Vec<_>>(),
        }))
    };
    reply(run())
}
