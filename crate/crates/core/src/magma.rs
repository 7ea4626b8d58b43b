//! Finite magmas given by their Cayley table.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MagmaError {
    #[error("order must be positive")]
    EmptyCarrier,
    #[error("table has {rows} rows, expected {order}")]
    RowCount { order: usize, rows: usize },
    #[error("table row {row} has {len} entries, expected {order}")]
    Ragged { row: usize, len: usize, order: usize },
    #[error("table[{row}][{col}] = {value} is out of range for order {order}")]
    OutOfRange {
        row: usize,
        col: usize,
        value: i64,
        order: usize,
    },
    #[error("names has {len} labels, expected {order}")]
    Names { len: usize, order: usize },
    #[error("order {order} exceeds the supported maximum {max}")]
    TooLarge { order: usize, max: usize },
    #[error("carrier mismatch: expected order {expected}, found {found}")]
    CarrierMismatch { expected: usize, found: usize },
    #[error("malformed magma JSON at line {line}, column {column}: {msg}")]
    Json { line: usize, column: usize, msg: String },
}

/// Carrier sizes above this do not fit a [`crate::CrispSubset`] bitmask.
pub const MAX_ORDER: usize = 64;

/// An `n × n` operation table over `0..n`; row is the left operand.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CayleyTable {
    order: usize,
    cells: Vec<u8>,
    names: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct MagmaFile {
    order: i64,
    table: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    names: Option<Vec<String>>,
}

impl CayleyTable {
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self, MagmaError> {
        let order = rows.len();
        let rows = rows
            .into_iter()
            .map(|r| r.into_iter().map(|v| v as i64).collect())
            .collect();
        Self::validate(order as i64, rows, None)
    }

    fn validate(order: i64, rows: Vec<Vec<i64>>, names: Option<Vec<String>>) -> Result<Self, MagmaError> {
        if order <= 0 {
            return Err(MagmaError::EmptyCarrier);
        }
        let order = order as usize;
        if order > MAX_ORDER {
            return Err(MagmaError::TooLarge { order, max: MAX_ORDER });
        }
        if rows.len() != order {
            return Err(MagmaError::RowCount { order, rows: rows.len() });
        }
        let mut cells = Vec::with_capacity(order * order);
        for (row, r) in rows.iter().enumerate() {
            if r.len() != order {
                return Err(MagmaError::Ragged { row, len: r.len(), order });
            }
            for (col, &value) in r.iter().enumerate() {
                if value < 0 || value as usize >= order {
                    return Err(MagmaError::OutOfRange { row, col, value, order });
                }
                cells.push(value as u8);
            }
        }
        if let Some(ns) = &names {
            if ns.len() != order {
                return Err(MagmaError::Names { len: ns.len(), order });
            }
        }
        Ok(CayleyTable { order, cells, names })
    }

    /// Builds a table from the operation `op` on `0..order`.
    pub fn from_fn(order: usize, op: impl Fn(usize, usize) -> usize) -> Result<Self, MagmaError> {
        let rows = (0..order).map(|a| (0..order).map(|b| op(a, b)).collect()).collect();
        Self::from_rows(rows)
    }

    pub(crate) fn from_cells_unchecked(order: usize, cells: Vec<u8>) -> Self {
        debug_assert_eq!(cells.len(), order * order);
        CayleyTable {
            order,
            cells,
            names: None,
        }
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self, MagmaError> {
        if names.len() != self.order {
            return Err(MagmaError::Names {
                len: names.len(),
                order: self.order,
            });
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.cells[a * self.order + b] as usize
    }

    /// Row-major cells.
    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.cells
            .chunks(self.order)
            .map(|r| r.iter().map(|&v| v as usize).collect())
            .collect()
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Display label: the given name, else the 1-based index.
    pub fn label(&self, x: usize) -> String {
        match &self.names {
            Some(ns) => ns[x].clone(),
            None => (x + 1).to_string(),
        }
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// The isomorphic copy under `perm`: `π(a)·π(b) = π(a·b)`.
    pub fn relabel(&self, perm: &[usize]) -> CayleyTable {
        let n = self.order;
        let mut cells = vec![0u8; n * n];
        for a in 0..n {
            for b in 0..n {
                cells[perm[a] * n + perm[b]] = perm[self.mul(a, b)] as u8;
            }
        }
        CayleyTable::from_cells_unchecked(n, cells)
    }

    pub fn check_carrier(&self, order: usize) -> Result<(), MagmaError> {
        if order != self.order {
            return Err(MagmaError::CarrierMismatch {
                expected: self.order,
                found: order,
            });
        }
        Ok(())
    }

    /// Parses the JSON magma format `{"order": n, "table": [[..]..], "names": [..]}`.
    pub fn from_json(text: &str) -> Result<Self, MagmaError> {
        let raw: MagmaFile = serde_json::from_str(text).map_err(|e| MagmaError::Json {
            line: e.line(),
            column: e.column(),
            msg: e.to_string(),
        })?;
        Self::validate(raw.order, raw.table, raw.names)
    }

    pub fn to_json(&self) -> String {
        let file = MagmaFile {
            order: self.order as i64,
            table: self
                .cells
                .chunks(self.order)
                .map(|r| r.iter().map(|&v| v as i64).collect())
                .collect(),
            names: self.names.clone(),
        };
        serde_json::to_string(&file).expect("magma serializes")
    }
}

impl Serialize for CayleyTable {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        MagmaFile {
            order: self.order as i64,
            table: self.rows().into_iter().map(|r| r.into_iter().map(|v| v as i64).collect()).collect(),
            names: self.names.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CayleyTable {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = MagmaFile::deserialize(deserializer)?;
        Self::validate(raw.order, raw.table, raw.names).map_err(serde::de::Error::custom)
    }
}

impl fmt::Debug for CayleyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CayleyTable{:?}", self.rows())
    }
}

impl fmt::Display for CayleyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.elements().map(|x| self.label(x)).collect();
        let w = labels.iter().map(|l| l.len()).max().unwrap_or(1);
        write!(f, "{:>w$} |", "*")?;
        for l in &labels {
            write!(f, " {l:>w$}")?;
        }
        writeln!(f)?;
        writeln!(f, "{}", "-".repeat((w + 1) * (self.order + 1) + 1))?;
        for a in self.elements() {
            write!(f, "{:>w$} |", labels[a])?;
            for b in self.elements() {
                write!(f, " {:>w$}", labels[self.mul(a, b)])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Common small tables.
pub mod samples {
    use super::CayleyTable;

    /// The order-4 LA-semigroup used as the running example of the fuzzy
    /// ideal theory, with elements printed as `1..4`.
    pub fn example_table() -> CayleyTable {
        CayleyTable::from_rows(vec![vec![3, 3, 3, 3], vec![2, 0, 2, 0], vec![3, 0, 3, 3], vec![3, 3, 3, 3]])
            .expect("valid table")
    }

    /// Addition modulo `n`.
    pub fn cyclic(n: usize) -> CayleyTable {
        CayleyTable::from_fn(n, |a, b| (a + b) % n).expect("valid table")
    }

    /// `a·b = 0` for all `a, b`.
    pub fn constant(n: usize) -> CayleyTable {
        CayleyTable::from_fn(n, |_, _| 0).expect("valid table")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_with_names() {
        let t = samples::cyclic(3)
            .with_names(vec!["e".into(), "a".into(), "b".into()])
            .unwrap();
        let text = t.to_json();
        assert_eq!(text, r#"{"order":3,"table":[[0,1,2],[1,2,0],[2,0,1]],"names":["e","a","b"]}"#);
        assert_eq!(CayleyTable::from_json(&text).unwrap(), t);
    }

    #[test]
    fn rejects_ragged_rows() {
        let err = CayleyTable::from_json(r#"{"order":2,"table":[[0,1],[1]]}"#).unwrap_err();
        assert_eq!(err, MagmaError::Ragged { row: 1, len: 1, order: 2 });
        assert!(err.to_string().contains("row 1"));
    }

    #[test]
    fn rejects_out_of_range() {
        let err = CayleyTable::from_json(r#"{"order":2,"table":[[0,1],[2,0]]}"#).unwrap_err();
        assert_eq!(
            err,
            MagmaError::OutOfRange {
                row: 1,
                col: 0,
                value: 2,
                order: 2
            }
        );
        let err = CayleyTable::from_json(r#"{"order":2,"table":[[0,-1],[1,0]]}"#).unwrap_err();
        assert!(matches!(err, MagmaError::OutOfRange { value: -1, .. }));
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = CayleyTable::from_json("{\"order\": 2,\n \"table\": [[0,1],[1,0]\n").unwrap_err();
        match err {
            MagmaError::Json { line, .. } => assert!(line >= 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_names_and_order() {
        assert!(matches!(
            CayleyTable::from_json(r#"{"order":1,"table":[[0]],"names":["a","b"]}"#),
            Err(MagmaError::Names { .. })
        ));
        assert_eq!(
            CayleyTable::from_json(r#"{"order":0,"table":[]}"#),
            Err(MagmaError::EmptyCarrier)
        );
        assert!(matches!(
            CayleyTable::from_json(r#"{"order":3,"table":[[0,0,0],[0,0,0]]}"#),
            Err(MagmaError::RowCount { .. })
        ));
    }

    #[test]
    fn relabel_is_isomorphism() {
        let t = samples::example_table();
        let perm = [2, 0, 3, 1];
        let r = t.relabel(&perm);
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(r.mul(perm[a], perm[b]), perm[t.mul(a, b)]);
            }
        }
    }

    #[test]
    fn display_uses_one_based_labels() {
        let text = samples::example_table().to_string();
        assert!(text.lines().nth(2).unwrap().starts_with("1 | 4 4 4 4"));
    }
}
