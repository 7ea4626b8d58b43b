//! Plain-text rendering. Elements are shown by name, else 1-based.

use std::fmt::Write;

use agfuzz::crisp::ClassFlag;
use agfuzz::harness::{Direction, ExampleBundle, Statement, TheoremVerdict};
use agfuzz::laws::LawCheck;
use agfuzz::{
    CayleyTable, CrispClassReport, CrispSubset, FuzzyClassReport, FuzzySubset, IdealKind, LawReport, RegularityReport,
};

fn labels(t: &CayleyTable, xs: &[usize]) -> String {
    xs.iter().map(|&x| t.label(x)).collect::<Vec<_>>().join(",")
}

fn law_line(t: &CayleyTable, name: &str, c: &LawCheck) -> String {
    match &c.violation {
        None => format!("{name}: holds\n"),
        Some(v) => format!("{name}: fails at ({})\n", labels(t, v)),
    }
}

pub fn check(t: &CayleyTable, laws: &LawReport, reg: &RegularityReport) -> String {
    let mut s = format!("{t}");
    s += &law_line(t, "left invertive (ab)c=(cb)a", &laws.left_invertive);
    s += &law_line(t, "medial (ab)(cd)=(ac)(bd)", &laws.medial);
    s += &law_line(t, "paramedial (ab)(cd)=(db)(ca)", &laws.paramedial);
    s += &law_line(t, "a(bc)=b(ac)", &laws.extended);
    let ids = if laws.left_identities.is_empty() {
        "none".to_string()
    } else {
        labels(t, &laws.left_identities)
    };
    let _ = writeln!(s, "left identities: {ids}");
    if !laws.identity_laws_guaranteed {
        s += "(the last two laws are only implied when a left identity exists)\n";
    }
    let missing = |w: Vec<usize>| {
        if w.is_empty() {
            "yes".to_string()
        } else {
            format!("no, no witness for {}", labels(t, &w))
        }
    };
    let none_at = |flags: Vec<bool>| flags.iter().enumerate().filter(|(_, ok)| !**ok).map(|(i, _)| i).collect();
    let _ = writeln!(
        s,
        "regular: {}",
        missing(none_at(reg.regular_witnesses.iter().map(Option::is_some).collect()))
    );
    let _ = writeln!(
        s,
        "intra-regular: {}",
        missing(none_at(reg.intra_witnesses.iter().map(Option::is_some).collect()))
    );
    let _ = writeln!(
        s,
        "weakly regular: {}",
        missing(none_at(reg.weak_witnesses.iter().map(Option::is_some).collect()))
    );
    s
}

fn crisp_flag(t: &CayleyTable, f: &ClassFlag) -> String {
    match &f.violation {
        None => "yes".into(),
        Some(v) => format!("no: {} = {} lies outside", labels(t, &v.factors).replace(',', "·"), t.label(v.product)),
    }
}

pub fn crisp(t: &CayleyTable, a: &CrispSubset, r: &CrispClassReport) -> String {
    let mut s = format!("subset {}\n", a.display_with(t));
    for kind in IdealKind::ALL {
        let _ = writeln!(s, "{:<22}{}", kind.name(), crisp_flag(t, r.flag(kind)));
    }
    s
}

pub fn fuzzy(t: &CayleyTable, mu: &FuzzySubset, r: &FuzzyClassReport) -> String {
    let mut s = format!("μ = {}\nthresholds {}\n", mu.display_with(t), r.thresholds);
    for k in &r.kinds {
        let line = match k.first_violation() {
            None => "yes".to_string(),
            Some(v) => format!(
                "no ({} violation(s)); first at ({}): {} < {}",
                k.count,
                labels(t, &v.elements),
                v.lhs,
                v.rhs
            ),
        };
        let _ = writeln!(s, "{:<22}{line}", k.kind.name());
    }
    s
}

pub fn example(b: &ExampleBundle) -> String {
    let mut s = format!("{}", b.table);
    let _ = writeln!(s, "μ = {}", b.mu.display_with(&b.table));
    let _ = writeln!(s, "ν = {}", b.nu.display_with(&b.table));
    for c in &b.checks {
        let value = match c.actual.as_str() {
            "true" => ": TRUE".to_string(),
            "false" => ": FALSE".to_string(),
            v => format!("={v}"),
        };
        let mark = if c.ok {
            String::new()
        } else {
            format!("  MISMATCH, expected {}", c.expected)
        };
        let _ = writeln!(s, "{}{value}{mark}", c.name);
    }
    s
}

pub fn catalog(all: &[Statement]) -> String {
    let mut s = String::new();
    for st in all {
        let label = st.label.map(|l| format!(" [{l}]")).unwrap_or_default();
        let _ = writeln!(s, "{}{label}: {}", st.name(), st.describe());
    }
    s
}

pub fn verdict(v: &TheoremVerdict) -> String {
    let c = &v.coverage;
    let mut s = format!("{}: {}\n", v.id, v.status.name());
    let _ = writeln!(s, "scope: {}", v.scope);
    let _ = writeln!(s, "hypotheses: {}", c.hypotheses.join(", "));
    let _ = writeln!(
        s,
        "structures: {} ({} forward, {} converse), samples: {}",
        v.structures, c.forward_structures, c.converse_structures, v.samples
    );
    let pct = if c.tuples_total == 0 {
        100.0
    } else {
        100.0 * c.tuples_checked as f64 / c.tuples_total as f64
    };
    let _ = writeln!(s, "fuzzy quantifiers: {}", c.fuzzy);
    let _ = writeln!(s, "crisp quantifiers: {}", c.crisp);
    let _ = writeln!(
        s,
        "tuple coverage: {}/{} ({pct:.2}%) over {} threshold pair(s)",
        c.tuples_checked, c.tuples_total, c.thresholds
    );
    if let Some(w) = &c.converse_witnesses {
        let _ = writeln!(s, "converse witnesses: {w}");
    }
    if v.variants.len() > 1 {
        for var in &v.variants {
            let _ = writeln!(s, "  {:<20}{:<22}{} samples", var.name, var.status.name(), var.samples);
        }
    }
    if let Some(x) = &v.counterexample {
        let t = &x.table;
        let dir = match x.direction {
            Direction::Forward => "forward",
            Direction::Converse => "converse",
        };
        let _ = writeln!(s, "counterexample for {} ({dir}):", x.statement);
        for line in format!("{t}").lines() {
            let _ = writeln!(s, "  {line}");
        }
        if let Some(th) = &x.thresholds {
            let _ = writeln!(s, "  thresholds {th}");
        }
        for m in &x.fuzzy {
            let _ = writeln!(s, "  {} = {}", m.name, m.subset.display_with(t));
        }
        for a in &x.crisp {
            let _ = writeln!(s, "  {} = {}", a.name, a.subset.display_with(t));
        }
        if !x.elements.is_empty() {
            let _ = writeln!(s, "  at ({})", labels(t, &x.elements));
        }
        if let (Some(l), Some(r)) = (x.lhs, x.rhs) {
            let _ = writeln!(s, "  got {l} vs {r}");
        }
        let _ = writeln!(s, "  expected {}", x.expected);
    }
    s
}
