use std::collections::BTreeMap;
use std::io::Write;

use hertzinv_core::{Layout, MultiSeries, PatternSet, StatisticsVector};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::CliError;

/// Column names of a statistics vector: `fp`, then `τ_sib`, `τ_nsib` per
/// involutive pattern and `σ` per transversal pattern.
pub fn stat_columns(set: &PatternSet) -> Vec<String> {
    let mut cols = vec!["fp".to_string()];
    for p in set.involutive() {
        cols.push(format!("{p}_sib"));
        cols.push(format!("{p}_nsib"));
    }
    for p in set.transversal() {
        cols.push(p.to_string());
    }
    cols
}

fn stat_values(sv: &StatisticsVector) -> Vec<usize> {
    let mut v = vec![sv.fp];
    for c in &sv.involutive {
        v.push(c.sib);
        v.push(c.nsib);
    }
    v.extend(&sv.transversal);
    v
}

/// One line per variable of `F_T`.
pub fn legend(layout: &Layout) -> Vec<String> {
    let set = layout.set();
    let mut out = vec!["x length".to_string(), "t fixed points".to_string()];
    for (i, p) in set.involutive().iter().enumerate() {
        out.push(format!("{} occurrences of {p} equal to their sibling", Layout::u(i)));
    }
    for (i, p) in set.involutive().iter().enumerate() {
        out.push(format!("{} pairs of sibling occurrences of {p}", Layout::v(i)));
    }
    for (k, p) in set.transversal().iter().enumerate() {
        out.push(format!("{} occurrences of {p} (equal to those of {})", Layout::w(k), p.inverse()));
    }
    out
}

/// Grade `n` of `s` as a polynomial in the variables other than `x`.
pub fn grade_polynomial(s: &MultiSeries, n: u32) -> String {
    let names = &s.vars().names()[1..];
    let terms: Vec<(Vec<u32>, BigInt)> = s.grade(n).terms();
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (e, c)) in terms.iter().enumerate() {
        let mono: Vec<String> = names
            .iter()
            .zip(&e[1..])
            .filter(|(_, &k)| k > 0)
            .map(|(v, &k)| if k == 1 { v.clone() } else { format!("{v}^{k}") })
            .collect();
        let neg = c < &BigInt::from(0);
        let mag = if neg { -c.clone() } else { c.clone() };
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if mono.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag == BigInt::from(1) {
            out.push_str(&mono.join("*"));
        } else {
            out.push_str(&format!("{mag}*{}", mono.join("*")));
        }
    }
    out
}

/// JSON object of one statistics vector, keyed by pattern.
pub fn stats_json(set: &PatternSet, sv: &StatisticsVector) -> Value {
    let mut pats = Map::new();
    for (p, c) in set.involutive().iter().zip(&sv.involutive) {
        pats.insert(p.to_string(), json!({"sib": c.sib, "nsib": c.nsib}));
    }
    for (p, &c) in set.transversal().iter().zip(&sv.transversal) {
        pats.insert(p.to_string(), json!({"count": c}));
    }
    json!({"n": sv.n, "fp": sv.fp, "patterns": pats})
}

/// Writes `rows[n]` (statistics vector → count) as CSV with a header.
pub fn write_stats_csv(
    out: &mut dyn Write,
    set: &PatternSet,
    rows: &BTreeMap<StatisticsVector, u64>,
) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["n".to_string()];
    header.extend(stat_columns(set));
    header.push("count".into());
    w.write_record(&header).map_err(CliError::io)?;
    for (sv, c) in rows {
        let mut rec = vec![sv.n.to_string()];
        rec.extend(stat_values(sv).iter().map(|v| v.to_string()));
        rec.push(c.to_string());
        w.write_record(&rec).map_err(CliError::io)?;
    }
    w.flush().map_err(|e| CliError::io(e.into()))?;
    Ok(())
}

/// Plain table: one line per statistics vector.
pub fn write_stats_plain(
    out: &mut dyn Write,
    set: &PatternSet,
    rows: &BTreeMap<StatisticsVector, u64>,
) -> Result<(), CliError> {
    let cols = stat_columns(set);
    writeln!(out, "n {} count", cols.join(" ")).map_err(CliError::from)?;
    for (sv, c) in rows {
        let vals: Vec<String> = stat_values(sv).iter().map(|v| v.to_string()).collect();
        writeln!(out, "{} {} {c}", sv.n, vals.join(" "))?;
    }
    Ok(())
}

pub fn write_json(out: &mut dyn Write, value: &impl Serialize) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, value).map_err(|e| CliError::internal(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}
