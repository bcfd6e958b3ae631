//! Named specializations of the `{12, 21}` distribution.
//!
//! Variables: `t` fixed points, `u1`/`v1` self-sibling and paired
//! occurrences of `12`, `u2`/`v2` the same for `21`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::oracle::for_each_involution;
use crate::theorem::DistributionTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Preset {
    /// `t=1, u1=u2=v1=v2=0`: no two adjacent entries differ by one.
    Hertzsprung,
    /// `t=1, u1=v1=0, u2=v2=1`: no ascent by one.
    Irreducible,
    /// `t=0, u1=v1=0, u2=v2=1`: irreducible without fixed points.
    FpfIrreducible,
    /// `t=0, u1=v1=v2=1`, `u2` kept: perfect matchings by short pairs.
    MatchingsShortPairs,
}

impl Preset {
    pub const ALL: [Preset; 4] = [
        Preset::Hertzsprung,
        Preset::Irreducible,
        Preset::FpfIrreducible,
        Preset::MatchingsShortPairs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Hertzsprung => "hertzsprung",
            Preset::Irreducible => "irreducible",
            Preset::FpfIrreducible => "fpf_irreducible",
            Preset::MatchingsShortPairs => "matchings_short_pairs",
        }
    }

    /// Values of `t, u1, v1, u2, v2`; `None` marks the free variable.
    fn values(self) -> [Option<u64>; 5] {
        match self {
            Preset::Hertzsprung => [Some(1), Some(0), Some(0), Some(0), Some(0)],
            Preset::Irreducible => [Some(1), Some(0), Some(0), Some(1), Some(1)],
            Preset::FpfIrreducible => [Some(0), Some(0), Some(0), Some(1), Some(1)],
            Preset::MatchingsShortPairs => [Some(0), Some(1), Some(1), None, Some(1)],
        }
    }

    pub fn is_bivariate(self) -> bool {
        self == Preset::MatchingsShortPairs
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.replace('-', "_");
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == norm)
            .ok_or_else(|| Error::UnknownPreset(s.to_string()))
    }
}

/// A specialized coefficient sequence. `rows[n][j]` is the coefficient of
/// `x^n u2^j`; univariate presets have one column.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Specialization {
    pub preset: Preset,
    pub rows: Vec<Vec<u64>>,
}

impl Specialization {
    /// First column, i.e. the sequence of a univariate preset.
    pub fn sequence(&self) -> Vec<u64> {
        self.rows.iter().map(|r| r.first().copied().unwrap_or(0)).collect()
    }

    /// Row sums (all `u2` exponents together).
    pub fn totals(&self) -> Vec<u64> {
        self.rows.iter().map(|r| r.iter().sum()).collect()
    }
}

fn weight(v: Option<u64>, e: usize) -> u64 {
    match v {
        Some(v) => v.pow(e as u32),
        None => 1,
    }
}

/// Evaluates `table`, which must be for `{12, 21}`, at `preset`.
pub fn specialize(table: &DistributionTable, preset: Preset) -> Result<Specialization> {
    if table.set().spec_string() != "12,21" {
        return Err(Error::InvalidArgument(format!(
            "presets apply to {{12,21}}, not {}",
            table.set()
        )));
    }
    let [t, u1, v1, u2, v2] = preset.values();
    let len = table.order() as usize + 1;
    let mut rows = vec![vec![0u64]; len];
    for (sv, &c) in table.entries() {
        let (a, b) = (sv.involutive[0], sv.involutive[1]);
        let w = weight(t, sv.fp)
            * weight(u1, a.sib)
            * weight(v1, a.nsib / 2)
            * weight(u2, b.sib)
            * weight(v2, b.nsib / 2);
        if w == 0 {
            continue;
        }
        let col = if u2.is_none() { b.sib } else { 0 };
        let row = &mut rows[sv.n];
        if row.len() <= col {
            row.resize(col + 1, 0);
        }
        row[col] += c * w;
    }
    Ok(Specialization { preset, rows })
}

/// The same numbers straight from the defining property of each preset.
pub fn direct_specialization(preset: Preset, max_n: usize) -> Specialization {
    let mut rows = Vec::with_capacity(max_n + 1);
    for n in 0..=max_n {
        let mut row = vec![0u64];
        for_each_involution(n, |p| {
            let w = p.word();
            let steps = || w.windows(2).map(|s| s[1] as i64 - s[0] as i64);
            let col = match preset {
                Preset::Hertzsprung => steps().all(|d| d.abs() != 1).then_some(0),
                Preset::Irreducible => steps().all(|d| d != 1).then_some(0),
                Preset::FpfIrreducible => {
                    (p.fixed_points() == 0 && steps().all(|d| d != 1)).then_some(0)
                }
                Preset::MatchingsShortPairs => (p.fixed_points() == 0).then(|| {
                    (1..n).filter(|&i| p.at(i) == i as u32 + 1).count()
                }),
            };
            if let Some(col) = col {
                if row.len() <= col {
                    row.resize(col + 1, 0);
                }
                row[col] += 1;
            }
        });
        rows.push(row);
    }
    Specialization { preset, rows }
}
